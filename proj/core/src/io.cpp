#include "degenkit/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace degenkit {

using json = nlohmann::json;

namespace {

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void allow_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) throw InputError(path, "expected an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) throw InputError(at(path, k), "unknown key");
}

const json& need(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(at(path, key), "missing");
  return *it;
}

Integer read_integer(const json& v, const std::string& path) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return Integer(std::to_string(v.get<std::uint64_t>()));
    return Integer(std::to_string(v.get<std::int64_t>()));
  }
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
      throw InputError(path, "not an integer: \"" + s + "\"");
    return Integer(s[0] == '+' ? s.substr(1) : s);
  }
  throw InputError(path, "expected an integer");
}

std::size_t read_count(const json& v, const std::string& path) {
  const Integer x = read_integer(v, path);
  if (x < 0 || x > 1'000'000) throw InputError(path, "expected a small non-negative integer");
  return x.get_ui();
}

// Rows as given; `[]` means zero rows and takes `cols` columns.
IntMatrix read_matrix(const json& v, const std::string& path, std::size_t cols) {
  if (!v.is_array()) throw InputError(path, "expected an array of rows");
  if (v.empty()) return IntMatrix(0, cols);
  std::size_t width = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_array()) throw InputError(at(path, i), "expected a row array");
    if (i == 0) width = v[i].size();
    else if (v[i].size() != width) throw InputError(at(path, i), "ragged row");
  }
  IntMatrix m(v.size(), width);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < width; ++j) m(i, j) = read_integer(v[i][j], at(at(path, i), j));
  return m;
}

json write_integer(const Integer& x) {
  if (x.fits_slong_p()) return json(x.get_si());
  return json(x.get_str());
}

json write_matrix(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(write_integer(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

DegenDatum read_datum(const json& doc) {
  allow_keys(doc, "", {"format_version", "kind", "name", "residue_char", "abelian_rank", "closed_point", "branches",
                       "strata"});
  DegenDatum d;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) throw InputError("name", "expected a string");
    d.name = it->get<std::string>();
  }
  {
    const Integer p = read_integer(need(doc, "", "residue_char"), "residue_char");
    if (p < 0 || !p.fits_ulong_p()) throw InputError("residue_char", "out of range");
    d.residue_char = p.get_ui();
  }
  d.abelian_rank = read_count(need(doc, "", "abelian_rank"), "abelian_rank");

  const json& cp = need(doc, "", "closed_point");
  allow_keys(cp, "closed_point", {"rank", "polarization"});
  d.closed_rank = read_count(need(cp, "closed_point", "rank"), "closed_point.rank");
  if (auto it = cp.find("polarization"); it != cp.end())
    d.polarization = read_matrix(*it, "closed_point.polarization", d.closed_rank);

  const json& branches = need(doc, "", "branches");
  if (!branches.is_array()) throw InputError("branches", "expected an array");
  for (std::size_t i = 0; i < branches.size(); ++i) {
    const std::string path = at("branches", i);
    const json& b = branches[i];
    allow_keys(b, path, {"name", "rank", "specialization", "pairing", "dual_specialization", "polarization"});
    Branch br;
    br.name = "D" + std::to_string(i + 1);
    if (auto it = b.find("name"); it != b.end()) {
      if (!it->is_string()) throw InputError(at(path, "name"), "expected a string");
      br.name = it->get<std::string>();
    }
    br.rank = read_count(need(b, path, "rank"), at(path, "rank"));
    br.specialization = read_matrix(need(b, path, "specialization"), at(path, "specialization"), d.closed_rank);
    br.pairing = read_matrix(need(b, path, "pairing"), at(path, "pairing"), br.rank);
    if (auto it = b.find("dual_specialization"); it != b.end())
      br.dual_specialization = read_matrix(*it, at(path, "dual_specialization"), d.closed_rank);
    if (auto it = b.find("polarization"); it != b.end())
      br.polarization = read_matrix(*it, at(path, "polarization"), br.rank);
    d.branches.push_back(std::move(br));
  }

  if (auto it = doc.find("strata"); it != doc.end()) {
    if (!it->is_array()) throw InputError("strata", "expected an array");
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string path = at("strata", k);
      const json& s = (*it)[k];
      allow_keys(s, path, {"branches", "purity", "dual_purity"});
      StratumOverride so;
      const json& list = need(s, path, "branches");
      if (!list.is_array()) throw InputError(at(path, "branches"), "expected an array");
      std::size_t target = 0;
      for (std::size_t j = 0; j < list.size(); ++j) {
        const std::size_t idx = read_count(list[j], at(at(path, "branches"), j));
        if (idx < 1 || idx > d.branch_count())
          throw InputError(at(at(path, "branches"), j), "branch numbers run from 1 to " + std::to_string(d.branch_count()));
        so.branches.push_back(idx - 1);
        target += d.branches[idx - 1].rank;
      }
      so.purity = read_matrix(need(s, path, "purity"), at(path, "purity"), 0);
      if (so.purity.rows() == 0 && target > 0) throw InputError(at(path, "purity"), "empty purity for a nonzero target");
      if (auto dp = s.find("dual_purity"); dp != s.end())
        so.dual_purity = read_matrix(*dp, at(path, "dual_purity"), so.purity.cols());
      d.strata.push_back(std::move(so));
    }
  }
  return d;
}

DualGraph read_graph(const json& doc) {
  allow_keys(doc, "", {"format_version", "kind", "name", "branches", "vertices", "edges"});
  DualGraph g;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) throw InputError("name", "expected a string");
    g.name = it->get<std::string>();
  }
  g.branch_count = read_count(need(doc, "", "branches"), "branches");
  const json& vs = need(doc, "", "vertices");
  if (!vs.is_array()) throw InputError("vertices", "expected an array");
  for (std::size_t v = 0; v < vs.size(); ++v) {
    const std::string path = at("vertices", v);
    allow_keys(vs[v], path, {"genus", "name"});
    g.genera.push_back(read_count(need(vs[v], path, "genus"), at(path, "genus")));
  }
  const json& es = need(doc, "", "edges");
  if (!es.is_array()) throw InputError("edges", "expected an array");
  for (std::size_t k = 0; k < es.size(); ++k) {
    const std::string path = at("edges", k);
    allow_keys(es[k], path, {"ends", "label"});
    const json& ends = need(es[k], path, "ends");
    if (!ends.is_array() || ends.size() != 2) throw InputError(at(path, "ends"), "expected two vertex indices");
    GraphEdge e;
    e.from = read_count(ends[0], at(at(path, "ends"), 0));
    e.to = read_count(ends[1], at(at(path, "ends"), 1));
    const json& label = need(es[k], path, "label");
    if (!label.is_object()) throw InputError(at(path, "label"), "expected an object");
    for (const auto& [key, val] : label.items()) {
      const std::string lp = at(at(path, "label"), key);
      if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos)
        throw InputError(lp, "branch keys are positive integers");
      const unsigned long b = std::stoul(key);
      if (b < 1) throw InputError(lp, "branch numbers start at 1");
      e.label[b - 1] = read_integer(val, lp);
    }
    g.edges.push_back(std::move(e));
  }
  return g;
}

json datum_json(const DegenDatum& d) {
  json doc;
  doc["format_version"] = "1";
  doc["kind"] = "degeneration";
  doc["name"] = d.name;
  doc["residue_char"] = d.residue_char;
  doc["abelian_rank"] = d.abelian_rank;
  json cp;
  cp["rank"] = d.closed_rank;
  if (d.polarization) cp["polarization"] = write_matrix(*d.polarization);
  doc["closed_point"] = cp;
  json bs = json::array();
  for (const auto& b : d.branches) {
    json j;
    j["name"] = b.name;
    j["rank"] = b.rank;
    j["specialization"] = write_matrix(b.specialization);
    j["pairing"] = write_matrix(b.pairing);
    if (b.dual_specialization) j["dual_specialization"] = write_matrix(*b.dual_specialization);
    if (b.polarization) j["polarization"] = write_matrix(*b.polarization);
    bs.push_back(std::move(j));
  }
  doc["branches"] = bs;
  if (!d.strata.empty()) {
    json ss = json::array();
    for (const auto& s : d.strata) {
      json j;
      json list = json::array();
      for (std::size_t b : s.branches) list.push_back(b + 1);
      j["branches"] = list;
      j["purity"] = write_matrix(s.purity);
      if (s.dual_purity) j["dual_purity"] = write_matrix(*s.dual_purity);
      ss.push_back(std::move(j));
    }
    doc["strata"] = ss;
  }
  return doc;
}

json graph_json(const DualGraph& g) {
  json doc;
  doc["format_version"] = "1";
  doc["kind"] = "graph";
  doc["name"] = g.name;
  doc["branches"] = g.branch_count;
  json vs = json::array();
  for (std::size_t genus : g.genera) vs.push_back({{"genus", genus}});
  doc["vertices"] = vs;
  json es = json::array();
  for (const auto& e : g.edges) {
    json label = json::object();
    for (const auto& [b, m] : e.label) label[std::to_string(b + 1)] = write_integer(m);
    es.push_back({{"ends", {e.from, e.to}}, {"label", label}});
  }
  doc["edges"] = es;
  return doc;
}

}  // namespace

InputDocument parse_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Recover line and column from the byte offset.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') ++line, col = 1;
      else ++col;
    }
    throw InputError("line " + std::to_string(line) + ", column " + std::to_string(col), "malformed JSON");
  }
  if (!doc.is_object()) throw InputError("", "top level must be an object");
  const json& version = need(doc, "", "format_version");
  if (!version.is_string() || version.get<std::string>() != "1")
    throw InputError("format_version", "unsupported format version (expected \"1\")");
  std::string kind = "degeneration";
  if (auto it = doc.find("kind"); it != doc.end()) {
    if (!it->is_string()) throw InputError("kind", "expected a string");
    kind = it->get<std::string>();
  }
  InputDocument out;
  if (kind == "degeneration") {
    out.kind = DocumentKind::Degeneration;
    out.datum = read_datum(doc);
  } else if (kind == "graph") {
    out.kind = DocumentKind::Graph;
    out.graph = read_graph(doc);
  } else {
    throw InputError("kind", "expected \"degeneration\" or \"graph\"");
  }
  return out;
}

InputDocument load_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

std::string to_json(const DegenDatum& d) { return datum_json(d).dump(); }
std::string to_json(const DualGraph& g) { return graph_json(g).dump(); }

std::string canonical_json(const InputDocument& doc) {
  return doc.kind == DocumentKind::Graph ? to_json(doc.graph) : to_json(doc.datum);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string digest_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace degenkit
