#include "cli.hpp"

#include <degenkit/galois.hpp>
#include <degenkit/io.hpp>
#include <degenkit/monodromy.hpp>
#include <degenkit/neron.hpp>
#include <degenkit/normal_form.hpp>
#include <degenkit/random.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <sstream>

#ifndef DEGENKIT_DEFAULT_FIXTURES
#define DEGENKIT_DEFAULT_FIXTURES "fixtures"
#endif

namespace degenkit::cli {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct Falsification : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json integer(const Integer& x) {
  if (x.fits_slong_p()) return json(x.get_si());
  return json(x.get_str());
}

json matrix(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json rational_matrix(const RatMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational& q = m(i, j);
      if (q.get_den() == 1) row.push_back(integer(q.get_num()));
      else row.push_back(q.get_str());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json group(const FinAb& g) {
  json j;
  json inv = json::array();
  for (const auto& d : g.invariant_factors()) inv.push_back(integer(d));
  j["invariant_factors"] = inv;
  if (g.is_finite()) j["order"] = integer(g.order());
  else j["divisible_rank"] = g.divisible_rank();
  j["text"] = g.to_string();
  return j;
}

json cokernel_json(const Cokernel& c) {
  json j = group(c.torsion);
  j["free_rank"] = c.free_rank;
  return j;
}

json one_based(const std::vector<std::size_t>& idx) {
  json a = json::array();
  for (auto i : idx) a.push_back(i + 1);
  return a;
}

std::vector<Integer> parse_integer_list(const std::string& text, const char* what) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    item = b == std::string::npos ? "" : item.substr(b, e - b + 1);
    if (item.empty() || item.find_first_not_of("0123456789-", 0) != std::string::npos ||
        item.find('-', 1) != std::string::npos || item == "-")
      throw std::invalid_argument(std::string(what) + ": \"" + item + "\" is not an integer");
    out.emplace_back(item);
  }
  if (out.empty()) throw std::invalid_argument(std::string(what) + " is empty");
  return out;
}

fs::path resolve_input(const std::string& name) {
  const fs::path p(name);
  if (fs::exists(p)) return p;
  std::vector<fs::path> dirs;
  if (const char* env = std::getenv("DEGENKIT_FIXTURES")) dirs.emplace_back(env);
  else dirs.emplace_back(DEGENKIT_DEFAULT_FIXTURES);
  if (p.is_relative()) {
    for (const auto& d : dirs) {
      if (fs::exists(d / p)) return d / p;
      fs::path with_ext = d / p;
      with_ext += ".json";
      if (fs::exists(with_ext)) return with_ext;
    }
  }
  throw InputError("", "no such file: " + name);
}

struct Loaded {
  InputDocument doc;
  DegenDatum datum;
  std::string digest;
};

Loaded load(const std::string& file, bool require_graph = false) {
  Loaded l;
  l.doc = load_document(resolve_input(file));
  l.digest = digest_hex(fnv1a64(canonical_json(l.doc)));
  if (require_graph && l.doc.kind != DocumentKind::Graph)
    throw InputError("kind", "this command needs a graph document");
  l.datum = l.doc.kind == DocumentKind::Graph ? graph_to_datum(l.doc.graph) : l.doc.datum;
  require_valid(l.datum);
  return l;
}

json header(const char* command, const Loaded& l) {
  json j;
  j["command"] = command;
  j["input_digest"] = l.digest;
  j["input"] = {{"kind", l.doc.kind == DocumentKind::Graph ? "graph" : "degeneration"},
                {"name", l.doc.kind == DocumentKind::Graph ? l.doc.graph.name : l.datum.name}};
  j["warnings"] = json::array();
  return j;
}

json verdict_json(const Verdict& v) {
  json failing = json::array();
  for (Prime p : v.failing_primes) failing.push_back(p);
  return {{"toric_additive", v.toric_additive},
          {"weakly_toric_additive", v.weakly_toric_additive},
          {"failing_primes", failing},
          {"purity_cokernel", cokernel_json(v.purity_cokernel)}};
}

json rank_profile_json(const RankProfile& r) {
  return {{"closed", r.closed}, {"branches", r.branches}, {"deficit", r.deficit}};
}

TraitProfile profile_from(const std::string& text, const DegenDatum& d, bool default_ones) {
  TraitProfile t;
  if (text.empty()) {
    if (!default_ones) throw std::invalid_argument("--profile is required");
    t.multiplicities.assign(d.branch_count(), Integer(1));
    return t;
  }
  t.multiplicities = parse_integer_list(text, "--profile");
  return t;
}

Prime parse_prime(long long l) {
  if (l < 2) throw PrimeError(std::to_string(l) + " is not prime");
  return static_cast<Prime>(l);
}

// Subgroup killed by m.
FinAb torsion_of_exponent(const FinAb& g, const Integer& m) {
  std::vector<Integer> orders;
  for (const auto& d : g.invariant_factors()) {
    Integer x;
    mpz_gcd(x.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
    orders.push_back(x);
  }
  return FinAb::from_cyclic_orders(orders);
}

struct Options {
  std::string file;
  std::string profile;
  std::string kummer;
  long long l = 0;
  unsigned r = 0;
  std::uint64_t seed = 1;
  std::string kind = "random";
};

json cmd_analyze(const Options& o) {
  const Loaded l = load(o.file);
  json j = header("analyze", l);
  j["verdict"] = verdict_json(analyze(l.datum));
  j["rank_profile"] = rank_profile_json(toric_rank_profile(l.datum));
  if (o.l != 0) {
    const Prime p = parse_prime(o.l);
    j["l"] = p;
    j["l_toric_additive"] = is_l_toric_additive(l.datum, p);
  }
  if (l.datum.has_explicit_dual()) j["dual_verdict"] = verdict_json(analyze(dual_datum(l.datum)));
  return j;
}

json cmd_trait(const Options& o) {
  const Loaded l = load(o.file);
  json j = header("trait", l);
  const TraitProfile t = profile_from(o.profile, l.datum, false);
  const ComposedPairing f = compose_trait(l.datum, t);
  for (const auto& w : f.warnings) j["warnings"].push_back(w);
  json prof = json::array();
  for (const auto& a : t.multiplicities) prof.push_back(integer(a));
  j["profile"] = prof;
  j["transversal"] = t.transversal();
  j["active"] = one_based(f.stratum.branches);
  j["stratum"] = {{"rank", f.stratum.lattice.rank},
                  {"purity", matrix(f.stratum.purity)},
                  {"specialization", matrix(f.stratum.specialization)},
                  {"supplied", f.stratum.supplied}};
  j["phi_f"] = matrix(f.pairing);
  const FinAb up = component_group(f.pairing);
  j["upsilon"] = group(up);
  if (o.l != 0) {
    const Prime p = parse_prime(o.l);
    require_usable_prime(l.datum, p);
    j["l"] = p;
    j["upsilon_l_part"] = group(l_part(up, p));
  }
  return j;
}

json cmd_oracle(const Options& o, bool& disagree) {
  const Loaded l = load(o.file);
  json j = header("oracle", l);
  if (o.l == 0) throw std::invalid_argument("--l is required");
  const Prime p = parse_prime(o.l);
  require_usable_prime(l.datum, p);
  const TraitProfile t = profile_from(o.profile, l.datum, true);
  const ComposedPairing f = compose_trait(l.datum, t);
  for (const auto& w : f.warnings) j["warnings"].push_back(w);
  const FinAb up = component_group(f.pairing);
  const Integer det = f.pairing.rows() == 0 ? Integer(1) : determinant(f.pairing);
  const unsigned stable = level_exceeding(p, det);
  const unsigned r = o.r == 0 ? stable : o.r;
  if (r < stable)
    j["warnings"].push_back("r = " + std::to_string(r) + " is below the stable level " + std::to_string(stable) +
                            "; comparing l^r-torsion only");
  Integer m;
  mpz_ui_pow_ui(m.get_mpz_t(), p, r);

  const GaloisRep rep = build_rep(l.datum, p);
  const bool lta = is_l_toric_additive(l.datum, p);
  const bool star = star_condition(rep);
  const DecompositionResult dec = decomposition_check(rep);
  const FinAb lattice_part = torsion_of_exponent(l_part(up, p), m);
  const FinAb galois_part = torsion_phi_group(rep, t, r);

  const ClosedPointBound bound = closed_point_bound(l.datum, p);
  const std::vector<LatticeMap> psis = closed_point_pairings(l.datum);
  Integer prod = 1;
  for (const auto& d : smith_invariants(vstack<Integer>(psis, l.datum.closed_rank))) prod *= d;
  const FinAb exact = closed_point_torsion(rep, std::max(r, level_exceeding(p, prod)));

  json prof = json::array();
  for (const auto& a : t.multiplicities) prof.push_back(integer(a));
  j["l"] = p;
  j["r"] = r;
  j["profile"] = prof;
  j["phi_f"] = matrix(f.pairing);
  j["lattice_side"] = {{"l_toric_additive", lta},
                       {"component_group_l_part", group(lattice_part)},
                       {"closed_point_bound", group(bound.bound)}};
  j["galois_side"] = {{"star_condition", star},
                      {"decomposition", {{"holds", dec.holds}, {"reason", dec.reason}}},
                      {"torsion_phi_group", group(galois_part)},
                      {"closed_point_exact", group(exact)}};
  const bool agree_ta = lta == star && star == dec.holds;
  const bool agree_phi = lattice_part == galois_part;
  j["agree"] = {{"toric_additivity", agree_ta}, {"component_group", agree_phi}};
  j["closed_point_gap"] = !(exact == bound.bound);
  if (!(exact == bound.bound)) j["warnings"].push_back("closed-point bound is strict for this datum");
  disagree = !(agree_ta && agree_phi);
  return j;
}

json cmd_converse(const Options& o, bool& falsified) {
  const Loaded l = load(o.file);
  json j = header("converse", l);
  const ConverseCertificate c = converse_from_datum(l.datum);
  std::vector<std::size_t> rest;
  for (std::size_t k = 1; k < l.datum.branch_count(); ++k) rest.push_back(k);
  const StratumLattice y2 = stratum_lattice(l.datum, rest);
  j["P"] = matrix(l.datum.branches[0].specialization);
  j["Q"] = matrix(y2.specialization);
  j["verdict"] = to_string(c.verdict);
  j["hypothesis_holds"] = c.hypothesis_holds;
  j["coker_AtPsi"] = group(c.coker_at_psi);
  j["coker_AtPsiA"] = group(c.coker_at_psi_a);
  if (c.theta) j["theta"] = rational_matrix(*c.theta);
  if (c.verdict == ConverseVerdict::Certified || c.verdict == ConverseVerdict::DecompositionFailed) {
    j["chi1"] = matrix(c.chi1);
    j["chi2"] = matrix(c.chi2);
    j["idempotent"] = c.idempotent;
    j["sums_to_identity"] = c.sums_to_identity;
    j["kernel_decomposition"] = c.kernel_decomposition;
    j["restriction_isomorphism"] = c.restriction_isomorphism;
    j["a_isomorphism"] = c.a_isomorphism;
  }
  j["toric_additive"] = analyze(l.datum).toric_additive;
  falsified = c.verdict == ConverseVerdict::IntegralityFailed || c.verdict == ConverseVerdict::DecompositionFailed ||
              (c.verdict == ConverseVerdict::Certified) != analyze(l.datum).toric_additive;
  return j;
}

json cmd_psi(const Options& o, bool& falsified) {
  const Loaded l = load(o.file);
  json j = header("psi", l);
  const PsiGroup g = psi_group(l.datum);
  json comps = json::array();
  for (const auto& c : g.components) comps.push_back(group(c));
  j["psi"] = {{"components", comps}, {"total", group(g.total)}, {"order", integer(g.order)}};
  falsified = false;
  if (!o.kummer.empty()) {
    const auto m = parse_integer_list(o.kummer, "--kummer");
    const PsiFixedPoints f = psi_fixed_points(l.datum, m);
    json ms = json::array();
    for (const auto& x : m) ms.push_back(integer(x));
    j["kummer"] = {{"m", ms}, {"rescaled", group(f.rescaled)}, {"fixed", group(f.fixed)}, {"equals_psi", f.equals_psi}};
    falsified = falsified || !f.equals_psi;
  }
  if (!o.profile.empty()) {
    const TraitProfile t = profile_from(o.profile, l.datum, false);
    const TraitSurjectivity s = trait_surjectivity_check(l.datum, t);
    j["surjectivity"] = {{"active", one_based(s.active)},
                         {"psi_active", group(s.psi_active)},
                         {"upsilon", group(s.upsilon)},
                         {"map_matrix", matrix(s.map_matrix)},
                         {"image_order", integer(s.image_order)},
                         {"surjective", s.surjective},
                         {"section", s.section_ok},
                         {"order_divides", s.order_divides}};
    falsified = falsified || !s.surjective || !s.section_ok || !s.order_divides;
  }
  return j;
}

json cmd_curve(const Options& o, bool& falsified) {
  const Loaded l = load(o.file, true);
  json j = header("curve", l);
  const CurveReport r = curve_equivalences(l.doc.graph);
  json branches = json::array();
  for (const auto& b : r.datum.branches) branches.push_back(b.rank);
  j["datum"] = {{"closed_rank", r.datum.closed_rank}, {"branch_ranks", branches}, {"abelian_rank", r.datum.abelian_rank}};
  json pairings = json::array();
  for (const auto& b : r.datum.branches) pairings.push_back(matrix(b.pairing));
  j["pairings"] = pairings;
  j["verdict"] = verdict_json(r.verdict);
  j["cokernel_torsion_free"] = r.cokernel_torsion_free;
  j["weak_equals_ta"] = r.weak_equals_ta;
  json lv = json::array();
  for (const auto& [p, v] : r.l_verdicts) lv.push_back({{"l", p}, {"l_toric_additive", v}});
  j["l_verdicts"] = lv;
  j["falsified"] = r.falsified;
  if (r.falsified) j["warnings"].push_back("falsification: " + r.detail + "; graph " + to_json(l.doc.graph));
  falsified = r.falsified;
  return j;
}

std::string cmd_generate(const Options& o) {
  Rng rng(o.seed);
  if (o.kind == "ta") {
    DegenDatum d = random_ta_datum(rng);
    d.name = "random TA datum, seed " + std::to_string(o.seed);
    return json::parse(to_json(d)).dump(2);
  }
  if (o.kind == "random") {
    DegenDatum d = random_datum(rng);
    d.name = "random datum, seed " + std::to_string(o.seed);
    return json::parse(to_json(d)).dump(2);
  }
  if (o.kind == "graph") {
    DualGraph g = random_graph(rng);
    g.name = "random graph, seed " + std::to_string(o.seed);
    return json::parse(to_json(g)).dump(2);
  }
  throw std::invalid_argument("--kind must be ta, random or graph");
}

bool scalar_array(const json& a) {
  for (const auto& x : a)
    if (x.is_structured()) return false;
  return true;
}

bool matrix_like(const json& a) {
  for (const auto& x : a)
    if (!x.is_array() || !scalar_array(x)) return false;
  return !a.empty();
}

std::string inline_value(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  return v.dump();
}

void render(const json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, v] : j.items()) {
    if (v.is_object()) {
      out << pad << key << ":\n";
      render(v, out, indent + 2);
    } else if (v.is_array() && !(scalar_array(v) || matrix_like(v))) {
      out << pad << key << ":\n";
      for (const auto& item : v) {
        if (item.is_object()) {
          out << pad << "  -\n";
          render(item, out, indent + 4);
        } else {
          out << pad << "  - " << inline_value(item) << "\n";
        }
      }
    } else if (key == "warnings" && v.empty()) {
      continue;
    } else {
      out << pad << key << ": " << inline_value(v) << "\n";
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Toric additivity and component groups of degenerating abelian varieties", "degenkit"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable output");

  Options o;
  auto add_file = [&](CLI::App* sub) { sub->add_option("file", o.file, "Input document")->required(); };
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Toric additivity verdicts of a datum");
  add_file(analyze_cmd);
  analyze_cmd->add_option("--l", o.l, "Also decide l-toric additivity");
  CLI::App* trait_cmd = app.add_subcommand("trait", "Monodromy pairing and component group along a trait");
  add_file(trait_cmd);
  trait_cmd->add_option("--profile", o.profile, "Multiplicities a_1,...,a_n")->required();
  trait_cmd->add_option("--l", o.l, "Report the l-part");
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Compare lattice results with the Galois-side oracle");
  add_file(oracle_cmd);
  oracle_cmd->add_option("--l", o.l, "Prime l")->required();
  oracle_cmd->add_option("--r", o.r, "Level l^r (default: smallest r with l^r > |det phi_f|)");
  oracle_cmd->add_option("--profile", o.profile, "Trait multiplicities (default: all 1)");
  CLI::App* converse_cmd = app.add_subcommand("converse", "Converse certificate for branch 1 against the rest");
  add_file(converse_cmd);
  CLI::App* psi_cmd = app.add_subcommand("psi", "Psi group, Kummer fixed points and trait surjectivity");
  add_file(psi_cmd);
  psi_cmd->add_option("--kummer", o.kummer, "Kummer multipliers m_1,...,m_n");
  psi_cmd->add_option("--profile", o.profile, "Transversal trait for the surjectivity check");
  CLI::App* curve_cmd = app.add_subcommand("curve", "Curve equivalences for a labelled dual graph");
  add_file(curve_cmd);
  CLI::App* gen_cmd = app.add_subcommand("generate", "Print a random input document");
  gen_cmd->add_option("--seed", o.seed, "Seed")->required();
  gen_cmd->add_option("--kind", o.kind, "ta, random or graph");

  for (CLI::App* sub : {analyze_cmd, trait_cmd, oracle_cmd, converse_cmd, psi_cmd, curve_cmd, gen_cmd})
    sub->add_flag("--json", as_json, "Machine-readable output");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (gen_cmd->parsed()) {
      out << cmd_generate(o) << "\n";
      return kOk;
    }
    json report;
    bool flagged = false;
    if (analyze_cmd->parsed()) report = cmd_analyze(o);
    else if (trait_cmd->parsed()) report = cmd_trait(o);
    else if (oracle_cmd->parsed()) report = cmd_oracle(o, flagged);
    else if (converse_cmd->parsed()) report = cmd_converse(o, flagged);
    else if (psi_cmd->parsed()) report = cmd_psi(o, flagged);
    else if (curve_cmd->parsed()) report = cmd_curve(o, flagged);
    report["falsification"] = flagged;
    if (as_json) out << report.dump(2) << "\n";
    else render(report, out, 0);
    return flagged ? kFalsified : kOk;
  } catch (const InvalidDatum& e) {
    err << "error: invalid degeneration datum\n";
    for (const auto& v : e.violations()) err << "  " << v.to_string() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::logic_error& e) {
    err << "internal check failed: " << e.what() << "\n";
    return kFalsified;
  }
}

}  // namespace degenkit::cli
