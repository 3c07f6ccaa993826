#include "degenkit/degeneration.hpp"

#include "degenkit/monodromy.hpp"
#include "degenkit/normal_form.hpp"

#include <algorithm>
#include <sstream>

namespace degenkit {

bool DegenDatum::has_explicit_dual() const {
  return std::any_of(branches.begin(), branches.end(),
                     [](const Branch& b) { return b.dual_specialization.has_value(); });
}

const LatticeMap& DegenDatum::dual_specialization(std::size_t i) const {
  const Branch& b = branches.at(i);
  return b.dual_specialization ? *b.dual_specialization : b.specialization;
}

std::string Violation::to_string() const {
  std::ostringstream os;
  os << invariant;
  if (branch) os << " (branch " << (*branch + 1) << ")";
  if (!detail.empty()) os << ": " << detail;
  return os.str();
}

namespace {
std::string join_violations(const std::vector<Violation>& v) {
  std::string s = "invalid degeneration datum";
  for (const auto& x : v) s += "; " + x.to_string();
  return s;
}

std::string shape(const LatticeMap& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

bool has_shape(const LatticeMap& m, std::size_t r, std::size_t c) { return m.rows() == r && m.cols() == c; }
}  // namespace

InvalidDatum::InvalidDatum(std::vector<Violation> v)
    : std::invalid_argument(join_violations(v)), violations_(std::move(v)) {}

std::vector<Violation> validate(const DegenDatum& d) {
  std::vector<Violation> out;
  auto add = [&](std::string inv, std::optional<std::size_t> br, std::string detail = std::string()) {
    out.push_back({std::move(inv), br, std::move(detail)});
  };

  if (d.residue_char != 0 && !is_prime(d.residue_char))
    add("residue characteristic not prime", std::nullopt, std::to_string(d.residue_char));

  const std::size_t mu = d.closed_rank;
  const bool explicit_dual = d.has_explicit_dual();
  bool shapes_ok = true;

  if (d.polarization && !has_shape(*d.polarization, mu, mu)) {
    add("dimension mismatch", std::nullopt, "closed-point polarization is " + shape(*d.polarization));
    shapes_ok = false;
  }

  for (std::size_t i = 0; i < d.branch_count(); ++i) {
    const Branch& b = d.branches[i];
    bool ok = true;
    if (!has_shape(b.specialization, b.rank, mu)) {
      add("dimension mismatch", i, "specialization is " + shape(b.specialization));
      ok = false;
    }
    if (!has_shape(b.pairing, b.rank, b.rank)) {
      add("dimension mismatch", i, "pairing is " + shape(b.pairing));
      ok = false;
    }
    if (explicit_dual && !b.dual_specialization) {
      add("dual side incomplete", i, "some branches carry a dual specialization and this one does not");
      ok = false;
    }
    if (b.dual_specialization && !has_shape(*b.dual_specialization, b.rank, mu)) {
      add("dimension mismatch", i, "dual specialization is " + shape(*b.dual_specialization));
      ok = false;
    }
    if (b.polarization && !has_shape(*b.polarization, b.rank, b.rank)) {
      add("dimension mismatch", i, "polarization is " + shape(*b.polarization));
      ok = false;
    }
    if (!ok) {
      shapes_ok = false;
      continue;
    }

    if (!is_surjective(b.specialization)) add("specialization not surjective", i);
    if (b.dual_specialization && !is_surjective(*b.dual_specialization))
      add("dual specialization not surjective", i);
    if (!is_injective(b.pairing)) add("pairing not injective", i);

    if (b.polarization && !is_injective(*b.polarization)) add("polarization not injective", i);

    // Positivity is only decidable when a polarization is known; the
    // principally polarized default supplies the identity.
    std::optional<LatticeMap> lambda = b.polarization;
    if (!lambda && !explicit_dual) lambda = LatticeMap::identity(b.rank);
    if (lambda && is_injective(*lambda)) {
      if (auto why = validate_pairing(b.pairing, *lambda)) add("pairing " + *why, i);
    }

    if (b.polarization && (d.polarization || !explicit_dual)) {
      const LatticeMap lam = d.polarization ? *d.polarization : LatticeMap::identity(mu);
      if (d.dual_specialization(i) * lam != *b.polarization * b.specialization)
        add("polarization incompatible with specialization", i);
    }
  }

  if (d.polarization && shapes_ok && !is_injective(*d.polarization))
    add("polarization not injective", std::nullopt, "closed point");

  if (!shapes_ok) return out;

  std::size_t sum_ranks = 0;
  for (const auto& b : d.branches) sum_ranks += b.rank;
  if (mu > sum_ranks)
    add("toric rank inequality violated", std::nullopt,
        "rank X = " + std::to_string(mu) + " exceeds sum of branch ranks " + std::to_string(sum_ranks));
  if (!is_injective(purity_matrix(d))) add("purity map not injective", std::nullopt);
  if (explicit_dual && !is_injective(dual_purity_matrix(d))) add("dual purity map not injective", std::nullopt);

  for (const auto& s : d.strata) {
    std::vector<std::size_t> sorted = s.branches;
    std::sort(sorted.begin(), sorted.end());
    const bool bad_index = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
                           (!sorted.empty() && sorted.back() >= d.branch_count());
    if (bad_index || sorted != s.branches) {
      add("stratum branch list invalid", std::nullopt, "indices must be distinct, ascending and in range");
      continue;
    }
    std::vector<LatticeMap> rows, dual_rows;
    std::size_t target = 0;
    for (std::size_t j : s.branches) {
      rows.push_back(d.branches[j].specialization);
      dual_rows.push_back(d.dual_specialization(j));
      target += d.branches[j].rank;
    }
    const LatticeMap pj = vstack<Integer>(rows, mu);
    if (s.purity.rows() != target || !is_injective(s.purity) || !same_image(s.purity, pj)) {
      add("stratum purity inconsistent", std::nullopt,
          "supplied purity must be injective with the same image as X");
      continue;
    }
    if (s.dual_purity) {
      const LatticeMap dpj = vstack<Integer>(dual_rows, mu);
      if (s.dual_purity->rows() != target || !is_injective(*s.dual_purity) ||
          !same_image(*s.dual_purity, dpj) || s.dual_purity->cols() != s.purity.cols())
        add("stratum purity inconsistent", std::nullopt, "supplied dual purity does not match X'");
    }
  }
  return out;
}

void require_valid(const DegenDatum& datum) {
  auto v = validate(datum);
  if (!v.empty()) throw InvalidDatum(std::move(v));
}

LatticeMap purity_matrix(const DegenDatum& d) {
  std::vector<LatticeMap> blocks;
  blocks.reserve(d.branch_count());
  for (const auto& b : d.branches) blocks.push_back(b.specialization);
  return vstack<Integer>(blocks, d.closed_rank);
}

LatticeMap dual_purity_matrix(const DegenDatum& d) {
  std::vector<LatticeMap> blocks;
  blocks.reserve(d.branch_count());
  for (std::size_t i = 0; i < d.branch_count(); ++i) blocks.push_back(d.dual_specialization(i));
  return vstack<Integer>(blocks, d.closed_rank);
}

Verdict analyze(const DegenDatum& d) {
  Verdict v;
  v.purity_cokernel = cokernel(purity_matrix(d));
  v.weakly_toric_additive = v.purity_cokernel.free_rank == 0;
  v.toric_additive = v.purity_cokernel.is_trivial();
  for (Prime l : v.purity_cokernel.torsion.primes())
    if (l != d.residue_char) v.failing_primes.insert(l);
  return v;
}

void require_usable_prime(const DegenDatum& d, Prime l) {
  if (!is_prime(l)) throw PrimeError(std::to_string(l) + " is not prime");
  if (l == d.residue_char) throw PrimeError("prime equals residue characteristic");
}

bool is_l_toric_additive(const DegenDatum& d, Prime l) {
  require_usable_prime(d, l);
  const LatticeMap p = purity_matrix(d);
  if (!p.is_square()) return false;
  const Integer lz(static_cast<unsigned long>(l));
  for (const auto& f : smith_invariants(p))
    if (mpz_divisible_p(f.get_mpz_t(), lz.get_mpz_t())) return false;
  return smith_invariants(p).size() == p.rows();
}

RankProfile toric_rank_profile(const DegenDatum& d) {
  RankProfile r;
  r.closed = d.closed_rank;
  std::size_t sum = 0;
  for (const auto& b : d.branches) {
    r.branches.push_back(b.rank);
    sum += b.rank;
  }
  r.deficit = sum >= d.closed_rank ? sum - d.closed_rank : 0;
  return r;
}

namespace {

// e * lambda^{-1}, with e the exponent of coker(lambda): the smallest
// integral "inverse" isogeny, so that lambda' lambda = e.
LatticeMap dual_isogeny(const LatticeMap& lambda) {
  if (lambda.rows() == 0) return lambda;
  const auto inv = inverse(to_rational(lambda));
  if (!inv) throw std::invalid_argument("polarization is not an isogeny");
  const auto factors = smith_invariants(lambda);
  const Integer e = factors.empty() ? Integer(1) : factors.back();
  RatMatrix scaled = *inv;
  scaled *= Rational(e);
  return to_integer(scaled);
}

}  // namespace

DegenDatum dual_datum(const DegenDatum& d) {
  DegenDatum out = d;
  out.name = d.name.empty() ? "dual" : d.name + " (dual)";
  const bool explicit_dual = d.has_explicit_dual();
  for (std::size_t i = 0; i < d.branch_count(); ++i) {
    const Branch& b = d.branches[i];
    Branch& nb = out.branches[i];
    nb.pairing = b.pairing.transpose();
    if (explicit_dual) {
      nb.specialization = *b.dual_specialization;
      nb.dual_specialization = b.specialization;
    }
    if (b.polarization) nb.polarization = dual_isogeny(*b.polarization);
  }
  if (d.polarization) out.polarization = dual_isogeny(*d.polarization);
  out.strata.clear();
  for (const auto& s : d.strata) {
    if (!explicit_dual) {
      out.strata.push_back(s);
    } else if (s.dual_purity) {
      out.strata.push_back({s.branches, *s.dual_purity, s.purity});
    }
  }
  return out;
}

}  // namespace degenkit
