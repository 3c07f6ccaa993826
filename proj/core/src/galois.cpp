#include "degenkit/galois.hpp"

#include "degenkit/normal_form.hpp"

#include <stdexcept>

namespace degenkit {

LatticeMap GaloisRep::sigma(std::size_t i) const {
  return LatticeMap::identity(rank()) + nilpotents.at(i);
}

namespace {

LatticeMap stack_all(const std::vector<LatticeMap>& maps, std::size_t cols) {
  return vstack<Integer>(maps, cols);
}

bool contains(const LatticeMap& big, const LatticeMap& small) {
  return column_hnf(hstack(big, small)) == column_hnf(big);
}

Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

bool coprime_to(const Integer& x, Prime l) {
  const Integer lz(static_cast<unsigned long>(l));
  return x != 0 && !mpz_divisible_p(x.get_mpz_t(), lz.get_mpz_t());
}

// {x : N x = 0 mod m for every N} / (common kernel + m Z^n).
FinAb fixed_quotient(const std::vector<LatticeMap>& ns, std::size_t n, const Integer& m) {
  if (n == 0) return FinAb::trivial();
  const LatticeMap stack = stack_all(ns, n);
  const std::size_t k = stack.rows();
  LatticeMap big = hstack(stack, m * LatticeMap::identity(k));
  const LatticeMap kernel = kernel_saturated(big);
  const LatticeMap l1 = column_hnf(kernel.select_rows(0, n));
  const LatticeMap l0 = column_hnf(hstack(kernel_saturated(stack), m * LatticeMap::identity(n)));
  const auto rel = solve(to_rational(l1), to_rational(l0));
  if (!rel || !is_integral(*rel)) throw std::logic_error("fixed_quotient: lattices are not nested");
  return cokernel(to_integer(*rel)).torsion;
}

}  // namespace

GaloisRep build_rep(const DegenDatum& d, Prime l) {
  require_usable_prime(d, l);
  GaloisRep rep;
  rep.l = l;
  rep.abelian_rank = d.abelian_rank;
  rep.toric_rank = d.closed_rank;
  rep.relative_dimension = d.relative_dimension();
  const std::size_t mu = d.closed_rank;
  const std::size_t n = rep.rank();
  const std::size_t dual_off = mu + 2 * d.abelian_rank;

  for (const LatticeMap& psi : closed_point_pairings(d)) {
    LatticeMap nm = LatticeMap::zero(n, n);
    for (std::size_t i = 0; i < mu; ++i)
      for (std::size_t j = 0; j < mu; ++j) nm(i, dual_off + j) = psi(i, j);
    rep.nilpotents.push_back(std::move(nm));
  }
  const LatticeMap id = LatticeMap::identity(n);
  rep.fixed_part = id.select_cols(0, dual_off);
  rep.toric_part = id.select_cols(0, mu);

  for (const auto& a : rep.nilpotents) {
    for (const auto& b : rep.nilpotents) {
      if (!(a * b).is_zero()) throw std::logic_error("build_rep: N_i N_j is not zero");
      if (a * b != b * a) throw std::logic_error("build_rep: generators do not commute");
    }
    const LatticeMap s = id + a;
    const LatticeMap u = s - id;
    if (!(u * u).is_zero()) throw std::logic_error("build_rep: generator is not unipotent of level 2");
  }
  const LatticeMap tg = fixed_sublattice(rep, {});
  if (tg.cols() != n - mu || column_hnf(tg) != column_hnf(rep.fixed_part))
    throw std::logic_error("build_rep: T^G differs from the fixed part");
  return rep;
}

LatticeMap fixed_sublattice(const GaloisRep& rep, const std::vector<std::size_t>& skip) {
  std::vector<LatticeMap> keep;
  for (std::size_t i = 0; i < rep.generator_count(); ++i) {
    bool skipped = false;
    for (std::size_t s : skip) skipped = skipped || s == i;
    if (!skipped) keep.push_back(rep.nilpotents[i]);
  }
  return kernel_saturated(stack_all(keep, rep.rank()));
}

bool star_condition(const GaloisRep& rep) {
  // With no generators nothing acts and T is its own fixed part.
  if (rep.generator_count() == 0) return true;
  std::vector<LatticeMap> parts;
  for (std::size_t i = 0; i < rep.generator_count(); ++i) parts.push_back(fixed_sublattice(rep, {i}));
  const LatticeSum sum = lattice_sum(parts, rep.rank());
  return sum.index && coprime_to(*sum.index, rep.l);
}

DecompositionResult decomposition_check(const GaloisRep& rep) {
  const std::size_t n = rep.generator_count();
  if (n == 0) return {true, "no generators"};

  const LatticeMap tg = fixed_sublattice(rep, {});
  const Quotient qg = quotient_by(tg);
  const std::size_t rq = qg.section.cols();

  std::vector<LatticeMap> blocks;
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < n; ++i) {
    const LatticeMap ti = kernel_saturated(rep.nilpotents[i]);
    blocks.push_back(quotient_by(ti).projection * qg.section);
    sizes.push_back(blocks.back().rows());
  }
  const LatticeMap alpha = stack_all(blocks, rq);
  if (!alpha.is_square()) return {false, "T/T^G and the sum of the T/T^{I_i} have different ranks"};
  const Integer det = rq == 0 ? Integer(1) : determinant(alpha);
  if (!coprime_to(det, rep.l))
    return {false, "T/T^G -> sum of T/T^{I_i} has determinant " + det.get_str() + ", not prime to l"};

  std::vector<LatticeMap> vs;
  std::size_t offset = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> other_rows;
    for (std::size_t r = 0; r < alpha.rows(); ++r)
      if (r < offset || r >= offset + sizes[i]) other_rows.push_back(r);
    offset += sizes[i];
    const LatticeMap vi = kernel_saturated(alpha.select_rows(other_rows));
    vs.push_back(vi);
    const LatticeMap wi = hstack(tg, qg.section * vi);
    for (std::size_t j = 0; j < n; ++j) {
      const LatticeMap image = rep.nilpotents[j] * wi;
      if (j != i && !image.is_zero())
        return {false, "block " + std::to_string(i + 1) + " is moved by generator " + std::to_string(j + 1)};
      if (j == i && !contains(wi, image))
        return {false, "block " + std::to_string(i + 1) + " is not stable under its own generator"};
    }
  }
  const LatticeSum sum = lattice_sum(vs, rq);
  if (rq > 0 && (!sum.index || !coprime_to(*sum.index, rep.l)))
    return {false, "blocks span T/T^G with index " + (sum.index ? sum.index->get_str() : std::string("infinite")) +
                       ", not prime to l"};
  return {true, "T/T^G splits into " + std::to_string(n) + (n == 1 ? " block" : " blocks")};
}

FinAb torsion_phi_group(const GaloisRep& rep, const TraitProfile& profile, unsigned r) {
  if (r < 1) throw std::invalid_argument("torsion_phi_group: r must be at least 1");
  if (profile.multiplicities.size() != rep.generator_count())
    throw std::invalid_argument("torsion_phi_group: profile length does not match the generators");
  LatticeMap nsum = LatticeMap::zero(rep.rank(), rep.rank());
  for (std::size_t i = 0; i < rep.generator_count(); ++i) {
    LatticeMap term = rep.nilpotents[i];
    term *= profile.multiplicities[i];
    nsum += term;
  }
  Integer m;
  mpz_ui_pow_ui(m.get_mpz_t(), rep.l, r);
  return fixed_quotient({nsum}, rep.rank(), m);
}

FinAb closed_point_torsion(const GaloisRep& rep, unsigned r) {
  if (r < 1) throw std::invalid_argument("closed_point_torsion: r must be at least 1");
  Integer m;
  mpz_ui_pow_ui(m.get_mpz_t(), rep.l, r);
  return fixed_quotient(rep.nilpotents, rep.rank(), m);
}

unsigned level_exceeding(Prime l, const Integer& bound) {
  if (l < 2) throw std::invalid_argument("level_exceeding: l must be at least 2");
  const Integer b = abs_value(bound);
  Integer power(static_cast<unsigned long>(l));
  unsigned r = 1;
  while (power <= b) {
    power *= static_cast<unsigned long>(l);
    ++r;
  }
  return r;
}

}  // namespace degenkit
