#include "degenkit/neron.hpp"

#include "degenkit/normal_form.hpp"

#include <stdexcept>

namespace degenkit {

PsiGroup psi_group(const DegenDatum& d) {
  PsiGroup g;
  for (const auto& b : d.branches) {
    g.components.push_back(component_group(b.pairing));
    g.order *= g.components.back().order();
  }
  g.total = direct_sum(g.components);
  return g;
}

DegenDatum kummer_rescale(const DegenDatum& d, const std::vector<Integer>& m) {
  if (m.size() != d.branch_count())
    throw std::invalid_argument("kummer: expected " + std::to_string(d.branch_count()) + " multipliers");
  const Integer p(static_cast<unsigned long>(d.residue_char));
  DegenDatum out = d;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] < 1) throw std::invalid_argument("kummer: multipliers must be positive");
    if (d.residue_char != 0 && m[i] % p == 0)
      throw std::invalid_argument("kummer: multiplier " + m[i].get_str() + " is not coprime to the residue characteristic");
    out.branches[i].pairing *= m[i];
  }
  return out;
}

PsiFixedPoints psi_fixed_points(const DegenDatum& d, const std::vector<Integer>& m) {
  const DegenDatum rescaled = kummer_rescale(d, m);
  std::vector<FinAb> primed, fixed;
  for (std::size_t i = 0; i < d.branch_count(); ++i) {
    const FinAb pi = component_group(rescaled.branches[i].pairing);
    const FinAb away = torsion_kernel_qz(d.branches[i].pairing);
    primed.push_back(pi);
    for (Prime l : pi.primes())
      fixed.push_back(l == d.residue_char ? l_part(pi, l) : l_part(away.torsion(), l));
  }
  PsiFixedPoints out;
  out.rescaled = direct_sum(primed);
  out.fixed = direct_sum(fixed);
  out.equals_psi = out.fixed == psi_group(d).total;
  return out;
}

namespace {

bool unimodular(const LatticeMap& m) {
  if (!m.is_square()) return false;
  if (m.rows() == 0) return true;
  const Integer det = determinant(m);
  return det == 1 || det == -1;
}

bool integral_vectors(const RatMatrix& m) { return is_integral(m); }

Integer common_denominator(const RatMatrix& m) {
  Integer den = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Integer g;
      mpz_lcm(g.get_mpz_t(), den.get_mpz_t(), m(i, j).get_den_mpz_t());
      den = g;
    }
  return den;
}

// |(Z^n + span(cols)) / Z^n| for rational columns.
Integer order_mod_lattice(const RatMatrix& cols) {
  const std::size_t n = cols.rows();
  if (n == 0) return 1;
  const Integer den = common_denominator(cols);
  RatMatrix scaled = cols;
  scaled *= Rational(den);
  LatticeMap gens = hstack(to_integer(scaled), den * LatticeMap::identity(n));
  const auto idx = index_in_ambient(gens);
  if (!idx) throw std::logic_error("order_mod_lattice: lattice lost rank");
  Integer full = 1;
  for (std::size_t i = 0; i < n; ++i) full *= den;
  return full / *idx;
}

}  // namespace

TraitSurjectivity trait_surjectivity_check(const DegenDatum& d, const TraitProfile& profile) {
  if (!analyze(d).toric_additive || !unimodular(dual_purity_matrix(d)))
    throw std::invalid_argument("surjectivity check requires a toric additive datum");
  if (!profile.transversal()) throw std::invalid_argument("surjectivity check requires a transversal trait");

  const ComposedPairing f = compose_trait(d, profile);
  TraitSurjectivity out;
  out.active = profile.active();
  out.upsilon = component_group(f.pairing);

  std::vector<FinAb> parts;
  std::vector<LatticeMap> blocks;
  std::vector<RatMatrix> inverses;
  for (std::size_t j : out.active) {
    parts.push_back(component_group(d.branches[j].pairing));
    blocks.push_back(d.branches[j].pairing);
    inverses.push_back(*inverse(to_rational(d.branches[j].pairing)));
  }
  out.psi_active = direct_sum(parts);

  // Projection of the full X' coordinates onto the active blocks.
  std::size_t total = 0;
  std::vector<std::size_t> offsets;
  for (const auto& b : d.branches) {
    offsets.push_back(total);
    total += b.rank;
  }
  std::vector<std::size_t> keep;
  for (std::size_t j : out.active)
    for (std::size_t k = 0; k < d.branches[j].rank; ++k) keep.push_back(offsets[j] + k);
  const LatticeMap drop = LatticeMap::identity(total).select_rows(keep);

  const std::size_t ry = f.stratum.lattice.rank;
  const RatMatrix dual_inv =
      ry == 0 ? RatMatrix(0, 0) : *inverse(to_rational(f.stratum.dual_purity));
  if (!is_integral(dual_inv)) throw std::logic_error("surjectivity: dual stratum purity is not unimodular");
  out.map_matrix = to_integer(dual_inv) * drop;

  // Generators of Psi_J as rational vectors modulo integers.
  const RatMatrix gens = block_diagonal<Rational>(inverses);
  const RatMatrix images = dual_inv * gens;
  out.lands_in_upsilon = integral_vectors(to_rational(f.pairing) * images);
  out.image_order = order_mod_lattice(images);
  out.surjective = out.lands_in_upsilon && out.image_order == out.upsilon.order();

  // Section Upsilon -> Psi_J through p'_Y.
  if (ry == 0) {
    out.section_ok = true;
  } else {
    const RatMatrix up = *inverse(to_rational(f.pairing));
    const RatMatrix back = to_rational(f.stratum.dual_purity) * up;
    const bool in_psi = integral_vectors(to_rational(block_diagonal<Integer>(blocks)) * back);
    const RatMatrix round_trip = dual_inv * back - up;
    out.section_ok = in_psi && is_integral(round_trip);
  }
  out.order_divides = out.psi_active.order() % out.upsilon.order() == 0;
  return out;
}

std::string to_string(ConverseVerdict v) {
  switch (v) {
    case ConverseVerdict::Certified: return "TA-certified";
    case ConverseVerdict::HypothesisFailed: return "hypothesis-failed";
    case ConverseVerdict::IntegralityFailed: return "integrality-failed";
    case ConverseVerdict::DecompositionFailed: return "decomposition-failed";
  }
  return "unknown";
}

ConverseCertificate converse_check(const LatticeMap& p, const LatticeMap& q, const LatticeMap& psi1,
                                   const LatticeMap& psi2) {
  if (p.cols() != q.cols()) throw DimensionError("converse: P and Q must share their source");
  if (!is_surjective(p) || !is_surjective(q)) throw std::invalid_argument("converse: P and Q must be surjective");
  if (!psi1.is_square() || psi1.rows() != p.rows() || !psi2.is_square() || psi2.rows() != q.rows())
    throw DimensionError("converse: pairing shapes do not match P and Q");
  if (!psi1.is_symmetric() || !is_positive_definite(psi1) || !psi2.is_symmetric() || !is_positive_definite(psi2))
    throw std::invalid_argument("converse: pairings must be symmetric positive definite");

  const std::size_t mu = p.cols();
  const std::vector<LatticeMap> rows{p, q};
  const LatticeMap a = vstack<Integer>(rows, mu);
  const std::vector<LatticeMap> diag{psi1, psi2};
  const LatticeMap psi = block_diagonal<Integer>(diag);
  const LatticeMap at_psi = a.transpose() * psi;
  const LatticeMap at_psi_a = at_psi * a;

  ConverseCertificate c;
  const Cokernel c1 = cokernel(at_psi), c2 = cokernel(at_psi_a);
  c.coker_at_psi = c1.torsion;
  c.coker_at_psi_a = c2.torsion;
  c.hypothesis_holds = c1 == c2 && column_hnf(at_psi) == column_hnf(at_psi_a);
  if (!c.hypothesis_holds) {
    c.verdict = ConverseVerdict::HypothesisFailed;
    return c;
  }

  c.theta = solve(to_rational(at_psi_a), to_rational(at_psi));
  if (!c.theta || !is_integral(*c.theta)) {
    c.verdict = ConverseVerdict::IntegralityFailed;
    return c;
  }
  const IntMatrix theta = to_integer(*c.theta);
  c.chi1 = theta.select_cols(0, p.rows()) * p;
  c.chi2 = theta.select_cols(p.rows(), theta.cols()) * q;
  c.idempotent = c.chi1 * c.chi1 == c.chi1 && c.chi2 * c.chi2 == c.chi2;
  c.sums_to_identity = c.chi1 + c.chi2 == IntMatrix::identity(mu);

  const LatticeMap kp = kernel_saturated(p), kq = kernel_saturated(q);
  const std::vector<LatticeMap> kernels{kp, kq};
  const LatticeSum sum = lattice_sum(kernels, mu);
  c.kernel_decomposition = kp.cols() + kq.cols() == mu && sum.index && *sum.index == 1;
  c.restriction_isomorphism = unimodular(p * kq);
  c.a_isomorphism = unimodular(a);

  const bool ok = c.idempotent && c.sums_to_identity && c.kernel_decomposition && c.restriction_isomorphism &&
                  c.a_isomorphism;
  c.verdict = ok ? ConverseVerdict::Certified : ConverseVerdict::DecompositionFailed;
  return c;
}

ConverseCertificate converse_from_datum(const DegenDatum& d) {
  if (d.has_explicit_dual()) throw std::invalid_argument("converse: datum must be principally polarized");
  if (d.branch_count() == 0) throw std::invalid_argument("converse: datum has no branches");
  std::vector<std::size_t> rest;
  for (std::size_t j = 1; j < d.branch_count(); ++j) rest.push_back(j);
  const StratumLattice y2 = stratum_lattice(d, rest);
  std::vector<LatticeMap> blocks;
  for (std::size_t j : rest) blocks.push_back(d.branches[j].pairing);
  const LatticeMap psi2 = y2.purity.transpose() * block_diagonal<Integer>(blocks) * y2.dual_purity;
  return converse_check(d.branches[0].specialization, y2.specialization, d.branches[0].pairing, psi2);
}

}  // namespace degenkit
