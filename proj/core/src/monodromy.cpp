#include "degenkit/monodromy.hpp"

#include "degenkit/normal_form.hpp"

#include <algorithm>
#include <stdexcept>

namespace degenkit {

bool TraitProfile::transversal() const {
  return std::all_of(multiplicities.begin(), multiplicities.end(),
                     [](const Integer& a) { return a == 0 || a == 1; });
}

std::vector<std::size_t> TraitProfile::active() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < multiplicities.size(); ++i)
    if (multiplicities[i] > 0) out.push_back(i);
  return out;
}

namespace {

void check_subset(const DegenDatum& d, const std::vector<std::size_t>& subset) {
  for (std::size_t k = 0; k < subset.size(); ++k) {
    if (subset[k] >= d.branch_count()) throw std::out_of_range("stratum: branch index out of range");
    if (k > 0 && subset[k] <= subset[k - 1]) throw std::invalid_argument("stratum: branches must be ascending");
  }
}

struct Side {
  LatticeMap purity;
  LatticeMap specialization;
};

// Y = im(p_J). Keeps the basis of X when p_J is injective.
Side derive_side(const LatticeMap& pj) {
  if (is_injective(pj)) return {pj, LatticeMap::identity(pj.cols())};
  LatticeMap basis = column_hnf(pj);
  auto sp = solve_integral(basis, pj);
  if (!sp) throw std::logic_error("stratum: image basis does not span p_J");
  return {std::move(basis), std::move(*sp)};
}

Side supplied_side(const LatticeMap& purity, const LatticeMap& pj) {
  if (!is_injective(purity) || !same_image(purity, pj))
    throw std::invalid_argument("stratum purity inconsistent with the datum");
  auto sp = solve_integral(purity, pj);
  if (!sp) throw std::logic_error("stratum: supplied purity does not span p_J");
  return {purity, std::move(*sp)};
}

}  // namespace

StratumLattice stratum_lattice(const DegenDatum& d, const std::vector<std::size_t>& subset) {
  check_subset(d, subset);
  std::vector<LatticeMap> rows, dual_rows;
  for (std::size_t j : subset) {
    rows.push_back(d.branches[j].specialization);
    dual_rows.push_back(d.dual_specialization(j));
  }
  const LatticeMap pj = vstack<Integer>(rows, d.closed_rank);
  const LatticeMap dpj = vstack<Integer>(dual_rows, d.closed_rank);
  const bool explicit_dual = d.has_explicit_dual();

  StratumLattice s;
  s.branches = subset;
  const StratumOverride* ov = nullptr;
  for (const auto& o : d.strata)
    if (o.branches == subset) ov = &o;

  Side primal = ov ? supplied_side(ov->purity, pj) : derive_side(pj);
  Side dual;
  if (!explicit_dual) {
    dual = primal;
  } else if (ov && ov->dual_purity) {
    dual = supplied_side(*ov->dual_purity, dpj);
  } else {
    dual = derive_side(dpj);
  }
  if (primal.purity.cols() != dual.purity.cols())
    throw DimensionError("stratum: primal and dual lattices have different ranks");

  s.lattice = {primal.purity.cols()};
  s.purity = std::move(primal.purity);
  s.specialization = std::move(primal.specialization);
  s.dual_purity = std::move(dual.purity);
  s.dual_specialization = std::move(dual.specialization);
  s.supplied = ov != nullptr;
  return s;
}

DegenDatum sub_datum(const DegenDatum& d, const std::vector<std::size_t>& subset) {
  const StratumLattice s = stratum_lattice(d, subset);
  const bool explicit_dual = d.has_explicit_dual();
  DegenDatum out;
  out.name = d.name;
  out.residue_char = d.residue_char;
  out.abelian_rank = d.relative_dimension() - s.lattice.rank;
  out.closed_rank = s.lattice.rank;

  std::size_t row = 0;
  for (std::size_t j : subset) {
    const Branch& b = d.branches[j];
    Branch nb = b;
    nb.specialization = s.purity.select_rows(row, row + b.rank);
    if (explicit_dual) nb.dual_specialization = s.dual_purity.select_rows(row, row + b.rank);
    row += b.rank;
    out.branches.push_back(std::move(nb));
  }

  // lambda_Y is determined by p'_Y lambda_Y = diag(lambda_j) p_Y.
  if (explicit_dual && d.polarization) {
    bool all = true;
    std::vector<LatticeMap> lams;
    for (std::size_t j : subset) {
      if (!d.branches[j].polarization) all = false;
      else lams.push_back(*d.branches[j].polarization);
    }
    if (all && s.lattice.rank > 0) {
      const LatticeMap rhs = block_diagonal<Integer>(lams) * s.purity;
      if (auto lam = solve_integral(s.dual_purity, rhs)) out.polarization = *lam;
    }
  }

  for (const auto& o : d.strata) {
    if (!std::includes(subset.begin(), subset.end(), o.branches.begin(), o.branches.end())) continue;
    StratumOverride no = o;
    for (auto& idx : no.branches)
      idx = static_cast<std::size_t>(std::lower_bound(subset.begin(), subset.end(), idx) - subset.begin());
    out.strata.push_back(std::move(no));
  }
  return out;
}

ComposedPairing compose_trait(const DegenDatum& d, const TraitProfile& profile) {
  if (profile.multiplicities.size() != d.branch_count())
    throw std::invalid_argument("trait profile length " + std::to_string(profile.multiplicities.size()) +
                                " does not match branch count " + std::to_string(d.branch_count()));
  for (const auto& a : profile.multiplicities)
    if (a < 0) throw std::invalid_argument("trait multiplicities must be non-negative");

  ComposedPairing out;
  const auto active = profile.active();
  if (active.empty() && d.branch_count() > 0)
    out.warnings.push_back("trait misses the divisor: the monodromy pairing is trivial");
  out.stratum = stratum_lattice(d, active);
  // Away from toric additivity the true stratum lattice may differ from the
  // image we derive; with all branches active it is the closed point itself.
  if (!out.stratum.supplied && !active.empty() && active.size() < d.branch_count() && !analyze(d).toric_additive)
    out.warnings.push_back("derived stratum (heuristic): image of X under the restricted purity map; "
                           "supply strata[] to override");

  std::vector<LatticeMap> blocks;
  for (std::size_t j : active) {
    LatticeMap b = d.branches[j].pairing;
    b *= profile.multiplicities[j];
    blocks.push_back(std::move(b));
  }
  const LatticeMap diag = block_diagonal<Integer>(blocks);
  out.pairing = out.stratum.purity.transpose() * diag * out.stratum.dual_purity;
  return out;
}

FinAb component_group(const LatticeMap& phi) {
  if (!phi.is_square()) throw DegeneratePairing("degenerate pairing: matrix is " + std::to_string(phi.rows()) +
                                                "x" + std::to_string(phi.cols()));
  if (phi.rows() > 0 && determinant(phi) == 0) throw DegeneratePairing("degenerate pairing: determinant is zero");
  const Cokernel c = cokernel(phi);
  const FinAb k = torsion_kernel_qz(phi);
  if (c.free_rank != 0 || !(c.torsion == k))
    throw std::logic_error("component_group: cokernel and Q/Z-kernel disagree");
  return c.torsion;
}

std::vector<LatticeMap> closed_point_pairings(const DegenDatum& d) {
  std::vector<LatticeMap> out;
  for (std::size_t i = 0; i < d.branch_count(); ++i) {
    const Branch& b = d.branches[i];
    out.push_back(b.specialization.transpose() * b.pairing * d.dual_specialization(i));
  }
  return out;
}

ClosedPointBound closed_point_bound(const DegenDatum& d, Prime l) {
  require_usable_prime(d, l);
  const auto psi = closed_point_pairings(d);
  const LatticeMap stack = vstack<Integer>(psi, d.closed_rank);
  const FinAb ker = torsion_kernel_qz(stack);
  ClosedPointBound out{l_part(ker.torsion(), l), ker.divisible_rank()};
  if (d.branch_count() == 1 && d.closed_rank > 0 && determinant(d.branches[0].pairing) != 0 &&
      d.branches[0].rank == d.closed_rank && is_surjective(d.branches[0].specialization) &&
      is_surjective(d.dual_specialization(0))) {
    if (!(out.bound == l_part(component_group(d.branches[0].pairing), l)))
      throw std::logic_error("closed_point_bound: single-branch bound differs from the component group");
  }
  return out;
}

std::optional<std::string> validate_pairing(const LatticeMap& phi, const LatticeMap& lambda) {
  if (!phi.is_square() || !lambda.is_square() || phi.cols() != lambda.rows())
    return std::string("has incompatible shape");
  const LatticeMap form = phi * lambda;
  if (!form.is_symmetric()) return std::string("not symmetric");
  if (!is_positive_definite(form)) return std::string("not positive definite");
  return std::nullopt;
}

}  // namespace degenkit
