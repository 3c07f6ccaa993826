#include "degenkit/lattice.hpp"

#include <stdexcept>

namespace degenkit {

namespace {
std::vector<Integer> nonunit(const std::vector<Integer>& factors) {
  std::vector<Integer> out;
  for (const auto& d : factors)
    if (d != 1) out.push_back(d);
  return out;
}
}  // namespace

Cokernel cokernel(const LatticeMap& m) {
  const auto inv = smith_invariants(m);
  return {FinAb::from_cyclic_orders(nonunit(inv)), m.rows() - inv.size()};
}

FinAb torsion_kernel_qz(const LatticeMap& m) {
  const auto inv = smith_invariants(m);
  return FinAb::from_cyclic_orders(nonunit(inv), m.cols() - inv.size());
}

LatticeMap kernel_saturated(const LatticeMap& m) {
  const auto snf = smith_normal_form(m);
  return snf.V.select_cols(snf.rank, m.cols());
}

LatticeMap image_basis(const LatticeMap& m) { return column_hnf(m); }

LatticeMap saturation(const LatticeMap& m) {
  const auto snf = smith_normal_form(m);
  return column_hnf(snf.U_inverse.select_cols(0, snf.rank));
}

bool same_image(const LatticeMap& a, const LatticeMap& b) {
  if (a.rows() != b.rows()) throw DimensionError("same_image: different targets");
  return column_hnf(a) == column_hnf(b);
}

bool is_injective(const LatticeMap& m) { return rank(m) == m.cols(); }

bool is_surjective(const LatticeMap& m) {
  const auto inv = smith_invariants(m);
  if (inv.size() != m.rows()) return false;
  for (const auto& d : inv)
    if (d != 1) return false;
  return true;
}

bool is_saturated(const LatticeMap& m) {
  const auto inv = smith_invariants(m);
  if (inv.size() != m.cols()) return false;
  for (const auto& d : inv)
    if (d != 1) return false;
  return true;
}

std::optional<Integer> index_in_ambient(const LatticeMap& generators) {
  const LatticeMap h = column_hnf(generators);
  if (h.cols() != h.rows()) return std::nullopt;
  Integer idx = 1;
  for (std::size_t i = 0; i < h.rows(); ++i) idx *= h(i, i);
  return idx;
}

LatticeSum lattice_sum(std::span<const LatticeMap> maps, std::size_t target_rank) {
  LatticeMap all(target_rank, 0);
  for (const auto& m : maps) {
    if (m.rows() != target_rank) throw DimensionError("lattice_sum: maps must share a target");
    all = hstack(all, m);
  }
  LatticeSum out;
  out.basis = column_hnf(all);
  out.saturated = saturation(all);
  out.index = index_in_ambient(out.basis);
  return out;
}

Quotient quotient_by(const LatticeMap& saturated_basis) {
  const auto snf = smith_normal_form(saturated_basis);
  for (std::size_t i = 0; i < snf.rank; ++i)
    if (snf.D(i, i) != 1) throw std::invalid_argument("quotient_by: sublattice is not saturated");
  if (snf.rank != saturated_basis.cols())
    throw std::invalid_argument("quotient_by: basis columns are dependent");
  const std::size_t n = saturated_basis.rows();
  return {snf.U.select_rows(snf.rank, n), snf.U_inverse.select_cols(snf.rank, n)};
}

}  // namespace degenkit
