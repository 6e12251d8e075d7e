// Small helpers shared by the unit tests.
#pragma once

#include <cmath>
#include <initializer_list>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "egcs/fock.hpp"

namespace egcs::testing {

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

inline MultiModeState two_mode(const StateVector& first, const StateVector& second, const std::string& l1 = "1",
                               const std::string& l2 = "2") {
  return tensor(MultiModeState::single(first, l1), MultiModeState::single(second, l2));
}

// Builds a state from sparse (occupation, amplitude) entries; no normalization.
inline MultiModeState sparse_state(std::vector<std::string> labels, std::vector<std::size_t> dims,
                                   std::initializer_list<std::pair<std::vector<std::size_t>, Complex>> entries) {
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  MultiModeState zero(labels, dims, CVector::Zero(static_cast<Eigen::Index>(total)));
  CVector amps = zero.amplitudes();
  for (const auto& [occ, amp] : entries) amps(static_cast<Eigen::Index>(zero.flat_index(occ))) += amp;
  return MultiModeState(std::move(labels), std::move(dims), std::move(amps));
}

// Reproducible pseudo-random normalized complex vector.
inline CVector scrambled(Eigen::Index size, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  CVector v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = Complex(u(gen), u(gen));
  return v / v.norm();
}

// Column n of exp(alpha a^dag - conj(alpha) a), exponentiated on a basis padded
// by `pad` levels so the kept entries are free of truncation damage.
inline CVector expm_column(std::size_t n, Complex alpha, std::size_t dim, std::size_t pad = 40) {
  const TruncationDim big(dim + pad);
  const CMatrix d = matrix_exp(displacement_generator(alpha, big));
  return d.col(static_cast<Eigen::Index>(n)).head(static_cast<Eigen::Index>(dim));
}

}  // namespace egcs::testing
