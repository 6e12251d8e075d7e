// fock.hpp - truncated Fock-space states, ladder operators and displacements.
//
// Amplitudes of multi-mode states are stored row-major: the first mode is the
// slowest-varying index. Every function here is pure; values are immutable
// after construction.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "egcs/errors.hpp"

namespace egcs {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Size of a single-mode Fock basis {|0>, ..., |dim-1>}.
class TruncationDim {
 public:
  explicit TruncationDim(std::size_t dim);

  [[nodiscard]] std::size_t value() const noexcept { return dim_; }
  [[nodiscard]] Eigen::Index index() const noexcept { return static_cast<Eigen::Index>(dim_); }

  friend bool operator==(TruncationDim, TruncationDim) = default;

 private:
  std::size_t dim_;
};

/// Adequacy rule: smallest dim keeping the photon-number tail of D(alpha)|n>
/// beyond the cutoff below ~1e-12.
///   dim >= ceil(n + |alpha|^2 + 8 sqrt(n + |alpha|^2 + 1) + 20)
[[nodiscard]] std::size_t required_dim(std::size_t n, double abs_alpha);
[[nodiscard]] TruncationDim adequate_dim(std::size_t n, double abs_alpha);

/// Throws AdequacyError when dim is below required_dim(n, |alpha|).
void check_adequacy(std::size_t n, double abs_alpha, TruncationDim dim);

/// Number of leading basis indices whose displaced columns are trustworthy:
/// indices i with required_dim(i, |alpha|) <= dim, capped at the lower 90% of
/// the basis. Unitarity and cross-checks are only meaningful on this block.
[[nodiscard]] std::size_t safe_block(double abs_alpha, TruncationDim dim);

class StateVector {
 public:
  explicit StateVector(CVector amplitudes);

  [[nodiscard]] const CVector& amplitudes() const noexcept { return amplitudes_; }
  [[nodiscard]] TruncationDim dim() const { return TruncationDim(static_cast<std::size_t>(amplitudes_.size())); }
  [[nodiscard]] Complex operator[](std::size_t k) const { return amplitudes_(static_cast<Eigen::Index>(k)); }
  [[nodiscard]] double norm() const { return amplitudes_.norm(); }
  [[nodiscard]] bool is_normalized(double tol = 1e-12) const;

 private:
  CVector amplitudes_;
};

/// Dense operator together with the per-mode dimensions of the space it acts on.
struct OperatorMatrix {
  CMatrix entries;
  std::vector<std::size_t> mode_dims;

  [[nodiscard]] Eigen::Index size() const noexcept { return entries.rows(); }
};

class MultiModeState {
 public:
  MultiModeState(std::vector<std::string> labels, std::vector<std::size_t> dims, CVector amplitudes);

  /// Wraps a single-mode state as a one-mode tensor.
  static MultiModeState single(const StateVector& state, std::string label);

  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
  [[nodiscard]] const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  [[nodiscard]] const CVector& amplitudes() const noexcept { return amplitudes_; }
  [[nodiscard]] std::size_t mode_count() const noexcept { return labels_.size(); }
  [[nodiscard]] double norm() const { return amplitudes_.norm(); }
  [[nodiscard]] bool is_normalized(double tol = 1e-12) const;

  /// Position of a mode label; throws ModeMismatch when absent.
  [[nodiscard]] std::size_t mode_index(const std::string& label) const;

  [[nodiscard]] std::size_t flat_index(std::span<const std::size_t> occupation) const;
  [[nodiscard]] Complex amplitude(std::initializer_list<std::size_t> occupation) const;

  [[nodiscard]] MultiModeState relabeled(std::vector<std::string> labels) const;

  /// Reorders the tensor factors so that modes appear in `order` (labels).
  [[nodiscard]] MultiModeState permuted(const std::vector<std::string>& order) const;

  /// Pads with vacuum-side zeros or drops high Fock levels of one mode.
  [[nodiscard]] MultiModeState resized(const std::string& label, std::size_t dim) const;

  [[nodiscard]] MultiModeState scaled(Complex factor) const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::size_t> dims_;
  CVector amplitudes_;
};

// ---------------------------------------------------------------------------
// Operators

[[nodiscard]] OperatorMatrix identity(TruncationDim dim);
/// a|m> = sqrt(m)|m-1>, i.e. entry (m-1, m) = sqrt(m).
[[nodiscard]] OperatorMatrix annihilation(TruncationDim dim);
[[nodiscard]] OperatorMatrix creation(TruncationDim dim);
[[nodiscard]] OperatorMatrix number_operator(TruncationDim dim);
/// N = a^dag a (x) I + I (x) b^dag b.
[[nodiscard]] OperatorMatrix number_operator_two_mode(TruncationDim dim);

[[nodiscard]] OperatorMatrix kron(const OperatorMatrix& lhs, const OperatorMatrix& rhs);

/// <m|D(alpha)|n> from the associated-Laguerre closed form, evaluated in log
/// space so large |alpha| does not overflow the prefactors.
[[nodiscard]] Complex displacement_element(std::size_t m, std::size_t n, Complex alpha);

/// Full D(alpha) matrix via the closed form. Requires adequacy for (0, |alpha|).
[[nodiscard]] OperatorMatrix displacement(Complex alpha, TruncationDim dim);

/// alpha a^dag - conj(alpha) a on the truncated space.
[[nodiscard]] CMatrix displacement_generator(Complex alpha, TruncationDim dim);

/// exp(A) by scaling and squaring of a Taylor series.
[[nodiscard]] CMatrix matrix_exp(const CMatrix& a);

// ---------------------------------------------------------------------------
// States

[[nodiscard]] StateVector fock_state(std::size_t n, TruncationDim dim);
[[nodiscard]] StateVector coherent_state(Complex alpha, TruncationDim dim);
/// |n, alpha> = D(alpha)|n>.
[[nodiscard]] StateVector displaced_number_state(std::size_t n, Complex alpha, TruncationDim dim);

[[nodiscard]] MultiModeState tensor(std::span<const MultiModeState> factors);
[[nodiscard]] MultiModeState tensor(const MultiModeState& lhs, const MultiModeState& rhs);

[[nodiscard]] Complex inner(const StateVector& bra, const StateVector& ket);
[[nodiscard]] Complex inner(const MultiModeState& bra, const MultiModeState& ket);

/// |<a|b>|^2 / (<a|a><b|b>).
[[nodiscard]] double fidelity(const MultiModeState& a, const MultiModeState& b);
[[nodiscard]] double fidelity(const StateVector& a, const StateVector& b);

[[nodiscard]] StateVector apply(const OperatorMatrix& op, const StateVector& state);
[[nodiscard]] MultiModeState apply(const OperatorMatrix& op, const MultiModeState& state);

// <psi|Op|psi> without renormalization; callers pass normalized states.
[[nodiscard]] Complex expectation(const OperatorMatrix& op, const StateVector& state);
[[nodiscard]] Complex expectation(const OperatorMatrix& op, const MultiModeState& state);

/// <Op^2> - <Op>^2. An imaginary residue above 1e-10 means Op was not
/// Hermitian and raises std::domain_error.
[[nodiscard]] double variance(const OperatorMatrix& op, const StateVector& state);
[[nodiscard]] double variance(const OperatorMatrix& op, const MultiModeState& state);

[[nodiscard]] std::pair<StateVector, double> normalize(const StateVector& state);
[[nodiscard]] std::pair<MultiModeState, double> normalize(const MultiModeState& state);

}  // namespace egcs
