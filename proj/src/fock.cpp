#include "egcs/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace egcs {

namespace {

std::size_t product(const std::vector<std::size_t>& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) strides[k - 1] = strides[k] * dims[k];
  return strides;
}

// Advances a row-major multi-index; returns false after the last element.
bool next_index(std::vector<std::size_t>& idx, const std::vector<std::size_t>& dims) {
  for (std::size_t k = idx.size(); k-- > 0;) {
    if (++idx[k] < dims[k]) return true;
    idx[k] = 0;
  }
  return false;
}

// log|L_n^(k)(x)| and its sign, by the forward three-term recurrence in n.
std::pair<double, double> log_laguerre(std::size_t n, std::size_t k, double x) {
  const double kk = static_cast<double>(k);
  double prev = 1.0;
  double curr = 1.0 + kk - x;
  if (n == 0) return {0.0, 1.0};
  // Rescale occasionally so very long recurrences cannot overflow.
  double log_scale = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    const double jj = static_cast<double>(j);
    const double next = ((2.0 * jj + 1.0 + kk - x) * curr - (jj + kk) * prev) / (jj + 1.0);
    prev = curr;
    curr = next;
    const double mag = std::abs(curr);
    if (mag > 1e200) {
      prev /= mag;
      curr /= mag;
      log_scale += std::log(mag);
    }
  }
  if (curr == 0.0) return {-std::numeric_limits<double>::infinity(), 0.0};
  return {log_scale + std::log(std::abs(curr)), curr > 0.0 ? 1.0 : -1.0};
}

void require_same_dims(const MultiModeState& a, const MultiModeState& b, const char* what) {
  if (a.dims() != b.dims()) throw DimensionMismatch(std::string(what) + ": mode dimensions differ");
}

void require_operator_fits(const OperatorMatrix& op, Eigen::Index size, const char* what) {
  if (op.entries.rows() != size || op.entries.cols() != size)
    throw DimensionMismatch(std::string(what) + ": operator size does not match state");
}

}  // namespace

TruncationDim::TruncationDim(std::size_t dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("TruncationDim: dim must be >= 1");
}

std::size_t required_dim(std::size_t n, double abs_alpha) {
  const double x = static_cast<double>(n) + abs_alpha * abs_alpha;
  return static_cast<std::size_t>(std::ceil(x + 8.0 * std::sqrt(x + 1.0) + 20.0));
}

TruncationDim adequate_dim(std::size_t n, double abs_alpha) { return TruncationDim(required_dim(n, abs_alpha)); }

void check_adequacy(std::size_t n, double abs_alpha, TruncationDim dim) {
  const std::size_t need = required_dim(n, abs_alpha);
  if (dim.value() < need) {
    throw AdequacyError("truncation dim " + std::to_string(dim.value()) + " too small for n=" + std::to_string(n) +
                        ", |alpha|=" + std::to_string(abs_alpha) + " (need >= " + std::to_string(need) + ")");
  }
}

std::size_t safe_block(double abs_alpha, TruncationDim dim) {
  const std::size_t buffer = (dim.value() + 9) / 10;
  const std::size_t cap = dim.value() - buffer;
  std::size_t count = 0;
  while (count < cap && required_dim(count, abs_alpha) <= dim.value()) ++count;
  return count;
}

// ---------------------------------------------------------------------------

StateVector::StateVector(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 1) throw std::invalid_argument("StateVector: empty amplitude vector");
  if (!amplitudes_.allFinite()) throw std::invalid_argument("StateVector: non-finite amplitude");
}

bool StateVector::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

MultiModeState::MultiModeState(std::vector<std::string> labels, std::vector<std::size_t> dims, CVector amplitudes)
    : labels_(std::move(labels)), dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
  if (labels_.size() != dims_.size()) throw DimensionMismatch("MultiModeState: label/dim count mismatch");
  if (labels_.empty()) throw DimensionMismatch("MultiModeState: at least one mode required");
  for (auto d : dims_)
    if (d < 1) throw DimensionMismatch("MultiModeState: mode dim must be >= 1");
  if (static_cast<std::size_t>(amplitudes_.size()) != product(dims_))
    throw DimensionMismatch("MultiModeState: amplitude count does not match mode dims");
  auto sorted = labels_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ModeMismatch("MultiModeState: duplicate mode label");
}

MultiModeState MultiModeState::single(const StateVector& state, std::string label) {
  return MultiModeState({std::move(label)}, {state.dim().value()}, state.amplitudes());
}

bool MultiModeState::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

std::size_t MultiModeState::mode_index(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw ModeMismatch("no mode labelled '" + label + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t MultiModeState::flat_index(std::span<const std::size_t> occupation) const {
  if (occupation.size() != dims_.size()) throw DimensionMismatch("flat_index: wrong number of modes");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (occupation[k] >= dims_[k]) throw std::out_of_range("flat_index: occupation beyond truncation");
    flat = flat * dims_[k] + occupation[k];
  }
  return flat;
}

Complex MultiModeState::amplitude(std::initializer_list<std::size_t> occupation) const {
  return amplitudes_(static_cast<Eigen::Index>(flat_index(std::span(occupation.begin(), occupation.size()))));
}

MultiModeState MultiModeState::relabeled(std::vector<std::string> labels) const {
  return MultiModeState(std::move(labels), dims_, amplitudes_);
}

MultiModeState MultiModeState::permuted(const std::vector<std::string>& order) const {
  if (order.size() != labels_.size()) throw ModeMismatch("permuted: order must name every mode once");
  std::vector<std::size_t> source(order.size());  // output position -> input position
  std::vector<std::size_t> out_dims(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    source[k] = mode_index(order[k]);
    out_dims[k] = dims_[source[k]];
  }
  const auto out_strides = strides_of(out_dims);
  std::vector<std::size_t> in_to_out_stride(dims_.size());
  for (std::size_t k = 0; k < order.size(); ++k) in_to_out_stride[source[k]] = out_strides[k];

  CVector out(amplitudes_.size());
  std::vector<std::size_t> idx(dims_.size(), 0);
  Eigen::Index flat = 0;
  do {
    std::size_t target = 0;
    for (std::size_t k = 0; k < idx.size(); ++k) target += idx[k] * in_to_out_stride[k];
    out(static_cast<Eigen::Index>(target)) = amplitudes_(flat++);
  } while (next_index(idx, dims_));
  return MultiModeState(order, out_dims, std::move(out));
}

MultiModeState MultiModeState::resized(const std::string& label, std::size_t dim) const {
  const std::size_t mode = mode_index(label);
  auto new_dims = dims_;
  new_dims[mode] = dim;
  CVector out = CVector::Zero(static_cast<Eigen::Index>(product(new_dims)));
  const auto new_strides = strides_of(new_dims);
  std::vector<std::size_t> idx(dims_.size(), 0);
  Eigen::Index flat = 0;
  do {
    if (idx[mode] < dim) {
      std::size_t target = 0;
      for (std::size_t k = 0; k < idx.size(); ++k) target += idx[k] * new_strides[k];
      out(static_cast<Eigen::Index>(target)) = amplitudes_(flat);
    }
    ++flat;
  } while (next_index(idx, dims_));
  return MultiModeState(labels_, std::move(new_dims), std::move(out));
}

MultiModeState MultiModeState::scaled(Complex factor) const {
  return MultiModeState(labels_, dims_, amplitudes_ * factor);
}

// ---------------------------------------------------------------------------

OperatorMatrix identity(TruncationDim dim) {
  return {CMatrix::Identity(dim.index(), dim.index()), {dim.value()}};
}

OperatorMatrix annihilation(TruncationDim dim) {
  CMatrix a = CMatrix::Zero(dim.index(), dim.index());
  for (Eigen::Index m = 1; m < dim.index(); ++m) a(m - 1, m) = std::sqrt(static_cast<double>(m));
  return {std::move(a), {dim.value()}};
}

OperatorMatrix creation(TruncationDim dim) {
  auto a = annihilation(dim);
  a.entries = a.entries.adjoint().eval();
  return a;
}

OperatorMatrix number_operator(TruncationDim dim) {
  CMatrix n = CMatrix::Zero(dim.index(), dim.index());
  for (Eigen::Index m = 0; m < dim.index(); ++m) n(m, m) = static_cast<double>(m);
  return {std::move(n), {dim.value()}};
}

OperatorMatrix number_operator_two_mode(TruncationDim dim) {
  const auto n = number_operator(dim);
  const auto id = identity(dim);
  auto total = kron(n, id);
  total.entries += kron(id, n).entries;
  return total;
}

OperatorMatrix kron(const OperatorMatrix& lhs, const OperatorMatrix& rhs) {
  const Eigen::Index r = rhs.entries.rows();
  const Eigen::Index c = rhs.entries.cols();
  CMatrix out(lhs.entries.rows() * r, lhs.entries.cols() * c);
  for (Eigen::Index i = 0; i < lhs.entries.rows(); ++i)
    for (Eigen::Index j = 0; j < lhs.entries.cols(); ++j) out.block(i * r, j * c, r, c) = lhs.entries(i, j) * rhs.entries;
  auto dims = lhs.mode_dims;
  dims.insert(dims.end(), rhs.mode_dims.begin(), rhs.mode_dims.end());
  return {std::move(out), std::move(dims)};
}

Complex displacement_element(std::size_t m, std::size_t n, Complex alpha) {
  const double r = std::abs(alpha);
  if (r == 0.0) return m == n ? Complex(1.0) : Complex(0.0);
  const double x = r * r;
  const double theta = std::arg(alpha);
  // m >= n:  sqrt(n!/m!) alpha^(m-n)      e^{-x/2} L_n^(m-n)(x)
  // m <  n:  sqrt(m!/n!) (-alpha*)^(n-m)  e^{-x/2} L_m^(n-m)(x)
  const std::size_t lo = std::min(m, n);
  const std::size_t k = (m >= n) ? m - n : n - m;
  const auto [log_l, sign] = log_laguerre(lo, k, x);
  if (sign == 0.0) return Complex(0.0);
  const double log_mag = 0.5 * (std::lgamma(static_cast<double>(lo) + 1.0) -
                                std::lgamma(static_cast<double>(lo + k) + 1.0)) +
                         static_cast<double>(k) * std::log(r) - 0.5 * x + log_l;
  const double kk = static_cast<double>(k);
  const double phase = (m >= n) ? kk * theta : kk * (M_PI - theta);
  return std::polar(sign * std::exp(log_mag), phase);
}

OperatorMatrix displacement(Complex alpha, TruncationDim dim) {
  check_adequacy(0, std::abs(alpha), dim);
  CMatrix d(dim.index(), dim.index());
  for (Eigen::Index m = 0; m < dim.index(); ++m)
    for (Eigen::Index n = 0; n < dim.index(); ++n)
      d(m, n) = displacement_element(static_cast<std::size_t>(m), static_cast<std::size_t>(n), alpha);
  return {std::move(d), {dim.value()}};
}

CMatrix displacement_generator(Complex alpha, TruncationDim dim) {
  const CMatrix a = annihilation(dim).entries;
  return alpha * a.adjoint() - std::conj(alpha) * a;
}

CMatrix matrix_exp(const CMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("matrix_exp: matrix must be square");
  const Eigen::Index size = a.rows();
  if (size == 0) return a;
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  const CMatrix scaled = a / std::ldexp(1.0, squarings);

  CMatrix result = CMatrix::Identity(size, size);
  CMatrix term = CMatrix::Identity(size, size);
  for (int k = 1; k <= 40; ++k) {
    term = (term * scaled) / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18 * result.cwiseAbs().maxCoeff()) break;
  }
  for (int s = 0; s < squarings; ++s) result = (result * result).eval();
  return result;
}

// ---------------------------------------------------------------------------

StateVector fock_state(std::size_t n, TruncationDim dim) {
  if (n >= dim.value()) throw AdequacyError("fock_state: n must be < dim");
  CVector v = CVector::Zero(dim.index());
  v(static_cast<Eigen::Index>(n)) = 1.0;
  return StateVector(std::move(v));
}

StateVector coherent_state(Complex alpha, TruncationDim dim) { return displaced_number_state(0, alpha, dim); }

StateVector displaced_number_state(std::size_t n, Complex alpha, TruncationDim dim) {
  if (n >= dim.value()) throw AdequacyError("displaced_number_state: n must be < dim");
  if (alpha == Complex(0.0)) return fock_state(n, dim);
  check_adequacy(n, std::abs(alpha), dim);
  CVector v(dim.index());
  for (Eigen::Index m = 0; m < dim.index(); ++m) v(m) = displacement_element(static_cast<std::size_t>(m), n, alpha);
  return StateVector(std::move(v));
}

MultiModeState tensor(std::span<const MultiModeState> factors) {
  if (factors.empty()) throw DimensionMismatch("tensor: no factors");
  MultiModeState out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = tensor(out, factors[k]);
  return out;
}

MultiModeState tensor(const MultiModeState& lhs, const MultiModeState& rhs) {
  const CVector& l = lhs.amplitudes();
  const CVector& r = rhs.amplitudes();
  CVector out(l.size() * r.size());
  for (Eigen::Index i = 0; i < l.size(); ++i) out.segment(i * r.size(), r.size()) = l(i) * r;
  auto labels = lhs.labels();
  labels.insert(labels.end(), rhs.labels().begin(), rhs.labels().end());
  auto dims = lhs.dims();
  dims.insert(dims.end(), rhs.dims().begin(), rhs.dims().end());
  return MultiModeState(std::move(labels), std::move(dims), std::move(out));
}

Complex inner(const StateVector& bra, const StateVector& ket) {
  if (bra.dim() != ket.dim()) throw DimensionMismatch("inner: dims differ");
  return bra.amplitudes().dot(ket.amplitudes());
}

Complex inner(const MultiModeState& bra, const MultiModeState& ket) {
  require_same_dims(bra, ket, "inner");
  return bra.amplitudes().dot(ket.amplitudes());
}

double fidelity(const MultiModeState& a, const MultiModeState& b) {
  const double na = a.amplitudes().squaredNorm();
  const double nb = b.amplitudes().squaredNorm();
  if (na == 0.0 || nb == 0.0) throw ZeroNorm("fidelity: zero-norm state");
  return std::norm(inner(a, b)) / (na * nb);
}

double fidelity(const StateVector& a, const StateVector& b) {
  return fidelity(MultiModeState::single(a, "0"), MultiModeState::single(b, "0"));
}

StateVector apply(const OperatorMatrix& op, const StateVector& state) {
  require_operator_fits(op, state.amplitudes().size(), "apply");
  return StateVector(op.entries * state.amplitudes());
}

MultiModeState apply(const OperatorMatrix& op, const MultiModeState& state) {
  require_operator_fits(op, state.amplitudes().size(), "apply");
  return MultiModeState(state.labels(), state.dims(), op.entries * state.amplitudes());
}

namespace {

Complex expectation_raw(const CMatrix& op, const CVector& psi) { return psi.dot(op * psi); }

double variance_raw(const CMatrix& op, const CVector& psi) {
  const CVector once = op * psi;
  const Complex mean = psi.dot(once);
  const Complex second = psi.dot(op * once);
  const Complex var = second - mean * mean;
  if (std::abs(var.imag()) > 1e-10) throw std::domain_error("variance: imaginary residue; operator is not Hermitian");
  return var.real();
}

}  // namespace

Complex expectation(const OperatorMatrix& op, const StateVector& state) {
  require_operator_fits(op, state.amplitudes().size(), "expectation");
  return expectation_raw(op.entries, state.amplitudes());
}

Complex expectation(const OperatorMatrix& op, const MultiModeState& state) {
  require_operator_fits(op, state.amplitudes().size(), "expectation");
  return expectation_raw(op.entries, state.amplitudes());
}

double variance(const OperatorMatrix& op, const StateVector& state) {
  require_operator_fits(op, state.amplitudes().size(), "variance");
  return variance_raw(op.entries, state.amplitudes());
}

double variance(const OperatorMatrix& op, const MultiModeState& state) {
  require_operator_fits(op, state.amplitudes().size(), "variance");
  return variance_raw(op.entries, state.amplitudes());
}

std::pair<StateVector, double> normalize(const StateVector& state) {
  const double n = state.norm();
  if (n == 0.0) throw ZeroNorm("normalize: zero-norm state");
  return {StateVector(state.amplitudes() / n), n};
}

std::pair<MultiModeState, double> normalize(const MultiModeState& state) {
  const double n = state.norm();
  if (n == 0.0) throw ZeroNorm("normalize: zero-norm state");
  return {state.scaled(1.0 / n), n};
}

}  // namespace egcs
