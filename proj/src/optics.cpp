#include "egcs/optics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "egcs/states.hpp"

namespace egcs {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string port_of(const std::string& label) { return label.substr(0, label.size() - 2); }

void require_modes(const MultiModeState& state, const std::vector<std::string>& expected, const char* what) {
  auto have = state.labels();
  auto want = expected;
  std::sort(have.begin(), have.end());
  std::sort(want.begin(), want.end());
  if (have != want) throw ModeMismatch(std::string(what) + ": unexpected mode labels");
}

// Amplitude weight of |h, v> (H, V photons) on |h+v> of the diagonal mode:
// 2^{-(h+v)/2} sqrt(binom(h+v, h)).
double diagonal_weight(std::size_t h, std::size_t v) {
  const double hh = static_cast<double>(h);
  const double vv = static_cast<double>(v);
  const double log_binom = std::lgamma(hh + vv + 1.0) - std::lgamma(hh + 1.0) - std::lgamma(vv + 1.0);
  return std::exp(0.5 * log_binom - 0.5 * (hh + vv) * std::log(2.0));
}

std::size_t product(const std::vector<std::size_t>& dims, std::size_t begin, std::size_t end) {
  return std::accumulate(dims.begin() + static_cast<std::ptrdiff_t>(begin),
                         dims.begin() + static_cast<std::ptrdiff_t>(end), std::size_t{1}, std::multiplies<>());
}

// Replaces the (H, V) pair of one port by its diagonal mode, without renormalizing.
MultiModeState project_port(const MultiModeState& state, const std::string& port) {
  const std::string h_label = port + "_H";
  const std::string v_label = port + "_V";
  std::vector<std::string> order;
  for (const auto& l : state.labels())
    if (l != h_label && l != v_label) order.push_back(l);
  std::vector<std::string> final_order;
  for (const auto& l : state.labels()) {
    if (l == h_label)
      final_order.push_back(port + "_D");
    else if (l != v_label)
      final_order.push_back(l);
  }
  order.push_back(h_label);
  order.push_back(v_label);
  const auto moved = state.permuted(order);

  const std::size_t k = moved.mode_count();
  const std::size_t rest = product(moved.dims(), 0, k - 2);
  const std::size_t dh = moved.dims()[k - 2];
  const std::size_t dv = moved.dims()[k - 1];
  const std::size_t dd = dh + dv - 1;
  CVector out = CVector::Zero(static_cast<Eigen::Index>(rest * dd));
  const CVector& in = moved.amplitudes();
  for (std::size_t r = 0; r < rest; ++r)
    for (std::size_t h = 0; h < dh; ++h)
      for (std::size_t v = 0; v < dv; ++v)
        out(static_cast<Eigen::Index>(r * dd + h + v)) +=
            diagonal_weight(h, v) * in(static_cast<Eigen::Index>((r * dh + h) * dv + v));

  std::vector<std::string> labels(moved.labels().begin(), moved.labels().end() - 2);
  labels.push_back(port + "_D");
  std::vector<std::size_t> dims(moved.dims().begin(), moved.dims().end() - 2);
  dims.push_back(dd);
  return MultiModeState(std::move(labels), std::move(dims), std::move(out)).permuted(final_order);
}

MultiModeState expand_port(const MultiModeState& state, const std::string& port) {
  const std::string d_label = port + "_D";
  std::vector<std::string> order;
  std::vector<std::string> final_order;
  for (const auto& l : state.labels()) {
    if (l == d_label) {
      final_order.push_back(port + "_H");
      final_order.push_back(port + "_V");
    } else {
      order.push_back(l);
      final_order.push_back(l);
    }
  }
  order.push_back(d_label);
  const auto moved = state.permuted(order);

  const std::size_t k = moved.mode_count();
  const std::size_t rest = product(moved.dims(), 0, k - 1);
  const std::size_t dd = moved.dims()[k - 1];
  CVector out = CVector::Zero(static_cast<Eigen::Index>(rest * dd * dd));
  const CVector& in = moved.amplitudes();
  for (std::size_t r = 0; r < rest; ++r)
    for (std::size_t total = 0; total < dd; ++total)
      for (std::size_t h = 0; h <= total; ++h)
        out(static_cast<Eigen::Index>((r * dd + h) * dd + (total - h))) =
            diagonal_weight(h, total - h) * in(static_cast<Eigen::Index>(r * dd + total));

  std::vector<std::string> labels(moved.labels().begin(), moved.labels().end() - 1);
  labels.push_back(port + "_H");
  labels.push_back(port + "_V");
  std::vector<std::size_t> dims(moved.dims().begin(), moved.dims().end() - 1);
  dims.push_back(dd);
  dims.push_back(dd);
  return MultiModeState(std::move(labels), std::move(dims), std::move(out)).permuted(final_order);
}

MultiModeState two_mode(const StateVector& first, const StateVector& second, const std::string& l1,
                        const std::string& l2) {
  return tensor(MultiModeState::single(first, l1), MultiModeState::single(second, l2));
}

MultiModeState sum(std::initializer_list<MultiModeState> terms) {
  auto it = terms.begin();
  CVector acc = it->amplitudes();
  for (++it; it != terms.end(); ++it) {
    if (it->dims() != terms.begin()->dims()) throw DimensionMismatch("sum: mode dims differ");
    acc += it->amplitudes();
  }
  return MultiModeState(terms.begin()->labels(), terms.begin()->dims(), std::move(acc));
}

}  // namespace

MultiModeState pbs_transform(const MultiModeState& state) {
  require_modes(state, kPbsInputModes, "pbs_transform");
  return state.permuted({"b_H", "a_V", "a_H", "b_V"}).relabeled(kPbsOutputModes);
}

MultiModeState pbs_inverse(const MultiModeState& state) {
  require_modes(state, kPbsOutputModes, "pbs_inverse");
  return state.permuted({"d_H", "c_V", "c_H", "d_V"}).relabeled(kPbsInputModes);
}

StateVector mzi_displace(const StateVector& state, double transmittivity, Complex beta) {
  if (transmittivity < 0.0 || transmittivity > 1.0)
    throw std::invalid_argument("mzi_displace: transmittivity must lie in [0, 1]");
  const Complex alpha = transmittivity * beta;
  if (alpha == Complex(0.0)) return state;
  const TruncationDim dim = state.dim();
  // Adequacy for the highest occupied Fock level of the input.
  std::size_t top = 0;
  for (Eigen::Index k = 0; k < state.amplitudes().size(); ++k)
    if (state.amplitudes()(k) != Complex(0.0)) top = static_cast<std::size_t>(k);
  check_adequacy(top, std::abs(alpha), dim);
  CVector out = CVector::Zero(dim.index());
  for (Eigen::Index n = 0; n <= static_cast<Eigen::Index>(top); ++n) {
    const Complex c = state.amplitudes()(n);
    if (c == Complex(0.0)) continue;
    out += c * displaced_number_state(static_cast<std::size_t>(n), alpha, dim).amplitudes();
  }
  return StateVector(std::move(out));
}

Projection polarizer_45(const MultiModeState& state) {
  std::vector<std::string> ports;
  for (const auto& l : state.labels()) {
    if (ends_with(l, "_H") || ends_with(l, "_V")) {
      const std::string port = port_of(l);
      const std::string partner = port + (ends_with(l, "_H") ? "_V" : "_H");
      if (std::find(state.labels().begin(), state.labels().end(), partner) == state.labels().end())
        throw ModeMismatch("polarizer_45: mode '" + l + "' has no polarization partner");
      if (ends_with(l, "_H")) ports.push_back(port);
    }
  }
  if (ports.empty()) throw ModeMismatch("polarizer_45: no H/V mode pairs");
  const double before = state.amplitudes().squaredNorm();
  if (before == 0.0) throw ZeroNorm("polarizer_45: zero-norm input");
  MultiModeState out = state;
  for (const auto& port : ports) out = project_port(out, port);
  const double after = out.amplitudes().squaredNorm();
  if (after == 0.0) throw ZeroNorm("polarizer_45: projection annihilates the state");
  return {out.scaled(1.0 / std::sqrt(after)), after / before};
}

MultiModeState expand_diagonal(const MultiModeState& state) {
  MultiModeState out = state;
  bool any = false;
  for (const auto& l : state.labels()) {
    if (ends_with(l, "_D")) {
      out = expand_port(out, port_of(l));
      any = true;
    }
  }
  if (!any) throw ModeMismatch("expand_diagonal: no diagonal modes");
  return out;
}

MultiModeState bs_transform(const MultiModeState& state, std::array<std::string, 2> output_labels) {
  if (state.mode_count() != 2) throw ModeMismatch("bs_transform: two-mode state required");
  if (state.dims()[0] != state.dims()[1]) throw DimensionMismatch("bs_transform: modes must share a dim");
  const std::size_t d = state.dims()[0];
  const CVector& in = state.amplitudes();
  CVector out = CVector::Zero(in.size());
  const double theta = -M_PI / 4.0;
  auto at = [d](std::size_t n1, std::size_t n2) { return static_cast<Eigen::Index>(n1 * d + n2); };

  // exp(theta (a^dag b - b^dag a)) after a parity (-1)^{n2} on the second
  // input; both conserve n1 + n2, so each total-photon block is independent.
  for (std::size_t total = 0; total + 1 < 2 * d; ++total) {
    const std::size_t lo = total >= d ? total - (d - 1) : 0;
    const std::size_t hi = std::min(total, d - 1);
    const auto size = static_cast<Eigen::Index>(hi - lo + 1);
    CMatrix gen = CMatrix::Zero(size, size);
    CVector block(size);
    for (Eigen::Index i = 0; i < size; ++i) {
      const std::size_t n1 = lo + static_cast<std::size_t>(i);
      const std::size_t n2 = total - n1;
      block(i) = (n2 % 2 == 0 ? 1.0 : -1.0) * in(at(n1, n2));
      if (i + 1 < size) gen(i + 1, i) += theta * std::sqrt(static_cast<double>((n1 + 1) * n2));
      if (i > 0) gen(i - 1, i) -= theta * std::sqrt(static_cast<double>(n1 * (n2 + 1)));
    }
    const CVector mixed = matrix_exp(gen) * block;
    for (Eigen::Index i = 0; i < size; ++i) {
      const std::size_t n1 = lo + static_cast<std::size_t>(i);
      out(at(n1, total - n1)) = mixed(i);
    }
  }
  return MultiModeState({output_labels[0], output_labels[1]}, state.dims(), std::move(out));
}

// ---------------------------------------------------------------------------

PipelineReport generate_egcs_n1(Complex alpha, std::optional<std::size_t> dim, std::size_t fock_index) {
  const TruncationDim d(dim.value_or(required_dim(fock_index, std::abs(alpha))));
  check_adequacy(fock_index, std::abs(alpha), d);

  PipelineReport report;
  report.scheme = "pbs";
  report.alpha = alpha.real();
  report.fock_index = fock_index;
  report.dim = d.value();

  const auto displaced = mzi_displace(fock_state(fock_index, d), 1.0, alpha);
  const auto vac = fock_state(0, d);
  const auto port_b = two_mode(fock_state(0, TruncationDim(1)), fock_state(0, TruncationDim(1)), "b_H", "b_V");
  const auto port_a = sum({two_mode(displaced, vac, "a_H", "a_V"), two_mode(vac, displaced, "a_H", "a_V")})
                          .scaled(kInvSqrt2);
  auto [input, input_norm] = normalize(tensor(port_a, port_b));
  report.stages.push_back({"input", input_norm});

  const auto split = pbs_transform(input);
  report.stages.push_back({"pbs", split.norm()});

  const auto projected = polarizer_45(split);
  report.success_probability = projected.success_probability;
  report.discarded_probability = 1.0 - projected.success_probability;
  report.stages.push_back({"polarizer", std::sqrt(projected.success_probability)});
  report.output = projected.state;

  const auto target = egcs(fock_index, alpha, d).relabeled(report.output.labels());
  report.fidelity_to_target = fidelity(target, report.output);
  report.discrepancy = report.fidelity_to_target < 0.99;
  return report;
}

PipelineReport generate_egcs_bs(Complex alpha, std::optional<std::size_t> dim) {
  const TruncationDim d(dim.value_or(required_dim(1, std::abs(alpha))));
  check_adequacy(1, std::abs(alpha), d);

  PipelineReport report;
  report.scheme = "bs";
  report.alpha = alpha.real();
  report.fock_index = 1;
  report.dim = d.value();

  const Complex beta = alpha * kInvSqrt2;
  const auto one_plus = displaced_number_state(1, beta, d);
  const auto one_minus = displaced_number_state(1, -beta, d);
  const auto coh_plus = coherent_state(beta, d);
  const auto coh_minus = coherent_state(-beta, d);

  const auto literal = sum({two_mode(one_plus, coh_plus, "a", "b"), two_mode(one_plus, coh_minus, "a", "b"),
                            two_mode(coh_plus, one_plus, "a", "b"), two_mode(coh_plus, one_minus, "a", "b")})
                           .scaled(kInvSqrt2);
  auto [input, input_norm] = normalize(literal);
  report.stages.push_back({"input", input_norm});

  report.output = bs_transform(input);
  report.stages.push_back({"beam_splitter", report.output.norm()});

  const auto target = egcs(1, alpha, d).relabeled(report.output.labels());
  report.fidelity_to_target = fidelity(target, report.output);

  const auto operator_form = sum({two_mode(one_plus, coh_minus, "a", "b"), two_mode(coh_plus, one_minus, "a", "b").scaled(-1.0),
                                  two_mode(one_plus, coh_plus, "a", "b"), two_mode(coh_plus, one_plus, "a", "b")});
  report.operator_form_fidelity = fidelity(target, bs_transform(normalize(operator_form).first));
  report.discrepancy = report.fidelity_to_target < 0.99;
  return report;
}

}  // namespace egcs
