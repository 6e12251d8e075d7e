#include "egcs/states.hpp"

#include <cmath>
#include <stdexcept>

namespace egcs {

std::string_view to_string(ProbeKind kind) {
  switch (kind) {
    case ProbeKind::noon:
      return "noon";
    case ProbeKind::ecs:
      return "ecs";
    case ProbeKind::egcs:
      return "egcs";
  }
  return "unknown";
}

ProbeKind parse_probe_kind(std::string_view text) {
  if (text == "noon") return ProbeKind::noon;
  if (text == "ecs") return ProbeKind::ecs;
  if (text == "egcs") return ProbeKind::egcs;
  throw std::invalid_argument("unknown probe family '" + std::string(text) + "'");
}

ProbeFamily ProbeFamily::noon(std::size_t n) {
  ProbeFamily f{ProbeKind::noon, n, {0.0, 0.0}};
  f.validate();
  return f;
}

ProbeFamily ProbeFamily::ecs(Complex alpha) { return {ProbeKind::ecs, 0, alpha}; }

ProbeFamily ProbeFamily::egcs(std::size_t n, Complex alpha) { return {ProbeKind::egcs, n, alpha}; }

void ProbeFamily::validate() const {
  switch (kind) {
    case ProbeKind::noon:
      if (n < 1) throw std::invalid_argument("NOON probe needs n >= 1");
      if (alpha != Complex(0.0)) throw std::invalid_argument("NOON probe needs alpha = 0");
      break;
    case ProbeKind::ecs:
      if (n != 0) throw std::invalid_argument("ECS probe needs n = 0");
      break;
    case ProbeKind::egcs:
      break;
  }
}

EgcsConstruction build_egcs(std::size_t n, Complex alpha, TruncationDim dim) {
  check_adequacy(n, std::abs(alpha), dim);
  const auto branch = MultiModeState::single(displaced_number_state(n, alpha, dim), kMode1);
  const auto vac = MultiModeState::single(fock_state(0, dim), kMode1);
  const auto left = tensor(vac, branch.relabeled({kMode2}));
  const auto right = tensor(branch, vac.relabeled({kMode2}));
  const MultiModeState raw(left.labels(), left.dims(), left.amplitudes() + right.amplitudes());
  auto [state, norm] = normalize(raw);
  return {std::move(state), norm};
}

MultiModeState egcs(std::size_t n, Complex alpha, TruncationDim dim) { return build_egcs(n, alpha, dim).state; }

MultiModeState ecs(Complex alpha, TruncationDim dim) { return egcs(0, alpha, dim); }

MultiModeState noon(std::size_t n, TruncationDim dim) {
  if (n < 1) throw std::invalid_argument("noon: n must be >= 1");
  return egcs(n, 0.0, dim);
}

MultiModeState prepare(const ProbeFamily& family, TruncationDim dim) {
  family.validate();
  return egcs(family.n, family.alpha, dim);
}

TruncationDim adequate_dim(const ProbeFamily& family) { return adequate_dim(family.n, std::abs(family.alpha)); }

MultiModeState apply_phase(const MultiModeState& state, double phi) {
  if (state.mode_count() != 2) throw ModeMismatch("apply_phase: two-mode state required");
  const auto d1 = static_cast<Eigen::Index>(state.dims()[0]);
  const auto d2 = static_cast<Eigen::Index>(state.dims()[1]);
  CVector out = state.amplitudes();
  for (Eigen::Index n1 = 0; n1 < d1; ++n1)
    for (Eigen::Index n2 = 0; n2 < d2; ++n2)
      out(n1 * d2 + n2) *= std::polar(1.0, -0.5 * phi * static_cast<double>(n1 - n2));
  return MultiModeState(state.labels(), state.dims(), std::move(out));
}

MultiModeState swap_modes(const MultiModeState& state) {
  if (state.mode_count() != 2) throw ModeMismatch("swap_modes: two-mode state required");
  const auto& l = state.labels();
  return state.permuted({l[1], l[0]}).relabeled(l);
}

}  // namespace egcs
