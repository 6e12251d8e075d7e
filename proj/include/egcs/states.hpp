// states.hpp - two-mode probe states (NOON, ECS, EGCS) and interferometric
// phase evolution.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "egcs/fock.hpp"

namespace egcs {

enum class ProbeKind { noon, ecs, egcs };

[[nodiscard]] std::string_view to_string(ProbeKind kind);
/// Accepts "noon", "ecs", "egcs"; throws std::invalid_argument otherwise.
[[nodiscard]] ProbeKind parse_probe_kind(std::string_view text);

/// A point in the probe-family parameter space.
///   NOON: alpha = 0, n >= 1.   ECS: n = 0.   EGCS: any n >= 0.
struct ProbeFamily {
  ProbeKind kind;
  std::size_t n = 0;
  Complex alpha{0.0, 0.0};

  static ProbeFamily noon(std::size_t n);
  static ProbeFamily ecs(Complex alpha);
  static ProbeFamily egcs(std::size_t n, Complex alpha);

  /// Throws std::invalid_argument when the family invariants are violated.
  void validate() const;
};

/// Normalized EGCS together with the norm of the raw branch sum
/// |0>|n,alpha> + |n,alpha>|0>. The normalization factor is 1/raw_norm.
struct EgcsConstruction {
  MultiModeState state;
  double raw_norm;

  [[nodiscard]] double normalization() const { return 1.0 / raw_norm; }
};

/// Mode labels used for two-mode probes.
inline const std::string kMode1 = "1";
inline const std::string kMode2 = "2";

[[nodiscard]] EgcsConstruction build_egcs(std::size_t n, Complex alpha, TruncationDim dim);
[[nodiscard]] MultiModeState egcs(std::size_t n, Complex alpha, TruncationDim dim);
[[nodiscard]] MultiModeState ecs(Complex alpha, TruncationDim dim);
[[nodiscard]] MultiModeState noon(std::size_t n, TruncationDim dim);

[[nodiscard]] MultiModeState prepare(const ProbeFamily& family, TruncationDim dim);
/// Adequate truncation for a family point.
[[nodiscard]] TruncationDim adequate_dim(const ProbeFamily& family);

/// exp(-i phi (n1 - n2)/2): the amplitude of |n1, n2> picks up e^{-i phi (n1-n2)/2}.
[[nodiscard]] MultiModeState apply_phase(const MultiModeState& state, double phi);

/// Exchanges the two modes of a two-mode state (labels stay in place).
[[nodiscard]] MultiModeState swap_modes(const MultiModeState& state);

}  // namespace egcs
