// optics.hpp - linear-optical generation of EGCS.
//
// Two schemes are simulated:
//  * PBS pipeline: a displaced, diagonally polarized Fock state enters one
//    port of a polarizing beam splitter, and a 45 degree polarizer per output
//    port maps both branches onto a common polarization.
//  * Beam-splitter pipeline: a two-mode superposition of displaced Fock and
//    coherent components interferes on a 50:50 beam splitter.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "egcs/fock.hpp"

namespace egcs {

/// Polarization-resolved PBS ports.
inline const std::vector<std::string> kPbsInputModes = {"a_H", "a_V", "b_H", "b_V"};
inline const std::vector<std::string> kPbsOutputModes = {"c_H", "c_V", "d_H", "d_V"};

/// Transmits H, reflects V:  c_H <- b_H, c_V <- a_V, d_H <- a_H, d_V <- b_V.
/// Exact amplitude-tensor index permutation.
[[nodiscard]] MultiModeState pbs_transform(const MultiModeState& state);
/// Inverse permutation, output ports back onto input ports.
[[nodiscard]] MultiModeState pbs_inverse(const MultiModeState& state);

/// Ideal-displacement model of a Mach-Zehnder interferometer fed by a coherent
/// state of amplitude beta with effective transmittivity T: returns D(T beta)|psi>.
[[nodiscard]] StateVector mzi_displace(const StateVector& state, double transmittivity, Complex beta);

struct Projection {
  MultiModeState state;  ///< renormalized
  double success_probability;
};

/// Per spatial port X with modes X_H, X_V: keeps only the diagonal
/// polarization D = (H + V)/sqrt(2), discarding any anti-diagonal photon
/// (post-selection on an empty anti-diagonal mode). The pair is replaced by a
/// single mode X_D of dim dim(X_H) + dim(X_V) - 1. Throws ZeroNorm when nothing
/// survives.
[[nodiscard]] Projection polarizer_45(const MultiModeState& state);

/// Inverse embedding of polarizer_45: each X_D mode is rewritten as the pair
/// (X_H, X_V), both of dim(X_D), using D^dag = (H^dag + V^dag)/sqrt(2).
[[nodiscard]] MultiModeState expand_diagonal(const MultiModeState& state);

/// 50:50 beam splitter a^dag -> (c^dag + d^dag)/sqrt(2), b^dag -> (c^dag - d^dag)/sqrt(2).
/// Both modes must share a dim; the unitary is exponentiated per total-photon
/// block of the truncated two-mode space.
[[nodiscard]] MultiModeState bs_transform(const MultiModeState& state,
                                          std::array<std::string, 2> output_labels = {"c", "d"});

struct StageNorm {
  std::string stage;
  double norm;
};

struct PipelineReport {
  std::string scheme;
  double alpha = 0.0;
  std::size_t fock_index = 1;
  std::size_t dim = 0;
  MultiModeState output{{"vac"}, {1}, CVector::Ones(1)};
  double fidelity_to_target = 0.0;
  double success_probability = 1.0;
  double discarded_probability = 0.0;
  std::vector<StageNorm> stages;
  /// Beam-splitter scheme only: fidelity obtained from the operator form of
  /// the input (displacements times (a^dag -/+ b^dag)) instead of the literal
  /// four-term input.
  std::optional<double> operator_form_fidelity;
  /// Set when the fidelity to the EGCS target falls below 0.99.
  bool discrepancy = false;
};

/// PBS + polarizer scheme. `dim` defaults to the adequacy rule for
/// (fock_index, |alpha|); the input port b modes carry dim 1.
[[nodiscard]] PipelineReport generate_egcs_n1(Complex alpha, std::optional<std::size_t> dim = std::nullopt,
                                              std::size_t fock_index = 1);

/// Beam-splitter scheme built literally from its two-mode input
///   [ |1,a/s2>(|a/s2> + |-a/s2>) + |a/s2>(|1,a/s2> + |1,-a/s2>) ] / sqrt(2)
/// and compared against the EGCS with n = 1. `dim` defaults to the adequacy
/// rule for (1, |alpha|) since the output carries the full displacement.
[[nodiscard]] PipelineReport generate_egcs_bs(Complex alpha, std::optional<std::size_t> dim = std::nullopt);

}  // namespace egcs
