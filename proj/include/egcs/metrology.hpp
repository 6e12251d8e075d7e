// metrology.hpp - phase-sensitivity bounds for two-mode probes.
//
// The phase generator is H = (a^dag a - b^dag b)/2. For pure states the
// quantum Fisher information is 4 t^2 Var(H) and the single-shot Cramer-Rao
// bound is dphi >= 1/(2 sqrt(Var H)).

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "egcs/fock.hpp"
#include "egcs/states.hpp"

namespace egcs {

/// Dense H on the two-mode product space. Only practical for small dims;
/// photon_moments() evaluates the same diagonal operator without the matrix.
[[nodiscard]] OperatorMatrix phase_generator(TruncationDim dim);

/// Diagonal Fock-basis moments of a two-mode state.
struct PhotonMoments {
  double mean_photons = 0.0;  ///< <N>, N = n1 + n2
  double mean_h = 0.0;        ///< <H>
  double var_h = 0.0;         ///< <H^2> - <H>^2, clamped at 0
};

[[nodiscard]] PhotonMoments photon_moments(const MultiModeState& state);

/// 4 t^2 Var(H). Throws NotNormalized when | ||psi|| - 1 | > 1e-9.
[[nodiscard]] double qfi(const MultiModeState& state, double t = 1.0);

/// 1/sqrt(trials * qfi). Throws ZeroInformation when qfi == 0.
[[nodiscard]] double min_phase_uncertainty(const MultiModeState& state, double trials = 1.0);

/// 1/(2 sqrt(trials * var_h)); the form used for sweep records.
[[nodiscard]] double min_phase_uncertainty_from_variance(double var_h, double trials = 1.0);

// ---------------------------------------------------------------------------
// Closed-form EGCS expressions as commonly quoted for |0>|n,a> + |n,a>|0>
// with real a. They are evaluated literally (including a^n e^{-a^2/2}/n! in
// the normalization) and only serve the formula audit; they are known to
// disagree with the exact numerics.

[[nodiscard]] double closed_form_normalization(std::size_t n, double alpha);
[[nodiscard]] double closed_form_mean_photons(std::size_t n, double alpha);
[[nodiscard]] double closed_form_variance(std::size_t n, double alpha);

// ---------------------------------------------------------------------------
// Sweeps

struct SweepRecord {
  ProbeKind family;
  std::size_t n = 0;
  double alpha = 0.0;
  double mean_photons = 0.0;
  double var_h = 0.0;
  double delta_phi = 0.0;
  std::size_t dim_used = 0;
};

/// How the truncation is chosen per sweep point: the adequacy rule, or a
/// fixed override that must itself satisfy adequacy.
struct DimPolicy {
  std::optional<std::size_t> fixed;

  [[nodiscard]] TruncationDim resolve(std::size_t n, double abs_alpha) const;
};

/// `points` values uniform in (lower, alpha_max]; lower itself excluded.
[[nodiscard]] std::vector<double> alpha_grid(double alpha_max, std::size_t points, double lower = 0.05);

[[nodiscard]] SweepRecord evaluate(const ProbeFamily& family, const DimPolicy& policy = {});

/// ECS / EGCS sweep over real displacements.
[[nodiscard]] std::vector<SweepRecord> sweep(ProbeKind kind, std::size_t n, std::span<const double> alphas,
                                             const DimPolicy& policy = {});

/// NOON sweep over photon numbers.
[[nodiscard]] std::vector<SweepRecord> sweep_noon(std::span<const std::size_t> ns, const DimPolicy& policy = {});

/// Piecewise-linear Delta-phi at the given mean photon number, or nullopt when
/// nbar lies outside the sweep's N-bar range.
[[nodiscard]] std::optional<double> interpolate_delta_phi(std::span<const SweepRecord> records, double nbar);

// ---------------------------------------------------------------------------
// Power-law fit  dphi = c / nbar^x

struct FitResult {
  double x = 0.0;
  double c = 0.0;
  double rss = 0.0;  ///< residual sum of squares of log(dphi)
  std::size_t n = 0;
  double alpha_max = 0.0;
};

/// Ordinary least squares of log(dphi) on log(nbar). Throws DegenerateFit with
/// fewer than three points, non-positive data, or a single distinct nbar.
[[nodiscard]] FitResult fit_power_law(std::span<const double> nbar, std::span<const double> delta_phi);
[[nodiscard]] FitResult fit_exponent(std::span<const SweepRecord> records);

// ---------------------------------------------------------------------------
// Formula audit

enum class AuditQuantity { normalization, mean_photons, var_h };

[[nodiscard]] std::string_view to_string(AuditQuantity q);

struct FormulaAuditRow {
  std::size_t n = 0;
  double alpha = 0.0;
  AuditQuantity quantity = AuditQuantity::normalization;
  double closed_form = 0.0;
  double numerical = 0.0;
  double abs_dev = 0.0;
  double rel_dev = 0.0;  ///< abs_dev / |numerical|; 0 when both vanish
};

/// Three rows (normalization, mean photons, variance) per (n, alpha) pair.
[[nodiscard]] std::vector<FormulaAuditRow> audit_formulas(std::span<const std::size_t> ns,
                                                          std::span<const double> alphas);

}  // namespace egcs
