#include "egcs/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace egcs {

OperatorMatrix phase_generator(TruncationDim dim) {
  const auto n = number_operator(dim);
  const auto id = identity(dim);
  auto h = kron(n, id);
  h.entries = 0.5 * (h.entries - kron(id, n).entries);
  return h;
}

PhotonMoments photon_moments(const MultiModeState& state) {
  if (state.mode_count() != 2) throw ModeMismatch("photon_moments: two-mode state required");
  const auto d1 = static_cast<Eigen::Index>(state.dims()[0]);
  const auto d2 = static_cast<Eigen::Index>(state.dims()[1]);
  const CVector& amp = state.amplitudes();
  double mean_n = 0.0;
  double mean_h = 0.0;
  double mean_h2 = 0.0;
  for (Eigen::Index n1 = 0; n1 < d1; ++n1) {
    for (Eigen::Index n2 = 0; n2 < d2; ++n2) {
      const double p = std::norm(amp(n1 * d2 + n2));
      const double h = 0.5 * static_cast<double>(n1 - n2);
      mean_n += p * static_cast<double>(n1 + n2);
      mean_h += p * h;
      mean_h2 += p * h * h;
    }
  }
  return {mean_n, mean_h, std::max(0.0, mean_h2 - mean_h * mean_h)};
}

double qfi(const MultiModeState& state, double t) {
  if (!state.is_normalized(1e-9)) throw NotNormalized("qfi: state is not normalized");
  return 4.0 * t * t * photon_moments(state).var_h;
}

double min_phase_uncertainty(const MultiModeState& state, double trials) {
  if (trials <= 0.0) throw std::invalid_argument("min_phase_uncertainty: trials must be positive");
  const double f = qfi(state);
  if (f <= 0.0) throw ZeroInformation("probe carries no phase information (QFI = 0)");
  return 1.0 / std::sqrt(trials * f);
}

double min_phase_uncertainty_from_variance(double var_h, double trials) {
  if (trials <= 0.0) throw std::invalid_argument("min_phase_uncertainty: trials must be positive");
  if (var_h <= 0.0) throw ZeroInformation("probe carries no phase information (Var H = 0)");
  return 1.0 / (2.0 * std::sqrt(trials * var_h));
}

// ---------------------------------------------------------------------------

namespace {

// 1 + a^n e^{-a^2/2} / n!, with 0^0 = 1.
double printed_overlap_term(std::size_t n, double alpha) {
  return 1.0 + std::pow(alpha, static_cast<double>(n)) * std::exp(-0.5 * alpha * alpha) /
                   std::tgamma(static_cast<double>(n) + 1.0);
}

}  // namespace

double closed_form_normalization(std::size_t n, double alpha) {
  return 1.0 / std::sqrt(2.0 * printed_overlap_term(n, alpha));
}

double closed_form_mean_photons(std::size_t n, double alpha) {
  return (static_cast<double>(n) + alpha * alpha) * closed_form_normalization(n, alpha);
}

double closed_form_variance(std::size_t n, double alpha) {
  const double nn = static_cast<double>(n);
  const double x = alpha * alpha;
  return (nn * nn + x * x + (4.0 * nn + 1.0) * x) / (4.0 * printed_overlap_term(n, alpha));
}

// ---------------------------------------------------------------------------

TruncationDim DimPolicy::resolve(std::size_t n, double abs_alpha) const {
  if (!fixed) return adequate_dim(n, abs_alpha);
  const TruncationDim dim(*fixed);
  check_adequacy(n, abs_alpha, dim);
  return dim;
}

std::vector<double> alpha_grid(double alpha_max, std::size_t points, double lower) {
  if (points == 0) throw std::invalid_argument("alpha_grid: empty grid");
  if (!(alpha_max > lower)) throw std::invalid_argument("alpha_grid: alpha_max must exceed the lower bound");
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i)
    grid[i] = lower + (alpha_max - lower) * static_cast<double>(i + 1) / static_cast<double>(points);
  return grid;
}

SweepRecord evaluate(const ProbeFamily& family, const DimPolicy& policy) {
  family.validate();
  const TruncationDim dim = policy.resolve(family.n, std::abs(family.alpha));
  const auto state = prepare(family, dim);
  const auto moments = photon_moments(state);
  SweepRecord rec;
  rec.family = family.kind;
  rec.n = family.n;
  rec.alpha = family.alpha.real();
  rec.mean_photons = moments.mean_photons;
  rec.var_h = moments.var_h;
  rec.delta_phi = min_phase_uncertainty_from_variance(moments.var_h);
  rec.dim_used = dim.value();
  return rec;
}

std::vector<SweepRecord> sweep(ProbeKind kind, std::size_t n, std::span<const double> alphas,
                               const DimPolicy& policy) {
  if (alphas.empty()) throw std::invalid_argument("sweep: empty alpha grid");
  if (kind == ProbeKind::noon) throw std::invalid_argument("sweep: NOON sweeps run over n, use sweep_noon");
  std::vector<SweepRecord> out;
  out.reserve(alphas.size());
  for (double a : alphas) {
    const auto family = kind == ProbeKind::ecs ? ProbeFamily::ecs(a) : ProbeFamily::egcs(n, a);
    out.push_back(evaluate(family, policy));
  }
  return out;
}

std::vector<SweepRecord> sweep_noon(std::span<const std::size_t> ns, const DimPolicy& policy) {
  if (ns.empty()) throw std::invalid_argument("sweep_noon: empty n grid");
  std::vector<SweepRecord> out;
  out.reserve(ns.size());
  for (auto n : ns) out.push_back(evaluate(ProbeFamily::noon(n), policy));
  return out;
}

std::optional<double> interpolate_delta_phi(std::span<const SweepRecord> records, double nbar) {
  if (records.empty()) return std::nullopt;
  std::vector<std::pair<double, double>> pts;
  pts.reserve(records.size());
  for (const auto& r : records) pts.emplace_back(r.mean_photons, r.delta_phi);
  std::sort(pts.begin(), pts.end());
  if (nbar < pts.front().first || nbar > pts.back().first) return std::nullopt;
  auto hi = std::lower_bound(pts.begin(), pts.end(), nbar, [](const auto& p, double v) { return p.first < v; });
  if (hi->first == nbar) return hi->second;
  auto lo = std::prev(hi);
  const double w = (nbar - lo->first) / (hi->first - lo->first);
  return lo->second + w * (hi->second - lo->second);
}

// ---------------------------------------------------------------------------

FitResult fit_power_law(std::span<const double> nbar, std::span<const double> delta_phi) {
  if (nbar.size() != delta_phi.size()) throw std::invalid_argument("fit_power_law: length mismatch");
  if (nbar.size() < 3) throw DegenerateFit("fit needs at least three points");
  const std::size_t count = nbar.size();
  std::vector<double> lx(count), ly(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!(nbar[i] > 0.0) || !(delta_phi[i] > 0.0)) throw DegenerateFit("fit needs positive nbar and delta_phi");
    lx[i] = std::log(nbar[i]);
    ly[i] = std::log(delta_phi[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(count);
  my /= static_cast<double>(count);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw DegenerateFit("all nbar values are equal");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double r = ly[i] - (intercept + slope * lx[i]);
    rss += r * r;
  }
  FitResult fit;
  fit.x = -slope;
  fit.c = std::exp(intercept);
  fit.rss = rss;
  return fit;
}

FitResult fit_exponent(std::span<const SweepRecord> records) {
  std::vector<double> nbar, dphi;
  nbar.reserve(records.size());
  dphi.reserve(records.size());
  double alpha_max = 0.0;
  for (const auto& r : records) {
    nbar.push_back(r.mean_photons);
    dphi.push_back(r.delta_phi);
    alpha_max = std::max(alpha_max, r.alpha);
  }
  auto fit = fit_power_law(nbar, dphi);
  fit.n = records.front().n;
  fit.alpha_max = alpha_max;
  return fit;
}

// ---------------------------------------------------------------------------

std::string_view to_string(AuditQuantity q) {
  switch (q) {
    case AuditQuantity::normalization:
      return "normalization";
    case AuditQuantity::mean_photons:
      return "mean_photons";
    case AuditQuantity::var_h:
      return "var_h";
  }
  return "unknown";
}

std::vector<FormulaAuditRow> audit_formulas(std::span<const std::size_t> ns, std::span<const double> alphas) {
  std::vector<FormulaAuditRow> rows;
  for (auto n : ns) {
    for (double a : alphas) {
      const auto built = build_egcs(n, a, adequate_dim(n, std::abs(a)));
      const auto moments = photon_moments(built.state);
      const std::pair<AuditQuantity, std::pair<double, double>> entries[] = {
          {AuditQuantity::normalization, {closed_form_normalization(n, a), built.normalization()}},
          {AuditQuantity::mean_photons, {closed_form_mean_photons(n, a), moments.mean_photons}},
          {AuditQuantity::var_h, {closed_form_variance(n, a), moments.var_h}},
      };
      for (const auto& [q, values] : entries) {
        FormulaAuditRow row;
        row.n = n;
        row.alpha = a;
        row.quantity = q;
        row.closed_form = values.first;
        row.numerical = values.second;
        row.abs_dev = std::abs(values.first - values.second);
        if (row.abs_dev == 0.0)
          row.rel_dev = 0.0;
        else if (values.second == 0.0)
          row.rel_dev = std::numeric_limits<double>::infinity();
        else
          row.rel_dev = row.abs_dev / std::abs(values.second);
        rows.push_back(row);
      }
    }
  }
  return rows;
}

}  // namespace egcs
