#include "records_io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace egcs::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string join(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  return line;
}

// JSON has no inf/nan; those become null.
ordered_json number(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

double shot_noise(double nbar) { return nbar > 0.0 ? 1.0 / std::sqrt(nbar) : std::numeric_limits<double>::infinity(); }

void write_json(std::ostream& out, const ordered_json& doc) { out << doc.dump(2) << '\n'; }

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_sweep(std::ostream& out, std::span<const SweepRecord> records, Format format) {
  if (format == Format::csv) {
    out << join(kSweepColumns) << '\n';
    for (const auto& r : records) {
      out << join({std::string(to_string(r.family)), std::to_string(r.n), format_double(r.alpha),
                   format_double(r.mean_photons), format_double(r.var_h), format_double(r.delta_phi),
                   format_double(shot_noise(r.mean_photons)), std::to_string(r.dim_used)})
          << '\n';
    }
    return;
  }
  ordered_json doc;
  doc["records"] = ordered_json::array();
  for (const auto& r : records) {
    ordered_json row;
    row["family"] = std::string(to_string(r.family));
    row["n"] = r.n;
    row["alpha"] = number(r.alpha);
    row["N_bar"] = number(r.mean_photons);
    row["var_H"] = number(r.var_h);
    row["delta_phi"] = number(r.delta_phi);
    row["shot_noise"] = number(shot_noise(r.mean_photons));
    row["dim_used"] = r.dim_used;
    doc["records"].push_back(std::move(row));
  }
  write_json(out, doc);
}

void write_fits(std::ostream& out, std::span<const FitRow> rows, Format format) {
  if (format == Format::csv) {
    out << join(kFitColumns) << '\n';
    for (const auto& r : rows) {
      out << join({std::to_string(r.fit.n), format_double(r.fit.alpha_max), format_double(r.fit.x),
                   format_double(r.fit.c), format_double(r.fit.rss), std::to_string(r.points)})
          << '\n';
    }
    return;
  }
  ordered_json doc;
  doc["records"] = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json row;
    row["n"] = r.fit.n;
    row["alpha_max"] = number(r.fit.alpha_max);
    row["x"] = number(r.fit.x);
    row["c"] = number(r.fit.c);
    row["rss"] = number(r.fit.rss);
    row["points"] = r.points;
    doc["records"].push_back(std::move(row));
  }
  write_json(out, doc);
}

void write_audit(std::ostream& out, std::span<const FormulaAuditRow> rows, Format format) {
  if (format == Format::csv) {
    out << join(kAuditColumns) << '\n';
    for (const auto& r : rows) {
      out << join({std::to_string(r.n), format_double(r.alpha), std::string(to_string(r.quantity)),
                   format_double(r.closed_form), format_double(r.numerical), format_double(r.abs_dev),
                   format_double(r.rel_dev)})
          << '\n';
    }
    return;
  }
  ordered_json doc;
  doc["records"] = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json row;
    row["n"] = r.n;
    row["alpha"] = number(r.alpha);
    row["quantity"] = std::string(to_string(r.quantity));
    row["closed_form"] = number(r.closed_form);
    row["numerical"] = number(r.numerical);
    row["abs_dev"] = number(r.abs_dev);
    row["rel_dev"] = number(r.rel_dev);
    doc["records"].push_back(std::move(row));
  }
  write_json(out, doc);
}

void write_report(std::ostream& out, const PipelineReport& report) {
  ordered_json doc;
  doc["scheme"] = report.scheme;
  doc["alpha"] = number(report.alpha);
  doc["fock_index"] = report.fock_index;
  doc["dim"] = report.dim;
  doc["fidelity"] = number(report.fidelity_to_target);
  doc["success_probability"] = number(report.success_probability);
  doc["discarded_probability"] = number(report.discarded_probability);
  doc["discrepancy"] = report.discrepancy;
  doc["operator_form_fidelity"] =
      report.operator_form_fidelity ? number(*report.operator_form_fidelity) : ordered_json(nullptr);
  doc["output_modes"] = report.output.labels();
  doc["output_dims"] = report.output.dims();
  doc["stages"] = ordered_json::array();
  for (const auto& s : report.stages) doc["stages"].push_back({{"stage", s.stage}, {"norm", number(s.norm)}});
  write_json(out, doc);
}

std::vector<SweepRecord> read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != join(kSweepColumns)) throw std::runtime_error("sweep csv: bad header");
  std::vector<SweepRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() != kSweepColumns.size()) throw std::runtime_error("sweep csv: wrong field count");
    SweepRecord r;
    r.family = parse_probe_kind(cells[0]);
    r.n = std::stoul(cells[1]);
    r.alpha = std::stod(cells[2]);
    r.mean_photons = std::stod(cells[3]);
    r.var_h = std::stod(cells[4]);
    r.delta_phi = std::stod(cells[5]);
    r.dim_used = std::stoul(cells[7]);
    out.push_back(r);
  }
  return out;
}

}  // namespace egcs::cli
