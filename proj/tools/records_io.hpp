// records_io.hpp - flat-file serialization of sweep, fit and audit tables.
//
// CSV: comma separated, one header row, LF line endings, doubles with 17
// significant digits. JSON: one object with a `records` array whose keys
// mirror the CSV columns.

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "egcs/metrology.hpp"
#include "egcs/optics.hpp"

namespace egcs::cli {

enum class Format { csv, json };

[[nodiscard]] std::string format_double(double value);

inline const std::vector<std::string> kSweepColumns = {"family",    "n",          "alpha",   "N_bar",
                                                       "var_H",     "delta_phi",  "shot_noise", "dim_used"};
inline const std::vector<std::string> kFitColumns = {"n", "alpha_max", "x", "c", "rss", "points"};
inline const std::vector<std::string> kAuditColumns = {"n",         "alpha",   "quantity", "closed_form",
                                                       "numerical", "abs_dev", "rel_dev"};

struct FitRow {
  FitResult fit;
  std::size_t points = 0;
};

void write_sweep(std::ostream& out, std::span<const SweepRecord> records, Format format);
void write_fits(std::ostream& out, std::span<const FitRow> rows, Format format);
void write_audit(std::ostream& out, std::span<const FormulaAuditRow> rows, Format format);
void write_report(std::ostream& out, const PipelineReport& report);

/// Parses a CSV written by write_sweep. Throws std::runtime_error on a header
/// or field mismatch.
[[nodiscard]] std::vector<SweepRecord> read_sweep_csv(std::istream& in);

}  // namespace egcs::cli
