#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <tuple>

#include "CLI11.hpp"
#include "egcs/errors.hpp"
#include "egcs/metrology.hpp"
#include "egcs/optics.hpp"

namespace egcs::cli {

namespace {

std::size_t parse_count(const std::string& text) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(text, &pos);
  } catch (const std::exception&) {
    throw ConfigError("invalid integer '" + text + "'");
  }
  if (pos != text.size() || text.find('-') != std::string::npos) throw ConfigError("invalid integer '" + text + "'");
  return static_cast<std::size_t>(v);
}

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::csv;
  if (text == "json") return Format::json;
  throw ConfigError("unknown format '" + text + "'");
}

void sort_records(std::vector<SweepRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const SweepRecord& a, const SweepRecord& b) {
    return std::tie(a.family, a.n, a.alpha) < std::tie(b.family, b.n, b.alpha);
  });
}

DimPolicy dim_policy(const RunConfig& cfg) { return DimPolicy{cfg.dim_override}; }

double single_alpha_max(const RunConfig& cfg) {
  if (cfg.alpha_max.size() != 1) throw ConfigError("--alpha-max takes a single value for this command");
  return cfg.alpha_max.front();
}

std::vector<double> grid_for(const RunConfig& cfg, double alpha_max) {
  if (cfg.grid_points == 0) throw ConfigError("--grid must be at least 1 (empty alpha grid)");
  if (!(alpha_max > 0.0)) throw ConfigError("--alpha-max must be positive");
  if (!(alpha_max > cfg.alpha_min)) throw ConfigError("--alpha-max must exceed --alpha-min");
  if (cfg.alpha_min < 0.0) throw ConfigError("--alpha-min must be non-negative");
  return alpha_grid(alpha_max, cfg.grid_points, cfg.alpha_min);
}

std::vector<std::size_t> ns_or(const RunConfig& cfg, const std::string& fallback) {
  return parse_n_spec(cfg.n_spec.empty() ? fallback : cfg.n_spec);
}

void cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const ProbeKind kind = parse_probe_kind(cfg.family);
  std::vector<SweepRecord> records;
  if (kind == ProbeKind::noon) {
    const auto ns = ns_or(cfg, "1..10");
    for (auto n : ns)
      if (n < 1) throw ConfigError("NOON sweeps need n >= 1");
    records = sweep_noon(ns, dim_policy(cfg));
  } else {
    const auto alphas = grid_for(cfg, single_alpha_max(cfg));
    const auto ns = kind == ProbeKind::ecs ? std::vector<std::size_t>{0} : ns_or(cfg, "1");
    for (auto n : ns) {
      auto part = sweep(kind, n, alphas, dim_policy(cfg));
      records.insert(records.end(), part.begin(), part.end());
    }
  }
  sort_records(records);
  write_sweep(out, records, cfg.format);
}

void cmd_compare(const RunConfig& cfg, std::ostream& out) {
  const auto alphas = grid_for(cfg, single_alpha_max(cfg));
  std::vector<SweepRecord> records = sweep_noon(parse_n_spec("1..10"), dim_policy(cfg));
  auto ecs_part = sweep(ProbeKind::ecs, 0, alphas, dim_policy(cfg));
  records.insert(records.end(), ecs_part.begin(), ecs_part.end());
  for (auto n : ns_or(cfg, "1,2")) {
    auto part = sweep(ProbeKind::egcs, n, alphas, dim_policy(cfg));
    records.insert(records.end(), part.begin(), part.end());
  }
  sort_records(records);
  write_sweep(out, records, cfg.format);
}

void cmd_fit(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.grid_points < 3) throw ConfigError("--grid must be at least 3 for fits");
  std::vector<FitRow> rows;
  if (cfg.self_test) {
    // Exact power law on nbar = 1..grid with c = 1.
    std::vector<double> nbar(cfg.grid_points), dphi(cfg.grid_points);
    for (std::size_t i = 0; i < cfg.grid_points; ++i) {
      nbar[i] = static_cast<double>(i + 1);
      dphi[i] = std::pow(nbar[i], -cfg.self_test_exponent);
    }
    const auto fit = fit_power_law(nbar, dphi);
    rows.push_back({fit, cfg.grid_points});
    write_fits(out, rows, cfg.format);
    if (std::abs(fit.x - cfg.self_test_exponent) > 1e-9 || std::abs(fit.c - 1.0) > 1e-9) {
      err << "self-test: exponent not recovered (x = " << format_double(fit.x) << ")\n";
      throw std::runtime_error("self-test failed");
    }
    return;
  }
  for (double amax : cfg.alpha_max) {
    const auto alphas = grid_for(cfg, amax);
    for (auto n : ns_or(cfg, "0..10")) {
      const auto kind = n == 0 ? ProbeKind::ecs : ProbeKind::egcs;
      const auto records = sweep(kind, n, alphas, dim_policy(cfg));
      auto fit = fit_exponent(records);
      fit.alpha_max = amax;
      rows.push_back({fit, records.size()});
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const FitRow& a, const FitRow& b) {
    return std::tie(a.fit.n, a.fit.alpha_max) < std::tie(b.fit.n, b.fit.alpha_max);
  });
  write_fits(out, rows, cfg.format);
}

void cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const auto rows = audit_formulas(ns_or(cfg, "0..3"), cfg.audit_alphas);
  write_audit(out, rows, cfg.format);
}

void cmd_generate(const RunConfig& cfg, std::ostream& out) {
  PipelineReport report;
  if (cfg.scheme == "pbs") {
    report = generate_egcs_n1(cfg.alpha, cfg.dim_override, cfg.fock_index);
  } else if (cfg.scheme == "bs-appendix" || cfg.scheme == "bs") {
    if (cfg.fock_index != 1) throw ConfigError("the beam-splitter scheme only produces n = 1");
    report = generate_egcs_bs(cfg.alpha, cfg.dim_override);
  } else {
    throw ConfigError("unknown scheme '" + cfg.scheme + "' (expected pbs or bs-appendix)");
  }
  write_report(out, report);
}

void dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.command == "sweep")
    cmd_sweep(cfg, out);
  else if (cfg.command == "compare")
    cmd_compare(cfg, out);
  else if (cfg.command == "fit")
    cmd_fit(cfg, out, err);
  else if (cfg.command == "verify-formulas")
    cmd_verify(cfg, out);
  else if (cfg.command == "generate")
    cmd_generate(cfg, out);
  else
    throw ConfigError("unknown command '" + cfg.command + "'");
}

}  // namespace

std::vector<std::size_t> parse_n_spec(const std::string& spec) {
  if (spec.empty()) throw ConfigError("empty n specification");
  std::vector<std::size_t> out;
  if (auto dots = spec.find(".."); dots != std::string::npos) {
    const std::size_t lo = parse_count(spec.substr(0, dots));
    const std::size_t hi = parse_count(spec.substr(dots + 2));
    if (hi < lo) throw ConfigError("empty n range '" + spec + "'");
    for (std::size_t n = lo; n <= hi; ++n) out.push_back(n);
    return out;
  }
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_count(item));
  if (out.empty()) throw ConfigError("empty n specification");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string format = "csv";
  std::size_t dim = 0;

  CLI::App app{"Entangled generalized coherent state metrology simulator"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--dim", dim, "Fixed truncation dim (must satisfy the adequacy rule)");
    sub->add_option("--output,-o", cfg.output_path, "Output file (default: standard output)");
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--alpha-max", cfg.alpha_max, "Upper |alpha| of the sweep (comma list for fit)")->delimiter(',');
    sub->add_option("--alpha-min", cfg.alpha_min, "Excluded lower |alpha| of the sweep");
    sub->add_option("--grid", cfg.grid_points, "Number of alpha grid points");
  };

  auto* sweep_cmd = app.add_subcommand("sweep", "Delta-phi vs N-bar for one probe family");
  sweep_cmd->add_option("--family", cfg.family, "noon, ecs or egcs")->check(CLI::IsMember({"noon", "ecs", "egcs"}));
  sweep_cmd->add_option("--n", cfg.n_spec, "Fock index: 3, 1..10 or 1,2,5");
  add_grid(sweep_cmd);
  add_format(sweep_cmd);
  add_common(sweep_cmd);

  auto* compare_cmd = app.add_subcommand("compare", "NOON, ECS and EGCS sweeps in one table");
  compare_cmd->add_option("--n", cfg.n_spec, "EGCS Fock indices (default 1,2)");
  add_grid(compare_cmd);
  add_format(compare_cmd);
  add_common(compare_cmd);

  auto* fit_cmd = app.add_subcommand("fit", "Power-law exponent x of Delta-phi = c / N-bar^x");
  fit_cmd->add_option("--n", cfg.n_spec, "Fock indices (default 0..10; 0 is ECS)");
  add_grid(fit_cmd);
  fit_cmd->add_flag("--self-test", cfg.self_test, "Fit a synthetic exact power law instead");
  fit_cmd->add_option("--self-test-exponent", cfg.self_test_exponent, "Exponent of the synthetic law");
  add_format(fit_cmd);
  add_common(fit_cmd);

  auto* gen_cmd = app.add_subcommand("generate", "Simulate an EGCS generation scheme (JSON report)");
  gen_cmd->add_option("--scheme", cfg.scheme, "pbs or bs-appendix");
  gen_cmd->add_option("--alpha", cfg.alpha, "Real displacement amplitude");
  gen_cmd->add_option("--fock-index", cfg.fock_index, "Fock state displaced in the PBS scheme");
  add_common(gen_cmd);

  auto* verify_cmd = app.add_subcommand("verify-formulas", "Closed-form EGCS expressions vs numerics");
  verify_cmd->add_option("--n", cfg.n_spec, "Fock indices (default 0..3)");
  verify_cmd->add_option("--alpha", cfg.audit_alphas, "Comma list of real alphas")->delimiter(',');
  add_format(verify_cmd);
  add_common(verify_cmd);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    // help requests come through here too and exit cleanly
    return app.exit(e, out, err) == 0 ? kOk : kConfigError;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (dim != 0) cfg.dim_override = dim;

  try {
    cfg.format = parse_format(format);
    std::ostringstream buffer;
    dispatch(cfg, buffer, err);
    if (cfg.output_path.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(cfg.output_path, std::ios::binary | std::ios::trunc);
      if (!file) throw ConfigError("cannot open output file '" + cfg.output_path + "'");
      file << buffer.str();
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const AdequacyError& e) {
    err << "adequacy error: " << e.what() << '\n';
    return kAdequacyError;
  } catch (const DegenerateFit& e) {
    err << "degenerate fit: " << e.what() << '\n';
    return kDegenerateFit;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}

}  // namespace egcs::cli
