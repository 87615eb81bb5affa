#include "cli/commands.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "cli/pipeline.hpp"
#include "sns/bench.hpp"
#include "sns/validation.hpp"

namespace sns::cli {

void write_table1(std::ostream& out, int decimals) {
  out << "i,sd_b1,b_for_unit_sd,b_approx,sd_with_b_approx\n";
  for (const Table1Row& row : table1()) {
    out << row.i << ',' << format_fixed(row.sd_b1, decimals) << ','
        << format_fixed(row.b_for_unit_sd, decimals) << ',' << format_fixed(row.b_approx, decimals)
        << ',' << format_fixed(row.sd_with_b_approx, decimals) << '\n';
  }
}

namespace {

void write_estimate(std::ostream& out, const std::string& label, const ArlEstimate& e) {
  out << label << ',' << format_fixed(e.mean_rl) << ',' << format_fixed(e.std_error) << ','
      << e.replications << ',' << e.truncation_cap << ',' << format_fixed(e.censored_fraction) << ','
      << (e.valid() ? "valid" : "invalid") << '\n';
}

}  // namespace

void write_calibration(std::ostream& out, const CalibrateOptions& options) {
  const CalibrationResult r = calibrate_limit(options.target, options.seed, options.threads);
  out << "chart,target_arl0,limit,arl0,std_error,replications,cap,censored_fraction,status\n";
  out << to_string(options.target.chart.type) << ',' << format_fixed(options.target.target_arl0) << ','
      << format_fixed(r.limit) << ',' << format_fixed(r.estimate.mean_rl) << ','
      << format_fixed(r.estimate.std_error) << ',' << r.estimate.replications << ','
      << r.estimate.truncation_cap << ',' << format_fixed(r.estimate.censored_fraction) << ','
      << (r.estimate.valid() ? "valid" : "invalid") << '\n';
}

void write_arl(std::ostream& out, const ArlOptions& o) {
  const std::size_t cap = o.cap.value_or(100000);
  out << "stream,arl,std_error,replications,cap,censored_fraction,status\n";
  if (o.compare) {
    const ArlComparison c = compare_sns_vs_normal(o.chart, o.model, o.replications, cap, o.seed, o.threads);
    write_estimate(out, "exact-normal", c.normal);
    write_estimate(out, "sns-" + to_string(o.model.distribution), c.sns);
    out << "# ratio sns/normal " << format_fixed(c.ratio) << '\n';
    return;
  }
  const ArlEstimate e = estimate_arl(o.chart, o.model, o.replications, cap, o.seed, o.threads);
  const std::string label = o.model.kind == StreamModel::Kind::exact_normal
                                ? std::string("exact-normal")
                                : "sns-" + to_string(o.model.distribution);
  write_estimate(out, label, e);
}

void write_ecdf_study(std::ostream& out, const EcdfOptions& o) {
  const std::vector<double> grid = default_ecdf_grid();
  const EcdfSummary s = mean_ecdf_study(o.n, o.replications, grid, o.seed, o.distribution);
  out << "x,mean_ecdf,phi\n";
  for (std::size_t k = 0; k < s.grid.size(); ++k) {
    out << format_fixed(s.grid[k]) << ',' << format_fixed(s.mean_ecdf[k]) << ','
        << format_fixed(phi(s.grid[k])) << '\n';
  }
  out << "# n " << s.n << " replications " << s.replications << " max_abs_deviation "
      << format_fixed(s.max_abs_deviation) << " mass_at_zero " << format_fixed(s.mean_at_zero) << '\n';
}

void write_path_study(std::ostream& out, const PathOptions& o) {
  out << "n,a2,p_value\n";
  for (const PathCheckpoint& c : path_gof_study(o.checkpoints, o.seed, o.distribution)) {
    out << c.n << ',' << format_fixed(c.ad.statistic) << ',' << format_fixed(c.ad.p_value) << '\n';
  }
}

std::size_t parse_size(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("invalid size: " + text);
  }
  if (used != text.size() || !(v >= 1.0) || v != std::floor(v) || v > 1e12) {
    throw ConfigError("invalid size: " + text);
  }
  return static_cast<std::size_t>(v);
}

void write_bench(std::ostream& out, const BenchOptions& o) {
  out << "method,n,median_seconds,repeats\n";
  for (const std::string& method : o.methods) {
    for (std::size_t n : o.sizes) {
      BenchResult r;
      if (method == "sns") {
        r = bench_sns(n, o.repeats, o.seed);
      } else if (method == "sns-window") {
        r = bench_sns(n, o.repeats, o.seed, o.window);
      } else if (method == "sns-cumulative") {
        r = bench_sns_cumulative(n, o.repeats, o.seed);
      } else if (method == "sns-window-cumulative") {
        r = bench_sns_cumulative(n, o.repeats, o.seed, o.window);
      } else if (method == "lepage" || method == "lepage-ref") {
        r = bench_baseline_lepage(n, o.repeats, o.seed);
      } else if (method == "mw" || method == "mw-changepoint") {
        r = bench_baseline_mw(n, o.repeats, o.seed);
      } else {
        throw ConfigError("unknown bench method: " + method);
      }
      out << r.method << ',' << r.n << ',';
      if (r.feasible) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.9e", r.median_seconds);
        out << buf;
      } else {
        out << "infeasible";
      }
      out << ',' << r.repeats << '\n';
    }
  }
}

}  // namespace sns::cli
