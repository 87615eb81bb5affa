// sns: sequential normal scores from the command line.
//
//   sns score      --variant individual < data.csv
//   sns chart      --chart cusum-mean --k 0.25 --h 7.267 < data.csv
//   sns calibrate  --chart cusum-mean --k 0.25 --target-arl 500
//   sns arl        --chart ewma --lambda 0.1 --rho 2.714 --m 10
//   sns table1
//   sns dist-study --study ecdf --n 30
//   sns bench      --methods sns,lepage --n 1e3,1e4
//
// Exit codes: 0 ok, 1 usage or configuration error, 2 data error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "cli/commands.hpp"
#include "cli/pipeline.hpp"
#include "sns/plot.hpp"

namespace {

struct ScoreFlags {
  std::string variant = "individual";
  std::size_t m = 0;
  std::optional<double> theta;
  std::optional<double> f_theta;
  std::string convention = "rankit";
  std::optional<std::size_t> window;
  std::string input;
};

struct ChartFlags {
  std::string chart = "cusum-mean";
  std::string side = "upper";
  double k = 0.25;
  std::optional<double> h;
  double lambda = 0.1;
  double rho = 2.714;
  std::size_t m = 10;
};

void add_score_flags(CLI::App* app, ScoreFlags& f) {
  app->add_option("--variant", f.variant, "individual|batched|conditional-individual|conditional-batched");
  app->add_option("--m", f.m, "Batch size for batched variants");
  app->add_option("--theta", f.theta, "Known quantile (conditional variants)");
  app->add_option("--f-theta", f.f_theta, "F(theta) in (0, 1) (conditional variants)");
  app->add_option("--convention", f.convention, "rankit|vdw|blom|tukey|adaptive|b=<value>");
  app->add_option("--window", f.window, "Rank against only the last W observations");
  app->add_option("--input", f.input, "Read from a file instead of stdin");
}

void add_chart_flags(CLI::App* app, ChartFlags& f, bool with_m) {
  app->add_option("--chart", f.chart, "cusum-mean|cusum-var|ewma");
  app->add_option("--side", f.side, "upper|lower|both (cusum-mean)");
  app->add_option("--k", f.k, "CUSUM allowance / reference value");
  app->add_option("--h", f.h, "CUSUM decision interval (negative for cusum-var)");
  app->add_option("--lambda", f.lambda, "EWMA smoothing");
  app->add_option("--rho", f.rho, "EWMA limit multiplier");
  if (with_m) app->add_option("--m", f.m, "Scores per chart step for batch charts");
}

sns::ChartConfig to_chart(const ChartFlags& f, std::size_t m) {
  sns::ChartConfig c;
  c.type = sns::parse_chart_type(f.chart);
  c.side = sns::parse_cusum_side(f.side);
  c.k = f.k;
  c.lambda = f.lambda;
  c.rho = f.rho;
  c.m = m;
  if (f.h) {
    c.h = *f.h;
  } else {
    c.h = c.type == sns::ChartType::cusum_variance ? -1.0 : 5.0;
  }
  return c;
}

sns::cli::RunConfig to_run(const ScoreFlags& f) {
  sns::cli::RunConfig c;
  c.variant = sns::parse_variant(f.variant);
  c.m = f.m;
  c.theta = f.theta;
  c.f_theta = f.f_theta;
  c.convention = sns::ScoringConvention::parse(f.convention);
  c.window = f.window;
  return c;
}

int run_stream(const ScoreFlags& sf, const ChartFlags* cf, const std::string& plot) {
  sns::cli::RunConfig config = to_run(sf);
  if (cf) {
    config.chart = to_chart(*cf, config.values_per_line());
    if (!cf->h && config.chart->type != sns::ChartType::ewma) {
      throw sns::cli::ConfigError("--h is required for CUSUM charts");
    }
  }
  std::ifstream file;
  if (!sf.input.empty()) {
    file.open(sf.input);
    if (!file) throw sns::cli::ConfigError("cannot open " + sf.input);
  }
  std::istream& in = sf.input.empty() ? std::cin : file;
  const auto summary = sns::cli::run_pipeline(in, std::cout, config, !plot.empty());
  if (cf) {
    std::cout << sns::cli::summary_line(summary) << '\n';
    if (!plot.empty()) sns::emit_plot(plot, summary.path, cf->chart);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential normal scores and control charts"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");

  ScoreFlags score_flags;
  auto* score = app.add_subcommand("score", "Transform a stream into sequential normal scores");
  add_score_flags(score, score_flags);

  ScoreFlags chart_score_flags;
  ChartFlags chart_flags;
  std::string plot;
  auto* chart = app.add_subcommand("chart", "Score a stream and run a control chart on the scores");
  add_score_flags(chart, chart_score_flags);
  add_chart_flags(chart, chart_flags, false);
  chart->add_option("--plot", plot, "Write the statistic path as SVG");

  ChartFlags cal_chart;
  double target_arl = 370.0;
  double tolerance = 0.02;
  std::size_t cal_reps = 10000;
  std::uint64_t cal_seed = 1;
  unsigned cal_threads = 0;
  std::string cal_stream = "normal";
  std::string cal_dist = "normal";
  std::string cal_variant = "individual";
  double cal_f_theta = 0.5;
  auto* calibrate = app.add_subcommand("calibrate", "Search the chart limit for a target in-control ARL");
  add_chart_flags(calibrate, cal_chart, true);
  calibrate->add_option("--target-arl", target_arl, "Target ARL0")->required();
  calibrate->add_option("--tolerance", tolerance, "Relative tolerance on ARL0");
  calibrate->add_option("--replications", cal_reps, "Monte-Carlo replications");
  calibrate->add_option("--seed", cal_seed, "Master seed");
  calibrate->add_option("--threads", cal_threads, "Worker threads (0 = all cores)");
  calibrate->add_option("--stream", cal_stream, "normal|sns");
  calibrate->add_option("--distribution", cal_dist, "Raw distribution for --stream sns");
  calibrate->add_option("--variant", cal_variant, "Scorer variant for --stream sns");
  calibrate->add_option("--f-theta", cal_f_theta, "F(theta) for conditional variants");

  ChartFlags arl_chart;
  sns::cli::ArlOptions arl_opts;
  std::string arl_stream = "normal";
  std::string arl_dist = "normal";
  std::string arl_variant = "individual";
  std::optional<std::size_t> arl_cap;
  auto* arl = app.add_subcommand("arl", "Estimate the average run length of a chart");
  add_chart_flags(arl, arl_chart, true);
  arl->add_option("--replications", arl_opts.replications, "Monte-Carlo replications");
  arl->add_option("--cap", arl_cap, "Run-length truncation cap");
  arl->add_option("--seed", arl_opts.seed, "Master seed");
  arl->add_option("--threads", arl_opts.threads, "Worker threads (0 = all cores)");
  arl->add_option("--stream", arl_stream, "normal|sns");
  arl->add_option("--distribution", arl_dist, "Raw distribution for --stream sns");
  arl->add_option("--variant", arl_variant, "Scorer variant for --stream sns");
  arl->add_option("--f-theta", arl_opts.model.f_theta, "F(theta) for conditional variants");
  arl->add_flag("--compare", arl_opts.compare, "Report exact-normal and SNS estimates side by side");
  arl->add_option("--shift-at", arl_opts.model.change_point, "Inject a change after this observation");
  arl->add_option("--shift", arl_opts.model.shift, "Mean shift added after the change");
  arl->add_option("--scale", arl_opts.model.scale, "Scale factor applied after the change");

  int table_digits = 6;
  auto* table = app.add_subcommand("table1", "Exact standard deviations of scores and matching b values");
  table->add_option("--digits", table_digits, "Decimals in the output");

  std::string study = "ecdf";
  sns::cli::EcdfOptions ecdf_opts;
  sns::cli::PathOptions path_opts;
  std::string study_dist = "normal";
  std::uint64_t study_seed = 1;
  auto* dist = app.add_subcommand("dist-study", "Finite-sample distribution studies of the scores");
  dist->add_option("--study", study, "ecdf|path");
  dist->add_option("--n", ecdf_opts.n, "Sequence length (ecdf)");
  dist->add_option("--replications", ecdf_opts.replications, "Replications (ecdf)");
  dist->add_option("--checkpoints", path_opts.checkpoints, "Checkpoints (path)")->delimiter(',');
  dist->add_option("--distribution", study_dist, "Raw distribution");
  dist->add_option("--seed", study_seed, "Seed");

  sns::cli::BenchOptions bench_opts;
  std::vector<std::string> bench_sizes{"1e3", "1e4"};
  auto* bench = app.add_subcommand("bench", "Per-evaluation cost of SNS against re-ranking baselines");
  bench->add_option("--methods", bench_opts.methods,
                    "sns,sns-cumulative,sns-window,sns-window-cumulative,lepage,mw")
      ->delimiter(',');
  bench->add_option("--n", bench_sizes, "Stream lengths, e.g. 1e3,1e4")->delimiter(',');
  bench->add_option("--repeats", bench_opts.repeats, "Timed repeats (median reported)");
  bench->add_option("--seed", bench_opts.seed, "Seed");
  bench->add_option("--window", bench_opts.window, "Window for the windowed SNS methods");

  for (CLI::App* sub : app.get_subcommands({})) sub->set_help_flag("--help", "Print this help message and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*score) return run_stream(score_flags, nullptr, "");
    if (*chart) return run_stream(chart_score_flags, &chart_flags, plot);
    if (*calibrate) {
      sns::cli::CalibrateOptions o;
      o.target.chart = to_chart(cal_chart, cal_chart.m);
      o.target.target_arl0 = target_arl;
      o.target.tolerance = tolerance;
      o.target.replications = cal_reps;
      if (cal_stream == "sns") {
        o.target.model = sns::StreamModel::sns(sns::parse_distribution(cal_dist), sns::parse_variant(cal_variant));
        o.target.model.batch_size = cal_chart.m;
        o.target.model.f_theta = cal_f_theta;
      } else if (cal_stream != "normal") {
        throw sns::cli::ConfigError("--stream must be normal or sns");
      }
      o.seed = cal_seed;
      o.threads = cal_threads;
      sns::cli::write_calibration(std::cout, o);
      return 0;
    }
    if (*arl) {
      arl_opts.chart = to_chart(arl_chart, arl_chart.m);
      const double f_theta = arl_opts.model.f_theta;
      const std::size_t change = arl_opts.model.change_point;
      const double shift = arl_opts.model.shift;
      const double scale = arl_opts.model.scale;
      if (arl_stream == "sns" || arl_opts.compare) {
        arl_opts.model = sns::StreamModel::sns(sns::parse_distribution(arl_dist), sns::parse_variant(arl_variant));
      } else if (arl_stream != "normal") {
        throw sns::cli::ConfigError("--stream must be normal or sns");
      }
      arl_opts.model.batch_size = arl_chart.m;
      arl_opts.model.f_theta = f_theta;
      arl_opts.model.change_point = change;
      arl_opts.model.shift = shift;
      arl_opts.model.scale = scale;
      arl_opts.cap = arl_cap;
      sns::cli::write_arl(std::cout, arl_opts);
      return 0;
    }
    if (*table) {
      sns::cli::write_table1(std::cout, table_digits);
      return 0;
    }
    if (*dist) {
      if (study == "ecdf") {
        ecdf_opts.seed = study_seed;
        ecdf_opts.distribution = sns::parse_distribution(study_dist);
        sns::cli::write_ecdf_study(std::cout, ecdf_opts);
      } else if (study == "path") {
        path_opts.seed = study_seed;
        path_opts.distribution = sns::parse_distribution(study_dist);
        sns::cli::write_path_study(std::cout, path_opts);
      } else {
        throw sns::cli::ConfigError("--study must be ecdf or path");
      }
      return 0;
    }
    if (*bench) {
      bench_opts.sizes.clear();
      for (const std::string& s : bench_sizes) bench_opts.sizes.push_back(sns::cli::parse_size(s));
      sns::cli::write_bench(std::cout, bench_opts);
      return 0;
    }
  } catch (const sns::cli::DataError& e) {
    std::cout.flush();
    std::cerr << "sns: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "sns: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "sns: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
