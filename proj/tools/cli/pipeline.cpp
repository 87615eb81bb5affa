#include "cli/pipeline.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

namespace sns::cli {

DataError::DataError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

void RunConfig::validate() const {
  if (is_batched(variant) && m < 2) throw ConfigError("batched variants need --m >= 2");
  if (is_conditional(variant)) {
    if (!theta || !f_theta) throw ConfigError("conditional variants need --theta and --f-theta");
    if (!std::isfinite(*theta)) throw ConfigError("--theta must be finite");
    if (!(*f_theta > 0.0 && *f_theta < 1.0)) throw ConfigError("--f-theta must lie in (0, 1)");
  }
  if (window && *window == 0) throw ConfigError("--window must be > 0");
  if (chart) {
    if (chart->type == ChartType::cusum_variance && !is_batched(variant)) {
      throw ConfigError("cusum-var needs a batched variant");
    }
    try {
      (void)chart->make_chart();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
}

std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s(buf);
  if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool try_parse(std::string_view field, double& out) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  if (field.empty()) return false;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && ptr == field.data() + field.size();
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

bool looks_like_header(std::string_view line) {
  for (std::string_view f : split(line)) {
    double v = 0.0;
    if (!try_parse(f, v)) return true;
  }
  return false;
}

using AnyScorer = std::variant<IndividualScorer, BatchScorer, ConditionalScorer>;

AnyScorer make_scorer(const RunConfig& c) {
  switch (c.variant) {
    case ScorerVariant::individual: return IndividualScorer(c.convention, c.window);
    case ScorerVariant::batched: return BatchScorer(c.m, c.convention, c.window);
    case ScorerVariant::conditional_individual:
      return ConditionalScorer(*c.theta, *c.f_theta, 1, c.convention, c.window);
    case ScorerVariant::conditional_batched:
      return ConditionalScorer(*c.theta, *c.f_theta, c.m, c.convention, c.window);
  }
  throw ConfigError("unknown variant");
}

std::vector<ScoredValue> score_values(AnyScorer& scorer, const std::vector<double>& values) {
  return std::visit(
      [&](auto& s) -> std::vector<ScoredValue> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, IndividualScorer>) {
          return {s.score(values[0])};
        } else {
          return s.score(values);
        }
      },
      scorer);
}

Chart make_cli_chart(const RunConfig& c) {
  ChartConfig cfg = *c.chart;
  if (cfg.type != ChartType::cusum_mean) cfg.m = c.values_per_line();
  return cfg.make_chart();
}

void write_row(std::ostream& out, const ScoredValue& s, const ChartPoint* point) {
  out << s.index << ',';
  if (s.batch != 0) out << s.batch;
  out << ',';
  if (s.within != 0) out << s.within;
  out << ',' << format_fixed(s.raw) << ',' << format_fixed(s.rank) << ',' << format_fixed(s.p) << ','
      << format_fixed(s.z) << ',';
  if (point) {
    out << format_fixed(point->value) << ',' << format_fixed(point->limit) << ','
        << (point->signal ? 1 : 0);
  } else {
    out << ",,";
  }
  out << '\n';
}

}  // namespace

std::vector<double> parse_values(const std::string& line, std::size_t expected, std::size_t line_no) {
  const auto fields = split(line);
  if (fields.size() != expected) {
    throw DataError(line_no, "expected " + std::to_string(expected) + " value(s), found " +
                                 std::to_string(fields.size()));
  }
  std::vector<double> values;
  values.reserve(expected);
  for (std::string_view f : fields) {
    double v = 0.0;
    if (!try_parse(f, v)) throw DataError(line_no, "cannot parse '" + std::string(trim(f)) + "' as a number");
    if (!std::isfinite(v)) throw DataError(line_no, "non-finite value '" + std::string(trim(f)) + "'");
    values.push_back(v);
  }
  return values;
}

ChartSummary run_pipeline(std::istream& in, std::ostream& out, const RunConfig& config,
                          bool keep_path) {
  config.validate();
  AnyScorer scorer = make_scorer(config);
  std::optional<Chart> chart;
  if (config.chart) chart.emplace(make_cli_chart(config));

  ChartSummary summary;
  out << kCsvHeader << '\n';

  std::vector<double> pending;  // scores waiting for a full chart step
  std::string line;
  std::size_t line_no = 0;
  bool seen_data = false;
  bool header_checked = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (!seen_data && !header_checked && looks_like_header(line)) {
      header_checked = true;
      continue;
    }
    header_checked = true;
    seen_data = true;

    const std::vector<double> values = parse_values(line, config.values_per_line(), line_no);
    const std::vector<ScoredValue> scored = score_values(scorer, values);
    for (const ScoredValue& s : scored) {
      std::optional<ChartPoint> point;
      if (chart) {
        pending.push_back(s.z);
        if (pending.size() == chart->scores_per_step()) {
          point = chart->step(pending);
          pending.clear();
          ++summary.steps;
          if (point->signal && !summary.signal_step) {
            summary.signal_step = point->step;
            summary.signal_observation = s.index;
          }
          if (keep_path) summary.path.push_back(*point);
        }
      }
      write_row(out, s, point ? &*point : nullptr);
    }
  }
  return summary;
}

std::string summary_line(const ChartSummary& summary) {
  if (!summary.signal_step) return "# no signal after " + std::to_string(summary.steps) + " steps";
  return "# signal at step " + std::to_string(*summary.signal_step) + " (observation " +
         std::to_string(*summary.signal_observation) + ")";
}

}  // namespace sns::cli
