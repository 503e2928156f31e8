#include "commands.hpp"

#include <fstream>
#include <ostream>

#include "syspredict/csv.hpp"
#include "syspredict/error.hpp"
#include "syspredict/qr.hpp"

namespace syspredict::cli {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::kConfig, msg); }

void require_model(const RunConfig& c, const char* command) {
  if (c.structures.empty()) fail(std::string(command) + " needs 'structures'");
  if (!c.kind) fail(std::string(command) + " needs 'case'");
}

ConditionalPredictor predictor(const RunConfig& c) {
  return make_predictor(*c.kind, c.structures, *c.copula, *c.marginal);
}

}  // namespace

void apply(RunConfig& c, const Overrides& o) {
  if (o.seed) {
    c.seed = *o.seed;
    c.raw["seed"] = *o.seed;
  }
  if (o.size) {
    c.size = *o.size;
    c.raw["size"] = *o.size;
  }
  if (o.input) {
    c.input = *o.input;
    c.raw["input"] = *o.input;
  }
}

void cmd_curves(const RunConfig& c, std::ostream& out) {
  require_model(c, "curves");
  if (c.grid.empty()) fail("curves needs a non-empty 'grid'");
  const bool three = *c.kind == PredictionCase::kIII;
  if (three && !c.t1) fail("case III curves need 't1' (the grid runs over t2)");
  std::vector<Condition> grid;
  for (double g : c.grid) {
    grid.push_back(three ? Condition{*c.t1, g} : Condition{g, std::nullopt});
  }
  const ConditionalPredictor p = predictor(c);
  csv::write_curves(out, prediction_curves(p, grid, c.band));
}

void cmd_predict(const RunConfig& c, std::ostream& out) {
  require_model(c, "predict");
  if (!c.t1) fail("predict needs 't1'");
  Condition at{*c.t1, std::nullopt};
  if (*c.kind == PredictionCase::kIII) {
    if (!c.t2) fail("case III predict needs 't2'");
    at.second = *c.t2;
  }
  const std::vector<double> ws = c.w.empty() ? std::vector<double>{0.5} : c.w;
  for (double w : ws) {
    if (!(w > 0.0 && w < 1.0)) {
      throw Error(ErrorCode::kOutOfRange, "w must lie in (0,1), got " + csv::format(w));
    }
  }
  const ConditionalPredictor p = predictor(c);
  const std::vector<std::string> header{"quantity", "level", "value"};
  csv::write_row(out, header);
  auto row = [&](const char* what, const std::string& level, double v) {
    const std::vector<std::string> f{what, level, csv::format(v)};
    csv::write_row(out, f);
  };
  for (double w : ws) row("quantile", csv::format(w), p.quantile(w, at));
  row("mean", "", p.mean(at));
  for (double level : c.levels) {
    const Interval b = p.band(at, c.band, level);
    row("lower", csv::format(level), b.lower);
    row("upper", csv::format(level), b.upper);
  }
}

void cmd_simulate(const RunConfig& c, std::ostream& out) {
  if (c.structures.empty()) fail("simulate needs 'structures'");
  const SampleSet s = simulate(c.structures, *c.copula, *c.marginal, c.size, c.seed);
  csv::write_samples(out, s);
}

void cmd_coverage(const RunConfig& c, std::ostream& out) {
  std::vector<CoverageReport> reports;
  for (int k : c.coverage_k) {
    CoverageOptions o = c.coverage;
    o.k = k;
    o.seed = c.seed;
    reports.push_back(coverage_experiment(o));
  }
  csv::write_coverage(out, reports);
}

void cmd_fitqr(const RunConfig& c, std::ostream& out) {
  if (c.input.empty()) fail("fitqr needs an input CSV ('input' or --input)");
  if (c.taus.empty() && !c.ols) fail("fitqr needs 'taus' and/or \"ols\": true");
  std::ifstream in(c.input, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + c.input + "'");
  const csv::Table table = csv::parse(in);
  const std::size_t xc = table.column(c.x_column);
  const std::size_t yc = table.column(c.y_column);
  std::vector<Observation> data;
  data.reserve(table.rows.size());
  for (const auto& r : table.rows) data.push_back({csv::to_double(r[xc]), csv::to_double(r[yc])});

  std::vector<FittedLine> lines;
  for (double tau : c.taus) lines.push_back(fit_lqr(data, tau));
  if (c.ols) lines.push_back(fit_ols(data));
  csv::write_lines(out, lines);
}

std::string metadata(const std::string& command, const RunConfig& c) {
  nlohmann::json m;
  m["command"] = command;
  m["seed"] = c.seed;
  m["config"] = c.raw;
  return m.dump(2) + "\n";
}

}  // namespace syspredict::cli
