#include <cmath>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "tricav/io.hpp"

using namespace tricav;
using nlohmann::json;

namespace {

Errc config_code(const json& doc) {
  try {
    parse_config(doc);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("config was accepted");
  return Errc::InvalidArgument;
}

json sweep_doc() {
  return json::parse(R"({
    "schema": 1,
    "kappa": 1.0,
    "params": {"delta_a": 1.0, "J": 0.5, "g": 0.5, "omega": 0.5, "gamma": 0.1},
    "n_max": 1,
    "methods": ["analytic", "numeric"],
    "observables": ["fill", "edge_c3"],
    "axes": [{"name": "delta", "min": -1.0, "max": 1.0, "points": 5}],
    "family": {"name": "g", "values": [0.3, 0.6]},
    "numeric_state": "mixed",
    "output": {"path": "out/run.csv", "format": "json"}
  })");
}

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig c = parse_config(sweep_doc());
  CHECK(c.sweep.base.delta_a == 1.0);
  CHECK(c.sweep.base.omega1 == 0.5);
  CHECK(c.sweep.base.omega2 == 0.5);
  CHECK(c.sweep.base.kappa1 == 1.0);
  CHECK(c.sweep.methods.size() == 2);
  CHECK(c.sweep.observables == std::vector<Observable>{Observable::Fill, Observable::EdgeC3});
  CHECK(c.sweep.axes.size() == 1);
  CHECK(c.sweep.axes[0].points == 5);
  CHECK(c.sweep.family->values == std::vector<double>{0.3, 0.6});
  CHECK(c.sweep.numeric_state == NumericState::Mixed);
  CHECK(c.out == "out/run.csv");
  CHECK(c.format == OutputFormat::Json);

  const RunConfig minimal = parse_config(json{{"schema", 1}});
  CHECK(minimal.kappa == 1.0);
  CHECK(minimal.sweep.base == SystemParams{});
  CHECK(minimal.sweep.numeric_state == NumericState::DominantPure);
}

TEST_CASE("config parsing is strict") {
  CHECK(config_code(json::object()) == Errc::Config);
  CHECK(config_code(json{{"schema", 2}}) == Errc::Config);
  CHECK(config_code(json{{"schema", "1"}}) == Errc::Config);

  json doc = sweep_doc();
  doc["n_maxx"] = 2;
  CHECK(config_code(doc) == Errc::Config);

  doc = sweep_doc();
  doc["params"]["gama"] = 0.1;
  CHECK(config_code(doc) == Errc::Config);

  doc = sweep_doc();
  doc["axes"][0]["step"] = 0.1;
  CHECK(config_code(doc) == Errc::Config);

  doc = sweep_doc();
  doc["axes"][0]["points"] = 5.5;
  CHECK(config_code(doc) == Errc::Config);

  doc = sweep_doc();
  doc["params"]["omega1"] = 0.2;
  CHECK(config_code(doc) == Errc::Config);

  doc = sweep_doc();
  doc["params"]["gamma"] = -0.1;
  CHECK(config_code(doc) == Errc::Config);

  doc = sweep_doc();
  doc["kappa"] = 0.0;
  CHECK(config_code(doc) == Errc::Config);

  doc = sweep_doc();
  doc["methods"] = {"qutip"};
  CHECK(config_code(doc) == Errc::Config);

  doc = sweep_doc();
  doc["output"]["format"] = "xlsx";
  CHECK(config_code(doc) == Errc::Config);

  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), Error);
}

TEST_CASE("resolved config parses back to the same run") {
  const RunConfig c = parse_config(sweep_doc());
  const RunConfig back = parse_config(config_to_json(c));
  CHECK(back.sweep.base == c.sweep.base);
  CHECK(back.sweep.methods == c.sweep.methods);
  CHECK(back.sweep.observables == c.sweep.observables);
  CHECK(back.sweep.axes[0].name == "delta");
  CHECK(back.sweep.axes[0].max == 1.0);
  CHECK(back.sweep.family->values == c.sweep.family->values);
  CHECK(back.sweep.numeric_state == c.sweep.numeric_state);
  CHECK(back.out == c.out);
  CHECK(back.format == c.format);
}

TEST_CASE("CSV round trip is exact") {
  ResultTable t;
  t.columns = {"x", "y_analytic"};
  t.rows = {{1.0 / 3.0, 0.1},
            {-2.5e-300, std::numeric_limits<double>::denorm_min()},
            {std::numeric_limits<double>::max(), 0.0},
            {M_PI, -std::exp(1.0)}};
  std::stringstream ss;
  write_csv(ss, t);
  const std::string text = ss.str();
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.substr(0, text.find('\n')) == "x,y_analytic");
  CHECK(text.find("0.33333333333333331") != std::string::npos);

  const ParsedCsv back = read_csv(ss);
  CHECK(back.columns == t.columns);
  REQUIRE(back.rows.size() == t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) CHECK(back.rows[i] == t.rows[i]);
}

TEST_CASE("sweep tables") {
  RunConfig c = parse_config(sweep_doc());
  c.sweep.family.reset();
  c.sweep.numeric_state = NumericState::DominantPure;
  c.kappa = 2.0;
  const SweepResult r = run_sweep(c.sweep);
  const ResultTable t = sweep_table(r, c);
  CHECK(t.columns ==
        std::vector<std::string>{"delta", "fill_analytic", "edge_c3_analytic", "fill_numeric", "edge_c3_numeric"});
  REQUIRE(t.rows.size() == 5);
  CHECK(t.rows.front()[0] == -2.0);
  CHECK(t.meta["config"]["kappa"] == 2.0);
  CHECK(t.meta["version"] == std::string(kToolVersion));
  for (const auto& row : t.rows) {
    CHECK(row.size() == t.columns.size());
    for (double v : row) CHECK(std::isfinite(v));
  }
  CHECK(t.meta["columns"][3]["method"] == "numeric");

  const json j = table_to_json(t);
  const json reparsed = json::parse(j.dump());
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    for (std::size_t k = 0; k < t.rows[i].size(); ++k) CHECK(reparsed["rows"][i][k].get<double>() == t.rows[i][k]);
}

TEST_CASE("failed points move to the errors section") {
  RunConfig c;
  c.sweep.base.kappa1 = c.sweep.base.kappa2 = 0.0;
  c.sweep.base.delta_a = 1.0;
  c.sweep.base.g = 1.0;
  c.sweep.base.omega1 = 0.1;
  c.sweep.methods = {Method::Analytic};
  c.sweep.axes = {{"delta", 0.5, 1.0, 2}};
  const ResultTable t = sweep_table(run_sweep(c.sweep), c);
  REQUIRE(t.rows.size() == 1);
  REQUIRE(t.errors.size() == 1);
  CHECK(t.errors[0].coords == std::vector<double>{1.0});
  CHECK(t.errors[0].code == "near-singular");
  std::stringstream ss;
  write_csv(ss, t);
  CHECK(ss.str().find("nan") == std::string::npos);
  CHECK(table_to_json(t)["errors"][0]["method"] == "analytic");
}

TEST_CASE("per-curve paths") {
  CHECK(with_suffix("out/fig6a.csv", "_g0.3") == "out/fig6a_g0.3.csv");
  CHECK(with_suffix("fig6a.json", "") == "fig6a.json");
  CHECK(with_suffix("run", "_J0.6") == "run_J0.6");
}
