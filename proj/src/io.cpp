#include "tricav/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace tricav {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(Errc::Config, "config: " + msg); }

void check_keys(const json& obj, const std::string& where, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) config_error(where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      config_error("unknown key '" + key + "' in " + where);
  }
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) config_error("'" + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) config_error("'" + key + "' must be finite");
  return x;
}

int integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) config_error("'" + key + "' must be an integer");
  return v.get<int>();
}

std::string string(const json& v, const std::string& key) {
  if (!v.is_string()) config_error("'" + key + "' must be a string");
  return v.get<std::string>();
}

template <typename F>
void each_string(const json& v, const std::string& key, F&& f) {
  if (!v.is_array() || v.empty()) config_error("'" + key + "' must be a non-empty array of strings");
  for (const json& item : v) f(string(item, key));
}

SystemParams parse_params(const json& obj) {
  if (!obj.is_object()) config_error("'params' must be an object");
  SystemParams p;
  const std::pair<std::string_view, std::array<std::string_view, 2>> aliases[] = {
      {"delta", {"delta1", "delta2"}}, {"omega", {"omega1", "omega2"}}, {"kappa", {"kappa1", "kappa2"}}};
  for (const auto& [alias, parts] : aliases) {
    if (obj.contains(std::string(alias)) &&
        (obj.contains(std::string(parts[0])) || obj.contains(std::string(parts[1])))) {
      config_error("'params' sets both '" + std::string(alias) + "' and one of its components");
    }
  }
  for (const auto& [key, value] : obj.items()) {
    if (!is_param_name(key)) config_error("unknown key '" + key + "' in params");
    set_param(p, key, number(value, key));
  }
  try {
    p.validate();
  } catch (const Error& e) {
    config_error(e.what());
  }
  return p;
}

std::string error_tag(const MethodRecord& r) { return std::string(errc_name(*r.error)); }

json column_tags(const SweepSpec& spec, const std::vector<std::string>& axis_columns) {
  json tags = json::array();
  for (const std::string& a : axis_columns) tags.push_back({{"name", a}, {"role", "axis"}});
  for (Method m : spec.methods) {
    for (Observable o : spec.observables) {
      tags.push_back({{"name", std::string(observable_name(o)) + "_" + std::string(method_name(m))},
                      {"observable", observable_name(o)},
                      {"method", method_name(m)}});
    }
  }
  return tags;
}

json method_notes(const SweepSpec& spec) {
  json notes = json::object();
  for (Method m : spec.methods) {
    if (m == Method::Analytic) {
      notes["analytic"] = "weak-drive single-excitation state from the dense 3x3 solve; edges from the pure-state formula";
    } else {
      notes["numeric"] = "Lindblad steady state at n_max=" + std::to_string(spec.n_max) +
                         ", projected to the {0,1} Fock block; purity-based edges on the " +
                         (spec.numeric_state == NumericState::Mixed ? "full mixed state"
                                                                    : "dominant pure component") +
                         "; jc_concurrence is Wootters on the (resonator 1, atom) state";
    }
  }
  return notes;
}

template <typename Get>
json min_diagnostic(const SweepResult& r, Get get) {
  std::optional<double> best;
  for (const GridPoint& pt : r.points)
    for (const MethodRecord& rec : pt.records)
      if (auto v = get(rec); v && std::isfinite(*v)) best = best ? std::min(*best, *v) : *v;
  return best ? json(*best) : json(nullptr);
}

template <typename Get>
json max_diagnostic(const SweepResult& r, Get get) {
  std::optional<double> best;
  for (const GridPoint& pt : r.points)
    for (const MethodRecord& rec : pt.records)
      if (auto v = get(rec); v && std::isfinite(*v)) best = best ? std::max(*best, *v) : *v;
  return best ? json(*best) : json(nullptr);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string_view format_name(OutputFormat f) { return f == OutputFormat::Json ? "json" : "csv"; }

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw Error(Errc::Config, "unknown output format '" + std::string(name) + "'");
}

RunConfig parse_config(const json& doc) {
  check_keys(doc, "config",
             {"schema", "name", "kappa", "params", "n_max", "methods", "observables", "numeric_state", "axes",
              "family", "output"});
  if (!doc.contains("schema")) config_error("missing required key 'schema'");
  if (integer(doc["schema"], "schema") != kSchemaVersion) {
    config_error("unsupported schema " + doc["schema"].dump() + " (expected " + std::to_string(kSchemaVersion) + ")");
  }

  RunConfig c;
  c.sweep.methods = {Method::Analytic, Method::Numeric};
  c.sweep.observables = {Observable::Fill};
  if (doc.contains("name")) c.sweep.name = string(doc["name"], "name");
  if (doc.contains("kappa")) {
    c.kappa = number(doc["kappa"], "kappa");
    if (!(c.kappa > 0)) config_error("'kappa' must be positive");
  }
  if (doc.contains("params")) c.sweep.base = parse_params(doc["params"]);
  if (doc.contains("n_max")) {
    c.sweep.n_max = integer(doc["n_max"], "n_max");
    if (c.sweep.n_max < 1) config_error("'n_max' must be at least 1");
  }
  try {
    if (doc.contains("methods")) {
      c.sweep.methods.clear();
      each_string(doc["methods"], "methods", [&](const std::string& s) { c.sweep.methods.push_back(parse_method(s)); });
    }
    if (doc.contains("observables")) {
      c.sweep.observables.clear();
      each_string(doc["observables"], "observables",
                  [&](const std::string& s) { c.sweep.observables.push_back(parse_observable(s)); });
    }
    if (doc.contains("numeric_state"))
      c.sweep.numeric_state = parse_numeric_state(string(doc["numeric_state"], "numeric_state"));
  } catch (const Error& e) {
    if (e.code() == Errc::Config) throw;
    config_error(e.what());
  }
  if (doc.contains("axes")) {
    const json& axes = doc["axes"];
    if (!axes.is_array()) config_error("'axes' must be an array");
    for (const json& a : axes) {
      check_keys(a, "axes entry", {"name", "min", "max", "points"});
      for (auto key : {"name", "min", "max", "points"})
        if (!a.contains(key)) config_error("axes entry is missing '" + std::string(key) + "'");
      c.sweep.axes.push_back({string(a["name"], "name"), number(a["min"], "min"), number(a["max"], "max"),
                              integer(a["points"], "points")});
    }
  }
  if (doc.contains("family")) {
    const json& f = doc["family"];
    check_keys(f, "family", {"name", "values"});
    if (!f.contains("name") || !f.contains("values")) config_error("family needs 'name' and 'values'");
    Family fam{string(f["name"], "name"), {}};
    if (!f["values"].is_array()) config_error("'values' must be an array");
    for (const json& v : f["values"]) fam.values.push_back(number(v, "values"));
    c.sweep.family = std::move(fam);
  }
  if (doc.contains("output")) {
    const json& o = doc["output"];
    check_keys(o, "output", {"path", "format"});
    if (o.contains("path")) c.out = string(o["path"], "path");
    if (o.contains("format")) c.format = parse_format(string(o["format"], "format"));
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Config, "config: cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::Config, "config: " + path + ": " + e.what());
  }
  return parse_config(doc);
}

json config_to_json(const RunConfig& config) {
  const SweepSpec& s = config.sweep;
  json params = json::object();
  for (std::size_t k = 0; k < 10; ++k) params[std::string(kParamNames[k])] = get_param(s.base, kParamNames[k]);
  json methods = json::array(), observables = json::array(), axes = json::array();
  for (Method m : s.methods) methods.push_back(method_name(m));
  for (Observable o : s.observables) observables.push_back(observable_name(o));
  for (const Axis& a : s.axes) axes.push_back({{"name", a.name}, {"min", a.min}, {"max", a.max}, {"points", a.points}});
  json doc = {{"schema", kSchemaVersion},
              {"kappa", config.kappa},
              {"params", params},
              {"n_max", s.n_max},
              {"methods", methods},
              {"observables", observables},
              {"numeric_state", numeric_state_name(s.numeric_state)},
              {"axes", axes}};
  if (!s.name.empty()) doc["name"] = s.name;
  if (s.family) doc["family"] = {{"name", s.family->name}, {"values", s.family->values}};
  json output = {{"format", format_name(config.format)}};
  if (config.out) output["path"] = *config.out;
  doc["output"] = output;
  return doc;
}

ResultTable sweep_table(const SweepResult& result, const RunConfig& config) {
  const SweepSpec& spec = result.spec;
  ResultTable t;
  std::vector<std::string> axis_columns;
  for (const Axis& a : spec.axes) axis_columns.push_back(a.name);
  t.columns = axis_columns;
  for (Method m : spec.methods)
    for (Observable o : spec.observables)
      t.columns.push_back(std::string(observable_name(o)) + "_" + std::string(method_name(m)));

  for (const GridPoint& pt : result.points) {
    std::vector<double> coords;
    for (double c : pt.coords) coords.push_back(c * config.kappa);
    bool ok = true;
    for (const MethodRecord& r : pt.records) {
      if (r.ok()) continue;
      ok = false;
      t.errors.push_back({coords, std::string(method_name(r.method)), error_tag(r), r.message});
    }
    if (!ok) continue;
    std::vector<double> row = coords;
    for (const MethodRecord& r : pt.records) row.insert(row.end(), r.values.begin(), r.values.end());
    t.rows.push_back(std::move(row));
  }

  RunConfig resolved = config;
  resolved.sweep = spec;
  t.meta = {{"tool", "tricav"},
            {"version", kToolVersion},
            {"config", config_to_json(resolved)},
            {"columns", column_tags(spec, axis_columns)},
            {"methods", method_notes(spec)},
            {"units", "axis values in units of kappa times the 'kappa' scale; observables dimensionless"},
            {"diagnostics",
             {{"min_det_m_abs", min_diagnostic(result, [](const MethodRecord& r) { return r.det_m_abs; })},
              {"max_quoted_discrepancy", max_diagnostic(result, [](const MethodRecord& r) { return r.quoted_discrepancy; })},
              {"min_spectral_gap", min_diagnostic(result, [](const MethodRecord& r) { return r.spectral_gap; })},
              {"min_projection_weight",
               min_diagnostic(result, [](const MethodRecord& r) { return r.projection_weight; })}}},
            {"points", result.points.size()},
            {"failed_points", t.errors.size()}};
  return t;
}

ResultTable steady_table(const SweepSpec& spec, const RunConfig& config) {
  SweepSpec full = spec;
  full.observables = {Observable::PhotonNumber1, Observable::PhotonNumber2, Observable::AtomExcitation,
                      Observable::EdgeC1,        Observable::EdgeC2,        Observable::EdgeC3,
                      Observable::Fill};
  full.axes.clear();
  full.family.reset();

  ResultTable t;
  std::vector<double> row;
  json quoted = nullptr;
  std::vector<Method> methods = {Method::Numeric};
  if (std::find(spec.methods.begin(), spec.methods.end(), Method::Analytic) != spec.methods.end())
    methods.push_back(Method::Analytic);
  for (Method m : methods) {
    for (Observable o : full.observables)
      t.columns.push_back(std::string(observable_name(o)) + "_" + std::string(method_name(m)));
    if (m == Method::Numeric) t.columns.push_back("spectral_gap_numeric");
    const MethodRecord r = evaluate_point(full, full.base, m);
    if (!r.ok()) {
      t.errors.push_back({{}, std::string(method_name(m)), error_tag(r), r.message});
      continue;
    }
    row.insert(row.end(), r.values.begin(), r.values.end());
    if (m == Method::Numeric) row.push_back(*r.spectral_gap);
    if (r.quoted_discrepancy) quoted = *r.quoted_discrepancy;
  }
  if (t.errors.empty()) t.rows.push_back(std::move(row));

  full.methods = methods;
  RunConfig resolved = config;
  resolved.sweep = full;
  json tags = column_tags(full, {});
  tags.push_back({{"name", "spectral_gap_numeric"}, {"method", "numeric"}, {"observable", "spectral_gap"}});
  t.meta = {{"tool", "tricav"},
            {"version", kToolVersion},
            {"config", config_to_json(resolved)},
            {"columns", tags},
            {"methods", method_notes(full)},
            {"diagnostics", {{"max_quoted_discrepancy", quoted}}},
            {"failed_points", t.errors.size()}};
  return t;
}

void write_csv(std::ostream& os, const ResultTable& table) {
  for (std::size_t k = 0; k < table.columns.size(); ++k) os << (k ? "," : "") << table.columns[k];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << format_double(row[k]);
    os << '\n';
  }
}

json table_to_json(const ResultTable& table) {
  json errors = json::array();
  for (const ErrorEntry& e : table.errors)
    errors.push_back({{"coords", e.coords}, {"method", e.method}, {"code", e.code}, {"message", e.message}});
  return {{"meta", table.meta}, {"columns", table.columns}, {"rows", table.rows}, {"errors", errors}};
}

ParsedCsv read_csv(std::istream& is) {
  ParsedCsv out;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  if (!std::getline(is, line)) return out;
  out.columns = split(line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    for (const std::string& cell : split(line)) {
      // strtod rather than stod: subnormals set ERANGE but parse exactly.
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      row.push_back(v);
      if (cell.empty() || end != cell.c_str() + cell.size() || !std::isfinite(v)) throw Error(Errc::InvalidArgument, "read_csv: bad number '" + cell + "'");
    }
    if (row.size() != out.columns.size()) throw Error(Errc::InvalidArgument, "read_csv: ragged row");
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
  const std::filesystem::path p(path);
  std::filesystem::path out = p.parent_path() / (p.stem().string() + suffix + p.extension().string());
  return out.string();
}

std::vector<std::string> write_table(const ResultTable& table, const std::string& path, OutputFormat format) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  auto open = [](const std::string& file) {
    std::ofstream os(file, std::ios::binary);
    if (!os) throw Error(Errc::Config, "cannot write '" + file + "'");
    return os;
  };
  if (format == OutputFormat::Json) {
    std::ofstream os = open(path);
    os << table_to_json(table).dump(2) << '\n';
    return {path};
  }
  {
    std::ofstream os = open(path);
    write_csv(os, table);
  }
  const std::string meta_path = (p.parent_path() / (p.stem().string() + ".meta.json")).string();
  json meta = table.meta;
  meta["errors"] = table_to_json(table)["errors"];
  std::ofstream ms = open(meta_path);
  ms << meta.dump(2) << '\n';
  return {path, meta_path};
}

}  // namespace tricav
