#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "funcerr/report.hpp"
#include "report_internal.hpp"

namespace funcerr::report {

using ojson = nlohmann::ordered_json;

namespace {

// Non-finite values are spelled out as strings so that the document stays valid JSON.
ojson num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "NaN";
  return v > 0 ? "Infinity" : "-Infinity";
}

ojson opt_num(const std::optional<double>& v) { return v ? num(*v) : ojson(nullptr); }

double read_num(const ojson& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "NaN") return std::numeric_limits<double>::quiet_NaN();
    if (s == "Infinity") return std::numeric_limits<double>::infinity();
    if (s == "-Infinity") return -std::numeric_limits<double>::infinity();
  }
  throw ConfigError("report: '" + what + "' is not a number");
}

std::optional<double> read_opt(const ojson& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return read_num(j[key], key);
}

ojson named(const std::vector<NamedValue>& values) {
  ojson arr = ojson::array();
  for (const auto& v : values) arr.push_back({{"name", v.name}, {"value", num(v.value)}});
  return arr;
}

std::vector<NamedValue> read_named(const ojson& arr) {
  std::vector<NamedValue> out;
  for (const auto& v : arr) out.push_back({v.at("name").get<std::string>(), read_num(v.at("value"), "value")});
  return out;
}

ojson record_json(const Record& r) {
  ojson j;
  j["case"] = r.case_name;
  j["kind"] = mms::to_string(r.kind);
  if (r.approximation) {
    const auto& a = *r.approximation;
    j["approximation"] = {{"name", a.name},
                          {"level", mms::to_string(a.level)},
                          {"epsilon", num(a.epsilon)},
                          {"seed", a.seed.value_or(0)}};
  } else {
    j["approximation"] = nullptr;
  }
  j["estimator"] = r.estimator;
  j["passed"] = r.passed;
  j["error"] = r.error ? ojson(*r.error) : ojson(nullptr);
  if (r.equality) {
    const auto& e = *r.equality;
    j["equality"] = {{"identity", e.identity},         {"lhs", named(e.lhs_components)},
                     {"rhs", named(e.rhs_components)}, {"lhs_total", num(e.lhs_total)},
                     {"rhs_total", num(e.rhs_total)},  {"rel_residual", num(e.rel_residual)},
                     {"extras", named(e.extras)}};
  } else {
    j["equality"] = nullptr;
  }
  if (r.bound) {
    const auto& b = *r.bound;
    j["bound"] = {{"estimate", b.estimate},
                  {"lower_bounds", named(b.lower_bounds)},
                  {"true_components", named(b.true_components)},
                  {"true_error", num(b.true_error)},
                  {"lower_bound", num(b.lower_bound)},
                  {"upper_bound", num(b.upper_bound)},
                  {"gamma", opt_num(b.gamma)},
                  {"efficiency_upper", opt_num(b.efficiency_upper)},
                  {"efficiency_lower", opt_num(b.efficiency_lower)},
                  {"extras", named(b.extras)}};
  } else {
    j["bound"] = nullptr;
  }
  if (r.wall_time) j["wall_time_s"] = num(*r.wall_time);
  return j;
}

Record record_from(const ojson& j) {
  Record r;
  r.case_name = j.at("case").get<std::string>();
  r.kind = mms::problem_kind_from_string(j.at("kind").get<std::string>());
  if (!j.at("approximation").is_null()) {
    const auto& a = j["approximation"];
    ApproximationSpec s;
    s.name = a.at("name").get<std::string>();
    s.level = mms::conformity_level_from_string(a.at("level").get<std::string>());
    s.epsilon = read_num(a.at("epsilon"), "epsilon");
    s.seed = a.at("seed").get<std::uint64_t>();
    r.approximation = s;
  }
  r.estimator = j.at("estimator").get<std::string>();
  r.passed = j.at("passed").get<bool>();
  if (!j.at("error").is_null()) r.error = j["error"].get<std::string>();
  if (!j.at("equality").is_null()) {
    const auto& e = j["equality"];
    EqualityReport q;
    q.identity = e.at("identity").get<std::string>();
    q.lhs_components = read_named(e.at("lhs"));
    q.rhs_components = read_named(e.at("rhs"));
    q.lhs_total = read_num(e.at("lhs_total"), "lhs_total");
    q.rhs_total = read_num(e.at("rhs_total"), "rhs_total");
    q.rel_residual = read_num(e.at("rel_residual"), "rel_residual");
    q.extras = read_named(e.at("extras"));
    r.equality = std::move(q);
  }
  if (!j.at("bound").is_null()) {
    const auto& b = j["bound"];
    BoundReport q;
    q.estimate = b.at("estimate").get<std::string>();
    q.lower_bounds = read_named(b.at("lower_bounds"));
    q.true_components = read_named(b.at("true_components"));
    q.true_error = read_num(b.at("true_error"), "true_error");
    q.lower_bound = read_num(b.at("lower_bound"), "lower_bound");
    q.upper_bound = read_num(b.at("upper_bound"), "upper_bound");
    q.gamma = read_opt(b, "gamma");
    q.efficiency_upper = read_opt(b, "efficiency_upper");
    q.efficiency_lower = read_opt(b, "efficiency_lower");
    q.extras = read_named(b.at("extras"));
    r.bound = std::move(q);
  }
  r.wall_time = read_opt(j, "wall_time_s");
  return r;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string csv_num(const std::optional<double>& v) { return v ? detail::json_number_text(*v) : ""; }

}  // namespace

std::string to_json(const RunReport& report) {
  ojson doc;
  doc["schema_version"] = report.schema_version;
  doc["tolerances"] = {{"equality_rel", num(report.tolerances.equality_rel)},
                       {"bound_slack", num(report.tolerances.bound_slack)}};
  doc["summary"] = {{"records", report.records.size()},
                    {"failures", report.failures()},
                    {"errors", report.errors()},
                    {"exit_code", report.exit_code()}};
  doc["records"] = ojson::array();
  for (const auto& r : report.records) doc["records"].push_back(record_json(r));
  return doc.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
  ojson doc;
  try {
    doc = ojson::parse(text);
  } catch (const ojson::parse_error& e) {
    throw ConfigError(std::string("report: ") + e.what());
  }
  try {
    RunReport r;
    r.schema_version = doc.at("schema_version").get<int>();
    if (r.schema_version != kSchemaVersion)
      throw ConfigError("report: unsupported schema_version " + std::to_string(r.schema_version));
    r.tolerances.equality_rel = read_num(doc.at("tolerances").at("equality_rel"), "equality_rel");
    r.tolerances.bound_slack = read_num(doc.at("tolerances").at("bound_slack"), "bound_slack");
    for (const auto& j : doc.at("records")) r.records.push_back(record_from(j));
    return r;
  } catch (const ojson::exception& e) {
    throw ConfigError(std::string("report: ") + e.what());
  } catch (const ContractError& e) {
    throw ConfigError(std::string("report: ") + e.what());
  }
}

std::string to_csv(const RunReport& report) {
  std::ostringstream out;
  out << "case,kind,approximation,level,epsilon,seed,estimator,name,type,passed,error,"
         "lhs_total,rhs_total,rel_residual,true_error,lower_bound,upper_bound,gamma,"
         "efficiency_upper,efficiency_lower,wall_time_s\n";
  for (const auto& r : report.records) {
    const auto& a = r.approximation;
    std::string name, type;
    if (r.equality) {
      name = r.equality->identity;
      type = "equality";
    } else if (r.bound) {
      name = r.bound->estimate;
      type = "bound";
    } else {
      type = "error";
    }
    out << csv_field(r.case_name) << ',' << mms::to_string(r.kind) << ',' << (a ? csv_field(a->name) : "") << ','
        << (a ? mms::to_string(a->level) : "") << ',' << (a ? csv_num(a->epsilon) : "") << ','
        << (a ? std::to_string(a->seed.value_or(0)) : "") << ',' << r.estimator << ',' << csv_field(name) << ','
        << type << ',' << (r.passed ? "true" : "false") << ',' << csv_field(r.error.value_or("")) << ',';
    if (r.equality) {
      out << csv_num(r.equality->lhs_total) << ',' << csv_num(r.equality->rhs_total) << ','
          << csv_num(r.equality->rel_residual) << ",,,,,,,";
    } else if (r.bound) {
      const auto& b = *r.bound;
      out << ",,," << csv_num(b.true_error) << ',' << csv_num(b.lower_bound) << ',' << csv_num(b.upper_bound) << ','
          << csv_num(b.gamma) << ',' << csv_num(b.efficiency_upper) << ',' << csv_num(b.efficiency_lower) << ',';
    } else {
      out << ",,,,,,,,,,";
    }
    out << csv_num(r.wall_time) << '\n';
  }
  return out.str();
}

std::string to_plotdata(const RunReport& report) {
  std::ostringstream out;
  out << "# funcerr plot data, schema " << report.schema_version << "\n";
  out << "# columns: epsilon true lower upper efficiency\n";
  std::vector<std::string> order;
  for (const auto& r : report.records)
    if (r.bound && r.approximation &&
        std::find(order.begin(), order.end(), r.bound->estimate) == order.end())
      order.push_back(r.bound->estimate);
  for (const auto& name : order) {
    out << "\n\n# estimate " << name << "\n";
    for (const auto& r : report.records) {
      if (!r.bound || !r.approximation || r.bound->estimate != name) continue;
      const auto& b = *r.bound;
      out << detail::json_number_text(r.approximation->epsilon) << ' ' << detail::json_number_text(b.true_error) << ' '
          << detail::json_number_text(b.lower_bound) << ' ' << detail::json_number_text(b.upper_bound) << ' '
          << detail::json_number_text(b.efficiency_upper.value_or(std::numeric_limits<double>::quiet_NaN())) << '\n';
    }
  }
  return out.str();
}

std::vector<std::filesystem::path> emit(const RunReport& report, const std::filesystem::path& dir,
                                        const std::vector<Format>& formats, const std::string& stem) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> written;
  for (auto f : formats) {
    std::filesystem::path path = dir / stem;
    std::string body;
    switch (f) {
      case Format::Json:
        path += ".json";
        body = to_json(report);
        break;
      case Format::Csv:
        path += ".csv";
        body = to_csv(report);
        break;
      case Format::PlotData:
        path += ".dat";
        body = to_plotdata(report);
        break;
    }
    std::ofstream out(path, std::ios::binary);
    out << body;
    out.close();
    if (!out) throw Error("cannot write '" + path.string() + "'");
    written.push_back(path);
  }
  return written;
}

}  // namespace funcerr::report
