#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "funcerr/report.hpp"
#include "report_internal.hpp"

namespace funcerr::report {

using mms::ConformityLevel;
using mms::ProblemKind;
using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace detail {

const std::vector<EstimatorInfo>& estimator_table() {
  using K = ProblemKind;
  static const std::vector<EstimatorInfo> table{
      {"rd_isometry", {K::ReactionDiffusion}, true, false, {}},
      {"poisson_isometry", {K::Poisson}, true, false, {}},
      {"trd_isometry", {K::TimeReactionDiffusion}, true, false, {}},
      {"heat_isometry", {K::Heat}, true, false, {}},
      {"omega_identity", {K::TimeReactionDiffusion, K::Heat}, true, false, {"omega"}},
      {"rd_equality", {K::ReactionDiffusion}, true, true, {}},
      {"rd_very_conforming_equality", {K::ReactionDiffusion}, true, true, {}},
      {"poisson_very_conforming_equality", {K::Poisson}, true, true, {}},
      {"trd_equality", {K::TimeReactionDiffusion}, true, true, {}},
      {"trd_very_conforming_equality", {K::TimeReactionDiffusion}, true, true, {}},
      {"heat_very_conforming_equality", {K::Heat}, true, true, {}},
      {"rd_nonconforming", {K::ReactionDiffusion}, false, true, {"gamma", "part", "free_fields", "reoptimize_gamma"}},
      {"rd_semiconforming", {K::ReactionDiffusion}, false, true, {"gamma", "free_fields", "reoptimize_gamma"}},
      {"rd_primal_majorant", {K::ReactionDiffusion}, false, true, {"free_fields"}},
      {"poisson_two_sided", {K::Poisson}, false, true, {"gamma", "friedrichs", "reoptimize_gamma"}},
      {"poisson_nonconforming", {K::Poisson}, false, true, {"part", "free_fields", "friedrichs"}},
      {"poisson_primal_majorant", {K::Poisson}, false, true, {"free_fields", "friedrichs"}},
      {"heat_two_sided", {K::Heat}, false, true, {"gamma", "friedrichs", "reoptimize_gamma"}},
      {"optimize_majorant", {K::ReactionDiffusion, K::Poisson}, false, true, {"budget", "friedrichs"}},
  };
  return table;
}

const EstimatorInfo* find_estimator(const std::string& name) {
  for (const auto& e : estimator_table())
    if (e.name == name) return &e;
  return nullptr;
}

namespace {

bool primal_conforming(ConformityLevel l) {
  return l == ConformityLevel::VeryConforming || l == ConformityLevel::ConformingMixed ||
         l == ConformityLevel::SemiConformingPrimal;
}

bool dual_conforming(ConformityLevel l) {
  return l == ConformityLevel::VeryConforming || l == ConformityLevel::ConformingMixed ||
         l == ConformityLevel::SemiConformingDual;
}

}  // namespace

std::string level_mismatch(const EstimatorSpec& e, ConformityLevel l) {
  const std::string& n = e.name;
  const bool mixed = primal_conforming(l) && dual_conforming(l);
  if (n == "rd_equality" || n == "trd_equality" || n == "poisson_two_sided" || n == "heat_two_sided")
    return mixed ? "" : "needs a conforming pair";
  if (n.ends_with("very_conforming_equality"))
    return l == ConformityLevel::VeryConforming ? "" : "needs a very conforming approximation";
  if (n == "rd_semiconforming")
    return l == ConformityLevel::SemiConformingPrimal || l == ConformityLevel::SemiConformingDual
               ? ""
               : "needs a semi-conforming approximation";
  if (n == "poisson_nonconforming") {
    const std::string part = e.part.value_or("i");
    if (part == "mixed_i" && !primal_conforming(l)) return "part mixed_i needs a conforming u_tilde";
    if (part == "mixed_ii" && !dual_conforming(l)) return "part mixed_ii needs a div-conforming p_tilde";
    return "";
  }
  if (n == "rd_primal_majorant" || n == "poisson_primal_majorant") {
    if (!primal_conforming(l)) return "needs a conforming u_tilde";
    if (!e.free_fields && !dual_conforming(l)) return "needs a div-conforming p_tilde or free_fields";
    return "";
  }
  if (n == "optimize_majorant") return primal_conforming(l) ? "" : "needs a conforming u_tilde";
  return "";
}

std::string json_number_text(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path.empty() ? what : path + ": " + what);
}

void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed,
                const std::vector<std::string>& extra = {}) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [key, _] : j.items()) {
    const bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) ||
                    std::find(extra.begin(), extra.end(), key) != extra.end();
    if (!ok) fail(path, "unknown key '" + key + "'");
  }
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::string string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

mms::AxisFactor parse_factor(const json& j, const std::string& path) {
  check_keys(j, path, {"type", "mode", "power"});
  if (!j.contains("type")) fail(path, "missing key 'type'");
  mms::AxisFactor f;
  try {
    f.kind = mms::axis_kind_from_string(string(j["type"], path + ".type"));
  } catch (const ContractError& e) {
    fail(path + ".type", e.what());
  }
  if (j.contains("mode")) f.mode = integer(j["mode"], path + ".mode");
  if (j.contains("power")) f.power = integer(j["power"], path + ".power");
  if (f.mode < 0) fail(path + ".mode", "must be non-negative");
  if (f.power < 0) fail(path + ".power", "must be non-negative");
  return f;
}

CaseSpec parse_case(const json& j, const std::string& path) {
  check_keys(j, path, {"name", "kind", "domain", "solution", "source_scale"});
  for (const char* k : {"name", "kind", "domain", "solution"})
    if (!j.contains(k)) fail(path, std::string("missing key '") + k + "'");
  CaseSpec c;
  c.name = string(j["name"], path + ".name");
  try {
    c.kind = mms::problem_kind_from_string(string(j["kind"], path + ".kind"));
  } catch (const ContractError& e) {
    fail(path + ".kind", e.what());
  }
  const auto& d = j["domain"];
  const std::string dp = path + ".domain";
  check_keys(d, dp, {"lower", "upper", "T"});
  if (!d.contains("lower") || !d.contains("upper")) fail(dp, "needs 'lower' and 'upper'");
  for (std::size_t i = 0; i < array(d["lower"], dp + ".lower").size(); ++i)
    c.lower.push_back(number(d["lower"][i], at(dp + ".lower", i)));
  for (std::size_t i = 0; i < array(d["upper"], dp + ".upper").size(); ++i)
    c.upper.push_back(number(d["upper"][i], at(dp + ".upper", i)));
  if (d.contains("T")) c.horizon = number(d["T"], dp + ".T");

  const std::string sp = path + ".solution";
  const auto& terms = array(j["solution"], sp);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string tp = at(sp, i);
    check_keys(terms[i], tp, {"coeff", "factors", "time"});
    mms::SeparableTerm t;
    if (terms[i].contains("coeff")) t.coeff = number(terms[i]["coeff"], tp + ".coeff");
    if (!terms[i].contains("factors")) fail(tp, "missing key 'factors'");
    const auto& fs = array(terms[i]["factors"], tp + ".factors");
    for (std::size_t k = 0; k < fs.size(); ++k) t.factors.push_back(parse_factor(fs[k], at(tp + ".factors", k)));
    if (terms[i].contains("time")) {
      const auto& tj = terms[i]["time"];
      check_keys(tj, tp + ".time", {"power", "rate"});
      if (tj.contains("power")) t.time.power = integer(tj["power"], tp + ".time.power");
      if (tj.contains("rate")) t.time.rate = number(tj["rate"], tp + ".time.rate");
      if (t.time.power < 0) fail(tp + ".time.power", "must be non-negative");
    }
    c.solution.push_back(std::move(t));
  }
  if (j.contains("source_scale")) c.source_scale = number(j["source_scale"], path + ".source_scale");
  return c;
}

ApproximationSpec parse_approximation(const json& j, const std::string& path, std::size_t index) {
  check_keys(j, path, {"name", "level", "epsilon", "seed"});
  ApproximationSpec a;
  a.name = j.contains("name") ? string(j["name"], path + ".name") : "a" + std::to_string(index);
  if (!j.contains("level")) fail(path, "missing key 'level'");
  try {
    a.level = mms::conformity_level_from_string(string(j["level"], path + ".level"));
  } catch (const ContractError& e) {
    fail(path + ".level", e.what());
  }
  if (j.contains("epsilon")) a.epsilon = number(j["epsilon"], path + ".epsilon");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) fail(path + ".seed", "expected a non-negative integer");
    a.seed = j["seed"].get<std::uint64_t>();
  }
  return a;
}

mms::FreeFieldStrategy parse_free_fields(const json& j, const std::string& path) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "exact") return mms::FreeFieldStrategy::exact();
    if (s == "coarse") return mms::FreeFieldStrategy::coarse();
    if (s == "zero") return mms::FreeFieldStrategy::zero();
    fail(path, "unknown free-field strategy '" + s + "'");
  }
  check_keys(j, path, {"coarse", "basis"});
  if (j.size() != 1) fail(path, "expected exactly one of 'coarse' or 'basis'");
  if (j.contains("coarse")) return mms::FreeFieldStrategy::coarse(number(j["coarse"], path + ".coarse"));
  const int k = integer(j["basis"], path + ".basis");
  if (k < 0) fail(path + ".basis", "must be non-negative");
  return mms::FreeFieldStrategy::basis(k);
}

EstimatorSpec parse_estimator(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  if (!j.contains("name")) fail(path, "missing key 'name'");
  EstimatorSpec e;
  e.name = string(j["name"], path + ".name");
  const auto* info = detail::find_estimator(e.name);
  if (!info) fail(path + ".name", "unknown estimator '" + e.name + "'");
  check_keys(j, path + " (" + e.name + ")", {"name", "cases", "levels"}, info->params);
  if (j.contains("gamma")) e.gamma = number(j["gamma"], path + ".gamma");
  if (j.contains("part")) e.part = string(j["part"], path + ".part");
  if (j.contains("free_fields")) e.free_fields = parse_free_fields(j["free_fields"], path + ".free_fields");
  if (j.contains("omega")) e.omega = number(j["omega"], path + ".omega");
  if (j.contains("friedrichs")) e.friedrichs = number(j["friedrichs"], path + ".friedrichs");
  if (j.contains("budget")) e.budget = integer(j["budget"], path + ".budget");
  if (j.contains("reoptimize_gamma")) {
    if (!j["reoptimize_gamma"].is_boolean()) fail(path + ".reoptimize_gamma", "expected a boolean");
    e.reoptimize = j["reoptimize_gamma"].get<bool>();
  }
  if (j.contains("cases")) {
    const auto& cs = array(j["cases"], path + ".cases");
    for (std::size_t i = 0; i < cs.size(); ++i) e.cases.push_back(string(cs[i], at(path + ".cases", i)));
  }
  if (j.contains("levels")) {
    const auto& ls = array(j["levels"], path + ".levels");
    for (std::size_t i = 0; i < ls.size(); ++i) {
      try {
        e.levels.push_back(mms::conformity_level_from_string(string(ls[i], at(path + ".levels", i))));
      } catch (const ContractError& ex) {
        fail(at(path + ".levels", i), ex.what());
      }
    }
  }
  return e;
}

// Position of the character following the first `byte` characters.
std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1, col = 0;
  const std::size_t end = std::min(byte, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 0;
    } else {
      ++col;
    }
  }
  return {line, col + 1};
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

mms::ProblemCase CaseSpec::build() const {
  const BoxDomain dom(lower, upper, horizon);
  if (!solution.empty())
    for (const auto& t : solution)
      if (static_cast<int>(t.factors.size()) != dom.dim())
        throw ContractError("every solution term needs one factor per spatial axis");
  auto c = mms::make_case(kind, mms::SeparableSum(dom, solution), name);
  if (source_scale != 1.0) c = mms::corrupt_source(c, source_scale);
  return c;
}

const char* to_string(Format f) {
  switch (f) {
    case Format::Json: return "json";
    case Format::Csv: return "csv";
    case Format::PlotData: return "plotdata";
  }
  return "?";
}

Format format_from_string(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "plotdata") return Format::PlotData;
  throw ConfigError("unknown output format '" + name + "' (expected json, csv or plotdata)");
}

bool is_known_estimator(const std::string& name) { return detail::find_estimator(name) != nullptr; }

bool is_equality_estimator(const std::string& name) {
  const auto* e = detail::find_estimator(name);
  return e && e->equality;
}

bool uses_approximation(const std::string& name) {
  const auto* e = detail::find_estimator(name);
  return e && e->uses_approximation;
}

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string msg = e.what();
    if (auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw ConfigError("parse error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                      msg);
  }
  check_keys(doc, "config", {"cases", "approximations", "estimators", "quadrature", "tolerances", "output", "seed"});
  RunConfig cfg;
  if (doc.contains("cases")) {
    const auto& cs = array(doc["cases"], "cases");
    for (std::size_t i = 0; i < cs.size(); ++i) cfg.cases.push_back(parse_case(cs[i], at("cases", i)));
  }
  if (doc.contains("approximations")) {
    const auto& as = array(doc["approximations"], "approximations");
    for (std::size_t i = 0; i < as.size(); ++i)
      cfg.approximations.push_back(parse_approximation(as[i], at("approximations", i), i));
  }
  if (doc.contains("estimators")) {
    const auto& es = array(doc["estimators"], "estimators");
    for (std::size_t i = 0; i < es.size(); ++i) cfg.estimators.push_back(parse_estimator(es[i], at("estimators", i)));
  }
  if (doc.contains("quadrature")) {
    const auto& q = doc["quadrature"];
    check_keys(q, "quadrature", {"space_order", "time_order", "space_cells", "time_cells", "order"});
    if (q.contains("order")) cfg.quadrature.space_order = cfg.quadrature.time_order = integer(q["order"], "quadrature.order");
    if (q.contains("space_order")) cfg.quadrature.space_order = integer(q["space_order"], "quadrature.space_order");
    if (q.contains("time_order")) cfg.quadrature.time_order = integer(q["time_order"], "quadrature.time_order");
    if (q.contains("space_cells")) cfg.quadrature.space_cells = integer(q["space_cells"], "quadrature.space_cells");
    if (q.contains("time_cells")) cfg.quadrature.time_cells = integer(q["time_cells"], "quadrature.time_cells");
  }
  if (doc.contains("tolerances")) {
    const auto& t = doc["tolerances"];
    check_keys(t, "tolerances", {"equality_rel", "bound_slack"});
    if (t.contains("equality_rel")) cfg.tolerances.equality_rel = number(t["equality_rel"], "tolerances.equality_rel");
    if (t.contains("bound_slack")) cfg.tolerances.bound_slack = number(t["bound_slack"], "tolerances.bound_slack");
  }
  if (doc.contains("output")) {
    const auto& o = doc["output"];
    check_keys(o, "output", {"dir", "stem", "formats", "include_timing"});
    if (o.contains("dir")) cfg.output.dir = string(o["dir"], "output.dir");
    if (o.contains("stem")) cfg.output.stem = string(o["stem"], "output.stem");
    if (o.contains("formats")) {
      cfg.output.formats.clear();
      const auto& fs = array(o["formats"], "output.formats");
      for (std::size_t i = 0; i < fs.size(); ++i) {
        try {
          cfg.output.formats.push_back(format_from_string(string(fs[i], at("output.formats", i))));
        } catch (const ConfigError& e) {
          fail(at("output.formats", i), e.what());
        }
      }
    }
    if (o.contains("include_timing")) {
      if (!o["include_timing"].is_boolean()) fail("output.include_timing", "expected a boolean");
      cfg.output.include_timing = o["include_timing"].get<bool>();
    }
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) fail("seed", "expected a non-negative integer");
    cfg.default_seed = doc["seed"].get<std::uint64_t>();
  }
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void validate(const RunConfig& cfg) {
  std::set<std::string> names;
  for (std::size_t i = 0; i < cfg.cases.size(); ++i) {
    const auto& c = cfg.cases[i];
    const std::string path = at("cases", i) + " (" + c.name + ")";
    if (c.name.empty()) fail(at("cases", i), "case name must not be empty");
    if (!names.insert(c.name).second) fail(path, "duplicate case name");
    if (!std::isfinite(c.source_scale)) fail(path, "source_scale must be finite");
    if (mms::is_parabolic(c.kind) && !c.horizon) fail(path, "parabolic kind needs domain.T");
    if (!mms::is_parabolic(c.kind) && c.horizon) fail(path, "elliptic kind must not set domain.T");
    if (c.solution.empty()) fail(path, "solution needs at least one term");
    try {
      (void)c.build();
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }
  std::set<std::string> anames;
  for (std::size_t i = 0; i < cfg.approximations.size(); ++i) {
    const auto& a = cfg.approximations[i];
    const std::string path = at("approximations", i) + " (" + a.name + ")";
    if (!anames.insert(a.name).second) fail(path, "duplicate approximation name");
    if (!std::isfinite(a.epsilon) || a.epsilon < 0.0) fail(path, "epsilon must be finite and non-negative");
  }
  const auto& q = cfg.quadrature;
  if (q.space_order < 1 || q.space_order > 64 || q.time_order < 1 || q.time_order > 64)
    fail("quadrature", "orders must lie in [1, 64]");
  if (q.space_cells < 1 || q.time_cells < 1) fail("quadrature", "cell counts must be positive");
  if (!finite_positive(cfg.tolerances.equality_rel)) fail("tolerances.equality_rel", "must be positive");
  if (!finite_positive(cfg.tolerances.bound_slack) && cfg.tolerances.bound_slack != 0.0)
    fail("tolerances.bound_slack", "must be non-negative");
  if (cfg.output.stem.empty() || cfg.output.stem.find('/') != std::string::npos)
    fail("output.stem", "must be a plain file name");

  for (std::size_t i = 0; i < cfg.estimators.size(); ++i) {
    const auto& e = cfg.estimators[i];
    const std::string path = at("estimators", i) + " (" + e.name + ")";
    const auto* info = detail::find_estimator(e.name);
    if (!info) fail(path, "unknown estimator");
    auto allows = [&](const char* key) {
      return std::find(info->params.begin(), info->params.end(), key) != info->params.end();
    };
    if (e.gamma && !allows("gamma")) fail(path, "does not take 'gamma'");
    if (e.part && !allows("part")) fail(path, "does not take 'part'");
    if (e.free_fields && !allows("free_fields")) fail(path, "does not take 'free_fields'");
    if (e.omega && !allows("omega")) fail(path, "does not take 'omega'");
    if (e.friedrichs && !allows("friedrichs")) fail(path, "does not take 'friedrichs'");
    if (e.budget && !allows("budget")) fail(path, "does not take 'budget'");
    if (e.reoptimize && !allows("reoptimize_gamma")) fail(path, "does not take 'reoptimize_gamma'");
    if (!e.levels.empty() && !info->uses_approximation) fail(path, "does not use approximations; 'levels' is meaningless");

    if (e.gamma) {
      if (!finite_positive(*e.gamma)) fail(path, "gamma must be positive");
      if ((e.name == "poisson_two_sided" || e.name == "heat_two_sided") && !(*e.gamma > 1.0))
        fail(path, "gamma must exceed 1");
    }
    if (e.part) {
      const bool rd = e.name == "rd_nonconforming";
      const std::vector<std::string> ok = rd ? std::vector<std::string>{"i", "ii", "iii"}
                                             : std::vector<std::string>{"i", "ii", "mixed_i", "mixed_ii"};
      if (std::find(ok.begin(), ok.end(), *e.part) == ok.end()) fail(path, "unknown part '" + *e.part + "'");
    }
    if (e.name == "omega_identity" && !e.omega) fail(path, "needs 'omega'");
    if (e.omega && !std::isfinite(*e.omega)) fail(path, "omega must be finite");
    if (e.friedrichs && !finite_positive(*e.friedrichs)) fail(path, "friedrichs must be positive");
    if (e.budget && (*e.budget < 1 || *e.budget > 16)) fail(path, "budget must lie in [1, 16]");
    if (e.free_fields && e.free_fields->kind == mms::FreeFieldStrategy::Kind::Coarse &&
        !std::isfinite(e.free_fields->scale))
      fail(path, "coarse scale must be finite");

    for (const auto& name : e.cases)
      if (!names.count(name)) fail(path, "references unknown case '" + name + "'");
    for (const auto& c : cfg.cases) {
      if (!e.cases.empty() && std::find(e.cases.begin(), e.cases.end(), c.name) == e.cases.end()) continue;
      if (std::find(info->kinds.begin(), info->kinds.end(), c.kind) == info->kinds.end())
        fail(path, "is not defined for case '" + c.name + "' of kind " + mms::to_string(c.kind));
    }
    if (!info->uses_approximation) continue;
    for (const auto& a : cfg.approximations) {
      if (!e.levels.empty() && std::find(e.levels.begin(), e.levels.end(), a.level) == e.levels.end()) continue;
      const auto why = detail::level_mismatch(e, a.level);
      if (!why.empty())
        fail(path, "cannot use approximation '" + a.name + "' (" + mms::to_string(a.level) + "): " + why);
    }
  }
}

namespace {

ojson factor_json(const mms::AxisFactor& f) {
  ojson j;
  j["type"] = mms::to_string(f.kind);
  if (f.kind == mms::AxisFactor::Kind::Sin || f.kind == mms::AxisFactor::Kind::Cos) j["mode"] = f.mode;
  if (f.kind == mms::AxisFactor::Kind::Bubble || f.kind == mms::AxisFactor::Kind::Monomial) j["power"] = f.power;
  return j;
}

ojson free_fields_json(const mms::FreeFieldStrategy& s) {
  using K = mms::FreeFieldStrategy::Kind;
  switch (s.kind) {
    case K::Exact: return "exact";
    case K::Zero: return "zero";
    case K::Coarse: return s.scale == 0.9 ? ojson("coarse") : ojson{{"coarse", s.scale}};
    case K::Basis: return ojson{{"basis", s.index}};
  }
  return nullptr;
}

}  // namespace

std::string config_to_json(const RunConfig& cfg) {
  ojson doc;
  doc["seed"] = cfg.default_seed;
  doc["cases"] = ojson::array();
  for (const auto& c : cfg.cases) {
    ojson j;
    j["name"] = c.name;
    j["kind"] = mms::to_string(c.kind);
    j["domain"]["lower"] = c.lower;
    j["domain"]["upper"] = c.upper;
    if (c.horizon) j["domain"]["T"] = *c.horizon;
    j["solution"] = ojson::array();
    for (const auto& t : c.solution) {
      ojson tj;
      tj["coeff"] = t.coeff;
      tj["factors"] = ojson::array();
      for (const auto& f : t.factors) tj["factors"].push_back(factor_json(f));
      if (!t.time.trivial()) tj["time"] = {{"power", t.time.power}, {"rate", t.time.rate}};
      j["solution"].push_back(tj);
    }
    if (c.source_scale != 1.0) j["source_scale"] = c.source_scale;
    doc["cases"].push_back(j);
  }
  doc["approximations"] = ojson::array();
  for (const auto& a : cfg.approximations) {
    ojson j;
    j["name"] = a.name;
    j["level"] = mms::to_string(a.level);
    j["epsilon"] = a.epsilon;
    if (a.seed) j["seed"] = *a.seed;
    doc["approximations"].push_back(j);
  }
  doc["estimators"] = ojson::array();
  for (const auto& e : cfg.estimators) {
    ojson j;
    j["name"] = e.name;
    if (e.gamma) j["gamma"] = *e.gamma;
    if (e.part) j["part"] = *e.part;
    if (e.free_fields) j["free_fields"] = free_fields_json(*e.free_fields);
    if (e.omega) j["omega"] = *e.omega;
    if (e.friedrichs) j["friedrichs"] = *e.friedrichs;
    if (e.budget) j["budget"] = *e.budget;
    if (e.reoptimize) j["reoptimize_gamma"] = true;
    if (!e.cases.empty()) j["cases"] = e.cases;
    if (!e.levels.empty()) {
      j["levels"] = ojson::array();
      for (auto l : e.levels) j["levels"].push_back(mms::to_string(l));
    }
    doc["estimators"].push_back(j);
  }
  doc["quadrature"] = {{"space_order", cfg.quadrature.space_order},
                       {"time_order", cfg.quadrature.time_order},
                       {"space_cells", cfg.quadrature.space_cells},
                       {"time_cells", cfg.quadrature.time_cells}};
  doc["tolerances"] = {{"equality_rel", cfg.tolerances.equality_rel}, {"bound_slack", cfg.tolerances.bound_slack}};
  ojson out;
  if (cfg.output.dir) out["dir"] = *cfg.output.dir;
  out["stem"] = cfg.output.stem;
  out["formats"] = ojson::array();
  for (auto f : cfg.output.formats) out["formats"].push_back(to_string(f));
  out["include_timing"] = cfg.output.include_timing;
  doc["output"] = out;
  return doc.dump(2) + "\n";
}

}  // namespace funcerr::report
