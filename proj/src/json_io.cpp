#include "sineq/json_io.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace sineq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

nlohmann::ordered_json encode_extent(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

double decode_extent(const nlohmann::json& j, const char* what) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "Infinity" || s == "+inf") return kInf;
    throw std::invalid_argument(std::string(what) + ": unrecognized extent string '" + s + "'");
  }
  if (j.is_number()) return j.get<double>();
  throw std::invalid_argument(std::string(what) + ": expected number or \"inf\"");
}

double require_number(const nlohmann::json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw std::invalid_argument(std::string(what) + ": missing numeric field '" + key + "'");
  }
  return j.at(key).get<double>();
}

}  // namespace

nlohmann::ordered_json measure_to_json(const MeasureSpec& m) {
  nlohmann::ordered_json j;
  j["family"] = m.family_name();
  switch (m.family()) {
    case MeasureFamily::NuP:
      j["p"] = m.p();
      break;
    case MeasureFamily::MuPAlpha:
      j["p"] = m.p();
      j["alpha"] = m.alpha();
      break;
    case MeasureFamily::Weibull:
      j["alpha"] = m.alpha();
      break;
    case MeasureFamily::GammaSym:
      j["q"] = m.q();
      break;
  }
  return j;
}

MeasureSpec measure_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("family") || !j.at("family").is_string()) {
    throw std::invalid_argument("measure JSON: expected an object with a 'family' string");
  }
  const std::string family = j.at("family").get<std::string>();
  if (family == "nu_p") return MeasureSpec::nu_p(require_number(j, "p", "measure JSON"));
  if (family == "mu_p_alpha") {
    return MeasureSpec::mu_p_alpha(require_number(j, "p", "measure JSON"),
                                   require_number(j, "alpha", "measure JSON"));
  }
  if (family == "weibull") {
    return MeasureSpec::weibull(require_number(j, "alpha", "measure JSON"));
  }
  if (family == "gamma") return MeasureSpec::gamma_sym(require_number(j, "q", "measure JSON"));
  throw std::invalid_argument("measure JSON: unknown family '" + family + "'");
}

nlohmann::ordered_json ideal_to_json(const Ideal& ideal) {
  nlohmann::ordered_json j;
  if (const auto* step = std::get_if<StepIdeal2D>(&ideal)) {
    j["type"] = "step2d";
    j["breakpoints"] = step->breakpoints();
    nlohmann::ordered_json heights = nlohmann::ordered_json::array();
    for (double h : step->heights()) heights.push_back(encode_extent(h));
    j["heights"] = heights;
  } else if (const auto* boxes = std::get_if<BoxUnionIdeal>(&ideal)) {
    j["type"] = "boxes";
    j["dim"] = boxes->dim();
    nlohmann::ordered_json corners = nlohmann::ordered_json::array();
    for (const auto& corner : boxes->corners()) {
      nlohmann::ordered_json c = nlohmann::ordered_json::array();
      for (double v : corner) c.push_back(encode_extent(v));
      corners.push_back(c);
    }
    j["corners"] = corners;
  } else {
    const auto& ball = std::get<LqBallIdeal>(ideal);
    j["type"] = "lq_ball";
    j["dim"] = ball.dim();
    j["s"] = ball.s();
    j["r"] = ball.r();
  }
  return j;
}

Ideal ideal_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    throw std::invalid_argument("ideal JSON: expected an object with a 'type' string");
  }
  const std::string type = j.at("type").get<std::string>();
  if (type == "step2d") {
    if (!j.contains("breakpoints") || !j.at("breakpoints").is_array() ||
        !j.contains("heights") || !j.at("heights").is_array()) {
      throw std::invalid_argument("ideal JSON: step2d needs breakpoints and heights arrays");
    }
    std::vector<double> bp;
    for (const auto& v : j.at("breakpoints")) bp.push_back(decode_extent(v, "step2d"));
    std::vector<double> hs;
    for (const auto& v : j.at("heights")) hs.push_back(decode_extent(v, "step2d"));
    return StepIdeal2D(std::move(bp), std::move(hs));
  }
  if (type == "boxes") {
    if (!j.contains("dim") || !j.at("dim").is_number_integer() || !j.contains("corners") ||
        !j.at("corners").is_array()) {
      throw std::invalid_argument("ideal JSON: boxes needs dim and corners");
    }
    std::vector<std::vector<double>> corners;
    for (const auto& corner : j.at("corners")) {
      if (!corner.is_array()) throw std::invalid_argument("ideal JSON: corner must be an array");
      std::vector<double> c;
      for (const auto& v : corner) c.push_back(decode_extent(v, "boxes"));
      corners.push_back(std::move(c));
    }
    return BoxUnionIdeal(j.at("dim").get<int>(), std::move(corners));
  }
  if (type == "lq_ball") {
    if (!j.contains("dim") || !j.at("dim").is_number_integer()) {
      throw std::invalid_argument("ideal JSON: lq_ball needs integer dim");
    }
    return LqBallIdeal(j.at("dim").get<int>(), require_number(j, "s", "lq_ball"),
                       require_number(j, "r", "lq_ball"));
  }
  throw std::invalid_argument("ideal JSON: unknown type '" + type + "'");
}

nlohmann::ordered_json norm_to_json(const UnconditionalNorm& norm) {
  nlohmann::ordered_json j;
  j["kind"] = norm.describe();
  return j;
}

UnconditionalNorm norm_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw std::invalid_argument("norm JSON: expected an object with a 'kind' string");
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "ls") {
    if (j.contains("s") && j.at("s").is_string()) {
      const std::string s = j.at("s").get<std::string>();
      if (s == "inf" || s == "Infinity") return UnconditionalNorm::ls(kInf);
      throw std::invalid_argument("norm JSON: ls exponent string must be \"inf\"");
    }
    return UnconditionalNorm::ls(require_number(j, "s", "norm JSON"));
  }
  if (kind == "weighted_max") {
    if (!j.contains("weights") || !j.at("weights").is_array()) {
      throw std::invalid_argument("norm JSON: weighted_max needs a weights array");
    }
    std::vector<double> w;
    for (const auto& v : j.at("weights")) {
      if (!v.is_number()) throw std::invalid_argument("norm JSON: weights must be numbers");
      w.push_back(v.get<double>());
    }
    return UnconditionalNorm::weighted_max(std::move(w));
  }
  if (kind == "coordinate") {
    if (!j.contains("j") || !j.at("j").is_number_integer()) {
      throw std::invalid_argument("norm JSON: coordinate needs integer j");
    }
    return UnconditionalNorm::coordinate(j.at("j").get<int>());
  }
  throw std::invalid_argument("norm JSON: unknown kind '" + kind + "'");
}

nlohmann::ordered_json report_to_json(const VerificationReport& report, const MeasureSpec& m,
                                      const Ideal& ideal, const RunManifest& manifest) {
  nlohmann::ordered_json j;
  j["manifest"] = manifest.to_json();
  j["measure"] = measure_to_json(m);
  j["ideal"] = ideal_to_json(ideal);
  j["mode"] = to_string(report.mode);
  j["tol"] = report.tol;
  j["seed"] = report.seed;
  j["base_mass"] = report.base_mass;
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& rec : report.records) {
    nlohmann::ordered_json r;
    r["t"] = rec.t;
    r["lhs"] = rec.lhs;
    r["rhs"] = rec.rhs;
    r["margin"] = rec.margin;
    records.push_back(r);
  }
  j["records"] = records;
  j["min_margin"] = report.min_margin;
  j["pass"] = report.pass;
  return j;
}

std::string manifest_csv_prelude(const RunManifest& manifest) {
  std::ostringstream out;
  out << "# manifest " << manifest.to_json().dump() << "\n";
  return out.str();
}

std::string report_to_csv(const VerificationReport& report, const MeasureSpec& m,
                          const std::string& ideal_id, const RunManifest& manifest) {
  std::ostringstream out;
  out << manifest_csv_prelude(manifest);
  out << "family,params,ideal_id,t,lhs,rhs,margin\n";
  for (const auto& rec : report.records) {
    out << m.family_name() << "," << m.params_string() << "," << ideal_id << ","
        << format_g17(rec.t) << "," << format_g17(rec.lhs) << "," << format_g17(rec.rhs)
        << "," << format_g17(rec.margin) << "\n";
  }
  return out.str();
}

nlohmann::ordered_json search_result_to_json(const SearchResult& result, const MeasureSpec& m,
                                             const RunManifest& manifest) {
  nlohmann::ordered_json j;
  j["manifest"] = manifest.to_json();
  j["measure"] = measure_to_json(m);
  j["best_ideal"] = ideal_to_json(Ideal{result.best});
  j["objective"] = result.objective;
  j["strip_objective"] = result.strip_objective;
  j["gap"] = result.gap;
  j["status"] =
      result.status == SearchStatus::Converged ? "CONVERGED" : "BUDGET_EXHAUSTED";
  j["anomaly"] = result.anomaly;
  j["best_restart"] = result.best_restart;
  return j;
}

}  // namespace sineq
