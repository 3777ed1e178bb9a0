#include "qes/serialize.hpp"

#include <algorithm>
#include <cctype>

#include "qes/error.hpp"

namespace qes {

namespace {

BigInt pow10(int n) {
  BigInt p = 1;
  for (int i = 0; i < n; ++i) p *= 10;
  return p;
}

std::optional<BigInt> parse_integer(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::size_t i = s[0] == '-' || s[0] == '+' ? 1 : 0;
  if (i == s.size()) return std::nullopt;
  for (std::size_t k = i; k < s.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return std::nullopt;
  }
  // leading zeros would select octal in the BigInt string constructor
  const std::size_t first = std::min(s.find_first_not_of('0', i), s.size() - 1);
  BigInt v(s.substr(first));
  return s[0] == '-' ? BigInt(-v) : v;
}

template <class T>
Json spec_json(const BasicPotentialSpec<T>& spec, auto&& value) {
  Json j;
  j["family"] = family_name(spec.family);
  j["m"] = spec.m;
  j["L"] = value(spec.L);
  j["lambda"] = value(spec.lambda);
  j["A"] = value(spec.A);
  Json b = Json::array();
  for (const auto& x : spec.B) b.push_back(value(x));
  j["B"] = b;
  j["shift"] = value(spec.shift);
  return j;
}

template <class T>
Json psi_json(const BasicWavefunctionForm<T>& psi, auto&& value) {
  auto list = [&value](const std::vector<T>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(value(x));
    return a;
  };
  Json j;
  j["a"] = value(psi.r_power);
  j["b"] = value(psi.f_power);
  j["exp_r2"] = list(psi.exp_r2);
  j["exp_finv"] = list(psi.exp_finv);
  if (psi.has_prefactor()) j["prefactor"] = list(psi.prefactor);
  return j;
}

template <class T>
Json solution_json(const TwoStateSolution<T>& sol, auto&& value) {
  Json j;
  j["family"] = family_name(sol.family);
  j["m"] = sol.m;
  j["L"] = value(sol.L);
  j["lambda"] = value(sol.lambda);
  j["B2m"] = value(sol.B2m);
  j["spec"] = spec_json(sol.spec, value);
  j["E0"] = value(sol.E0);
  j["E1"] = value(sol.E1);
  j["r0"] = sol.r0;
  j["psi0"] = psi_json(sol.psi0, value);
  j["psi1"] = psi_json(sol.psi1, value);
  return j;
}

const auto as_double = [](double x) { return x; };
const auto as_text = [](const Rational& q) { return q.str(); };

double number_of(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    if (auto q = parse_rational(j.get<std::string>())) return to_double(*q);
  }
  throw Error(ErrorCode::InvalidParameter, "expected a number, got " + j.dump());
}

}  // namespace

std::optional<Rational> parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const auto num = parse_integer(text.substr(0, slash));
    const auto den = parse_integer(text.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    return Rational(*num, *den);
  }
  std::string mantissa = text;
  int exponent = 0;
  const auto e = text.find_first_of("eE");
  if (e != std::string::npos) {
    const auto ex = parse_integer(text.substr(e + 1));
    if (!ex || abs(*ex) > 400) return std::nullopt;
    exponent = ex->convert_to<int>();
    mantissa = text.substr(0, e);
  }
  const auto dot = mantissa.find('.');
  if (dot != std::string::npos) {
    const std::string frac = mantissa.substr(dot + 1);
    if (frac.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
    exponent -= static_cast<int>(frac.size());
    mantissa = mantissa.substr(0, dot) + frac;
    if (mantissa == "-" || mantissa == "+" || mantissa.empty()) return std::nullopt;
  }
  const auto digits = parse_integer(mantissa);
  if (!digits) return std::nullopt;
  return exponent >= 0 ? Rational(*digits * pow10(exponent)) : Rational(*digits, pow10(-exponent));
}

Json to_json(const PotentialSpec& spec) { return spec_json(spec, as_double); }
Json to_json(const ExactPotentialSpec& spec) { return spec_json(spec, as_text); }

PotentialSpec spec_from_json(const Json& j) {
  try {
    PotentialSpec spec;
    const Json& fam = j.at("family");
    spec.family = fam.is_number_integer() ? family_from_index(fam.get<int>())
                                          : family_from_string(fam.get<std::string>());
    spec.m = j.at("m").get<int>();
    spec.L = number_of(j.at("L"));
    spec.lambda = number_of(j.at("lambda"));
    spec.A = number_of(j.at("A"));
    for (const auto& b : j.at("B")) spec.B.push_back(number_of(b));
    spec.shift = j.contains("shift") ? number_of(j.at("shift")) : 0.0;
    validate(spec);
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidParameter, std::string("malformed potential JSON: ") + e.what());
  }
}

Json to_json(const WavefunctionForm& psi) { return psi_json(psi, as_double); }
Json to_json(const TwoStateSolution<double>& sol) { return solution_json(sol, as_double); }
Json to_json(const TwoStateSolution<Rational>& sol) { return solution_json(sol, as_text); }

Json to_json(const SpectrumEstimate& est) {
  Json j;
  j["grid_points"] = est.grid_points;
  j["x_max"] = est.x_max;
  j["eigenvalues"] = est.eigenvalues;
  j["raw_eigenvalues"] = est.raw_eigenvalues;
  j["richardson_error"] = est.richardson_error;
  j["truncation_warning"] = est.truncation_warning;
  if (!est.warning.empty()) j["warning"] = est.warning;
  return j;
}

Json to_json(const VerificationReport& report) {
  const VerifyConfig& c = report.config;
  Json j;
  j["config"] = {{"id", report.config_id},
                 {"family", family_name(c.family)},
                 {"m", c.m},
                 {"L", c.L},
                 {"lambda", c.lambda},
                 {"B2m", c.B2m},
                 {"grid", c.grid.grid_points},
                 {"tol", c.grid.tolerance},
                 {"perturb", c.perturb}};
  j["E0"] = report.E0;
  j["E1"] = report.E1;
  j["r0"] = report.r0;
  j["E0_oracle"] = report.E0_oracle;
  j["E1_oracle"] = report.E1_oracle;
  j["oracle_grid"] = report.oracle_grid;
  Json checks = Json::array();
  for (const auto& ch : report.checks) {
    Json e;
    e["name"] = ch.name;
    e["kind"] = ch.kind == CheckKind::AtMost ? "at_most" : "equals";
    if (std::isfinite(ch.value)) {
      e["value"] = ch.value;
    } else {
      e["value"] = nullptr;
    }
    e["threshold"] = ch.threshold;
    e["pass"] = ch.pass;
    if (!ch.detail.empty()) e["detail"] = ch.detail;
    checks.push_back(e);
  }
  j["checks"] = checks;
  j["pass"] = report.pass();
  return j;
}

}  // namespace qes
