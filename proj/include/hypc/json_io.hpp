#pragma once

// JSON views of library results; needs vendor/json.hpp on the include path.

#include <cstdint>
#include <limits>
#include <string>

#include "json.hpp"

#include "hypc/gamma.hpp"
#include "hypc/identities.hpp"
#include "hypc/lambda.hpp"
#include "hypc/residue.hpp"

namespace hypc {

using Json = nlohmann::ordered_json;

inline Json to_json(cplx z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

inline cplx complex_from_json(const Json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

inline Json to_json(const GammaValue& v) {
  Json out = to_json(v.value);
  out["pole"] = v.is_pole;
  if (v.residue) out["residue"] = to_json(*v.residue);
  return out;
}

inline Json to_json(const Diagnostics& d) {
  return Json{{"branch", d.branch},       {"summands", d.summands},      {"terms", d.terms},
              {"k_min", d.k_min},         {"k_max", d.k_max},            {"evaluations", d.evaluations},
              {"convergence", convergence_name(d.convergence)}};
}

inline Json to_json(const EvalResult& r) {
  return Json{{"value", to_json(r.value)},
              {"error", r.abs_error_estimate},
              {"engine", engine_name(r.engine)},
              {"diagnostics", to_json(r.diagnostics)}};
}

inline Json to_json(const IdentityCheck& c) {
  return Json{{"name", c.name},   {"sampler", c.sampler}, {"residual", c.residual},
              {"tol", c.tolerance}, {"passed", c.passed}, {"witness", c.witness}};
}

inline IdentityCheck identity_check_from_json(const Json& j) {
  IdentityCheck c;
  c.name = j.at("name").get<std::string>();
  c.sampler = j.value("sampler", std::string{});
  c.residual = j.at("residual").is_null() ? std::numeric_limits<double>::infinity() : j.at("residual").get<double>();
  c.tolerance = j.at("tol").get<double>();
  c.passed = j.at("passed").get<bool>();
  c.witness = j.at("witness").get<std::string>();
  return c;
}

inline Json to_json(const VerificationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return Json{{"suite", r.suite}, {"seed", r.seed}, {"checks", std::move(checks)}, {"passed", r.passed}};
}

inline VerificationReport report_from_json(const Json& j) {
  VerificationReport r;
  r.suite = j.at("suite").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& c : j.at("checks")) r.checks.push_back(identity_check_from_json(c));
  r.passed = j.at("passed").get<bool>();
  return r;
}

inline Json error_json(const Error& e) { return Json{{"error_kind", std::string(kind_name(e.kind()))}, {"message", e.what()}}; }

}  // namespace hypc
