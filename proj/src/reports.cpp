#include "broadwell/reports.hpp"

#include <cmath>

namespace broadwell {

using nlohmann::json;

json json_number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json to_json(const BoundCertificate& c) {
  json terms = json::object();
  for (const auto& [name, value] : c.q_terms) terms[name] = json_number(value);
  return {{"p", json_number(c.p)},
          {"q", json_number(c.q)},
          {"p_prime", json_number(c.p_prime)},
          {"alpha", json_number(c.alpha)},
          {"beta_T", json_number(c.beta_T)},
          {"beta", json_number(c.beta)},
          {"pq", json_number(c.pq)},
          {"admissible", c.admissible},
          {"r_min", json_number(c.r_min)},
          {"r_max", json_number(c.r_max)},
          {"ratio", json_number(c.ratio)},
          {"c1_samples", c.c1_samples},
          {"q_terms", terms}};
}

json to_json(const CompatibilityReport& r) {
  json rows = json::array();
  for (const auto& row : r.residuals) {
    rows.push_back({{"identity", row.identity}, {"residual", json_number(row.residual)}});
  }
  return {{"residuals", rows},
          {"max_residual", json_number(r.max_residual)},
          {"min_value", json_number(r.min_value)},
          {"min_function", r.min_function},
          {"tol", json_number(r.tol)},
          {"samples", r.samples},
          {"compatible", r.compatible()},
          {"nonnegative", r.nonnegative()}};
}

json to_json(const IterationReport& r) {
  json its = json::array();
  for (const auto& rec : r.records) {
    its.push_back({{"iteration", rec.iteration},
                   {"residual", json_number(rec.residual)},
                   {"V", json_number(rec.v)},
                   {"min", json_number(rec.min_value)}});
  }
  json factors = json::array();
  for (double f : r.contraction_factors()) factors.push_back(json_number(f));
  return {{"converged", r.converged},
          {"iterations", r.iterations},
          {"final_residual", r.records.empty() ? json(nullptr) : json_number(r.records.back().residual)},
          {"min_value", r.records.empty() ? json_number(r.initial_min)
                                          : json_number(r.records.back().min_value)},
          {"positivity_ok", r.positivity_ok},
          {"mode", r.mode == SolveMode::Sigma ? "sigma" : "plain"},
          {"sigma", json_number(r.sigma)},
          {"initial_V", json_number(r.initial_v)},
          {"initial_min", json_number(r.initial_min)},
          {"contraction_factors", factors},
          {"history", its},
          {"certificate", to_json(r.certificate)}};
}

json to_json(const ComparisonReport& r) {
  json sup = json::array(), rms = json::array();
  for (int s = 0; s < 4; ++s) {
    sup.push_back(json_number(r.species_sup[s]));
    rms.push_back(json_number(r.species_rms[s]));
  }
  return {{"sup", json_number(r.sup)},
          {"rms", json_number(r.rms)},
          {"species_sup", sup},
          {"species_rms", rms},
          {"grid_a", r.grid_a},
          {"grid_b", r.grid_b}};
}

}  // namespace broadwell
