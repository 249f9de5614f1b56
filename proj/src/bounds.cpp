#include "broadwell/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "broadwell/errors.hpp"

namespace broadwell {

namespace {

double data_weight(DataFace face, int species, const ModelParams& params) {
  const double cc = params.c() * params.cos_theta();
  const double cs = params.c() * params.sin_theta();
  const double w_cos = std::max(1.0, 1.0 / cc + params.sin_theta() / params.cos_theta());
  const double w_sin = std::max(1.0, 1.0 / cs + params.cos_theta() / params.sin_theta());
  switch (face) {
    case DataFace::Initial:
      return std::max(1.0, cc + cs);
    case DataFace::XInflow:
      return (species == 1 || species == 4) ? w_cos : w_sin;
    default:
      return (species == 1 || species == 4) ? w_sin : w_cos;
  }
}

std::array<std::pair<std::string, double>, 12> weighted_terms(const BoundaryData& data,
                                                              const ModelParams& params,
                                                              int samples) {
  std::array<std::pair<std::string, double>, 12> terms;
  std::size_t slot = 0;
  for (int s = 1; s <= 4; ++s) {
    for (DataFace f : {DataFace::Initial, DataFace::XInflow, DataFace::YInflow}) {
      auto g = [&](double a, double b) { return data.value(f, s, a, b); };
      auto ga = [&](double a, double b) { return data.gradient(f, s, a, b)[0]; };
      auto gb = [&](double a, double b) { return data.gradient(f, s, a, b)[1]; };
      const double norm = c1_norm(g, ga, gb, data.rect(f), samples);
      terms[slot++] = {data.sampler(f, s).name, data_weight(f, s, params) * norm};
    }
  }
  return terms;
}

}  // namespace

double compute_beta_T(const ModelParams& params, const SpaceTimeBox& box) {
  const double T = box.t_end();
  const double c = params.c();
  return std::max(1.0 + 2.0 * T * (c * params.cos_theta() + c * params.sin_theta()), 2.0 * T);
}

double compute_beta(const ModelParams& params, const SpaceTimeBox& box) {
  const double ic = 1.0 / (params.c() * params.cos_theta());
  const double is = 1.0 / (params.c() * params.sin_theta());
  const double tan = params.sin_theta() / params.cos_theta();
  const double cot = params.cos_theta() / params.sin_theta();
  const double inner = std::max({ic, is, ic * (ic + tan), is * (is + cot)});
  return std::max(ic, is) + 2.0 * inner * std::max(box.width(), box.height());
}

double compute_alpha(const ModelParams& params, const SpaceTimeBox& box) {
  const double cc = params.c() * params.cos_theta();
  const double cs = params.c() * params.sin_theta();
  return std::max({box.width() / cc, box.height() / cs, box.width() / cs, box.height() / cc});
}

double compute_p(const ModelParams& params, const SpaceTimeBox& box) {
  return 4.0 * params.c() * params.S() *
         std::max(compute_beta_T(params, box), compute_beta(params, box));
}

double compute_p_prime(const ModelParams& params, const SpaceTimeBox& box) {
  return 4.0 * params.c() * params.S() * std::max(box.t_end(), compute_alpha(params, box));
}

double compute_q(const BoundaryData& data, const ModelParams& params, int samples) {
  double q = 0.0;
  for (const auto& term : weighted_terms(data, params, samples)) q = std::max(q, term.second);
  return q;
}

BoundCertificate certify(const ModelParams& params, const BoundaryData& data, int samples) {
  const SpaceTimeBox& box = data.box();
  BoundCertificate c;
  c.beta_T = compute_beta_T(params, box);
  c.beta = compute_beta(params, box);
  c.alpha = compute_alpha(params, box);
  c.p = compute_p(params, box);
  c.p_prime = compute_p_prime(params, box);
  c.ratio = std::max(box.t_end(), c.alpha) / std::max(c.beta_T, c.beta);
  if (c.ratio > 0.5) throw InternalError("certificate: p'/p exceeds 1/2");
  c.c1_samples = samples;
  c.q_terms = weighted_terms(data, params, samples);
  for (const auto& term : c.q_terms) c.q = std::max(c.q, term.second);
  c.pq = c.p * c.q;
  c.admissible = c.pq <= 0.25;
  if (c.admissible) {
    const double root = std::sqrt(1.0 - 4.0 * c.pq);
    c.r_min = 2.0 * c.q / (1.0 + root);
    c.r_max = c.p > 0.0 ? (1.0 + root) / (2.0 * c.p) : std::numeric_limits<double>::infinity();
  } else {
    c.r_min = c.r_max = std::numeric_limits<double>::quiet_NaN();
  }
  return c;
}

}  // namespace broadwell
