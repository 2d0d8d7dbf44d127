#include "fraclap/params.hpp"

#include <cmath>

namespace fraclap {

ProblemParams ProblemParams::make(double s, int k, double p, double q,
                                  double beta) {
  ProblemParams out;
  out.s = s;
  out.a = 1.0 - 2.0 * s;
  out.k = k;
  out.p = p;
  out.q = q;
  out.beta = beta;
  out.interaction.assign(static_cast<size_t>(k) * k, 0.0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j) out.interaction[i * k + j] = 1.0;
  out.reactions.assign(k, ReactionSpec::zero());
  out.validate();
  return out;
}

void ProblemParams::validate() const {
  if (!(s > 0.0 && s < 1.0))
    throw std::invalid_argument("ProblemParams: s must be in (0,1)");
  if (std::fabs(a - (1.0 - 2.0 * s)) > 1e-14)
    throw std::invalid_argument("ProblemParams: a != 1-2s");
  if (k < 1) throw std::invalid_argument("ProblemParams: k >= 1 required");
  if (!(p > 0.0) || !(q > 0.0))
    throw std::invalid_argument("ProblemParams: exponents must be positive");
  if (!(beta >= 0.0))
    throw std::invalid_argument("ProblemParams: beta must be >= 0");
  if (interaction.size() != static_cast<size_t>(k) * k)
    throw std::invalid_argument("ProblemParams: interaction must be k x k");
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const double v = interaction[i * k + j];
      if (i == j && v != 0.0)
        throw std::invalid_argument("ProblemParams: a_ii must be 0");
      if (i != j && !(v > 0.0))
        throw std::invalid_argument(
            "ProblemParams: off-diagonal a_ij must be positive");
    }
  }
  if (reactions.size() != static_cast<size_t>(k))
    throw std::invalid_argument("ProblemParams: need one reaction per density");
  for (const auto& r : reactions)
    if (!(r.cutoff_theta >= 0.0))
      throw std::invalid_argument("ReactionSpec: cutoff_theta >= 0 required");
}

double eval_reaction(const ReactionSpec& spec, double /*x*/,
                     std::span<const double> t, int own) {
  if (spec.family == ReactionFamily::Zero) return 0.0;
  if (spec.cutoff_theta > 0.0) {
    double norm2 = 0.0;
    for (double v : t) norm2 += v * v;
    if (norm2 < spec.cutoff_theta * spec.cutoff_theta) return 0.0;
  }
  switch (spec.family) {
    case ReactionFamily::Constant:
      return spec.lambda;
    case ReactionFamily::Logistic: {
      const double ti = t[own];
      return spec.lambda * ti * (spec.kappa - ti);
    }
    default:
      return 0.0;
  }
}

double competition_term(const ProblemParams& params, int i,
                        std::span<const double> t) {
  if (params.beta == 0.0) return 0.0;
  double partners = 0.0;
  for (int j = 0; j < params.k; ++j) {
    if (j == i) continue;
    const double tj = t[j];
    if (tj > 0.0) partners += params.aij(i, j) * std::pow(tj, params.q);
  }
  if (partners == 0.0) return 0.0;
  const double ti = t[i];
  if (ti <= 0.0) return 0.0;
  return params.beta * std::pow(ti, params.p) * partners;
}

}  // namespace fraclap
