// Model parameters shared by every module: the fractional order s (through
// the extension weight exponent a = 1-2s), the competition exponents and
// matrix, and the closed family of reaction terms.
#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fraclap {

enum class ReactionFamily { Zero, Constant, Logistic };

// One reaction term f_i.  The family value is forced to 0 whenever the
// density vector has Euclidean norm below cutoff_theta.
struct ReactionSpec {
  ReactionFamily family = ReactionFamily::Zero;
  double lambda = 0.0;        // CONSTANT value, or LOGISTIC rate
  double kappa = 0.0;         // LOGISTIC carrying capacity
  double cutoff_theta = 0.0;  // hard cutoff radius, >= 0

  static ReactionSpec zero() { return {}; }
  static ReactionSpec constant(double lambda, double theta = 0.0) {
    return {ReactionFamily::Constant, lambda, 0.0, theta};
  }
  static ReactionSpec logistic(double lambda, double kappa,
                               double theta = 0.0) {
    return {ReactionFamily::Logistic, lambda, kappa, theta};
  }
};

struct ProblemParams {
  double s = 0.5;   // fractional order, in (0,1)
  double a = 0.0;   // extension weight exponent, derived a = 1 - 2s
  int k = 1;        // number of densities
  double p = 1.0;   // self exponent in the competition term
  double q = 1.0;   // partner exponent (q = p is the Lotka-Volterra regime)
  double beta = 0.0;
  std::vector<double> interaction;      // k*k row-major, a_ij, zero diagonal
  std::vector<ReactionSpec> reactions;  // k entries

  static ProblemParams make(double s, int k, double p, double q, double beta);

  double aij(int i, int j) const { return interaction[i * k + j]; }
  void set_aij(int i, int j, double v) { interaction[i * k + j] = v; }

  // Throws std::invalid_argument on any violated invariant.
  void validate() const;
};

// f_i(x, t_1..t_k) for the reaction attached to component `own`.
double eval_reaction(const ReactionSpec& spec, double x,
                     std::span<const double> t, int own = 0);

// beta * t_i^p * sum_{j != i} a_ij t_j^q.
double competition_term(const ProblemParams& params, int i,
                        std::span<const double> t);

}  // namespace fraclap
