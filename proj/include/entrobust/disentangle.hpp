#pragma once

#include <vector>

#include "entrobust/robustness.hpp"

namespace entrobust {

/// One two-term merge: sqrt(p) (a0|00> + a1|11>) + sqrt(1-p) |alpha>|beta>
/// is a product state, where |alpha> = cos(alpha)|0> + e^{i theta} sin(alpha)|1>
/// and likewise for beta. The solver works with real angles (theta = delta = 0).
struct EliminationStep {
  double p = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double theta = 0.0;
  double delta = 0.0;
  ProductState product;           // the superposed |alpha>|beta>
  ProductState resulting_factor;  // the normalized product output
};

/// Orthogonality of |alpha>|beta> to a0|00> + a1|11>.
double orthogonality_residual(double a0, double a1, double alpha, double beta);
/// Determinant of the 2x2 coefficient matrix of the superposition divided by
/// its common scale; zero exactly when the result has Schmidt rank one.
double separability_residual(double a0, double a1, double p, double alpha, double beta);

/// Finds (p, alpha, beta) with both residuals zero and p in (0, 1).
///
/// alpha is scanned on a 10^4-point grid over (0, pi); beta follows from
/// tan(alpha) tan(beta) = -a0/a1 on the branch that keeps p positive, and p
/// is solved in closed form. Among the feasible grid points the step closest
/// to p = 1/2 is refined by bisection (or, when 1/2 is out of reach, the
/// largest p by ternary search) to 1e-12 in alpha.
///
/// Requires a0, a1 > 0 with a0^2 + a1^2 = 1. Throws MaximallyEntangledPair when
/// ||a0| - |a1|| <= 1e-8 and NoRootFound if the grid has no feasible point.
EliminationStep pairwise_eliminate(double a0, double a1);

/// r mutually orthogonal product states, each orthogonal to the bipartite
/// state, whose superposition with it is a product state. Throws NotBipartite
/// and RankTooLow (r < 2).
SuperpositionPlan lemma2_construction(const PureState& state, double tol = kDefaultTol);

/// r - 1 mutually orthogonal product states, each orthogonal to the bipartite
/// state of Schmidt rank r, that superpose with it to a product state.
///
/// In the Schmidt basis with D = diag(a), pick w = (1,...,1)/sqrt(r) and an
/// orthonormal frame x_1..x_{r-1} of w's complement. Setting
/// b_k = x_k.D^2 x_k / x_k.D^2 w, x_0 = w + sum_k b_k x_k and dual vectors
/// x~_k = x_k - b_k w gives D = x_0 (D w)^T + sum_k x_k (D x~_k)^T, and
/// every x_k (x) D x~_k is orthogonal to the state. The frame is rotated so that
/// every denominator equals |D^2 w - (w.D^2 w) w| / sqrt(r-1), which vanishes
/// only for equal coefficients. Throws NotBipartite, RankTooLow (r < 2) and
/// MaximallyEntangled (coefficient spread <= 1e-8).
SuperpositionPlan theorem4_construction(const PureState& state, double tol = kDefaultTol);

/// 2r - 1 product states orthogonal to sum_i a_i |iii> (computational basis,
/// r >= 3 nonzero terms) that superpose with it to a full product: r states
/// |ii> (x) uniform-over-others, then the bipartite construction on
/// sum_i a_i |ii> tensored with the uniform vector on the support. Throws
/// NotGHZForm, RankTooLow and MaximallyEntangled.
SuperpositionPlan theorem5_construction(const PureState& state, double tol = kDefaultTol);

struct PlanVerification {
  Classification classification;
  PureState state;                 // normalized superposition
  Eigen::MatrixXcd gram;           // <p_i|p_j> over the plan's product states
  std::vector<cplx> base_overlaps; // <base|p_i>
};

/// Applies the plan and classifies the result. Throws CancellationToZero.
PlanVerification verify_plan(const PureState& base, const SuperpositionPlan& plan,
                             double tol = kDefaultTol);

}  // namespace entrobust
