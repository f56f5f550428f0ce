#pragma once

#include <cstdint>
#include <optional>

#include "entrobust/state.hpp"

namespace entrobust {

/// Smallest second singular value over all cuts: zero exactly when some cut
/// has Schmidt rank one.
double gme_gap(const PureState& state);

/// Largest second singular value over all cuts: zero exactly for full
/// products.
double sep_gap(const PureState& state);

enum class Objective { BreakGME, ReachFullSeparability };

struct SearchConfig {
  int k = 1;
  Objective objective = Objective::BreakGME;
  int restarts = 32;
  int max_iters = 2000;  // coordinate sweeps per restart
  std::uint64_t seed = 0;
  double success_threshold = 1e-8;
  // The base state must keep at least this weight, |lead| / |unnormalized
  // superposition|, so a search cannot succeed by scaling the base away.
  double min_lead_weight = 1e-3;
};

void validate(const SearchConfig& cfg);

struct SearchReport {
  double best_gap = 1.0;
  std::optional<SuperpositionPlan> best_plan;
  int best_restart = -1;
  long iterations_used = 0;
  bool succeeded = false;
};

/// Derivative-free search for k product states and coefficients that push the
/// chosen gap of the normalized superposition below `success_threshold`.
///
/// Each restart draws a seeded random start and runs coordinate descent with
/// a three-point quadratic fit along every coordinate, on the smooth
/// surrogate sum_{i>=2} sigma_i^2 (min over cuts for BreakGME, sum over cuts
/// for full separability). The reported gap is always the exact sigma_2
/// measure. Restarts run concurrently; the result is the smallest
/// (gap, restart index), so reports depend only on (base, cfg).
///
/// Throws BaseNotEntangled when the base is a full product.
SearchReport adversarial_search(const PureState& base, const SearchConfig& cfg);

}  // namespace entrobust
