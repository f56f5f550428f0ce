#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "entrobust/partitions.hpp"
#include "entrobust/state.hpp"

namespace entrobust {

inline constexpr double kDefaultTol = 1e-10;

/// Schmidt form of a state across one bipartition,
/// |psi> = sum_i coeffs[i] |left_i>|right_i>.
///
/// Coefficients are real, nonnegative and descending; all min(rows, cols)
/// of them are kept, `rank` counts those above the numerical threshold.
struct SchmidtDecomposition {
  Bipartition part;
  std::vector<double> coeffs;
  std::vector<CVector> left_vecs;
  std::vector<CVector> right_vecs;
  int rank = 0;
};

/// Number of singular values with s > tol * s[0] and s > 1e-12. `sv` must be
/// sorted descending.
int numerical_rank(std::span<const double> sv, double tol);

/// True when some singular value sits within a factor 10 of the rank
/// threshold, so the rank decision is fragile.
bool near_threshold(std::span<const double> sv, double tol);

/// Singular values of the bipartition matrix, descending.
std::vector<double> singular_values(const PureState& state, const Bipartition& part);

SchmidtDecomposition schmidt_decompose(const PureState& state, const Bipartition& part,
                                       double tol = kDefaultTol);

/// Rebuilds the state vector from a decomposition (all terms, not only the
/// first `rank`).
CVector reconstruct(const SchmidtDecomposition& sd, const Dims& dims);

struct RankProfile {
  std::vector<std::pair<Bipartition, int>> ranks;  // unordered bipartitions
  int r1_min = 0;
  int r1_max = 0;
  std::optional<int> r2_min;
  // n == 2: the nested split never exists and r2_min falls back to r1_min.
  bool r2_degenerate_order = false;
  // Some left Schmidt basis used by r2_min had repeated coefficients, so the
  // basis (and possibly the value) depends on the SVD backend's choice.
  bool r2_degenerate_schmidt = false;
  bool marginal = false;
  double tol = kDefaultTol;

  int rank_of(const Bipartition& part) const;
};

/// First-order profile: ranks over all unordered bipartitions and their
/// min/max. r2_min is left unset. Throws TooFewParties for n < 2.
RankProfile rank_profile(const PureState& state, double tol = kDefaultTol);

struct SecondOrderRank {
  int value = 0;
  bool degenerate_order = false;
  bool degenerate_schmidt = false;
  Bipartition argmin;
};

/// Second-order minimal Schmidt rank.
///
/// For every ordered bipartition (X1, X2) the state is Schmidt-decomposed;
/// each kept left vector |psi_i(X1)> contributes its smallest Schmidt rank
/// over the splits of X1, or 1 when X1 is a single party. The sum over i is
/// minimized over ordered bipartitions. For n == 2 the value is r1_min with
/// `degenerate_order` set.
SecondOrderRank r2_min(const PureState& state, double tol = kDefaultTol);

/// rank_profile with r2_min filled in.
RankProfile full_profile(const PureState& state, double tol = kDefaultTol);

/// The amplitudes of `vec` viewed as a state on the parties `subset` (whose
/// dims come from `dims`).
PureState substate(const CVector& vec, const Dims& dims, const std::vector<int>& subset);

/// Maps a bipartition with global labels inside `subset` onto local positions
/// 0..|subset|-1.
Bipartition relabel(const Bipartition& part, const std::vector<int>& subset);

}  // namespace entrobust
