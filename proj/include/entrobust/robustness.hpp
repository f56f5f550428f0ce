#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "entrobust/schmidt.hpp"

namespace entrobust {

enum class Kind {
  // n >= 3
  FullySeparableProduct,
  BiseparableNotGME,
  GME,
  // n == 2
  Separable,
  Entangled,
};

std::string_view to_string(Kind kind);
Kind kind_from_string(std::string_view s);

/// Entangled in the weakest sense: not a full product.
bool is_entangled(Kind kind);

struct Classification {
  Kind kind = Kind::Separable;
  // GME / Entangled: the cut attaining r1_min. BiseparableNotGME: every
  // rank-1 cut. Empty for full products.
  std::vector<Bipartition> witness;
  RankProfile profile;
};

/// Classification from the first-order rank profile. For n >= 3 a
/// full product is confirmed by factor extraction.
Classification classify(const PureState& state, double tol = kDefaultTol);

/// One tensor factor of a state: the parties it lives on plus its normalized
/// amplitudes.
struct Factor {
  std::vector<int> parties;
  CVector amps;
};

/// Finest tensor-product factorization, found by repeatedly splitting off
/// rank-1 cuts. Factors are ordered by their lowest party.
std::vector<Factor> product_factors(const PureState& state, double tol = kDefaultTol);

/// Factors into at least three tensor factors under some grouping of the
/// parties. Throws TooFewParties for n < 3.
bool is_triple_separable(const PureState& state, double tol = kDefaultTol);

struct RobustnessCertificate {
  // Number of product states that can be superposed without losing GME,
  // entanglement, or non-triple-separability respectively.
  int gme_budget = 0;
  int insep_budget = 0;
  int triple_budget = 0;
  Kind classification = Kind::Separable;
  RankProfile profile;
  bool marginal = false;
  std::string note;
};

RobustnessCertificate certify(const PureState& state, double tol = kDefaultTol);

}  // namespace entrobust
