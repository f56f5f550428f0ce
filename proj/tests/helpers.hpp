#pragma once

#include <vector>

#include "entrobust/robustness.hpp"

namespace testing {

using namespace entrobust;

inline std::vector<cplx> amps_of(const PureState& s) { return {s.amps().begin(), s.amps().end()}; }

inline unsigned mask_of(const std::vector<int>& side) {
  unsigned m = 0;
  for (int p : side) m |= 1u << p;
  return m;
}

inline cplx random_coeff(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  return {g(rng), g(rng)};
}

/// lead*psi plus k random product terms with random complex coefficients.
inline PureState random_superposition(const PureState& psi, int k, Rng& rng) {
  std::vector<PlanTerm> terms;
  for (int j = 0; j < k; ++j) terms.push_back({random_coeff(rng), random_product(psi.dims(), rng)});
  cplx lead = random_coeff(rng);
  while (std::abs(lead) < 1e-3) lead = random_coeff(rng);
  return superpose(lead, psi, terms);
}

/// sum_i a_i |i...i> with random positive coefficients on `terms` levels.
inline PureState random_ghz_like(int parties, int dim, int terms, Rng& rng) {
  std::uniform_real_distribution<double> u(0.2, 1.0);
  CVector a(total_size(Dims(static_cast<std::size_t>(parties), dim)));
  for (int i = 0; i < terms; ++i) {
    std::size_t flat = 0;
    for (int p = 0; p < parties; ++p) flat = flat * static_cast<std::size_t>(dim) + static_cast<std::size_t>(i);
    a[flat] = u(rng);
  }
  return make_state(Dims(static_cast<std::size_t>(parties), dim), std::move(a));
}

/// A state with a product term from its own expansion cancelled: the hard
/// case for rank-drop arguments.
inline PureState cancel_one_term(const PureState& psi, Rng& rng) {
  std::vector<std::size_t> nz;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (std::abs(psi[i]) > 1e-12) nz.push_back(i);
  }
  const std::size_t pick = nz[std::uniform_int_distribution<std::size_t>(0, nz.size() - 1)(rng)];
  const auto idx = multi_index(psi.dims(), pick);
  std::vector<CVector> f;
  for (std::size_t p = 0; p < idx.size(); ++p) {
    CVector v(static_cast<std::size_t>(psi.dims()[p]));
    v[static_cast<std::size_t>(idx[p])] = 1.0;
    f.push_back(std::move(v));
  }
  const PlanTerm t{-psi[pick], product_state(std::move(f))};
  return superpose(1.0, psi, std::span<const PlanTerm>(&t, 1));
}

}  // namespace testing
