#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "entrobust/robustness.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace entrobust;
using testing::amps_of;

namespace {

const CVector kPlus = {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
const CVector kB = {2.0 / 3.0, std::sqrt(5.0) / 3.0};

PureState plus_bell() { return tensor(make_state({2}, kPlus), ghz_state(2, 2)); }

/// Reorders parties: party i of the result is party perm[i] of `s`.
PureState permute(const PureState& s, const std::vector<int>& perm) {
  Dims dims;
  for (int p : perm) dims.push_back(s.dims()[p]);
  CVector out(s.size());
  for (std::size_t flat = 0; flat < s.size(); ++flat) {
    const auto idx = multi_index(s.dims(), flat);
    std::vector<int> j;
    for (int p : perm) j.push_back(idx[p]);
    out[flat_index(dims, j)] = s[flat];
  }
  return make_state(std::move(dims), std::move(out));
}

/// Random state with a random product structure: the parties are grouped
/// into blocks, each block gets a random (possibly entangled) state.
PureState random_structured(int n, int d, Rng& rng) {
  std::uniform_int_distribution<int> blocks_dist(1, n);
  const int blocks = blocks_dist(rng);
  std::vector<int> sizes(static_cast<std::size_t>(blocks), 1);
  for (int extra = n - blocks; extra > 0; --extra) {
    ++sizes[std::uniform_int_distribution<std::size_t>(0, sizes.size() - 1)(rng)];
  }
  PureState s = random_state(Dims(static_cast<std::size_t>(sizes[0]), d), rng);
  for (std::size_t b = 1; b < sizes.size(); ++b) {
    s = tensor(s, random_state(Dims(static_cast<std::size_t>(sizes[b]), d), rng));
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return permute(s, perm);
}

Kind expected_kind(oracle::Label l) {
  switch (l) {
    case oracle::Label::Product: return Kind::FullySeparableProduct;
    case oracle::Label::Biseparable: return Kind::BiseparableNotGME;
    case oracle::Label::Genuine: return Kind::GME;
  }
  return Kind::GME;
}

/// GHZ-like state with random levels, rotated by random local unitaries.
PureState rotated_ghz_like(int n, int d, Rng& rng) {
  const PureState g = testing::random_ghz_like(n, d, d, rng);
  std::vector<std::vector<cplx>> us;
  for (int p = 0; p < n; ++p) us.push_back(random_unitary(d, rng));
  return apply_local(g, us);
}

/// Superposes k product states, alternating random ones with ones aimed at
/// cancelling terms of the base.
PureState adversarial_superposition(const PureState& psi, int k, int trial, Rng& rng) {
  if (trial % 2 == 0) return testing::random_superposition(psi, k, rng);
  PureState s = psi;
  for (int j = 0; j < k; ++j) s = testing::cancel_one_term(s, rng);
  return s;
}

}  // namespace

TEST_CASE("classify examples") {
  const auto ghz = classify(ghz_state(3, 2));
  CHECK(ghz.kind == Kind::GME);
  CHECK(ghz.witness.size() == 1);

  const auto bis = classify(plus_bell());
  CHECK(bis.kind == Kind::BiseparableNotGME);
  CHECK(bis.witness == std::vector<Bipartition>{{{0}, {1, 2}}});

  const auto prod = classify(basis_state({2, 2, 2}, std::vector<int>{1, 1, 1}));
  CHECK(prod.kind == Kind::FullySeparableProduct);
  CHECK(prod.witness.empty());

  CHECK(classify(make_state({2, 2}, {1, 0, 0, 1})).kind == Kind::Entangled);
  CHECK(classify(make_state({2, 2}, {1, 1, 1, 1})).kind == Kind::Separable);
  CHECK(classify(w_state(3)).kind == Kind::GME);
}

TEST_CASE("kind strings round-trip") {
  for (Kind k : {Kind::FullySeparableProduct, Kind::BiseparableNotGME, Kind::GME, Kind::Separable, Kind::Entangled}) {
    CHECK(kind_from_string(to_string(k)) == k);
  }
  CHECK_THROWS_AS(kind_from_string("Bogus"), Error);
  CHECK(is_entangled(Kind::Entangled));
  CHECK_FALSE(is_entangled(Kind::Separable));
  CHECK_FALSE(is_entangled(Kind::FullySeparableProduct));
}

TEST_CASE("classify agrees with brute-force factor search") {
  Rng rng(41);
  int samples = 0;
  for (int n = 2; n <= 4; ++n) {
    for (int d = 2; d <= 3; ++d) {
      for (int t = 0; t < 100; ++t, ++samples) {
        const PureState s = random_structured(n, d, rng);
        const auto c = classify(s);
        const auto ref = oracle::label(amps_of(s), s.dims());
        if (n == 2) {
          CHECK(c.kind == (ref == oracle::Label::Product ? Kind::Separable : Kind::Entangled));
        } else {
          CHECK(c.kind == expected_kind(ref));
        }
      }
    }
  }
  CHECK(samples >= 500);
}

TEST_CASE("product_factors and is_triple_separable") {
  const PureState pbp = product_state({kPlus, kB, kPlus}).to_pure();
  CHECK(is_triple_separable(pbp));
  CHECK(product_factors(pbp).size() == 3);

  const auto f = product_factors(plus_bell());
  REQUIRE(f.size() == 2);
  CHECK(f[0].parties == std::vector<int>{0});
  CHECK(f[1].parties == std::vector<int>{1, 2});
  CHECK_FALSE(is_triple_separable(plus_bell()));
  CHECK_FALSE(is_triple_separable(ghz_state(3, 2)));
  CHECK_THROWS_AS(is_triple_separable(make_state({2, 2}, {1, 0, 0, 1})), Error);

  // Bell pairs on {1,3} and {2,4}: two factors, not triple separable
  const PureState pairs = permute(tensor(ghz_state(2, 2), ghz_state(2, 3)), {0, 2, 1, 3});
  const auto g = product_factors(pairs);
  REQUIRE(g.size() == 2);
  CHECK(g[0].parties == std::vector<int>{0, 2});
  CHECK(g[1].parties == std::vector<int>{1, 3});
  CHECK_FALSE(is_triple_separable(pairs));

  Rng rng(42);
  for (int t = 0; t < 200; ++t) {
    const int n = 3 + t % 2;
    const PureState s = random_structured(n, 2 + t % 2, rng);
    CHECK(is_triple_separable(s) == oracle::three_way_product(amps_of(s), s.dims()));
  }
}

TEST_CASE("certify examples") {
  const auto g = certify(ghz_state(3, 4));
  CHECK(g.gme_budget == 2);
  CHECK(g.insep_budget == 2);
  CHECK(g.triple_budget == 2);
  CHECK(g.classification == Kind::GME);
  CHECK_FALSE(g.marginal);

  const auto p2 = certify(make_state({2, 2, 2}, {1, 0, 0, 0, 1, 0, 0, 1}));
  CHECK(p2.gme_budget == 0);
  CHECK(p2.insep_budget == 0);
  CHECK(p2.triple_budget == 0);

  const double s = std::sqrt(149.0);
  const auto e5 = certify(make_state({3, 3}, {3 / s, 0, 0, 0, 6 / s, 0, 0, 0, 2 * std::sqrt(26.0) / s}));
  CHECK(e5.insep_budget == 1);
  CHECK(e5.classification == Kind::Entangled);

  const auto prod = certify(basis_state({2, 2, 2}, std::vector<int>{0, 1, 0}));
  CHECK(prod.gme_budget == 0);
  CHECK(prod.insep_budget == 0);
  CHECK(prod.triple_budget == 0);
  CHECK_FALSE(prod.note.empty());
}

TEST_CASE("budget invariants") {
  Rng rng(43);
  for (int t = 0; t < 200; ++t) {
    const int n = 3 + t % 2, d = 2 + t % 3;
    if (n == 4 && d == 4) continue;
    PureState s = t % 2 ? random_state(Dims(static_cast<std::size_t>(n), d), rng) : rotated_ghz_like(n, d, rng);
    if (t % 5 == 0) s = random_structured(n, d, rng);
    const auto c = certify(s);
    CHECK(c.gme_budget <= c.triple_budget);
    CHECK((c.gme_budget == 0) == (c.profile.r1_min <= 2 || !is_entangled(c.classification)));
    CHECK((c.insep_budget == 0) == (c.profile.r1_max <= 2 || !is_entangled(c.classification)));

    std::vector<std::vector<cplx>> us;
    for (int p = 0; p < n; ++p) us.push_back(random_unitary(d, rng));
    const auto u = certify(apply_local(s, us));
    CHECK(u.gme_budget == c.gme_budget);
    CHECK(u.insep_budget == c.insep_budget);
    CHECK(u.triple_budget == c.triple_budget);
  }
}

TEST_CASE("GME survives r1_min - 2 product states") {
  Rng rng(44);
  int trials = 0, violations = 0;
  const std::vector<std::pair<int, int>> shapes = {{3, 3}, {3, 4}, {4, 3}};
  while (trials < 1000) {
    const auto [n, d] = shapes[static_cast<std::size_t>(trials) % shapes.size()];
    const PureState psi = trials % 3 == 0 ? rotated_ghz_like(n, d, rng)
                          : trials % 3 == 1 ? testing::random_ghz_like(n, d, d, rng)
                                            : random_state(Dims(static_cast<std::size_t>(n), d), rng);
    const int r = rank_profile(psi).r1_min;
    REQUIRE(r >= 3);
    const int k = 1 + trials % (r - 2);
    const PureState out = adversarial_superposition(psi, k, trials, rng);
    if (classify(out).kind != Kind::GME) ++violations;
    ++trials;
  }
  CHECK(violations == 0);
}

TEST_CASE("entanglement survives r1_max - 2 product states") {
  Rng rng(45);
  int trials = 0, violations = 0;
  const std::vector<std::pair<int, int>> shapes = {{2, 3}, {2, 4}, {3, 3}, {3, 4}};
  while (trials < 1000) {
    const auto [n, d] = shapes[static_cast<std::size_t>(trials) % shapes.size()];
    const PureState psi = trials % 3 == 0 ? rotated_ghz_like(n, d, rng)
                          : trials % 3 == 1 ? testing::random_ghz_like(n, d, d, rng)
                                            : random_state(Dims(static_cast<std::size_t>(n), d), rng);
    const int r = rank_profile(psi).r1_max;
    REQUIRE(r >= 3);
    const int k = 1 + trials % (r - 2);
    const PureState out = adversarial_superposition(psi, k, trials, rng);
    if (!is_entangled(classify(out).kind)) ++violations;
    ++trials;
  }
  CHECK(violations == 0);
}

TEST_CASE("no triple separability within r2_min - 2 product states") {
  Rng rng(46);
  int trials = 0, violations = 0;
  const std::vector<std::pair<int, int>> shapes = {{3, 3}, {3, 4}, {4, 3}};
  while (trials < 1000) {
    const auto [n, d] = shapes[static_cast<std::size_t>(trials) % shapes.size()];
    const PureState psi = trials % 3 == 0 ? rotated_ghz_like(n, d, rng)
                          : trials % 3 == 1 ? testing::random_ghz_like(n, d, d, rng)
                                            : random_state(Dims(static_cast<std::size_t>(n), d), rng);
    const int r = *full_profile(psi).r2_min;
    REQUIRE(r >= 3);
    const int k = 1 + trials % (r - 2);
    const PureState out = adversarial_superposition(psi, k, trials, rng);
    if (is_triple_separable(out)) ++violations;
    if (n == 3 && oracle::three_way_product(amps_of(out), out.dims())) ++violations;
    ++trials;
  }
  CHECK(violations == 0);
}
