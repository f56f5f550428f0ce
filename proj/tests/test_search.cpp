#include <doctest.h>

#include <cmath>

#include "entrobust/fixtures.hpp"
#include "entrobust/search.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace entrobust;

namespace {

PureState plus_bell() { return tensor(make_state({2}, {1, 1}), ghz_state(2, 2)); }

void check_report(const PureState& base, const SearchConfig& cfg, const SearchReport& rep) {
  CHECK(rep.succeeded == (rep.best_gap < cfg.success_threshold));
  CHECK(rep.best_plan.has_value() == rep.succeeded);
  CHECK(rep.best_restart >= 0);
  CHECK(rep.best_restart < cfg.restarts);
  if (!rep.best_plan) return;
  const PureState out = apply_plan(base, *rep.best_plan);
  const double gap = cfg.objective == Objective::BreakGME ? gme_gap(out) : sep_gap(out);
  CHECK(std::abs(gap - rep.best_gap) < 1e-12);
  CHECK(std::abs(rep.best_plan->lead) > 0.0);
}

}  // namespace

TEST_CASE("gap examples") {
  CHECK(gme_gap(ghz_state(3, 2)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(gme_gap(plus_bell()) < 1e-15);
  const PureState w = w_state(3);
  // reference: smallest second eigenvalue of the reduced states
  double ref = 1.0;
  for (unsigned m : oracle::cuts(3)) ref = std::min(ref, std::sqrt(oracle::spectrum(testing::amps_of(w), w.dims(), m)[1]));
  CHECK(ref == doctest::Approx(std::sqrt(1.0 / 3.0)));
  CHECK(gme_gap(w) == doctest::Approx(ref));

  CHECK(sep_gap(basis_state({2, 2, 2}, std::vector<int>{1, 1, 1})) < 1e-15);
  CHECK(sep_gap(ghz_state(3, 2)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(sep_gap(plus_bell()) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("gme_gap is positive exactly for GME states") {
  Rng rng(61);
  int gme = 0;
  for (int t = 0; t < 500; ++t) {
    const int n = 3 + t % 2;
    const Dims dims(static_cast<std::size_t>(n), 2 + t % 2);
    PureState s = random_state(dims, rng);
    if (t % 3 == 1) s = tensor(random_state({dims[0]}, rng), random_state(Dims(dims.begin() + 1, dims.end()), rng));
    if (t % 3 == 2) s = random_product(dims, rng).to_pure();
    const bool is_gme = classify(s).kind == Kind::GME;
    gme += is_gme;
    CHECK((gme_gap(s) > kDefaultTol) == is_gme);
    CHECK((sep_gap(s) > kDefaultTol) == (classify(s).kind != Kind::FullySeparableProduct));
  }
  CHECK(gme > 100);
}

TEST_CASE("config validation") {
  const PureState g = ghz_state(3, 2);
  SearchConfig cfg;
  cfg.k = 0;
  CHECK_THROWS_AS(adversarial_search(g, cfg), Error);
  cfg = {};
  cfg.restarts = 0;
  CHECK_THROWS_AS(adversarial_search(g, cfg), Error);
  cfg = {};
  cfg.success_threshold = 1.0;
  CHECK_THROWS_AS(adversarial_search(g, cfg), Error);
  cfg = {};
  cfg.success_threshold = 0.0;
  CHECK_THROWS_AS(validate(cfg), Error);
  try {
    adversarial_search(basis_state({2, 2, 2}, std::vector<int>{0, 0, 0}), SearchConfig{});
    FAIL("expected BaseNotEntangled");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BaseNotEntangled);
  }
}

TEST_CASE("search breaks GME of the three-term qubit state") {
  const PureState psi2 = fixtures::psi2();
  SearchConfig cfg;
  cfg.k = 1;
  const auto rep = adversarial_search(psi2, cfg);
  CHECK(rep.succeeded);
  CHECK(rep.best_gap < 1e-8);
  check_report(psi2, cfg, rep);
  CHECK(classify(apply_plan(psi2, *rep.best_plan), 1e-6).kind != Kind::GME);
}

TEST_CASE("search reaches a full product from psi3 with one term") {
  const PureState psi3 = fixtures::psi3();
  SearchConfig cfg;
  cfg.objective = Objective::ReachFullSeparability;
  const auto rep = adversarial_search(psi3, cfg);
  CHECK(rep.succeeded);
  check_report(psi3, cfg, rep);
}

TEST_CASE("search cannot beat the rank budgets") {
  Rng rng(62);
  SearchConfig cfg;
  cfg.restarts = 8;
  cfg.max_iters = 400;
  for (int t = 0; t < 6; ++t) {
    cfg.seed = static_cast<std::uint64_t>(t);
    const PureState base = t % 2 ? random_state({3, 3, 3}, rng) : testing::random_ghz_like(3, 4, 4, rng);
    const auto prof = rank_profile(base);
    cfg.k = 1;
    cfg.objective = Objective::BreakGME;
    REQUIRE(cfg.k <= prof.r1_min - 2);
    auto rep = adversarial_search(base, cfg);
    CHECK_FALSE(rep.succeeded);
    check_report(base, cfg, rep);

    cfg.objective = Objective::ReachFullSeparability;
    REQUIRE(cfg.k <= prof.r1_max - 2);
    rep = adversarial_search(base, cfg);
    CHECK_FALSE(rep.succeeded);
  }
}

TEST_CASE("search is deterministic") {
  const PureState base = ghz_state(3, 3);
  SearchConfig cfg;
  cfg.restarts = 6;
  cfg.max_iters = 200;
  cfg.seed = 0x1234567890abcdefULL;
  const auto a = adversarial_search(base, cfg);
  const auto b = adversarial_search(base, cfg);
  CHECK(a.best_gap == b.best_gap);
  CHECK(a.best_restart == b.best_restart);
  CHECK(a.iterations_used == b.iterations_used);

  const PureState psi2 = fixtures::psi2();
  SearchConfig c2;
  c2.seed = 99;
  const auto x = adversarial_search(psi2, c2);
  const auto y = adversarial_search(psi2, c2);
  REQUIRE(x.best_plan);
  REQUIRE(y.best_plan);
  CHECK(x.best_plan->lead == y.best_plan->lead);
  for (std::size_t i = 0; i < x.best_plan->terms.size(); ++i) {
    CHECK(x.best_plan->terms[i].coeff == y.best_plan->terms[i].coeff);
    CHECK(x.best_plan->terms[i].state.factors() == y.best_plan->terms[i].state.factors());
  }

  c2.seed = 100;
  const auto z = adversarial_search(psi2, c2);
  CHECK(z.succeeded);
}
