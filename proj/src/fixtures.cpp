#include "entrobust/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace entrobust::fixtures {

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt5 = std::sqrt(5.0);

CVector basis(int i, int dim) {
  CVector v(static_cast<std::size_t>(dim));
  v[static_cast<std::size_t>(i)] = 1.0;
  return v;
}

CVector add(const CVector& a, const CVector& b, cplx ca = 1.0, cplx cb = 1.0) {
  CVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ca * a[i] + cb * b[i];
  return out;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) out.push_back(x * y);
  }
  return out;
}

CVector extend(const CVector& v, int dim) {
  CVector out(v);
  out.resize(static_cast<std::size_t>(dim));
  return out;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

Check expect_eq(std::string name, long long expected, long long actual) {
  return {std::move(name), std::to_string(expected), std::to_string(actual), expected == actual};
}

Check expect_kind(std::string name, Kind expected, Kind actual) {
  return {std::move(name), std::string(to_string(expected)), std::string(to_string(actual)), expected == actual};
}

Check expect_at_least(std::string name, double bound, double actual) {
  return {std::move(name), ">= " + fmt(bound), fmt(actual), actual >= bound};
}

Check expect_at_most(std::string name, double bound, double actual) {
  return {std::move(name), "<= " + fmt(bound), fmt(actual), actual <= bound};
}

Check expect_true(std::string name, bool actual) {
  return {std::move(name), "true", actual ? "true" : "false", actual};
}

// Runs `body`, turning an escaping exception into a failed check.
template <typename F>
FixtureResult guarded(std::string name, std::string description, F&& body) {
  FixtureResult r{std::move(name), std::move(description), {}};
  try {
    body(r.checks);
  } catch (const std::exception& e) {
    r.checks.push_back({"no exception", "none", e.what(), false});
  }
  return r;
}

}  // namespace

bool FixtureResult::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

PureState product_of(const std::vector<CVector>& factors) { return product_state(factors).to_pure(); }

PureState psi_plus() { return ghz_state(3, 2); }

PureState psi2() {
  CVector a(8);
  a[0b000] = a[0b100] = a[0b111] = 1.0 / std::sqrt(3.0);
  return make_state({2, 2, 2}, std::move(a));
}

CVector ket_plus() { return {1.0 / kSqrt2, 1.0 / kSqrt2}; }

CVector ket_b() { return {2.0 / 3.0, kSqrt5 / 3.0}; }

PureState psi3() {
  const CVector k0 = basis(0, 2), k1 = basis(1, 2);
  CVector a(8);
  const auto t1 = kron(kron(k0, k0), k1);
  const auto t2 = kron(kron(k0, k1), ket_plus());
  const auto t3 = kron(kron(k1, ket_b()), ket_plus());
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = kSqrt2 / 4.0 * t1[i] + kSqrt5 / 4.0 * t2[i] + 3.0 / 4.0 * t3[i];
  }
  return make_state({2, 2, 2}, std::move(a));
}

PureState example5_state() {
  const double s = std::sqrt(149.0);
  CVector a(9);
  a[0] = 3.0 / s;
  a[4] = 6.0 / s;
  a[8] = 2.0 * std::sqrt(26.0) / s;
  return make_state({3, 3}, std::move(a));
}

namespace {

CVector alpha1() { return {-1.0 / std::sqrt(65.0), 8.0 / std::sqrt(65.0), 0.0}; }
CVector plus3() { return extend(ket_plus(), 3); }

}  // namespace

SuperpositionPlan example5_plan() {
  const CVector e2 = basis(2, 3);
  const CVector p1a = {-1.0 / kSqrt5, 2.0 / kSqrt5, 0.0};
  const CVector p1b = {4.0 / std::sqrt(17.0), 1.0 / std::sqrt(17.0), 0.0};
  const CVector p2a = add(alpha1(), e2, 1.0 / kSqrt5, 2.0 / kSqrt5);
  const CVector p2b = add(plus3(), e2, 4.0 / std::sqrt(21.0), -kSqrt5 / std::sqrt(21.0));

  SuperpositionPlan plan;
  plan.lead = std::sqrt(149.0 / (178.0 * 78.0));
  plan.terms.push_back({std::sqrt(85.0 / (178.0 * 78.0)), product_state({p1a, p1b})});
  plan.terms.push_back({std::sqrt(175.0 / 178.0), product_state({p2a, p2b})});
  return plan;
}

PureState example5_target() {
  const CVector e2 = basis(2, 3);
  return product_of({add(alpha1(), e2, 5.0 / std::sqrt(89.0), 8.0 / std::sqrt(89.0)),
                     add(plus3(), e2, kSqrt5 / std::sqrt(6.0), -1.0 / std::sqrt(6.0))});
}

std::vector<FixtureResult> verify_all(double tol) {
  std::vector<FixtureResult> out;
  const CVector k0 = basis(0, 2), k1 = basis(1, 2);

  out.push_back(guarded("intro", "GHZ state superposed with |000> and with |011>", [&](auto& c) {
    const PureState ghz = psi_plus();
    c.push_back(expect_kind("classify(psi+)", Kind::GME, classify(ghz, tol).kind));
    const PlanTerm minus000{-1.0, product_state({k0, k0, k0})};
    const PureState s = superpose(kSqrt2, ghz, std::span<const PlanTerm>(&minus000, 1));
    c.push_back(expect_kind("classify(sqrt2 psi+ - |000>)", Kind::FullySeparableProduct, classify(s, tol).kind));
    c.push_back(expect_at_least("fidelity with |111>", 1.0 - 1e-12,
                                fidelity(s, basis_state({2, 2, 2}, std::vector<int>{1, 1, 1}))));
    const PlanTerm plus011{0.5, product_state({k0, k1, k1})};
    const PureState g = superpose(1.0, ghz, std::span<const PlanTerm>(&plus011, 1));
    c.push_back(expect_kind("classify(psi+ + 0.5|011>)", Kind::GME, classify(g, tol).kind));
  }));

  out.push_back(guarded("example1", "generalized GHZ: r1_min = r1_max = r2_min = d", [&](auto& c) {
    for (int n : {3, 4}) {
      for (int d : {2, 3, 4}) {
        const auto prof = full_profile(ghz_state(n, d), tol);
        const std::string tag = "n=" + std::to_string(n) + " d=" + std::to_string(d);
        c.push_back(expect_eq(tag + " r1_min", d, prof.r1_min));
        c.push_back(expect_eq(tag + " r1_max", d, prof.r1_max));
        c.push_back(expect_eq(tag + " r2_min", d, *prof.r2_min));
      }
    }
    const auto cert = certify(ghz_state(3, 4), tol);
    c.push_back(expect_eq("d=4 gme_budget", 2, cert.gme_budget));
    c.push_back(expect_eq("d=4 triple_budget", 2, cert.triple_budget));
  }));

  out.push_back(guarded("example2", "a0|000> + a1|111> stays GME under orthogonal product states", [&](auto& c) {
    const double a0 = 0.6, a1 = 0.8;
    CVector amps(8);
    amps[0] = a0;
    amps[7] = a1;
    const PureState psi = make_state({2, 2, 2}, amps);
    Rng rng(2024);
    std::uniform_real_distribution<double> angle(0.05, 1.52);
    int gme = 0;
    double worst = 1.0;
    constexpr int kSamples = 64;
    for (int i = 0; i < kSamples; ++i) {
      const CVector al = random_vector(2, rng), be = random_vector(2, rng);
      // third factor chosen so the product is orthogonal to psi
      const CVector ga = {a1 * al[1] * be[1], -a0 * al[0] * be[0]};
      const ProductState p = product_state({al, be, ga});
      worst = std::min(worst, 1.0 - std::abs(inner_product(psi, p.to_pure())));
      const double th = angle(rng);
      const PlanTerm t{std::sin(th), p};
      const PureState s = superpose(std::cos(th), psi, std::span<const PlanTerm>(&t, 1));
      if (classify(s, tol).kind == Kind::GME) ++gme;
    }
    c.push_back(expect_at_least("orthogonality 1 - |<psi|p>|", 1.0 - 1e-12, worst));
    c.push_back(expect_eq("GME superpositions", kSamples, gme));
  }));

  out.push_back(guarded("example3", "psi2 is GME but one product state makes it biseparable", [&](auto& c) {
    const PureState psi = psi2();
    const auto prof = rank_profile(psi, tol);
    c.push_back(expect_eq("r1_min", 2, prof.r1_min));
    c.push_back(expect_eq("r1_max", 2, prof.r1_max));
    const PureState target = tensor(make_state({2}, ket_plus()), ghz_state(2, 2));
    // the term |001> leaves every cut at rank 2; |011> gives the stated product
    for (const auto& [label, term] : {std::pair{"|001>", product_state({k0, k0, k1})},
                                      std::pair{"|011>", product_state({k0, k1, k1})}}) {
      const std::string tag = std::string(" with ") + label;
      const PlanTerm t{0.5, term};
      const PureState s = superpose(std::sqrt(3.0) / 2.0, psi, std::span<const PlanTerm>(&t, 1));
      const auto cls = classify(s, tol);
      c.push_back(expect_kind("classify" + tag, Kind::BiseparableNotGME, cls.kind));
      c.push_back(expect_true("witness {1}|{2,3}" + tag, cls.kind == Kind::BiseparableNotGME &&
                                                             cls.witness == std::vector<Bipartition>{{{0}, {1, 2}}}));
      c.push_back(expect_eq("rank {1}|{2,3}" + tag, 1, cls.profile.rank_of({{0}, {1, 2}})));
      c.push_back(expect_eq("rank {2}|{1,3}" + tag, 2, cls.profile.rank_of({{1}, {0, 2}})));
      c.push_back(expect_eq("rank {3}|{1,2}" + tag, 2, cls.profile.rank_of({{2}, {0, 1}})));
      c.push_back(expect_at_least("fidelity with |+> (x) psi+" + tag, 1.0 - 1e-12, fidelity(s, target)));
    }
    c.push_back(expect_eq("gme_budget", 0, certify(psi, tol).gme_budget));
  }));

  out.push_back(guarded("example4", "psi3 plus |000> is the full product |+>|b>|+>", [&](auto& c) {
    const PureState psi = psi3();
    const auto prof = rank_profile(psi, tol);
    c.push_back(expect_kind("classify(psi3)", Kind::GME, classify(psi, tol).kind));
    c.push_back(expect_eq("r1_max", 2, prof.r1_max));
    c.push_back(expect_at_most("|<psi3|000>|", 1e-12,
                               std::abs(inner_product(psi, basis_state({2, 2, 2}, std::vector<int>{0, 0, 0})))));
    SuperpositionPlan plan;
    plan.lead = 2.0 * kSqrt2 / 3.0;
    plan.terms.push_back({1.0 / 3.0, product_state({k0, k0, k0})});
    const auto v = verify_plan(psi, plan, tol);
    c.push_back(expect_kind("classify(superposition)", Kind::FullySeparableProduct, v.classification.kind));
    c.push_back(expect_at_least("fidelity with |+>|b>|+>", 1.0 - 1e-10,
                                fidelity(v.state, product_of({ket_plus(), ket_b(), ket_plus()}))));
    c.push_back(expect_true("triple separable", is_triple_separable(v.state, tol)));
  }));

  out.push_back(guarded("example5", "reference two-state plan on a rank-3 bipartite state", [&](auto& c) {
    const PureState psi = example5_state();
    c.push_back(expect_eq("Schmidt rank", 3, rank_profile(psi, tol).r1_max));
    // first stage: the |00>,|11> block merged with p1
    const double s5 = kSqrt5;
    const PureState pair = make_state({3, 3}, {1.0 / s5, 0, 0, 0, 2.0 / s5, 0, 0, 0, 0});
    const auto plan = example5_plan();
    const PlanTerm first{std::sqrt(17.0 / 26.0) / (3.0 / std::sqrt(26.0)), plan.terms[0].state};
    const PureState stage1 = superpose(1.0, pair, std::span<const PlanTerm>(&first, 1));
    c.push_back(expect_at_least("stage 1 = |a1>|+>", 1.0 - 1e-10, fidelity(stage1, product_of({alpha1(), plus3()}))));
    const auto v = verify_plan(psi, plan, tol);
    c.push_back(expect_eq("r1_max after plan", 1, v.classification.profile.r1_max));
    c.push_back(expect_at_least("fidelity with reference product", 1.0 - 1e-10, fidelity(v.state, example5_target())));
    c.push_back(expect_kind("constructed plan verifies", Kind::Separable,
                            verify_plan(psi, theorem4_construction(psi, tol), tol).classification.kind));
  }));

  return out;
}

}  // namespace entrobust::fixtures
