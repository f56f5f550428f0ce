#include <doctest.h>

#include <cstring>

#include "entrobust/io.hpp"
#include "helpers.hpp"

using namespace entrobust;
using io::json;

TEST_CASE("state JSON parses with implicit zeros and normalization") {
  const auto s = io::parse_state(R"({"dims":[2,2,2],"amps":[{"idx":[0,0,0],"re":1},{"idx":[1,1,1],"re":1,"im":0}]})");
  CHECK(s.dims() == Dims{2, 2, 2});
  CHECK(fidelity(s, ghz_state(3, 2)) == doctest::Approx(1.0));
  const auto t = io::parse_state(R"({"dims":[2],"amps":[{"idx":[1],"im":2}]})");
  CHECK(t[1] == cplx(0, 1));
}

TEST_CASE("state JSON round-trips bit for bit") {
  Rng rng(71);
  for (int t = 0; t < 200; ++t) {
    const Dims dims = t % 2 ? Dims{2, 3, 2} : Dims{4, 3};
    const PureState s = t % 3 == 0 ? testing::random_ghz_like(2, 4, 3, rng) : random_state(dims, rng);
    const std::string text = io::state_to_json(s).dump();
    const PureState back = io::parse_state(text);
    REQUIRE(back.size() == s.size());
    CHECK(std::memcmp(back.amps().data(), s.amps().data(), s.size() * sizeof(cplx)) == 0);
    CHECK(io::state_to_json(io::parse_state(io::state_to_json(back).dump())).dump() == text);
  }
}

TEST_CASE("parse errors name the position") {
  try {
    io::parse_state("{\"dims\":[2,2],\n  \"amps\": [,]}");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    const std::string what = e.what();
    CHECK(what.find("line 2") != std::string::npos);
    CHECK(what.find("column") != std::string::npos);
  }
  auto code = [](const char* text) {
    try {
      io::parse_state(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code(R"({"amps":[]})") == ErrorCode::ParseError);
  CHECK(code(R"({"dims":[2,2],"amps":[{"idx":[0],"re":1}]})") == ErrorCode::ShapeMismatch);
  CHECK(code(R"({"dims":[2,2],"amps":[{"idx":[0,5],"re":1}]})") == ErrorCode::ShapeMismatch);
  CHECK(code(R"({"dims":[2,2],"amps":[]})") == ErrorCode::ZeroVector);
  CHECK(code(R"({"dims":[2,1],"amps":[]})") == ErrorCode::ShapeMismatch);
  CHECK(code(R"({"dims":[2,2],"amps":[{"idx":[0,0],"re":"x"}]})") == ErrorCode::ParseError);
  CHECK(code(R"({"dims":[2,2],"amps":[{"idx":[0,0],"re":1},3]})") == ErrorCode::ParseError);
}

TEST_CASE("plan JSON") {
  SuperpositionPlan plan;
  plan.lead = cplx(0.5, -0.25);
  plan.terms.push_back({cplx(1, 2), product_state({{1, 0}, {0.6, cplx(0, 0.8)}})});
  const json j = io::plan_to_json(plan, Kind::Separable);
  CHECK(j["verified"] == "Separable");
  CHECK(j["lead"]["re"] == 0.5);
  CHECK(j["terms"][0]["factors"][1][1]["im"] == 0.8);
  const auto back = io::plan_from_json(json::parse(j.dump()));
  CHECK(back.lead == plan.lead);
  CHECK(back.terms[0].coeff == plan.terms[0].coeff);
  CHECK(back.terms[0].state.factors() == plan.terms[0].state.factors());
  CHECK_FALSE(io::plan_to_json(plan).contains("verified"));
}

TEST_CASE("report schemas") {
  const auto prof = full_profile(ghz_state(3, 2));
  const json p = io::profile_to_json(prof);
  CHECK(p["ranks"]["1|23"] == 2);
  CHECK(p["r1_min"] == 2);
  CHECK(p["r1_max"] == 2);
  CHECK(p["r2_min"] == 2);
  CHECK(p["tol"] == 1e-10);

  const json c = io::certificate_to_json(certify(ghz_state(3, 4)));
  CHECK(c == json::parse(R"({"classification":"GME","gme_budget":2,"insep_budget":2,"triple_budget":2,"marginal":false,"note":"degenerate Schmidt coefficients: r2_min depends on the chosen Schmidt basis"})"));

  CHECK(io::bipartition_to_json({{0}, {1, 2}}) == json::parse(R"({"left":[1],"right":[2,3]})"));

  const json k = io::classification_to_json(classify(tensor(make_state({2}, {1, 1}), ghz_state(2, 2))));
  CHECK(k["classification"] == "BiseparableNotGME");
  CHECK(k["witness"][0]["left"] == json::array({1}));
}
