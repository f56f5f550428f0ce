#include "entrobust/io.hpp"

#include <algorithm>

namespace entrobust::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) fail(std::string(what) + " must be a number");
  return j.get<double>();
}

}  // namespace

json complex_to_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

cplx complex_from_json(const json& j) {
  if (!j.is_object()) fail("complex value must be an object");
  const double re = j.contains("re") ? number(j.at("re"), "re") : 0.0;
  const double im = j.contains("im") ? number(j.at("im"), "im") : 0.0;
  return {re, im};
}

PureState state_from_json(const json& j) {
  const json& jd = field(j, "dims");
  if (!jd.is_array() || jd.empty()) fail("'dims' must be a nonempty array");
  Dims dims;
  for (const auto& d : jd) {
    if (!d.is_number_integer()) fail("'dims' entries must be integers");
    dims.push_back(d.get<int>());
  }
  for (int d : dims) {
    if (d < 2) throw Error(ErrorCode::ShapeMismatch, "local dimensions must be >= 2");
  }

  CVector amps(total_size(dims));
  const json& ja = field(j, "amps");
  if (!ja.is_array()) fail("'amps' must be an array");
  for (const auto& a : ja) {
    const json& ji = field(a, "idx");
    if (!ji.is_array()) fail("'idx' must be an array");
    std::vector<int> idx;
    for (const auto& i : ji) {
      if (!i.is_number_integer()) fail("'idx' entries must be integers");
      idx.push_back(i.get<int>());
    }
    amps[flat_index(dims, idx)] += complex_from_json(a);
  }
  return make_state(std::move(dims), std::move(amps));
}

json state_to_json(const PureState& state) {
  json amps = json::array();
  for (std::size_t flat = 0; flat < state.size(); ++flat) {
    const cplx a = state[flat];
    if (a == cplx{0.0, 0.0}) continue;
    amps.push_back({{"idx", multi_index(state.dims(), flat)}, {"re", a.real()}, {"im", a.imag()}});
  }
  return {{"dims", state.dims()}, {"amps", std::move(amps)}};
}

PureState parse_state(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // translate the byte offset into a line/column pair
    const std::size_t pos = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n');
    const auto nl = text.rfind('\n', pos == 0 ? 0 : pos - 1);
    const auto col = nl == std::string_view::npos || pos == 0 ? pos + 1 : pos - nl;
    fail("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col));
  }
  try {
    return state_from_json(j);
  } catch (const json::exception& e) {
    fail(e.what());
  }
}

json bipartition_to_json(const Bipartition& part) {
  auto one_based = [](const std::vector<int>& side) {
    json a = json::array();
    for (int p : side) a.push_back(p + 1);
    return a;
  };
  return {{"left", one_based(part.left)}, {"right", one_based(part.right)}};
}

json plan_to_json(const SuperpositionPlan& plan, std::optional<Kind> verified) {
  json terms = json::array();
  for (const auto& t : plan.terms) {
    json factors = json::array();
    for (const auto& f : t.state.factors()) {
      json v = json::array();
      for (const auto& z : f) v.push_back(complex_to_json(z));
      factors.push_back(std::move(v));
    }
    terms.push_back({{"coeff", complex_to_json(t.coeff)}, {"factors", std::move(factors)}});
  }
  json j = {{"lead", complex_to_json(plan.lead)}, {"terms", std::move(terms)}};
  if (verified) j["verified"] = std::string(to_string(*verified));
  return j;
}

SuperpositionPlan plan_from_json(const json& j) {
  SuperpositionPlan plan;
  plan.lead = complex_from_json(field(j, "lead"));
  const json& terms = field(j, "terms");
  if (!terms.is_array()) fail("'terms' must be an array");
  for (const auto& t : terms) {
    std::vector<CVector> factors;
    for (const auto& f : field(t, "factors")) {
      CVector v;
      for (const auto& z : f) v.push_back(complex_from_json(z));
      factors.push_back(std::move(v));
    }
    plan.terms.push_back({complex_from_json(field(t, "coeff")), product_state(std::move(factors))});
  }
  return plan;
}

json profile_to_json(const RankProfile& prof) {
  json ranks = json::object();
  for (const auto& [part, r] : prof.ranks) ranks[part.to_string()] = r;
  json j = {{"ranks", std::move(ranks)}, {"r1_min", prof.r1_min}, {"r1_max", prof.r1_max}};
  if (prof.r2_min) j["r2_min"] = *prof.r2_min;
  j["tol"] = prof.tol;
  j["marginal"] = prof.marginal;
  if (prof.r2_degenerate_order) j["r2_degenerate_order"] = true;
  if (prof.r2_degenerate_schmidt) j["r2_degenerate_schmidt"] = true;
  return j;
}

json certificate_to_json(const RobustnessCertificate& cert) {
  json j = {{"classification", std::string(to_string(cert.classification))},
            {"gme_budget", cert.gme_budget},
            {"insep_budget", cert.insep_budget},
            {"triple_budget", cert.triple_budget},
            {"marginal", cert.marginal}};
  if (!cert.note.empty()) j["note"] = cert.note;
  return j;
}

json classification_to_json(const Classification& c) {
  json witness = json::array();
  for (const auto& w : c.witness) witness.push_back(bipartition_to_json(w));
  return {{"classification", std::string(to_string(c.kind))}, {"witness", std::move(witness)}};
}

json search_report_to_json(const SearchReport& rep, const SearchConfig& cfg) {
  json j = {{"objective", cfg.objective == Objective::BreakGME ? "break-gme" : "full-sep"},
            {"k", cfg.k},
            {"seed", cfg.seed},
            {"restarts", cfg.restarts},
            {"best_gap", rep.best_gap},
            {"iterations_used", rep.iterations_used},
            {"succeeded", rep.succeeded}};
  j["best_plan"] = rep.best_plan ? plan_to_json(*rep.best_plan) : json(nullptr);
  return j;
}

}  // namespace entrobust::io
