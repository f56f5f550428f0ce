#include "entrobust/robustness.hpp"

#include <algorithm>
#include <cmath>

namespace entrobust {

std::string_view to_string(Kind kind) {
  switch (kind) {
    case Kind::FullySeparableProduct: return "FullySeparableProduct";
    case Kind::BiseparableNotGME: return "BiseparableNotGME";
    case Kind::GME: return "GME";
    case Kind::Separable: return "Separable";
    case Kind::Entangled: return "Entangled";
  }
  return "Unknown";
}

Kind kind_from_string(std::string_view s) {
  for (Kind k : {Kind::FullySeparableProduct, Kind::BiseparableNotGME, Kind::GME, Kind::Separable,
                 Kind::Entangled}) {
    if (to_string(k) == s) return k;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown classification '" + std::string(s) + "'");
}

bool is_entangled(Kind kind) {
  return kind == Kind::GME || kind == Kind::BiseparableNotGME || kind == Kind::Entangled;
}

namespace {

void factorize(const Factor& f, const Dims& dims, double tol, std::vector<Factor>& out) {
  if (f.parties.size() < 2) {
    out.push_back(f);
    return;
  }
  const PureState local = substate(f.amps, dims, f.parties);
  for (const auto& part : nested(f.parties)) {
    const auto sd = schmidt_decompose(local, relabel(part, f.parties), tol);
    if (sd.rank != 1) continue;
    factorize({part.left, sd.left_vecs[0]}, dims, tol, out);
    factorize({part.right, sd.right_vecs[0]}, dims, tol, out);
    return;
  }
  out.push_back(f);
}

}  // namespace

std::vector<Factor> product_factors(const PureState& state, double tol) {
  std::vector<int> all(static_cast<std::size_t>(state.parties()));
  for (int i = 0; i < state.parties(); ++i) all[static_cast<std::size_t>(i)] = i;
  std::vector<Factor> out;
  factorize({all, CVector(state.amps().begin(), state.amps().end())}, state.dims(), tol, out);
  std::sort(out.begin(), out.end(),
            [](const Factor& a, const Factor& b) { return a.parties.front() < b.parties.front(); });
  return out;
}

bool is_triple_separable(const PureState& state, double tol) {
  if (state.parties() < 3) throw Error(ErrorCode::TooFewParties, "triple separability needs n >= 3");
  return product_factors(state, tol).size() >= 3;
}

Classification classify(const PureState& state, double tol) {
  Classification c;
  c.profile = rank_profile(state, tol);
  const auto& prof = c.profile;
  auto argmin = [&] {
    return std::min_element(prof.ranks.begin(), prof.ranks.end(),
                            [](const auto& a, const auto& b) { return a.second < b.second; })
        ->first;
  };

  if (state.parties() == 2) {
    c.kind = prof.r1_max >= 2 ? Kind::Entangled : Kind::Separable;
    if (c.kind == Kind::Entangled) c.witness.push_back(prof.ranks.front().first);
    return c;
  }
  if (prof.r1_min >= 2) {
    c.kind = Kind::GME;
    c.witness.push_back(argmin());
    return c;
  }
  if (prof.r1_max == 1) {
    // A pure state with every cut of rank one is a full product.
    if (static_cast<int>(product_factors(state, tol).size()) != state.parties()) {
      throw Error(ErrorCode::InvalidArgument, "rank profile and factor extraction disagree");
    }
    c.kind = Kind::FullySeparableProduct;
    return c;
  }
  c.kind = Kind::BiseparableNotGME;
  for (const auto& [part, r] : prof.ranks) {
    if (r == 1) c.witness.push_back(part);
  }
  return c;
}

RobustnessCertificate certify(const PureState& state, double tol) {
  RobustnessCertificate cert;
  const Classification c = classify(state, tol);
  cert.classification = c.kind;
  cert.profile = full_profile(state, tol);
  cert.marginal = cert.profile.marginal;
  if (!is_entangled(c.kind)) {
    cert.note = "state is not entangled; no robustness to certify";
    return cert;
  }
  const auto floor0 = [](int r) { return std::max(r - 2, 0); };
  cert.gme_budget = floor0(cert.profile.r1_min);
  cert.insep_budget = floor0(cert.profile.r1_max);
  cert.triple_budget = floor0(*cert.profile.r2_min);
  if (cert.profile.r2_degenerate_order) {
    cert.note = "two parties: the second-order rank reduces to r1_min";
  } else if (cert.profile.r2_degenerate_schmidt) {
    cert.note = "degenerate Schmidt coefficients: r2_min depends on the chosen Schmidt basis";
  }
  return cert;
}

}  // namespace entrobust
