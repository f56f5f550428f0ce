#include "entrobust/disentangle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

namespace entrobust {

double orthogonality_residual(double a0, double a1, double alpha, double beta) {
  return a0 * std::cos(alpha) * std::cos(beta) + a1 * std::sin(alpha) * std::sin(beta);
}

double separability_residual(double a0, double a1, double p, double alpha, double beta) {
  return p * a0 * a1 + std::sqrt(p * (1.0 - p)) * (a0 * std::sin(alpha) * std::sin(beta) +
                                                    a1 * std::cos(alpha) * std::cos(beta));
}

namespace {

constexpr double kPi = std::numbers::pi;

struct Candidate {
  double p;
  double beta;
};

// beta from tan(alpha) tan(beta) = -a0/a1, on whichever of the two branches
// (beta, beta + pi) makes the bracket in the separability condition negative;
// p then follows in closed form.
std::optional<Candidate> solve_at(double a0, double a1, double alpha) {
  const double beta0 = std::atan2(-a0 * std::cos(alpha), a1 * std::sin(alpha));
  for (double beta : {beta0, beta0 + kPi}) {
    const double bracket = a0 * std::sin(alpha) * std::sin(beta) + a1 * std::cos(alpha) * std::cos(beta);
    if (bracket < 0.0) {
      const double k = -bracket / (a0 * a1);
      const double p = k * k / (1.0 + k * k);
      if (p > 0.0 && p < 1.0) return Candidate{p, beta};
    }
  }
  return std::nullopt;
}

ProductState qubit_product(double alpha, double beta) {
  return product_state({{std::cos(alpha), std::sin(alpha)}, {std::cos(beta), std::sin(beta)}});
}

void require_bipartite(const PureState& state) {
  if (state.parties() != 2) throw Error(ErrorCode::NotBipartite, "construction needs a two-party state");
}

std::vector<double> kept(const SchmidtDecomposition& sd) {
  return {sd.coeffs.begin(), sd.coeffs.begin() + sd.rank};
}

CVector combine(const std::vector<CVector>& basis, const Eigen::VectorXd& coords) {
  CVector out(basis.front().size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += coords(static_cast<Eigen::Index>(i)) * basis[i][k];
  }
  return out;
}

CVector uniform_on(const std::vector<int>& support, int dim, std::optional<int> skip = std::nullopt) {
  CVector v(static_cast<std::size_t>(dim));
  for (int j : support) {
    if (j != skip) v[static_cast<std::size_t>(j)] = 1.0;
  }
  return v;
}

CVector unit(int i, int dim) {
  CVector v(static_cast<std::size_t>(dim));
  v[static_cast<std::size_t>(i)] = 1.0;
  return v;
}

}  // namespace

EliminationStep pairwise_eliminate(double a0, double a1) {
  if (!(a0 > 0.0 && a1 > 0.0) || std::abs(a0 * a0 + a1 * a1 - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidArgument, "pairwise_eliminate needs a0, a1 > 0 with a0^2 + a1^2 = 1");
  }
  if (std::abs(a0 - a1) <= 1e-8) {
    throw Error(ErrorCode::MaximallyEntangledPair, "equal coefficients cannot be merged");
  }

  constexpr int kGrid = 10000;
  std::vector<double> alphas, ps;
  for (int i = 1; i <= kGrid; ++i) {
    const double alpha = kPi * i / (kGrid + 1);
    if (auto c = solve_at(a0, a1, alpha)) {
      alphas.push_back(alpha);
      ps.push_back(c->p);
    }
  }
  if (alphas.empty()) throw Error(ErrorCode::NoRootFound, "no feasible mixing weight on the grid");

  auto p_of = [&](double alpha) {
    const auto c = solve_at(a0, a1, alpha);
    return c ? c->p : 0.0;
  };

  std::optional<double> chosen;
  for (std::size_t i = 0; i + 1 < alphas.size() && !chosen; ++i) {
    // only adjacent grid points bracket a continuous branch
    if (alphas[i + 1] - alphas[i] > 1.5 * kPi / (kGrid + 1)) continue;
    if ((ps[i] - 0.5) * (ps[i + 1] - 0.5) <= 0.0) {
      double lo = alphas[i], hi = alphas[i + 1];
      const bool rising = ps[i] < ps[i + 1];
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        ((p_of(mid) < 0.5) == rising ? lo : hi) = mid;
      }
      chosen = 0.5 * (lo + hi);
    }
  }
  if (!chosen) {
    const auto best = static_cast<std::size_t>(std::max_element(ps.begin(), ps.end()) - ps.begin());
    double lo = alphas[best > 0 ? best - 1 : best];
    double hi = alphas[std::min(best + 1, alphas.size() - 1)];
    while (hi - lo > 1e-12) {
      const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (p_of(m1) < p_of(m2)) {
        lo = m1;
      } else {
        hi = m2;
      }
    }
    chosen = 0.5 * (lo + hi);
    if (!solve_at(a0, a1, *chosen)) chosen = alphas[best];
  }

  const double alpha = *chosen;
  const Candidate c = *solve_at(a0, a1, alpha);
  ProductState product = qubit_product(alpha, c.beta);

  const PureState pair = make_state({2, 2}, {a0, 0.0, 0.0, a1});
  const PlanTerm term{std::sqrt((1.0 - c.p) / c.p), product};
  const PureState merged = superpose(1.0, pair, std::span<const PlanTerm>(&term, 1));
  const auto sd = schmidt_decompose(merged, {{0}, {1}});
  if (sd.rank != 1) throw Error(ErrorCode::NoRootFound, "merge did not produce a product state");
  ProductState out = product_state({sd.left_vecs[0], sd.right_vecs[0]});
  return EliminationStep{c.p, alpha, c.beta, 0.0, 0.0, std::move(product), std::move(out)};
}

SuperpositionPlan lemma2_construction(const PureState& state, double tol) {
  require_bipartite(state);
  const auto sd = schmidt_decompose(state, {{0}, {1}}, tol);
  const int r = sd.rank;
  if (r < 2) throw Error(ErrorCode::RankTooLow, "Schmidt rank must be at least 2");

  SuperpositionPlan plan;
  plan.lead = 1.0 / std::sqrt(static_cast<double>(r));
  const double scale = std::sqrt(static_cast<double>(r - 1) / r);
  for (int i = 0; i < r; ++i) {
    CVector rest(sd.right_vecs.front().size());
    for (int j = 0; j < r; ++j) {
      if (j == i) continue;
      const auto& v = sd.right_vecs[static_cast<std::size_t>(j)];
      for (std::size_t k = 0; k < rest.size(); ++k) rest[k] += v[k];
    }
    plan.terms.push_back({scale * sd.coeffs[static_cast<std::size_t>(i)],
                          product_state({sd.left_vecs[static_cast<std::size_t>(i)], std::move(rest)})});
  }
  return plan;
}

SuperpositionPlan theorem4_construction(const PureState& state, double tol) {
  require_bipartite(state);
  const auto sd = schmidt_decompose(state, {{0}, {1}}, tol);
  const int r = sd.rank;
  if (r < 2) throw Error(ErrorCode::RankTooLow, "Schmidt rank must be at least 2");
  const auto a = kept(sd);
  if (a.front() - a.back() <= 1e-8) {
    throw Error(ErrorCode::MaximallyEntangled, "all Schmidt coefficients equal 1/sqrt(r)");
  }

  const Eigen::Index n = r;
  const Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(a.data(), n);
  const Eigen::VectorXd d2 = d.cwiseProduct(d);
  const Eigen::VectorXd w = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(r)));
  const Eigen::VectorXd z = d2.cwiseProduct(w) - w.dot(d2.cwiseProduct(w)) * w;
  if (z.norm() <= 1e-14) throw Error(ErrorCode::MaximallyEntangled, "coefficients too close to uniform");

  // Orthonormal basis of w's complement starting with z/|z|.
  Eigen::MatrixXd seed(n, n + 1);
  seed.col(0) = w;
  seed.col(1) = z.normalized();
  seed.rightCols(n - 1) = Eigen::MatrixXd::Identity(n, n).leftCols(n - 1);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(seed);
  Eigen::MatrixXd basis = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  // fix signs so the first two columns are +w and +z/|z|
  for (Eigen::Index c = 0; c < 2; ++c) {
    if (basis.col(c).dot(seed.col(c)) < 0) basis.col(c) *= -1.0;
  }
  const Eigen::MatrixXd complement = basis.rightCols(n - 1);

  // Householder reflection sending e1 to the uniform vector of length r-1.
  const Eigen::Index m = n - 1;
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(m, m);
  if (m > 1) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(m, 0) - Eigen::VectorXd::Constant(m, 1.0 / std::sqrt(double(m)));
    h -= 2.0 * v * v.transpose() / v.squaredNorm();
  }
  const Eigen::MatrixXd frame = complement * h;

  std::vector<CVector> left(sd.left_vecs.begin(), sd.left_vecs.begin() + r);
  std::vector<CVector> right(sd.right_vecs.begin(), sd.right_vecs.begin() + r);

  SuperpositionPlan plan;
  plan.lead = 1.0;
  for (Eigen::Index k = 0; k < m; ++k) {
    const Eigen::VectorXd x = frame.col(k);
    const double b = x.dot(d2.cwiseProduct(x)) / x.dot(d2.cwiseProduct(w));
    const Eigen::VectorXd y = d.cwiseProduct(x - b * w);
    plan.terms.push_back({-y.norm(), product_state({combine(left, x), combine(right, y)})});
  }
  return plan;
}

SuperpositionPlan theorem5_construction(const PureState& state, double tol) {
  if (state.parties() != 3) throw Error(ErrorCode::NotGHZForm, "expected a tripartite state");
  const Dims& dims = state.dims();

  std::vector<int> support;
  double off = 0.0;
  for (std::size_t flat = 0; flat < state.size(); ++flat) {
    const auto idx = multi_index(dims, flat);
    const double mag = std::abs(state[flat]);
    if (idx[0] == idx[1] && idx[1] == idx[2]) {
      if (mag > 1e-10) support.push_back(idx[0]);
    } else {
      off = std::max(off, mag);
    }
  }
  if (off > 1e-10) throw Error(ErrorCode::NotGHZForm, "amplitudes outside the |iii> diagonal");
  const int r = static_cast<int>(support.size());
  if (r < 3) throw Error(ErrorCode::RankTooLow, "need at least three nonzero |iii> terms");

  std::vector<cplx> a;
  for (int i : support) a.push_back(state.at(std::vector<int>{i, i, i}));
  const auto [lo, hi] = std::minmax_element(a.begin(), a.end(),
                                            [](cplx x, cplx y) { return std::abs(x) < std::abs(y); });
  if (std::abs(*hi) - std::abs(*lo) <= 1e-8) {
    throw Error(ErrorCode::MaximallyEntangled, "all |a_i| equal 1/sqrt(r)");
  }

  // sum_i a_i |ii> on the first two parties
  CVector pair_amps(static_cast<std::size_t>(dims[0] * dims[1]));
  for (std::size_t k = 0; k < support.size(); ++k) {
    pair_amps[static_cast<std::size_t>(support[k] * dims[1] + support[k])] = a[k];
  }
  const PureState pair = make_state({dims[0], dims[1]}, std::move(pair_amps));
  const SuperpositionPlan bipartite = theorem4_construction(pair, tol);

  SuperpositionPlan plan;
  plan.lead = bipartite.lead / std::sqrt(static_cast<double>(r));
  const double scale = std::sqrt(static_cast<double>(r - 1) / r);
  for (std::size_t k = 0; k < support.size(); ++k) {
    const int i = support[k];
    plan.terms.push_back({bipartite.lead * scale * a[k],
                          product_state({unit(i, dims[0]), unit(i, dims[1]), uniform_on(support, dims[2], i)})});
  }
  for (const auto& t : bipartite.terms) {
    plan.terms.push_back(
        {t.coeff, product_state({t.state.factor(0), t.state.factor(1), uniform_on(support, dims[2])})});
  }
  return plan;
}

PlanVerification verify_plan(const PureState& base, const SuperpositionPlan& plan, double tol) {
  PureState out = apply_plan(base, plan);
  const auto k = static_cast<Eigen::Index>(plan.terms.size());
  std::vector<PureState> states;
  states.reserve(plan.terms.size());
  for (const auto& t : plan.terms) states.push_back(t.state.to_pure());

  Eigen::MatrixXcd gram(k, k);
  std::vector<cplx> overlaps;
  for (Eigen::Index i = 0; i < k; ++i) {
    overlaps.push_back(inner_product(base, states[static_cast<std::size_t>(i)]));
    for (Eigen::Index j = 0; j < k; ++j) {
      gram(i, j) = inner_product(states[static_cast<std::size_t>(i)], states[static_cast<std::size_t>(j)]);
    }
  }
  Classification c = classify(out, tol);
  return PlanVerification{std::move(c), std::move(out), std::move(gram), std::move(overlaps)};
}

}  // namespace entrobust
