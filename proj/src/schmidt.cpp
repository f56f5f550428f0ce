#include "entrobust/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

namespace entrobust {

int numerical_rank(std::span<const double> sv, double tol) {
  if (sv.empty() || !(sv[0] > kZeroNorm)) return 0;
  int r = 0;
  for (double s : sv) {
    if (s > tol * sv[0] && s > kZeroNorm) ++r;
  }
  return r;
}

bool near_threshold(std::span<const double> sv, double tol) {
  if (sv.empty() || !(sv[0] > kZeroNorm)) return false;
  const double cut = tol * sv[0];
  return std::any_of(sv.begin() + 1, sv.end(), [&](double s) { return s > cut / 10.0 && s <= cut * 10.0; });
}

std::vector<double> singular_values(const PureState& state, const Bipartition& part) {
  const Eigen::MatrixXcd m = bipartition_matrix(state, part);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

SchmidtDecomposition schmidt_decompose(const PureState& state, const Bipartition& part, double tol) {
  if (!(tol > 0.0 && tol < 1.0)) throw Error(ErrorCode::InvalidArgument, "tol must lie in (0, 1)");
  const Eigen::MatrixXcd m = bipartition_matrix(state, part);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);

  SchmidtDecomposition sd;
  sd.part = part;
  const auto& s = svd.singularValues();
  const Eigen::MatrixXcd& u = svd.matrixU();
  const Eigen::MatrixXcd& v = svd.matrixV();
  // M = U S V^dagger, so the right vectors are the conjugated columns of V.
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    sd.coeffs.push_back(s(i));
    sd.left_vecs.emplace_back(u.col(i).data(), u.col(i).data() + u.rows());
    CVector r(static_cast<std::size_t>(v.rows()));
    for (Eigen::Index k = 0; k < v.rows(); ++k) r[static_cast<std::size_t>(k)] = std::conj(v(k, i));
    sd.right_vecs.push_back(std::move(r));
  }
  sd.rank = numerical_rank(sd.coeffs, tol);
  return sd;
}

CVector reconstruct(const SchmidtDecomposition& sd, const Dims& dims) {
  const auto& part = sd.part;
  std::vector<int> ldims, rdims;
  for (int p : part.left) ldims.push_back(dims[p]);
  for (int p : part.right) rdims.push_back(dims[p]);
  const std::size_t rows = total_size(ldims), cols = total_size(rdims);

  CVector out(total_size(dims));
  std::vector<int> idx(dims.size());
  for (std::size_t r = 0; r < rows; ++r) {
    const auto li = multi_index(ldims, r);
    for (std::size_t c = 0; c < cols; ++c) {
      const auto ri = multi_index(rdims, c);
      for (std::size_t k = 0; k < part.left.size(); ++k) idx[part.left[k]] = li[k];
      for (std::size_t k = 0; k < part.right.size(); ++k) idx[part.right[k]] = ri[k];
      cplx a{0.0, 0.0};
      for (std::size_t i = 0; i < sd.coeffs.size(); ++i) a += sd.coeffs[i] * sd.left_vecs[i][r] * sd.right_vecs[i][c];
      out[flat_index(dims, idx)] = a;
    }
  }
  return out;
}

int RankProfile::rank_of(const Bipartition& part) const {
  for (const auto& [b, r] : ranks) {
    if (b == part || b == part.swapped()) return r;
  }
  throw Error(ErrorCode::InvalidPartition, "bipartition " + part.to_string() + " not in profile");
}

RankProfile rank_profile(const PureState& state, double tol) {
  RankProfile prof;
  prof.tol = tol;
  prof.r1_min = std::numeric_limits<int>::max();
  for (auto& part : enumerate_unordered(state.parties())) {
    const auto sv = singular_values(state, part);
    const int r = numerical_rank(sv, tol);
    prof.marginal = prof.marginal || near_threshold(sv, tol);
    prof.r1_min = std::min(prof.r1_min, r);
    prof.r1_max = std::max(prof.r1_max, r);
    prof.ranks.emplace_back(std::move(part), r);
  }
  return prof;
}

PureState substate(const CVector& vec, const Dims& dims, const std::vector<int>& subset) {
  Dims sub;
  for (int p : subset) sub.push_back(dims[p]);
  return make_state(std::move(sub), vec);
}

Bipartition relabel(const Bipartition& part, const std::vector<int>& subset) {
  auto pos = [&](int p) {
    return static_cast<int>(std::find(subset.begin(), subset.end(), p) - subset.begin());
  };
  Bipartition b;
  for (int p : part.left) b.left.push_back(pos(p));
  for (int p : part.right) b.right.push_back(pos(p));
  return b;
}

namespace {

bool has_repeated(std::span<const double> coeffs, int rank) {
  for (int i = 0; i + 1 < rank; ++i) {
    if (coeffs[i] - coeffs[i + 1] <= 1e-8 * coeffs[0]) return true;
  }
  return false;
}

}  // namespace

SecondOrderRank r2_min(const PureState& state, double tol) {
  const int n = state.parties();
  SecondOrderRank best;
  if (n == 2) {
    const auto prof = rank_profile(state, tol);
    best.value = prof.r1_min;
    best.degenerate_order = true;
    best.argmin = prof.ranks.front().first;
    return best;
  }

  best.value = std::numeric_limits<int>::max();
  for (const auto& part : enumerate_ordered(n)) {
    const auto sd = schmidt_decompose(state, part, tol);
    int sum = 0;
    if (part.left.size() == 1) {
      sum = sd.rank;
    } else {
      best.degenerate_schmidt = best.degenerate_schmidt || has_repeated(sd.coeffs, sd.rank);
      const auto inner = nested(part.left);
      for (int i = 0; i < sd.rank; ++i) {
        const PureState vec = substate(sd.left_vecs[static_cast<std::size_t>(i)], state.dims(), part.left);
        int m = std::numeric_limits<int>::max();
        for (const auto& sub : inner) {
          m = std::min(m, numerical_rank(singular_values(vec, relabel(sub, part.left)), tol));
        }
        sum += m;
      }
    }
    if (sum < best.value) {
      best.value = sum;
      best.argmin = part;
    }
  }
  return best;
}

RankProfile full_profile(const PureState& state, double tol) {
  RankProfile prof = rank_profile(state, tol);
  const auto second = r2_min(state, tol);
  prof.r2_min = second.value;
  prof.r2_degenerate_order = second.degenerate_order;
  prof.r2_degenerate_schmidt = second.degenerate_schmidt;
  return prof;
}

}  // namespace entrobust
