#include "entrobust/state.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace entrobust {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::ZeroFactor: return "ZeroFactor";
    case ErrorCode::TrivialLead: return "TrivialLead";
    case ErrorCode::CancellationToZero: return "CancellationToZero";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::TooFewParties: return "TooFewParties";
    case ErrorCode::NotBipartite: return "NotBipartite";
    case ErrorCode::RankTooLow: return "RankTooLow";
    case ErrorCode::MaximallyEntangledPair: return "MaximallyEntangledPair";
    case ErrorCode::NoRootFound: return "NoRootFound";
    case ErrorCode::MaximallyEntangled: return "MaximallyEntangled";
    case ErrorCode::NotGHZForm: return "NotGHZForm";
    case ErrorCode::BaseNotEntangled: return "BaseNotEntangled";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

std::size_t total_size(std::span<const int> dims) {
  std::size_t n = 1;
  for (int d : dims) n *= static_cast<std::size_t>(d);
  return n;
}

std::size_t flat_index(std::span<const int> dims, std::span<const int> idx) {
  if (idx.size() != dims.size()) {
    throw Error(ErrorCode::ShapeMismatch, "index rank does not match number of parties");
  }
  std::size_t flat = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= dims[i]) {
      throw Error(ErrorCode::ShapeMismatch, "index out of range for party " + std::to_string(i + 1));
    }
    flat = flat * static_cast<std::size_t>(dims[i]) + static_cast<std::size_t>(idx[i]);
  }
  return flat;
}

std::vector<int> multi_index(std::span<const int> dims, std::size_t flat) {
  std::vector<int> idx(dims.size());
  for (std::size_t i = dims.size(); i-- > 0;) {
    idx[i] = static_cast<int>(flat % static_cast<std::size_t>(dims[i]));
    flat /= static_cast<std::size_t>(dims[i]);
  }
  return idx;
}

namespace {

double squared_norm(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return s;
}

}  // namespace

PureState make_state(Dims dims, CVector amps) {
  if (dims.empty()) throw Error(ErrorCode::ShapeMismatch, "state needs at least one party");
  for (int d : dims) {
    if (d < 2) throw Error(ErrorCode::ShapeMismatch, "local dimensions must be >= 2");
  }
  if (amps.size() != total_size(dims)) {
    throw Error(ErrorCode::ShapeMismatch, "expected " + std::to_string(total_size(dims)) +
                                              " amplitudes, got " + std::to_string(amps.size()));
  }
  const double n2 = squared_norm(amps);
  if (!(std::sqrt(n2) >= kZeroNorm)) throw Error(ErrorCode::ZeroVector, "all amplitudes vanish");
  if (std::abs(n2 - 1.0) > 1e-14) {
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : amps) a *= inv;
  }
  return PureState(std::move(dims), std::move(amps));
}

Dims ProductState::dims() const {
  Dims d;
  d.reserve(factors_.size());
  for (const auto& f : factors_) d.push_back(static_cast<int>(f.size()));
  return d;
}

PureState ProductState::to_pure() const {
  CVector amps{cplx{1.0, 0.0}};
  for (const auto& f : factors_) {
    CVector next;
    next.reserve(amps.size() * f.size());
    for (const auto& a : amps) {
      for (const auto& b : f) next.push_back(a * b);
    }
    amps = std::move(next);
  }
  return make_state(dims(), std::move(amps));
}

ProductState product_state(std::vector<CVector> factors) {
  if (factors.empty()) throw Error(ErrorCode::ShapeMismatch, "product state needs factors");
  for (std::size_t i = 0; i < factors.size(); ++i) {
    auto& f = factors[i];
    if (f.size() < 2) throw Error(ErrorCode::ShapeMismatch, "local dimensions must be >= 2");
    const double n = std::sqrt(squared_norm(f));
    if (!(n >= kZeroNorm)) {
      throw Error(ErrorCode::ZeroFactor, "factor " + std::to_string(i + 1) + " is zero");
    }
    for (auto& x : f) x /= n;
  }
  return ProductState(std::move(factors));
}

PureState superpose(cplx lead, const PureState& base, std::span<const PlanTerm> terms) {
  if (lead == cplx{0.0, 0.0}) throw Error(ErrorCode::TrivialLead, "lead coefficient must be nonzero");
  CVector out(base.amps().begin(), base.amps().end());
  if (terms.empty() && lead == cplx{1.0, 0.0}) return base;
  for (auto& a : out) a *= lead;
  for (const auto& t : terms) {
    if (t.state.dims() != base.dims()) {
      throw Error(ErrorCode::ShapeMismatch, "product term dims differ from base state");
    }
    const PureState p = t.state.to_pure();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += t.coeff * p[i];
  }
  if (!(std::sqrt(squared_norm(out)) >= kZeroNorm)) {
    throw Error(ErrorCode::CancellationToZero, "superposition cancels to the zero vector");
  }
  return make_state(base.dims(), std::move(out));
}

PureState apply_plan(const PureState& base, const SuperpositionPlan& plan) {
  return superpose(plan.lead, base, plan.terms);
}

cplx inner_product(const PureState& a, const PureState& b) {
  if (a.dims() != b.dims()) throw Error(ErrorCode::ShapeMismatch, "inner product of different shapes");
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double fidelity(const PureState& a, const PureState& b) { return std::norm(inner_product(a, b)); }

PureState tensor(const PureState& a, const PureState& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  CVector amps;
  amps.reserve(a.size() * b.size());
  for (const auto& x : a.amps()) {
    for (const auto& y : b.amps()) amps.push_back(x * y);
  }
  return make_state(std::move(dims), std::move(amps));
}

Eigen::MatrixXcd bipartition_matrix(const PureState& state, const Bipartition& part) {
  validate(part, state.parties());
  const Dims& dims = state.dims();
  Eigen::Index rows = 1, cols = 1;
  for (int p : part.left) rows *= dims[p];
  for (int p : part.right) cols *= dims[p];

  Eigen::MatrixXcd m(rows, cols);
  std::vector<int> idx(dims.size(), 0);
  for (std::size_t flat = 0; flat < state.size(); ++flat) {
    Eigen::Index r = 0, c = 0;
    for (int p : part.left) r = r * dims[p] + idx[p];
    for (int p : part.right) c = c * dims[p] + idx[p];
    m(r, c) = state[flat];
    // odometer increment, last party fastest
    for (std::size_t k = dims.size(); k-- > 0;) {
      if (++idx[k] < dims[k]) break;
      idx[k] = 0;
    }
  }
  return m;
}

PureState basis_state(Dims dims, std::span<const int> idx) {
  CVector amps(total_size(dims));
  amps[flat_index(dims, idx)] = 1.0;
  return make_state(std::move(dims), std::move(amps));
}

PureState ghz_state(int parties, int dim) {
  if (parties < 1 || dim < 2) throw Error(ErrorCode::InvalidArgument, "ghz_state needs n >= 1, d >= 2");
  Dims dims(static_cast<std::size_t>(parties), dim);
  CVector amps(total_size(dims));
  for (int i = 0; i < dim; ++i) {
    std::vector<int> idx(static_cast<std::size_t>(parties), i);
    amps[flat_index(dims, idx)] = 1.0;
  }
  return make_state(std::move(dims), std::move(amps));
}

PureState w_state(int parties) {
  if (parties < 2) throw Error(ErrorCode::InvalidArgument, "w_state needs n >= 2");
  Dims dims(static_cast<std::size_t>(parties), 2);
  CVector amps(total_size(dims));
  for (int k = 0; k < parties; ++k) amps[std::size_t{1} << k] = 1.0;
  return make_state(std::move(dims), std::move(amps));
}

CVector random_vector(int dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(static_cast<std::size_t>(dim));
  for (auto& x : v) {
    const double re = normal(rng);
    const double im = normal(rng);
    x = {re, im};
  }
  return v;
}

PureState random_state(const Dims& dims, Rng& rng) {
  return make_state(dims, random_vector(static_cast<int>(total_size(dims)), rng));
}

ProductState random_product(const Dims& dims, Rng& rng) {
  std::vector<CVector> f;
  f.reserve(dims.size());
  for (int d : dims) f.push_back(random_vector(d, rng));
  return product_state(std::move(f));
}

std::vector<cplx> random_unitary(int dim, Rng& rng) {
  const CVector g = random_vector(dim * dim, rng);
  Eigen::MatrixXcd a(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) a(r, c) = g[static_cast<std::size_t>(r * dim + c)];
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix column phases so the distribution is Haar
  for (int c = 0; c < dim; ++c) {
    const cplx d = rmat(c, c);
    const double ad = std::abs(d);
    if (ad > 0) q.col(c) *= d / ad;
  }
  std::vector<cplx> out(static_cast<std::size_t>(dim * dim));
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) out[static_cast<std::size_t>(r * dim + c)] = q(r, c);
  }
  return out;
}

PureState apply_local(const PureState& state, std::span<const std::vector<cplx>> unitaries) {
  const Dims& dims = state.dims();
  if (unitaries.size() != dims.size()) {
    throw Error(ErrorCode::ShapeMismatch, "need one unitary per party");
  }
  CVector cur(state.amps().begin(), state.amps().end());
  std::size_t inner = cur.size();
  std::size_t outer = 1;
  for (std::size_t p = 0; p < dims.size(); ++p) {
    const auto d = static_cast<std::size_t>(dims[p]);
    const auto& u = unitaries[p];
    if (u.size() != d * d) throw Error(ErrorCode::ShapeMismatch, "unitary size mismatch");
    inner /= d;
    CVector next(cur.size());
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          const cplx uij = u[i * d + j];
          const std::size_t dst = (o * d + i) * inner;
          const std::size_t src = (o * d + j) * inner;
          for (std::size_t k = 0; k < inner; ++k) next[dst + k] += uij * cur[src + k];
        }
      }
    }
    cur = std::move(next);
    outer *= d;
  }
  return make_state(dims, std::move(cur));
}

}  // namespace entrobust
