#include "entrobust/search.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <thread>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "entrobust/robustness.hpp"

namespace entrobust {

double gme_gap(const PureState& state) {
  double gap = std::numeric_limits<double>::infinity();
  for (const auto& part : enumerate_unordered(state.parties())) {
    gap = std::min(gap, singular_values(state, part)[1]);
  }
  return gap;
}

double sep_gap(const PureState& state) {
  double gap = 0.0;
  for (const auto& part : enumerate_unordered(state.parties())) {
    gap = std::max(gap, singular_values(state, part)[1]);
  }
  return gap;
}

void validate(const SearchConfig& cfg) {
  if (cfg.k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  if (cfg.restarts < 1) throw Error(ErrorCode::InvalidArgument, "restarts must be >= 1");
  if (cfg.max_iters < 1) throw Error(ErrorCode::InvalidArgument, "max_iters must be >= 1");
  if (!(cfg.success_threshold > 0.0 && cfg.success_threshold < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "success_threshold must lie in (0, 1)");
  }
  if (!(cfg.min_lead_weight > 0.0 && cfg.min_lead_weight < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "min_lead_weight must lie in (0, 1)");
  }
}

namespace {

struct Score {
  double surrogate;  // smooth objective being minimized
  double gap;        // exact sigma_2 measure
};

// Evaluates superpositions lead*base + sum_j c_j (x)_i f_ji for a flat
// parameter vector [lead, Re c_1, Im c_1, ..., factor entries (re, im)...].
class Evaluator {
 public:
  Evaluator(const PureState& base, const SearchConfig& cfg)
      : base_(base), cfg_(cfg), dims_(base.dims()) {
    for (auto part : enumerate_unordered(base.parties())) {
      Cut cut;
      Eigen::Index rows = 1, cols = 1;
      for (int p : part.left) rows *= dims_[p];
      for (int p : part.right) cols *= dims_[p];
      if (rows > cols) {
        part = part.swapped();
        std::swap(rows, cols);
      }
      cut.rows = rows;
      cut.cols = cols;
      for (std::size_t flat = 0; flat < base.size(); ++flat) {
        const auto idx = multi_index(dims_, flat);
        Eigen::Index r = 0, c = 0;
        for (int p : part.left) r = r * dims_[p] + idx[p];
        for (int p : part.right) c = c * dims_[p] + idx[p];
        cut.row.push_back(r);
        cut.col.push_back(c);
      }
      cuts_.push_back(std::move(cut));
    }
    local_ = 0;
    for (int d : dims_) local_ += 2 * static_cast<std::size_t>(d);
  }

  std::size_t size() const { return 1 + static_cast<std::size_t>(cfg_.k) * (2 + local_); }

  Score operator()(const std::vector<double>& x) const {
    const double bad = 10.0 * static_cast<double>(cuts_.size());
    const double lead = x[0];
    CVector amps(base_.size());
    for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = lead * base_[i];

    std::size_t off = 1 + 2 * static_cast<std::size_t>(cfg_.k);
    for (int j = 0; j < cfg_.k; ++j) {
      const cplx c{x[1 + 2 * j], x[2 + 2 * j]};
      CVector prod{c};
      for (int d : dims_) {
        double n2 = 0.0;
        for (int a = 0; a < d; ++a) n2 += x[off + 2 * a] * x[off + 2 * a] + x[off + 2 * a + 1] * x[off + 2 * a + 1];
        if (!(n2 > 1e-24)) return {bad, 1.0};
        const double inv = 1.0 / std::sqrt(n2);
        CVector next;
        next.reserve(prod.size() * static_cast<std::size_t>(d));
        for (const auto& pv : prod) {
          for (int a = 0; a < d; ++a) next.push_back(pv * cplx{x[off + 2 * a] * inv, x[off + 2 * a + 1] * inv});
        }
        prod = std::move(next);
        off += 2 * static_cast<std::size_t>(d);
      }
      for (std::size_t i = 0; i < amps.size(); ++i) amps[i] += prod[i];
    }

    double n2 = 0.0;
    for (const auto& a : amps) n2 += std::norm(a);
    const double norm = std::sqrt(n2);
    if (!(norm > kZeroNorm)) return {bad, 1.0};
    const double weight = std::abs(lead) / norm;
    if (weight < cfg_.min_lead_weight) return {bad + (cfg_.min_lead_weight - weight), 1.0};

    const bool gme = cfg_.objective == Objective::BreakGME;
    Score s{gme ? std::numeric_limits<double>::infinity() : 0.0, gme ? std::numeric_limits<double>::infinity() : 0.0};
    Eigen::MatrixXcd m;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig;
    for (const auto& cut : cuts_) {
      m.setZero(cut.rows, cut.cols);
      for (std::size_t i = 0; i < amps.size(); ++i) m(cut.row[i], cut.col[i]) = amps[i] / norm;
      // squared singular values from the small Gram matrix; exact SVD once
      // the tail is too small for the eigenvalues to resolve
      eig.compute(m * m.adjoint(), Eigen::EigenvaluesOnly);
      const auto& ev = eig.eigenvalues();
      const Eigen::Index top = ev.size() - 1;
      double tail = 0.0;
      for (Eigen::Index i = 0; i < top; ++i) tail += std::max(ev(i), 0.0);
      double second = std::sqrt(std::max(ev(top - 1), 0.0));
      if (tail < 1e-10) {
        const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
        const auto& sv = svd.singularValues();
        tail = 0.0;
        for (Eigen::Index i = 1; i < sv.size(); ++i) tail += sv(i) * sv(i);
        second = sv(1);
      }
      if (gme) {
        s.surrogate = std::min(s.surrogate, tail);
        s.gap = std::min(s.gap, second);
      } else {
        s.surrogate += tail;
        s.gap = std::max(s.gap, second);
      }
    }
    return s;
  }

  SuperpositionPlan plan(const std::vector<double>& x) const {
    SuperpositionPlan plan;
    plan.lead = x[0];
    std::size_t off = 1 + 2 * static_cast<std::size_t>(cfg_.k);
    for (int j = 0; j < cfg_.k; ++j) {
      std::vector<CVector> factors;
      for (int d : dims_) {
        CVector f(static_cast<std::size_t>(d));
        for (int a = 0; a < d; ++a) f[static_cast<std::size_t>(a)] = {x[off + 2 * a], x[off + 2 * a + 1]};
        factors.push_back(std::move(f));
        off += 2 * static_cast<std::size_t>(d);
      }
      plan.terms.push_back({cplx{x[1 + 2 * j], x[2 + 2 * j]}, product_state(std::move(factors))});
    }
    return plan;
  }

 private:
  struct Cut {
    Eigen::Index rows = 0, cols = 0;
    std::vector<Eigen::Index> row, col;
  };

  const PureState& base_;
  const SearchConfig& cfg_;
  Dims dims_;
  std::vector<Cut> cuts_;
  std::size_t local_ = 0;
};

struct RestartResult {
  double gap = 1.0;
  std::vector<double> x;
  long sweeps = 0;
};

RestartResult run_restart(const Evaluator& eval, const SearchConfig& cfg, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(index)};
  Rng rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<double> x(eval.size());
  x[0] = 1.0;
  for (std::size_t i = 1; i < x.size(); ++i) x[i] = normal(rng);
  for (int j = 0; j < cfg.k; ++j) {
    x[1 + 2 * j] *= 0.5;
    x[2 + 2 * j] *= 0.5;
  }

  Score cur = eval(x);
  std::vector<double> step(x.size(), 0.1);
  RestartResult res;
  int stalled = 0;
  for (res.sweeps = 0; res.sweeps < cfg.max_iters;) {
    ++res.sweeps;
    const double before = cur.surrogate;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double h = step[i];
      const double x0 = x[i];
      x[i] = x0 + h;
      const Score fp = eval(x);
      x[i] = x0 - h;
      const Score fm = eval(x);

      double best_x = x0;
      Score best = cur;
      if (fp.surrogate < best.surrogate) best = fp, best_x = x0 + h;
      if (fm.surrogate < best.surrogate) best = fm, best_x = x0 - h;

      // vertex of the parabola through the three samples
      const double curv = fp.surrogate - 2.0 * cur.surrogate + fm.surrogate;
      if (curv > 0.0) {
        double t = 0.5 * h * (fm.surrogate - fp.surrogate) / curv;
        t = std::clamp(t, -8.0 * h, 8.0 * h);
        x[i] = x0 + t;
        const Score ft = eval(x);
        if (ft.surrogate < best.surrogate) best = ft, best_x = x0 + t;
      }

      x[i] = best_x;
      const double moved = std::abs(best_x - x0);
      if (moved > 0.0) {
        step[i] = std::max(std::min(2.0 * moved, 1.0), 1e-15);
      } else {
        step[i] = std::max(0.25 * h, 1e-15);
      }
      cur = best;
    }
    if (cur.gap < cfg.success_threshold) break;
    // at under 0.1% per sweep the threshold is out of reach within max_iters
    if (before - cur.surrogate <= 1e-3 * before) {
      if (++stalled >= 25) break;
    } else {
      stalled = 0;
    }
  }
  res.gap = cur.gap;
  res.x = std::move(x);
  return res;
}

}  // namespace

SearchReport adversarial_search(const PureState& base, const SearchConfig& cfg) {
  validate(cfg);
  if (base.parties() < 2) throw Error(ErrorCode::TooFewParties, "search needs at least two parties");
  if (!is_entangled(classify(base).kind)) {
    throw Error(ErrorCode::BaseNotEntangled, "base state is a full product");
  }

  const Evaluator eval(base, cfg);
  std::vector<RestartResult> results(static_cast<std::size_t>(cfg.restarts));
  const unsigned workers = std::max(1u, std::min(std::thread::hardware_concurrency(),
                                                 static_cast<unsigned>(cfg.restarts)));
  std::vector<std::future<void>> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.push_back(std::async(std::launch::async, [&, w] {
      for (int r = static_cast<int>(w); r < cfg.restarts; r += static_cast<int>(workers)) {
        results[static_cast<std::size_t>(r)] = run_restart(eval, cfg, r);
      }
    }));
  }
  for (auto& f : pool) f.get();

  SearchReport rep;
  for (int r = 0; r < cfg.restarts; ++r) {
    const auto& res = results[static_cast<std::size_t>(r)];
    rep.iterations_used += res.sweeps;
    if (rep.best_restart < 0 || res.gap < rep.best_gap) {
      rep.best_gap = res.gap;
      rep.best_restart = r;
    }
  }
  rep.succeeded = rep.best_gap < cfg.success_threshold;
  if (rep.succeeded) rep.best_plan = eval.plan(results[static_cast<std::size_t>(rep.best_restart)].x);
  return rep;
}

}  // namespace entrobust
