#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "entrobust/error.hpp"
#include "entrobust/partitions.hpp"

namespace entrobust {

using cplx = std::complex<double>;
using Dims = std::vector<int>;
using CVector = std::vector<cplx>;

// Absolute threshold below which a vector norm counts as zero.
inline constexpr double kZeroNorm = 1e-12;

std::size_t total_size(std::span<const int> dims);

// Row-major flat index <-> multi-index over `dims`.
std::size_t flat_index(std::span<const int> dims, std::span<const int> idx);
std::vector<int> multi_index(std::span<const int> dims, std::size_t flat);

/// Normalized dense amplitude tensor of an n-partite pure state.
///
/// Amplitudes are stored row-major: party 0 is the slowest index. Instances
/// are immutable and always have unit norm.
class PureState {
 public:
  const Dims& dims() const noexcept { return dims_; }
  int parties() const noexcept { return static_cast<int>(dims_.size()); }
  std::size_t size() const noexcept { return amps_.size(); }
  std::span<const cplx> amps() const noexcept { return amps_; }
  cplx operator[](std::size_t i) const { return amps_[i]; }
  cplx at(std::span<const int> idx) const { return amps_[flat_index(dims_, idx)]; }

 private:
  PureState(Dims dims, CVector amps) : dims_(std::move(dims)), amps_(std::move(amps)) {}

  Dims dims_;
  CVector amps_;

  friend PureState make_state(Dims dims, CVector amps);
};

/// Validates shapes and normalizes. Throws ShapeMismatch or ZeroVector.
///
/// Every local dimension must be at least 2. A vector whose squared norm is
/// already within 1e-14 of one is stored unchanged, so re-parsing a
/// serialized state reproduces it bit for bit.
PureState make_state(Dims dims, CVector amps);

/// Tensor product of one local vector per party. Factors are normalized on
/// construction.
class ProductState {
 public:
  const std::vector<CVector>& factors() const noexcept { return factors_; }
  const CVector& factor(int party) const { return factors_.at(static_cast<std::size_t>(party)); }
  Dims dims() const;
  int parties() const noexcept { return static_cast<int>(factors_.size()); }

  PureState to_pure() const;

 private:
  explicit ProductState(std::vector<CVector> f) : factors_(std::move(f)) {}
  std::vector<CVector> factors_;

  friend ProductState product_state(std::vector<CVector> factors);
};

/// Throws ZeroFactor when any factor is (numerically) zero.
ProductState product_state(std::vector<CVector> factors);

struct PlanTerm {
  cplx coeff;
  ProductState state;
};

/// lead * base + sum_j coeff_j * product_j, before renormalization.
struct SuperpositionPlan {
  cplx lead{1.0, 0.0};
  std::vector<PlanTerm> terms;
};

/// Normalized lead*base + sum of terms. Throws TrivialLead for lead == 0,
/// ShapeMismatch for inconsistent dims and CancellationToZero when the
/// unnormalized result has norm below 1e-12.
PureState superpose(cplx lead, const PureState& base, std::span<const PlanTerm> terms);
PureState apply_plan(const PureState& base, const SuperpositionPlan& plan);

/// <a|b>, conjugate-linear in `a`.
cplx inner_product(const PureState& a, const PureState& b);
double fidelity(const PureState& a, const PureState& b);

PureState tensor(const PureState& a, const PureState& b);

/// Reshape across `part`: rows run over the left parties, columns over the
/// right parties, each in row-major order of their party labels. Throws
/// InvalidPartition.
Eigen::MatrixXcd bipartition_matrix(const PureState& state, const Bipartition& part);

// Common states.
PureState basis_state(Dims dims, std::span<const int> idx);
/// (1/sqrt d) sum_i |i...i> on n parties of dimension d.
PureState ghz_state(int parties, int dim);
/// Equal superposition of the single-excitation qubit states.
PureState w_state(int parties);

// Seeded sampling: complex-normal entries, then normalize.
using Rng = std::mt19937_64;
CVector random_vector(int dim, Rng& rng);
PureState random_state(const Dims& dims, Rng& rng);
ProductState random_product(const Dims& dims, Rng& rng);

/// Haar-like random unitary from the QR decomposition of a Ginibre matrix,
/// returned row-major.
std::vector<cplx> random_unitary(int dim, Rng& rng);

/// Applies one unitary per party (row-major dim x dim each).
PureState apply_local(const PureState& state, std::span<const std::vector<cplx>> unitaries);

}  // namespace entrobust
