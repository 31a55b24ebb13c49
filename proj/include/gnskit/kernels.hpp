#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gnskit/duality.hpp"

namespace gnskit {

/// Reproducing operator of a Hilbert subspace of the anti-dual: a hermitian
/// PSD matrix. The subspace is range(H) with squared norm phi^H H^+ phi.
class Kernel {
 public:
  /// Throws NonSquare, NotHermitian, NotPsd.
  explicit Kernel(ComplexMatrix h, const TolerancePolicy& pol = {});

  static Kernel zero(std::size_t dim);

  const ComplexMatrix& matrix() const { return h_; }
  std::size_t dim() const { return static_cast<std::size_t>(h_.rows()); }
  std::size_t rank() const { return rank_; }
  double max_eigenvalue() const { return max_eigenvalue_; }

 private:
  Kernel() = default;
  ComplexMatrix h_;
  std::size_t rank_ = 0;
  double max_eigenvalue_ = 0.0;
};

struct SubspaceElement {
  DualVector vector;
  double norm_sq = 0.0;
  double residual = 0.0;  // distance from phi to range(H)
};

/// The element phi of the subspace reproduced by K, if phi lies in range(H).
std::optional<SubspaceElement> membership(const Kernel& k, const DualVector& phi,
                                          const TolerancePolicy& pol = {});
/// Distance from phi to range(H), reported even when membership fails.
double range_residual(const Kernel& k, const DualVector& phi, const TolerancePolicy& pol = {});

Kernel kernel_sum(const Kernel& k1, const Kernel& k2, const TolerancePolicy& pol = {});
Kernel kernel_scale(double lambda, const Kernel& k, const TolerancePolicy& pol = {});
bool kernel_leq(const Kernel& k1, const Kernel& k2, const TolerancePolicy& pol = {});
/// H - H1 when K1 <= K; throws NotDominated otherwise.
Kernel kernel_difference(const Kernel& k, const Kernel& k1, const TolerancePolicy& pol = {});
/// Ranges intersect trivially, i.e. rank(H1) + rank(H2) = rank(H1 + H2).
bool mutually_excluding(const Kernel& k1, const Kernel& k2, const TolerancePolicy& pol = {});

struct DominatingScale {
  enum class Status { Found, RangeMismatch, ZeroKernel };
  Status status = Status::RangeMismatch;
  double scale = 0.0;  // meaningful only when Found

  std::optional<double> value() const {
    return status == Status::Found ? std::optional<double>(scale) : std::nullopt;
  }
};

/// Least lambda with H1 <= lambda H2, when range(H1) lies inside range(H2).
DominatingScale min_dominating_scale(const Kernel& k1, const Kernel& k2,
                                     const TolerancePolicy& pol = {});

/// K1 <= K and K1, K - K1 mutually excluding.
bool ordinary_subrep_check(const Kernel& k1, const Kernel& k, const TolerancePolicy& pol = {});

enum class ChainDirection { Decreasing, Increasing };

struct ChainOptions {
  std::size_t max_steps = 10000;
  double growth_bound = 1e12;  // ceiling on the basis quadratic forms x^H H_i x
};

struct ChainResult {
  Kernel limit;
  std::size_t steps = 0;  // number of terms generated
};

/// Limit of a monotone chain of kernels given by a pure generator of the
/// index. Throws MonotonicityViolation, NotMajorized, NoConvergence.
ChainResult chain_limit(const std::function<Kernel(std::size_t)>& generator,
                        ChainDirection direction, const TolerancePolicy& pol = {},
                        const ChainOptions& options = {});

struct WeightedKernel {
  double weight = 0.0;
  Kernel kernel;
};

struct WeightedSum {
  Kernel sum;
  bool is_direct = false;
};

/// sum_i w_i H_i; direct when the positive-weight ranks add up to the rank of
/// the sum. With quadrature weights this is a finite integral of kernels.
WeightedSum weighted_kernel_sum(const std::vector<WeightedKernel>& terms,
                                const TolerancePolicy& pol = {});

struct QuadratureNode {
  double node = 0.0;
  double weight = 0.0;
};

/// Composite trapezoid rule on [lo, hi] with `count` >= 2 equispaced nodes.
std::vector<QuadratureNode> trapezoid_rule(double lo, double hi, std::size_t count);

}  // namespace gnskit
