#include "gnskit/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gnskit {

Kernel::Kernel(ComplexMatrix h, const TolerancePolicy& pol) : h_(std::move(h)) {
  if (h_.rows() != h_.cols()) throw Error(ErrorKind::NonSquare, "kernel matrix must be square");
  require_finite(h_, "kernel matrix");
  const double defect = hermitian_defect(h_);
  if (defect > pol.match_tol * (1.0 + max_abs(h_))) {
    std::ostringstream os;
    os << "kernel matrix is not hermitian (asymmetry " << defect << ")";
    throw Error(ErrorKind::NotHermitian, os.str());
  }
  const auto psd = psd_check(h_, pol);
  if (!psd.is_psd) {
    std::ostringstream os;
    os << "kernel matrix has eigenvalue " << psd.min_eigenvalue;
    throw Error(ErrorKind::NotPsd, os.str());
  }
  rank_ = psd.rank;
  max_eigenvalue_ = std::max(psd.max_eigenvalue, 0.0);
}

Kernel Kernel::zero(std::size_t dim) {
  Kernel k;
  const auto n = static_cast<Eigen::Index>(dim);
  k.h_ = ComplexMatrix::Zero(n, n);
  return k;
}

namespace {

void require_same_dim(const Kernel& a, const Kernel& b) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << "kernels of dimension " << a.dim() << " and " << b.dim();
    throw Error(ErrorKind::DimMismatch, os.str());
  }
}

double joint_scale(const Kernel& a, const Kernel& b) {
  return std::max(a.max_eigenvalue(), b.max_eigenvalue());
}

}  // namespace

double range_residual(const Kernel& k, const DualVector& phi, const TolerancePolicy& pol) {
  if (static_cast<std::size_t>(phi.coords.size()) != k.dim()) {
    throw Error(ErrorKind::DimMismatch, "vector length differs from kernel dimension");
  }
  const ComplexMatrix basis = range_basis(k.matrix(), pol);
  const ComplexVector projected = basis * (basis.adjoint() * phi.coords);
  return (phi.coords - projected).norm();
}

std::optional<SubspaceElement> membership(const Kernel& k, const DualVector& phi,
                                          const TolerancePolicy& pol) {
  const double residual = range_residual(k, phi, pol);
  if (residual >= pol.rel_rank_tol * (1.0 + phi.coords.norm())) return std::nullopt;
  const ComplexMatrix pinv = pseudo_inverse(k.matrix(), pol);
  const double norm_sq = phi.coords.dot(pinv * phi.coords).real();
  return SubspaceElement{phi, std::max(norm_sq, 0.0), residual};
}

Kernel kernel_sum(const Kernel& k1, const Kernel& k2, const TolerancePolicy& pol) {
  require_same_dim(k1, k2);
  return Kernel(k1.matrix() + k2.matrix(), pol);
}

Kernel kernel_scale(double lambda, const Kernel& k, const TolerancePolicy& pol) {
  if (!(lambda >= 0.0)) throw Error(ErrorKind::NegativeScalar, "kernel scale must be nonnegative");
  if (lambda == 0.0) return Kernel::zero(k.dim());
  return Kernel(lambda * k.matrix(), pol);
}

bool kernel_leq(const Kernel& k1, const Kernel& k2, const TolerancePolicy& pol) {
  require_same_dim(k1, k2);
  return psd_check(ComplexMatrix(k2.matrix() - k1.matrix()), pol, joint_scale(k1, k2)).is_psd;
}

Kernel kernel_difference(const Kernel& k, const Kernel& k1, const TolerancePolicy& pol) {
  if (!kernel_leq(k1, k, pol)) {
    throw Error(ErrorKind::NotDominated, "subtracted kernel is not dominated by the minuend");
  }
  // Accept roundoff-level negative eigenvalues relative to the operands.
  TolerancePolicy relaxed = pol;
  relaxed.psd_tol = pol.psd_tol * (1.0 + joint_scale(k, k1));
  return Kernel(k.matrix() - k1.matrix(), relaxed);
}

bool mutually_excluding(const Kernel& k1, const Kernel& k2, const TolerancePolicy& pol) {
  require_same_dim(k1, k2);
  const double scale = joint_scale(k1, k2);
  const auto r1 = psd_check(k1.matrix(), pol, scale).rank;
  const auto r2 = psd_check(k2.matrix(), pol, scale).rank;
  const auto r12 = psd_check(ComplexMatrix(k1.matrix() + k2.matrix()), pol, scale).rank;
  return r1 + r2 == r12;
}

DominatingScale min_dominating_scale(const Kernel& k1, const Kernel& k2,
                                     const TolerancePolicy& pol) {
  require_same_dim(k1, k2);
  DominatingScale out;
  if (k1.rank() == 0) {
    out.status = DominatingScale::Status::ZeroKernel;
    return out;
  }
  const ComplexMatrix basis2 = range_basis(k2.matrix(), pol);
  const ComplexMatrix outside = k1.matrix() - basis2 * (basis2.adjoint() * k1.matrix());
  if (max_abs(outside) > pol.match_tol * (1.0 + max_abs(k1.matrix()))) {
    out.status = DominatingScale::Status::RangeMismatch;
    return out;
  }
  const ComplexMatrix root = pseudo_inverse_sqrt(k2.matrix(), pol);
  const auto eig = hermitian_eigen(ComplexMatrix(root * k1.matrix() * root), pol);
  out.status = DominatingScale::Status::Found;
  out.scale = eig.values(0);
  return out;
}

bool ordinary_subrep_check(const Kernel& k1, const Kernel& k, const TolerancePolicy& pol) {
  require_same_dim(k1, k);
  if (!kernel_leq(k1, k, pol)) return false;
  const double scale = joint_scale(k, k1);
  const ComplexMatrix diff = k.matrix() - k1.matrix();
  const auto r1 = psd_check(k1.matrix(), pol, scale).rank;
  const auto r2 = psd_check(diff, pol, scale).rank;
  const auto r = psd_check(k.matrix(), pol, scale).rank;
  return r1 + r2 == r;
}

ChainResult chain_limit(const std::function<Kernel(std::size_t)>& generator,
                        ChainDirection direction, const TolerancePolicy& pol,
                        const ChainOptions& options) {
  auto check_growth = [&](const Kernel& k, std::size_t step) {
    if (direction != ChainDirection::Increasing || k.dim() == 0) return;
    const double biggest = k.matrix().diagonal().real().maxCoeff();
    if (biggest > options.growth_bound) {
      std::ostringstream os;
      os << "increasing chain exceeds the growth bound " << options.growth_bound
         << " at step " << step;
      throw Error(ErrorKind::NotMajorized, os.str());
    }
  };

  Kernel previous = generator(0);
  check_growth(previous, 0);
  for (std::size_t i = 1; i < options.max_steps; ++i) {
    Kernel current = generator(i);
    require_same_dim(previous, current);
    const bool monotone = direction == ChainDirection::Decreasing
                              ? kernel_leq(current, previous, pol)
                              : kernel_leq(previous, current, pol);
    if (!monotone) {
      throw Error(ErrorKind::MonotonicityViolation,
                  "chain is not monotone at step " + std::to_string(i));
    }
    check_growth(current, i);
    if (max_abs(ComplexMatrix(current.matrix() - previous.matrix())) < pol.match_tol) {
      return {std::move(current), i + 1};
    }
    previous = std::move(current);
  }
  throw Error(ErrorKind::NoConvergence,
              "chain did not converge within " + std::to_string(options.max_steps) + " steps");
}

WeightedSum weighted_kernel_sum(const std::vector<WeightedKernel>& terms,
                                const TolerancePolicy& pol) {
  if (terms.empty()) throw Error(ErrorKind::ShapeMismatch, "weighted sum needs at least one term");
  const auto n = static_cast<Eigen::Index>(terms.front().kernel.dim());
  ComplexMatrix total = ComplexMatrix::Zero(n, n);
  double scale = 0.0;
  for (const auto& t : terms) {
    require_same_dim(terms.front().kernel, t.kernel);
    if (!(t.weight >= 0.0)) throw Error(ErrorKind::NegativeWeight, "weights must be nonnegative");
    total += t.weight * t.kernel.matrix();
    scale = std::max(scale, t.weight * t.kernel.max_eigenvalue());
  }
  Kernel sum(std::move(total), pol);
  std::size_t rank_total = 0;
  for (const auto& t : terms) {
    if (t.weight > 0.0) rank_total += t.kernel.rank();
  }
  const bool direct = rank_total == psd_check(sum.matrix(), pol, scale).rank;
  return {std::move(sum), direct};
}

std::vector<QuadratureNode> trapezoid_rule(double lo, double hi, std::size_t count) {
  if (count < 2) throw Error(ErrorKind::ShapeMismatch, "trapezoid rule needs at least two nodes");
  const double h = (hi - lo) / static_cast<double>(count - 1);
  std::vector<QuadratureNode> nodes;
  for (std::size_t i = 0; i < count; ++i) {
    const bool end = i == 0 || i + 1 == count;
    nodes.push_back({lo + h * static_cast<double>(i), end ? h / 2.0 : h});
  }
  return nodes;
}

}  // namespace gnskit
