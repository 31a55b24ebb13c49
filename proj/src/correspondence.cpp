#include "gnskit/correspondence.hpp"

#include <algorithm>
#include <sstream>

namespace gnskit {

ValidationReport validate_homomorphism(const FiniteStarAlgebra& source,
                                       const FiniteStarAlgebra& target,
                                       const ComplexMatrix& matrix,
                                       const TolerancePolicy& pol) {
  if (matrix.rows() != static_cast<Eigen::Index>(target.dim()) ||
      matrix.cols() != static_cast<Eigen::Index>(source.dim())) {
    std::ostringstream os;
    os << "homomorphism matrix is " << matrix.rows() << "x" << matrix.cols() << ", expected "
       << target.dim() << "x" << source.dim();
    throw Error(ErrorKind::DimMismatch, os.str());
  }
  auto image = [&](const AlgebraElement& x) { return AlgebraElement{matrix * x.coords}; };
  double mult = 0.0, star = 0.0;
  for (std::size_t i = 0; i < source.dim(); ++i) {
    const auto ei = basis_element(source, i);
    for (std::size_t j = 0; j < source.dim(); ++j) {
      const auto ej = basis_element(source, j);
      const ComplexVector lhs = image(multiply(source, ei, ej)).coords;
      const ComplexVector rhs = multiply(target, image(ei), image(ej)).coords;
      mult = std::max(mult, max_abs(ComplexVector(lhs - rhs)));
    }
    const ComplexVector lhs = image(involute(source, ei)).coords;
    const ComplexVector rhs = involute(target, image(ei)).coords;
    star = std::max(star, max_abs(ComplexVector(lhs - rhs)));
  }
  const double unital = max_abs(ComplexVector(matrix * source.unit() - target.unit()));
  ValidationReport report;
  report.add("multiplicative", mult, pol.match_tol);
  report.add("star", star, pol.match_tol);
  report.add("unital", unital, pol.match_tol);
  return report;
}

StarHomomorphism::StarHomomorphism(FiniteStarAlgebra source, FiniteStarAlgebra target,
                                   ComplexMatrix matrix, const TolerancePolicy& pol)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  const auto report = validate_homomorphism(source_, target_, matrix_, pol);
  if (!report.passed()) {
    std::ostringstream os;
    os << "not a unital *-homomorphism:";
    for (const auto& c : report.checks) {
      if (!c.passed()) os << " " << c.name << " violation " << c.violation << ";";
    }
    throw Error(ErrorKind::InvalidHomomorphism, os.str());
  }
}

AlgebraElement StarHomomorphism::apply(const AlgebraElement& x) const {
  if (static_cast<std::size_t>(x.coords.size()) != source_.dim()) {
    throw Error(ErrorKind::DimMismatch, "element does not live on the homomorphism source");
  }
  return {matrix_ * x.coords};
}

StarHomomorphism compose(const StarHomomorphism& outer, const StarHomomorphism& inner,
                         const TolerancePolicy& pol) {
  if (!same_algebra(inner.target(), outer.source(), pol.match_tol)) {
    throw Error(ErrorKind::AlgebraMismatch, "homomorphisms are not composable");
  }
  return StarHomomorphism(inner.source(), outer.target(), outer.matrix() * inner.matrix(), pol);
}

FiniteStarAlgebra scalar_algebra() {
  return FiniteStarAlgebra(1, {Complex(1.0)}, ComplexMatrix::Identity(1, 1),
                           ComplexVector::Ones(1), {"1"});
}

StarHomomorphism unit_embedding(const FiniteStarAlgebra& a, const TolerancePolicy& pol) {
  ComplexMatrix m = a.unit();
  return StarHomomorphism(scalar_algebra(), a, std::move(m), pol);
}

Kernel functional_to_kernel(const FiniteStarAlgebra& a, const Functional& rho,
                            const TolerancePolicy& pol) {
  if (!is_positive(a, rho, pol).positive) {
    throw Error(ErrorKind::NotPositive, "functional is not positive");
  }
  return Kernel(gram_matrix(a, rho), pol);
}

double star_invariance_defect(const FiniteStarAlgebra& a, const Kernel& k) {
  if (k.dim() != a.dim()) {
    throw Error(ErrorKind::DimMismatch, "kernel dimension differs from algebra dimension");
  }
  double defect = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const ComplexMatrix pi = dual_regular_action(a, basis_element(a, i));
    defect = std::max(defect, max_abs(ComplexMatrix(pi * k.matrix() - k.matrix() * a.basis_left_mult(i))));
  }
  return defect;
}

bool is_star_invariant(const FiniteStarAlgebra& a, const Kernel& k, const TolerancePolicy& pol) {
  return star_invariance_defect(a, k) < pol.match_tol * (1.0 + max_abs(k.matrix()));
}

Functional kernel_to_functional(const FiniteStarAlgebra& a, const Kernel& k,
                                const TolerancePolicy& pol) {
  if (!is_star_invariant(a, k, pol)) {
    throw Error(ErrorKind::NotStarInvariant, "kernel is not *-invariant");
  }
  return {k.matrix().transpose() * a.unit().conjugate()};
}

GNSRepresentation kernel_to_rep(const FiniteStarAlgebra& a, const Kernel& k,
                                const TolerancePolicy& pol) {
  return gns_construct(a, kernel_to_functional(a, k, pol), pol);
}

Kernel rep_to_kernel(const GNSRepresentation& rep, const TolerancePolicy& pol) {
  const auto report = verify_star_rep(rep, pol);
  if (!report.passed()) {
    std::ostringstream os;
    os << "representation fails verification (max violation " << report.max_violation() << ")";
    throw Error(ErrorKind::InvalidRepresentation, os.str());
  }
  const auto n = static_cast<Eigen::Index>(rep.algebra.dim());
  ComplexMatrix t(static_cast<Eigen::Index>(rep.rep_dim), n);
  for (Eigen::Index j = 0; j < n; ++j) {
    t.col(j) = rep.matrices[static_cast<std::size_t>(j)] * rep.cyclic_vector;
  }
  return Kernel(t.adjoint() * t, pol);
}

Kernel pullback(const StarHomomorphism& alpha, const Kernel& k2, const TolerancePolicy& pol) {
  if (!is_star_invariant(alpha.target(), k2, pol)) {
    throw Error(ErrorKind::NotStarInvariant, "kernel is not *-invariant on the target algebra");
  }
  Kernel k1(alpha.matrix().adjoint() * k2.matrix() * alpha.matrix(), pol);
  const double defect = star_invariance_defect(alpha.source(), k1);
  if (defect >= 10.0 * pol.match_tol * (1.0 + max_abs(k1.matrix()))) {
    std::ostringstream os;
    os << "pulled-back kernel is not *-invariant (defect " << defect << ")";
    throw Error(ErrorKind::PullbackInvarianceFailure, os.str());
  }
  return k1;
}

ValidationReport cone_morphism_audit(const FiniteStarAlgebra& a, const Functional& rho1,
                                     const Functional& rho2, double lambda,
                                     const TolerancePolicy& pol) {
  if (!(lambda >= 0.0)) throw Error(ErrorKind::NegativeScalar, "scale must be nonnegative");
  const Kernel k1 = functional_to_kernel(a, rho1, pol);
  const Kernel k2 = functional_to_kernel(a, rho2, pol);

  const Kernel of_sum = functional_to_kernel(a, {rho1.values + rho2.values}, pol);
  const Kernel sum_of = kernel_sum(k1, k2, pol);
  const Kernel of_scaled = functional_to_kernel(a, {lambda * rho1.values}, pol);
  const Kernel scaled_of = kernel_scale(lambda, k1, pol);

  const bool functional_order = is_positive(a, {rho2.values - rho1.values}, pol).positive;
  const bool kernel_order = kernel_leq(k1, k2, pol);

  ValidationReport report;
  report.add("sum", max_abs(ComplexMatrix(of_sum.matrix() - sum_of.matrix())), pol.match_tol);
  report.add("scale", max_abs(ComplexMatrix(of_scaled.matrix() - scaled_of.matrix())), pol.match_tol);
  report.add("order", functional_order == kernel_order ? 0.0 : 1.0, pol.match_tol);
  return report;
}

}  // namespace gnskit
