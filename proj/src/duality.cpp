#include "gnskit/duality.hpp"

#include <sstream>

namespace gnskit {

namespace {

void require_dim(const FiniteStarAlgebra& a, const Functional& rho) {
  if (static_cast<std::size_t>(rho.values.size()) != a.dim()) {
    std::ostringstream os;
    os << "functional has " << rho.values.size() << " values, algebra dimension is " << a.dim();
    throw Error(ErrorKind::DimMismatch, os.str());
  }
}

}  // namespace

Complex pairing(const AlgebraElement& x, const DualVector& phi) {
  if (x.coords.size() != phi.coords.size()) {
    throw Error(ErrorKind::DimMismatch, "pairing of vectors of different lengths");
  }
  return x.coords.dot(phi.coords);  // Eigen's dot conjugates the left operand
}

Complex evaluate(const FiniteStarAlgebra& a, const Functional& rho, const AlgebraElement& x) {
  require_dim(a, rho);
  if (static_cast<std::size_t>(x.coords.size()) != a.dim()) {
    throw Error(ErrorKind::DimMismatch, "element dimension differs from algebra dimension");
  }
  return (x.coords.array() * rho.values.array()).sum();
}

ComplexMatrix gram_matrix(const FiniteStarAlgebra& a, const Functional& rho) {
  require_dim(a, rho);
  const auto n = static_cast<Eigen::Index>(a.dim());
  ComplexMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto ei_star = involute(a, basis_element(a, static_cast<std::size_t>(i)));
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto prod = multiply(a, ei_star, basis_element(a, static_cast<std::size_t>(j)));
      g(i, j) = evaluate(a, rho, prod);
    }
  }
  return g;
}

PositivityResult is_positive(const FiniteStarAlgebra& a, const Functional& rho,
                             const TolerancePolicy& pol) {
  const ComplexMatrix g = gram_matrix(a, rho);
  if (hermitian_defect(g) > pol.match_tol * (1.0 + max_abs(g))) return {false, 0};
  const auto psd = psd_check(g, pol);
  return {psd.is_psd, psd.rank};
}

double hilbert_bound(const FiniteStarAlgebra& a, const Functional& rho,
                     const TolerancePolicy& pol) {
  if (!is_positive(a, rho, pol).positive) {
    throw Error(ErrorKind::NotPositive, "Hilbert bound requires a positive functional");
  }
  const Complex at_unit = evaluate(a, rho, unit_element(a));
  if (std::abs(at_unit.imag()) > pol.match_tol * (1.0 + std::abs(at_unit))) {
    throw Error(ErrorKind::NonRealUnitValue, "functional is not real at the unit");
  }
  return at_unit.real();
}

ComplexMatrix dual_regular_action(const FiniteStarAlgebra& a, const AlgebraElement& x) {
  return left_mult_matrix(a, involute(a, x)).adjoint();
}

Functional change_basis_functional(const ComplexMatrix& b, const Functional& rho) {
  if (b.cols() != rho.values.size()) {
    throw Error(ErrorKind::DimMismatch, "basis change matrix does not match functional");
  }
  return {b * rho.values};
}

}  // namespace gnskit
