#pragma once

#include "gnskit/algebra.hpp"

namespace gnskit {

/// A linear functional stored by its values on the basis, values(i) = rho(e_i).
struct Functional {
  ComplexVector values;
};

/// An element of the anti-dual, paired with x by <x|phi> = sum conj(x_i) phi_i.
struct DualVector {
  ComplexVector coords;
};

Complex pairing(const AlgebraElement& x, const DualVector& phi);

Complex evaluate(const FiniteStarAlgebra& a, const Functional& rho, const AlgebraElement& x);

/// G(i,j) = rho(e_i^* e_j), so that x^H G y = rho(x^* y).
ComplexMatrix gram_matrix(const FiniteStarAlgebra& a, const Functional& rho);

struct PositivityResult {
  bool positive = false;
  std::size_t gram_rank = 0;
};

PositivityResult is_positive(const FiniteStarAlgebra& a, const Functional& rho,
                             const TolerancePolicy& pol = {});

/// rho(e) for a positive functional. Throws NotPositive, NonRealUnitValue.
double hilbert_bound(const FiniteStarAlgebra& a, const Functional& rho,
                     const TolerancePolicy& pol = {});

/// Pi(x) = (L_{x^*})^H, the dual left regular action on anti-dual coordinates:
/// <y|Pi(x) phi> = <x^* y|phi>.
ComplexMatrix dual_regular_action(const FiniteStarAlgebra& a, const AlgebraElement& x);

/// Values of the same functional after change_basis(a, b).
Functional change_basis_functional(const ComplexMatrix& b, const Functional& rho);

}  // namespace gnskit
