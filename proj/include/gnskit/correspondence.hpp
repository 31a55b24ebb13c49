#pragma once

#include "gnskit/gns.hpp"
#include "gnskit/kernels.hpp"

namespace gnskit {

/// A unital *-homomorphism between finite-dimensional *-algebras, as the
/// n2 x n1 matrix of coordinates. Construction validates the axioms and
/// throws InvalidHomomorphism.
class StarHomomorphism {
 public:
  StarHomomorphism(FiniteStarAlgebra source, FiniteStarAlgebra target, ComplexMatrix matrix,
                   const TolerancePolicy& pol = {});

  const FiniteStarAlgebra& source() const { return source_; }
  const FiniteStarAlgebra& target() const { return target_; }
  const ComplexMatrix& matrix() const { return matrix_; }

  AlgebraElement apply(const AlgebraElement& x) const;

 private:
  FiniteStarAlgebra source_;
  FiniteStarAlgebra target_;
  ComplexMatrix matrix_;
};

/// Check names: "multiplicative", "star", "unital".
ValidationReport validate_homomorphism(const FiniteStarAlgebra& source,
                                       const FiniteStarAlgebra& target,
                                       const ComplexMatrix& matrix,
                                       const TolerancePolicy& pol = {});

/// outer o inner; inner's target must be outer's source.
StarHomomorphism compose(const StarHomomorphism& outer, const StarHomomorphism& inner,
                         const TolerancePolicy& pol = {});

/// The one-dimensional algebra C.
FiniteStarAlgebra scalar_algebra();
/// C -> A, 1 -> e.
StarHomomorphism unit_embedding(const FiniteStarAlgebra& a, const TolerancePolicy& pol = {});

/// The Gram matrix of rho read as a reproducing operator. Throws NotPositive.
Kernel functional_to_kernel(const FiniteStarAlgebra& a, const Functional& rho,
                            const TolerancePolicy& pol = {});
/// r_j = <e|H e_j>. Throws NotStarInvariant.
Functional kernel_to_functional(const FiniteStarAlgebra& a, const Kernel& k,
                                const TolerancePolicy& pol = {});
/// Pi(e_i) H = H L_{e_i} for every basis element.
bool is_star_invariant(const FiniteStarAlgebra& a, const Kernel& k,
                       const TolerancePolicy& pol = {});
/// Largest entry of Pi(e_i) H - H L_{e_i} over the basis.
double star_invariance_defect(const FiniteStarAlgebra& a, const Kernel& k);

GNSRepresentation kernel_to_rep(const FiniteStarAlgebra& a, const Kernel& k,
                                const TolerancePolicy& pol = {});
/// H = T^H T with T the map x -> pi(x) xi. Throws InvalidRepresentation.
Kernel rep_to_kernel(const GNSRepresentation& rep, const TolerancePolicy& pol = {});

/// H1 = alpha^H H2 alpha. Throws NotStarInvariant, PullbackInvarianceFailure.
Kernel pullback(const StarHomomorphism& alpha, const Kernel& k2,
                const TolerancePolicy& pol = {});

/// Check names: "sum", "scale", "order".
ValidationReport cone_morphism_audit(const FiniteStarAlgebra& a, const Functional& rho1,
                                     const Functional& rho2, double lambda,
                                     const TolerancePolicy& pol = {});

}  // namespace gnskit
