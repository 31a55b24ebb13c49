#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gnskit/duality.hpp"

namespace gnskit {

/// A cyclic *-representation on C^d with the standard inner product.
///
/// `matrices[i]` is pi(e_i). `embedding` is the d x n matrix sending algebra
/// coordinates to the representation space, q(x) = embedding * x, so its
/// j-th column is pi(e_j) xi.
struct GNSRepresentation {
  FiniteStarAlgebra algebra;
  std::size_t rep_dim = 0;
  std::vector<ComplexMatrix> matrices;
  ComplexVector cyclic_vector;
  Functional source_functional;
  ComplexMatrix embedding;

  /// pi(x) = sum_i x_i pi(e_i).
  ComplexMatrix image(const AlgebraElement& x) const;
};

/// GNS construction on the quotient by the Gelfand ideal (numerical
/// nullspace of the Gram matrix). Throws NotPositive.
GNSRepresentation gns_construct(const FiniteStarAlgebra& a, const Functional& rho,
                                const TolerancePolicy& pol = {});

/// Check names: "unit", "multiplicativity", "star", "cyclicity",
/// "reproduction". Reproduction compares xi^H pi(e_i) xi with rho(e_i).
ValidationReport verify_star_rep(const GNSRepresentation& rep,
                                 const TolerancePolicy& pol = {});

/// Unitary U with U pi1(x) xi1 = pi2(x) xi2. Exists exactly when the source
/// functionals agree; throws NotEquivalent otherwise.
ComplexMatrix intertwiner(const GNSRepresentation& rep1, const GNSRepresentation& rep2,
                          const TolerancePolicy& pol = {});

/// Unitary U with U pi1(e_i) = pi2(e_i) U for all i, ignoring cyclic vectors.
/// Empty when the representations are inequivalent.
std::optional<ComplexMatrix> unitary_equivalence(const GNSRepresentation& rep1,
                                                 const GNSRepresentation& rep2,
                                                 const TolerancePolicy& pol = {});

struct Commutant {
  std::vector<ComplexMatrix> basis;  // orthonormal in the Frobenius inner product
  std::size_t dimension = 0;
};

Commutant commutant(const GNSRepresentation& rep, const TolerancePolicy& pol = {});

bool is_irreducible(const GNSRepresentation& rep, const TolerancePolicy& pol = {});

/// Extremal in the positive cone, decided through irreducibility of the GNS
/// representation. Throws NotPositive, ZeroFunctional.
bool is_extremal(const FiniteStarAlgebra& a, const Functional& rho,
                 const TolerancePolicy& pol = {});

struct DecompositionComponent {
  double weight = 0.0;
  Functional functional;  // normalized: value 1 at the unit
  GNSRepresentation representation;
};

struct Decomposition {
  std::vector<DecompositionComponent> components;
  std::vector<std::vector<std::size_t>> multiplicity_classes;
  double reconstruction_error = 0.0;
};

inline constexpr int kMaxSplitRetries = 8;

/// Splits the GNS representation of rho into irreducibles by repeatedly
/// diagonalizing random hermitian elements of the commutant. Deterministic
/// for a given seed. Throws NotPositive, ZeroFunctional, SplitFailure.
Decomposition decompose(const FiniteStarAlgebra& a, const Functional& rho,
                        const TolerancePolicy& pol = {}, std::uint64_t seed = 0);

}  // namespace gnskit
