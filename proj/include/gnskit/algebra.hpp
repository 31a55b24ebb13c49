#pragma once

#include <string>
#include <vector>

#include "gnskit/numerics.hpp"

namespace gnskit {

/// Coordinates of an element of a finite-dimensional algebra in its basis.
struct AlgebraElement {
  ComplexVector coords;
};

/// A unital associative *-algebra over C, presented by structure constants.
///
/// e_i e_j = sum_k c(i,j,k) e_k, e_i^* = sum_j S(i,j) e_j (extended
/// antilinearly), and the unit has coordinates `unit()`. Construction only
/// checks shapes; use validate_algebra for the axioms.
class FiniteStarAlgebra {
 public:
  FiniteStarAlgebra(std::size_t dim, std::vector<Complex> structure_constants,
                    ComplexMatrix involution, ComplexVector unit,
                    std::vector<std::string> labels = {});

  std::size_t dim() const { return dim_; }
  Complex constant(std::size_t i, std::size_t j, std::size_t k) const {
    return constants_[(i * dim_ + j) * dim_ + k];
  }
  const std::vector<Complex>& constants() const { return constants_; }
  const ComplexMatrix& involution() const { return involution_; }
  const ComplexVector& unit() const { return unit_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// L_{e_i}: the matrix of y -> e_i y.
  const ComplexMatrix& basis_left_mult(std::size_t i) const { return left_[i]; }

 private:
  std::size_t dim_;
  std::vector<Complex> constants_;
  ComplexMatrix involution_;
  ComplexVector unit_;
  std::vector<std::string> labels_;
  std::vector<ComplexMatrix> left_;
};

AlgebraElement basis_element(const FiniteStarAlgebra& a, std::size_t i);
AlgebraElement unit_element(const FiniteStarAlgebra& a);

/// Checks associativity, the unit law, and the two involution axioms.
/// Check names: "associativity", "unit", "involutive", "antimultiplicative".
ValidationReport validate_algebra(const FiniteStarAlgebra& a,
                                  const TolerancePolicy& pol = {});

AlgebraElement multiply(const FiniteStarAlgebra& a, const AlgebraElement& x,
                        const AlgebraElement& y);
AlgebraElement involute(const FiniteStarAlgebra& a, const AlgebraElement& x);
ComplexMatrix left_mult_matrix(const FiniteStarAlgebra& a, const AlgebraElement& x);

/// Group algebra C[G] from a Cayley table (cayley[i][j] = index of g_i g_j)
/// and the inverse of each element. Throws NotAGroup.
FiniteStarAlgebra build_group_algebra(const std::vector<std::vector<int>>& cayley,
                                      const std::vector<int>& inverses,
                                      std::vector<std::string> labels = {});
/// Cayley table of Z/m.
std::vector<std::vector<int>> cyclic_group_table(int m);
/// Full matrix algebra M_m on row-major matrix units E_pq.
FiniteStarAlgebra build_matrix_algebra(std::size_t m);
FiniteStarAlgebra direct_sum_algebra(const FiniteStarAlgebra& a1,
                                     const FiniteStarAlgebra& a2);

/// Re-present the algebra in the basis f_k = sum_i b(k,i) e_i.
FiniteStarAlgebra change_basis(const FiniteStarAlgebra& a, const ComplexMatrix& b);
/// Coordinates of an element after change_basis with the same b.
ComplexVector change_basis_coords(const ComplexMatrix& b, const ComplexVector& coords);

/// Same dimension and structure data within tol.
bool same_algebra(const FiniteStarAlgebra& a, const FiniteStarAlgebra& b, double tol);

}  // namespace gnskit
