#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gnskit/error.hpp"

namespace gnskit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

struct TolerancePolicy {
  double rel_rank_tol = 1e-9;
  double psd_tol = 1e-9;
  double match_tol = 1e-8;

  void validate() const;
};

/// One named check inside a ValidationReport.
struct Check {
  std::string name;
  double violation = 0.0;
  double tolerance = 0.0;
  bool passed() const { return violation < tolerance; }
};

struct ValidationReport {
  std::vector<Check> checks;

  void add(std::string name, double violation, double tolerance) {
    checks.push_back({std::move(name), violation, tolerance});
  }
  bool passed() const;
  double max_violation() const;
  /// Violation of the named check; throws std::out_of_range when absent.
  double violation(const std::string& name) const;
};

struct HermitianEigen {
  RealVector values;      // descending
  ComplexMatrix vectors;  // column k belongs to values[k]
};

/// Cyclic Jacobi eigensolver for hermitian matrices.
///
/// The input is symmetrized as (M+M^H)/2 first. Output is fully
/// deterministic: eigenvalues descending, ties (within 1e-12(1+|lambda|max))
/// ordered lexicographically by rounded coordinates, and each eigenvector is
/// phased so its largest-magnitude entry is real positive.
HermitianEigen hermitian_eigen(const ComplexMatrix& m,
                               const TolerancePolicy& pol = {});

ComplexMatrix pseudo_inverse(const ComplexMatrix& m,
                             const TolerancePolicy& pol = {});

struct PsdResult {
  bool is_psd = false;
  std::size_t rank = 0;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
};

PsdResult psd_check(const ComplexMatrix& m, const TolerancePolicy& pol = {},
                    double scale = 0.0);

// Helpers shared by the other modules.

/// Largest |m_ij - conj(m_ji)|.
double hermitian_defect(const ComplexMatrix& m);
/// Largest absolute entry, 0 for empty matrices.
double max_abs(const ComplexMatrix& m);
double max_abs(const ComplexVector& v);
/// Number of eigenvalues above rel_rank_tol * max(lambda_max, scale). The
/// optional scale lets differences of large matrices be ranked against the
/// operands rather than against their own roundoff.
std::size_t numerical_rank(const RealVector& descending_values,
                           const TolerancePolicy& pol, double scale = 0.0);
/// Orthonormal basis (columns) of the range of a PSD matrix.
ComplexMatrix range_basis(const ComplexMatrix& psd,
                          const TolerancePolicy& pol = {}, double scale = 0.0);
/// Principal square root of the PSD pseudoinverse, (M^+)^{1/2}.
ComplexMatrix pseudo_inverse_sqrt(const ComplexMatrix& psd,
                                  const TolerancePolicy& pol = {});
void require_finite(const ComplexMatrix& m, const std::string& what);

}  // namespace gnskit
