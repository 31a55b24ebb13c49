#include "gnskit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace gnskit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorKind::NotPsd: return "NotPsd";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NonRealUnitValue: return "NonRealUnitValue";
    case ErrorKind::ZeroFunctional: return "ZeroFunctional";
    case ErrorKind::NotEquivalent: return "NotEquivalent";
    case ErrorKind::SplitFailure: return "SplitFailure";
    case ErrorKind::NegativeScalar: return "NegativeScalar";
    case ErrorKind::NegativeWeight: return "NegativeWeight";
    case ErrorKind::NotDominated: return "NotDominated";
    case ErrorKind::ZeroKernel: return "ZeroKernel";
    case ErrorKind::MonotonicityViolation: return "MonotonicityViolation";
    case ErrorKind::NotMajorized: return "NotMajorized";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NotStarInvariant: return "NotStarInvariant";
    case ErrorKind::InvalidRepresentation: return "InvalidRepresentation";
    case ErrorKind::InvalidHomomorphism: return "InvalidHomomorphism";
    case ErrorKind::PullbackInvarianceFailure: return "PullbackInvarianceFailure";
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::UnknownVerb: return "UnknownVerb";
    case ErrorKind::UnknownEntity: return "UnknownEntity";
    case ErrorKind::Usage: return "Usage";
  }
  return "Unknown";
}

void TolerancePolicy::validate() const {
  if (!(rel_rank_tol >= 0.0) || !(psd_tol >= 0.0) || !(match_tol >= 0.0)) {
    throw Error(ErrorKind::Usage, "tolerances must be nonnegative");
  }
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.passed(); });
}

double ValidationReport::max_violation() const {
  double worst = 0.0;
  for (const auto& c : checks) worst = std::max(worst, c.violation);
  return worst;
}

double ValidationReport::violation(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c.violation;
  }
  throw std::out_of_range("no check named " + name);
}

double hermitian_defect(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs(const ComplexVector& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

void require_finite(const ComplexMatrix& m, const std::string& what) {
  if (!m.allFinite()) {
    throw Error(ErrorKind::ShapeMismatch, what + " has non-finite entries");
  }
}

namespace {

void require_square(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << "expected a square matrix, got " << m.rows() << "x" << m.cols();
    throw Error(ErrorKind::NonSquare, os.str());
  }
}

void require_hermitian(const ComplexMatrix& m, const TolerancePolicy& pol) {
  const double defect = hermitian_defect(m);
  if (defect > 1e3 * pol.match_tol * (1.0 + max_abs(m))) {
    std::ostringstream os;
    os << "matrix is not hermitian (asymmetry " << defect << ")";
    throw Error(ErrorKind::NotHermitian, os.str());
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) sum += std::norm(a(i, j));
    }
  }
  return std::sqrt(sum);
}

// One complex Jacobi rotation annihilating a(p,q). The unitary acting on
// the (p,q) plane is diag(1, conj(w)) * [[c, s], [-s, c]] with w the phase
// of a(p,q).
void rotate(ComplexMatrix& a, ComplexMatrix& v, Eigen::Index p, Eigen::Index q) {
  const Complex apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const Complex w = apq / r;
  const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const Complex u00 = c;
  const Complex u01 = s;
  const Complex u10 = -s * std::conj(w);
  const Complex u11 = c * std::conj(w);

  const Eigen::Index n = a.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex aip = a(i, p);
    const Complex aiq = a(i, q);
    a(i, p) = aip * u00 + aiq * u10;
    a(i, q) = aip * u01 + aiq * u11;
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex apj = a(p, j);
    const Complex aqj = a(q, j);
    a(p, j) = std::conj(u00) * apj + std::conj(u10) * aqj;
    a(q, j) = std::conj(u01) * apj + std::conj(u11) * aqj;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex vip = v(i, p);
    const Complex viq = v(i, q);
    v(i, p) = vip * u00 + viq * u10;
    v(i, q) = vip * u01 + viq * u11;
  }
}

void fix_phase(Eigen::Ref<ComplexVector> vec) {
  const double biggest = vec.cwiseAbs().maxCoeff();
  if (biggest == 0.0) return;
  Eigen::Index k = 0;
  while (std::abs(vec(k)) < biggest * (1.0 - 1e-12)) ++k;
  const Complex phase = std::conj(vec(k)) / std::abs(vec(k));
  vec *= phase;
  vec(k) = std::abs(vec(k));
}

std::vector<double> rounded_key(const ComplexVector& vec) {
  std::vector<double> key;
  key.reserve(2 * static_cast<std::size_t>(vec.size()));
  for (Eigen::Index i = 0; i < vec.size(); ++i) {
    key.push_back(std::round(vec(i).real() * 1e10) / 1e10);
    key.push_back(std::round(vec(i).imag() * 1e10) / 1e10);
  }
  return key;
}

}  // namespace

HermitianEigen hermitian_eigen(const ComplexMatrix& m, const TolerancePolicy& pol) {
  require_square(m);
  require_hermitian(m, pol);
  const Eigen::Index n = m.rows();
  ComplexMatrix a = (m + m.adjoint()) / 2.0;
  ComplexMatrix v = ComplexMatrix::Identity(n, n);

  const double scale = a.norm();
  for (int sweep = 0; sweep < 100; ++sweep) {
    if (off_diagonal_norm(a) <= 1e-14 * scale) break;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) rotate(a, v, p, q);
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return a(x, x).real() > a(y, y).real();
  });

  HermitianEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto src = order[static_cast<std::size_t>(k)];
    out.values(k) = a(src, src).real();
    out.vectors.col(k) = v.col(src);
    fix_phase(out.vectors.col(k));
  }

  // Within runs of tied eigenvalues, order vectors lexicographically.
  if (n > 0) {
    const double tie = 1e-12 * (1.0 + out.values.cwiseAbs().maxCoeff());
    Eigen::Index start = 0;
    while (start < n) {
      Eigen::Index end = start + 1;
      while (end < n && out.values(end - 1) - out.values(end) <= tie) ++end;
      if (end - start > 1) {
        std::vector<std::pair<std::vector<double>, Eigen::Index>> keyed;
        for (Eigen::Index k = start; k < end; ++k) {
          keyed.emplace_back(rounded_key(out.vectors.col(k)), k);
        }
        std::stable_sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
          return x.first > y.first;
        });
        const ComplexMatrix block = out.vectors.middleCols(start, end - start);
        for (Eigen::Index k = start; k < end; ++k) {
          out.vectors.col(k) = block.col(keyed[static_cast<std::size_t>(k - start)].second - start);
        }
      }
      start = end;
    }
  }
  return out;
}

std::size_t numerical_rank(const RealVector& values, const TolerancePolicy& pol,
                           double scale) {
  if (values.size() == 0) return 0;
  const double top = std::max(values.maxCoeff(), scale);
  if (top <= 0.0) return 0;
  const double cut = pol.rel_rank_tol * top;
  std::size_t rank = 0;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (values(k) > cut) ++rank;
  }
  return rank;
}

PsdResult psd_check(const ComplexMatrix& m, const TolerancePolicy& pol, double scale) {
  require_square(m);
  PsdResult out;
  if (m.rows() == 0) {
    out.is_psd = true;
    return out;
  }
  const auto eig = hermitian_eigen(m, pol);
  out.max_eigenvalue = eig.values(0);
  out.min_eigenvalue = eig.values(eig.values.size() - 1);
  const double top = std::max({out.max_eigenvalue, scale, 0.0});
  out.is_psd = out.min_eigenvalue >= -pol.psd_tol * (1.0 + top);
  out.rank = numerical_rank(eig.values, pol, scale);
  return out;
}

namespace {

// Eigenpairs of a PSD matrix with the numerically-nonzero ones kept.
HermitianEigen psd_range_eigen(const ComplexMatrix& m, const TolerancePolicy& pol,
                               double scale) {
  auto eig = hermitian_eigen(m, pol);
  if (eig.values.size() == 0) return eig;
  const double top = std::max(eig.values(0), 0.0);
  const double bottom = eig.values(eig.values.size() - 1);
  if (bottom < -pol.psd_tol * (1.0 + std::max(top, scale))) {
    std::ostringstream os;
    os << "matrix has eigenvalue " << bottom << " below the PSD tolerance";
    throw Error(ErrorKind::NegativeEigenvalue, os.str());
  }
  const auto r = static_cast<Eigen::Index>(numerical_rank(eig.values, pol, scale));
  HermitianEigen kept;
  kept.values = eig.values.head(r);
  kept.vectors = eig.vectors.leftCols(r);
  return kept;
}

}  // namespace

ComplexMatrix pseudo_inverse(const ComplexMatrix& m, const TolerancePolicy& pol) {
  require_square(m);
  const auto eig = psd_range_eigen(m, pol, 0.0);
  const RealVector inv = eig.values.cwiseInverse();
  return eig.vectors * inv.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix pseudo_inverse_sqrt(const ComplexMatrix& m, const TolerancePolicy& pol) {
  require_square(m);
  const auto eig = psd_range_eigen(m, pol, 0.0);
  const RealVector inv = eig.values.cwiseSqrt().cwiseInverse();
  return eig.vectors * inv.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix range_basis(const ComplexMatrix& m, const TolerancePolicy& pol, double scale) {
  require_square(m);
  return psd_range_eigen(m, pol, scale).vectors;
}

}  // namespace gnskit
