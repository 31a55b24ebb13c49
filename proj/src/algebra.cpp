#include "gnskit/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gnskit {

namespace {

void require_dim(const FiniteStarAlgebra& a, const ComplexVector& v, const char* what) {
  if (static_cast<std::size_t>(v.size()) != a.dim()) {
    std::ostringstream os;
    os << what << " has " << v.size() << " coordinates, algebra dimension is " << a.dim();
    throw Error(ErrorKind::DimMismatch, os.str());
  }
}

}  // namespace

FiniteStarAlgebra::FiniteStarAlgebra(std::size_t dim, std::vector<Complex> structure_constants,
                                     ComplexMatrix involution, ComplexVector unit,
                                     std::vector<std::string> labels)
    : dim_(dim),
      constants_(std::move(structure_constants)),
      involution_(std::move(involution)),
      unit_(std::move(unit)),
      labels_(std::move(labels)) {
  const auto n = static_cast<Eigen::Index>(dim_);
  std::ostringstream os;
  if (dim_ == 0) {
    os << "algebra dimension must be positive";
  } else if (constants_.size() != dim_ * dim_ * dim_) {
    os << "structure constants have " << constants_.size() << " entries, expected "
       << dim_ * dim_ * dim_;
  } else if (involution_.rows() != n || involution_.cols() != n) {
    os << "involution is " << involution_.rows() << "x" << involution_.cols()
       << ", expected " << n << "x" << n;
  } else if (unit_.size() != n) {
    os << "unit has " << unit_.size() << " coordinates, expected " << n;
  } else if (!labels_.empty() && labels_.size() != dim_) {
    os << "got " << labels_.size() << " labels for dimension " << dim_;
  }
  if (!os.str().empty()) throw Error(ErrorKind::ShapeMismatch, os.str());
  for (const auto& c : constants_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw Error(ErrorKind::ShapeMismatch, "structure constants must be finite");
    }
  }
  require_finite(involution_, "involution");
  require_finite(unit_, "unit");

  left_.reserve(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    ComplexMatrix l(n, n);
    for (std::size_t j = 0; j < dim_; ++j) {
      for (std::size_t k = 0; k < dim_; ++k) {
        l(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = constant(i, j, k);
      }
    }
    left_.push_back(std::move(l));
  }
}

AlgebraElement basis_element(const FiniteStarAlgebra& a, std::size_t i) {
  return {ComplexVector::Unit(static_cast<Eigen::Index>(a.dim()), static_cast<Eigen::Index>(i))};
}

AlgebraElement unit_element(const FiniteStarAlgebra& a) { return {a.unit()}; }

ComplexMatrix left_mult_matrix(const FiniteStarAlgebra& a, const AlgebraElement& x) {
  require_dim(a, x.coords, "element");
  const auto n = static_cast<Eigen::Index>(a.dim());
  ComplexMatrix l = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const Complex xi = x.coords(static_cast<Eigen::Index>(i));
    if (xi != Complex(0.0)) l += xi * a.basis_left_mult(i);
  }
  return l;
}

AlgebraElement multiply(const FiniteStarAlgebra& a, const AlgebraElement& x,
                        const AlgebraElement& y) {
  require_dim(a, y.coords, "right factor");
  return {left_mult_matrix(a, x) * y.coords};
}

AlgebraElement involute(const FiniteStarAlgebra& a, const AlgebraElement& x) {
  require_dim(a, x.coords, "element");
  return {a.involution().transpose() * x.coords.conjugate()};
}

ValidationReport validate_algebra(const FiniteStarAlgebra& a, const TolerancePolicy& pol) {
  const std::size_t n = a.dim();
  const auto ni = static_cast<Eigen::Index>(n);
  const ComplexMatrix id = ComplexMatrix::Identity(ni, ni);

  double assoc = 0.0;
  double anti = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto ei = basis_element(a, i);
      const auto ej = basis_element(a, j);
      const auto prod = multiply(a, ei, ej);
      // (e_i e_j) e_k = e_i (e_j e_k) for all k  <=>  L_{e_i e_j} = L_i L_j
      const ComplexMatrix lhs = left_mult_matrix(a, prod);
      const ComplexMatrix rhs = a.basis_left_mult(i) * a.basis_left_mult(j);
      assoc = std::max(assoc, max_abs(ComplexMatrix(lhs - rhs)));
      const auto star_of_prod = involute(a, prod);
      const auto prod_of_stars = multiply(a, involute(a, ej), involute(a, ei));
      anti = std::max(anti, max_abs(ComplexVector(star_of_prod.coords - prod_of_stars.coords)));
    }
  }

  double unit = max_abs(ComplexMatrix(left_mult_matrix(a, unit_element(a)) - id));
  for (std::size_t i = 0; i < n; ++i) {
    const ComplexVector right = a.basis_left_mult(i) * a.unit();
    unit = std::max(unit, max_abs(ComplexVector(right - basis_element(a, i).coords)));
  }

  const ComplexMatrix twice = a.involution().conjugate() * a.involution();
  const double involutive = max_abs(ComplexMatrix(twice - id));

  ValidationReport report;
  report.add("associativity", assoc, pol.match_tol);
  report.add("unit", unit, pol.match_tol);
  report.add("involutive", involutive, pol.match_tol);
  report.add("antimultiplicative", anti, pol.match_tol);
  return report;
}

std::vector<std::vector<int>> cyclic_group_table(int m) {
  std::vector<std::vector<int>> table(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m)));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (i + j) % m;
  }
  return table;
}

FiniteStarAlgebra build_group_algebra(const std::vector<std::vector<int>>& cayley,
                                      const std::vector<int>& inverses,
                                      std::vector<std::string> labels) {
  const std::size_t n = cayley.size();
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::NotAGroup, msg); };
  if (n == 0) fail("empty Cayley table");
  if (inverses.size() != n) fail("inverse list length differs from table size");
  for (std::size_t i = 0; i < n; ++i) {
    if (cayley[i].size() != n) fail("Cayley table row " + std::to_string(i) + " has wrong length");
    for (int v : cayley[i]) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        fail("Cayley table row " + std::to_string(i) + " has out-of-range entry");
      }
    }
    if (inverses[i] < 0 || static_cast<std::size_t>(inverses[i]) >= n) {
      fail("inverse of element " + std::to_string(i) + " is out of range");
    }
  }
  auto at = [&](std::size_t i, std::size_t j) { return static_cast<std::size_t>(cayley[i][j]); };

  std::size_t identity = n;
  for (std::size_t r = 0; r < n && identity == n; ++r) {
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) ok = at(r, j) == j && at(j, r) == j;
    if (ok) identity = r;
  }
  if (identity == n) fail("no identity element");
  for (std::size_t i = 0; i < n; ++i) {
    const auto inv = static_cast<std::size_t>(inverses[i]);
    if (at(i, inv) != identity || at(inv, i) != identity) {
      std::ostringstream os;
      os << "inverse inconsistent at (" << i << ", " << inv << ", " << identity << ")";
      fail(os.str());
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (at(at(i, j), k) != at(i, at(j, k))) {
          std::ostringstream os;
          os << "not associative at triple (" << i << ", " << j << ", " << k << ")";
          fail(os.str());
        }
      }
    }
  }

  const auto ni = static_cast<Eigen::Index>(n);
  std::vector<Complex> c(n * n * n, Complex(0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) c[(i * n + j) * n + at(i, j)] = 1.0;
  }
  ComplexMatrix s = ComplexMatrix::Zero(ni, ni);
  for (std::size_t i = 0; i < n; ++i) {
    s(static_cast<Eigen::Index>(i), inverses[i]) = 1.0;
  }
  return FiniteStarAlgebra(n, std::move(c), std::move(s),
                           ComplexVector::Unit(ni, static_cast<Eigen::Index>(identity)),
                           std::move(labels));
}

FiniteStarAlgebra build_matrix_algebra(std::size_t m) {
  if (m == 0) throw Error(ErrorKind::ShapeMismatch, "matrix algebra size must be at least 1");
  const std::size_t n = m * m;
  const auto ni = static_cast<Eigen::Index>(n);
  auto idx = [m](std::size_t p, std::size_t q) { return p * m + q; };
  std::vector<Complex> c(n * n * n, Complex(0.0));
  ComplexMatrix s = ComplexMatrix::Zero(ni, ni);
  ComplexVector unit = ComplexVector::Zero(ni);
  std::vector<std::string> labels;
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t q = 0; q < m; ++q) {
      labels.push_back("E" + std::to_string(p + 1) + "_" + std::to_string(q + 1));
      s(static_cast<Eigen::Index>(idx(p, q)), static_cast<Eigen::Index>(idx(q, p))) = 1.0;
      // E_pq E_qs = E_ps
      for (std::size_t t = 0; t < m; ++t) {
        c[(idx(p, q) * n + idx(q, t)) * n + idx(p, t)] = 1.0;
      }
    }
    unit(static_cast<Eigen::Index>(idx(p, p))) = 1.0;
  }
  return FiniteStarAlgebra(n, std::move(c), std::move(s), std::move(unit), std::move(labels));
}

FiniteStarAlgebra direct_sum_algebra(const FiniteStarAlgebra& a1, const FiniteStarAlgebra& a2) {
  const std::size_t n1 = a1.dim();
  const std::size_t n2 = a2.dim();
  const std::size_t n = n1 + n2;
  const auto ni = static_cast<Eigen::Index>(n);
  std::vector<Complex> c(n * n * n, Complex(0.0));
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n1; ++j)
      for (std::size_t k = 0; k < n1; ++k) c[(i * n + j) * n + k] = a1.constant(i, j, k);
  for (std::size_t i = 0; i < n2; ++i)
    for (std::size_t j = 0; j < n2; ++j)
      for (std::size_t k = 0; k < n2; ++k)
        c[((n1 + i) * n + n1 + j) * n + n1 + k] = a2.constant(i, j, k);

  ComplexMatrix s = ComplexMatrix::Zero(ni, ni);
  s.topLeftCorner(static_cast<Eigen::Index>(n1), static_cast<Eigen::Index>(n1)) = a1.involution();
  s.bottomRightCorner(static_cast<Eigen::Index>(n2), static_cast<Eigen::Index>(n2)) = a2.involution();
  ComplexVector unit(ni);
  unit << a1.unit(), a2.unit();

  std::vector<std::string> labels;
  if (!a1.labels().empty() || !a2.labels().empty()) {
    for (std::size_t i = 0; i < n1; ++i)
      labels.push_back("L." + (a1.labels().empty() ? std::to_string(i) : a1.labels()[i]));
    for (std::size_t i = 0; i < n2; ++i)
      labels.push_back("R." + (a2.labels().empty() ? std::to_string(i) : a2.labels()[i]));
  }
  return FiniteStarAlgebra(n, std::move(c), std::move(s), std::move(unit), std::move(labels));
}

ComplexVector change_basis_coords(const ComplexMatrix& b, const ComplexVector& coords) {
  return b.transpose().partialPivLu().solve(coords);
}

FiniteStarAlgebra change_basis(const FiniteStarAlgebra& a, const ComplexMatrix& b) {
  const std::size_t n = a.dim();
  const auto ni = static_cast<Eigen::Index>(n);
  if (b.rows() != ni || b.cols() != ni) {
    throw Error(ErrorKind::DimMismatch, "basis change matrix has the wrong shape");
  }
  const ComplexMatrix binv = b.partialPivLu().inverse();
  std::vector<Complex> c(n * n * n, Complex(0.0));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      // f_x f_y = sum_ij b(x,i) b(y,j) e_i e_j, expressed back in f.
      const ComplexVector fx = b.row(static_cast<Eigen::Index>(x)).transpose();
      const ComplexVector fy = b.row(static_cast<Eigen::Index>(y)).transpose();
      const ComplexVector prod = multiply(a, {fx}, {fy}).coords;
      const ComplexVector in_f = binv.transpose() * prod;
      for (std::size_t m = 0; m < n; ++m) c[(x * n + y) * n + m] = in_f(static_cast<Eigen::Index>(m));
    }
  }
  ComplexMatrix s = b.conjugate() * a.involution() * binv;
  ComplexVector unit = binv.transpose() * a.unit();
  return FiniteStarAlgebra(n, std::move(c), std::move(s), std::move(unit));
}

bool same_algebra(const FiniteStarAlgebra& a, const FiniteStarAlgebra& b, double tol) {
  if (&a == &b) return true;
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.constants().size(); ++i) {
    if (std::abs(a.constants()[i] - b.constants()[i]) > tol) return false;
  }
  return max_abs(ComplexMatrix(a.involution() - b.involution())) <= tol &&
         max_abs(ComplexVector(a.unit() - b.unit())) <= tol;
}

}  // namespace gnskit
