#include "gnskit/gns.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace gnskit {

ComplexMatrix GNSRepresentation::image(const AlgebraElement& x) const {
  if (static_cast<std::size_t>(x.coords.size()) != matrices.size()) {
    throw Error(ErrorKind::DimMismatch, "element dimension differs from algebra dimension");
  }
  const auto d = static_cast<Eigen::Index>(rep_dim);
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    out += x.coords(static_cast<Eigen::Index>(i)) * matrices[i];
  }
  return out;
}

namespace {

ComplexMatrix cyclic_orbit(const std::vector<ComplexMatrix>& pis, const ComplexVector& xi) {
  ComplexMatrix t(xi.size(), static_cast<Eigen::Index>(pis.size()));
  for (std::size_t j = 0; j < pis.size(); ++j) t.col(static_cast<Eigen::Index>(j)) = pis[j] * xi;
  return t;
}

// Orthonormal basis (as vec'd columns) of {X : pi2_i X = X pi1_i for all i},
// X of shape d2 x d1.
ComplexMatrix intertwining_nullspace(const std::vector<ComplexMatrix>& pi1,
                                     const std::vector<ComplexMatrix>& pi2,
                                     const TolerancePolicy& pol) {
  const Eigen::Index d1 = pi1.empty() ? 0 : pi1.front().rows();
  const Eigen::Index d2 = pi2.empty() ? 0 : pi2.front().rows();
  const Eigen::Index m = d1 * d2;
  ComplexMatrix normal = ComplexMatrix::Zero(m, m);
  const ComplexMatrix id1 = ComplexMatrix::Identity(d1, d1);
  const ComplexMatrix id2 = ComplexMatrix::Identity(d2, d2);
  for (std::size_t i = 0; i < pi1.size(); ++i) {
    // vec(pi2 X - X pi1) = (I (x) pi2 - pi1^T (x) I) vec(X), column-major vec.
    ComplexMatrix op(m, m);
    for (Eigen::Index a = 0; a < d1; ++a) {
      for (Eigen::Index b = 0; b < d1; ++b) {
        op.block(a * d2, b * d2, d2, d2) = id1(a, b) * pi2[i] - pi1[i](b, a) * id2;
      }
    }
    normal += op.adjoint() * op;
  }
  const auto eig = hermitian_eigen(normal, pol);
  const auto rank = static_cast<Eigen::Index>(numerical_rank(eig.values, pol));
  return eig.vectors.rightCols(m - rank);
}

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols) {
  ComplexMatrix x(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) x.col(c) = v.segment(c * rows, rows);
  return x;
}

std::vector<ComplexMatrix> commutant_basis(const std::vector<ComplexMatrix>& pis,
                                           const TolerancePolicy& pol) {
  const Eigen::Index d = pis.empty() ? 0 : pis.front().rows();
  const ComplexMatrix null = intertwining_nullspace(pis, pis, pol);
  std::vector<ComplexMatrix> basis;
  for (Eigen::Index k = 0; k < null.cols(); ++k) basis.push_back(unvec(null.col(k), d, d));
  return basis;
}

void require_positive_nonzero(const FiniteStarAlgebra& a, const Functional& rho,
                              const TolerancePolicy& pol) {
  if (!is_positive(a, rho, pol).positive) {
    throw Error(ErrorKind::NotPositive, "functional is not positive");
  }
  if (max_abs(rho.values) == 0.0 || gram_matrix(a, rho).cwiseAbs().maxCoeff() == 0.0) {
    throw Error(ErrorKind::ZeroFunctional, "functional is zero");
  }
}

GNSRepresentation make_rep(const FiniteStarAlgebra& a, std::vector<ComplexMatrix> pis,
                           ComplexVector xi, Functional rho) {
  GNSRepresentation rep{a, static_cast<std::size_t>(xi.size()), std::move(pis), std::move(xi),
                        std::move(rho), ComplexMatrix()};
  rep.embedding = cyclic_orbit(rep.matrices, rep.cyclic_vector);
  return rep;
}

}  // namespace

GNSRepresentation gns_construct(const FiniteStarAlgebra& a, const Functional& rho,
                                const TolerancePolicy& pol) {
  if (!is_positive(a, rho, pol).positive) {
    throw Error(ErrorKind::NotPositive, "GNS construction requires a positive functional");
  }
  const ComplexMatrix g = gram_matrix(a, rho);
  const auto eig = hermitian_eigen(g, pol);
  const auto r = static_cast<Eigen::Index>(numerical_rank(eig.values, pol));
  const ComplexMatrix u = eig.vectors.leftCols(r);
  const RealVector sqrt_l = eig.values.head(r).cwiseSqrt();
  const ComplexMatrix q = sqrt_l.asDiagonal() * u.adjoint();
  const ComplexMatrix back = u * sqrt_l.cwiseInverse().asDiagonal();

  std::vector<ComplexMatrix> pis;
  pis.reserve(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) pis.push_back(q * a.basis_left_mult(i) * back);
  GNSRepresentation rep{a, static_cast<std::size_t>(r), std::move(pis), q * a.unit(), rho, q};
  return rep;
}

ValidationReport verify_star_rep(const GNSRepresentation& rep, const TolerancePolicy& pol) {
  const auto& a = rep.algebra;
  const auto d = static_cast<Eigen::Index>(rep.rep_dim);
  const std::size_t n = a.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);

  double unit = 0.0, mult = 0.0, star = 0.0, repro = 0.0, cyclic = 0.0;
  if (d > 0) {
    unit = max_abs(ComplexMatrix(rep.image(unit_element(a)) - id));
    for (std::size_t i = 0; i < n; ++i) {
      const auto ei = basis_element(a, i);
      for (std::size_t j = 0; j < n; ++j) {
        const auto prod = multiply(a, ei, basis_element(a, j));
        mult = std::max(mult, max_abs(ComplexMatrix(rep.matrices[i] * rep.matrices[j] - rep.image(prod))));
      }
      star = std::max(star, max_abs(ComplexMatrix(rep.image(involute(a, ei)) - rep.matrices[i].adjoint())));
      const Complex value = rep.cyclic_vector.dot(rep.matrices[i] * rep.cyclic_vector);
      repro = std::max(repro, std::abs(value - rep.source_functional.values(static_cast<Eigen::Index>(i))));
    }
    const ComplexMatrix orbit = cyclic_orbit(rep.matrices, rep.cyclic_vector);
    const auto psd = psd_check(ComplexMatrix(orbit * orbit.adjoint()), pol);
    cyclic = static_cast<double>(rep.rep_dim - psd.rank);
  } else {
    repro = max_abs(rep.source_functional.values);
  }

  ValidationReport report;
  report.add("unit", unit, pol.match_tol);
  report.add("multiplicativity", mult, pol.match_tol);
  report.add("star", star, pol.match_tol);
  report.add("cyclicity", cyclic, pol.match_tol);
  report.add("reproduction", repro, pol.match_tol);
  return report;
}

ComplexMatrix intertwiner(const GNSRepresentation& rep1, const GNSRepresentation& rep2,
                          const TolerancePolicy& pol) {
  if (!same_algebra(rep1.algebra, rep2.algebra, pol.match_tol)) {
    throw Error(ErrorKind::AlgebraMismatch, "representations of different algebras");
  }
  const double gap = max_abs(ComplexVector(rep1.source_functional.values - rep2.source_functional.values));
  if (gap > pol.match_tol) {
    std::ostringstream os;
    os << "source functionals differ by " << gap;
    throw Error(ErrorKind::NotEquivalent, os.str());
  }
  if (rep1.rep_dim != rep2.rep_dim) {
    throw Error(ErrorKind::NotEquivalent, "representation dimensions differ");
  }
  const auto d = static_cast<Eigen::Index>(rep1.rep_dim);
  if (d == 0) return ComplexMatrix(0, 0);
  const ComplexMatrix t1 = cyclic_orbit(rep1.matrices, rep1.cyclic_vector);
  const ComplexMatrix t2 = cyclic_orbit(rep2.matrices, rep2.cyclic_vector);
  // T1 has full row rank (cyclicity), so T1^+ = T1^H (T1 T1^H)^{-1}.
  const ComplexMatrix gram1 = t1 * t1.adjoint();
  const ComplexMatrix u = t2 * t1.adjoint() * gram1.ldlt().solve(ComplexMatrix::Identity(d, d));

  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  double residual = max_abs(ComplexMatrix(u.adjoint() * u - id));
  residual = std::max(residual, max_abs(ComplexMatrix(u * t1 - t2)));
  for (std::size_t i = 0; i < rep1.matrices.size(); ++i) {
    residual = std::max(residual, max_abs(ComplexMatrix(u * rep1.matrices[i] - rep2.matrices[i] * u)));
  }
  if (residual > pol.match_tol) {
    std::ostringstream os;
    os << "no unitary intertwiner: residual " << residual;
    throw Error(ErrorKind::NotEquivalent, os.str());
  }
  return u;
}

std::optional<ComplexMatrix> unitary_equivalence(const GNSRepresentation& rep1,
                                                 const GNSRepresentation& rep2,
                                                 const TolerancePolicy& pol) {
  if (!same_algebra(rep1.algebra, rep2.algebra, pol.match_tol)) {
    throw Error(ErrorKind::AlgebraMismatch, "representations of different algebras");
  }
  if (rep1.rep_dim != rep2.rep_dim) return std::nullopt;
  const auto d = static_cast<Eigen::Index>(rep1.rep_dim);
  if (d == 0) return ComplexMatrix(0, 0);
  const ComplexMatrix null = intertwining_nullspace(rep1.matrices, rep2.matrices, pol);
  if (null.cols() == 0) return std::nullopt;

  // A generic element of the intertwiner space is invertible iff the
  // representations are equivalent; its polar part is a unitary intertwiner.
  ComplexVector combo = ComplexVector::Zero(null.rows());
  for (Eigen::Index k = 0; k < null.cols(); ++k) {
    const double kk = static_cast<double>(k);
    combo += Complex(1.0 + 0.37 * kk, 0.61 - 0.23 * kk) * null.col(k);
  }
  const ComplexMatrix x = unvec(combo, d, d);
  const ComplexMatrix xhx = x.adjoint() * x;
  const auto eig = hermitian_eigen(xhx, pol);
  if (numerical_rank(eig.values, pol) < static_cast<std::size_t>(d)) return std::nullopt;
  const RealVector inv_sqrt = eig.values.cwiseSqrt().cwiseInverse();
  const ComplexMatrix u = x * eig.vectors * inv_sqrt.asDiagonal() * eig.vectors.adjoint();

  double residual = max_abs(ComplexMatrix(u.adjoint() * u - ComplexMatrix::Identity(d, d)));
  for (std::size_t i = 0; i < rep1.matrices.size(); ++i) {
    residual = std::max(residual, max_abs(ComplexMatrix(u * rep1.matrices[i] - rep2.matrices[i] * u)));
  }
  if (residual > pol.match_tol) return std::nullopt;
  return u;
}

Commutant commutant(const GNSRepresentation& rep, const TolerancePolicy& pol) {
  if (rep.rep_dim == 0) {
    throw Error(ErrorKind::InvalidRepresentation, "commutant of an empty representation");
  }
  Commutant out;
  out.basis = commutant_basis(rep.matrices, pol);
  out.dimension = out.basis.size();
  return out;
}

bool is_irreducible(const GNSRepresentation& rep, const TolerancePolicy& pol) {
  return commutant(rep, pol).dimension == 1;
}

bool is_extremal(const FiniteStarAlgebra& a, const Functional& rho, const TolerancePolicy& pol) {
  require_positive_nonzero(a, rho, pol);
  return is_irreducible(gns_construct(a, rho, pol), pol);
}

namespace {

struct Block {
  std::vector<ComplexMatrix> pis;
  ComplexVector xi;
};

void split(const Block& block, const TolerancePolicy& pol, std::mt19937_64& rng,
           std::vector<Block>& leaves) {
  const auto basis = commutant_basis(block.pis, pol);
  if (basis.size() <= 1) {
    leaves.push_back(block);
    return;
  }
  std::vector<ComplexMatrix> hermitian;
  for (const auto& c : basis) {
    hermitian.push_back((c + c.adjoint()) / 2.0);
    hermitian.push_back((c - c.adjoint()) * Complex(0.0, 0.5));
  }
  const Eigen::Index d = block.xi.size();
  std::normal_distribution<double> normal(0.0, 1.0);

  for (int attempt = 0; attempt <= kMaxSplitRetries; ++attempt) {
    ComplexMatrix h = ComplexMatrix::Zero(d, d);
    for (const auto& m : hermitian) h += normal(rng) * m;
    const auto eig = hermitian_eigen(h, pol);
    const double spread = 1e-6 * (1.0 + eig.values.cwiseAbs().maxCoeff());

    std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters;  // [start, end)
    Eigen::Index start = 0;
    for (Eigen::Index k = 1; k <= d; ++k) {
      if (k == d || eig.values(k - 1) - eig.values(k) > spread) {
        clusters.emplace_back(start, k);
        start = k;
      }
    }
    if (clusters.size() < 2) continue;

    for (const auto& [lo, hi] : clusters) {
      const ComplexMatrix v = eig.vectors.middleCols(lo, hi - lo);
      Block child;
      for (const auto& p : block.pis) child.pis.push_back(v.adjoint() * p * v);
      child.xi = v.adjoint() * block.xi;
      if (child.xi.norm() <= pol.rel_rank_tol) {
        throw Error(ErrorKind::SplitFailure, "cyclic vector vanishes on an invariant block");
      }
      split(child, pol, rng, leaves);
    }
    return;
  }
  throw Error(ErrorKind::SplitFailure, "random commutant elements kept a degenerate spectrum");
}

std::vector<double> sort_key(const Functional& f) {
  std::vector<double> key;
  for (Eigen::Index i = 0; i < f.values.size(); ++i) {
    key.push_back(std::round(f.values(i).real() * 1e8) / 1e8);
    key.push_back(std::round(f.values(i).imag() * 1e8) / 1e8);
  }
  return key;
}

}  // namespace

Decomposition decompose(const FiniteStarAlgebra& a, const Functional& rho,
                        const TolerancePolicy& pol, std::uint64_t seed) {
  require_positive_nonzero(a, rho, pol);
  const auto rep = gns_construct(a, rho, pol);
  std::mt19937_64 rng(seed);
  std::vector<Block> leaves;
  split({rep.matrices, rep.cyclic_vector}, pol, rng, leaves);

  Decomposition out;
  for (const auto& leaf : leaves) {
    const double weight = leaf.xi.squaredNorm();
    const ComplexVector unit_xi = leaf.xi / std::sqrt(weight);
    Functional f{ComplexVector(static_cast<Eigen::Index>(a.dim()))};
    for (std::size_t i = 0; i < a.dim(); ++i) {
      f.values(static_cast<Eigen::Index>(i)) = unit_xi.dot(leaf.pis[i] * unit_xi);
    }
    out.components.push_back({weight, f, make_rep(a, leaf.pis, unit_xi, f)});
  }
  std::stable_sort(out.components.begin(), out.components.end(),
                   [](const DecompositionComponent& x, const DecompositionComponent& y) {
                     return sort_key(x.functional) > sort_key(y.functional);
                   });

  ComplexVector total = ComplexVector::Zero(rho.values.size());
  for (const auto& c : out.components) total += c.weight * c.functional.values;
  out.reconstruction_error = max_abs(ComplexVector(total - rho.values));

  for (std::size_t k = 0; k < out.components.size(); ++k) {
    bool placed = false;
    for (auto& cls : out.multiplicity_classes) {
      const auto& head = out.components[cls.front()].representation;
      if (unitary_equivalence(head, out.components[k].representation, pol)) {
        cls.push_back(k);
        placed = true;
        break;
      }
    }
    if (!placed) out.multiplicity_classes.push_back({k});
  }
  return out;
}

}  // namespace gnskit
