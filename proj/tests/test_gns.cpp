#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "gnskit/gns.hpp"
#include "support/random_instances.hpp"

using namespace gnskit;
using gnskit::testing::Rng;

namespace {

FiniteStarAlgebra z2() { return build_group_algebra(cyclic_group_table(2), {0, 1}); }

Functional vec(std::initializer_list<Complex> xs) {
  ComplexVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs) v(i++) = x;
  return {v};
}

Functional z2_state(double t) { return vec({1.0, t}); }

// The same functional presented in another basis, with its representation
// pulled back to the original basis coordinates.
GNSRepresentation rebuilt_in_other_basis(const FiniteStarAlgebra& a, const Functional& rho,
                                         const ComplexMatrix& b) {
  const auto moved = change_basis(a, b);
  const auto moved_rep = gns_construct(moved, change_basis_functional(b, rho));
  const ComplexMatrix binv = b.inverse();
  std::vector<ComplexMatrix> pis;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    ComplexMatrix p = ComplexMatrix::Zero(static_cast<Eigen::Index>(moved_rep.rep_dim),
                                          static_cast<Eigen::Index>(moved_rep.rep_dim));
    for (std::size_t k = 0; k < a.dim(); ++k) {
      p += binv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) * moved_rep.matrices[k];
    }
    pis.push_back(p);
  }
  GNSRepresentation rep{a, moved_rep.rep_dim, pis, moved_rep.cyclic_vector, rho, ComplexMatrix()};
  rep.embedding.resize(static_cast<Eigen::Index>(rep.rep_dim), static_cast<Eigen::Index>(a.dim()));
  for (std::size_t j = 0; j < a.dim(); ++j) rep.embedding.col(static_cast<Eigen::Index>(j)) = pis[j] * rep.cyclic_vector;
  return rep;
}

}  // namespace

TEST_CASE("gns_construct on C") {
  const auto c = build_matrix_algebra(1);
  const auto rep = gns_construct(c, vec({1.0}));
  CHECK(rep.rep_dim == 1);
  CHECK(std::abs(rep.matrices[0](0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(rep.cyclic_vector(0) - 1.0) < 1e-15);
}

TEST_CASE("gns_construct of the trivial character of Z2") {
  const auto rep = gns_construct(z2(), z2_state(1.0));
  CHECK(rep.rep_dim == 1);
  CHECK(std::abs(rep.matrices[1](0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(rep.cyclic_vector(0) - 1.0) < 1e-14);
}

TEST_CASE("gns_construct of the M2 trace is the left regular representation") {
  const auto m2 = build_matrix_algebra(2);
  const auto trace = vec({1, 0, 0, 1});
  const auto rep = gns_construct(m2, trace);
  CHECK(rep.rep_dim == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    const Complex value = rep.cyclic_vector.dot(rep.matrices[i] * rep.cyclic_vector);
    CHECK(std::abs(value - trace.values(static_cast<Eigen::Index>(i))) < 1e-12);
  }
  CHECK(verify_star_rep(rep).passed());
}

TEST_CASE("gns_construct rejects non-positive functionals and allows zero") {
  try {
    gns_construct(z2(), z2_state(2.0));
    FAIL("expected NotPositive");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPositive);
  }
  const auto empty = gns_construct(z2(), vec({0.0, 0.0}));
  CHECK(empty.rep_dim == 0);
  CHECK(verify_star_rep(empty).passed());
}

TEST_CASE("verify_star_rep flags a doubled generator") {
  auto rep = gns_construct(z2(), z2_state(0.0));
  REQUIRE(verify_star_rep(rep).passed());
  rep.matrices[1] *= 2.0;
  const auto report = verify_star_rep(rep);
  CHECK_FALSE(report.passed());
  CHECK(report.violation("multiplicativity") == doctest::Approx(3.0));
}

TEST_CASE("GNS round trip on random positive functionals") {
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = gnskit::testing::random_algebra(rng).algebra;
    const auto rho = gnskit::testing::random_positive_functional(a, rng);
    const auto rep = gns_construct(a, rho);
    const auto report = verify_star_rep(rep);
    CHECK(report.passed());
    CHECK(report.violation("reproduction") < 1e-8);
    CHECK(rep.rep_dim == is_positive(a, rho).gram_rank);
  }
}

TEST_CASE("intertwiner examples") {
  const auto a = z2();
  const auto rep = gns_construct(a, z2_state(0.3));
  CHECK(max_abs(ComplexMatrix(intertwiner(rep, rep) - ComplexMatrix::Identity(2, 2))) < 1e-12);

  try {
    intertwiner(gns_construct(a, z2_state(1.0)), gns_construct(a, z2_state(-1.0)));
    FAIL("expected NotEquivalent");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotEquivalent);
  }
}

TEST_CASE("intertwiner exists iff the functionals agree") {
  Rng rng(404);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = gnskit::testing::random_algebra(rng).algebra;
    const auto rho = gnskit::testing::random_positive_functional(a, rng);
    const auto rep1 = gns_construct(a, rho);
    const ComplexMatrix b = gnskit::testing::random_unitary(rng, a.dim());
    const auto rep2 = rebuilt_in_other_basis(a, rho, b);
    TolerancePolicy pol;
    const ComplexMatrix u = intertwiner(rep1, rep2, pol);
    const auto d = static_cast<Eigen::Index>(rep1.rep_dim);
    CHECK(max_abs(ComplexMatrix(u.adjoint() * u - ComplexMatrix::Identity(d, d))) < 1e-8);
    for (std::size_t i = 0; i < a.dim(); ++i) {
      CHECK(max_abs(ComplexVector(u * rep1.matrices[i] * rep1.cyclic_vector - rep2.matrices[i] * rep2.cyclic_vector)) < 1e-8);
    }

    // Perturb: add a small multiple of the regular trace (still positive).
    const Functional tau = gnskit::testing::regular_trace(a);
    const auto rep3 = gns_construct(a, {rho.values + 1e-4 * tau.values});
    CHECK_THROWS_AS(intertwiner(rep1, rep3), Error);
  }
}

TEST_CASE("commutant dimensions") {
  CHECK(commutant(gns_construct(build_matrix_algebra(1), vec({1.0}))).dimension == 1);
  const auto m2 = build_matrix_algebra(2);
  const auto regular = gns_construct(m2, vec({1, 0, 0, 1}));
  const auto comm = commutant(regular);
  CHECK(comm.dimension == 4);
  // Basis elements commute with every pi(e_i) and are Frobenius-orthonormal.
  for (const auto& c : comm.basis) {
    for (const auto& p : regular.matrices) CHECK(max_abs(ComplexMatrix(c * p - p * c)) < 1e-10);
    CHECK(c.squaredNorm() == doctest::Approx(1.0));
  }
  CHECK(commutant(gns_construct(z2(), z2_state(0.0))).dimension == 2);
}

TEST_CASE("irreducibility and extremality") {
  CHECK(is_irreducible(gns_construct(z2(), z2_state(1.0))));
  CHECK_FALSE(is_irreducible(gns_construct(z2(), z2_state(0.0))));
  const auto m2 = build_matrix_algebra(2);
  const auto vector_state = gns_construct(m2, vec({1, 0, 0, 0}));
  CHECK(vector_state.rep_dim == 2);
  CHECK(is_irreducible(vector_state));

  CHECK(is_extremal(z2(), z2_state(1.0)));
  CHECK_FALSE(is_extremal(z2(), z2_state(0.0)));
  CHECK_FALSE(is_extremal(m2, vec({1, 0, 0, 1})));
  try {
    is_extremal(z2(), vec({0.0, 0.0}));
    FAIL("expected ZeroFunctional");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroFunctional);
  }
}

TEST_CASE("decompose Z2 at t=0 into its two characters") {
  // Brute force over the characters of Z2: chi(g) = +-1, weights solve
  // w+ + w- = 1, w+ - w- = 0.
  const auto d = decompose(z2(), z2_state(0.0), {}, 7);
  REQUIRE(d.components.size() == 2);
  CHECK(d.components[0].weight == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(d.components[1].weight == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(max_abs(ComplexVector(d.components[0].functional.values - z2_state(1.0).values)) < 1e-10);
  CHECK(max_abs(ComplexVector(d.components[1].functional.values - z2_state(-1.0).values)) < 1e-10);
  CHECK(d.multiplicity_classes.size() == 2);
  CHECK(d.reconstruction_error < 1e-12);
}

TEST_CASE("decompose the M2 trace into two copies of the defining representation") {
  const auto m2 = build_matrix_algebra(2);
  for (std::uint64_t seed : {0u, 7u, 123u}) {
    const auto d = decompose(m2, vec({1, 0, 0, 1}), {}, seed);
    REQUIRE(d.components.size() == 2);
    for (const auto& c : d.components) {
      CHECK(c.representation.rep_dim == 2);
      CHECK(c.weight == doctest::Approx(1.0));
      CHECK(is_irreducible(c.representation));
    }
    REQUIRE(d.multiplicity_classes.size() == 1);
    CHECK(d.multiplicity_classes[0].size() == 2);
  }
}

TEST_CASE("decompose of an irreducible state is a single component") {
  const auto d = decompose(z2(), z2_state(1.0));
  REQUIRE(d.components.size() == 1);
  CHECK(d.components[0].weight == doctest::Approx(1.0));
}

TEST_CASE("decompose is deterministic for a fixed seed") {
  const auto m3 = build_matrix_algebra(3);
  ComplexVector trace = m3.unit();
  const auto a = decompose(m3, {trace}, {}, 5);
  const auto b = decompose(m3, {trace}, {}, 5);
  REQUIRE(a.components.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(a.components[k].weight == b.components[k].weight);
    CHECK(a.components[k].functional.values == b.components[k].functional.values);
  }
}

TEST_CASE("decomposition soundness on random functionals") {
  Rng rng(31337);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = gnskit::testing::random_algebra(rng).algebra;
    const auto rho = gnskit::testing::random_positive_functional(a, rng);
    const auto d = decompose(a, rho, {}, static_cast<std::uint64_t>(trial));
    CHECK(d.reconstruction_error < 1e-8);
    Complex at_unit = 0.0;
    std::size_t total_dim = 0;
    for (const auto& c : d.components) {
      CHECK(c.weight > 0.0);
      CHECK(commutant(c.representation).dimension == 1);
      CHECK(verify_star_rep(c.representation).passed());
      at_unit += c.weight * evaluate(a, c.functional, unit_element(a));
      total_dim += c.representation.rep_dim;
    }
    CHECK(std::abs(at_unit - evaluate(a, rho, unit_element(a))) < 1e-8);
    CHECK(total_dim == gns_construct(a, rho).rep_dim);
  }
}

TEST_CASE("unitary_equivalence ignores cyclic vectors") {
  const auto m2 = build_matrix_algebra(2);
  const auto e11 = gns_construct(m2, vec({1, 0, 0, 0}));
  const auto e22 = gns_construct(m2, vec({0, 0, 0, 1}));
  CHECK_THROWS_AS(intertwiner(e11, e22), Error);
  const auto u = unitary_equivalence(e11, e22);
  REQUIRE(u.has_value());
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(max_abs(ComplexMatrix(*u * e11.matrices[i] - e22.matrices[i] * *u)) < 1e-10);
  }
  CHECK_FALSE(unitary_equivalence(gns_construct(z2(), z2_state(1.0)), gns_construct(z2(), z2_state(-1.0))).has_value());
}
