#include <adiagraph/numerics.hpp>
#include <adiagraph/random.hpp>

#include <catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace adiagraph;
using Catch::Approx;

namespace {

CMatrix pauli_x() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  return m;
}

CMatrix random_hermitian(Rng& rng, Eigen::Index dim) {
  std::normal_distribution<double> g;
  CMatrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = cplx(g(rng), g(rng));
  return 0.5 * (m + m.adjoint());
}

}  // namespace

TEST_CASE("eig_hermitian on small closed forms", "[numerics]") {
  RMatrix m(2, 2);
  m << 1, -0.5, -0.5, 1;
  const auto ed = eig_hermitian(m);
  CHECK(ed.values[0] == Approx(0.5).margin(1e-14));
  CHECK(ed.values[1] == Approx(1.5).margin(1e-14));

  const auto id = summarize_spectrum(eigenvalues_hermitian(RMatrix::Identity(5, 5)));
  CHECK(id.ground_multiplicity == 5);
  CHECK(id.gap == 0.0);

  const RVector c4 = eigenvalues_hermitian(normalized_laplacian(cycle_graph(4)));
  const double expect[] = {0, 1, 1, 2};
  for (int k = 0; k < 4; ++k) CHECK(c4[k] == Approx(expect[k]).margin(1e-12));
}

TEST_CASE("eig_hermitian rejects non-Hermitian input", "[numerics]") {
  CMatrix m = CMatrix::Identity(3, 3);
  m(0, 1) = 1e-6;
  CHECK_THROWS_AS(eig_hermitian(m), NumericError);
  CHECK_THROWS_WITH(eig_hermitian(m), Catch::Matchers::ContainsSubstring("Hermitian"));
}

TEST_CASE("eigendecomposition residuals, orthonormality and reconstruction", "[numerics][property]") {
  Rng rng(101);
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::Index dim = 2 + rep % 15;
    const CMatrix m = random_hermitian(rng, dim);
    const auto ed = eig_hermitian(m);
    const double scale = std::max(1.0, operator_norm(m));
    for (Eigen::Index k = 0; k < dim; ++k)
      CHECK((m * ed.vectors.col(k) - ed.values[k] * ed.vectors.col(k)).norm() <= 1e-9 * scale);
    CHECK(max_abs(CMatrix(ed.vectors.adjoint() * ed.vectors - CMatrix::Identity(dim, dim))) <= 1e-10);
    const CMatrix rec = ed.vectors * ed.values.cast<cplx>().asDiagonal() * ed.vectors.adjoint();
    CHECK(max_abs(CMatrix(rec - m)) <= 1e-8 * scale);
    for (Eigen::Index k = 1; k < dim; ++k) CHECK(ed.values[k] >= ed.values[k - 1]);
  }
}

TEST_CASE("summarize_spectrum multiplicity and gap", "[numerics]") {
  RVector v(4);
  v << 0.0, 5e-9, 0.3, 1.0;
  const auto s = summarize_spectrum(v, 1e-8);
  CHECK(s.ground_multiplicity == 2);
  CHECK(s.gap == Approx(0.3));
  CHECK(s.tol == 1e-8);
}

TEST_CASE("expm_skew examples", "[numerics]") {
  CHECK(max_abs(CMatrix(expm_skew(CMatrix::Zero(3, 3), 2.7) - CMatrix::Identity(3, 3))) < 1e-14);

  CMatrix h = CMatrix::Zero(2, 2);
  h(1, 1) = pi / 4;
  const CMatrix t = expm_skew(h, 1.0);
  CHECK(std::abs(t(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(t(1, 1) - std::polar(1.0, pi / 4)) < 1e-14);

  const CMatrix minus_id = expm_skew(CMatrix(pi * pauli_x()), 1.0);
  CHECK(max_abs(CMatrix(minus_id + CMatrix::Identity(2, 2))) < 1e-14);
}

TEST_CASE("log_unitary examples and principal branch", "[numerics]") {
  CHECK(max_abs(log_unitary(CMatrix::Identity(4, 4))) < 1e-14);

  CMatrix t = CMatrix::Identity(2, 2);
  t(1, 1) = std::polar(1.0, pi / 4);
  const CMatrix ht = log_unitary(t);
  CHECK(std::abs(ht(1, 1) - pi / 4) < 1e-14);
  CHECK(std::abs(ht(0, 0)) < 1e-14);

  CMatrix cnot = CMatrix::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  const RVector spec = eigenvalues_hermitian(log_unitary(cnot));
  CHECK(spec[0] == Approx(0).margin(1e-12));
  CHECK(spec[2] == Approx(0).margin(1e-12));
  CHECK(spec[3] == Approx(pi).margin(1e-12));

  // -I sits on the branch cut and must map to +pi, not -pi.
  CHECK(eigenvalues_hermitian(log_unitary(CMatrix(-CMatrix::Identity(2, 2))))[0] == Approx(pi));
}

TEST_CASE("log_unitary round trip on Haar unitaries", "[numerics][property]") {
  Rng rng(202);
  for (int rep = 0; rep < 30; ++rep) {
    const Eigen::Index dim = 1 + rep % 16;
    const CMatrix u = haar_unitary(rng, dim);
    const CMatrix h = log_unitary(u);
    CHECK(hermiticity_defect(h) < 1e-12);
    CHECK(hermitian_norm(h) <= pi + 1e-9);
    CHECK(max_abs(CMatrix(expm_skew(h, 1.0) - u)) < 1e-8);
  }
}

TEST_CASE("principal angle examples and symmetry", "[numerics]") {
  CMatrix e1 = CMatrix::Zero(3, 1), e2 = CMatrix::Zero(3, 1), d = CMatrix::Zero(3, 1);
  e1(0, 0) = 1;
  e2(1, 0) = 1;
  d(0, 0) = d(1, 0) = 1 / std::sqrt(2.0);
  CHECK(principal_angle(e1, e1) == Approx(0).margin(1e-7));
  CHECK(principal_angle(e1, e2) == Approx(pi / 2));
  CHECK(principal_angle(e1, d) == Approx(pi / 4));
  CHECK_THROWS_AS(principal_angle(CMatrix(3, 0), e1), NumericError);

  Rng rng(303);
  for (int rep = 0; rep < 20; ++rep) {
    const CMatrix u = haar_unitary(rng, 6);
    const CMatrix a = u.leftCols(2), b = haar_unitary(rng, 6).leftCols(3);
    CHECK(std::abs(principal_angle(a, b) - principal_angle(b, a)) < 1e-12);
  }
}

TEST_CASE("Haar unitaries are unitary", "[numerics][random]") {
  Rng rng(404);
  for (int dim : {1, 2, 5, 16}) CHECK(unitarity_defect(haar_unitary(rng, dim)) < 1e-12);
}

TEST_CASE("null space, projector, kron and quadrature helpers", "[numerics]") {
  RMatrix m = RMatrix::Zero(3, 3);
  m(2, 2) = 1.0;
  const CMatrix ns = null_space(m);
  REQUIRE(ns.cols() == 2);
  CHECK(max_abs(CMatrix(projector(ns) - CMatrix(Eigen::Vector3cd(1, 1, 0).asDiagonal()))) < 1e-12);

  const CMatrix k = kron(CMatrix(pauli_x()), CMatrix::Identity(2, 2));
  CHECK(k(0, 2) == cplx(1.0));
  CHECK(k(3, 1) == cplx(1.0));

  CHECK(trapezoid({0, 0.5, 1}, {0, 0.5, 1}) == Approx(0.5));
  CHECK(least_squares_slope({1, 2, 3}, {2, 4, 6}) == Approx(2));
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(60, 30) == Approx(1.1826458156486750e17));
  CHECK(binomial(5, 7) == 0);
}

TEST_CASE("dense cap is enforced", "[numerics]") {
  CHECK_THROWS_AS(eig_hermitian(RMatrix::Identity(kDenseCap + 1, kDenseCap + 1)), NumericError);
}
