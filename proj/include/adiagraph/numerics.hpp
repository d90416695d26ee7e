#pragma once

// Dense Hermitian linear algebra shared by the graph, circuit and Hamiltonian layers.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace adiagraph {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double pi = std::numbers::pi;

/// Largest dimension handed to the dense eigensolver.
inline constexpr Eigen::Index kDenseCap = 4096;

/// Default tolerance for deciding that two eigenvalues are degenerate.
inline constexpr double kDegeneracyTol = 1e-8;

/// Raised when a numerical precondition fails (non-Hermitian input, size cap, ...).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised on malformed user input (files, arguments, invalid structures).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class Scalar>
struct EigenDecomposition {
  RVector values;  // ascending
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;
};

struct SpectralSummary {
  std::vector<double> eigenvalues;
  int ground_multiplicity = 0;
  double gap = 0.0;
  double tol = kDegeneracyTol;
};

template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

template <class Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  return max_abs(m - m.adjoint());
}

namespace detail {

template <class Derived>
void require_hermitian(const Eigen::MatrixBase<Derived>& m, double tol) {
  if (m.rows() != m.cols()) throw NumericError("matrix is not square");
  if (m.rows() > kDenseCap) {
    std::ostringstream os;
    os << "dimension " << m.rows() << " exceeds dense eigensolver cap " << kDenseCap;
    throw NumericError(os.str());
  }
  const double defect = hermiticity_defect(m);
  if (defect > tol * std::max(1.0, max_abs(m))) {
    std::ostringstream os;
    os << "matrix is not Hermitian: max |M - M^dagger| = " << defect;
    throw NumericError(os.str());
  }
}

}  // namespace detail

/// Full eigendecomposition of a Hermitian (or real symmetric) matrix, eigenvalues ascending.
template <class Derived>
auto eig_hermitian(const Eigen::MatrixBase<Derived>& m, double herm_tol = 1e-12) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  detail::require_hermitian(m, herm_tol);
  EigenDecomposition<Scalar> out;
  if (m.rows() == 0) return out;
  Eigen::SelfAdjointEigenSolver<Mat> es(Mat(m), Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw NumericError("eigensolver did not converge");
  out.values = es.eigenvalues();
  out.vectors = es.eigenvectors();
  return out;
}

template <class Derived>
RVector eigenvalues_hermitian(const Eigen::MatrixBase<Derived>& m, double herm_tol = 1e-12) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  detail::require_hermitian(m, herm_tol);
  if (m.rows() == 0) return RVector();
  Eigen::SelfAdjointEigenSolver<Mat> es(Mat(m), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("eigensolver did not converge");
  return es.eigenvalues();
}

inline SpectralSummary summarize_spectrum(const RVector& values, double tol = kDegeneracyTol) {
  SpectralSummary s;
  s.tol = tol;
  s.eigenvalues.assign(values.data(), values.data() + values.size());
  if (values.size() == 0) return s;
  int g = 0;
  while (g < values.size() && values[g] - values[0] <= tol) ++g;
  s.ground_multiplicity = g;
  s.gap = g < values.size() ? values[g] - values[0] : 0.0;
  return s;
}

template <class Derived>
SpectralSummary spectral_summary(const Eigen::MatrixBase<Derived>& m, double tol = kDegeneracyTol) {
  return summarize_spectrum(eigenvalues_hermitian(m), tol);
}

/// Largest singular value.
template <class Derived>
double operator_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  using Mat = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::JacobiSVD<Mat> svd{Mat(m)};
  return svd.singularValues()(0);
}

/// Operator norm of a Hermitian matrix via its extreme eigenvalues.
template <class Derived>
double hermitian_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  const RVector ev = eigenvalues_hermitian(m, 1e-9);
  return std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
}

/// exp(i * scale * h) for Hermitian h.
inline CMatrix expm_skew(const CMatrix& h, double scale) {
  const auto ed = eig_hermitian(h, 1e-10);
  CVector phases(ed.values.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) phases[k] = std::polar(1.0, scale * ed.values[k]);
  return ed.vectors * phases.asDiagonal() * ed.vectors.adjoint();
}

template <class Derived>
double unitarity_defect(const Eigen::MatrixBase<Derived>& u) {
  const CMatrix uu = u.adjoint() * u;
  return max_abs(uu - CMatrix::Identity(u.cols(), u.cols()));
}

/// Hermitian h with exp(i h) = u, eigenphases on the principal branch (-pi, pi].
inline CMatrix log_unitary(const CMatrix& u, double unit_tol = 1e-10) {
  if (u.rows() != u.cols()) throw NumericError("log_unitary: matrix is not square");
  if (const double d = unitarity_defect(u); d > unit_tol) {
    std::ostringstream os;
    os << "log_unitary: matrix is not unitary, max |U^dagger U - I| = " << d;
    throw NumericError(os.str());
  }
  if (u.rows() == 0) return CMatrix();
  // For a normal matrix the Schur form is diagonal and the Schur vectors are eigenvectors.
  Eigen::ComplexSchur<CMatrix> schur(u);
  const CMatrix& q = schur.matrixU();
  const CMatrix& t = schur.matrixT();
  RVector phase(u.rows());
  for (Eigen::Index k = 0; k < u.rows(); ++k) {
    double a = std::arg(t(k, k));
    // Eigenvalues at -1 may land on either side of the cut; snap them to +pi.
    if (a <= -pi + 1e-9) a += 2.0 * pi;
    phase[k] = a;
  }
  CMatrix h = q * phase.cast<cplx>().asDiagonal() * q.adjoint();
  return (0.5 * (h + h.adjoint())).eval();
}

/// Orthonormal basis for the column span of m, rank decided by singular values above tol.
inline CMatrix orthonormal_basis(const CMatrix& m, double tol = 1e-10) {
  if (m.cols() == 0) return CMatrix(m.rows(), 0);
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU);
  const RVector& sv = svd.singularValues();
  Eigen::Index r = 0;
  const double scale = std::max(1.0, sv.size() ? sv[0] : 0.0);
  while (r < sv.size() && sv[r] > tol * scale) ++r;
  return svd.matrixU().leftCols(r);
}

/// Singular values of A^dagger B, i.e. cosines of the principal angles, descending.
inline RVector principal_cosines(const CMatrix& a, const CMatrix& b) {
  if (a.cols() == 0 || b.cols() == 0) throw NumericError("principal angle of an empty subspace");
  if (a.rows() != b.rows()) throw NumericError("principal angle: ambient dimensions differ");
  Eigen::JacobiSVD<CMatrix> svd(CMatrix(a.adjoint() * b));
  return svd.singularValues();
}

/// Smallest principal angle between the spans of two orthonormal column sets, in [0, pi/2].
inline double principal_angle(const CMatrix& a, const CMatrix& b) {
  const double c = std::clamp(principal_cosines(a, b)[0], 0.0, 1.0);
  return std::acos(c);
}

/// Orthonormal basis of the eigenspace with eigenvalues within tol of zero.
template <class Derived>
CMatrix null_space(const Eigen::MatrixBase<Derived>& m, double tol = kDegeneracyTol) {
  const auto ed = eig_hermitian(m, 1e-9);
  Eigen::Index k = 0;
  while (k < ed.values.size() && std::abs(ed.values[k]) <= tol) ++k;
  return ed.vectors.leftCols(k).template cast<cplx>();
}

inline CMatrix projector(const CMatrix& basis) { return basis * basis.adjoint(); }

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Trapezoid rule on a (not necessarily uniform) grid.
inline double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw NumericError("trapezoid: grid and values differ in length");
  double acc = 0.0;
  for (std::size_t k = 1; k < x.size(); ++k) acc += 0.5 * (x[k] - x[k - 1]) * (y[k] + y[k - 1]);
  return acc;
}

/// Least-squares slope of y against x.
inline double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw NumericError("slope fit needs at least two points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  if (sxx == 0) throw NumericError("slope fit: x values are all equal");
  return sxy / sxx;
}

/// Binomial coefficient in floating point; exact while the result stays below 2^53.
inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c < 9.0e15 ? std::round(c) : c;
}

}  // namespace adiagraph
