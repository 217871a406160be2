#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <complex>
#include <random>
#include <vector>

#include "sympsig/errors.hpp"

namespace sympsig {

using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Complex = std::complex<double>;
using Rng = std::mt19937_64;

template <typename Derived>
double sup_norm(const Eigen::MatrixBase<Derived>& m) {
  return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

// Standard symplectic form [[0, I], [-I, 0]].
inline Mat standard_omega(int n) {
  Mat o = Mat::Zero(2 * n, 2 * n);
  o.topRightCorner(n, n) = Mat::Identity(n, n);
  o.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
  return o;
}

// Standard compatible complex structure [[0, -I], [I, 0]] (= -Omega).
inline Mat standard_j(int n) { return -standard_omega(n); }

inline int half_dim(const Mat& m) {
  if (m.rows() != m.cols()) throw DimensionError("matrix is not square");
  if (m.rows() % 2 != 0) throw DimensionError("matrix dimension is odd");
  return static_cast<int>(m.rows()) / 2;
}

inline bool is_symplectic(const Mat& m, double tol = 1e-10) {
  int n = half_dim(m);
  Mat omega = standard_omega(n);
  return sup_norm(m.transpose() * omega * m - omega) <= tol;
}

inline bool is_sp_lie_element(const Mat& b, double tol = 1e-10) {
  int n = half_dim(b);
  Mat omega = standard_omega(n);
  return sup_norm(b.transpose() * omega + omega * b) <= tol;
}

inline Mat mat_exp(const Mat& m) { return m.exp(); }

// Orthonormal basis of the (numerical) kernel, columns of the result.
inline Mat kernel_basis(const Mat& m, double rel_tol = 1e-8) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double scale = sv.size() ? sv(0) : 0.0;
  double thresh = rel_tol * std::max(scale, 1.0);
  int k = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) <= thresh) ++k;
  return svd.matrixV().rightCols(k);
}

inline int numerical_rank(const Mat& m, double rel_tol = 1e-8) {
  return static_cast<int>(m.cols()) - static_cast<int>(kernel_basis(m, rel_tol).cols());
}

// Real 2n x 2n matrix commuting with standard_j(n), from a complex n x n
// matrix acting C-linearly on (R^{2n}, J_std) ~ C^n via (x, y) <-> x + iy.
inline Mat unitary_embed(const CMat& u) {
  int n = static_cast<int>(u.rows());
  Mat m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = u.real();
  m.topRightCorner(n, n) = -u.imag();
  m.bottomLeftCorner(n, n) = u.imag();
  m.bottomRightCorner(n, n) = u.real();
  return m;
}

// Inverse of unitary_embed on matrices commuting with standard_j.
inline CMat unitary_extract(const Mat& m) {
  int n = half_dim(m);
  return m.topLeftCorner(n, n).cast<Complex>() -
         Complex(0, 1) * m.topRightCorner(n, n).cast<Complex>();
}

// Element of sp(2n, R): [[P, Q], [R, -P^T]] with Q, R symmetric.
inline Mat random_sp_element(int n, Rng& rng, double scale = 0.5) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  Mat p(n, n), q(n, n), r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p(i, j) = dist(rng);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      q(i, j) = q(j, i) = dist(rng);
      r(i, j) = r(j, i) = dist(rng);
    }
  Mat b(2 * n, 2 * n);
  b.topLeftCorner(n, n) = p;
  b.topRightCorner(n, n) = q;
  b.bottomLeftCorner(n, n) = r;
  b.bottomRightCorner(n, n) = -p.transpose();
  return b;
}

inline Mat random_symplectic(int n, Rng& rng, double scale = 0.5) {
  return mat_exp(random_sp_element(n, rng, scale));
}

inline CMat random_complex_symmetric(int n, Rng& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  CMat v(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      v(i, j) = Complex(dist(rng), dist(rng));
      v(j, i) = v(i, j);
    }
  return v;
}

// Takagi factorization of a complex symmetric matrix: W = U diag(s) U^T with
// U unitary and s >= 0 sorted descending. Built from the eigendecomposition
// of the Hermitian matrix conj(W) W, with per-cluster phase correction.
struct Takagi {
  CMat u;
  Vec s;
};

inline Takagi takagi_factor(const CMat& w, double cluster_tol = 1e-10) {
  int n = static_cast<int>(w.rows());
  if (w.cols() != n) throw DimensionError("takagi: matrix not square");
  CMat h = w.conjugate() * w;  // Hermitian PSD
  Eigen::SelfAdjointEigenSolver<CMat> es((h + h.adjoint()) / 2.0);
  Vec ev = es.eigenvalues().cwiseMax(0.0);
  CMat q = es.eigenvectors();

  Vec s(n);
  for (int i = 0; i < n; ++i) s(i) = std::sqrt(ev(i));
  CMat u = CMat::Zero(n, n);
  double scale = std::max(1.0, s.maxCoeff());

  // Process clusters of equal singular values together.
  int i = 0;
  while (i < n) {
    int j = i + 1;
    while (j < n && std::abs(s(j) - s(i)) <= cluster_tol * scale) ++j;
    int m = j - i;
    CMat qm = q.middleCols(i, m);
    double sv = s.segment(i, m).mean();
    if (sv <= cluster_tol * scale) {
      u.middleCols(i, m) = qm.conjugate();  // W vanishes here, any phase works
    } else {
      // C = Q^T W Q is sv times a unitary symmetric matrix; its principal
      // square root X is again unitary symmetric, and U = conj(Q) X.
      CMat c = (qm.transpose() * w * qm) / sv;
      c = (c + c.transpose()) / 2.0;
      CMat root;
      if (m == 1) {
        root = CMat::Constant(1, 1, std::sqrt(c(0, 0)));
      } else {
        Eigen::ComplexEigenSolver<CMat> ces(c);
        CMat d = CMat::Zero(m, m);
        for (int k = 0; k < m; ++k) d(k, k) = std::sqrt(ces.eigenvalues()(k));
        root = ces.eigenvectors() * d * ces.eigenvectors().inverse();
        root = (root + root.transpose()) / 2.0;
      }
      u.middleCols(i, m) = qm.conjugate() * root;
    }
    i = j;
  }

  // Sort descending.
  std::vector<int> idx(n);
  for (int k = 0; k < n; ++k) idx[k] = k;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return s(a) > s(b); });
  Takagi t;
  t.u.resize(n, n);
  t.s.resize(n);
  for (int k = 0; k < n; ++k) {
    t.u.col(k) = u.col(idx[k]);
    t.s(k) = s(idx[k]);
  }
  return t;
}

// Compensated (Kahan) summation, used where bit-stable reductions matter.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

}  // namespace sympsig
