#pragma once

// Geometry of the bounded symmetric domain of complex symmetric n x n
// matrices W with I - conj(W) W > 0: Moebius action of Sp(2n, R), compatible
// complex structures, Kaehler form and invariant potentials, Takagi-based
// geodesics, and geodesic triangle integrals.
//
// Conventions: Omega = [[0, I], [-I, 0]], J_std = [[0, -I], [I, 0]], and the
// Kaehler form is the one with holomorphic sectional curvature in [-1, -1/n],
// evaluated as omega(X, Y) = -4 Im[Tr(M^-1 Ybar X) + Tr(M^-1 Ybar W M^-1 Wbar X)]
// with M = I - conj(W) W.

#include <array>
#include <cmath>
#include <optional>

#include "sympsig/quadrature.hpp"
#include "sympsig/symplectic.hpp"

namespace sympsig {

struct SiegelOptions {
  double quad_tol = 1e-8;
  // Takagi-parameter cap used to pull ideal vertices into the interior.
  // tanh(13)^2 keeps the interiority margin near 2e-11, comfortably above the
  // 1e-12 boundary threshold, while the omitted horocyclic tips carry mass of
  // order exp(-26).
  double ideal_truncation = 13.0;
};

inline CMat symmetrize(const CMat& w) { return (w + w.transpose()) / 2.0; }

// Smallest eigenvalue of I - conj(W) W.
inline double interior_margin(const CMat& w) {
  int n = static_cast<int>(w.rows());
  CMat m = CMat::Identity(n, n) - w.conjugate() * w;
  Eigen::SelfAdjointEigenSolver<CMat> es((m + m.adjoint()) / 2.0);
  return es.eigenvalues().minCoeff();
}

inline bool is_siegel_point(const CMat& w, double margin = 1e-12) {
  if (w.rows() != w.cols()) return false;
  if (sup_norm(CMat(w - w.transpose())) > 1e-10) return false;
  return interior_margin(w) >= margin;
}

inline bool is_closure_point(const CMat& w, double slack = 1e-9) {
  if (w.rows() != w.cols()) return false;
  if (sup_norm(CMat(w - w.transpose())) > 1e-8) return false;
  return interior_margin(w) >= -slack;
}

inline bool is_boundary_point(const CMat& w, double margin = 1e-12) {
  return is_closure_point(w) && interior_margin(w) < margin;
}

struct ClosurePoint {
  CMat w;
  bool boundary_flag = false;
};

inline ClosurePoint make_closure_point(const CMat& w, double margin = 1e-12) {
  if (!is_closure_point(w)) throw ValidationError("not a point of the closed Siegel disk");
  return {symmetrize(w), interior_margin(w) < margin};
}

// Cayley transform to the Siegel upper half space and back (convenience).
inline CMat cayley(const CMat& w) {
  int n = static_cast<int>(w.rows());
  CMat id = CMat::Identity(n, n);
  return Complex(0, 1) * (id - w) * (id + w).inverse();
}
inline CMat cayley_inverse(const CMat& z) {
  int n = static_cast<int>(z.rows());
  CMat id = CMat::Identity(n, n);
  // W = (iI - Z)(iI + Z)^{-1} inverts Z = i(I - W)(I + W)^{-1}
  return (Complex(0, 1) * id - z) * (Complex(0, 1) * id + z).inverse();
}

// ---------------------------------------------------------------------------
// Moebius blocks: L = U [[Z1, Z2], [conj Z2, conj Z1]] U^{-1}.

struct MoebiusBlocks {
  CMat z1, z2;

  int n() const { return static_cast<int>(z1.rows()); }

  static MoebiusBlocks from_symplectic(const Mat& l) {
    int n = half_dim(l);
    CMat u(2 * n, 2 * n), uinv(2 * n, 2 * n);
    CMat id = CMat::Identity(n, n);
    u.topLeftCorner(n, n) = Complex(0, -1) * id;
    u.topRightCorner(n, n) = Complex(0, 1) * id;
    u.bottomLeftCorner(n, n) = id;
    u.bottomRightCorner(n, n) = id;
    uinv.topLeftCorner(n, n) = Complex(0, 0.5) * id;
    uinv.topRightCorner(n, n) = 0.5 * id;
    uinv.bottomLeftCorner(n, n) = Complex(0, -0.5) * id;
    uinv.bottomRightCorner(n, n) = 0.5 * id;
    CMat m = uinv * l.cast<Complex>() * u;
    MoebiusBlocks b{m.topLeftCorner(n, n), m.topRightCorner(n, n)};
    if (sup_norm(CMat(m.bottomLeftCorner(n, n) - b.z2.conjugate())) > 1e-8 ||
        sup_norm(CMat(m.bottomRightCorner(n, n) - b.z1.conjugate())) > 1e-8)
      throw ValidationError("moebius blocks: matrix is not symplectic");
    return b;
  }

  Mat to_symplectic() const {
    int nn = n();
    CMat m(2 * nn, 2 * nn);
    m.topLeftCorner(nn, nn) = z1;
    m.topRightCorner(nn, nn) = z2;
    m.bottomLeftCorner(nn, nn) = z2.conjugate();
    m.bottomRightCorner(nn, nn) = z1.conjugate();
    CMat u(2 * nn, 2 * nn), uinv(2 * nn, 2 * nn);
    CMat id = CMat::Identity(nn, nn);
    u.topLeftCorner(nn, nn) = Complex(0, -1) * id;
    u.topRightCorner(nn, nn) = Complex(0, 1) * id;
    u.bottomLeftCorner(nn, nn) = id;
    u.bottomRightCorner(nn, nn) = id;
    uinv.topLeftCorner(nn, nn) = Complex(0, 0.5) * id;
    uinv.topRightCorner(nn, nn) = 0.5 * id;
    uinv.bottomLeftCorner(nn, nn) = Complex(0, -0.5) * id;
    uinv.bottomRightCorner(nn, nn) = 0.5 * id;
    return (u * m * uinv).real();
  }

  CMat apply(const CMat& w) const {
    CMat den = z2.conjugate() * w + z1.conjugate();
    Eigen::FullPivLU<CMat> lu(den);
    if (!lu.isInvertible())
      throw SingularActionError("moebius action: singular denominator at boundary point");
    CMat num = z1 * w + z2;
    // X = num * den^{-1} via den^T X^T = num^T
    CMat x = den.transpose().fullPivLu().solve(num.transpose()).transpose();
    return symmetrize(x);
  }

  // Differential of the action at W applied to a tangent X.
  CMat diff(const CMat& w, const CMat& x) const {
    CMat den = z2.conjugate() * w + z1.conjugate();
    Eigen::FullPivLU<CMat> lu(den);
    if (!lu.isInvertible()) throw SingularActionError("moebius diff: singular denominator");
    CMat zw = apply(w);
    CMat num = (z1 - zw * z2.conjugate()) * x;
    CMat out = den.transpose().fullPivLu().solve(num.transpose()).transpose();
    return symmetrize(out);
  }
};

inline MoebiusBlocks blocks(const Mat& l) { return MoebiusBlocks::from_symplectic(l); }

inline CMat act(const Mat& l, const CMat& w) { return blocks(l).apply(w); }

// Vector field on the disk generated by a Lie algebra element.
inline CMat action_vector_field(const Mat& b_sp, const CMat& w) {
  int n = half_dim(b_sp);
  CMat u(2 * n, 2 * n), uinv(2 * n, 2 * n);
  CMat id = CMat::Identity(n, n);
  u.topLeftCorner(n, n) = Complex(0, -1) * id;
  u.topRightCorner(n, n) = Complex(0, 1) * id;
  u.bottomLeftCorner(n, n) = id;
  u.bottomRightCorner(n, n) = id;
  uinv.topLeftCorner(n, n) = Complex(0, 0.5) * id;
  uinv.topRightCorner(n, n) = 0.5 * id;
  uinv.bottomLeftCorner(n, n) = Complex(0, -0.5) * id;
  uinv.bottomRightCorner(n, n) = 0.5 * id;
  CMat m = uinv * b_sp.cast<Complex>() * u;
  CMat c1 = m.topLeftCorner(n, n), c2 = m.topRightCorner(n, n);
  CMat v = (c1 * w + c2) - w * (c2.conjugate() * w + c1.conjugate());
  return symmetrize(v);
}

// ---------------------------------------------------------------------------
// Compatible complex structures <-> points of the disk.

// Canonical complex structure J_F(W) on R^{2n}.
inline Mat j_from_w(const CMat& w) {
  int n = static_cast<int>(w.rows());
  CMat id = CMat::Identity(n, n);
  CMat m = id - w * w.conjugate();
  CMat a = -m.fullPivLu().solve(id + w * w.conjugate());
  CMat b = 2.0 * m.fullPivLu().solve(w);
  Mat j(2 * n, 2 * n);
  j.topLeftCorner(n, n) = -a.imag() + b.imag();
  j.topRightCorner(n, n) = a.real() + b.real();
  j.bottomLeftCorner(n, n) = -a.real() + b.real();
  j.bottomRightCorner(n, n) = -a.imag() - b.imag();
  return j;
}

// Inverse map: the disk point of a compatible complex structure.
inline CMat w_from_j(const Mat& j) {
  int n = half_dim(j);
  if (sup_norm(j * j + Mat::Identity(2 * n, 2 * n)) > 1e-8)
    throw CompatibilityError("w_from_j: J^2 != -I");
  Mat g = standard_omega(n) * j;
  g = (g + g.transpose()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(g);
  if (es.eigenvalues().minCoeff() <= 0)
    throw CompatibilityError("w_from_j: Omega(., J.) is not positive definite");
  CMat u(2 * n, 2 * n), uinv(2 * n, 2 * n);
  CMat id = CMat::Identity(n, n);
  u.topLeftCorner(n, n) = Complex(0, -1) * id;
  u.topRightCorner(n, n) = Complex(0, 1) * id;
  u.bottomLeftCorner(n, n) = id;
  u.bottomRightCorner(n, n) = id;
  uinv.topLeftCorner(n, n) = Complex(0, 0.5) * id;
  uinv.topRightCorner(n, n) = 0.5 * id;
  uinv.bottomLeftCorner(n, n) = Complex(0, -0.5) * id;
  uinv.bottomRightCorner(n, n) = 0.5 * id;
  CMat m = uinv * j.cast<Complex>() * u;
  CMat a = Complex(0, -1) * m.topLeftCorner(n, n);
  CMat b = Complex(0, -1) * m.topRightCorner(n, n);
  CMat w = (id - a).fullPivLu().solve(b);
  return symmetrize(w);
}

// ---------------------------------------------------------------------------
// Kaehler form, curvature, potentials.

// Levi pairing of -log det(I - conj(W) W): L(V, U) with U in the conjugated slot.
inline Complex levi_pairing(const CMat& w, const CMat& v, const CMat& u) {
  int n = static_cast<int>(w.rows());
  CMat m = CMat::Identity(n, n) - w.conjugate() * w;
  Eigen::FullPivLU<CMat> lu(m);
  CMat ub = u.conjugate();
  CMat t1 = lu.solve(ub * v);
  CMat t2 = lu.solve(ub * w) * lu.solve(w.conjugate() * v);
  return t1.trace() + t2.trace();
}

// Kaehler form on real tangent vectors represented by their complex
// coordinates.
inline double kahler_form(const CMat& w, const CMat& v1, const CMat& v2) {
  return -4.0 * levi_pairing(w, v1, v2).imag();
}

// Riemannian metric g(X, Y) = omega(X, iY).
inline double siegel_metric(const CMat& w, const CMat& v1, const CMat& v2) {
  return 4.0 * levi_pairing(w, v1, v2).real();
}

inline double hol_sect_curvature_at_zero(const CMat& v) {
  double norm2 = (v.conjugate() * v).trace().real();
  if (norm2 <= 0) throw ValidationError("curvature: zero tangent vector");
  CMat q = v.conjugate() * v;
  double num = (q * q).trace().real();
  return -num / (norm2 * norm2);
}

// Invariant Kaehler potential anchored at a closure point W0.
inline double kahler_potential(const CMat& w0, const CMat& w) {
  int n = static_cast<int>(w.rows());
  CMat id = CMat::Identity(n, n);
  CMat d = w0.conjugate() * w - id;
  Complex det = d.determinant();
  if (std::abs(det) < 1e-150)
    throw PotentialSingularityError("kahler potential: det(conj(W0) W - I) vanishes");
  CMat m = id - w.conjugate() * w;
  Eigen::SelfAdjointEigenSolver<CMat> es((m + m.adjoint()) / 2.0);
  if (es.eigenvalues().minCoeff() <= 0)
    throw ValidationError("kahler potential: point not interior");
  double logdet_m = es.eigenvalues().array().log().sum();
  return 2.0 * std::log(std::abs(det)) - logdet_m;
}

// One-form alpha = d^c psi_{W0} evaluated on a real tangent vector.
inline double alpha_form(const CMat& w0, const CMat& w, const CMat& v) {
  int n = static_cast<int>(w.rows());
  CMat id = CMat::Identity(n, n);
  CMat d = w0.conjugate() * w - id;
  Eigen::FullPivLU<CMat> lud(d);
  if (!lud.isInvertible())
    throw PotentialSingularityError("alpha: det(conj(W0) W - I) vanishes");
  CMat m = id - w.conjugate() * w;
  Complex dpsi = lud.solve(w0.conjugate() * v).trace() +
                 m.fullPivLu().solve(w.conjugate() * v).trace();
  return 2.0 * dpsi.imag();
}

// Finite-difference check of the Ricci relation at W = 0: returns the max
// relative deviation of -dd^bar log det G from -(n+1) G(0).
inline double ricci_check_at_zero(int n, double h = 1e-3) {
  if (n < 1 || n > 4) throw ValidationError("ricci check supports 1 <= n <= 4");
  if (!(h > 0 && h <= 1e-2)) throw ValidationError("ricci check: step must be in (0, 1e-2]");
  // independent coordinates (a <= b) with symmetric basis matrices
  std::vector<std::pair<int, int>> coords;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) coords.emplace_back(a, b);
  int nc = static_cast<int>(coords.size());
  auto basis = [&](int k) {
    CMat e = CMat::Zero(n, n);
    auto [a, b] = coords[k];
    e(a, b) = 1;
    e(b, a) = 1;
    if (a == b) e(a, b) = 1;
    return e;
  };
  auto metric_logdet = [&](const CMat& w) {
    CMat g(nc, nc);
    for (int i = 0; i < nc; ++i)
      for (int j = 0; j < nc; ++j) g(i, j) = levi_pairing(w, basis(i), basis(j));
    Eigen::FullPivLU<CMat> lu((g + g.adjoint()) / 2.0);
    return std::log(std::abs(lu.determinant()));
  };
  // phi displaced along real coordinate directions: 2 nc of them
  auto displace = [&](int dir, double step) {
    int k = dir / 2;
    CMat w = CMat::Zero(n, n);
    Complex unit = dir % 2 == 0 ? Complex(1, 0) : Complex(0, 1);
    w += step * unit * basis(k);
    return w;
  };
  int nd = 2 * nc;
  // mixed second derivatives of phi at 0
  Mat hess(nd, nd);
  double phi0 = metric_logdet(CMat::Zero(n, n));
  std::vector<double> plus(nd), minus(nd);
  for (int i = 0; i < nd; ++i) {
    plus[i] = metric_logdet(displace(i, h));
    minus[i] = metric_logdet(displace(i, -h));
  }
  for (int i = 0; i < nd; ++i)
    for (int j = 0; j < nd; ++j) {
      if (i == j) {
        hess(i, i) = (plus[i] - 2 * phi0 + minus[i]) / (h * h);
      } else {
        CMat wpp = displace(i, h) + displace(j, h);
        CMat wpm = displace(i, h) + displace(j, -h);
        CMat wmp = displace(i, -h) + displace(j, h);
        CMat wmm = displace(i, -h) + displace(j, -h);
        hess(i, j) = (metric_logdet(wpp) - metric_logdet(wpm) - metric_logdet(wmp) +
                      metric_logdet(wmm)) /
                     (4 * h * h);
      }
    }
  // Ricci_{k lbar} = -d_k d_lbar phi; d_k = (d_x - i d_y)/2, d_lbar = (d_x + i d_y)/2
  double worst = 0.0;
  for (int k = 0; k < nc; ++k)
    for (int l = 0; l < nc; ++l) {
      Complex dd = 0.25 * Complex(hess(2 * k, 2 * l) + hess(2 * k + 1, 2 * l + 1),
                                  hess(2 * k, 2 * l + 1) - hess(2 * k + 1, 2 * l));
      Complex ricci = -dd;
      // G(0)_{kl} = Tr(basis(l)^bar basis(k)): 2 off-diagonal, 1 diagonal
      Complex g0 = (basis(l).conjugate() * basis(k)).trace();
      Complex expected = -(n + 1.0) * g0;
      double scale = std::abs(Complex(n + 1.0)) * std::max(1.0, std::abs(g0));
      worst = std::max(worst, std::abs(ricci - expected) / scale);
    }
  return worst;
}

// ---------------------------------------------------------------------------
// Geodesics.

// Real symplectic element carrying 0 to p (interior).
inline Mat translation_to(const CMat& p) {
  int n = static_cast<int>(p.rows());
  auto tk = takagi_factor(p);
  if (tk.s.maxCoeff() >= 1.0 - 1e-14)
    throw ValidationError("translation_to: point is not interior");
  CMat c = CMat::Zero(n, n), s = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double ci = 1.0 / std::sqrt(1.0 - tk.s(i) * tk.s(i));
    c(i, i) = ci;
    s(i, i) = tk.s(i) * ci;
  }
  MoebiusBlocks b{tk.u * c, tk.u * s};
  return b.to_symplectic();
}

// Geodesic from p toward q. Interior endpoints use the affine parameter
// gamma(0) = p, gamma(1) = q; ideal endpoints are truncated at arclength
// parameter `trunc` along each Takagi axis.
class GeodesicSegment {
 public:
  GeodesicSegment(const CMat& p, const CMat& q, double trunc = 13.0) {
    int n = static_cast<int>(p.rows());
    double mp = interior_margin(p), mq = interior_margin(q);
    if (mp < 1e-12 && mq < 1e-12)
      throw ValidationError("geodesic: both endpoints ideal; use the triangle limit path");
    reversed_ = mp < 1e-12;
    const CMat& base = reversed_ ? q : p;
    const CMat& tip = reversed_ ? p : q;
    g_ = translation_to(base);
    blocks_ = MoebiusBlocks::from_symplectic(g_);
    Mat ginv = g_.inverse();
    CMat qp = MoebiusBlocks::from_symplectic(ginv).apply(tip);
    auto tk = takagi_factor(qp);
    v_ = tk.u;
    r_.resize(n);
    for (int i = 0; i < n; ++i) {
      double s = std::min(tk.s(i), std::tanh(trunc));
      r_(i) = std::atanh(s);
    }
  }

  CMat eval(double t) const {
    double u = reversed_ ? 1.0 - t : t;
    int n = static_cast<int>(v_.rows());
    CMat d = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i) d(i, i) = std::tanh(u * r_(i));
    return blocks_.apply(symmetrize(v_ * d * v_.transpose()));
  }

  CMat velocity(double t) const {
    double u = reversed_ ? 1.0 - t : t;
    int n = static_cast<int>(v_.rows());
    CMat d = CMat::Zero(n, n), dd = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      d(i, i) = std::tanh(u * r_(i));
      double sech = 1.0 / std::cosh(u * r_(i));
      dd(i, i) = r_(i) * sech * sech;
    }
    CMat w = symmetrize(v_ * d * v_.transpose());
    CMat x = symmetrize(v_ * dd * v_.transpose());
    CMat out = blocks_.diff(w, x);
    return reversed_ ? CMat(-out) : out;
  }

 private:
  Mat g_;
  MoebiusBlocks blocks_;
  CMat v_;
  Vec r_;
  bool reversed_ = false;
};

inline CMat geodesic(const CMat& p, const CMat& q, double t, double trunc = 13.0) {
  return GeodesicSegment(p, q, trunc).eval(t);
}

// ---------------------------------------------------------------------------
// Triangle integrals of the Kaehler form.

namespace detail {

// Deterministic vertex order; returns permutation sign and sorted copies.
inline int canonical_triangle(std::array<CMat, 3>& v) {
  auto less = [](const CMat& a, const CMat& b) {
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) {
        if (a(i, j).real() != b(i, j).real()) return a(i, j).real() < b(i, j).real();
        if (a(i, j).imag() != b(i, j).imag()) return a(i, j).imag() < b(i, j).imag();
      }
    return false;
  };
  int sign = 1;
  auto swap_if = [&](int i, int j) {
    if (less(v[j], v[i])) {
      std::swap(v[i], v[j]);
      sign = -sign;
    }
  };
  swap_if(0, 1);
  swap_if(1, 2);
  swap_if(0, 1);
  return sign;
}

inline CMat truncate_ideal(const CMat& w, double trunc) {
  if (interior_margin(w) >= 1e-12) return w;
  auto tk = takagi_factor(w);
  int n = static_cast<int>(w.rows());
  CMat d = CMat::Zero(n, n);
  double cap = std::tanh(trunc);
  for (int i = 0; i < n; ++i) d(i, i) = std::min(tk.s(i), cap);
  return symmetrize(tk.u * d * tk.u.transpose());
}

}  // namespace detail

struct TriangleResult {
  double value = 0.0;
  double error = 0.0;
};

// Integral of the Kaehler form over the geodesic triangle with ordered
// vertices (x, y, z), computed as the single edge quadrature of alpha_x over
// the opposite edge (alpha_x vanishes on the two edges through x).
inline TriangleResult triangle_integral(const CMat& x, const CMat& y, const CMat& z,
                                        const SiegelOptions& opts = {}) {
  std::array<CMat, 3> v{x, y, z};
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (sup_norm(CMat(v[i] - v[j])) < 1e-12) return {0.0, 0.0};
  int sign = detail::canonical_triangle(v);
  const CMat& base = v[0];
  CMat e0 = detail::truncate_ideal(v[1], opts.ideal_truncation);
  CMat e1 = detail::truncate_ideal(v[2], opts.ideal_truncation);
  GeodesicSegment edge(e0, e1, opts.ideal_truncation);
  auto f = [&](double t) { return alpha_form(base, edge.eval(t), edge.velocity(t)); };
  QuadResult q = integrate(f, 0.0, 1.0, opts.quad_tol);
  return {sign * q.value, q.error};
}

// Independent 2D oracle over the ruled parametrization
// (s, t) -> geodesic(x, geodesic(y, z, t), s); interior vertices only.
inline TriangleResult triangle_integral_2d(const CMat& x, const CMat& y, const CMat& z,
                                           const SiegelOptions& opts = {}) {
  for (const CMat* w : {&x, &y, &z})
    if (interior_margin(*w) < 1e-12)
      throw ValidationError("triangle_integral_2d: vertices must be interior");
  std::array<CMat, 3> v{x, y, z};
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (sup_norm(CMat(v[i] - v[j])) < 1e-12) return {0.0, 0.0};
  GeodesicSegment base_edge(y, z, opts.ideal_truncation);
  double ht = 1e-5;
  auto outer = [&](double t) {
    GeodesicSegment ray(x, base_edge.eval(t), opts.ideal_truncation);
    GeodesicSegment ray_p(x, base_edge.eval(std::min(t + ht, 1.0)), opts.ideal_truncation);
    GeodesicSegment ray_m(x, base_edge.eval(std::max(t - ht, 0.0)), opts.ideal_truncation);
    double dt = std::min(t + ht, 1.0) - std::max(t - ht, 0.0);
    auto inner = [&](double s) {
      CMat w = ray.eval(s);
      CMat ds = ray.velocity(s);
      CMat dtv = (ray_p.eval(s) - ray_m.eval(s)) / dt;
      return kahler_form(w, ds, dtv);
    };
    return integrate(inner, 0.0, 1.0, opts.quad_tol * 10).value;
  };
  QuadResult q = integrate(outer, 0.0, 1.0, opts.quad_tol * 100);
  return {q.value, q.error};
}

// Bounded cocycle c(g0, g1, g2) = (1/2pi) * integral over the triangle of the
// orbit points.
inline double cocycle(const Mat& l0, const Mat& l1, const Mat& l2, const CMat& basepoint,
                      const SiegelOptions& opts = {}) {
  CMat p0 = act(l0, basepoint), p1 = act(l1, basepoint), p2 = act(l2, basepoint);
  return triangle_integral(p0, p1, p2, opts).value / (2 * M_PI);
}

// ---------------------------------------------------------------------------
// Fixed points of the action on the closed disk.

// Shilov point associated to a Lagrangian frame (2n x n).
inline CMat shilov_from_lagrangian(const Mat& frame) {
  int n = static_cast<int>(frame.cols());
  CMat xm = frame.topRows(n).cast<Complex>();
  CMat ym = frame.bottomRows(n).cast<Complex>();
  CMat w = (ym + Complex(0, 1) * xm) * (ym - Complex(0, 1) * xm).inverse();
  return symmetrize(w);
}

// Fixed point in the closed disk: interior for elliptic holonomies, Shilov
// for parabolic ones, ideal axis endpoint for hyperbolic when n = 1.
inline CMat fixed_point(const Mat& l) {
  int n = half_dim(l);
  auto cls = classify(l);
  switch (cls.label_summary) {
    case ClassLabel::Elliptic:
      return w_from_j(commuting_complex_structure(l));
    case ClassLabel::Parabolic: {
      Mat frame = invariant_lagrangian_parabolic(l, cls);
      return shilov_from_lagrangian(frame);
    }
    case ClassLabel::Hyperbolic: {
      if (n != 1)
        throw UnsupportedHolonomyError(
            "fixed_point: hyperbolic holonomy supported only for n = 1");
      Eigen::EigenSolver<Mat> es(l);
      int big = std::abs(es.eigenvalues()(0)) >= std::abs(es.eigenvalues()(1)) ? 0 : 1;
      Vec v = es.eigenvectors().col(big).real();
      Mat frame = v;
      return shilov_from_lagrangian(frame);
    }
    default:
      throw UnsupportedHolonomyError("fixed_point: mixed holonomy has no supported fixed point");
  }
}

}  // namespace sympsig
