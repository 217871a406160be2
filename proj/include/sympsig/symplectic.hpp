#pragma once

// Predicates, classification and logarithms for elements of Sp(2n, R).
//
// Elements are classified through the grouping of characteristic subspaces
// E_{lambda,R} = E cap (E_l + E_lbar + E_{1/l} + E_{1/lbar}); the parts are
// mutually Omega-orthogonal and carry the labels hyperbolic,
// elliptic-unipotent, unipotent-plus and unipotent-minus.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "sympsig/linalg.hpp"

namespace sympsig {

enum class PartLabel { Hyperbolic, EllipticUnipotent, UnipotentPlus, UnipotentMinus };
enum class ClassLabel { Hyperbolic, Elliptic, Parabolic, Mixed };

inline const char* to_string(PartLabel l) {
  switch (l) {
    case PartLabel::Hyperbolic: return "hyperbolic";
    case PartLabel::EllipticUnipotent: return "elliptic-unipotent";
    case PartLabel::UnipotentPlus: return "unipotent-plus";
    case PartLabel::UnipotentMinus: return "unipotent-minus";
  }
  return "?";
}

inline const char* to_string(ClassLabel l) {
  switch (l) {
    case ClassLabel::Hyperbolic: return "hyperbolic";
    case ClassLabel::Elliptic: return "elliptic";
    case ClassLabel::Parabolic: return "parabolic";
    case ClassLabel::Mixed: return "mixed";
  }
  return "?";
}

struct ClassificationPart {
  PartLabel label;
  Mat basis;  // 2n x dim, orthonormal columns spanning the part
  std::vector<Complex> eigenvalues;
};

struct ClassificationResult {
  std::vector<ClassificationPart> parts;
  ClassLabel label_summary = ClassLabel::Mixed;
  std::vector<Complex> eigenvalues;
  // Smallest kept / largest singular value in the subspace extraction; small
  // values signal a well-conditioned split.
  double condition_estimate = 0.0;

  int part_dim(PartLabel l) const {
    for (const auto& p : parts)
      if (p.label == l) return static_cast<int>(p.basis.cols());
    return 0;
  }
  bool is(ClassLabel l) const { return label_summary == l; }
};

namespace detail {

// Union-find over eigenvalue indices.
struct UnionFind {
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); }
  void unite(int i, int j) { parent[find(i)] = find(j); }
  std::vector<int> parent;
};

}  // namespace detail

// Classify L in Sp(2n, R). `tol` controls unit-circle membership; eigenvalues
// in the grey zone between tol and the 1e-6 resolution limit are refused.
inline ClassificationResult classify(const Mat& l_mat, double tol = 1e-8) {
  const int n = half_dim(l_mat);
  const int dim = 2 * n;
  if (!is_symplectic(l_mat, 1e-8)) throw ValidationError("classify: matrix is not symplectic");

  Eigen::EigenSolver<Mat> es(l_mat);
  std::vector<Complex> ev(dim);
  for (int i = 0; i < dim; ++i) ev[i] = es.eigenvalues()(i);
  double scale = 1.0;
  for (auto& e : ev) scale = std::max(scale, std::abs(e));

  const double merge_tol = std::max(tol, 1e-8);
  detail::UnionFind uf(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      bool equal = std::abs(ev[i] - ev[j]) <= 1e-6 * scale;
      bool conj = std::abs(ev[i] - std::conj(ev[j])) <= 1e-6 * scale;
      bool inverse = std::abs(ev[i] * ev[j] - 1.0) <= merge_tol * scale;
      if (equal || conj || inverse) uf.unite(i, j);
    }

  std::vector<std::vector<int>> groups;
  {
    std::vector<int> root_of(dim, -1);
    for (int i = 0; i < dim; ++i) {
      int r = uf.find(i);
      if (root_of[r] < 0) {
        root_of[r] = static_cast<int>(groups.size());
        groups.emplace_back();
      }
      groups[root_of[r]].push_back(i);
    }
  }

  // Defective clusters scatter computed eigenvalues by roughly the square
  // root of machine precision, so the circle/+-1 membership tests carry a
  // scatter allowance and a refusal band in between.
  const double pm_tol = 1e-5;      // distance to +-1 treated as a unipotent block
  const double circle_on = 3e-7;   // on the unit circle
  const double circle_off = 1e-5;  // safely off the unit circle
  ClassificationResult result;
  result.eigenvalues = ev;

  struct GroupInfo {
    PartLabel label;
    std::vector<int> members;
  };
  std::vector<GroupInfo> infos;

  for (const auto& g : groups) {
    bool near_plus = true, near_minus = true;
    for (int i : g) {
      if (std::abs(ev[i] - 1.0) > pm_tol) near_plus = false;
      if (std::abs(ev[i] + 1.0) > pm_tol) near_minus = false;
    }
    PartLabel label;
    if (near_plus || near_minus) {
      label = near_plus ? PartLabel::UnipotentPlus : PartLabel::UnipotentMinus;
    } else {
      bool all_on = true, all_off = true;
      for (int i : g) {
        double d = std::abs(std::abs(ev[i]) - 1.0);
        if (d > std::max(circle_on, tol)) all_on = false;
        if (d < circle_off) all_off = false;
      }
      if (all_on) {
        for (int i : g)
          if (std::min(std::abs(ev[i] - 1.0), std::abs(ev[i] + 1.0)) < pm_tol)
            throw AmbiguityError(
                "classify: group mixes +-1 and elliptic eigenvalues, cannot resolve");
        label = PartLabel::EllipticUnipotent;
      } else if (all_off) {
        label = PartLabel::Hyperbolic;
      } else {
        Complex bad = ev[g[0]];
        for (int i : g) {
          double d = std::abs(std::abs(ev[i]) - 1.0);
          if (d > std::max(circle_on, tol) && d < circle_off) bad = ev[i];
        }
        throw AmbiguityError("classify: eigenvalue " + std::to_string(bad.real()) + "+" +
                             std::to_string(bad.imag()) +
                             "i is too close to the unit circle to resolve");
      }
    }
    infos.push_back({label, g});
  }

  // A unipotent candidate that is not exactly +-identity on its subspace but
  // nearly so cannot be told apart from a tiny rotation; refuse the grey zone.
  // The subspace bases are computed below, so do the scalar test first using
  // the full matrix when the group spans everything.

  // Characteristic subspace of each group: kernel of the product of
  // (L - lambda)^m factors, conjugate pairs combined into real quadratics.
  auto group_basis = [&](const std::vector<int>& members) {
    struct Cluster {
      Complex lambda;
      int mult;
    };
    std::vector<Cluster> clusters;
    std::vector<int> left(members.begin(), members.end());
    while (!left.empty()) {
      Complex rep = ev[left[0]];
      std::vector<int> rest;
      Complex sum = 0.0;
      int m = 0;
      for (int i : left) {
        if (std::abs(ev[i] - rep) <= 1e-6 * scale) {
          sum += ev[i];
          ++m;
        } else {
          rest.push_back(i);
        }
      }
      clusters.push_back({sum / static_cast<double>(m), m});
      left = rest;
    }
    Mat q = Mat::Identity(dim, dim);
    std::vector<bool> used(clusters.size(), false);
    for (size_t a = 0; a < clusters.size(); ++a) {
      if (used[a]) continue;
      used[a] = true;
      Complex lam = clusters[a].lambda;
      if (std::abs(lam.imag()) <= 1e-7 * scale) {
        Mat f = l_mat - lam.real() * Mat::Identity(dim, dim);
        for (int k = 0; k < clusters[a].mult; ++k) {
          q = f * q;
          double s = sup_norm(q);
          if (s > 0) q /= s;
        }
      } else {
        // pair with the conjugate cluster
        for (size_t b = a + 1; b < clusters.size(); ++b) {
          if (!used[b] && std::abs(clusters[b].lambda - std::conj(lam)) <= 1e-6 * scale) {
            used[b] = true;
            break;
          }
        }
        Mat f = l_mat * l_mat - 2.0 * lam.real() * l_mat +
                std::norm(lam) * Mat::Identity(dim, dim);
        for (int k = 0; k < clusters[a].mult; ++k) {
          q = f * q;
          double s = sup_norm(q);
          if (s > 0) q /= s;
        }
      }
    }
    return q;
  };

  double worst_cond = 0.0;
  for (const auto& info : infos) {
    Mat q = group_basis(info.members);
    Eigen::JacobiSVD<Mat> svd(q, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int want = static_cast<int>(info.members.size());
    Mat basis = svd.matrixV().rightCols(want);
    double kept = sv(dim - want);
    double top = sv(0);
    if (top > 0) worst_cond = std::max(worst_cond, kept / top);

    ClassificationPart part;
    part.label = info.label;
    part.basis = basis;
    for (int i : info.members) part.eigenvalues.push_back(ev[i]);
    result.parts.push_back(std::move(part));
  }
  result.condition_estimate = worst_cond;

  // Grey-zone check for unipotent parts: the restriction must either be
  // essentially exactly +-I (mu = 0) or boundedly away from it.
  for (const auto& p : result.parts) {
    if (p.label != PartLabel::UnipotentPlus && p.label != PartLabel::UnipotentMinus) continue;
    double sgn = p.label == PartLabel::UnipotentPlus ? 1.0 : -1.0;
    Mat r = p.basis.transpose() * (l_mat - sgn * Mat::Identity(dim, dim)) * p.basis;
    double res = sup_norm(r);
    if (res > 1e-9 && res < 1e-5)
      throw AmbiguityError(
          "classify: near-identity block cannot be resolved between tiny rotation and "
          "unipotent shear");
  }

  // Merge groups sharing a label into the four-part decomposition.
  std::vector<ClassificationPart> merged;
  for (PartLabel l : {PartLabel::Hyperbolic, PartLabel::EllipticUnipotent,
                      PartLabel::UnipotentPlus, PartLabel::UnipotentMinus}) {
    ClassificationPart acc;
    acc.label = l;
    int cols = 0;
    for (const auto& p : result.parts)
      if (p.label == l) cols += static_cast<int>(p.basis.cols());
    if (cols == 0) continue;
    acc.basis.resize(dim, cols);
    int at = 0;
    for (const auto& p : result.parts) {
      if (p.label != l) continue;
      acc.basis.middleCols(at, p.basis.cols()) = p.basis;
      at += static_cast<int>(p.basis.cols());
      acc.eigenvalues.insert(acc.eigenvalues.end(), p.eigenvalues.begin(), p.eigenvalues.end());
    }
    Eigen::HouseholderQR<Mat> qr(acc.basis);
    acc.basis = Mat(qr.householderQ()).leftCols(cols);
    merged.push_back(std::move(acc));
  }
  result.parts = std::move(merged);

  int dh = result.part_dim(PartLabel::Hyperbolic);
  int de = result.part_dim(PartLabel::EllipticUnipotent);
  int dp = result.part_dim(PartLabel::UnipotentPlus);
  int dm = result.part_dim(PartLabel::UnipotentMinus);
  if (dh == dim)
    result.label_summary = ClassLabel::Hyperbolic;
  else if (de == dim)
    result.label_summary = ClassLabel::Elliptic;
  else if (dp + dm == dim)
    result.label_summary = ClassLabel::Parabolic;
  else
    result.label_summary = ClassLabel::Mixed;
  return result;
}

// Symplectic basis adapted to a compatible complex structure: returns S with
// S^T Omega S = Omega and S^{-1} J S = standard_j.
inline Mat symplectic_basis_adapted(const Mat& j) {
  int n = half_dim(j);
  int dim = 2 * n;
  Mat omega = standard_omega(n);
  Mat g = omega * j;
  g = (g + g.transpose()) / 2.0;  // SPD metric

  std::vector<Vec> es, fs;
  for (int k = 0; k < n; ++k) {
    // best standard basis vector after symplectic Gram-Schmidt
    Vec best;
    double best_norm = -1.0;
    for (int c = 0; c < dim; ++c) {
      Vec v = Vec::Unit(dim, c);
      for (int i = 0; i < k; ++i) {
        double a = v.dot(omega * fs[i]);
        double b = v.dot(omega * es[i]);
        v -= a * es[i];
        v += b * fs[i];
      }
      double nrm = v.norm();
      if (nrm > best_norm) {
        best_norm = nrm;
        best = v;
      }
    }
    double len = std::sqrt(best.dot(g * best));
    if (!(len > 0)) throw CompatibilityError("adapted basis: degenerate metric direction");
    Vec e = best / len;
    Vec f = j * e;
    es.push_back(e);
    fs.push_back(f);
  }
  Mat s(dim, dim);
  for (int i = 0; i < n; ++i) {
    s.col(i) = es[i];
    s.col(n + i) = fs[i];
  }
  return s;
}

// Compatible complex structure commuting with an elliptic L, built from the
// eigenbasis with signs fixed by positivity of -i Omega(v, vbar).
inline Mat commuting_complex_structure(const Mat& l_mat, double tol = 1e-8) {
  int n = half_dim(l_mat);
  int dim = 2 * n;
  auto cls = classify(l_mat, tol);
  if (!cls.is(ClassLabel::Elliptic))
    throw ClassificationError("commuting_complex_structure: input is not elliptic");

  Mat omega = standard_omega(n);
  CMat omega_c = omega.cast<Complex>();
  CMat lc = l_mat.cast<Complex>();

  Eigen::ComplexEigenSolver<CMat> es(lc);
  std::vector<Complex> ev(dim);
  for (int i = 0; i < dim; ++i) ev[i] = es.eigenvalues()(i);

  // cluster eigenvalues with positive imaginary part
  std::vector<bool> used(dim, false);
  std::vector<CVec> plus_vectors;
  for (int i = 0; i < dim; ++i) {
    if (used[i] || ev[i].imag() <= 0) continue;
    std::vector<int> cluster;
    for (int j = 0; j < dim; ++j)
      if (!used[j] && std::abs(ev[j] - ev[i]) <= 1e-7 * std::max(1.0, std::abs(ev[i])))
        cluster.push_back(j);
    for (int j : cluster) used[j] = true;
    int m = static_cast<int>(cluster.size());

    // eigenvectors via the kernel of (L - lambda I); semisimplicity required
    CMat shifted = lc - ev[i] * CMat::Identity(dim, dim);
    Eigen::JacobiSVD<CMat> svd(shifted, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int null_dim = 0;
    for (int k = 0; k < sv.size(); ++k)
      if (sv(k) <= 1e-7 * std::max(1.0, sv(0))) ++null_dim;
    if (null_dim < m)
      throw ClassificationError(
          "commuting_complex_structure: elliptic part is not semisimple");
    CMat vbasis = svd.matrixV().rightCols(m);

    // Hermitian Gram of s(u, v) = -i u^T Omega conj(v)
    CMat gram = Complex(0, -1) * (vbasis.transpose() * omega_c * vbasis.conjugate());
    gram = (gram + gram.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMat> ges(gram);
    for (int k = 0; k < m; ++k) {
      CVec w = vbasis * ges.eigenvectors().col(k);
      if (ges.eigenvalues()(k) > 0)
        plus_vectors.push_back(w);
      else
        plus_vectors.push_back(w.conjugate());
    }
  }
  if (static_cast<int>(plus_vectors.size()) != n)
    throw ClassificationError("commuting_complex_structure: eigenbasis count mismatch");

  CMat t(dim, dim);
  for (int k = 0; k < n; ++k) {
    t.col(k) = plus_vectors[k];
    t.col(n + k) = plus_vectors[k].conjugate();
  }
  CMat d = CMat::Zero(dim, dim);
  for (int k = 0; k < n; ++k) {
    d(k, k) = Complex(0, 1);
    d(n + k, n + k) = Complex(0, -1);
  }
  Mat j = (t * d * t.inverse()).real();

  // Newton polish toward J^2 = -I.
  for (int it = 0; it < 2; ++it) j = (j - j.inverse()) / 2.0;
  return j;
}

struct BoundaryLog {
  Mat b;         // Lie algebra element with eps * exp(2 pi B) = L
  int sign = 1;  // eps
  // canonical parameters for n = 1 normal forms
  std::optional<double> lambda;  // hyperbolic / parabolic eigenvalue
  std::optional<double> theta;   // elliptic rotation angle in (0, 2pi)
  std::optional<double> mu;      // parabolic shear
  std::vector<double> angles;    // elliptic angles theta_j in [0, 2pi)
};

// Principal logarithm of an elliptic element: L = exp(2 pi B) with the
// eigenvalues theta_j / 2pi of -iB in [0, 1).
inline BoundaryLog principal_log_elliptic(const Mat& l_mat) {
  int n = half_dim(l_mat);
  BoundaryLog out;
  if (sup_norm(l_mat - Mat::Identity(2 * n, 2 * n)) <= 1e-9) {
    out.b = Mat::Zero(2 * n, 2 * n);
    out.sign = 1;
    out.angles.assign(n, 0.0);
    return out;
  }
  Mat j = commuting_complex_structure(l_mat);
  Mat s = symplectic_basis_adapted(j);
  Mat s_inv = s.inverse();
  Mat m = s_inv * l_mat * s;
  Mat jstd = standard_j(n);
  m = (m - jstd * m * jstd) / 2.0;  // project onto the commutant of J_std

  CMat u = unitary_extract(m);
  Eigen::ComplexSchur<CMat> schur(u);
  CMat q = schur.matrixU();
  std::vector<double> thetas(n);
  CMat bc = CMat::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    Complex lam = schur.matrixT()(k, k);
    double th = std::atan2(lam.imag(), lam.real());
    if (th < 0) th += 2 * M_PI;
    thetas[k] = th;
    bc(k, k) = Complex(0, th / (2 * M_PI));
  }
  CMat blog = q * bc * q.adjoint();
  Mat breal(2 * n, 2 * n);
  breal.topLeftCorner(n, n) = blog.real();
  breal.topRightCorner(n, n) = -blog.imag();
  breal.bottomLeftCorner(n, n) = blog.imag();
  breal.bottomRightCorner(n, n) = blog.real();
  out.b = s * breal * s_inv;
  out.sign = 1;
  std::sort(thetas.begin(), thetas.end());
  out.angles = thetas;
  if (n == 1) out.theta = thetas[0];
  return out;
}

// Logarithm of a unipotent matrix by the (finite) series.
inline Mat unipotent_log(const Mat& m) {
  int dim = static_cast<int>(m.rows());
  Mat n_part = m - Mat::Identity(dim, dim);
  Mat power = n_part;
  Mat acc = Mat::Zero(dim, dim);
  for (int k = 1; k <= dim; ++k) {
    acc += (k % 2 == 1 ? 1.0 : -1.0) / k * power;
    power = power * n_part;
    if (sup_norm(power) < 1e-300) break;
  }
  return acc;
}

// Logarithm data for a parabolic element of any rank: eps exp(2 pi B) = L
// with B nilpotent. Mixed +-1 spectra admit no single sign and are refused.
inline BoundaryLog boundary_log_parabolic(const Mat& l_mat, const ClassificationResult& cls) {
  int n = half_dim(l_mat);
  int dp = cls.part_dim(PartLabel::UnipotentPlus);
  int dm = cls.part_dim(PartLabel::UnipotentMinus);
  if (dp + dm != 2 * n)
    throw ClassificationError("boundary_log_parabolic: input is not parabolic");
  if (dp > 0 && dm > 0)
    throw UnsupportedHolonomyError(
        "parabolic holonomy with both +1 and -1 eigenvalues has no global L = eps exp(2 pi B)");
  BoundaryLog out;
  out.sign = dp > 0 ? 1 : -1;
  out.b = unipotent_log(out.sign * l_mat) / (2 * M_PI);
  return out;
}

// Canonical (B, eps) for any element of SL(2, R) = Sp(2, R), following the
// three normal forms. Parabolic elements are canonicalized by a rotation so
// that mu is read off the conjugated (1,2) entry.
inline BoundaryLog boundary_log_sl2(const Mat& l_mat) {
  if (l_mat.rows() != 2 || l_mat.cols() != 2)
    throw DimensionError("boundary_log_sl2: expects a 2x2 matrix");
  if (!is_symplectic(l_mat, 1e-8))
    throw ValidationError("boundary_log_sl2: matrix is not in SL(2, R)");
  double t = l_mat.trace();
  BoundaryLog out;

  if (std::abs(std::abs(t) - 2.0) <= 1e-9) {
    // parabolic
    double lam = t > 0 ? 1.0 : -1.0;
    Mat shifted = l_mat - lam * Mat::Identity(2, 2);
    if (sup_norm(shifted) <= 1e-12) {
      out.b = Mat::Zero(2, 2);
      out.sign = static_cast<int>(lam);
      out.lambda = lam;
      out.mu = 0.0;
      return out;
    }
    Mat ker = kernel_basis(shifted, 1e-7);
    if (ker.cols() != 1)
      throw ClassificationError("boundary_log_sl2: parabolic eigenvector extraction failed");
    Vec v = ker.col(0);
    if (std::abs(v(0)) + std::abs(v(1)) == 0)
      throw ClassificationError("boundary_log_sl2: null eigenvector");
    if ((std::abs(v(0)) >= std::abs(v(1)) ? v(0) : v(1)) < 0) v = -v;
    Mat g(2, 2);
    g << v(0), -v(1), v(1), v(0);  // rotation
    Mat upper = g.transpose() * l_mat * g;
    double mu = upper(0, 1);
    Mat b0 = Mat::Zero(2, 2);
    b0(0, 1) = mu / (2 * M_PI * lam);
    out.b = g * b0 * g.transpose();
    out.sign = static_cast<int>(lam);
    out.lambda = lam;
    out.mu = mu;
    return out;
  }
  if (std::abs(t) < 2.0) {
    if (std::abs(t) > 2.0 - 1e-7)
      throw AmbiguityError("boundary_log_sl2: trace too close to +-2 to classify");
    // elliptic: L = cos(theta) I + sin(theta) K with K^2 = -I
    double c = t / 2.0;
    double s_abs = std::sqrt(1.0 - c * c);
    double s = l_mat(1, 0) >= 0 ? s_abs : -s_abs;
    double theta = std::atan2(s, c);
    if (theta < 0) theta += 2 * M_PI;
    Mat k = (l_mat - c * Mat::Identity(2, 2)) / s;
    out.b = theta / (2 * M_PI) * k;
    out.sign = 1;
    out.theta = theta;
    out.angles = {theta};
    return out;
  }
  if (std::abs(t) < 2.0 + 1e-7)
    throw AmbiguityError("boundary_log_sl2: trace too close to +-2 to classify");
  // hyperbolic
  Eigen::EigenSolver<Mat> es(l_mat);
  double l0 = es.eigenvalues()(0).real();
  double l1 = es.eigenvalues()(1).real();
  int big = std::abs(l0) >= std::abs(l1) ? 0 : 1;
  double lam = big == 0 ? l0 : l1;
  Vec v1 = es.eigenvectors().col(big).real();
  Vec v2 = es.eigenvectors().col(1 - big).real();
  Mat g(2, 2);
  g.col(0) = v1;
  g.col(1) = v2;
  double det = g.determinant();
  g /= std::sqrt(std::abs(det));
  if (det < 0) g.col(1) = -g.col(1);
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = std::log(std::abs(lam)) / (2 * M_PI);
  d(1, 1) = -d(0, 0);
  out.b = g * d * g.inverse();
  out.sign = lam > 0 ? 1 : -1;
  out.lambda = lam;
  return out;
}

// Basis (2n x n) of an L-invariant Lagrangian subspace for parabolic L.
namespace detail {

// Invariant Lagrangian for a nilpotent x in sp(V, omega), by the classical
// reduction: pick v in im(x^d) cap ker(x), quotient v^perp by v, recurse.
inline Mat nilpotent_invariant_lagrangian(const Mat& omega, const Mat& x) {
  int dim = static_cast<int>(omega.rows());
  if (dim == 0) return Mat::Zero(0, 0);
  int m = dim / 2;

  // highest nonvanishing power of x
  Mat power = Mat::Identity(dim, dim);
  Mat best = power;
  double xnorm = std::max(sup_norm(x), 1e-30);
  for (int d = 1; d <= dim; ++d) {
    power = x * power;
    if (sup_norm(power) <= 1e-10 * std::pow(xnorm, d)) break;
    best = power;
  }
  int col = 0;
  best.colwise().norm().maxCoeff(&col);
  Vec v = best.col(col).normalized();

  if (m == 1) return v;

  // v^perp_omega modulo v
  Eigen::RowVectorXd a = v.transpose() * omega;
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  Mat nullsp = svd.matrixV().rightCols(dim - 1);  // contains v
  Mat proj = nullsp - v * (v.transpose() * nullsp);
  Eigen::HouseholderQR<Mat> qr(proj);
  Mat qfull = qr.householderQ();
  Mat r = qr.matrixQR().topRows(std::min<int>(dim, dim - 1)).triangularView<Eigen::Upper>();
  // keep the first dim-2 well-defined directions
  std::vector<int> keep;
  for (int i = 0; i < dim - 1 && static_cast<int>(keep.size()) < dim - 2; ++i)
    if (std::abs(r(i, i)) > 1e-10) keep.push_back(i);
  if (static_cast<int>(keep.size()) != dim - 2)
    throw InconsistencyError("invariant lagrangian: complement extraction failed");
  Mat c(dim, dim - 2);
  for (size_t i = 0; i < keep.size(); ++i) c.col(static_cast<int>(i)) = qfull.col(keep[i]);

  Mat omega_r = c.transpose() * omega * c;
  omega_r = (omega_r - omega_r.transpose()) / 2.0;
  // coordinates of x C in the basis [C, v], dropping the v component
  Mat basis(dim, dim - 1);
  basis.leftCols(dim - 2) = c;
  basis.col(dim - 2) = v;
  Mat coords = basis.colPivHouseholderQr().solve(x * c);
  Mat x_r = coords.topRows(dim - 2);

  Mat sub = nilpotent_invariant_lagrangian(omega_r, x_r);
  Mat out(dim, m);
  out.col(0) = v;
  out.rightCols(m - 1) = c * sub;
  return out;
}

}  // namespace detail

inline Mat invariant_lagrangian_parabolic(const Mat& l_mat, const ClassificationResult& cls) {
  int n = half_dim(l_mat);
  std::vector<Mat> frames;
  for (const auto& part : cls.parts) {
    if (part.label != PartLabel::UnipotentPlus && part.label != PartLabel::UnipotentMinus)
      throw ClassificationError("invariant_lagrangian_parabolic: non-parabolic part present");
    double sgn = part.label == PartLabel::UnipotentPlus ? 1.0 : -1.0;
    const Mat& c = part.basis;
    Mat m = c.transpose() * (sgn * l_mat) * c;
    Mat x = unipotent_log(m);
    Mat omega_r = c.transpose() * standard_omega(n) * c;
    omega_r = (omega_r - omega_r.transpose()) / 2.0;
    Mat g = detail::nilpotent_invariant_lagrangian(omega_r, x);
    frames.push_back(c * g);
  }
  int total = 0;
  for (const auto& f : frames) total += static_cast<int>(f.cols());
  if (total != n) throw InconsistencyError("invariant lagrangian: dimension mismatch");
  Mat out(2 * n, n);
  int at = 0;
  for (const auto& f : frames) {
    out.middleCols(at, f.cols()) = f;
    at += static_cast<int>(f.cols());
  }
  return out;
}

}  // namespace sympsig
