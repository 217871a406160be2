#include <catch2/catch_amalgamated.hpp>

#include "sympsig/symplectic.hpp"

using namespace sympsig;

namespace {

Mat rotation2(double theta) {
  Mat r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

Mat diag2(double a, double b) {
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = a;
  d(1, 1) = b;
  return d;
}

Mat shear2(double lambda, double mu) {
  Mat p(2, 2);
  p << lambda, mu, 0, lambda;
  return p;
}

}  // namespace

TEST_CASE("is_symplectic basic examples") {
  CHECK(is_symplectic(standard_omega(1)));
  CHECK(is_symplectic(standard_omega(3)));
  CHECK(is_symplectic(Mat::Identity(4, 4)));
  CHECK_FALSE(is_symplectic(diag2(2, 2)));
  CHECK_THROWS_AS(is_symplectic(Mat::Identity(3, 3)), DimensionError);
}

TEST_CASE("random symplectic generation satisfies the predicate") {
  Rng rng(7);
  for (int n = 1; n <= 4; ++n) {
    for (int rep = 0; rep < 10; ++rep) {
      Mat b = random_sp_element(n, rng);
      CHECK(is_sp_lie_element(b));
      CHECK(is_symplectic(mat_exp(b), 1e-9));
    }
  }
}

TEST_CASE("classify normal forms, n = 1") {
  auto hyp = classify(diag2(2.0, 0.5));
  CHECK(hyp.label_summary == ClassLabel::Hyperbolic);
  CHECK(hyp.part_dim(PartLabel::Hyperbolic) == 2);

  auto ell = classify(rotation2(M_PI / 2));
  CHECK(ell.label_summary == ClassLabel::Elliptic);

  auto par = classify(shear2(1, 1));
  CHECK(par.label_summary == ClassLabel::Parabolic);
  CHECK(par.part_dim(PartLabel::UnipotentPlus) == 2);

  auto par_minus = classify(shear2(-1, 2));
  CHECK(par_minus.label_summary == ClassLabel::Parabolic);
  CHECK(par_minus.part_dim(PartLabel::UnipotentMinus) == 2);

  CHECK(classify(Mat::Identity(2, 2)).label_summary == ClassLabel::Parabolic);
  CHECK(classify(-Mat::Identity(2, 2)).label_summary == ClassLabel::Parabolic);
}

TEST_CASE("classify refuses the grey zone near the unit circle") {
  double eps = 3e-8;
  Mat l = diag2(1.0 + eps, 1.0 / (1.0 + eps));
  CHECK_THROWS_AS(classify(l), AmbiguityError);
}

TEST_CASE("classify parts: dimensions sum, Omega-orthogonality") {
  Rng rng(11);
  for (int n = 1; n <= 3; ++n) {
    Mat omega = standard_omega(n);
    for (int rep = 0; rep < 20; ++rep) {
      Mat l = random_symplectic(n, rng);
      auto cls = classify(l);
      int total = 0;
      for (const auto& p : cls.parts) total += static_cast<int>(p.basis.cols());
      CHECK(total == 2 * n);
      for (size_t i = 0; i < cls.parts.size(); ++i)
        for (size_t j = i + 1; j < cls.parts.size(); ++j) {
          Mat pairings = cls.parts[i].basis.transpose() * omega * cls.parts[j].basis;
          CHECK(sup_norm(pairings) < 1e-8);
        }
    }
  }
}

TEST_CASE("classify mixed example in Sp(4, R)") {
  Mat l = Mat::Zero(4, 4);
  // diag(2, R(pi/3) in the (q2, p2) plane, 1/2): blocks under Omega' pattern
  // built directly: L = diag blocks on coordinates (x1, x2, y1, y2)
  l(0, 0) = 2.0;
  l(2, 2) = 0.5;
  double c = std::cos(M_PI / 3), s = std::sin(M_PI / 3);
  l(1, 1) = c;
  l(1, 3) = -s;
  l(3, 1) = s;
  l(3, 3) = c;
  REQUIRE(is_symplectic(l, 1e-12));
  auto cls = classify(l);
  CHECK(cls.label_summary == ClassLabel::Mixed);
  CHECK(cls.part_dim(PartLabel::Hyperbolic) == 2);
  CHECK(cls.part_dim(PartLabel::EllipticUnipotent) == 2);
}

TEST_CASE("commuting_complex_structure on rotations") {
  Mat j2 = standard_j(1);
  for (double theta : {0.3, M_PI / 2, 2.5}) {
    Mat j = commuting_complex_structure(rotation2(theta));
    CHECK(sup_norm(j - j2) < 1e-9);
  }
}

TEST_CASE("commuting_complex_structure properties on random elliptic conjugates") {
  Rng rng(23);
  for (int n = 1; n <= 3; ++n) {
    Mat omega = standard_omega(n);
    for (int rep = 0; rep < 8; ++rep) {
      // conjugate of a unitary-embedded diagonal rotation
      std::uniform_real_distribution<double> ang(0.2, M_PI - 0.2);
      CMat u = CMat::Zero(n, n);
      for (int k = 0; k < n; ++k) u(k, k) = std::polar(1.0, ang(rng));
      Mat l0 = unitary_embed(u);
      Mat g = random_symplectic(n, rng);
      Mat l = g * l0 * g.inverse();
      Mat j = commuting_complex_structure(l);
      CHECK(sup_norm(j * j + Mat::Identity(2 * n, 2 * n)) < 1e-10);
      CHECK(sup_norm(l * j - j * l) < 1e-8);
      Mat m = omega * j;
      m = (m + m.transpose()) / 2.0;
      Eigen::SelfAdjointEigenSolver<Mat> es(m);
      CHECK(es.eigenvalues().minCoeff() > 0);
      // conjugation equivariance
      Mat j0 = commuting_complex_structure(l0);
      CHECK(sup_norm(g * j0 * g.inverse() - j) < 1e-6);
    }
  }
}

TEST_CASE("principal_log_elliptic matches the closed 2x2 form") {
  Mat b = principal_log_elliptic(rotation2(M_PI / 2)).b;
  Mat expected = 0.25 * standard_j(1);
  CHECK(sup_norm(b - expected) < 1e-12);

  auto idlog = principal_log_elliptic(Mat::Identity(2, 2));
  CHECK(sup_norm(idlog.b) == 0.0);
}

TEST_CASE("principal_log_elliptic block diagonal in U(2)") {
  double t1 = 0.7, t2 = 2.1;
  CMat u = CMat::Zero(2, 2);
  u(0, 0) = std::polar(1.0, t1);
  u(1, 1) = std::polar(1.0, t2);
  Mat l = unitary_embed(u);
  auto log = principal_log_elliptic(l);
  REQUIRE(log.angles.size() == 2);
  CHECK(log.angles[0] == Catch::Approx(t1).margin(1e-10));
  CHECK(log.angles[1] == Catch::Approx(t2).margin(1e-10));
  CHECK(sup_norm(mat_exp(2 * M_PI * log.b) - l) < 1e-9);
  CHECK(is_sp_lie_element(log.b, 1e-9));
}

TEST_CASE("principal_log_elliptic round trip on random elliptic elements") {
  Rng rng(37);
  for (int n = 1; n <= 3; ++n) {
    for (int rep = 0; rep < 6; ++rep) {
      std::uniform_real_distribution<double> ang(0.1, 2 * M_PI - 0.1);
      CMat u = CMat::Zero(n, n);
      for (int k = 0; k < n; ++k) {
        double a = ang(rng);
        if (std::abs(a - M_PI) < 0.05) a += 0.1;
        u(k, k) = std::polar(1.0, a);
      }
      Mat g = random_symplectic(n, rng);
      Mat l = g * unitary_embed(u) * g.inverse();
      auto log = principal_log_elliptic(l);
      CHECK(sup_norm(mat_exp(2 * M_PI * log.b) - l) < 1e-8);
      for (double th : log.angles) {
        CHECK(th >= 0.0);
        CHECK(th < 2 * M_PI);
      }
    }
  }
}

TEST_CASE("boundary_log_sl2 covers the three classes") {
  SECTION("hyperbolic, positive eigenvalue") {
    auto log = boundary_log_sl2(diag2(2.0, 0.5));
    CHECK(log.sign == 1);
    Mat expected = std::log(2.0) / (2 * M_PI) * diag2(1.0, -1.0);
    CHECK(sup_norm(log.b - expected) < 1e-12);
    CHECK(log.lambda.value() == Catch::Approx(2.0));
  }
  SECTION("parabolic normal form") {
    auto log = boundary_log_sl2(shear2(1, 3));
    CHECK(log.sign == 1);
    Mat expected = Mat::Zero(2, 2);
    expected(0, 1) = 3.0 / (2 * M_PI);
    CHECK(sup_norm(log.b - expected) < 1e-12);
    CHECK(log.lambda.value() == Catch::Approx(1.0));
    CHECK(log.mu.value() == Catch::Approx(3.0));
  }
  SECTION("minus identity") {
    auto log = boundary_log_sl2(-Mat::Identity(2, 2));
    CHECK(log.sign == -1);
    CHECK(sup_norm(log.b) == 0.0);
  }
  SECTION("elliptic angle and direction") {
    auto log = boundary_log_sl2(rotation2(2.0));
    CHECK(log.theta.value() == Catch::Approx(2.0));
    auto log2 = boundary_log_sl2(rotation2(-2.0));
    CHECK(log2.theta.value() == Catch::Approx(2 * M_PI - 2.0));
  }
}

TEST_CASE("boundary_log_sl2 round trip over random elements of each class") {
  Rng rng(101);
  std::uniform_real_distribution<double> lam(1.1, 5.0), ang(0.05, 2 * M_PI - 0.05),
      mu(-4.0, 4.0);
  int count = 1000;
  for (int i = 0; i < count; ++i) {
    Mat g = random_symplectic(1, rng);
    Mat core;
    switch (i % 6) {
      case 0: core = diag2(lam(rng), 1.0 / lam(rng)); core(1, 1) = 1.0 / core(0, 0); break;
      case 1: { double l0 = -lam(rng); core = diag2(l0, 1.0 / l0); break; }
      case 2: {
        double a = ang(rng);
        if (std::abs(a - M_PI) < 2e-2) a += 4e-2;
        core = rotation2(a);
        break;
      }
      case 3: core = shear2(1, mu(rng)); break;
      case 4: core = shear2(-1, mu(rng)); break;
      default: core = shear2(1, 0); break;
    }
    Mat l = g * core * g.inverse();
    auto log = boundary_log_sl2(l);
    Mat rebuilt = log.sign * mat_exp(2 * M_PI * log.b);
    CHECK(sup_norm(rebuilt - l) < 1e-9);
    CHECK(is_sp_lie_element(log.b, 1e-9));
  }
}

TEST_CASE("symplectic_basis_adapted maps J to the standard structure") {
  Rng rng(55);
  for (int n = 1; n <= 3; ++n) {
    Mat omega = standard_omega(n);
    for (int rep = 0; rep < 10; ++rep) {
      Mat g = random_symplectic(n, rng);
      Mat j = g * standard_j(n) * g.inverse();
      Mat s = symplectic_basis_adapted(j);
      CHECK(sup_norm(s.transpose() * omega * s - omega) < 1e-9);
      CHECK(sup_norm(s.inverse() * j * s - standard_j(n)) < 1e-9);
    }
  }
}

TEST_CASE("invariant Lagrangian of parabolic elements") {
  Rng rng(77);
  SECTION("n = 1 shear keeps the eigenline") {
    Mat l = shear2(1, 3);
    auto cls = classify(l);
    Mat f = invariant_lagrangian_parabolic(l, cls);
    REQUIRE(f.cols() == 1);
    CHECK(std::abs(f(1, 0)) < 1e-10);  // span of e1
  }
  SECTION("random conjugated parabolic in Sp(2) and Sp(4)") {
    for (int n = 1; n <= 2; ++n) {
      Mat omega = standard_omega(n);
      for (int rep = 0; rep < 10; ++rep) {
        // build a unipotent as exp of a nilpotent upper block
        Mat b = Mat::Zero(2 * n, 2 * n);
        std::uniform_real_distribution<double> d(-2.0, 2.0);
        for (int i = 0; i < n; ++i)
          for (int j = i; j < n; ++j) {
            b(i, n + j) = d(rng);
            b(j, n + i) = b(i, n + j);
          }
        double sgn = rep % 2 == 0 ? 1.0 : -1.0;
        Mat g = random_symplectic(n, rng);
        Mat l = g * (sgn * mat_exp(b)) * g.inverse();
        auto cls = classify(l);
        REQUIRE(cls.label_summary == ClassLabel::Parabolic);
        Mat f = invariant_lagrangian_parabolic(l, cls);
        REQUIRE(f.cols() == n);
        CHECK(sup_norm(f.transpose() * omega * f) < 1e-8);
        // invariance: L F stays in span(F)
        Mat lf = l * f;
        Mat resid = lf - f * (f.colPivHouseholderQr().solve(lf));
        CHECK(sup_norm(resid) < 1e-7);
      }
    }
  }
}

TEST_CASE("takagi factorization") {
  Rng rng(91);
  for (int n = 1; n <= 4; ++n) {
    for (int rep = 0; rep < 10; ++rep) {
      CMat w = random_complex_symmetric(n, rng, 0.7);
      auto t = takagi_factor(w);
      CHECK(sup_norm(CMat(t.u.adjoint() * t.u) - CMat(CMat::Identity(n, n))) < 1e-10);
      CMat rebuilt = t.u * t.s.asDiagonal() * t.u.transpose();
      CHECK(sup_norm(rebuilt - w) < 1e-9);
      for (int k = 0; k + 1 < n; ++k) CHECK(t.s(k) >= t.s(k + 1) - 1e-12);
    }
  }
  SECTION("degenerate singular values") {
    CMat w = CMat::Identity(3, 3) * Complex(0.3, 0.4);
    auto t = takagi_factor(w);
    CMat rebuilt = t.u * t.s.asDiagonal() * t.u.transpose();
    CHECK(sup_norm(rebuilt - w) < 1e-10);
  }
}
