#include <lgfib/fibration.hpp>

#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace lgfib;
using oracle::pi;

namespace {

SphereAngles<double> sphere(int n, std::initializer_list<double> values) {
  Eigen::VectorXd t(Eigen::Index(values.size()));
  Eigen::Index i = 0;
  for (double v : values) t[i++] = v;
  return SphereAngles<double>(n, t);
}

void expect_near(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  EXPECT_LE((a - b).cwiseAbs().maxCoeff(), tol) << a.transpose() << "\nvs\n" << b.transpose();
}

void expect_same_rotor(const RotorAngles<double>& got, const Eigen::VectorXd& want, double tol) {
  ASSERT_EQ(got.order(), int(want.size()));
  EXPECT_LE(oracle::angle_gap(got.angle(1), want[0]), tol);
  for (int k = 2; k <= got.order(); ++k) EXPECT_NEAR(got.angle(k), want[k - 1], tol) << "k=" << k;
}

}  // namespace

// ---------------------------------------------------------------------------
// contract

TEST(Contract, OrderTwoTakesTheSecondAngle) {
  const auto r = contract(sphere(2, {0.3, 1.2, 0.7}));
  EXPECT_EQ(r.theta(), Eigen::Vector2d(1.2, 0.7));
}

TEST(Contract, ClosedTopWrapsOntoTheFullCircle) {
  const auto r = contract(sphere(2, {0.3, 1.2, pi}));
  EXPECT_DOUBLE_EQ(r.angle(1), 1.2 + pi);
  EXPECT_EQ(r.angle(2), 0.0);

  const auto w = contract(sphere(2, {0.3, 5.0, pi}));
  EXPECT_NEAR(w.angle(1), 5.0 + pi - 2 * pi, 1e-15);
}

TEST(Contract, OrderThreeColumns) {
  const auto r = contract(sphere(3, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7}));
  EXPECT_EQ(r.theta(), Eigen::Vector3d(0.5, 0.3, 0.7));
}

TEST(Contract, GroupedEmbeddingIsTheRotor) {
  oracle::Gen gen(31);
  for (int n = 1; n <= 8; ++n) {
    for (int i = 0; i < 50; ++i) {
      Eigen::VectorXd t(sphere_angle_count(n));
      const auto& domains = sphere_domains(n);
      for (Eigen::Index j = 0; j < t.size(); ++j) {
        t[j] = domains[std::size_t(j)] == AngleDomain::kFullCircle ? gen.uniform(0, 2 * pi)
                                                                   : gen.uniform(0, pi);
      }
      if (i % 5 == 0) t[t.size() - 1] = pi;
      const SphereAngles<double> s(n, t);
      const Eigen::VectorXd grouped = embed_polyspherical(n, contracted_sphere_angles(s));
      expect_near(grouped, oracle::rotor(contract(s).theta()), 1e-12);
    }
  }
}

// ---------------------------------------------------------------------------
// project

TEST(Project, Examples) {
  expect_near(project(RotorAngles<double>{0.0, 0.0}).coords(), Eigen::Vector3d(1, 0, 0), 0);
  expect_near(project(RotorAngles<double>{1.0, pi / 2}).coords(), Eigen::Vector3d(0, 0, 1), 1e-16);
  expect_near(project(RotorAngles<double>{4.0, pi / 2}).coords(), Eigen::Vector3d(0, 0, -1), 1e-15);
  expect_near(project(RotorAngles<double>{pi / 3, pi / 4}).coords(),
              Eigen::Vector3d(0.3535533905932738, 0.6123724356957946, 0.7071067811865476), 1e-15);
  expect_near(project(RotorAngles<double>{4 * pi / 3, pi / 4}).coords(),
              Eigen::Vector3d(-0.3535533905932738, -0.6123724356957946, -0.7071067811865476), 1e-15);
}

TEST(Project, MatchesFloorSignOracle) {
  oracle::Gen gen(32);
  for (int n = 1; n <= 10; ++n) {
    for (int i = 0; i < 200; ++i) {
      const Eigen::VectorXd t = gen.rotor(n);
      expect_near(project(RotorAngles<double>(t)).coords(), oracle::project(t), 1e-15);
    }
  }
}

TEST(Project, UnitNorm) {
  oracle::Gen gen(33);
  for (int n = 2; n <= 10; ++n) {
    for (int i = 0; i < 1000; ++i) {
      EXPECT_NEAR(project(RotorAngles<double>(gen.rotor(n))).coords().norm(), 1.0, 1e-12);
    }
  }
}

TEST(Project, SignProductsReduceToTheLeadingHalfTurn) {
  oracle::Gen gen(34);
  for (int n = 2; n <= 10; ++n) {
    for (int i = 0; i < 500; ++i) {
      const RotorAngles<double> r(gen.rotor(n));
      expect_near(lg_projection(r.theta()), project_reduced(r), 1e-15);
    }
  }
}

TEST(ProjectedPoint, RejectsNonUnit) {
  EXPECT_THROW(ProjectedPoint<double>(Eigen::Vector3d(1, 1, 0)), NonUnitInput);
  EXPECT_NO_THROW(ProjectedPoint<double>(Eigen::Vector3d(0, 1, 0)));
}

// ---------------------------------------------------------------------------
// lg

TEST(Lg, OrderTwoClosedForm) {
  oracle::Gen gen(35);
  for (int i = 0; i < 200; ++i) {
    const double t1 = gen.uniform(0, pi), t2 = gen.uniform(0, 2 * pi), t3 = gen.uniform(0, pi);
    const Eigen::Vector3d expected(std::cos(t2) * std::cos(t3), std::sin(t2) * std::cos(t3),
                                   oracle::floor_sign(t2) * std::sin(t3));
    expect_near(lg(sphere(2, {t1, t2, t3})).coords(), expected, 1e-15);
  }
}

TEST(Lg, AllZero) {
  Eigen::VectorXd e0 = Eigen::VectorXd::Zero(5);
  e0[0] = 1;
  expect_near(lg(SphereAngles<double>(4, Eigen::VectorXd::Zero(15))).coords(), e0, 0);
}

TEST(Lg, AgreesWithTheTorusPath) {
  oracle::Gen gen(36);
  for (int i = 0; i < 200; ++i) {
    Eigen::VectorXd t(7);
    for (int j = 0; j < 7; ++j) t[j] = j == 4 ? gen.uniform(0, 2 * pi) : gen.uniform(0, pi);
    const SphereAngles<double> s(3, t);
    const auto r = contract(s);
    expect_near(lg(s).coords(), mu(torus_embed(r)).coords(), 1e-12);
  }
}

// ---------------------------------------------------------------------------
// kernel

TEST(KernelCheck, Examples) {
  const auto a = kernel_check(RotorAngles<double>{1.0, pi / 2});
  EXPECT_TRUE(a.is_kernel);
  EXPECT_EQ(a.offending_indices, std::vector<int>{2});

  const auto b = kernel_check(RotorAngles<double>{1.0, 0.7});
  EXPECT_FALSE(b.is_kernel);
  EXPECT_TRUE(b.offending_indices.empty());

  const auto c = kernel_check(RotorAngles<double>{1.0, pi / 2, pi / 2});
  EXPECT_EQ(c.offending_indices, (std::vector<int>{2, 3}));
}

TEST(KernelCheck, ToleranceBand) {
  EXPECT_TRUE(kernel_check(RotorAngles<double>{1.0, pi / 2 + 1e-12}).is_kernel);
  EXPECT_FALSE(kernel_check(RotorAngles<double>{1.0, pi / 2 + 1e-6}).is_kernel);
  EXPECT_TRUE(kernel_check(RotorAngles<double>{1.0, pi / 2 + 1e-6}, 1e-5).is_kernel);
  EXPECT_EQ(kernel_check(RotorAngles<double>{1.0, 0.2}, 1e-3).tolerance, 1e-3);
}

TEST(KernelCollapse, LeadingAnglesDoNotMoveTheImage) {
  oracle::Gen gen(37);
  for (int n = 2; n <= 8; ++n) {
    for (int k = 2; k <= n; ++k) {
      Eigen::VectorXd t = gen.rotor(n);
      t[k - 1] = pi / 2;
      const Eigen::VectorXd base = project(RotorAngles<double>(t)).coords();
      const double lo = t[0] < pi ? 0 : pi;
      for (int i = 0; i < 100; ++i) {
        t[0] = gen.uniform(lo, lo + pi);
        for (int m = 2; m < k; ++m) t[m - 1] = gen.uniform(0, pi);
        expect_near(project(RotorAngles<double>(t)).coords(), base, 1e-12);
      }
    }
  }
}

TEST(KernelCollapse, FiberSplitsAtTheHalfTurn) {
  oracle::Gen gen(38);
  for (int i = 0; i < 100; ++i) {
    const double upper = gen.uniform(0, pi), lower = gen.uniform(pi, 2 * pi);
    expect_near(project(RotorAngles<double>{upper, pi / 2}).coords(), Eigen::Vector3d(0, 0, 1), 1e-16);
    expect_near(project(RotorAngles<double>{lower, pi / 2}).coords(), Eigen::Vector3d(0, 0, -1), 1e-16);
  }
}

TEST(FiberClass, Examples) {
  const auto a = fiber_class(RotorAngles<double>{2.0, pi / 2});
  EXPECT_EQ(a.collapse_index, 2);
  EXPECT_EQ(a.free_indices, std::vector<int>{1});
  EXPECT_EQ(a.leading_half, 0);

  const auto b = fiber_class(RotorAngles<double>{2.0, 0.3});
  EXPECT_FALSE(b.collapse_index.has_value());
  EXPECT_TRUE(b.free_indices.empty());

  const auto c = fiber_class(RotorAngles<double>{4.0, 1.0, pi / 2});
  EXPECT_EQ(c.collapse_index, 3);
  EXPECT_EQ(c.free_indices, (std::vector<int>{1, 2}));
  EXPECT_EQ(c.leading_half, 1);
}

TEST(FiberClass, LargestCollapseIndexGovernsTheFreeSet) {
  const auto f = fiber_class(RotorAngles<double>{1.0, pi / 2, 0.4, pi / 2});
  EXPECT_EQ(f.collapse_index, 4);
  EXPECT_EQ(f.free_indices, (std::vector<int>{1, 2, 3}));
}

TEST(FiberClass, FreeAnglesLeaveTheImageFixed) {
  oracle::Gen gen(39);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd t = gen.rotor(3);
    t[2] = pi / 2;
    const RotorAngles<double> base(t);
    const auto f = fiber_class(base);
    ASSERT_EQ(f.free_indices, (std::vector<int>{1, 2}));
    for (int i = 0; i < 100; ++i) {
      Eigen::VectorXd u = t;
      u[0] = gen.uniform(0, pi) + f.leading_half * pi;
      u[1] = gen.uniform(0, pi);
      expect_near(project(RotorAngles<double>(u)).coords(), project(base).coords(), 1e-12);
    }
  }
}

// ---------------------------------------------------------------------------
// invert_projection

TEST(InvertProjection, Examples) {
  expect_same_rotor(invert_projection(Eigen::Vector3d(1, 0, 0)), Eigen::Vector2d(0, 0), 0);
  expect_same_rotor(invert_projection(Eigen::Vector3d(0.3535533905932738, 0.6123724356957946,
                                                      0.7071067811865476)),
                    Eigen::Vector2d(pi / 3, pi / 4), 1e-9);
  EXPECT_THROW(invert_projection(Eigen::Vector3d(0, 0, 1)), KernelAmbiguity);
}

TEST(InvertProjection, Errors) {
  EXPECT_THROW(invert_projection(Eigen::Vector3d(1, 1, 0)), NonUnitInput);
  try {
    invert_projection(Eigen::Vector4d(0, 0, 1, 0));
    FAIL() << "expected KernelAmbiguity";
  } catch (const KernelAmbiguity& e) {
    EXPECT_EQ(e.index(), 2);
  }
  try {
    invert_projection(Eigen::Vector4d(0, 0, 0, -1));
    FAIL() << "expected KernelAmbiguity";
  } catch (const KernelAmbiguity& e) {
    EXPECT_EQ(e.index(), 3);
  }
}

TEST(InvertProjection, RoundTripOffKernel) {
  oracle::Gen gen(40);
  for (int n = 2; n <= 10; ++n) {
    for (int i = 0; i < 2000; ++i) {
      const Eigen::VectorXd t = gen.rotor_off_kernel(n, 1e-6);
      expect_same_rotor(invert_projection(project(RotorAngles<double>(t))), t, 1e-9);
    }
  }
}

TEST(InvertProjection, ObtuseAnglesSurvive) {
  // cos θ_k < 0 for every k >= 2, in both halves of θ_1
  for (double t1 : {0.4, 2.9, 3.5, 6.0}) {
    const Eigen::Vector4d t(t1, 2.0, 2.5, 3.0);
    expect_same_rotor(invert_projection(project(RotorAngles<double>(t))), t, 1e-12);
  }
}

TEST(InvertProjection, VanishingTailComponents) {
  // e_2..e_n all zero: the leading half of θ_1 is read from e_0, e_1 alone.
  for (double t1 : {0.5, 2.0, 3.7, 5.5}) {
    const Eigen::Vector3d t(t1, 0.0, 0.0);
    expect_same_rotor(invert_projection(project(RotorAngles<double>(t))), t, 1e-15);
  }
  // θ_2 = 0 with θ_3 nonzero: only e_3 carries the sign.
  for (double t1 : {0.5, 3.7}) {
    const Eigen::Vector3d t(t1, 0.0, 2.2);
    expect_same_rotor(invert_projection(project(RotorAngles<double>(t))), t, 1e-12);
  }
}

TEST(InvertProjection, OrderOneIsTheCircle) {
  expect_same_rotor(invert_projection(Eigen::Vector2d(0, -1)), Eigen::VectorXd::Constant(1, 1.5 * pi),
                    1e-15);
}

// ---------------------------------------------------------------------------
// torus

TEST(TorusEmbed, Examples) {
  expect_near(torus_embed(RotorAngles<double>{0.0, 0.0}).coords(), Eigen::Vector3d(2, 0, 0), 0);
  expect_near(torus_embed(RotorAngles<double>{0.0, pi / 2}).coords(), Eigen::Vector3d(1, 0, 1), 1e-16);
  oracle::Gen gen(41);
  for (int i = 0; i < 200; ++i) {
    const double t1 = gen.uniform(0, 2 * pi), t2 = gen.uniform(0, pi), a = gen.uniform(1, 3);
    const Eigen::Vector3d expected(std::cos(t1) * (a + std::cos(t2)), std::sin(t1) * (a + std::cos(t2)),
                                   oracle::floor_sign(t1) * std::sin(t2));
    expect_near(torus_embed(RotorAngles<double>{t1, t2}, Eigen::VectorXd(Eigen::VectorXd::Constant(1, a))).coords(),
                expected, 1e-15);
  }
}

TEST(TorusEmbed, MatchesTermByTermOracle) {
  oracle::Gen gen(42);
  for (int n = 2; n <= 8; ++n) {
    for (int i = 0; i < 100; ++i) {
      const Eigen::VectorXd t = gen.rotor(n);
      Eigen::VectorXd radii(n - 1);
      for (int j = 0; j < n - 1; ++j) radii[j] = gen.uniform(1, 3);
      const Eigen::VectorXd expected = oracle::torus(t, radii);
      expect_near(torus_embed(RotorAngles<double>(t), radii).coords(), expected,
                  1e-14 * std::max(1.0, expected.cwiseAbs().maxCoeff()));
    }
  }
}

TEST(TorusEmbed, RejectsBadRadii) {
  EXPECT_THROW(torus_embed(RotorAngles<double>{0.0, 0.0}, Eigen::VectorXd(Eigen::VectorXd::Constant(1, 0.5))), DomainError);
  EXPECT_THROW(torus_embed(RotorAngles<double>{0.0, 0.0}, Eigen::VectorXd(Eigen::VectorXd::Constant(2, 1.0))), DomainError);
}

TEST(TorusInvert, Examples) {
  const Eigen::VectorXd one = Eigen::VectorXd::Ones(1);
  expect_same_rotor(torus_invert(TorusPoint<double>(Eigen::Vector3d(2, 0, 0), one)), Eigen::Vector2d(0, 0),
                    0);
  expect_same_rotor(torus_invert(TorusPoint<double>(Eigen::Vector3d(1, 0, 1), one)),
                    Eigen::Vector2d(0, pi / 2), 1e-15);
  EXPECT_THROW(torus_invert(TorusPoint<double>(Eigen::Vector3d(5, 0, 0), one)), OffSurface);
  EXPECT_THROW(torus_invert(TorusPoint<double>(Eigen::Vector3d(1.5, 0, 1), one)), OffSurface);
}

TEST(TorusInvert, RoundTripUnitRadii) {
  oracle::Gen gen(43);
  for (int n = 2; n <= 6; ++n) {
    for (int i = 0; i < 1000; ++i) {
      const Eigen::VectorXd t = gen.rotor(n);
      const auto back = torus_invert(torus_embed(RotorAngles<double>(t)));
      expect_same_rotor(back, t, 1e-9);
    }
  }
}

TEST(TorusInvert, RoundTripReproducesThePoint) {
  // For radii above 1 the surface can meet itself; the recovered angles must
  // still land on the same point.
  oracle::Gen gen(44);
  for (int n = 2; n <= 6; ++n) {
    for (int i = 0; i < 500; ++i) {
      const Eigen::VectorXd t = gen.rotor(n);
      Eigen::VectorXd radii(n - 1);
      for (int j = 0; j < n - 1; ++j) radii[j] = gen.uniform(1, 3);
      const TorusPoint<double> p = torus_embed(RotorAngles<double>(t), radii);
      const auto back = torus_invert(p);
      expect_near(torus_coordinates(back.theta(), radii), p.coords(), 1e-12);
    }
  }
}

TEST(TorusInvert, SelfIntersectionExists) {
  // a_2 = 2, a_3 = 1. Flipping cos θ_3 = 0.2 to -0.2 scales the outer ring by
  // 1.5, which (cos θ_2, sin θ_2) = (-0.75, √0.4375) -> (-0.125, 1.5 √0.4375) absorbs.
  const Eigen::Vector2d radii(2, 1);
  const Eigen::Vector3d first(0.3, std::acos(-0.75), std::acos(0.2));
  const Eigen::Vector3d second(0.3, std::acos(-0.125), std::acos(-0.2));
  const Eigen::VectorXd p = torus_coordinates(first, radii);
  expect_near(torus_coordinates(second, radii), p, 1e-15);

  const auto back = torus_invert(TorusPoint<double>(p, radii));
  expect_near(torus_coordinates(back.theta(), radii), p, 1e-12);
  const bool is_first = (back.theta() - Eigen::VectorXd(first)).cwiseAbs().maxCoeff() < 1e-9;
  const bool is_second = (back.theta() - Eigen::VectorXd(second)).cwiseAbs().maxCoeff() < 1e-9;
  EXPECT_TRUE(is_first || is_second);
}

TEST(Mu, Examples) {
  const Eigen::VectorXd one = Eigen::VectorXd::Ones(1);
  expect_near(mu(TorusPoint<double>(Eigen::Vector3d(2, 0, 0), one)).coords(), Eigen::Vector3d(1, 0, 0), 0);
  expect_near(mu(TorusPoint<double>(Eigen::Vector3d(1, 0, 1), one)).coords(), Eigen::Vector3d(0, 0, 1),
              1e-15);
}

TEST(Mu, DiagramCommutes) {
  oracle::Gen gen(45);
  for (int n = 2; n <= 6; ++n) {
    for (int i = 0; i < 1000; ++i) {
      const RotorAngles<double> r(gen.rotor(n));
      Eigen::VectorXd radii(n - 1);
      for (int j = 0; j < n - 1; ++j) radii[j] = gen.uniform(1, 3);
      expect_near(mu(torus_embed(r, radii)).coords(), project(r).coords(), 1e-12);
    }
  }
}
