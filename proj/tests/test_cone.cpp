#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "convexkit/cone.hpp"
#include "convexkit/errors.hpp"
#include "convexkit/random.hpp"
#include "oracles.hpp"

namespace convexkit {
namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

PolyhedralCone make(Index d, std::initializer_list<Vector> gens) { return PolyhedralCone(d, gens); }

const ToleranceProfile kTol{};

double threshold(const Vector& x) { return kTol.tol_mem * (1.0 + x.norm()); }

// A pointed cone: generators with positive first coordinate.
std::vector<Vector> pointed_generators(Rng& rng, Index d, int m) {
  std::vector<Vector> gens;
  for (int i = 0; i < m; ++i) {
    Vector g = rng.gaussian(d);
    g(0) = std::abs(g(0)) + 0.2;
    gens.push_back(g);
  }
  return gens;
}

TEST(ConeMember, OrthantExamples) {
  const auto c = make(2, {vec({1, 0}), vec({0, 1})});
  EXPECT_TRUE(cone_member(c, vec({2, 3})));
  EXPECT_FALSE(cone_member(c, vec({-1, 0})));
  EXPECT_TRUE(cone_member(c, vec({0, 0})));
}

TEST(ConeMember, EmptyConeContainsOnlyOrigin) {
  const PolyhedralCone c(3, {});
  EXPECT_TRUE(cone_member(c, Vector::Zero(3)));
  EXPECT_FALSE(cone_member(c, vec({0, 0, 1})));
}

TEST(ConeMember, ZeroGeneratorsAreDropped) {
  const auto c = make(2, {vec({0, 0}), vec({1, 0}), vec({1e-12, 0})});
  EXPECT_EQ(c.size(), 1u);
}

TEST(ConeMember, DimensionMismatchThrows) {
  const auto c = make(2, {vec({1, 0})});
  EXPECT_THROW(cone_member(c, vec({1, 0, 0})), DimensionMismatch);
  EXPECT_THROW(make(2, {vec({1, 0, 0})}), DimensionMismatch);
}

TEST(ConeMember, IterationLimitIsIndeterminate) {
  const auto c = make(3, {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})});
  ToleranceProfile tight;
  tight.max_iter = 1;
  EXPECT_THROW(cone_member(c, vec({1, 1, 1}), tight), IndeterminateError);
}

TEST(ConeMember, LatticeCombinationsAreMembers) {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const auto gens = oracles::random_generators(rng, 4, 2 + trial % 4, trial % 2 == 0);
    const PolyhedralCone c(4, gens);
    const auto lattice = oracles::lattice_combinations(gens, 2);
    for (const auto& p : lattice) ASSERT_TRUE(cone_member(c, p)) << "trial " << trial;
    // A random point is checked against the LP residual wherever the LP
    // answer is decisive.
    const Vector x = rng.gaussian(4);
    const double l1 = oracles::lp_cone_residual(gens, x);
    if (l1 <= 1e-10) {
      EXPECT_TRUE(cone_member(c, x));
    }
    if (l1 / 2.0 > 2.0 * threshold(x)) {
      EXPECT_FALSE(cone_member(c, x));
    }
  }
}

TEST(Lineality, BothSignsOfAxis) {
  const auto c = make(2, {vec({1, 0}), vec({-1, 0}), vec({0, 1})});
  const Subspace l = lineality_space(c);
  ASSERT_EQ(l.rank(), 1);
  EXPECT_NEAR(std::abs(l.basis_vector(0)(0)), 1.0, 1e-12);
}

TEST(Lineality, OrthantIsPointed) {
  EXPECT_EQ(lineality_space(make(2, {vec({1, 0}), vec({0, 1})})).rank(), 0);
}

TEST(Lineality, DiagonalFromLatticeOracle) {
  const std::vector<Vector> gens{vec({1, 1}), vec({-1, -1}), vec({1, 0})};
  const PolyhedralCone c(2, gens);
  const Subspace l = lineality_space(c);
  ASSERT_EQ(l.rank(), 1);
  const Vector diag = vec({1, 1}) / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(l.basis_vector(0).dot(diag)), 1.0, 1e-12);
  // -(1,1) is reachable (it is a generator); -(1,0) is not.
  EXPECT_NEAR(oracles::lp_cone_residual(gens, -gens[0]), 0.0, 1e-12);
  EXPECT_GT(oracles::lp_cone_residual(gens, -gens[2]), 0.1);
  bool hits_minus_e1 = false;
  for (const auto& p : oracles::lattice_combinations(gens, 4)) {
    if ((p + gens[2]).norm() < 1e-12) hits_minus_e1 = true;
  }
  EXPECT_FALSE(hits_minus_e1);
}

TEST(Lineality, BasisVectorsAreTwoSided) {
  Rng rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = 2 + trial % 5;
    const PolyhedralCone c(d, oracles::random_generators(rng, d, 2 + trial % 5, trial % 2 == 0));
    const Subspace l = lineality_space(c);
    for (Index k = 0; k < l.rank(); ++k) {
      EXPECT_TRUE(cone_member(c, l.basis_vector(k)));
      EXPECT_TRUE(cone_member(c, -l.basis_vector(k)));
    }
  }
}

TEST(Pointed, Examples) {
  EXPECT_TRUE(is_pointed(make(3, {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})})));
  EXPECT_FALSE(is_pointed(make(2, {vec({1, 0}), vec({-1, 0}), vec({0, 1}), vec({0, -1})})));
}

TEST(Pointed, ConstructedPairIsNotPointed) {
  Rng rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = 2 + trial % 5;
    auto gens = pointed_generators(rng, d, 3);
    const Vector v = rng.gaussian(d);
    const Vector w = rng.gaussian(d);
    gens.push_back(v + w);
    gens.push_back(-v);
    gens.push_back(-w);
    EXPECT_FALSE(is_pointed(PolyhedralCone(d, gens))) << "trial " << trial;
  }
}

TEST(Proper, OrthantCertificate) {
  const auto c = make(2, {vec({1, 0}), vec({0, 1})});
  const auto f = is_proper(c);
  ASSERT_TRUE(f.has_value());
  EXPECT_NEAR(f->norm(), 1.0, 1e-12);
  for (const auto& g : c.generators()) EXPECT_LE(f->dot(g), kTol.tol_mem);
}

TEST(Proper, WholePlaneHasNoCertificate) {
  EXPECT_FALSE(is_proper(make(2, {vec({1, 0}), vec({-1, 0}), vec({0, 1}), vec({0, -1})})).has_value());
}

TEST(Proper, HalfPlaneCertificateIsOrthogonalToLineality) {
  const auto f = is_proper(make(2, {vec({1, 0}), vec({-1, 0}), vec({0, 1})}));
  ASSERT_TRUE(f.has_value());
  EXPECT_NEAR((*f - vec({0, -1})).norm(), 0.0, 1e-9);
}

TEST(Proper, PointedRandomConesAreProper) {
  Rng rng(34);
  int pointed_count = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Index d = 2 + trial % 5;
    const PolyhedralCone c(d, oracles::random_generators(rng, d, 2 + trial % 8, false));
    if (!is_pointed(c)) continue;
    ++pointed_count;
    const auto f = is_proper(c);
    ASSERT_TRUE(f.has_value()) << "trial " << trial;
    for (const auto& g : c.generators()) EXPECT_LE(f->dot(g), kTol.tol_mem);
  }
  EXPECT_GT(pointed_count, 50);
}

TEST(Polar, OrthantPolarIsNonpositiveOrthant) {
  const HalfspaceCone h = polar(make(2, {vec({1, 0}), vec({0, 1})}));
  EXPECT_TRUE(halfspace_member(h, vec({-1, -2})));
  EXPECT_FALSE(halfspace_member(h, vec({1, -2})));
  EXPECT_FALSE(halfspace_member(h, vec({-1, 2})));
}

TEST(Polar, PolarOfSubspaceIsComplement) {
  Rng rng(35);
  for (int trial = 0; trial < 50; ++trial) {
    const Index d = 2 + trial % 5;
    std::vector<Vector> vs;
    for (int k = 0; k < 1 + trial % static_cast<int>(d - 1); ++k) vs.push_back(rng.gaussian(d));
    const Subspace s = orthonormalize(d, vs, kTol);
    const HalfspaceCone h = polar(PolyhedralCone::from_subspace(s));
    const Subspace comp = orthogonal_complement(s);
    for (int i = 0; i < 20; ++i) {
      const Vector x = rng.gaussian(d);
      EXPECT_TRUE(halfspace_member(h, project(comp, x)));
      EXPECT_EQ(halfspace_member(h, x), project(s, x).norm() <= 1e-6);
    }
  }
}

TEST(Polar, SignChecksOnThousandProbes) {
  const HalfspaceCone h = polar(make(2, {vec({1, 1}), vec({1, -1})}));
  Rng rng(36);
  for (int i = 0; i < 1000; ++i) {
    const Vector x = 3.0 * rng.gaussian(2);
    const bool direct = x(0) + x(1) <= threshold(x) && x(0) - x(1) <= threshold(x);
    EXPECT_EQ(halfspace_member(h, x), direct);
  }
}

TEST(HalfspaceMember, EmptyListIsWholeSpace) {
  const HalfspaceCone h(3, {});
  EXPECT_TRUE(halfspace_member(h, vec({5, -4, 3})));
}

TEST(HalfspaceMember, SingleInequality) {
  const HalfspaceCone h(2, {vec({1, 0})});
  EXPECT_FALSE(halfspace_member(h, vec({1, 0})));
  EXPECT_TRUE(halfspace_member(h, vec({-1, 7})));
}

TEST(HalfspaceMember, AgreesWithPerInequalityEvaluation) {
  Rng rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = 2 + trial % 5;
    std::vector<Vector> normals;
    for (int i = 0; i < 1 + trial % 6; ++i) normals.push_back(rng.gaussian(d));
    const HalfspaceCone h(d, normals);
    for (int i = 0; i < 20; ++i) {
      const Vector x = rng.gaussian(d);
      bool direct = true;
      for (const auto& n : normals) direct = direct && n.dot(x) <= threshold(x);
      EXPECT_EQ(halfspace_member(h, x), direct);
    }
  }
}

TEST(DoublePolar, OrthantOnAxes) {
  const auto c = make(3, {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})});
  std::vector<Vector> probes;
  for (Index i = 0; i < 3; ++i) {
    probes.push_back(Vector::Unit(3, i));
    probes.push_back(-Vector::Unit(3, i));
  }
  EXPECT_TRUE(double_polar_closure_check(c, probes));
}

TEST(DoublePolar, HalfPlaneRandomProbes) {
  const auto c = make(2, {vec({1, 0}), vec({-1, 0}), vec({0, 1})});
  Rng rng(38);
  std::vector<Vector> probes;
  for (int i = 0; i < 100; ++i) probes.push_back(rng.gaussian(2));
  EXPECT_TRUE(double_polar_closure_check(c, probes));
  const auto pg = polar_generators(c);
  for (const auto& x : probes) EXPECT_EQ(double_polar_member(pg, x), x(1) >= -threshold(x));
}

TEST(DoublePolar, RayInR3AgainstClosedForm) {
  const auto c = make(3, {vec({1, 0, 0})});
  Rng rng(39);
  std::vector<Vector> probes;
  for (int i = 0; i < 200; ++i) probes.push_back(rng.unit_vector(3));
  probes.push_back(vec({1, 0, 0}));
  EXPECT_TRUE(double_polar_closure_check(c, probes));
  const auto pg = polar_generators(c);
  for (const auto& x : probes) {
    const bool on_ray = x(0) > 0 && std::hypot(x(1), x(2)) <= 1e-9;
    EXPECT_EQ(double_polar_member(pg, x), on_ray);
  }
}

TEST(Decompose, HalfPlane) {
  const StructuredCone s = decompose(make(2, {vec({1, 0}), vec({-1, 0}), vec({0, 1})}));
  ASSERT_EQ(s.lineality().rank(), 1);
  EXPECT_NEAR(std::abs(s.lineality().basis_vector(0)(0)), 1.0, 1e-12);
  ASSERT_EQ(s.pointed_generators().size(), 1u);
  EXPECT_NEAR((s.pointed_generators()[0] - vec({0, 1})).norm(), 0.0, 1e-12);
  EXPECT_TRUE(is_pointed(s.pointed_part()));
}

TEST(Decompose, PointedConeIsFixedPoint) {
  const std::vector<Vector> gens{vec({1, 0, 0}), vec({1, 1, 0}), vec({1, 0, 1})};
  const StructuredCone s = decompose(PolyhedralCone(3, gens));
  EXPECT_EQ(s.lineality().rank(), 0);
  ASSERT_EQ(s.pointed_generators().size(), gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) EXPECT_EQ(s.pointed_generators()[i], gens[i]);
}

TEST(Decompose, DiagonalCone) {
  const auto c = make(2, {vec({1, 1}), vec({-1, -1}), vec({1, 0})});
  const StructuredCone s = decompose(c);
  ASSERT_EQ(s.lineality().rank(), 1);
  ASSERT_EQ(s.pointed_generators().size(), 1u);
  // (1,0) minus its projection onto the diagonal.
  const Vector diag = vec({1, 1}) / std::sqrt(2.0);
  const Vector expected = vec({1, 0}) - vec({1, 0}).dot(diag) * diag;
  EXPECT_NEAR((s.pointed_generators()[0] - expected).norm(), 0.0, 1e-12);
  EXPECT_NEAR((expected - vec({0.5, -0.5})).norm(), 0.0, 1e-15);
  for (int i = -6; i <= 6; ++i) {
    for (int j = -6; j <= 6; ++j) {
      const Vector x = vec({0.5 * i, 0.5 * j});
      EXPECT_EQ(structured_member(s, x), cone_member(c, x)) << x.transpose();
    }
  }
}

TEST(Decompose, RoundTripOnRandomCones) {
  Rng rng(40);
  for (int trial = 0; trial < 60; ++trial) {
    const Index d = 2 + trial % 5;
    const PolyhedralCone c(d, oracles::random_generators(rng, d, 3 + trial % 6, trial % 2 == 0));
    const StructuredCone s = decompose(c);
    EXPECT_TRUE(is_pointed(s.pointed_part()));
    for (const auto& x : default_probes(d, c.generators(), rng, 200)) {
      ASSERT_EQ(structured_member(s, x), cone_member(c, x)) << "trial " << trial;
    }
  }
}

TEST(StructuredMember, Examples) {
  const Subspace x_axis(Matrix(vec({1, 0})), kTol);
  const StructuredCone s(x_axis, {vec({0, 1})});
  EXPECT_TRUE(structured_member(s, vec({-5, 2})));
  EXPECT_FALSE(structured_member(s, vec({0, -1})));
}

TEST(StructuredMember, RejectsNonOrthogonalOrNonPointed) {
  const Subspace x_axis(Matrix(vec({1, 0, 0})), kTol);
  EXPECT_THROW(StructuredCone(x_axis, {vec({1, 1, 0})}), InvariantViolation);
  EXPECT_THROW(StructuredCone(x_axis, {vec({0, 1, 0}), vec({0, -1, 0})}), InvariantViolation);
}

TEST(StructuredMember, AgreesWithFlattening) {
  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const Index d = 3 + trial % 4;
    std::vector<Vector> fs;
    for (int k = 0; k < 1 + trial % 2; ++k) fs.push_back(rng.gaussian(d));
    const Subspace f = orthonormalize(d, fs, kTol);
    const Subspace comp = orthogonal_complement(f);
    std::vector<Vector> v;
    const Vector axis = comp.basis_vector(0);
    for (int k = 0; k < 3; ++k) {
      Vector g = project(comp, rng.gaussian(d));
      g += (std::abs(g.dot(axis)) + 0.3 - g.dot(axis)) * axis;
      v.push_back(g);
    }
    const StructuredCone s(f, v);
    const PolyhedralCone flat = s.flattened();
    for (int i = 0; i < 1000; ++i) {
      const Vector x = rng.gaussian(d);
      ASSERT_EQ(structured_member(s, x), cone_member(flat, x));
    }
  }
}

TEST(ReconstructLineality, Examples) {
  const Subspace x_axis(Matrix(vec({1, 0, 0})), kTol);
  const std::vector<Vector> v{vec({0, 1, 0})};
  EXPECT_TRUE(reconstruct_lineality_check(x_axis, v));
  const std::vector<Vector> w{vec({1, 0, 0}), vec({1, 1, 0}), vec({1, 0, 1})};
  EXPECT_TRUE(reconstruct_lineality_check(Subspace(3), w));
}

TEST(ReconstructLineality, PreconditionViolations) {
  const Subspace x_axis(Matrix(vec({1, 0, 0})), kTol);
  const std::vector<Vector> tilted{vec({1, 1, 0})};
  EXPECT_THROW(reconstruct_lineality_check(x_axis, tilted), PreconditionError);
  const std::vector<Vector> line{vec({0, 1, 0}), vec({0, -1, 0})};
  EXPECT_THROW(reconstruct_lineality_check(x_axis, line), PreconditionError);
}

TEST(ReconstructLineality, RandomPairs) {
  Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = 3 + trial % 4;
    std::vector<Vector> fs;
    for (int k = 0; k < trial % 3; ++k) fs.push_back(rng.gaussian(d));
    const Subspace f = orthonormalize(d, fs, kTol);
    const Subspace comp = orthogonal_complement(f);
    const Vector axis = comp.basis_vector(0);
    std::vector<Vector> v;
    for (int k = 0; k < 1 + trial % 4; ++k) {
      Vector g = project(comp, rng.gaussian(d));
      g += (std::abs(g.dot(axis)) + 0.3 - g.dot(axis)) * axis;
      v.push_back(g);
    }
    EXPECT_TRUE(reconstruct_lineality_check(f, v)) << "trial " << trial;
  }
}

TEST(Delta, XAxisWithRay) {
  const Subspace gamma(Matrix(vec({1, 0, 0})), kTol);
  const std::vector<Vector> psi{vec({0, 1, 0})};
  const StructuredCone delta = delta_construction(gamma, psi);
  const HalfspaceCone flat_polar = polar(delta.flattened());
  const std::vector<Vector> probes{vec({0, -1, 5}), vec({0, 1, 0}), vec({1, -1, 0}), vec({0, 0, -3}), vec({0, -2, 0})};
  for (const auto& f : probes) {
    const bool expected = std::abs(f(0)) <= threshold(f) && f(1) <= threshold(f);
    EXPECT_EQ(structured_polar_member(delta, f), expected);
    EXPECT_EQ(halfspace_member(flat_polar, f), expected);
  }
}

TEST(Delta, ZeroGammaEqualsPlainPolar) {
  const std::vector<Vector> psi{vec({1, 0}), vec({1, 1})};
  const StructuredCone delta = delta_construction(Subspace(2), psi);
  const HalfspaceCone plain = polar(PolyhedralCone(2, psi));
  Rng rng(43);
  for (int i = 0; i < 1000; ++i) {
    const Vector f = rng.unit_vector(2);
    EXPECT_EQ(structured_polar_member(delta, f), halfspace_member(plain, f));
  }
}

TEST(Delta, DiagonalGammaAntiDiagonalRay) {
  const Subspace gamma(Matrix(vec({1, 1}) / std::sqrt(2.0)), kTol);
  const std::vector<Vector> psi{vec({1, -1}) / std::sqrt(2.0)};
  const StructuredCone delta = delta_construction(gamma, psi);
  const HalfspaceCone flat_polar = polar(delta.flattened());
  Rng rng(44);
  for (int i = 0; i < 1000; ++i) {
    const Vector f = rng.unit_vector(2);
    EXPECT_EQ(structured_polar_member(delta, f), halfspace_member(flat_polar, f));
  }
  EXPECT_TRUE(structured_polar_member(delta, vec({-1, 1}) / std::sqrt(2.0)));
  EXPECT_FALSE(structured_polar_member(delta, vec({1, -1}) / std::sqrt(2.0)));
}

TEST(Delta, PreconditionViolations) {
  const Subspace gamma(Matrix(vec({1, 0})), kTol);
  const std::vector<Vector> tilted{vec({1, 1})};
  EXPECT_THROW(delta_construction(gamma, tilted), PreconditionError);
}

TEST(PolarCalculus, NegationRule) {
  Rng rng(45);
  for (int trial = 0; trial < 50; ++trial) {
    const Index d = 2 + trial % 5;
    const PolyhedralCone c(d, oracles::random_generators(rng, d, 2 + trial % 5, false));
    const HalfspaceCone p = polar(c);
    const HalfspaceCone pn = polar(c.negated());
    for (int i = 0; i < 100; ++i) {
      const Vector x = rng.gaussian(d);
      EXPECT_EQ(halfspace_member(pn, x), halfspace_member(p, -x));
    }
  }
}

TEST(PolarCalculus, SumRuleAndAntitonicity) {
  Rng rng(46);
  for (int trial = 0; trial < 50; ++trial) {
    const Index d = 2 + trial % 5;
    const PolyhedralCone a(d, oracles::random_generators(rng, d, 1 + trial % 4, false));
    const PolyhedralCone b(d, oracles::random_generators(rng, d, 1 + trial % 3, false));
    const PolyhedralCone ab = a.sum(b);
    for (int i = 0; i < 100; ++i) {
      const Vector x = rng.gaussian(d);
      const bool in_ab = halfspace_member(polar(ab), x);
      EXPECT_EQ(in_ab, halfspace_member(polar(a), x) && halfspace_member(polar(b), x));
      if (in_ab) {
        EXPECT_TRUE(halfspace_member(polar(a), x));
      }
    }
  }
}

TEST(PolarCalculus, OrthogonalSumCriterion) {
  Rng rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    const Index d = 3 + trial % 4;
    std::vector<Vector> fs;
    for (int k = 0; k < 1 + trial % 2; ++k) fs.push_back(rng.gaussian(d));
    const Subspace f = orthonormalize(d, fs, kTol);
    const Subspace g = orthogonal_complement(f);
    std::vector<Vector> cg;
    std::vector<Vector> dg;
    for (int k = 0; k < 2; ++k) cg.push_back(project(f, rng.gaussian(d)));
    for (int k = 0; k < 3; ++k) dg.push_back(project(g, rng.gaussian(d)));
    const PolyhedralCone c(d, cg);
    const PolyhedralCone dd(d, dg);
    const PolyhedralCone sum = c.sum(dd);
    for (int i = 0; i < 200; ++i) {
      Vector y = rng.gaussian(d);
      if (i % 2 == 0) {
        y = Vector::Zero(d);
        for (const auto& v : cg) y += rng.uniform() * v;
        for (const auto& v : dg) y += rng.uniform() * v;
        if (i % 4 == 0) y += 0.3 * rng.gaussian(d);
      }
      EXPECT_EQ(cone_member(sum, y), cone_member(c, project(f, y)) && cone_member(dd, project(g, y)));
    }
  }
}

TEST(Probes, DefaultProbeLayout) {
  Rng rng(48);
  const std::vector<Vector> gens{vec({1, 0, 0}), vec({0, 2, 0})};
  const auto probes = default_probes(3, gens, rng, 10);
  ASSERT_EQ(probes.size(), 6u + 2u + 1u + 10u);
  EXPECT_EQ(probes[0], vec({1, 0, 0}));
  EXPECT_EQ(probes[1], vec({-1, 0, 0}));
  EXPECT_NEAR((probes[8] - vec({1, 1, 0}) / std::sqrt(2.0)).norm(), 0.0, 1e-15);
}

}  // namespace
}  // namespace convexkit
