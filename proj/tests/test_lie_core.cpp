#include <gtest/gtest.h>

#include "support.hpp"

using namespace eorb;
using eorb::test::plane_generator;
using eorb::test::rot2;

namespace {

Vec vec(std::initializer_list<double> xs)
{
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

/// Skew matrix of the scalar rate w in the plane: [[0, -w], [w, 0]].
Mat scalar_skew(double w) { return plane_generator(2, 0, 1, w); }

}  // namespace

TEST(Compose, PureTranslationsAdd)
{
  const GroupSpec g(3, Family::E);
  const GroupElement a{Mat::Identity(3, 3), vec({1, 2, 3})};
  const GroupElement b{Mat::Identity(3, 3), vec({-1, 0, 5})};
  EXPECT_LT(distance(compose(g, a, b), GroupElement{Mat::Identity(3, 3), vec({0, 2, 8})}), 1e-15);
}

TEST(Compose, RotationTimesInverseRotation)
{
  const GroupSpec g(2, Family::SO);
  const GroupElement a{rot2(0.3), Vec::Zero(2)};
  const GroupElement b{rot2(-0.3), Vec::Zero(2)};
  EXPECT_LT(distance(compose(g, a, b), GroupElement::identity(2)), 1e-15);
}

TEST(Compose, Se2HandEvaluation)
{
  const GroupSpec g(2, Family::SE);
  const GroupElement a{rot2(M_PI / 2), vec({1, 0})};
  const GroupElement b{Mat::Identity(2, 2), vec({1, 0})};
  EXPECT_LT(distance(compose(g, a, b), GroupElement{rot2(M_PI / 2), vec({1, 1})}), 1e-15);
}

TEST(Inverse, Examples)
{
  const GroupSpec g(2, Family::SE);
  EXPECT_LT(distance(inverse(g, {Mat::Identity(2, 2), vec({2, -1})}), GroupElement{Mat::Identity(2, 2), vec({-2, 1})}), 1e-15);
  EXPECT_LT(distance(inverse(g, {rot2(0.4), Vec::Zero(2)}), GroupElement{rot2(-0.4), Vec::Zero(2)}), 1e-15);
  const GroupElement a{rot2(M_PI / 2), vec({1, 0})};
  const auto ai = inverse(g, a);
  EXPECT_LT(distance(ai, GroupElement{rot2(-M_PI / 2), vec({0, 1})}), 1e-15);
  EXPECT_LT(distance(compose(g, a, ai), GroupElement::identity(2)), 1e-15);
}

TEST(AdjointAction, IdentityLeavesPointFixed)
{
  const GroupSpec g(4, Family::E);
  sampling::Rng rng(11);
  const auto x = sampling::random_algebra_element(g, rng);
  EXPECT_EQ(distance(adjoint_action(g, GroupElement::identity(4), x), x), 0.0);
}

TEST(AdjointAction, Se2ClosedFormExample)
{
  const GroupSpec g(2, Family::SE);
  const AlgebraElement x{scalar_skew(1), vec({1, 0})};
  const GroupElement a{Mat::Identity(2, 2), vec({1, 0})};
  const auto y = adjoint_action(g, a, x);
  EXPECT_NEAR(y.omega(1, 0), 1.0, 1e-15);
  EXPECT_LT((y.v - vec({1, -1})).norm(), 1e-15);
}

TEST(AdjointAction, Se2ClosedFormOnRandomInputs)
{
  const GroupSpec g(2, Family::SE);
  sampling::Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const double w     = sampling::normal(rng);
    const Vec v        = sampling::random_vector(rng, 2);
    const GroupElement a{rot2(sampling::uniform(rng, -M_PI, M_PI)), sampling::random_vector(rng, 2)};
    const auto y       = adjoint_action(g, a, {scalar_skew(w), v});
    const Vec closed    = a.r * v - w * (rot2(M_PI / 2) * a.d);
    EXPECT_LT(std::abs(y.omega(1, 0) - w), 1e-12);
    EXPECT_LT((y.v - closed).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(AdjointAction, TranslationRemovesImagePart)
{
  const GroupSpec g(3, Family::E);
  const Mat w = plane_generator(3, 0, 1);
  // brute-force solve of w d = e1 on Im w
  const Vec d = w.colPivHouseholderQr().solve(Vec::Unit(3, 0));
  EXPECT_LT((d - vec({0, -1, 0})).norm(), 1e-12);
  const auto y = adjoint_action(g, {Mat::Identity(3, 3), vec({0, -1, 0})}, {w, Vec::Unit(3, 0)});
  EXPECT_LT(distance(y, AlgebraElement{w, Vec::Zero(3)}), 1e-15);
}

TEST(CoadjointAction, IdentityLeavesPointFixed)
{
  const GroupSpec g(4, Family::SE);
  sampling::Rng rng(12);
  const auto m = sampling::random_dual_element(g, rng);
  EXPECT_EQ(distance(coadjoint_action(g, GroupElement::identity(4), m), m), 0.0);
}

TEST(CoadjointAction, Se2ClosedFormExample)
{
  const GroupSpec g(2, Family::SE);
  const auto y = coadjoint_action(g, {Mat::Identity(2, 2), vec({0, 1})}, {Mat::Zero(2, 2), vec({1, 0})});
  EXPECT_NEAR(y.L(1, 0), -1.0, 1e-15);
  EXPECT_LT((y.p - vec({1, 0})).norm(), 1e-15);
}

TEST(CoadjointAction, Se2ClosedFormOnRandomInputs)
{
  // scalar form: L' = L + (r p)^T R_{pi/2} d, p' = r p
  const GroupSpec g(2, Family::SE);
  sampling::Rng rng(6);
  for (int t = 0; t < 100; ++t) {
    const double l = sampling::normal(rng);
    const Vec p    = sampling::random_vector(rng, 2);
    const GroupElement a{rot2(sampling::uniform(rng, -M_PI, M_PI)), sampling::random_vector(rng, 2)};
    const auto y   = coadjoint_action(g, a, {scalar_skew(l), p});
    const Vec rp   = a.r * p;
    EXPECT_LT(std::abs(y.L(1, 0) - (l + rp.dot(rot2(M_PI / 2) * a.d))), 1e-12);
    EXPECT_LT((y.p - rp).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(CoadjointAction, TranslationProducesMomentum)
{
  const GroupSpec g(3, Family::E);
  const auto y = coadjoint_action(g, {Mat::Identity(3, 3), Vec::Unit(3, 1)}, {Mat::Zero(3, 3), Vec::Unit(3, 0)});
  const Mat expected = Vec::Unit(3, 0) * Vec::Unit(3, 1).transpose() - Vec::Unit(3, 1) * Vec::Unit(3, 0).transpose();
  EXPECT_LT((y.L - expected).norm(), 1e-15);
  EXPECT_LT((y.p - Vec::Unit(3, 0)).norm(), 1e-15);
}

TEST(MomentumMap, SymmetricArgumentsVanish)
{
  const GroupSpec g(4, Family::E);
  sampling::Rng rng(3);
  const Vec p = sampling::random_vector(rng, 4);
  EXPECT_LT(momentum_map(g, p, p).norm(), 1e-15);
}

TEST(MomentumMap, MatchesBruteForceLinearSolve)
{
  // unknown M in R^{n x n}: M + M^T = 0 and B_h(M, b_i) = p^T b_i v for each basis element
  for (const int n : {3, 4}) {
    const GroupSpec g(n, Family::E);
    sampling::Rng rng(40 + n);
    const Vec p = sampling::random_vector(rng, n);
    const Vec v = sampling::random_vector(rng, n);
    const int rows = n * n + g.dim_h();
    Mat a          = Mat::Zero(rows, n * n);
    Vec b          = Vec::Zero(rows);
    int r          = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j, ++r) {
        a(r, i + j * n) += 1;
        a(r, j + i * n) += 1;
      }
    }
    for (const auto & basis : g.h_basis()) {
      for (int k = 0; k < n * n; ++k) a(r, k) = 0.5 * basis.data()[k];
      b(r++) = p.dot(basis * v);
    }
    const Vec sol = a.colPivHouseholderQr().solve(b);
    const Mat m   = Eigen::Map<const Mat>(sol.data(), n, n);
    EXPECT_LT((momentum_map(g, p, v) - m).cwiseAbs().maxCoeff(), 1e-12);
  }
  const GroupSpec g3(3, Family::E);
  const Mat expected = Vec::Unit(3, 0) * Vec::Unit(3, 1).transpose() - Vec::Unit(3, 1) * Vec::Unit(3, 0).transpose();
  EXPECT_LT((momentum_map(g3, Vec::Unit(3, 0), Vec::Unit(3, 1)) - expected).norm(), 1e-15);
}

TEST(MomentumMap, DefiningPairing)
{
  sampling::Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 5;
    const GroupSpec g(n, Family::E);
    const Vec p = sampling::random_vector(rng, n);
    const Vec v = sampling::random_vector(rng, n);
    const Mat w = sampling::random_skew(rng, n);
    EXPECT_LT(std::abs(GroupSpec::inner_h(momentum_map(g, p, v), w) - p.dot(w * v)), 1e-12);
  }
}

TEST(Tau, Examples)
{
  const GroupSpec g(3, Family::E);
  EXPECT_LT(tau(g, Vec::Unit(3, 0), Vec::Zero(3)).norm(), 1e-15);
  EXPECT_LT((tau(g, Vec::Unit(3, 0), Vec::Unit(3, 1)) - momentum_map(g, Vec::Unit(3, 0), Vec::Unit(3, 1))).norm(), 1e-15);
  EXPECT_EQ(linalg::rank(tau_matrix(g, Vec::Unit(3, 0)), g.tol()), 2);
}

TEST(Bracket, Examples)
{
  const GroupSpec g(3, Family::E);
  sampling::Rng rng(9);
  const auto x = sampling::random_algebra_element(g, rng);
  EXPECT_LT(distance(bracket(g, x, x), AlgebraElement::zero(3)), 1e-15);
  const Mat w = sampling::random_skew(rng, 3);
  const Vec v = sampling::random_vector(rng, 3);
  EXPECT_LT(distance(bracket(g, {w, Vec::Zero(3)}, {Mat::Zero(3, 3), v}), AlgebraElement{Mat::Zero(3, 3), w * v}), 1e-15);
}

TEST(Bracket, FiniteDifferenceOfAdjointAlongExp)
{
  sampling::Rng rng(10);
  const double t = 1e-6;
  for (int k = 0; k < 20; ++k) {
    const int n = 2 + k % 4;
    const GroupSpec g(n, Family::E);
    const auto xi  = sampling::random_algebra_element(g, rng);
    const auto eta = sampling::random_algebra_element(g, rng);
    const auto fd  = (1.0 / t) * (adjoint_action(g, test::affine_exp_oracle(t * xi), eta) - eta);
    EXPECT_LT(distance(fd, bracket(g, xi, eta)), 1e-4 * scale_of(xi) * scale_of(xi) * scale_of(eta));
  }
}

TEST(CoadjointGenerator, MatchesFiniteDifference)
{
  sampling::Rng rng(13);
  const double t = 1e-5;
  for (int k = 0; k < 20; ++k) {
    const int n = 2 + k % 5;
    const GroupSpec g(n, Family::SE);
    const auto xi = sampling::random_algebra_element(g, rng);
    const auto m  = sampling::random_dual_element(g, rng);
    const auto fd = (0.5 / t) * (coadjoint_action(g, test::affine_exp_oracle(t * xi), m) - coadjoint_action(g, test::affine_exp_oracle(-t * xi), m));
    EXPECT_LT(distance(fd, coadjoint_generator(g, xi, m)), 1e-8);
  }
}

TEST(GroupExp, MatchesPadeOracle)
{
  sampling::Rng rng(14);
  for (int k = 0; k < 40; ++k) {
    const int n = 1 + k % 7;
    const GroupSpec g(n, Family::E);
    auto x = sampling::random_algebra_element(g, rng);
    x      = (sampling::uniform(rng, 0.0, 10.0) / std::max(1e-3, x.omega.norm())) * x;
    const auto e   = group_exp(g, x);
    const auto ref = test::affine_exp_oracle(x);
    EXPECT_LT((e.r - ref.r).cwiseAbs().maxCoeff(), 1e-11);
    EXPECT_LT((e.d - ref.d).cwiseAbs().maxCoeff(), 1e-10 * std::max(1.0, x.v.norm()));
    EXPECT_LT((e.r.transpose() * e.r - Mat::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(MusicalPhi, IdentityRealisation)
{
  const GroupSpec g(3, Family::E);
  sampling::Rng rng(15);
  const auto x = sampling::random_algebra_element(g, rng);
  const auto m = musical_phi(g, x);
  EXPECT_EQ((m.L - x.omega).norm(), 0.0);
  EXPECT_EQ((m.p - x.v).norm(), 0.0);
  EXPECT_EQ(distance(musical_phi_inverse(g, m), x), 0.0);
  EXPECT_EQ(distance(musical_phi(g, AlgebraElement::zero(3)), DualElement::zero(3)), 0.0);
}

TEST(MusicalPhi, RotationEquivariance)
{
  sampling::Rng rng(16);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 5;
    const GroupSpec g(n, Family::E);
    const GroupElement r{sampling::random_rotation(rng, n, false), Vec::Zero(n)};
    const auto x = sampling::random_algebra_element(g, rng);
    EXPECT_LT(distance(musical_phi(g, adjoint_action(g, r, x)), coadjoint_action(g, r, musical_phi(g, x))), 1e-12);
  }
}

TEST(Properties, GroupLawActionsPairingJacobi)
{
  sampling::Rng rng(17);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + t % 5;
    for (const auto & g : test::all_groups(n)) {
      const auto a = sampling::random_group_element(g, rng);
      const auto b = sampling::random_group_element(g, rng);
      const auto c = sampling::random_group_element(g, rng);
      const auto x = sampling::random_algebra_element(g, rng);
      const auto y = sampling::random_algebra_element(g, rng);
      const auto z = sampling::random_algebra_element(g, rng);
      const auto m = sampling::random_dual_element(g, rng);
      EXPECT_LT(distance(compose(g, compose(g, a, b), c), compose(g, a, compose(g, b, c))), 1e-10);
      EXPECT_LT(distance(adjoint_action(g, compose(g, a, b), x), adjoint_action(g, a, adjoint_action(g, b, x))), 1e-10 * scale_of(x));
      EXPECT_LT(distance(coadjoint_action(g, compose(g, a, b), m), coadjoint_action(g, a, coadjoint_action(g, b, m))), 1e-10 * scale_of(m));
      EXPECT_LT(std::abs(pairing(g, coadjoint_action(g, a, m), adjoint_action(g, a, x)) - pairing(g, m, x)), 1e-10);
      const auto jac = bracket(g, x, bracket(g, y, z)) + bracket(g, y, bracket(g, z, x)) + bracket(g, z, bracket(g, x, y));
      EXPECT_LT(distance(jac, AlgebraElement::zero(n)), 1e-10);
      EXPECT_NO_THROW(validate(g, compose(g, a, b)));
    }
  }
}

TEST(CustomGroup, ProjectsDualsAndPreservesPairing)
{
  const GroupSpec g = test::split_custom_group(4);
  EXPECT_EQ(g.dim_h(), 2);
  sampling::Rng rng(18);
  for (int t = 0; t < 50; ++t) {
    const auto a = sampling::random_group_element(g, rng);
    const auto x = sampling::random_algebra_element(g, rng);
    const auto m = sampling::random_dual_element(g, rng);
    EXPECT_NO_THROW(validate(g, a));
    const auto am = coadjoint_action(g, a, m);
    EXPECT_LT((am.L - g.project_h(am.L)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(std::abs(pairing(g, am, adjoint_action(g, a, x)) - pairing(g, m, x)), 1e-10);
    const Vec p = sampling::random_vector(rng, 4);
    const Vec v = sampling::random_vector(rng, 4);
    for (const auto & b : g.h_basis()) EXPECT_LT(std::abs(GroupSpec::inner_h(momentum_map(g, p, v), b) - p.dot(b * v)), 1e-12);
  }
}

TEST(CustomGroup, RejectsBadBases)
{
  Mat sym = Mat::Zero(3, 3);
  sym(0, 1) = sym(1, 0) = 1;
  EXPECT_THROW(GroupSpec::custom(3, {sym}), NotSkew);
  EXPECT_THROW(GroupSpec::custom(3, {plane_generator(3, 0, 1), 2 * plane_generator(3, 0, 1)}), InvariantViolation);
  EXPECT_THROW(GroupSpec::custom(3, {plane_generator(3, 0, 1), plane_generator(3, 1, 2)}), InvariantViolation);
  EXPECT_THROW(GroupSpec::custom(3, {Mat::Zero(2, 2)}), DimensionError);
}

TEST(Validation, RejectsMalformedElements)
{
  const GroupSpec se(3, Family::SE);
  const GroupSpec so(3, Family::SO);
  Mat reflect = Mat::Identity(3, 3);
  reflect(0, 0) = -1;
  EXPECT_THROW(validate(se, GroupElement{reflect, Vec::Zero(3)}), InvariantViolation);
  EXPECT_NO_THROW(validate(GroupSpec(3, Family::E), GroupElement{reflect, Vec::Zero(3)}));
  EXPECT_THROW(validate(se, GroupElement{2 * Mat::Identity(3, 3), Vec::Zero(3)}), InvariantViolation);
  EXPECT_THROW(validate(so, GroupElement{Mat::Identity(3, 3), Vec::Ones(3)}), InvariantViolation);
  EXPECT_THROW(validate(se, AlgebraElement{Mat::Identity(3, 3), Vec::Zero(3)}), NotSkew);
  EXPECT_THROW(compose(se, GroupElement::identity(2), GroupElement::identity(3)), DimensionError);
  EXPECT_THROW(adjoint_action(se, GroupElement::identity(3), AlgebraElement::zero(4)), DimensionError);
  EXPECT_THROW(GroupSpec(0, Family::E), DimensionError);
  EXPECT_THROW(GroupSpec(3, Family::E, ToleranceConfig{-1, 1e-10, 1e-8}), InputError);
}
