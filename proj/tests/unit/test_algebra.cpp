#include <cmath>

#include <gtest/gtest.h>

#include "pdjc/algebra.hpp"
#include "pdjc/errors.hpp"
#include "test_oracles.hpp"

namespace pdjc {
namespace {

TEST(DeformationParam, DomainIsAboveMinusHalf) {
  EXPECT_NO_THROW(DeformationParam(-0.25));
  EXPECT_NO_THROW(DeformationParam(200.0));
  EXPECT_THROW(DeformationParam(-0.5), DomainError);
  EXPECT_THROW(DeformationParam(-1.0), DomainError);
}

TEST(LadderCoefficient, Examples) {
  EXPECT_DOUBLE_EQ(ladder_coefficient(Ladder::lower, 1, DeformationParam(0.0)), 1.0);
  EXPECT_NEAR(ladder_coefficient(Ladder::lower, 1, DeformationParam(50.0)), std::sqrt(101.0), 1e-15);
  EXPECT_NEAR(ladder_coefficient(Ladder::lower, 1, DeformationParam(50.0)), 10.0499, 1e-4);
  EXPECT_DOUBLE_EQ(ladder_coefficient(Ladder::raise, 2, DeformationParam(0.5)), 2.0);
  EXPECT_EQ(ladder_coefficient(Ladder::lower, 0, DeformationParam(3.0)), 0.0);
  EXPECT_THROW(ladder_coefficient(Ladder::raise, -1, DeformationParam(0.0)), DomainError);
}

TEST(LadderCoefficient, UndeformedLimitIsBosonic) {
  const DeformationParam zero(0.0);
  for (int n = 0; n < 300; ++n) {
    EXPECT_DOUBLE_EQ(ladder_coefficient(Ladder::lower, n, zero), std::sqrt(double(n)));
    EXPECT_DOUBLE_EQ(ladder_coefficient(Ladder::raise, n, zero), std::sqrt(n + 1.0));
  }
}

TEST(FockLadder, UndeformedMatricesMatchBosonLadder) {
  const FockLadder ladder(DeformationParam(0.0), 60);
  const Eigen::MatrixXd a = testing::boson_lowering(60);
  EXPECT_LT((ladder.lowering() - a).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((ladder.raising() - a.transpose()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(LadderCoefficient, RaiseAndLowerAreAdjoint) {
  testing::Gen gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    const DeformationParam lam(gen.uniform(-0.49, 200.0));
    const int n = gen.integer(0, 400);
    EXPECT_EQ(ladder_coefficient(Ladder::raise, n, lam), ladder_coefficient(Ladder::lower, n + 1, lam));
  }
}

TEST(NumberOperatorEigenvalue, Examples) {
  EXPECT_EQ(number_operator_eigenvalue(4, DeformationParam(17.0)), 4.0);
  EXPECT_EQ(number_operator_eigenvalue(3, DeformationParam(50.0)), 103.0);
  EXPECT_EQ(number_operator_eigenvalue(0, DeformationParam(2.0)), 0.0);
}

class FockLadderAlgebra : public ::testing::TestWithParam<double> {};

TEST_P(FockLadderAlgebra, ParityAnticommutesWithLadders) {
  const FockLadder ladder(DeformationParam(GetParam()), 40);
  const Eigen::MatrixXd r = ladder.parity();
  EXPECT_EQ((r * ladder.lowering() + ladder.lowering() * r).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ((r * ladder.raising() + ladder.raising() * r).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ((r * r - Eigen::MatrixXd::Identity(41, 41)).cwiseAbs().maxCoeff(), 0.0);
}

TEST_P(FockLadderAlgebra, CommutatorIsOnePlusTwoLambdaParity) {
  const double lam = GetParam();
  const FockLadder ladder(DeformationParam(lam), 40);
  const Eigen::MatrixXd a = ladder.lowering();
  const Eigen::MatrixXd ad = ladder.raising();
  const Eigen::MatrixXd comm = a * ad - ad * a;
  // The last row feels the truncation.
  for (int n = 0; n < 40; ++n) {
    for (int m = 0; m < 40; ++m) {
      const double expected = n == m ? 1.0 + 2.0 * lam * (n % 2 == 0 ? 1.0 : -1.0) : 0.0;
      EXPECT_NEAR(comm(n, m), expected, 1e-12 * (1.0 + lam + n)) << n << "," << m;
    }
  }
}

TEST_P(FockLadderAlgebra, PairNumberMatchesProductAndEigenvalues) {
  const DeformationParam lam(GetParam());
  const FockLadder ladder(lam, 40);
  const Eigen::MatrixXd product = ladder.raising() * ladder.lowering();
  const Eigen::VectorXd diag = ladder.pair_number_diagonal();
  // a^dag a = N + lambda (1 - R)
  const Eigen::MatrixXd formula =
      ladder.number() + lam.value() * (Eigen::MatrixXd::Identity(41, 41) - ladder.parity());
  for (int n = 0; n <= 40; ++n) {
    EXPECT_EQ(diag(n), number_operator_eigenvalue(n, lam));
    EXPECT_NEAR(product(n, n), diag(n), 1e-12 * (1.0 + diag(n)));
    EXPECT_NEAR(formula(n, n), diag(n), 1e-12 * (1.0 + diag(n)));
  }
  EXPECT_NEAR((product - Eigen::MatrixXd(diag.asDiagonal())).cwiseAbs().maxCoeff(), 0.0, 1e-11);
}

TEST_P(FockLadderAlgebra, OnlyAdjacentLevelsConnect) {
  const FockLadder ladder(DeformationParam(GetParam()), 25);
  const Eigen::MatrixXd a = ladder.lowering();
  for (int i = 0; i <= 25; ++i) {
    for (int j = 0; j <= 25; ++j) {
      if (j != i + 1) EXPECT_EQ(a(i, j), 0.0);
    }
  }
  EXPECT_EQ((ladder.raising() - a.transpose()).cwiseAbs().maxCoeff(), 0.0);
}

INSTANTIATE_TEST_SUITE_P(Lambdas, FockLadderAlgebra, ::testing::Values(-0.25, 0.0, 0.5, 10.0, 50.0));

TEST(WcsBuild, UndeformedMatchesEvenCat) {
  const FieldState s = wcs_build({1.0, 0.0}, DeformationParam(0.0));
  EXPECT_NEAR(std::norm(s.amplitudes[0]), 0.648054273663885400, 1e-14);
  for (double x : {1.0, 9.0, 30.0}) {
    const FieldState f = wcs_build({x, 0.0}, DeformationParam(0.0));
    const auto ref = testing::even_cat_distribution(x, f.n_even_max());
    for (int n = 0; n <= f.n_even_max(); ++n) {
      EXPECT_NEAR(std::norm(f.amplitudes[n]), ref[n], 1e-13 * std::max(ref[n], 1e-3)) << x << " " << n;
      EXPECT_GE(f.amplitudes[n].real(), 0.0);
    }
  }
}

TEST(WcsBuild, NormalizedUpToTail) {
  testing::Gen gen(11);
  for (int trial = 0; trial < 60; ++trial) {
    const double x = gen.uniform(0.01, 100.0);
    const double lam = gen.uniform(-0.49, 200.0);
    const double tol = std::pow(10.0, gen.uniform(-14.0, -6.0));
    const FieldState f = wcs_build({x, gen.uniform(0.0, 6.3)}, DeformationParam(lam), tol);
    EXPECT_LT(f.tail_mass, tol);
    EXPECT_NEAR(f.retained_norm() + f.tail_mass, 1.0, 1e-12) << x << " " << lam;
    // Boundary amplitude small enough for the a^2 eigen-relation.
    EXPECT_LT(x * x * std::norm(f.amplitudes.back()), tol);
  }
}

TEST(WcsBuild, NormalizationMonotoneInTolerance) {
  double previous = 0.0;
  for (double tol : {1e-6, 1e-8, 1e-10, 1e-12, 1e-14}) {
    const double norm = wcs_build({30.0, 0.0}, DeformationParam(5.0), tol).retained_norm();
    EXPECT_GE(norm, previous);
    previous = norm;
  }
  EXPECT_NEAR(previous, 1.0, 1e-13);
}

TEST(WcsBuild, VacuumLimit) {
  const FieldState f = wcs_build({0.0, 1.2}, DeformationParam(4.0));
  ASSERT_EQ(f.amplitudes.size(), 1u);
  EXPECT_EQ(f.amplitudes[0], Complex(1.0, 0.0));
  EXPECT_EQ(f.tail_mass, 0.0);
}

TEST(WcsBuild, PhaseOnlyRotatesAmplitudes) {
  const DeformationParam lam(2.0);
  const FieldState a = wcs_build({9.0, 0.0}, lam);
  const FieldState b = wcs_build({9.0, 0.7}, lam);
  ASSERT_EQ(a.amplitudes.size(), b.amplitudes.size());
  for (std::size_t n = 0; n < a.amplitudes.size(); ++n) {
    EXPECT_NEAR(std::norm(a.amplitudes[n]), std::norm(b.amplitudes[n]), 1e-15);
    EXPECT_NEAR(std::abs(b.amplitudes[n] - a.amplitudes[n] * std::polar(1.0, 1.4 * n)), 0.0, 1e-14);
  }
}

TEST(WcsBuild, Errors) {
  EXPECT_THROW(wcs_build({-1.0, 0.0}, DeformationParam(0.0)), DomainError);
  EXPECT_THROW(wcs_build({1.0, 0.0}, DeformationParam(0.0), 0.0), DomainError);
  EXPECT_THROW(wcs_build({1.0, 0.0}, DeformationParam(0.0), 1e-3), DomainError);
  EXPECT_THROW(wcs_build({400.0, 0.0}, DeformationParam(0.0), 1e-12, 50), TruncationError);
}

TEST(WcsEigenstateResidual, Examples) {
  const CatStateParams vac{0.0, 0.0};
  const FieldState v = wcs_build(vac, DeformationParam(0.0));
  EXPECT_EQ(wcs_eigenstate_residual(v, vac, FockLadder(DeformationParam(0.0), 2)), 0.0);

  for (auto [x, lam] : {std::pair{1.0, 0.0}, {9.0, 10.0}, {30.0, 50.0}, {20.0, -0.25}}) {
    const CatStateParams p{x, 0.3};
    const FieldState f = wcs_build(p, DeformationParam(lam), 1e-12);
    const FockLadder ladder(DeformationParam(lam), 2 * f.n_even_max() + 2);
    EXPECT_LT(wcs_eigenstate_residual(f, p, ladder), 1e-5) << x << " " << lam;
  }
}

TEST(WcsEigenstateResidual, RejectsSmallLadder) {
  const CatStateParams p{9.0, 0.0};
  const FieldState f = wcs_build(p, DeformationParam(1.0));
  EXPECT_THROW(wcs_eigenstate_residual(f, p, FockLadder(DeformationParam(1.0), 2 * f.n_even_max() + 1)),
               TruncationError);
}

}  // namespace
}  // namespace pdjc
