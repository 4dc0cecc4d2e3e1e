#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "isospec/ball_spectra.hpp"
#include "isospec/specfun.hpp"
#include "oracles.hpp"

using namespace isospec;

namespace {
const double pi = std::numbers::pi;
}

TEST(DirichletBall, DiskValues) {
    const Spectrum s = dirichlet_ball({2, 1.0}, 6);
    s.validate();
    const double j01 = oracle::kth_root([](long double x) { return oracle::series_j(0, x); }, 1);
    EXPECT_NEAR(s.values[0], j01 * j01, 1e-10);
    EXPECT_NEAR(s.values[0], 5.78319, 1e-4);
    EXPECT_NEAR(s.values[1] / s.values[0], 2.5387, 5e-4);
    // λ₂ = λ₃ (ℓ = 1), λ₄ = λ₅ (ℓ = 2), λ₆ = j_{0,2}²
    EXPECT_EQ(s.values[1], s.values[2]);
    EXPECT_EQ(s.values[3], s.values[4]);
    const double j02 = bessel_zero(0, 2).value;
    EXPECT_NEAR(s.values[5], j02 * j02, 1e-12);
    EXPECT_NEAR((s.values[1] + s.values[2]) / s.values[0], 5.077, 0.01);
}

TEST(DirichletBall, FirstExcitedMultiplicityIsDimension) {
    for (int n = 2; n <= 6; ++n) {
        const Spectrum s = dirichlet_ball({n, 1.0}, n + 2);
        s.validate();
        for (int i = 2; i <= n; ++i) EXPECT_EQ(s.values[i], s.values[1]) << n;
        EXPECT_GT(s.values[n + 1], s.values[n]);
    }
}

TEST(DirichletBall, Scaling) {
    const Spectrum a = dirichlet_ball({3, 1.0}, 10);
    const Spectrum b = dirichlet_ball({3, 2.5}, 10);
    for (int i = 0; i < 10; ++i) EXPECT_NEAR(b.values[i], a.values[i] / 6.25, 1e-12 * a.values[i]);
}

TEST(DirichletBall, AgainstBruteForceEnumeration) {
    // n = 3: every (ℓ, k) pair with ℓ ≤ 12, k ≤ 6, repeated 2ℓ+1 times.
    std::vector<double> all;
    for (int ell = 0; ell <= 12; ++ell) {
        for (int k = 1; k <= 6; ++k) {
            const double nu = 0.5 + ell;
            const double z = oracle::kth_root([nu](long double x) { return oracle::series_j(nu, x); }, k);
            for (int r = 0; r < 2 * ell + 1; ++r) all.push_back(z * z);
        }
    }
    std::sort(all.begin(), all.end());
    const Spectrum s = dirichlet_ball({3, 1.0}, 40);
    for (int i = 0; i < 40; ++i) EXPECT_NEAR(s.values[i], all[i], 1e-8) << i;
}

TEST(NeumannBall, DiskMu1) {
    const double mu1 = neumann_ball_mu1({2, 1.0});
    EXPECT_NEAR(mu1, 3.38996, 1e-4);
    EXPECT_NEAR(mu1, 1.8411837813406593 * 1.8411837813406593, 1e-10);
    EXPECT_LT(mu1, dirichlet_ball({2, 1.0}, 1).values[0]);
    EXPECT_NEAR(neumann_ball_mu1({2, 3.0}), mu1 / 9.0, 1e-12);
}

TEST(NeumannBall, SpectrumStartsWithZeroMode) {
    for (int n = 2; n <= 4; ++n) {
        const Spectrum s = neumann_ball({n, 1.0}, n + 3);
        s.validate();
        EXPECT_EQ(s.values[0], 0.0);
        EXPECT_NEAR(s.values[1], neumann_ball_mu1({n, 1.0}), 1e-12);
        for (int i = 2; i <= n; ++i) EXPECT_EQ(s.values[i], s.values[1]);
    }
}

TEST(ClampedBall, RatiosForLowDimensions) {
    const Spectrum s2 = clamped_ball({2, 1.0}, 2);
    const Spectrum s3 = clamped_ball({3, 1.0}, 2);
    s2.validate();
    EXPECT_NEAR(s2.values[1] / s2.values[0], 4.3311, 1e-3);
    EXPECT_NEAR(s3.values[1] / s3.values[0], 3.2390, 1e-3);
}

TEST(ClampedBall, RootAgainstSeriesSecularFunction) {
    for (int n : {2, 3, 5}) {
        for (int ell : {0, 1}) {
            const long double nu = 0.5L * n - 1.0L + ell;
            const double ref = oracle::kth_root(
                [nu](long double x) {
                    return oracle::series_j(nu, x) * oracle::series_i(nu + 1, x) +
                           oracle::series_i(nu, x) * oracle::series_j(nu + 1, x);
                },
                1, 0.05, 0.01);
            EXPECT_NEAR(clamped_ball_root(n, ell), ref, 1e-10) << n << " " << ell;
        }
    }
    EXPECT_NEAR(clamped_ball_root(2, 0), 3.196220616582541, 1e-12);
}

TEST(ClampedBall, Scaling) {
    const Spectrum a = clamped_ball({2, 1.0}, 2);
    const Spectrum b = clamped_ball({2, 2.0}, 2);
    for (int i = 0; i < 2; ++i) EXPECT_NEAR(b.values[i], a.values[i] / 16.0, 1e-12 * a.values[i]);
    EXPECT_THROW(clamped_ball({2, 1.0}, 3), std::invalid_argument);
}

TEST(BucklingBall, FirstValueAndRatio) {
    const Spectrum s = buckling_ball({2, 1.0}, 2);
    s.validate();
    const double j11 = bessel_zero(1, 1).value;
    EXPECT_EQ(s.values[0], j11 * j11);
    EXPECT_NEAR(s.values[1] / s.values[0], 1.796, 1e-2);
}

TEST(BucklingBall, SecondValueIsNextOrderZero) {
    // The ℓ = 1 determinant reduces to x J_{n/2+1}(x).
    for (int n = 2; n <= 6; ++n) {
        const double z = bessel_zero(0.5 * n + 1.0, 1).value;
        EXPECT_NEAR(buckling_ball_root(n, 1), z, 1e-10);
        EXPECT_NEAR(buckling_ball_root(n, 0), bessel_zero(0.5 * n, 1).value, 1e-10);
    }
}

TEST(BucklingBall, PayneEqualityWithDirichletLambda2) {
    for (int n = 2; n <= 5; ++n) {
        const BallSpec b{n, 1.3};
        EXPECT_EQ(buckling_ball(b, 1).values[0], dirichlet_ball(b, 2).values[1]);
    }
}

TEST(BucklingBall, MatchesVolumeForm) {
    // Λ₁(Ω*) = (C_n/|Ω|)^{2/n} j²_{n/2,1}
    for (int n = 2; n <= 6; ++n) {
        const double vol = 2.7;
        const BallSpec b = ball_of_volume(n, vol);
        const double j = bessel_zero(0.5 * n, 1).value;
        const double ref = std::pow(unit_ball_volume(n) / vol, 2.0 / n) * j * j;
        EXPECT_NEAR(buckling_ball(b, 1).values[0], ref, 1e-12 * ref);
    }
}

TEST(Rectangle, ThirtyFiveElevenths) {
    const Spectrum s = rectangle_spectrum(std::sqrt(8.0), std::sqrt(3.0), ProblemKind::dirichlet, 3);
    EXPECT_NEAR(s.values[2] / s.values[0], 35.0 / 11.0, 1e-12);
}

TEST(Rectangle, SquareValues) {
    const Spectrum d = rectangle_spectrum(1, 1, ProblemKind::dirichlet, 4);
    d.validate();
    EXPECT_NEAR(d.values[0], 2 * pi * pi, 1e-12);
    EXPECT_EQ(d.values[1], d.values[2]);
    EXPECT_NEAR(d.values[3], 8 * pi * pi, 1e-12);
    const Spectrum nm = rectangle_spectrum(1, 1, ProblemKind::neumann, 4);
    nm.validate();
    EXPECT_EQ(nm.values[0], 0.0);
    EXPECT_NEAR(nm.values[1], pi * pi, 1e-12);
    EXPECT_NEAR(nm.values[3], 2 * pi * pi, 1e-12);
    EXPECT_THROW(rectangle_spectrum(1, 1, ProblemKind::clamped, 2), std::invalid_argument);
}
