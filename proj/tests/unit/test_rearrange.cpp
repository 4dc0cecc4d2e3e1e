#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numeric>
#include <random>

#include "isospec/rearrange.hpp"

using namespace isospec;

namespace {

std::shared_ptr<const GridDomain> grid(const std::string& shape, double h) {
    return std::make_shared<const GridDomain>(rasterize(Shape::parse(shape), h, shape));
}

GridFunction sample(const std::shared_ptr<const GridDomain>& d, const std::function<double(double, double)>& fn) {
    std::vector<double> v;
    for (const auto& [i, j] : d->nodes) v.push_back(fn(d->x(i), d->y(j)));
    return GridFunction(d, v);
}

GridFunction random_function(const std::shared_ptr<const GridDomain>& d, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> v(d->node_count());
    for (double& x : v) x = g(rng);
    return GridFunction(d, v);
}

}  // namespace

TEST(Distribution, ConstantOnUnitSquare) {
    const auto d = grid("rectangle:1,1", 1.0 / 32);
    const GridFunction f = sample(d, [](double, double) { return 1.0; });
    EXPECT_NEAR(distribution(f, 0.5), 1.0, 2.0 / 32 + 1e-12);
    EXPECT_DOUBLE_EQ(distribution(f, 0.5), f.measure());
    EXPECT_EQ(distribution(f, 1.5), 0.0);
}

TEST(Distribution, TwoValuedHalfArea) {
    const auto d = grid("rectangle:1,1", 1.0 / 16);
    std::vector<double> v(d->node_count());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = k % 2 ? 3.0 : 1.0;
    const GridFunction f(d, v);
    const double half = f.cell_area() * double(v.size() / 2);
    EXPECT_DOUBLE_EQ(distribution(f, 2.0), half);
}

TEST(Distribution, SignedAndNonincreasing) {
    const auto d = grid("ellipse:2,1", 0.1);
    std::mt19937_64 rng(7);
    const GridFunction f = random_function(d, rng);
    EXPECT_GE(distribution(f, 0.5), distribution(f, 0.5, true));
    double prev = INFINITY;
    for (double t = 0.0; t < 4.0; t += 0.05) {
        const double m = distribution(f, t);
        EXPECT_LE(m, prev);
        prev = m;
    }
}

TEST(DecreasingRearrangement, SortOracle) {
    const auto d = grid("lshape:2,1", 0.125);
    std::mt19937_64 rng(11);
    const GridFunction f = random_function(d, rng);
    std::vector<double> oracle;
    for (double x : f.values) oracle.push_back(std::abs(x));
    std::sort(oracle.begin(), oracle.end());
    std::reverse(oracle.begin(), oracle.end());
    const DecreasingProfile p = decreasing_rearrangement(f);
    EXPECT_EQ(p.values, oracle);
    EXPECT_DOUBLE_EQ(p.cell, f.cell_area());
}

TEST(DecreasingRearrangement, ConstantStaysConstant) {
    const auto d = grid("disk:1", 1.0 / 16);
    const DecreasingProfile p = decreasing_rearrangement(sample(d, [](double, double) { return 2.5; }));
    for (double s = 0.0; s <= p.total_measure(); s += 0.01) EXPECT_EQ(p.at(s), 2.5);
}

TEST(DecreasingRearrangement, StepIsLeftContinuousInfimum) {
    const auto d = grid("rectangle:0.35,0.25", 0.1);
    const GridFunction f(d, {5, 1, 4, 2, 6, 3});
    const DecreasingProfile p = decreasing_rearrangement(f);
    const double c = p.cell;
    EXPECT_EQ(p.at(0.0), 6.0);
    EXPECT_EQ(p.at(c), 6.0);
    EXPECT_EQ(p.at(1.5 * c), 5.0);
    EXPECT_EQ(p.at(6 * c), 1.0);
    // inf{t : μ(t) < s} by brute force over the value set
    for (double s = 0.01 * c; s < 6 * c; s += 0.1 * c) {
        double inf = INFINITY;
        for (double t : f.values)
            if (distribution(f, t) < s) inf = std::min(inf, t);
        EXPECT_EQ(p.at(s), inf) << s / c;
    }
    EXPECT_DOUBLE_EQ(p.integral_to(2.5 * c), c * (6 + 5 + 0.5 * 4));
}

TEST(Equimeasurability, DistributionsAgreeOnValueSet) {
    const auto d = grid("ellipse:2,1", 1.0 / 16);
    std::mt19937_64 rng(3);
    const GridFunction f = random_function(d, rng);
    const DecreasingProfile p = decreasing_rearrangement(f, true);
    for (double t : f.values) {
        const double mf = distribution(f, t, true);
        const auto cnt = std::count_if(p.values.begin(), p.values.end(), [t](double x) { return x > t; });
        EXPECT_EQ(mf, p.cell * double(cnt));
    }
}

TEST(Equimeasurability, SquaredIntegralPreserved) {
    const auto d = grid("lshape:2,1", 1.0 / 32);
    const GridFunction f = sample(d, [](double x, double y) { return std::sin(3 * x) * std::cos(2 * y) + 0.3; });
    const DecreasingProfile p = decreasing_rearrangement(f, true);
    double a = 0.0, b = 0.0;
    for (double x : f.values) a += x * x;
    for (double x : p.values) b += x * x;
    EXPECT_NEAR(a * f.cell_area(), b * p.cell, 1e-12 * a * f.cell_area());
}

TEST(SphericalRearrangement, RadialDecreasingIsFixed) {
    const double h = 1.0 / 64;
    const auto d = grid("disk:1", h);
    const GridFunction f = sample(d, [](double x, double y) { return 1.0 - (x * x + y * y); });
    const RadialProfile p = spherical_rearrangement(f);
    EXPECT_NEAR(p.R, 1.0, 1e-15);
    const double lip = 2.0;
    for (std::size_t i = 0; i < p.radii.size(); ++i) {
        const double r = p.radii[i];
        EXPECT_NEAR(p.values[i], 1.0 - r * r, 2 * h * lip) << r;
        if (i) EXPECT_LE(p.values[i], p.values[i - 1]);
    }
}

TEST(SphericalRearrangement, IncreasingIsReversal) {
    const auto d = grid("rectangle:2,1", 1.0 / 16);
    std::mt19937_64 rng(5);
    const GridFunction f = random_function(d, rng);
    const DecreasingProfile dp = decreasing_rearrangement(f);
    const RadialProfile up = spherical_increasing_rearrangement(f);
    const RadialProfile dn = spherical_rearrangement(f);
    const std::size_t n = dp.values.size();
    EXPECT_EQ(up.values.front(), dp.values.back());
    EXPECT_EQ(up.values.back(), dp.values.front());
    for (std::size_t i = 0; i < up.values.size(); ++i) {
        // same step index, read from the other end
        const auto idx = std::size_t(std::find(dp.values.begin(), dp.values.end(), dn.values[i]) - dp.values.begin());
        EXPECT_EQ(up.values[i], dp.values[n - 1 - idx]) << i;
        if (i) EXPECT_GE(up.values[i], up.values[i - 1]);
    }
}

TEST(SphericalRearrangement, L2PreservedInVolumeVariable) {
    const auto d = grid("ellipse:2,1", 1.0 / 32);
    const GridFunction f = sample(d, [](double x, double y) { return std::exp(-x * x - 3 * y * y); });
    const DecreasingProfile p = decreasing_rearrangement(f);
    const double node_sum = std::inner_product(f.values.begin(), f.values.end(), f.values.begin(), 0.0);
    // ∫_{Ω*} (f^⋆)² = ∫₀^{|Ω|} f*(s)² ds exactly for the step profile
    double ball = 0.0;
    for (double x : p.values) ball += x * x * p.cell;
    EXPECT_NEAR(ball, node_sum * f.cell_area(), 1e-12 * node_sum * f.cell_area());
}

TEST(SphericalRearrangement, MonotoneMap) {
    const auto d = grid("lshape:2,1", 1.0 / 16);
    std::mt19937_64 rng(9);
    const GridFunction f = random_function(d, rng);
    std::vector<double> gv = f.values;
    std::uniform_real_distribution<double> u(0.0, 0.5);
    for (double& x : gv) x += u(rng);
    const GridFunction g(d, gv);
    const RadialProfile fs = spherical_rearrangement(f, true), gs = spherical_rearrangement(g, true);
    for (std::size_t i = 0; i < fs.values.size(); ++i) EXPECT_LE(fs.values[i], gs.values[i]);
}

TEST(ProductBound, ConstantGIsTight) {
    const auto d = grid("ellipse:2,1", 1.0 / 16);
    std::mt19937_64 rng(1);
    const GridFunction f = random_function(d, rng);
    const ProductBoundReport r = product_bound_check(f, sample(d, [](double, double) { return 1.0; }));
    EXPECT_NEAR(r.lhs, r.upper, 1e-12);
    EXPECT_NEAR(r.lhs, r.lower, 1e-12);
    EXPECT_TRUE(r.holds);
}

TEST(ProductBound, SelfProductMeetsUpperBound) {
    const auto d = grid("rectangle:1,1", 1.0 / 16);
    std::mt19937_64 rng(2);
    const GridFunction f = random_function(d, rng);
    const ProductBoundReport r = product_bound_check(f, f);
    EXPECT_NEAR(r.lhs, r.upper, 1e-12 * r.upper);
    EXPECT_TRUE(r.holds);
}

TEST(ProductBound, SignPatternsMatchPermutationOracle) {
    const auto d = grid("rectangle:0.35,0.25", 0.1);
    ASSERT_EQ(d->node_count(), 6u);
    std::mt19937_64 rng(4);
    std::bernoulli_distribution coin(0.5);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> fv(6), gv(6);
        for (auto& x : fv) x = coin(rng) ? 1.0 : -1.0;
        for (auto& x : gv) x = trial % 2 ? g(rng) : (coin(rng) ? 1.0 : -1.0);
        const GridFunction f(d, fv), gf(d, gv);
        const ProductBoundReport r = product_bound_check(f, gf);
        std::vector<int> perm(6);
        std::iota(perm.begin(), perm.end(), 0);
        double hi = -INFINITY, lo = INFINITY;
        do {
            double s = 0.0;
            for (int k = 0; k < 6; ++k) s += fv[std::size_t(k)] * gv[std::size_t(perm[std::size_t(k)])];
            hi = std::max(hi, s);
            lo = std::min(lo, s);
        } while (std::next_permutation(perm.begin(), perm.end()));
        EXPECT_NEAR(r.upper, hi * f.cell_area(), 1e-14);
        EXPECT_NEAR(r.lower, lo * f.cell_area(), 1e-14);
        EXPECT_TRUE(r.holds);
    }
}

TEST(ProductBound, ThousandRandomPairs) {
    const auto d = grid("lshape:2,1", 1.0 / 8);
    std::mt19937_64 rng(12345);
    int violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const GridFunction f = random_function(d, rng), g = random_function(d, rng);
        if (!product_bound_check(f, g).holds) ++violations;
    }
    EXPECT_EQ(violations, 0);
}

TEST(ProductBound, RejectsMismatchedDomains) {
    const auto a = grid("rectangle:1,1", 0.25), b = grid("rectangle:2,1", 0.25);
    const GridFunction f(a, std::vector<double>(a->node_count(), 1.0));
    const GridFunction g(b, std::vector<double>(b->node_count(), 1.0));
    EXPECT_THROW(product_bound_check(f, g), std::invalid_argument);
}

TEST(Talenti, DiskConstantSourceNearEquality) {
    const double h = 1.0 / 32;
    const auto d = grid("disk:1", h);
    const TalentiReport rep = talenti_compare(sample(d, [](double, double) { return 1.0; }));
    for (std::size_t i = 0; i < rep.v.radii.size(); ++i) {
        const double r = rep.v.radii[i];
        EXPECT_NEAR(rep.v.values[i], (1 - r * r) / 4, 1e-3) << r;
        EXPECT_NEAR(rep.u_star.values[i], (1 - r * r) / 4, 0.25 * 2 * h) << r;
    }
    EXPECT_TRUE(rep.dominated);
}

TEST(Talenti, CalibrationConstantCoversDisk) {
    for (double h : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
        const TalentiReport rep = talenti_compare(sample(grid("disk:1", h), [](double, double) { return 1.0; }));
        EXPECT_GT(rep.max_violation, 0.5 * rep.tolerance / kTalentiC);
        EXPECT_TRUE(rep.dominated) << h;
    }
}

TEST(Talenti, SquareDominated) {
    const TalentiReport rep = talenti_compare(sample(grid("rectangle:1,1", 1.0 / 32), [](double, double) { return 1.0; }));
    EXPECT_TRUE(rep.dominated);
    EXPECT_LE(rep.max_violation, rep.tolerance);
}

TEST(Talenti, ShiftedSourceWithNegativePart) {
    // f = g - 0.1 with g ∈ [0, 1.2] has a small negative part and ∫f > 0.
    const auto d = grid("rectangle:1,1", 1.0 / 32);
    const GridFunction f = sample(d, [](double x, double y) { return 0.6 + 0.6 * std::cos(3 * x + y) - 0.1; });
    ASSERT_LT(*std::min_element(f.values.begin(), f.values.end()), 0.0);
    const TalentiReport rep = talenti_compare(f);
    EXPECT_TRUE(rep.dominated);
    for (std::size_t i = 1; i < rep.v.values.size(); ++i) EXPECT_LE(rep.v.values[i], rep.v.values[i - 1] + 1e-15);
}

TEST(Talenti, HypothesisFailureReported) {
    const auto d = grid("rectangle:1,1", 1.0 / 16);
    EXPECT_THROW(talenti_compare(sample(d, [](double, double) { return -1.0; })), TalentiHypothesisError);
    // ∫f > 0 but u strongly negative on the left half
    EXPECT_THROW(talenti_compare(sample(d, [](double x, double) { return x < 0.5 ? -1.0 : 1.2; })),
                 TalentiHypothesisError);
}

TEST(Talenti, ViolationShrinksWithMesh) {
    for (const char* s : {"rectangle:1,1", "ellipse:2,1", "lshape:2,1"}) {
        double prev = 0.0;
        for (double h : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
            const TalentiReport rep = talenti_compare(sample(grid(s, h), [](double, double) { return 1.0; }));
            EXPECT_TRUE(rep.dominated) << s << " " << h;
            if (prev > 0.0) EXPECT_GE(prev / rep.integrated_violation, 1.8) << s << " " << h;
            prev = rep.integrated_violation;
        }
    }
}

TEST(DirichletEnergy, RearrangementDoesNotIncreaseEnergy) {
    // f = 1 - (x/2)² - y² on the 2:1 ellipse has f^⋆ = 1 - r²/2 on the disk of radius √2.
    for (double h : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
        const GridFunction f =
            sample(grid("ellipse:2,1", h), [](double x, double y) { return 1.0 - x * x / 4 - y * y; });
        const GridFunction fs = to_symmetric_grid(spherical_rearrangement(f), f);
        const double ef = dirichlet_energy(f), es = dirichlet_energy(fs);
        EXPECT_NEAR(ef, 2.5 * std::numbers::pi, 5 * h);
        EXPECT_NEAR(es, 2.0 * std::numbers::pi, 5 * h);
        EXPECT_LT(es, ef);
    }
}

TEST(DirichletEnergy, SymmetricInputExcessWithinHalvingAllowance) {
    // f already radial and decreasing: E(f^⋆) - E(f) is pure discretization,
    // bounded by ε(h) = h·E(f)/4.
    for (double h : {1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128}) {
        const GridFunction f = sample(grid("disk:1", h), [](double x, double y) { return 1.0 - x * x - y * y; });
        const GridFunction fs = to_symmetric_grid(spherical_rearrangement(f), f);
        const double ef = dirichlet_energy(f);
        EXPECT_LE(dirichlet_energy(fs), ef + 0.25 * h * ef) << h;
    }
}
