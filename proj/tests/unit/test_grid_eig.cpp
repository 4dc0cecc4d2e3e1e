#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <map>
#include <random>

#include "isospec/ball_spectra.hpp"
#include "isospec/grid_eig.hpp"

using namespace isospec;

namespace {
const double pi = std::numbers::pi;

double discrete_square(int p, int q, double h) {
    const double sp = std::sin(p * pi * h / 2), sq = std::sin(q * pi * h / 2);
    return 4.0 / (h * h) * (sp * sp + sq * sq);
}

double max_asymmetry(const SparseMatrix& A) {
    const Eigen::MatrixXd D(A);
    return (D - D.transpose()).cwiseAbs().maxCoeff();
}
}  // namespace

TEST(Rasterize, UnitSquareQuarter) {
    const GridDomain d = rasterize(Shape::rectangle(1, 1), 0.25);
    EXPECT_EQ(d.node_count(), 9u);
    EXPECT_GE(d.node(1, 1), 0);
    EXPECT_EQ(d.node(0, 1), -1);
    EXPECT_EQ(d.node(4, 2), -1);
}

TEST(Rasterize, DiskAreaByDirectCount) {
    const double h = 1.0 / 128;
    long count = 0;
    for (int i = -130; i <= 130; ++i)
        for (int j = -130; j <= 130; ++j) count += (i * h) * (i * h) + (j * h) * (j * h) < 1.0;
    const GridDomain d = rasterize(Shape::disk(1), h);
    EXPECT_EQ(long(d.node_count()), count);
    EXPECT_NEAR(d.node_count() * h * h, pi, 0.03 * pi);
}

TEST(Rasterize, AreaGapBoundedByPerimeter) {
    for (const char* desc : {"disk:1", "ellipse:2,1", "rectangle:2,1", "lshape:2,1", "annulus:0.5,1",
                             "polygon:0,0;2,0;1,1.5"}) {
        const Shape s = Shape::parse(desc);
        for (double h : {1.0 / 16, 1.0 / 64}) {
            const GridDomain d = rasterize(s, h);
            const double gap = std::abs(d.node_count() * h * h - s.area()) / s.area();
            EXPECT_LE(gap, 2 * s.perimeter() * h / s.area()) << desc << " h=" << h;
        }
    }
}

TEST(Rasterize, Errors) {
    EXPECT_THROW(rasterize(Shape::rectangle(0.05, 0.05), 0.1), DomainError);
    EXPECT_THROW(rasterize(Shape::disk(1), 0.0), DomainError);
    // two unit squares joined by a neck thinner than the mesh
    const Shape dumbbell = Shape::parse("polygon:0,0;1,0;1,0.52;2,0.52;2,0;3,0;3,1;2,1;2,0.58;1,0.58;1,1;0,1");
    EXPECT_THROW(rasterize(dumbbell, 0.1), DomainError);
}

TEST(Assemble, SquareQuarterSmallestEigenvalue) {
    const double h = 0.25;
    const DiscreteOperator op = assemble(rasterize(Shape::rectangle(1, 1), h), ProblemKind::dirichlet);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(op.A)};
    const double s = std::sin(pi * h / 2);
    EXPECT_NEAR(es.eigenvalues()[0], 4.0 / (h * h) * 2.0 * s * s, 1e-12);
}

TEST(Assemble, ExactSymmetryForAllKinds) {
    const GridDomain d = rasterize(Shape::disk(1), 1.0 / 12);
    for (ProblemKind k : {ProblemKind::dirichlet, ProblemKind::neumann, ProblemKind::clamped, ProblemKind::buckling}) {
        const DiscreteOperator op = assemble(d, k);
        EXPECT_EQ(max_asymmetry(op.A), 0.0) << to_string(k);
        if (op.has_mass()) EXPECT_EQ(max_asymmetry(op.B), 0.0);
    }
}

TEST(Assemble, NeumannRowsAnnihilateConstants) {
    const DiscreteOperator op = assemble(rasterize(Shape::ellipse(2, 1), 1.0 / 16), ProblemKind::neumann);
    const Eigen::VectorXd one = Eigen::VectorXd::Ones(op.dim());
    EXPECT_LT((op.A * one).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_NEAR(op.B.diagonal().sum() * op.h * op.h, 2 * pi, 0.01);
}

TEST(Assemble, ClampedDiffersFromSquaredLaplacian) {
    const GridDomain d = rasterize(Shape::rectangle(1, 1), 1.0 / 16);
    const DiscreteOperator cl = assemble(d, ProblemKind::clamped);
    const DiscreteOperator di = assemble(d, ProblemKind::dirichlet);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> a{Eigen::MatrixXd(cl.A)};
    const Eigen::MatrixXd L(di.A);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> b{Eigen::MatrixXd(L * L)};
    EXPECT_GT(a.eigenvalues()[0] / b.eigenvalues()[0] - 1.0, 0.01);
}

TEST(SmallestEigs, SquareMatchesDiscreteClosedForm) {
    const double h = 1.0 / 64;
    const Spectrum s = smallest_eigs(assemble(rasterize(Shape::rectangle(1, 1), h), ProblemKind::dirichlet), 3);
    s.validate();
    EXPECT_NEAR(s.values[0], discrete_square(1, 1, h), 1e-9 * s.values[0]);
    EXPECT_NEAR(s.values[1], discrete_square(1, 2, h), 1e-9 * s.values[1]);
    EXPECT_NEAR(s.values[2], discrete_square(2, 1, h), 1e-9 * s.values[2]);
}

TEST(SmallestEigs, DenseAndSparsePathsAgree) {
    const DiscreteOperator op = assemble(rasterize(Shape::lshape(2, 1), 1.0 / 16), ProblemKind::neumann);
    EigenSolverOptions dense;
    dense.dense_cutoff = 100000;
    const Spectrum a = smallest_eigs(op, 6);
    const Spectrum b = smallest_eigs(op, 6, dense);
    for (int i = 1; i < 6; ++i) EXPECT_NEAR(a.values[i], b.values[i], 1e-9 * b.values[i]);
    EXPECT_LE(std::abs(a.values[0]), 1e-8 * a.values[1]);
}

TEST(SmallestEigs, ResidualsAndEigenvectors) {
    const DiscreteOperator op = assemble(rasterize(Shape::disk(1), 1.0 / 32), ProblemKind::buckling);
    const EigenPairs p = smallest_eigpairs(op, 4);
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_LE(p.residuals[k], 1e-8);
        EXPECT_NEAR(rayleigh_quotient(op, p.vectors.col(Eigen::Index(k))), p.values[k], 1e-10 * p.values[k]);
        EXPECT_GT(p.values[k], 0.0);
    }
}

TEST(SmallestEigs, RejectsBadCount) {
    const DiscreteOperator op = assemble(rasterize(Shape::rectangle(1, 1), 0.25), ProblemKind::dirichlet);
    EXPECT_THROW(smallest_eigs(op, 0), std::invalid_argument);
    EXPECT_THROW(smallest_eigs(op, 10), std::invalid_argument);
}

TEST(SmallestEigs, BudgetExhaustionReportsResiduals) {
    const DiscreteOperator op = assemble(rasterize(Shape::disk(1), 1.0 / 32), ProblemKind::dirichlet);
    EigenSolverOptions tight;
    tight.max_basis = 12;
    tight.ritz_tol = 1e-15;
    try {
        smallest_eigs(op, 4, tight);
        FAIL() << "expected SolverError";
    } catch (const SolverError& e) {
        EXPECT_EQ(e.residuals().size(), 4u);
    }
}

TEST(RayleighQuotient, BoundsAndErrors) {
    const DiscreteOperator op = assemble(rasterize(Shape::ellipse(2, 1), 1.0 / 16), ProblemKind::dirichlet);
    const double lmin = smallest_eigs(op, 1).values[0];
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int t = 0; t < 20; ++t) {
        Eigen::VectorXd x(op.dim());
        for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = u(rng);
        EXPECT_GE(rayleigh_quotient(op, x), lmin * (1 - 1e-10));
    }
    EXPECT_THROW(rayleigh_quotient(op, Eigen::VectorXd::Zero(op.dim())), std::invalid_argument);
    EXPECT_THROW(rayleigh_quotient(op, Eigen::VectorXd::Ones(3)), std::invalid_argument);
}

TEST(RayleighQuotient, BucklingRatioFromExplicitStencils) {
    // Numerator: Σ (Δ_h v)² over interior nodes + ½ Σ (2/h² Σ interior neighbours)²
    // over exterior ghosts; denominator: Σ over edges of squared differences
    // (exterior values zero), all divided by h⁰ consistently.
    const double h = 1.0 / 10;
    const GridDomain d = rasterize(Shape::disk(1), h);
    const DiscreteOperator op = assemble(d, ProblemKind::buckling);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1, 1);
    Eigen::VectorXd v(op.dim());
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = u(rng);
    auto val = [&](int i, int j) {
        const int k = d.node(i, j);
        return k >= 0 ? v[k] : 0.0;
    };
    double lap2 = 0.0, grad2 = 0.0;
    std::map<std::pair<int, int>, double> ghost;
    for (std::size_t r = 0; r < d.nodes.size(); ++r) {
        const auto [i, j] = d.nodes[r];
        const double lap = (val(i + 1, j) + val(i - 1, j) + val(i, j + 1) + val(i, j - 1) - 4 * v[Eigen::Index(r)]) / (h * h);
        lap2 += lap * lap;
        for (auto [a, b] : {std::pair{i + 1, j}, std::pair{i - 1, j}, std::pair{i, j + 1}, std::pair{i, j - 1}})
            if (d.node(a, b) < 0) ghost[{a, b}] += 2.0 * v[Eigen::Index(r)] / (h * h);
    }
    for (const auto& [key, g] : ghost) lap2 += 0.5 * g * g;
    for (int i = d.i0; i < d.i0 + d.nx - 1; ++i)
        for (int j = d.j0; j < d.j0 + d.ny - 1; ++j) {
            const double dx = val(i + 1, j) - val(i, j), dy = val(i, j + 1) - val(i, j);
            grad2 += (dx * dx + dy * dy) / (h * h);
        }
    EXPECT_NEAR(rayleigh_quotient(op, v), lap2 / grad2, 1e-10 * lap2 / grad2);
}

TEST(Extrapolate, FixedPointAndMetadata) {
    Spectrum c;
    c.kind = ProblemKind::dirichlet;
    c.values = {1.0, 2.0};
    c.domain_label = "x";
    c.mesh_width = 0.2;
    Spectrum f = c;
    f.mesh_width = 0.1;
    const Spectrum e = extrapolate(c, f);
    EXPECT_EQ(e.values, c.values);
    EXPECT_EQ(e.provenance, Provenance::discrete_extrapolated);
    EXPECT_EQ(e.uncertainty, (std::vector<double>{0.0, 0.0}));
    Spectrum g = f;
    g.mesh_width = 0.05;
    EXPECT_THROW(extrapolate(c, g), std::invalid_argument);
    g = f;
    g.domain_label = "y";
    EXPECT_THROW(extrapolate(c, g), std::invalid_argument);
    g = f;
    g.kind = ProblemKind::neumann;
    EXPECT_THROW(extrapolate(c, g), std::invalid_argument);
    g = f;
    g.values.push_back(3.0);
    EXPECT_THROW(extrapolate(c, g), std::invalid_argument);
}

TEST(Extrapolate, SquareFundamentalMode) {
    const auto st = convergence_study(Shape::rectangle(1, 1), "square", ProblemKind::dirichlet, 1.0 / 32, 2, 1);
    EXPECT_NEAR(st.extrapolated.values[0], 2 * pi * pi, 1e-4 * 2 * pi * pi);
}

TEST(Extrapolate, DiskRatioAndFundamental) {
    const auto st = convergence_study(Shape::disk(1), "disk", ProblemKind::dirichlet, 1.0 / 64, 2, 3);
    const double j01 = bessel_zero(0, 1).value;
    EXPECT_NEAR(st.extrapolated.values[0], j01 * j01, 0.005 * j01 * j01);
    EXPECT_NEAR(st.extrapolated.values[1] / st.extrapolated.values[0], 2.5387, 5e-3);
}

TEST(Extrapolate, NeumannSquare) {
    const auto st = convergence_study(Shape::rectangle(1, 1), "square", ProblemKind::neumann, 1.0 / 16, 2, 3);
    EXPECT_LE(std::abs(st.extrapolated.values[0]), 1e-8 * st.extrapolated.values[1]);
    EXPECT_NEAR(st.extrapolated.values[1], pi * pi, 0.01 * pi * pi);
}

TEST(Extrapolate, NeumannDiskAgainstRadialZero) {
    const auto st = convergence_study(Shape::disk(1), "disk", ProblemKind::neumann, 1.0 / 32, 2, 2);
    const double mu1 = neumann_ball_mu1({2, 1.0});
    EXPECT_NEAR(st.levels[1].values[1], mu1, 0.01 * mu1);
    EXPECT_NEAR(st.extrapolated.values[1], mu1, 0.01 * mu1);
}

TEST(Extrapolate, ClampedAndBucklingDisk) {
    const auto cl = convergence_study(Shape::disk(1), "disk", ProblemKind::clamped, 1.0 / 32, 2, 2);
    const double g1 = clamped_ball({2, 1.0}, 1).values[0];
    EXPECT_NEAR(cl.extrapolated.values[0], g1, 0.03 * g1);
    const auto bk = convergence_study(Shape::disk(1), "disk", ProblemKind::buckling, 1.0 / 32, 2, 3);
    EXPECT_NEAR(bk.extrapolated.values[1] / bk.extrapolated.values[0], 1.796, 1e-2);
    for (double v : bk.extrapolated.values) EXPECT_GT(v, 0.0);
}

TEST(GridProperties, DomainMonotonicityForNestedRectangles) {
    const double h = 1.0 / 32;
    const Spectrum small = smallest_eigs(assemble(rasterize(Shape::rectangle(1, 0.75), h), ProblemKind::dirichlet), 6);
    const Spectrum big = smallest_eigs(assemble(rasterize(Shape::rectangle(1.5, 1), h), ProblemKind::dirichlet), 6);
    for (int k = 0; k < 6; ++k) EXPECT_GE(small.values[k], big.values[k]);
}

TEST(GridProperties, DiskHasSmallestFundamentalAmongEqualAreas) {
    const double h = 1.0 / 32;
    auto l1 = [&](const Shape& s) {
        return convergence_study(s, "s", ProblemKind::dirichlet, h, 2, 1).extrapolated.values[0];
    };
    const double disk = l1(Shape::disk(1));
    EXPECT_LT(disk, l1(Shape::rectangle(std::sqrt(pi), std::sqrt(pi))));
    EXPECT_LT(disk, l1(Shape::rectangle(std::sqrt(2 * pi), std::sqrt(pi / 2))));
}

TEST(GridProperties, SecondOrderConvergenceOnRectangles) {
    for (const Shape& s : {Shape::rectangle(1, 1), Shape::rectangle(2, 1)}) {
        const auto st = convergence_study(s, "r", ProblemKind::dirichlet, 1.0 / 8, 4, 3);
        const Spectrum& ref = st.extrapolated;
        for (int k = 0; k < 3; ++k) {
            const double e0 = std::abs(st.levels[1].values[k] - ref.values[k]);
            const double e1 = std::abs(st.levels[2].values[k] - ref.values[k]);
            EXPECT_GE(e0 / e1, 3.5) << k;
        }
    }
}
