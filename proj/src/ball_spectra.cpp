#include "isospec/ball_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

#include "isospec/specfun.hpp"

namespace isospec {
namespace {

std::string ball_label(const BallSpec& b) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "ball(n=%d,R=%.12g)", b.dimension, b.radius);
    return buf;
}

void check_count(int count, const char* who) {
    if (count < 1) throw std::invalid_argument(std::string(who) + ": count must be ≥ 1");
}

// Scan x upward from `step` until f changes sign, then refine with Brent.
template <class F>
double first_positive_root(F&& f, double step, double limit) {
    double x0 = step;
    double f0 = f(x0);
    while (x0 < limit) {
        const double x1 = x0 + step;
        const double f1 = f(x1);
        if (f1 == 0.0) return x1;
        if ((f0 > 0.0) != (f1 > 0.0)) return brent_root(f, x0, x1, 1e-15);
        x0 = x1;
        f0 = f1;
    }
    throw ConvergenceError("secular root scan found no sign change below " + std::to_string(limit));
}

// Merge angular families: `zeros(ℓ, count)` returns the first radial roots for
// index ℓ; the ℓ = 0 list bounds the answer, and families whose first root
// exceeds that bound are skipped. Roots are squared and scaled by 1/R².
template <class Z>
std::vector<double> merge_families(int n, int count, double radius, Z&& zeros) {
    std::vector<double> base = zeros(0, count);
    const double bound = base.back();
    std::vector<double> roots;
    for (double z : base) roots.push_back(z);
    for (int ell = 1;; ++ell) {
        const std::vector<double> fam = zeros(ell, count);
        if (fam.front() > bound) break;
        const long mult = harmonic_multiplicity(n, ell);
        for (double z : fam) {
            if (z > bound) break;
            for (long r = 0; r < mult; ++r) roots.push_back(z);
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.resize(static_cast<std::size_t>(count));
    std::vector<double> values;
    values.reserve(roots.size());
    for (double z : roots) values.push_back((z / radius) * (z / radius));
    return values;
}

}  // namespace

double BallSpec::volume() const {
    return unit_ball_volume(dimension) * std::pow(radius, dimension);
}

void BallSpec::validate() const {
    if (dimension < 2) throw std::invalid_argument("ball dimension must be ≥ 2");
    if (!(radius > 0.0) || !std::isfinite(radius)) throw std::invalid_argument("ball radius must be > 0");
}

BallSpec ball_of_volume(int n, double volume) {
    if (!(volume > 0.0)) throw std::invalid_argument("ball_of_volume: volume must be > 0");
    BallSpec b{n, std::pow(volume / unit_ball_volume(n), 1.0 / n)};
    b.validate();
    return b;
}

double clamped_secular(int n, int ell, double x) {
    const double nu = 0.5 * n - 1.0 + ell;
    return bessel_j(nu, x) * bessel_i(nu + 1.0, x) + bessel_i(nu, x) * bessel_j(nu + 1.0, x);
}

double buckling_secular(int n, int ell, double x) {
    const double nu = 0.5 * n - 1.0 + ell;
    const double j = bessel_j(nu, x);
    const double radial_derivative = (1.0 - 0.5 * n) * j + x * bessel_j_prime(nu, x);
    return ell * j - radial_derivative;
}

double clamped_ball_root(int n, int ell) {
    if (n < 2 || ell < 0) throw std::invalid_argument("clamped_ball_root: need n ≥ 2, ℓ ≥ 0");
    return first_positive_root([n, ell](double x) { return clamped_secular(n, ell, x); }, 0.05, 200.0);
}

double buckling_ball_root(int n, int ell) {
    if (n < 2 || ell < 0) throw std::invalid_argument("buckling_ball_root: need n ≥ 2, ℓ ≥ 0");
    return first_positive_root([n, ell](double x) { return buckling_secular(n, ell, x); }, 0.05, 200.0);
}

Spectrum dirichlet_ball(const BallSpec& ball, int count) {
    ball.validate();
    check_count(count, "dirichlet_ball");
    const int n = ball.dimension;
    Spectrum s;
    s.kind = ProblemKind::dirichlet;
    s.dimension = n;
    s.domain_label = ball_label(ball);
    s.values = merge_families(n, count, ball.radius, [n](int ell, int c) {
        return bessel_zeros(0.5 * n - 1.0 + ell, c);
    });
    return s;
}

Spectrum neumann_ball(const BallSpec& ball, int count) {
    ball.validate();
    check_count(count, "neumann_ball");
    const int n = ball.dimension;
    Spectrum s;
    s.kind = ProblemKind::neumann;
    s.dimension = n;
    s.domain_label = ball_label(ball);
    s.values.push_back(0.0);
    if (count > 1) {
        const std::vector<double> rest = merge_families(n, count - 1, ball.radius, [n](int ell, int c) {
            return neumann_radial_zeros(n, ell, c);
        });
        s.values.insert(s.values.end(), rest.begin(), rest.end());
    }
    return s;
}

double neumann_ball_mu1(const BallSpec& ball) {
    ball.validate();
    const double p = bessel_j_deriv_zero(0.5 * ball.dimension, 1) / ball.radius;
    return p * p;
}

Spectrum clamped_ball(const BallSpec& ball, int count) {
    ball.validate();
    if (count < 1 || count > 2) throw std::invalid_argument("clamped_ball: count must be 1 or 2");
    Spectrum s;
    s.kind = ProblemKind::clamped;
    s.dimension = ball.dimension;
    s.domain_label = ball_label(ball);
    for (int ell = 0; ell < count; ++ell) {
        const double k = clamped_ball_root(ball.dimension, ell) / ball.radius;
        s.values.push_back(k * k * k * k);
    }
    return s;
}

Spectrum buckling_ball(const BallSpec& ball, int count) {
    ball.validate();
    if (count < 1 || count > 2) throw std::invalid_argument("buckling_ball: count must be 1 or 2");
    Spectrum s;
    s.kind = ProblemKind::buckling;
    s.dimension = ball.dimension;
    s.domain_label = ball_label(ball);
    // Same zero as the Dirichlet λ₂ of the ball, so Payne's equality case is exact.
    const double k1 = bessel_zero(0.5 * ball.dimension, 1).value / ball.radius;
    s.values.push_back(k1 * k1);
    if (count == 2) {
        const double k2 = buckling_ball_root(ball.dimension, 1) / ball.radius;
        s.values.push_back(k2 * k2);
    }
    return s;
}

Spectrum rectangle_spectrum(double a, double b, ProblemKind kind, int count) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("rectangle_spectrum: sides must be > 0");
    check_count(count, "rectangle_spectrum");
    if (kind != ProblemKind::dirichlet && kind != ProblemKind::neumann)
        throw std::invalid_argument("rectangle_spectrum: only dirichlet and neumann are separable");
    const int first = kind == ProblemKind::dirichlet ? 1 : 0;
    const double pi2 = std::numbers::pi * std::numbers::pi;
    std::vector<double> values;
    // The first `count` values all have p, q < first + count.
    for (int p = first; p < first + count; ++p)
        for (int q = first; q < first + count; ++q)
            values.push_back(pi2 * (double(p) * p / (a * a) + double(q) * q / (b * b)));
    std::sort(values.begin(), values.end());
    values.resize(static_cast<std::size_t>(count));
    Spectrum s;
    s.kind = kind;
    s.dimension = 2;
    char buf[80];
    std::snprintf(buf, sizeof buf, "rectangle(%.12g,%.12g)", a, b);
    s.domain_label = buf;
    s.values = std::move(values);
    return s;
}

}  // namespace isospec
