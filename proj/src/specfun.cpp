#include "isospec/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace isospec {
namespace {

void check_args(double nu, double x, const char* who) {
    if (!std::isfinite(nu) || !std::isfinite(x))
        throw std::domain_error(std::string(who) + ": non-finite argument");
    if (nu < 0.0) throw std::domain_error(std::string(who) + ": negative order");
    if (x < 0.0) throw std::domain_error(std::string(who) + ": negative argument");
}

// Newton iteration kept inside a sign bracket; a step that leaves the bracket
// is replaced by bisection, and after 60 iterations only bisection is used.
template <class F, class DF>
double safeguarded_newton(F&& f, DF&& df, double lo, double hi, double guess) {
    double flo = f(lo);
    if (flo == 0.0) return lo;
    double x = (guess > lo && guess < hi) ? guess : 0.5 * (lo + hi);
    for (int iter = 0; iter < 400; ++iter) {
        const double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx > 0.0) == (flo > 0.0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        if (hi - lo <= 4e-16 * std::abs(hi)) return 0.5 * (lo + hi);
        double next = 0.5 * (lo + hi);
        if (iter < 60) {
            const double d = df(x);
            const double newton = d != 0.0 ? x - fx / d : next;
            if (newton > lo && newton < hi) {
                if (std::abs(newton - x) <= 1e-15 * std::abs(x)) return newton;
                next = newton;
            }
        }
        x = next;
    }
    throw ConvergenceError("Bessel zero refinement did not converge");
}

// McMahon's large-zero expansion for j_{ν,k}.
double mcmahon_guess(double nu, int k) {
    const double mu = 4.0 * nu * nu;
    const double beta = (k + 0.5 * nu - 0.25) * std::numbers::pi;
    const double e = 8.0 * beta;
    return beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e * e);
}

// Successive sign changes of f on [start, ∞) with a fixed step, each refined by
// safeguarded Newton. `guess(k)` supplies the initial Newton point.
template <class F, class DF, class G>
std::vector<double> scan_roots(F&& f, DF&& df, G&& guess, double start, double step, int count) {
    std::vector<double> roots;
    roots.reserve(static_cast<std::size_t>(count));
    double x0 = start;
    double f0 = f(x0);
    const int max_steps = 100000;
    for (int s = 0; s < max_steps && static_cast<int>(roots.size()) < count; ++s) {
        const double x1 = x0 + step;
        const double f1 = f(x1);
        if (f0 == 0.0 && s > 0) {
            roots.push_back(x0);
        } else if ((f0 > 0.0) != (f1 > 0.0) && f1 != 0.0) {
            const int k = static_cast<int>(roots.size()) + 1;
            roots.push_back(safeguarded_newton(f, df, x0, x1, guess(k)));
        }
        x0 = x1;
        f0 = f1;
    }
    if (static_cast<int>(roots.size()) < count)
        throw ConvergenceError("root scan did not find the requested number of zeros");
    return roots;
}

}  // namespace

double bessel_j(double nu, double x) {
    check_args(nu, x, "bessel_j");
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    return std::cyl_bessel_j(nu, x);
}

double bessel_j_prime(double nu, double x) {
    check_args(nu, x, "bessel_j_prime");
    if (x == 0.0) {
        if (nu == 1.0) return 0.5;
        return 0.0;  // J_0'(0) = 0; J_ν'(0) = 0 for ν > 1, unbounded for 0 < ν < 1
    }
    return nu / x * std::cyl_bessel_j(nu, x) - std::cyl_bessel_j(nu + 1.0, x);
}

double bessel_i(double nu, double x) {
    check_args(nu, x, "bessel_i");
    if (x > 500.0) throw std::range_error("bessel_i: argument beyond overflow guard (x > 500)");
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    return std::cyl_bessel_i(nu, x);
}

double bessel_i_prime(double nu, double x) {
    check_args(nu, x, "bessel_i_prime");
    if (x > 500.0) throw std::range_error("bessel_i_prime: argument beyond overflow guard (x > 500)");
    if (x == 0.0) return nu == 1.0 ? 0.5 : 0.0;
    return std::cyl_bessel_i(nu + 1.0, x) + nu / x * std::cyl_bessel_i(nu, x);
}

std::vector<double> bessel_zeros(double nu, int count) {
    if (!std::isfinite(nu) || nu < 0.0) throw std::domain_error("bessel_zeros: order must be ≥ 0");
    if (count < 1) throw std::invalid_argument("bessel_zeros: count must be ≥ 1");
    auto f = [nu](double x) { return std::cyl_bessel_j(nu, x); };
    auto df = [nu](double x) { return nu / x * std::cyl_bessel_j(nu, x) - std::cyl_bessel_j(nu + 1.0, x); };
    auto guess = [nu](int k) { return mcmahon_guess(nu, k); };
    // J_ν has no zeros in (0, ν]; consecutive zeros are more than 2.4 apart.
    const double start = std::max(nu, 0.5);
    std::vector<double> zeros = scan_roots(f, df, guess, start, 0.5, count);
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        const double z = zeros[i];
        const double scale = std::max(1.0, std::abs(df(z)));
        if (!(std::abs(f(z)) < 1e-10 * scale))
            throw ConvergenceError("bessel_zeros: refined value is not a root of J_ν");
    }
    return zeros;
}

BesselZero bessel_zero(double nu, int k) {
    if (k < 1) throw std::invalid_argument("bessel_zero: index must be ≥ 1");
    return BesselZero{nu, k, bessel_zeros(nu, k).back()};
}

double neumann_radial_zero(int n, int ell, int k) {
    if (k < 1) throw std::invalid_argument("neumann_radial_zero: index must be ≥ 1");
    return neumann_radial_zeros(n, ell, k).back();
}

std::vector<double> neumann_radial_zeros(int n, int ell, int k) {
    if (n < 1) throw std::invalid_argument("neumann_radial_zero: dimension must be ≥ 1");
    if (ell < 0) throw std::invalid_argument("neumann_radial_zero: angular index must be ≥ 0");
    if (k < 1) throw std::invalid_argument("neumann_radial_zero: count must be ≥ 1");
    const double nu = 0.5 * n - 1.0 + ell;
    if (nu < 0.0) throw std::invalid_argument("neumann_radial_zero: requires n/2 - 1 + ℓ ≥ 0");
    // r^{n/2} d/dr [r^{1-n/2} J_ν(r)] = ℓ J_ν(r) - r J_{ν+1}(r)
    auto g = [nu, ell](double r) {
        return ell * std::cyl_bessel_j(nu, r) - r * std::cyl_bessel_j(nu + 1.0, r);
    };
    auto dg = [nu, ell](double r) {
        const double jn = std::cyl_bessel_j(nu, r);
        const double jn1 = std::cyl_bessel_j(nu + 1.0, r);
        const double djn = nu / r * jn - jn1;
        const double djn1 = jn - (nu + 1.0) / r * jn1;
        return ell * djn - jn1 - r * djn1;
    };
    auto guess = [](int) { return -1.0; };
    return scan_roots(g, dg, guess, 1e-3, 0.25, k);
}

double bessel_j_deriv_zero(double nu, int k) {
    if (!std::isfinite(nu) || nu < 1.0)
        throw std::domain_error("bessel_j_deriv_zero: order must be ≥ 1");
    if (k < 1) throw std::invalid_argument("bessel_j_deriv_zero: index must be ≥ 1");
    // r J_{ν-1}(r) + (1 - 2ν) J_ν(r)
    auto g = [nu](double r) {
        return r * std::cyl_bessel_j(nu - 1.0, r) + (1.0 - 2.0 * nu) * std::cyl_bessel_j(nu, r);
    };
    auto dg = [nu](double r) {
        const double jm = std::cyl_bessel_j(nu - 1.0, r);
        const double j0 = std::cyl_bessel_j(nu, r);
        const double djm = (nu - 1.0) / r * jm - j0;
        const double dj0 = jm - nu / r * j0;
        return jm + r * djm + (1.0 - 2.0 * nu) * dj0;
    };
    auto guess = [](int) { return -1.0; };
    const std::vector<double> roots = scan_roots(g, dg, guess, 1e-3, 0.25, k);
    return roots.back();
}

double unit_ball_volume(int n) {
    if (n < 1) throw std::invalid_argument("unit_ball_volume: dimension must be ≥ 1");
    return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

long harmonic_multiplicity(int n, int ell) {
    if (n < 2 || ell < 0) throw std::invalid_argument("harmonic_multiplicity: need n ≥ 2, ℓ ≥ 0");
    if (ell == 0) return 1;
    if (n == 2) return 2;
    // C(n+ℓ-1, ℓ) - C(n+ℓ-3, ℓ-2)
    auto binom = [](long top, long k) -> long {
        if (k < 0 || top < k) return 0;
        long r = 1;
        for (long i = 1; i <= k; ++i) r = r * (top - k + i) / i;
        return r;
    };
    return binom(n + ell - 1, ell) - binom(n + ell - 3, ell - 2);
}

}  // namespace isospec
