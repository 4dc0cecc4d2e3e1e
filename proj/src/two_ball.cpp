#include "isospec/two_ball.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "isospec/ball_spectra.hpp"
#include "isospec/specfun.hpp"

namespace isospec {
namespace {

constexpr double kEndpointCutoff = 1e-3;

void check_n(int n) {
    if (n < 2) throw std::invalid_argument("two-ball problem needs n ≥ 2");
}

double endpoint_root(int n) { return clamped_ball_root(n, 0); }

// Smallest k = μ^{1/4} with a sign change of the determinant, scanning in
// steps of k₁/50 and refining with Brent.
double smallest_k(int n, double a, double k1) {
    const double step = k1 / 50.0;
    auto f = [n, a](double k) { return secular_det(n, a, k * k * k * k); };
    double k0 = step;
    double f0 = f(k0);
    std::string trace;
    for (int s = 0; s < 5000; ++s) {
        const double k = k0 + step;
        const double fk = f(k);
        if (fk == 0.0) return k;
        if ((fk > 0.0) != (f0 > 0.0)) return brent_root(f, k0, k, 1e-13 * k);
        if (s < 8) trace += " det(" + std::to_string(k) + ")=" + std::to_string(fk);
        k0 = k;
        f0 = fk;
    }
    throw ConvergenceError("two-ball determinant has no sign change for a=" + std::to_string(a) +
                           "; scan trace:" + trace);
}

}  // namespace

double secular_det(int n, double a, double mu) {
    check_n(n);
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("secular_det: need 0 < a < 1");
    if (!(mu > 0.0)) throw std::invalid_argument("secular_det: need μ > 0");
    const double nu = 0.5 * n - 1.0;
    const double b = std::pow(1.0 - std::pow(a, n), 1.0 / n);
    const double k = std::pow(mu, 0.25);
    const double x = k * a, y = k * b;
    const double jx = bessel_j(nu, x), ix = bessel_i(nu, x), jy = bessel_j(nu, y), iy = bessel_i(nu, y);
    const double jx1 = bessel_j(nu + 1, x), ix1 = bessel_i(nu + 1, x);
    const double jy1 = bessel_j(nu + 1, y), iy1 = bessel_i(nu + 1, y);
    const double an = std::pow(a, 0.5 * n), bn = std::pow(b, 0.5 * n);
    const double am = std::pow(a, -nu), bm = std::pow(b, -nu);
    Eigen::Matrix4d M;
    M << jx, ix, 0, 0,
         0, 0, jy, iy,
         -an * jx1, an * ix1, bn * jy1, -bn * iy1,
         -am * jx, am * ix, -bm * jy, bm * iy;
    for (int r = 0; r < 4; ++r) {
        const double s = M.row(r).cwiseAbs().maxCoeff();
        if (s > 0.0) M.row(r) /= s;
    }
    return M.determinant();
}

TwoBallResult J_of_a(int n, double a) {
    check_n(n);
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("J_of_a: need 0 ≤ a ≤ 1");
    const double k1 = endpoint_root(n);
    const double gamma1 = clamped_ball({n, 1.0}, 1).values[0];
    TwoBallResult r;
    r.n = n;
    r.a = a;
    r.b = std::pow(1.0 - std::pow(a, n), 1.0 / n);
    r.minimizer_a = a;
    if (a < kEndpointCutoff || r.b < kEndpointCutoff) {
        r.J = gamma1;
        r.d_n = 1.0;
        if (a > 0.0 && r.b > 0.0) {
            // continuity with the determinant solve at the cutoff
            const double edge = std::pow(smallest_k(n, kEndpointCutoff, k1), 4);
            if (std::abs(edge / gamma1 - 1.0) > 1e-2)
                throw std::logic_error("two-ball solve is discontinuous at the endpoint cutoff");
        }
        return r;
    }
    const double k = smallest_k(n, a, k1);
    r.J = k * k * k * k;
    r.d_n = r.J / gamma1;
    return r;
}

TwoBallResult J_of_t(int n, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("J_of_t: need 0 ≤ t ≤ 1");
    return J_of_a(n, std::pow(t, 1.0 / n));
}

TwoBallResult d_constant_result(int n, int grid) {
    check_n(n);
    if (grid < 65) throw std::invalid_argument("d_constant: grid must have ≥ 65 points");
    const std::vector<double> ts = uniform_t_grid(grid);
    std::vector<double> ratio(ts.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        ratio[i] = J_of_t(n, ts[i]).d_n;
        if (ratio[i] < ratio[best]) best = i;
    }
    TwoBallResult r;
    r.n = n;
    double t_best = ts[best], v_best = ratio[best];
    if (best > 0 && best + 1 < ts.size()) {
        // golden-section on the bracketing grid cell pair
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        double lo = ts[best - 1], hi = ts[best + 1];
        double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
        double fc = J_of_t(n, c).d_n, fd = J_of_t(n, d).d_n;
        while (hi - lo > 1e-7) {
            if (fc < fd) {
                hi = d; d = c; fd = fc;
                c = hi - g * (hi - lo);
                fc = J_of_t(n, c).d_n;
            } else {
                lo = c; c = d; fc = fd;
                d = lo + g * (hi - lo);
                fd = J_of_t(n, d).d_n;
            }
        }
        const double tm = 0.5 * (lo + hi);
        const double vm = J_of_t(n, tm).d_n;
        if (vm < v_best) t_best = tm, v_best = vm;
    }
    const TwoBallResult at = J_of_t(n, t_best);
    r.a = at.a;
    r.b = at.b;
    r.J = at.J;
    r.minimizer_a = at.a;
    r.d_n = v_best;
    return r;
}

double d_constant(int n) { return d_constant_result(n).d_n; }

double c_constant(int n) {
    check_n(n);
    const double r = bessel_zero(0.5 * n - 1.0, 1).value / bessel_zero(0.5 * n, 1).value;
    return std::pow(2.0, 2.0 / n) * r * r;
}

std::optional<double> d_prime_reference(int n) {
    switch (n) {
        case 2: return 0.9777;
        case 3: return 0.7391;
        case 4: return 0.6524;
        default: return std::nullopt;
    }
}

std::vector<CurvePoint> j_curve(int n, const std::vector<double>& t_grid) {
    std::vector<CurvePoint> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) {
        CurvePoint p;
        p.t = t;
        try {
            p.ratio = J_of_t(n, t).d_n;
        } catch (const std::exception& e) {
            p.ok = false;
            p.ratio = std::numeric_limits<double>::quiet_NaN();
            p.error = e.what();
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<double> uniform_t_grid(int points) {
    if (points < 2) throw std::invalid_argument("t grid needs at least 2 points");
    std::vector<double> ts(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) ts[std::size_t(i)] = double(i) / (points - 1);
    return ts;
}

}  // namespace isospec
