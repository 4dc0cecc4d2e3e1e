#pragma once

#include <optional>
#include <string>
#include <vector>

namespace isospec {

/// One point of the two-ball problem with aⁿ + bⁿ = 1 (total volume C_n).
struct TwoBallResult {
    int n = 2;
    double a = 0.0;
    double b = 1.0;
    double J = 0.0;            // smallest eigenvalue μ of the coupled problem
    double minimizer_a = 0.0;  // for d_constant_result: argmin; for J_of_a: a itself
    double d_n = 1.0;          // J / Γ₁(B₁) at minimizer_a
};

/// Sign-preserving determinant of the 4×4 system for the coefficients of
/// r^{-ν}{J_ν, I_ν}(μ^{1/4} r) on B_a and B_b, ν = n/2 - 1: zero values at the
/// two radii, matched weighted fluxes a^{n-1}φ'(a) = b^{n-1}ψ'(b), and
/// Δφ(a) + Δψ(b) = 0. Each row is divided by its largest entry in magnitude.
/// Requires 0 < a < 1 and μ > 0.
double secular_det(int n, double a, double mu);

/// Smallest positive root in μ of secular_det. Endpoints (and a or b below
/// 1e-3) return Γ₁(B₁) of the unit ball.
TwoBallResult J_of_a(int n, double a);

/// J as a function of t = aⁿ.
TwoBallResult J_of_t(int n, double t);

/// min over a of J(a)/Γ₁(B₁): uniform scan of t on `grid` ≥ 65 points, then
/// golden-section refinement around the best grid point.
TwoBallResult d_constant_result(int n, int grid = 65);
double d_constant(int n);

/// c_n = 2^{2/n} (j_{n/2-1,1} / j_{n/2,1})².
double c_constant(int n);

/// Published reference value of d′_n, when there is one. Metadata only.
std::optional<double> d_prime_reference(int n);

struct CurvePoint {
    double t = 0.0;
    double ratio = 0.0;  // J(t)/Γ₁(B₁); NaN when the solve failed
    bool ok = true;
    std::string error;
};

/// J(t)/Γ₁(B₁) on the given t values. Failures are recorded per point.
std::vector<CurvePoint> j_curve(int n, const std::vector<double>& t_grid);

/// Uniform grid of `points` ≥ 2 values on [0, 1].
std::vector<double> uniform_t_grid(int points);

}  // namespace isospec
