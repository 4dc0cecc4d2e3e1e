#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace isospec {

/// Raised when an iterative refinement (root finding, eigensolve) fails to
/// reach its tolerance. Never replaced by a silently wrong value.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// k-th positive zero of J_ν.
struct BesselZero {
    double order = 0.0;
    int index = 1;
    double value = 0.0;
};

// Bessel functions of the first kind and modified Bessel functions of real
// order ν ≥ 0 and argument x ≥ 0. Non-finite input, negative order or
// negative argument throw std::domain_error.
double bessel_j(double nu, double x);
double bessel_j_prime(double nu, double x);
double bessel_i(double nu, double x);  // x ≤ 500, std::range_error beyond
double bessel_i_prime(double nu, double x);

/// k-th positive zero j_{ν,k} of J_ν, absolute error ≤ 1e-10.
BesselZero bessel_zero(double nu, int k);

/// First `count` positive zeros of J_ν in increasing order. bessel_zero(ν, k)
/// is the last entry of bessel_zeros(ν, k), bit for bit.
std::vector<double> bessel_zeros(double nu, int count);

/// k-th positive root of d/dr [r^{1-ν} J_ν(r)] = 0, equivalently
/// r J_{ν-1}(r) + (1 - 2ν) J_ν(r) = 0. With ν = n/2 this is the radial
/// condition w'(R) = 0 of the first nonconstant Neumann mode on an n-ball.
/// Requires ν ≥ 1.
double bessel_j_deriv_zero(double nu, int k);

/// k-th positive root of d/dr [r^{1-n/2} J_{n/2-1+ℓ}(r)] = 0: the Neumann
/// radial condition for angular index ℓ on the unit n-ball.
double neumann_radial_zero(int n, int ell, int k);

/// First `count` roots of the same condition, in increasing order.
std::vector<double> neumann_radial_zeros(int n, int ell, int count);

/// Volume C_n = π^{n/2} / Γ(n/2 + 1) of the unit ball in ℝⁿ.
double unit_ball_volume(int n);

/// Dimension of the space of degree-ℓ spherical harmonics in ℝⁿ.
long harmonic_multiplicity(int n, int ell);

/// Root of a continuous function with f(lo)·f(hi) ≤ 0, refined by Brent's
/// method to |hi - lo| ≤ xtol. Throws ConvergenceError if the bracket is
/// invalid or the iteration budget is exhausted.
template <class F>
double brent_root(F&& f, double lo, double hi, double xtol, int max_iter = 200);

}  // namespace isospec

#include "isospec/detail/brent.hpp"
