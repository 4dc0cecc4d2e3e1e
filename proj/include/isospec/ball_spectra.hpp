#pragma once

#include "isospec/spectrum.hpp"

namespace isospec {

/// Ball of radius R in ℝⁿ.
struct BallSpec {
    int dimension = 2;
    double radius = 1.0;

    double volume() const;  // C_n Rⁿ
    void validate() const;  // std::invalid_argument unless n ≥ 2 and R > 0
};

/// Ball of the given dimension whose volume equals `volume`.
BallSpec ball_of_volume(int n, double volume);

// Radial secular functions on the unit ball for angular index ℓ, with
// ν = n/2 - 1 + ℓ. Their positive roots x give eigenvalues (x/R)⁴ (clamped)
// and (x/R)² (buckling).
//
// clamped:  J_ν(x) I_{ν+1}(x) + I_ν(x) J_{ν+1}(x)
// buckling: ℓ J_ν(x) - [(1 - n/2) J_ν(x) + x J_ν'(x)], the 2×2 determinant of
//           the regular solutions r^{1-n/2} J_ν(xr) and r^ℓ.
double clamped_secular(int n, int ell, double x);
double buckling_secular(int n, int ell, double x);

/// First positive root of clamped_secular(n, ℓ, ·).
double clamped_ball_root(int n, int ell);
/// First positive root of buckling_secular(n, ℓ, ·).
double buckling_ball_root(int n, int ell);

/// First `count` Dirichlet eigenvalues (j_{n/2-1+ℓ,k}/R)², with multiplicity.
Spectrum dirichlet_ball(const BallSpec& ball, int count);

/// First `count` Neumann eigenvalues, μ₀ = 0 first, with multiplicity.
Spectrum neumann_ball(const BallSpec& ball, int count);

/// μ₁(B_R) from the ℓ = 1 radial condition.
double neumann_ball_mu1(const BallSpec& ball);

/// Γ₁ (ℓ = 0) and, for count = 2, Γ₂ (ℓ = 1).
Spectrum clamped_ball(const BallSpec& ball, int count);

/// Λ₁ = (j_{n/2,1}/R)² and, for count = 2, Λ₂ from the ℓ = 1 secular root.
Spectrum buckling_ball(const BallSpec& ball, int count);

/// Separable spectrum of the a×b rectangle. Dirichlet uses p, q ≥ 1, Neumann
/// p, q ≥ 0.
Spectrum rectangle_spectrum(double a, double b, ProblemKind kind, int count);

}  // namespace isospec
