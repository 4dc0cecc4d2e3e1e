#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "isospec/grid_eig.hpp"

namespace isospec {

/// Values on the interior nodes of a rasterized domain. Node measure is h².
struct GridFunction {
    std::shared_ptr<const GridDomain> domain;
    std::vector<double> values;

    GridFunction() = default;
    GridFunction(std::shared_ptr<const GridDomain> d, std::vector<double> v);

    double cell_area() const { return domain->h * domain->h; }
    double measure() const { return cell_area() * double(values.size()); }
    void validate() const;  // std::invalid_argument on size mismatch or non-finite values
};

/// Nonincreasing step function on [0, |Ω|_h]: values[k] holds on
/// (k·cell, (k+1)·cell]. Equals the node values sorted descending.
struct DecreasingProfile {
    double cell = 0.0;
    std::vector<double> values;

    double total_measure() const { return cell * double(values.size()); }
    double at(double s) const;
    /// ∫₀ˢ f*(σ) dσ, exact for the step function.
    double integral_to(double s) const;
};

/// Function of |x| on Ω* sampled on radii 0, h, 2h, ..., with R last.
struct RadialProfile {
    std::vector<double> radii;
    std::vector<double> values;
    double R = 0.0;
};

/// h²·#{|f| > t}, or #{f > t} when `signed_values`.
double distribution(const GridFunction& f, double t, bool signed_values = false);

DecreasingProfile decreasing_rearrangement(const GridFunction& f, bool signed_values = false);

/// f^⋆(r) = f*(s(r)), with R = (area_exact/π)^{1/2} and
/// s(r) = πr²·(node measure / area_exact), so the ball maps onto the whole
/// node measure.
RadialProfile spherical_rearrangement(const GridFunction& f, bool signed_values = false);

/// Increasing variant f_⋆(r) = f*(|Ω|_h - s(r)).
RadialProfile spherical_increasing_rearrangement(const GridFunction& f, bool signed_values = false);

/// Samples a radial profile onto the rasterized ball of the same area as the
/// source domain, by linear interpolation in r.
GridFunction to_symmetric_grid(const RadialProfile& p, const GridFunction& f);

/// ∫fg ≤ ∫f^⋆g^⋆ and ∫fg ≥ ∫f^⋆g_⋆ with signed rearrangements, both
/// rearranged integrals evaluated in the volume variable.
struct ProductBoundReport {
    double lhs = 0.0;
    double upper = 0.0;
    double lower = 0.0;
    double tolerance = 0.0;  // 1e-9 · Σ|f||g| h²
    bool holds = true;
};

ProductBoundReport product_bound_check(const GridFunction& f, const GridFunction& g);

/// Raised when the Poisson solution is significantly negative.
class TalentiHypothesisError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Domination tolerance constant: u^⋆ ≤ v + C·h·max(v). Calibrated on f ≡ 1
/// over the unit disk (observed max violation 1.19·h·max v at h = 1/16,
/// decreasing with h) and frozen.
inline constexpr double kTalentiC = 1.5;

struct TalentiReport {
    GridFunction u;
    RadialProfile u_star;
    RadialProfile v;
    double tolerance = 0.0;             // C·h·max(v)
    double max_violation = 0.0;         // max over r of (u^⋆ - v)₊
    double integrated_violation = 0.0;  // ∫_{Ω*} (u^⋆ - v)₊, trapezoid in r
    bool dominated = true;
};

/// Solves -Δ_h u = f with zero exterior values, rearranges u and compares
/// with v(r) = ∫_r^R t^{-1} ∫_0^t τ f^⋆(τ) dτ dt. The inner integral is taken
/// exactly in the volume variable, the outer by the trapezoid rule.
/// Throws TalentiHypothesisError if ∫f < 0 or min u < -h·max u.
TalentiReport talenti_compare(const GridFunction& f);

/// v from f^⋆ as above, on the profile radii of f's spherical rearrangement.
RadialProfile symmetrized_poisson(const GridFunction& f);

/// Discrete Dirichlet energy h²·xᵀLᴰx of a grid function (zero outside).
double dirichlet_energy(const GridFunction& f);

}  // namespace isospec
