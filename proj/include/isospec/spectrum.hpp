#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace isospec {

/// The four eigenvalue problems handled by the toolkit.
enum class ProblemKind {
    dirichlet,  ///< fixed membrane, -Δu = λu, u = 0 on the boundary
    neumann,    ///< free membrane, -Δv = μv, ∂v/∂n = 0
    clamped,    ///< clamped plate, Δ²w = Γw, w = ∂w/∂n = 0
    buckling,   ///< buckling plate, Δ²v = -ΛΔv, v = ∂v/∂n = 0
};

std::string_view to_string(ProblemKind kind);
ProblemKind parse_problem_kind(std::string_view text);

enum class Provenance {
    closed_form,
    discrete,               // single mesh level
    discrete_extrapolated,  // Richardson value from two mesh levels
};

std::string_view to_string(Provenance p);

/// Ordered finite eigenvalue list.
///
/// Values are nondecreasing and repeated according to multiplicity. For the
/// Neumann problem values[0] is the zero mode μ₀; for the other problems
/// values[0] is the first eigenvalue (λ₁, Γ₁, Λ₁).
///
/// `uncertainty` is either empty (exact up to round-off) or holds one absolute
/// discretization allowance per value.
struct Spectrum {
    ProblemKind kind = ProblemKind::dirichlet;
    int dimension = 2;
    std::vector<double> values;
    std::string domain_label;
    Provenance provenance = Provenance::closed_form;
    std::vector<double> uncertainty;
    double mesh_width = 0.0;  // 0 for closed-form spectra

    std::size_t size() const { return values.size(); }

    /// Largest relative uncertainty among the first `count` values (all values
    /// when count is 0). Zero values and the Neumann zero mode are skipped.
    double relative_allowance(std::size_t count = 0) const;

    /// Throws std::logic_error if the ordering/positivity invariants fail.
    void validate() const;
};

}  // namespace isospec
