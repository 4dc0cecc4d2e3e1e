#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "isospec/spectrum.hpp"

namespace isospec {

enum class Status { proven, conjecture, informational };
enum class Family { membrane_gap, membrane_low, isoperimetric, plate, buckling, polya, ratio };

std::string_view to_string(Status s);
std::string_view to_string(Family f);

/// Input required by an inequality.
struct Requirement {
    std::vector<ProblemKind> kinds;  // spectra that must be present
    bool indexed = false;            // evaluated per m (or per k for Pólya)
    int min_dimension = 2;
    int max_dimension = 0;  // 0: no upper limit
    std::string text;       // human-readable descriptor
};

struct InequalityDef {
    std::string id;
    Status status = Status::proven;
    Family family = Family::membrane_gap;
    Requirement requirement;
    std::string statement;  // the predicate in lhs ≤ rhs form
    std::string citation;
};

/// Every inequality the toolkit knows, in a fixed order.
const std::vector<InequalityDef>& inequality_catalog();
/// Throws std::invalid_argument for an unknown id.
const InequalityDef& find_inequality(std::string_view id);

/// Evaluated predicate, oriented as lhs ≤ rhs; slack = rhs - lhs.
/// holds ⇔ slack ≥ -tolerance_used. Windows (informational) also record
/// `lower` and hold when lower ≤ lhs ≤ rhs.
struct InequalityReport {
    std::string id;
    Status status = Status::proven;
    Family family = Family::membrane_gap;
    std::string domain_label;
    int m = 0;  // index for indexed inequalities, 0 otherwise
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool holds = true;
    double tolerance_used = 0.0;
    std::optional<double> lower;
    std::string citation;
};

/// Invalid or insufficient input for an evaluator (short spectrum, missing
/// kind, dimension outside the inequality's range, inconsistent spectrum).
class CatalogInputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The spectrum is too short, a kind is missing or the dimension is out of
/// range: the inequality does not apply. evaluate_suite skips these.
class InsufficientInput : public CatalogInputError {
public:
    using CatalogInputError::CatalogInputError;
};

struct EvalOptions {
    /// Multiplies the discretization allowance of extrapolated spectra.
    double tolerance_scale = 1.0;
};

/// Absolute tolerance for a predicate of magnitude `scale` evaluated from
/// `inputs`: max(1e-9, 2·Σ 3·relative uncertainty · tolerance_scale) · scale.
double tolerance_for(double scale, const std::vector<const Spectrum*>& inputs, std::size_t count,
                     const EvalOptions& opts = {});

// Membrane eigenvalue gaps: ppw_gap, yang1, yang2, hile_protter.
InequalityReport eval_membrane_gap(std::string_view id, const Spectrum& dirichlet, int n, int m,
                                   const EvalOptions& opts = {});

// Low membrane eigenvalues: sum_n4, brands, l2l3_window, l3_window.
InequalityReport eval_membrane_low(std::string_view id, const Spectrum& dirichlet, int n,
                                   const EvalOptions& opts = {});

/// Spectra of one domain. Absent kinds make the dependent checks inapplicable.
struct SpectraBundle {
    std::optional<Spectrum> dirichlet;
    std::optional<Spectrum> neumann;
    std::optional<Spectrum> clamped;
    std::optional<Spectrum> buckling;

    const Spectrum* get(ProblemKind k) const;
    std::string label() const;
};

// Comparisons with the ball of equal volume: faber_krahn, szego_weinberger,
// ppw_ratio, fixed_lambda1, payne_buckling, krahn_l2, bramble_payne,
// two_ball_bound, rayleigh_plate, polya_szego.
InequalityReport eval_isoperimetric(std::string_view id, const SpectraBundle& spectra, int n, double volume,
                                    const EvalOptions& opts = {});

// Clamped plate: ppw_plate_gap, ppw_plate_gap_sqrt, hile_yeh, conj_356,
// cheb_357, sum_plate_sqrt, sum_plate, ratio_165, hile_yeh_cubic.
InequalityReport eval_plate(std::string_view id, const Spectrum& clamped, int n, int m,
                            const EvalOptions& opts = {});

/// Root > 1 of (x - 1)³ = 512x / (n²(n + 2)).
double hile_yeh_cubic_root(int n);

// Buckling: ppw_buckling, hile_yeh_buckling, sum_buckling.
InequalityReport eval_buckling(std::string_view id, const Spectrum& buckling, int n, const EvalOptions& opts = {});

/// λ_k ≥ 4πk/A (k = 1..k_max) or μ_k ≤ 4πk/A (k = 0..k_max), two dimensions.
std::vector<InequalityReport> eval_polya(std::string_view id, const Spectrum& spectrum, double area, int k_max,
                                         const EvalOptions& opts = {});

// Ratios against the ball: ratio_membrane (λ_{m+1}/λ_m), ratio_plate
// (Γ₂/Γ₁), ratio_buckling (Λ₂/Λ₁).
InequalityReport eval_ratio(std::string_view id, const Spectrum& spectrum, int n, int m, const EvalOptions& opts = {});

/// Explicit upper bounds for λ_{m+1} and their ordering.
struct ChainReport {
    int m = 0;
    double lambda_next = 0.0;  // λ_{m+1}
    double yang1_bound = 0.0;
    double yang2_bound = 0.0;
    double ppw_bound = 0.0;  // λ_m + (4/(mn)) Σ λ_i
    double hp_slack = 0.0;   // Σ λ_i/(λ_{m+1} - λ_i) - mn/4
    bool yang1_holds = false, yang2_holds = false, hp_holds = false, ppw_holds = false;
    bool bounds_ordered = false;  // yang1 ≤ yang2 ≤ ppw (within round-off)
    bool implications = false;    // each holding predicate implies the next
    bool ok() const { return bounds_ordered && implications; }
};

ChainReport chain_check(const Spectrum& dirichlet, int n, int m, const EvalOptions& opts = {});

/// Everything applicable to the bundle: indexed checks for m = 1..m_max,
/// Pólya for k ≤ k_max. `filter` restricts to the listed ids when nonempty.
std::vector<InequalityReport> evaluate_suite(const SpectraBundle& spectra, int n, double volume, int m_max,
                                             int k_max, const std::vector<std::string>& filter = {},
                                             const EvalOptions& opts = {});

}  // namespace isospec
