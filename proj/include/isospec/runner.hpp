#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "isospec/catalog.hpp"
#include "isospec/grid_eig.hpp"
#include "isospec/shape.hpp"
#include "isospec/spectrum.hpp"

namespace isospec {

/// Bad run configuration. `what()` carries the source name and, for syntax
/// errors, line and column.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DomainEntry {
    std::string label;
    Shape shape = Shape::disk(1.0);
};

/// Parsed form of a verify configuration (JSON, see docs/config.md).
struct RunConfig {
    static constexpr const char* kSchema = "isospec-run/1";

    std::vector<DomainEntry> domains;
    std::vector<ProblemKind> problems;
    double h = 1.0 / 32;  // coarsest mesh width
    int levels = 2;       // ≥ 2: the two finest levels are extrapolated
    int m_max = 8;        // largest index m for indexed inequalities
    int k_max = 10;       // largest Pólya index
    std::vector<std::string> inequalities;  // empty: all
    std::filesystem::path output_dir = "isospec-out";
    int concurrency = 0;  // 0: hardware concurrency
    double tolerance_scale = 1.0;
    EigenSolverOptions solver;

    /// Throws ConfigError on a violated invariant.
    void validate() const;
    /// Eigenvalues requested per problem.
    int eigen_count(ProblemKind kind) const;
};

/// Parses and validates a configuration. `source` names the document in
/// error messages.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

/// Output directory: ISOSPEC_OUTPUT_DIR when set, else `fallback`.
std::filesystem::path resolve_output_dir(const std::filesystem::path& fallback);

struct TaskError {
    std::string domain;
    std::string problem;
    std::string message;
};

struct DomainResult {
    DomainEntry domain;
    std::vector<ConvergenceStudy> studies;  // one per configured problem, same order
    std::vector<bool> solved;
    SpectraBundle bundle;  // extrapolated spectra
    std::vector<InequalityReport> reports;
    std::vector<ChainReport> chain;
};

struct Tally {
    int proven_held = 0;
    int proven_failed = 0;
    int conjecture_held = 0;
    int conjecture_failed = 0;
    int informational = 0;
};

struct VerifyResult {
    std::vector<DomainResult> domains;
    std::vector<TaskError> errors;
    Tally tally;
    int chain_failures = 0;
    /// 0 iff every proven inequality holds, every chain check passes and no
    /// solve failed; 1 otherwise.
    int exit_code() const;
};

/// Solves every domain × problem, evaluates the catalog on the extrapolated
/// spectra and, when `write` is set, writes spectra.csv, inequalities.csv,
/// chain.csv and summary.json into config.output_dir.
VerifyResult run_verify(const RunConfig& config, bool write = true);

struct ConstantsRow {
    int n = 2;
    double c_n = 0.0;
    double d_n = 0.0;
    double minimizer_t = 0.0;
    double j_endpoint = 0.0;  // Γ₁ of the unit ball
    std::optional<double> d_prime;
};

std::vector<ConstantsRow> compute_constants(const std::vector<int>& dims);
/// Writes constants.csv; returns its path.
std::filesystem::path write_constants(const std::vector<ConstantsRow>& rows, const std::filesystem::path& dir);

/// Writes curve_n<n>.csv with (t, J(t)/Γ₁(B₁), ok, error); returns its path.
std::filesystem::path write_curve(int n, const std::vector<double>& t_grid, const std::filesystem::path& dir);

/// Writes spectrum_<label>_<problem>.csv with one row per level and index;
/// returns its path.
std::filesystem::path write_spectrum(const ConvergenceStudy& study, const std::string& label, ProblemKind kind,
                                     const std::filesystem::path& dir);

/// %.12g
std::string format_number(double v);

}  // namespace isospec
