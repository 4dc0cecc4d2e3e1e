#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "isospec/shape.hpp"
#include "isospec/specfun.hpp"
#include "isospec/spectrum.hpp"

namespace isospec {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Rasterization failure: empty or disconnected mask, bad mesh width.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Eigensolver failure after the iteration budget; carries attained residuals.
class SolverError : public ConvergenceError {
public:
    SolverError(const std::string& what, std::vector<double> residuals)
        : ConvergenceError(what), residuals_(std::move(residuals)) {}
    const std::vector<double>& residuals() const { return residuals_; }

private:
    std::vector<double> residuals_;
};

/// Lattice nodes (i h, j h) strictly inside a shape.
struct GridDomain {
    std::string label;
    Shape shape = Shape::disk(1.0);
    double h = 0.0;
    double area_exact = 0.0;

    int i0 = 0, j0 = 0;  // lattice index of the window's lower-left node
    int nx = 0, ny = 0;  // window size; the window leaves ≥ 2 exterior nodes on every side
    std::vector<std::uint8_t> mask;          // nx*ny, row i-major
    std::vector<int> index;                  // node number or -1, same layout
    std::vector<std::array<int, 2>> nodes;   // lattice (i, j) of each interior node

    std::size_t node_count() const { return nodes.size(); }
    double x(int i) const { return i * h; }
    double y(int j) const { return j * h; }
    /// Node number of lattice point (i, j), or -1 outside the mask/window.
    int node(int i, int j) const;
};

/// Interior nodes are the lattice points with shape.level < -1e-10·h.
/// Throws DomainError on h ≤ 0, an empty mask or more than one 4-connected
/// component.
GridDomain rasterize(const Shape& shape, double h, std::string label = "");

/// Symmetric sparse pencil (A, B). B empty means the identity.
struct DiscreteOperator {
    ProblemKind kind = ProblemKind::dirichlet;
    double h = 0.0;
    std::string domain_label;
    double area_exact = 0.0;
    SparseMatrix A;
    SparseMatrix B;
    std::vector<std::array<int, 2>> nodes;  // lattice (i, j) per unknown

    Eigen::Index dim() const { return A.rows(); }
    bool has_mass() const { return B.rows() > 0; }
};

/// Dirichlet: 5-point Laplacian with zero exterior values.
/// Neumann: cut-cell form of the mirror-ghost 5-point scheme. The unknowns are
///   the lattice points whose dual cell meets the shape; edge weights are the
///   inside fraction of the shared dual face over h², masses the inside
///   fraction of the dual cell. On axis-aligned boundaries through lattice
///   lines this is exactly the mirror-ghost stencil.
/// Clamped: Lᴰ² + ½ GᵀG, where G collects the reflected-ghost Laplacian at
///   each exterior node touching the mask (w = 0 there, ghost = interior
///   mirror, giving -2/h² per interior neighbour).
/// Buckling: the pencil (clamped operator, Lᴰ) on the interior nodes.
DiscreteOperator assemble(const GridDomain& domain, ProblemKind kind);

/// Subsamples per axis used for the Neumann cut-cell fractions.
inline constexpr int kCutCellSamples = 16;

struct EigenSolverOptions {
    int block_size = 4;
    int max_basis = 0;              // 0: automatic from m and the problem size
    double ritz_tol = 1e-11;        // relative Krylov residual estimate
    double residual_tol = 1e-8;     // true residual relative to ‖A‖∞‖x‖
    std::uint64_t seed = 0x1505ec;  // start block RNG seed
    int dense_cutoff = 600;         // dense solve at or below this dimension
};

struct EigenPairs {
    std::vector<double> values;
    Eigen::MatrixXd vectors;  // B-orthonormal columns
    std::vector<double> residuals;  // ‖Ax - θBx‖ / (‖A‖∞‖x‖)
    int operator_applications = 0;
};

/// m smallest eigenpairs of the pencil, by shift-invert block Krylov with full
/// B-orthogonal reorthogonalization. For Neumann the constant vector is
/// deflated and returned first.
EigenPairs smallest_eigpairs(const DiscreteOperator& op, int m, const EigenSolverOptions& opts = {});

/// As smallest_eigpairs, packaged as a Spectrum with provenance `discrete`.
Spectrum smallest_eigs(const DiscreteOperator& op, int m, const EigenSolverOptions& opts = {});

/// xᵀAx / xᵀBx. Throws std::invalid_argument on a zero or mismatched vector.
double rayleigh_quotient(const DiscreteOperator& op, const Eigen::VectorXd& x);

/// Entrywise (4·fine - coarse)/3 with uncertainty |fine - coarse|/3, the
/// Richardson correction applied to the fine level.
/// Throws std::invalid_argument on mismatched kind, label, length or a mesh
/// ratio other than 2.
Spectrum extrapolate(const Spectrum& coarse, const Spectrum& fine);

/// Spectra on h, h/2, ..., h/2^{levels-1} plus the extrapolation of the two
/// finest levels.
struct ConvergenceStudy {
    std::vector<Spectrum> levels;
    Spectrum extrapolated;
    std::vector<double> seconds;  // wall time per level
};

ConvergenceStudy convergence_study(const Shape& shape, const std::string& label, ProblemKind kind, double h,
                                   int levels, int m, const EigenSolverOptions& opts = {});

}  // namespace isospec
