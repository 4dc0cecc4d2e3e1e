#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "isospec/grid_eig.hpp"

namespace isospec {
namespace {

double inf_norm(const SparseMatrix& A) {
    Eigen::VectorXd rows = Eigen::VectorXd::Zero(A.rows());
    for (Eigen::Index k = 0; k < A.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(A, k); it; ++it) rows[it.row()] += std::abs(it.value());
    return rows.size() ? rows.maxCoeff() : 0.0;
}

struct Pencil {
    const DiscreteOperator& op;
    Eigen::VectorXd B(const Eigen::VectorXd& x) const { return op.has_mass() ? Eigen::VectorXd(op.B * x) : x; }
};

void fill_residuals(const DiscreteOperator& op, EigenPairs& out) {
    const Pencil P{op};
    const double anorm = inf_norm(op.A);
    out.residuals.resize(out.values.size());
    for (std::size_t k = 0; k < out.values.size(); ++k) {
        const Eigen::VectorXd x = out.vectors.col(Eigen::Index(k));
        const Eigen::VectorXd r = op.A * x - out.values[k] * P.B(x);
        out.residuals[k] = r.norm() / (anorm * x.norm());
    }
}

EigenPairs dense_solve(const DiscreteOperator& op, int m) {
    const Eigen::MatrixXd A(op.A);
    EigenPairs out;
    Eigen::VectorXd vals;
    if (op.has_mass()) {
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::MatrixXd(op.B));
        if (es.info() != Eigen::Success) throw SolverError("dense generalized eigensolve failed", {});
        vals = es.eigenvalues();
        out.vectors = es.eigenvectors().leftCols(m);
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
        if (es.info() != Eigen::Success) throw SolverError("dense eigensolve failed", {});
        vals = es.eigenvalues();
        out.vectors = es.eigenvectors().leftCols(m);
    }
    out.values.assign(vals.data(), vals.data() + m);
    fill_residuals(op, out);
    return out;
}

}  // namespace

EigenPairs smallest_eigpairs(const DiscreteOperator& op, int m, const EigenSolverOptions& opts) {
    const Eigen::Index n = op.dim();
    if (m < 1) throw std::invalid_argument("smallest_eigs: m must be ≥ 1");
    if (m > n) throw std::invalid_argument("smallest_eigs: m exceeds the operator dimension");
    if (n <= opts.dense_cutoff) return dense_solve(op, m);

    const bool neumann = op.kind == ProblemKind::neumann;
    const int want = neumann ? m - 1 : m;
    const int bs = std::max(1, opts.block_size);
    if (Eigen::Index(4) * (want + bs) > n)
        throw std::invalid_argument("smallest_eigs: m must be much smaller than the operator dimension");
    const Pencil P{op};

    // Shift: 0 for the definite problems; a positive multiple of the diagonal
    // scale ratio for Neumann so that A + σB is definite.
    double sigma = 0.0;
    if (neumann) sigma = 1.0 / op.area_exact;

    SparseMatrix shifted = op.A;
    if (sigma != 0.0) shifted += sigma * op.B;
    Eigen::SimplicialLDLT<SparseMatrix> ldlt(shifted);
    if (ldlt.info() != Eigen::Success) throw SolverError("sparse factorization failed", {});
    if ((ldlt.vectorD().array() <= 0.0).any())
        throw SolverError("shifted operator is not positive definite (factorization pivot ≤ 0)", {});

    // Constant vector for Neumann, B-normalized.
    Eigen::VectorXd c;
    if (neumann) {
        c = Eigen::VectorXd::Ones(n);
        c /= std::sqrt(c.dot(P.B(c)));
    }
    auto deflate = [&](Eigen::VectorXd& w) {
        if (neumann) w -= c * c.dot(P.B(w));
    };

    EigenPairs out;
    if (want == 0) {
        out.values = {rayleigh_quotient(op, c)};
        out.vectors = c;
        fill_residuals(op, out);
        return out;
    }

    long budget = opts.max_basis > 0 ? opts.max_basis : std::max(10L * want + 8L * bs, 80L);
    budget = std::min<long>(budget, long(6e7 / double(n)));
    budget = std::min<long>(budget, long(n) - 1);
    const Eigen::Index cap = std::max<Eigen::Index>(budget, Eigen::Index(2) * (want + bs));

    Eigen::MatrixXd V(n, cap + bs);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(cap + bs, cap + bs);
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    // Orthogonalizes w against V[:, 0:cols) twice (B inner product), records
    // the coefficients in `coef`, and returns the B-norm of the remainder.
    auto orthogonalize = [&](Eigen::VectorXd& w, Eigen::Index cols, Eigen::VectorXd& coef) {
        coef.setZero(cols);
        for (int pass = 0; pass < 2; ++pass) {
            deflate(w);
            const Eigen::VectorXd bw = P.B(w);
            const Eigen::VectorXd a = V.leftCols(cols).transpose() * bw;
            w.noalias() -= V.leftCols(cols) * a;
            coef += a;
        }
        return std::sqrt(std::max(0.0, w.dot(P.B(w))));
    };
    auto random_vector = [&]() {
        Eigen::VectorXd w(n);
        for (Eigen::Index i = 0; i < n; ++i) w[i] = gauss(rng);
        return w;
    };

    // Start block.
    Eigen::Index cols = 0;
    Eigen::VectorXd coef;
    while (cols < bs) {
        Eigen::VectorXd w = random_vector();
        const double nrm = orthogonalize(w, cols, coef);
        if (nrm <= 0.0) continue;
        V.col(cols++) = w / nrm;
    }

    std::vector<double> estimates(std::size_t(want), INFINITY);
    Eigen::Index block_start = 0;  // first column of the block being expanded
    while (true) {
        // Expand: W = T V_block, orthogonalize column by column. Column
        // block_start + k of H receives the coordinates of T v_{block_start+k}.
        for (int k = 0; k < bs; ++k) {
            const Eigen::Index src = block_start + k;
            Eigen::VectorXd w = ldlt.solve(P.B(V.col(src)));
            ++out.operator_applications;
            const double before = std::sqrt(std::max(0.0, w.dot(P.B(w))));
            double nrm = orthogonalize(w, cols, coef);
            H.block(0, src, cols, 1) = coef;
            if (nrm <= 1e-12 * before) {
                // Invariant subspace reached for this direction: continue with
                // a fresh random vector, which leaves a zero coupling entry.
                w = random_vector();
                Eigen::VectorXd unused;
                nrm = orthogonalize(w, cols, unused);
                V.col(cols) = w / nrm;
            } else {
                H(cols, src) = nrm;
                V.col(cols) = w / nrm;
            }
            ++cols;
        }
        block_start += bs;

        // Rayleigh-Ritz on the first block_start columns (their images are known).
        const Eigen::Index k = block_start;
        Eigen::MatrixXd Hs = H.topLeftCorner(k, k);
        Hs = 0.5 * (Hs + Hs.transpose()).eval();
        if (k >= want + bs) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Hs);
            // Largest θ of T are the smallest eigenvalues of the pencil.
            const Eigen::MatrixXd coupling = H.block(k, 0, cols - k, k);
            bool converged = true;
            for (int i = 0; i < want; ++i) {
                const Eigen::Index idx = k - 1 - i;
                const double theta = es.eigenvalues()[idx];
                estimates[std::size_t(i)] = (coupling * es.eigenvectors().col(idx)).norm() / std::abs(theta);
                if (!(estimates[std::size_t(i)] <= opts.ritz_tol)) converged = false;
            }
            if (converged) {
                Eigen::MatrixXd Y(k, want);
                for (int i = 0; i < want; ++i) Y.col(i) = es.eigenvectors().col(k - 1 - i);
                Eigen::MatrixXd X = V.leftCols(k) * Y;
                EigenPairs trial;
                std::vector<std::pair<double, Eigen::Index>> order;
                for (int i = 0; i < want; ++i) {
                    Eigen::VectorXd x = X.col(i);
                    x /= std::sqrt(x.dot(P.B(x)));
                    X.col(i) = x;
                    order.emplace_back(rayleigh_quotient(op, x), i);
                }
                std::sort(order.begin(), order.end());
                const int off = neumann ? 1 : 0;
                trial.vectors.resize(n, m);
                if (neumann) {
                    trial.values.push_back(rayleigh_quotient(op, c));
                    trial.vectors.col(0) = c;
                }
                for (int i = 0; i < want; ++i) {
                    trial.values.push_back(order[std::size_t(i)].first);
                    trial.vectors.col(i + off) = X.col(order[std::size_t(i)].second);
                }
                fill_residuals(op, trial);
                bool ok = true;
                for (double r : trial.residuals) ok = ok && r <= opts.residual_tol;
                if (ok) {
                    trial.operator_applications = out.operator_applications;
                    return trial;
                }
            }
        }
        if (cols + bs > cap + bs || block_start + bs > cap) {
            std::string msg = "eigensolver did not converge within " + std::to_string(cap) +
                              " basis vectors; Ritz residual estimates:";
            for (double e : estimates) msg += " " + std::to_string(e);
            throw SolverError(msg, estimates);
        }
    }
}

Spectrum smallest_eigs(const DiscreteOperator& op, int m, const EigenSolverOptions& opts) {
    const EigenPairs pairs = smallest_eigpairs(op, m, opts);
    Spectrum s;
    s.kind = op.kind;
    s.dimension = 2;
    s.values = pairs.values;
    s.domain_label = op.domain_label;
    s.provenance = Provenance::discrete;
    s.mesh_width = op.h;
    return s;
}

}  // namespace isospec
