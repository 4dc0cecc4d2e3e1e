#include "isospec/grid_eig.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <queue>
#include <stdexcept>

namespace isospec {
namespace {

using Triplet = Eigen::Triplet<double>;

constexpr int kPad = 2;
constexpr double kInsideEps = 1e-10;

// Labels every node of `inside` with its 4-connected component; returns the
// number of components.
int label_components(int nx, int ny, const std::vector<std::uint8_t>& inside, std::vector<int>& comp) {
    comp.assign(inside.size(), -1);
    int count = 0;
    std::queue<int> q;
    for (int start = 0; start < nx * ny; ++start) {
        if (!inside[start] || comp[start] >= 0) continue;
        comp[start] = count;
        q.push(start);
        while (!q.empty()) {
            const int c = q.front();
            q.pop();
            const int i = c / ny, j = c % ny;
            const int nb[4][2] = {{i + 1, j}, {i - 1, j}, {i, j + 1}, {i, j - 1}};
            for (const auto& p : nb) {
                if (p[0] < 0 || p[0] >= nx || p[1] < 0 || p[1] >= ny) continue;
                const int k = p[0] * ny + p[1];
                if (inside[k] && comp[k] < 0) {
                    comp[k] = count;
                    q.push(k);
                }
            }
        }
        ++count;
    }
    return count;
}

SparseMatrix dirichlet_laplacian(const GridDomain& d) {
    const double w = 1.0 / (d.h * d.h);
    std::vector<Triplet> t;
    t.reserve(d.node_count() * 5);
    for (std::size_t r = 0; r < d.nodes.size(); ++r) {
        const auto [i, j] = d.nodes[r];
        t.emplace_back(int(r), int(r), 4.0 * w);
        const int nb[4][2] = {{i + 1, j}, {i - 1, j}, {i, j + 1}, {i, j - 1}};
        for (const auto& p : nb) {
            const int c = d.node(p[0], p[1]);
            if (c >= 0) t.emplace_back(int(r), c, -w);
        }
    }
    const auto n = static_cast<Eigen::Index>(d.node_count());
    SparseMatrix L(n, n);
    L.setFromTriplets(t.begin(), t.end());
    return L;
}

SparseMatrix clamped_operator(const GridDomain& d, const SparseMatrix& L) {
    const double g = -2.0 / (d.h * d.h);
    std::map<std::pair<int, int>, int> ghost_row;
    std::vector<Triplet> t;
    for (std::size_t r = 0; r < d.nodes.size(); ++r) {
        const auto [i, j] = d.nodes[r];
        const int nb[4][2] = {{i + 1, j}, {i - 1, j}, {i, j + 1}, {i, j - 1}};
        for (const auto& p : nb) {
            if (d.node(p[0], p[1]) >= 0) continue;
            const auto key = std::make_pair(p[0], p[1]);
            auto it = ghost_row.find(key);
            if (it == ghost_row.end()) it = ghost_row.emplace(key, int(ghost_row.size())).first;
            t.emplace_back(it->second, int(r), g);
        }
    }
    SparseMatrix G(static_cast<Eigen::Index>(ghost_row.size()), L.cols());
    G.setFromTriplets(t.begin(), t.end());
    SparseMatrix LL = L * L;
    SparseMatrix GG = SparseMatrix(G.transpose()) * G;
    SparseMatrix K = LL + 0.5 * GG;
    SparseMatrix Kt = K.transpose();
    SparseMatrix sym = 0.5 * (K + Kt);
    sym.prune(0.0);
    return sym;
}

// Fraction of the h×h cell centred at (x, y) inside the shape.
double cell_fraction(const Shape& s, double x, double y, double h) {
    const double lv = s.level(x, y);
    if (lv <= -0.7072 * h) return 1.0;
    if (lv >= 0.7072 * h) return 0.0;
    int in = 0;
    for (int a = 0; a < kCutCellSamples; ++a) {
        const double px = x + ((a + 0.5) / kCutCellSamples - 0.5) * h;
        for (int b = 0; b < kCutCellSamples; ++b) {
            const double py = y + ((b + 0.5) / kCutCellSamples - 0.5) * h;
            in += s.contains(px, py) ? 1 : 0;
        }
    }
    return double(in) / (kCutCellSamples * kCutCellSamples);
}

// Fraction of the segment of length h centred at (x, y) inside the shape,
// along x (dir = 0) or y (dir = 1).
double face_fraction(const Shape& s, double x, double y, double h, int dir) {
    const double lv = s.level(x, y);
    if (lv <= -0.5001 * h) return 1.0;
    if (lv >= 0.5001 * h) return 0.0;
    int in = 0;
    for (int a = 0; a < kCutCellSamples; ++a) {
        const double off = ((a + 0.5) / kCutCellSamples - 0.5) * h;
        in += (dir == 0 ? s.contains(x + off, y) : s.contains(x, y + off)) ? 1 : 0;
    }
    return double(in) / kCutCellSamples;
}

DiscreteOperator neumann_operator(const GridDomain& d) {
    const int nx = d.nx + 2, ny = d.ny + 2;  // one more ring: cells may poke out of the mask window
    const int i0 = d.i0 - 1, j0 = d.j0 - 1;
    const double h = d.h;
    std::vector<double> frac(std::size_t(nx) * ny, 0.0);
    for (int a = 0; a < nx; ++a)
        for (int b = 0; b < ny; ++b) frac[std::size_t(a) * ny + b] = cell_fraction(d.shape, (i0 + a) * h, (j0 + b) * h, h);

    // Face weights to the +x and +y neighbour.
    std::vector<double> wx(frac.size(), 0.0), wy(frac.size(), 0.0);
    std::vector<std::uint8_t> linked(frac.size(), 0);
    for (int a = 0; a < nx; ++a) {
        for (int b = 0; b < ny; ++b) {
            const std::size_t k = std::size_t(a) * ny + b;
            if (frac[k] <= 0.0) continue;
            if (a + 1 < nx && frac[k + ny] > 0.0) {
                wx[k] = face_fraction(d.shape, (i0 + a + 0.5) * h, (j0 + b) * h, h, 1);
                if (wx[k] > 0.0) linked[k] = linked[k + ny] = 1;
            }
            if (b + 1 < ny && frac[k + 1] > 0.0) {
                wy[k] = face_fraction(d.shape, (i0 + a) * h, (j0 + b + 0.5) * h, h, 0);
                if (wy[k] > 0.0) linked[k] = linked[k + 1] = 1;
            }
        }
    }
    // Keep the largest connected piece of the weighted graph; slivers of a cut
    // cell that share no face with a neighbour would add spurious zero modes.
    std::vector<int> comp;
    {
        std::vector<int> parent(frac.size());
        for (std::size_t k = 0; k < parent.size(); ++k) parent[k] = int(k);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (int a = 0; a < nx; ++a)
            for (int b = 0; b < ny; ++b) {
                const int k = a * ny + b;
                if (wx[k] > 0.0) parent[find(k)] = find(k + ny);
                if (wy[k] > 0.0) parent[find(k)] = find(k + 1);
            }
        std::map<int, double> mass;
        for (std::size_t k = 0; k < frac.size(); ++k)
            if (linked[k]) mass[find(int(k))] += frac[k];
        int best = -1;
        double best_mass = -1.0;
        for (const auto& [root, m] : mass)
            if (m > best_mass) best = root, best_mass = m;
        comp.assign(frac.size(), 0);
        for (std::size_t k = 0; k < frac.size(); ++k) comp[k] = linked[k] && find(int(k)) == best;
    }

    DiscreteOperator op;
    std::vector<int> index(frac.size(), -1);
    for (int a = 0; a < nx; ++a)
        for (int b = 0; b < ny; ++b) {
            const int k = a * ny + b;
            if (!comp[k]) continue;
            index[k] = int(op.nodes.size());
            op.nodes.push_back({i0 + a, j0 + b});
        }
    const auto n = static_cast<Eigen::Index>(op.nodes.size());
    const double inv_h2 = 1.0 / (h * h);
    std::vector<Triplet> t, m;
    for (int a = 0; a < nx; ++a) {
        for (int b = 0; b < ny; ++b) {
            const int k = a * ny + b;
            const int r = index[k];
            if (r < 0) continue;
            m.emplace_back(r, r, frac[k]);
            auto edge = [&](int other, double w) {
                const int c = index[other];
                if (c < 0 || w <= 0.0) return;
                w *= inv_h2;
                t.emplace_back(r, r, w);
                t.emplace_back(c, c, w);
                t.emplace_back(r, c, -w);
                t.emplace_back(c, r, -w);
            };
            if (a + 1 < nx) edge(k + ny, wx[k]);
            if (b + 1 < ny) edge(k + 1, wy[k]);
        }
    }
    op.A.resize(n, n);
    op.A.setFromTriplets(t.begin(), t.end());
    op.B.resize(n, n);
    op.B.setFromTriplets(m.begin(), m.end());
    return op;
}

}  // namespace

int GridDomain::node(int i, int j) const {
    const int a = i - i0, b = j - j0;
    if (a < 0 || a >= nx || b < 0 || b >= ny) return -1;
    return index[std::size_t(a) * ny + b];
}

GridDomain rasterize(const Shape& shape, double h, std::string label) {
    if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("mesh width must be a positive number");
    const auto box = shape.bounding_box();
    GridDomain d;
    d.label = label.empty() ? shape.describe() : std::move(label);
    d.shape = shape;
    d.h = h;
    d.area_exact = shape.area();
    d.i0 = int(std::floor(box[0] / h)) - kPad;
    d.j0 = int(std::floor(box[2] / h)) - kPad;
    const double ext_x = std::ceil(box[1] / h) + kPad - d.i0 + 1;
    const double ext_y = std::ceil(box[3] / h) + kPad - d.j0 + 1;
    if (ext_x * ext_y > 5e7) throw DomainError("mesh too fine for the shape's bounding box");
    d.nx = int(ext_x);
    d.ny = int(ext_y);
    d.mask.assign(std::size_t(d.nx) * d.ny, 0);
    d.index.assign(d.mask.size(), -1);
    for (int a = 0; a < d.nx; ++a)
        for (int b = 0; b < d.ny; ++b)
            d.mask[std::size_t(a) * d.ny + b] = shape.level((d.i0 + a) * h, (d.j0 + b) * h) < -kInsideEps * h;
    std::vector<int> comp;
    const int ncomp = label_components(d.nx, d.ny, d.mask, comp);
    if (ncomp == 0) throw DomainError("rasterized domain '" + d.label + "' has no interior nodes");
    if (ncomp > 1)
        throw DomainError("rasterized domain '" + d.label + "' is disconnected (" + std::to_string(ncomp) +
                          " components); refine the mesh");
    for (int a = 0; a < d.nx; ++a)
        for (int b = 0; b < d.ny; ++b) {
            const std::size_t k = std::size_t(a) * d.ny + b;
            if (!d.mask[k]) continue;
            d.index[k] = int(d.nodes.size());
            d.nodes.push_back({d.i0 + a, d.j0 + b});
        }
    return d;
}

DiscreteOperator assemble(const GridDomain& domain, ProblemKind kind) {
    DiscreteOperator op;
    switch (kind) {
        case ProblemKind::dirichlet:
            op.A = dirichlet_laplacian(domain);
            op.nodes = domain.nodes;
            break;
        case ProblemKind::neumann:
            op = neumann_operator(domain);
            break;
        case ProblemKind::clamped:
            op.A = clamped_operator(domain, dirichlet_laplacian(domain));
            op.nodes = domain.nodes;
            break;
        case ProblemKind::buckling: {
            SparseMatrix L = dirichlet_laplacian(domain);
            op.A = clamped_operator(domain, L);
            op.B = std::move(L);
            op.nodes = domain.nodes;
            break;
        }
    }
    op.kind = kind;
    op.h = domain.h;
    op.domain_label = domain.label;
    op.area_exact = domain.area_exact;
    SparseMatrix diff = op.A - SparseMatrix(op.A.transpose());
    if (diff.cols() > 0 && diff.coeffs().size() > 0 && diff.coeffs().cwiseAbs().maxCoeff() != 0.0)
        throw std::logic_error("assembled operator is not symmetric");
    return op;
}

double rayleigh_quotient(const DiscreteOperator& op, const Eigen::VectorXd& x) {
    if (x.size() != op.dim()) throw std::invalid_argument("rayleigh_quotient: vector length does not match the operator");
    if (x.squaredNorm() == 0.0) throw std::invalid_argument("rayleigh_quotient: zero vector");
    const double num = x.dot(op.A * x);
    const double den = op.has_mass() ? x.dot(op.B * x) : x.squaredNorm();
    return num / den;
}

Spectrum extrapolate(const Spectrum& coarse, const Spectrum& fine) {
    if (coarse.kind != fine.kind) throw std::invalid_argument("extrapolate: problem kinds differ");
    if (coarse.domain_label != fine.domain_label) throw std::invalid_argument("extrapolate: domains differ");
    if (coarse.dimension != fine.dimension) throw std::invalid_argument("extrapolate: dimensions differ");
    if (coarse.size() != fine.size()) throw std::invalid_argument("extrapolate: spectra have different lengths");
    if (!(fine.mesh_width > 0.0) || std::abs(coarse.mesh_width / fine.mesh_width - 2.0) > 1e-12)
        throw std::invalid_argument("extrapolate: mesh ratio must be exactly 2");
    Spectrum out = fine;
    out.provenance = Provenance::discrete_extrapolated;
    out.uncertainty.assign(fine.size(), 0.0);
    for (std::size_t i = 0; i < fine.size(); ++i) {
        out.values[i] = (4.0 * fine.values[i] - coarse.values[i]) / 3.0;
        out.uncertainty[i] = std::abs(fine.values[i] - coarse.values[i]) / 3.0;
    }
    return out;
}

ConvergenceStudy convergence_study(const Shape& shape, const std::string& label, ProblemKind kind, double h,
                                   int levels, int m, const EigenSolverOptions& opts) {
    if (levels < 2) throw std::invalid_argument("convergence_study: need at least 2 mesh levels");
    ConvergenceStudy study;
    double hl = h;
    for (int l = 0; l < levels; ++l, hl *= 0.5) {
        const auto t0 = std::chrono::steady_clock::now();
        const GridDomain d = rasterize(shape, hl, label);
        const DiscreteOperator op = assemble(d, kind);
        study.levels.push_back(smallest_eigs(op, m, opts));
        study.seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    study.extrapolated = extrapolate(study.levels[levels - 2], study.levels[levels - 1]);
    return study;
}

}  // namespace isospec
