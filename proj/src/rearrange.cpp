#include "isospec/rearrange.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace isospec {
namespace {

std::vector<double> prepared(const GridFunction& f, bool signed_values) {
    f.validate();
    std::vector<double> v = f.values;
    if (!signed_values)
        for (double& x : v) x = std::abs(x);
    return v;
}

std::vector<double> sorted_desc(std::vector<double> v) {
    std::stable_sort(v.begin(), v.end(), std::greater<>());
    return v;
}

std::vector<double> profile_radii(double R, double h) {
    std::vector<double> r;
    for (int i = 0; i * h < R; ++i) r.push_back(i * h);
    r.push_back(R);
    return r;
}

double radius_of(const GridFunction& f) { return std::sqrt(f.domain->area_exact / std::numbers::pi); }

// Volume variable s(r) on the node measure.
double volume_at(const GridFunction& f, double r) {
    return std::numbers::pi * r * r * f.measure() / f.domain->area_exact;
}

}  // namespace

GridFunction::GridFunction(std::shared_ptr<const GridDomain> d, std::vector<double> v)
    : domain(std::move(d)), values(std::move(v)) {
    validate();
}

void GridFunction::validate() const {
    if (!domain) throw std::invalid_argument("grid function has no domain");
    if (values.size() != domain->node_count())
        throw std::invalid_argument("grid function length does not match the domain's node count");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("grid function has a non-finite value");
}

double DecreasingProfile::at(double s) const {
    if (values.empty()) return 0.0;
    // inf{t : μ(t) < s} is values[k] on (k·cell, (k+1)·cell]
    const double k = std::ceil(s / cell) - 1.0;
    const std::size_t idx = k < 0 ? 0 : std::min(values.size() - 1, std::size_t(k));
    return values[idx];
}

double DecreasingProfile::integral_to(double s) const {
    s = std::clamp(s, 0.0, total_measure());
    const std::size_t full = std::min(values.size(), std::size_t(std::floor(s / cell)));
    double sum = 0.0;
    for (std::size_t k = 0; k < full; ++k) sum += values[k];
    sum *= cell;
    if (full < values.size()) sum += (s - double(full) * cell) * values[full];
    return sum;
}

double distribution(const GridFunction& f, double t, bool signed_values) {
    const std::vector<double> v = prepared(f, signed_values);
    const auto count = std::count_if(v.begin(), v.end(), [t](double x) { return x > t; });
    return f.cell_area() * double(count);
}

DecreasingProfile decreasing_rearrangement(const GridFunction& f, bool signed_values) {
    DecreasingProfile p;
    p.cell = f.cell_area();
    p.values = sorted_desc(prepared(f, signed_values));
    return p;
}

RadialProfile spherical_rearrangement(const GridFunction& f, bool signed_values) {
    const DecreasingProfile d = decreasing_rearrangement(f, signed_values);
    RadialProfile p;
    p.R = radius_of(f);
    p.radii = profile_radii(p.R, f.domain->h);
    for (double r : p.radii) p.values.push_back(d.at(volume_at(f, r)));
    return p;
}

RadialProfile spherical_increasing_rearrangement(const GridFunction& f, bool signed_values) {
    const DecreasingProfile d = decreasing_rearrangement(f, signed_values);
    RadialProfile p;
    p.R = radius_of(f);
    p.radii = profile_radii(p.R, f.domain->h);
    // s ↦ |Ω| - s on the step grid: the k-th cell from the top maps to the
    // k-th smallest value.
    for (double r : p.radii) {
        const double s = volume_at(f, r);
        const double k = std::ceil(s / d.cell) - 1.0;
        const std::size_t idx = std::min(d.values.size() - 1, std::size_t(std::max(0.0, k)));
        p.values.push_back(d.values[d.values.size() - 1 - idx]);
    }
    return p;
}

GridFunction to_symmetric_grid(const RadialProfile& p, const GridFunction& f) {
    auto ball = std::make_shared<const GridDomain>(rasterize(Shape::disk(p.R), f.domain->h, "ball"));
    std::vector<double> vals;
    vals.reserve(ball->node_count());
    for (const auto& [i, j] : ball->nodes) {
        const double r = std::hypot(ball->x(i), ball->y(j));
        const auto it = std::upper_bound(p.radii.begin(), p.radii.end(), r);
        if (it == p.radii.end()) {
            vals.push_back(p.values.back());
            continue;
        }
        const std::size_t hi = std::size_t(it - p.radii.begin());
        const std::size_t lo = hi - 1;
        const double w = (r - p.radii[lo]) / (p.radii[hi] - p.radii[lo]);
        vals.push_back((1 - w) * p.values[lo] + w * p.values[hi]);
    }
    return GridFunction(std::move(ball), std::move(vals));
}

ProductBoundReport product_bound_check(const GridFunction& f, const GridFunction& g) {
    f.validate();
    g.validate();
    if (f.values.size() != g.values.size() || (f.domain != g.domain && f.domain->nodes != g.domain->nodes))
        throw std::invalid_argument("product_bound_check: functions live on different domains");
    const double cell = f.cell_area();
    ProductBoundReport r;
    double scale = 0.0;
    for (std::size_t k = 0; k < f.values.size(); ++k) {
        r.lhs += f.values[k] * g.values[k];
        scale += std::abs(f.values[k] * g.values[k]);
    }
    const std::vector<double> fs = sorted_desc(f.values), gs = sorted_desc(g.values);
    const std::size_t n = fs.size();
    for (std::size_t k = 0; k < n; ++k) {
        r.upper += fs[k] * gs[k];
        r.lower += fs[k] * gs[n - 1 - k];
    }
    r.lhs *= cell;
    r.upper *= cell;
    r.lower *= cell;
    r.tolerance = 1e-9 * std::max(scale * cell, std::max(std::abs(r.upper), std::abs(r.lower)));
    r.holds = r.lhs <= r.upper + r.tolerance && r.lhs >= r.lower - r.tolerance;
    return r;
}

RadialProfile symmetrized_poisson(const GridFunction& f) {
    const DecreasingProfile d = decreasing_rearrangement(f, true);
    const double kappa = f.measure() / f.domain->area_exact;
    RadialProfile v;
    v.R = radius_of(f);
    v.radii = profile_radii(v.R, f.domain->h);
    // F(t) = ∫₀ᵗ τ f^⋆(τ) dτ = (2πκ)⁻¹ ∫₀^{s(t)} f*(σ) dσ
    std::vector<double> integrand(v.radii.size(), 0.0);
    for (std::size_t i = 1; i < v.radii.size(); ++i) {
        const double t = v.radii[i];
        integrand[i] = d.integral_to(volume_at(f, t)) / (2.0 * std::numbers::pi * kappa) / t;
    }
    v.values.assign(v.radii.size(), 0.0);
    for (std::size_t i = v.radii.size() - 1; i-- > 0;) {
        const double dr = v.radii[i + 1] - v.radii[i];
        v.values[i] = v.values[i + 1] + 0.5 * dr * (integrand[i] + integrand[i + 1]);
    }
    return v;
}

TalentiReport talenti_compare(const GridFunction& f) {
    f.validate();
    double total = 0.0;
    for (double x : f.values) total += x;
    if (total < 0.0) throw TalentiHypothesisError("talenti_compare: ∫f < 0");

    const DiscreteOperator op = assemble(*f.domain, ProblemKind::dirichlet);
    Eigen::SimplicialLDLT<SparseMatrix> ldlt(op.A);
    if (ldlt.info() != Eigen::Success) throw std::runtime_error("talenti_compare: factorization failed");
    const Eigen::Map<const Eigen::VectorXd> rhs(f.values.data(), Eigen::Index(f.values.size()));
    const Eigen::VectorXd u = ldlt.solve(rhs);

    TalentiReport rep;
    rep.u = GridFunction(f.domain, std::vector<double>(u.data(), u.data() + u.size()));
    const double umax = u.maxCoeff(), umin = u.minCoeff();
    if (umin < -f.domain->h * std::max(umax, 0.0))
        throw TalentiHypothesisError("talenti_compare: Poisson solution is significantly negative (min u = " +
                                     std::to_string(umin) + ")");
    rep.u_star = spherical_rearrangement(rep.u, true);
    rep.v = symmetrized_poisson(f);
    const double vmax = *std::max_element(rep.v.values.begin(), rep.v.values.end());
    rep.tolerance = kTalentiC * f.domain->h * std::max(vmax, 0.0);
    for (std::size_t i = 0; i < rep.v.values.size(); ++i) {
        rep.max_violation = std::max(rep.max_violation, rep.u_star.values[i] - rep.v.values[i]);
        if (i + 1 < rep.v.values.size()) {
            const double a = std::max(0.0, rep.u_star.values[i] - rep.v.values[i]) * rep.v.radii[i];
            const double b = std::max(0.0, rep.u_star.values[i + 1] - rep.v.values[i + 1]) * rep.v.radii[i + 1];
            rep.integrated_violation += std::numbers::pi * (rep.v.radii[i + 1] - rep.v.radii[i]) * (a + b);
        }
    }
    rep.dominated = rep.max_violation <= rep.tolerance;
    return rep;
}

double dirichlet_energy(const GridFunction& f) {
    f.validate();
    const DiscreteOperator op = assemble(*f.domain, ProblemKind::dirichlet);
    const Eigen::Map<const Eigen::VectorXd> x(f.values.data(), Eigen::Index(f.values.size()));
    return f.cell_area() * x.dot(op.A * x);
}

}  // namespace isospec
