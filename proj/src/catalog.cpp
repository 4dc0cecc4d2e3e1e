#include "isospec/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

#include "isospec/ball_spectra.hpp"
#include "isospec/specfun.hpp"
#include "isospec/two_ball.hpp"

namespace isospec {
namespace {

using K = ProblemKind;

std::vector<InequalityDef> build_catalog() {
    auto def = [](std::string id, Status st, Family fam, std::vector<K> kinds, bool indexed, std::string need,
                  std::string statement, std::string cite, int min_n = 2, int max_n = 0) {
        return InequalityDef{std::move(id),
                             st,
                             fam,
                             Requirement{std::move(kinds), indexed, min_n, max_n, std::move(need)},
                             std::move(statement),
                             std::move(cite)};
    };
    const auto P = Status::proven, C = Status::conjecture, I = Status::informational;
    return {
        def("ppw_gap", P, Family::membrane_gap, {K::dirichlet}, true, "lambda_1..lambda_{m+1}",
            "lambda_{m+1} <= lambda_m + (4/(mn)) sum_{i<=m} lambda_i",
            "Payne, Polya, Weinberger (1956); Thompson (1969)"),
        def("yang1", P, Family::membrane_gap, {K::dirichlet}, true, "lambda_1..lambda_{m+1}",
            "lambda_{m+1} <= larger root of m x^2 - 2(1+2/n)(sum lambda_i) x + (1+4/n) sum lambda_i^2",
            "H. C. Yang (1991), first inequality"),
        def("yang2", P, Family::membrane_gap, {K::dirichlet}, true, "lambda_1..lambda_{m+1}",
            "lambda_{m+1} <= (1+4/n) (1/m) sum_{i<=m} lambda_i", "H. C. Yang (1991), second inequality"),
        def("hile_protter", P, Family::membrane_gap, {K::dirichlet}, true, "lambda_1..lambda_{m+1}",
            "mn/4 <= sum_{i<=m} lambda_i/(lambda_{m+1} - lambda_i)", "Hile, Protter (1980)"),
        def("sum_n4", P, Family::membrane_low, {K::dirichlet}, false, "lambda_1..lambda_{n+1}",
            "(lambda_2 + ... + lambda_{n+1})/lambda_1 <= n + 4", "Payne, Polya, Weinberger (1956)"),
        def("brands", P, Family::membrane_low, {K::dirichlet}, false, "lambda_1..lambda_{n+1}",
            "(lambda_2 + ... + lambda_{n+1})/lambda_1 <= n + 3 + lambda_1/lambda_2",
            "Brands (1964); Hile, Protter (1980)"),
        def("l2l3_window", I, Family::membrane_low, {K::dirichlet}, false, "lambda_1..lambda_3, n = 2",
            "5.077 <= (lambda_2 + lambda_3)/lambda_1 <= 5.50661 (range of the supremum)",
            "Payne-Polya-Weinberger conjecture (disk value 5.077)", 2, 2),
        def("l3_window", I, Family::membrane_low, {K::dirichlet}, false, "lambda_1..lambda_3, n = 2",
            "3.1818 <= lambda_3/lambda_1 <= 3.83103 (range of the supremum)",
            "sqrt(8) x sqrt(3) rectangle value 35/11", 2, 2),
        def("faber_krahn", P, Family::isoperimetric, {K::dirichlet}, false, "lambda_1, volume",
            "lambda_1(ball) <= lambda_1", "Faber (1923); Krahn (1925)"),
        def("szego_weinberger", P, Family::isoperimetric, {K::neumann}, false, "mu_1, volume",
            "mu_1 <= mu_1(ball)", "Szego (1954); Weinberger (1956)"),
        def("ppw_ratio", P, Family::isoperimetric, {K::dirichlet}, false, "lambda_1, lambda_2",
            "lambda_2/lambda_1 <= j_{n/2,1}^2 / j_{n/2-1,1}^2",
            "Payne-Polya-Weinberger conjecture (1956), proved 1991"),
        def("fixed_lambda1", P, Family::isoperimetric, {K::dirichlet}, false, "lambda_1, lambda_2",
            "lambda_2 <= lambda_2(B_R) with lambda_1(B_R) = lambda_1",
            "fixed-lambda_1 form of the Payne-Polya-Weinberger inequality (1991)"),
        def("payne_buckling", P, Family::isoperimetric, {K::dirichlet, K::buckling}, false, "lambda_2, Lambda_1",
            "lambda_2 <= Lambda_1", "Payne (1955)"),
        def("krahn_l2", P, Family::isoperimetric, {K::dirichlet}, false, "lambda_2, volume",
            "2^{2/n} lambda_1(ball) <= lambda_2", "Krahn (1926)"),
        def("bramble_payne", P, Family::isoperimetric, {K::buckling}, false, "Lambda_1, volume",
            "c_n Lambda_1(ball) <= Lambda_1, c_n = 2^{2/n} (j_{n/2-1,1}/j_{n/2,1})^2",
            "Payne (1955); Bramble, Payne"),
        def("two_ball_bound", P, Family::isoperimetric, {K::clamped}, false, "Gamma_1, volume",
            "d_n Gamma_1(ball) <= Gamma_1, d_n from the two-ball problem",
            "Talenti (1981); two-ball minimization"),
        def("rayleigh_plate", P, Family::isoperimetric, {K::clamped}, false, "Gamma_1, volume",
            "Gamma_1(ball) <= Gamma_1 (proven for n = 2, 3; conjecture for n >= 4)",
            "Rayleigh conjecture (1877); Nadirashvili (n = 2)"),
        def("polya_szego", C, Family::isoperimetric, {K::buckling}, false, "Lambda_1, volume",
            "Lambda_1(ball) <= Lambda_1", "Polya-Szego conjecture (1951)"),
        def("ppw_plate_gap", P, Family::plate, {K::clamped}, true, "Gamma_1..Gamma_{m+1}",
            "Gamma_{m+1} <= Gamma_m + 8(n+2)/(n^2 m) sum_{i<=m} Gamma_i", "Payne, Polya, Weinberger (1956)"),
        def("ppw_plate_gap_sqrt", P, Family::plate, {K::clamped}, true, "Gamma_1..Gamma_{m+1}",
            "Gamma_{m+1} <= Gamma_m + 8(n+2)/(n^2 m^2) (sum_{i<=m} Gamma_i^{1/2})^2",
            "Payne, Polya, Weinberger (1956), sharpened form"),
        def("hile_yeh", P, Family::plate, {K::clamped}, true, "Gamma_1..Gamma_{m+1}",
            "n^2 m^2/(8(n+2)) <= (sum Gamma_i^{1/2}/(Gamma_{m+1} - Gamma_i)) (sum Gamma_i^{1/2})",
            "Hile, Yeh (1984); Hook (1990); Chen, Qian (1990)"),
        def("conj_356", C, Family::plate, {K::clamped}, true, "Gamma_1..Gamma_{m+1}",
            "n^2 m^2/(8(n+2)) <= (sum (Gamma_i/(Gamma_{m+1} - Gamma_i))^{1/2})^2",
            "conjectured strengthening of Hile, Yeh (1984)"),
        def("cheb_357", P, Family::plate, {K::clamped}, true, "Gamma_1..Gamma_{m+1}",
            "n^2 m/(8(n+2)) <= sum Gamma_i/(Gamma_{m+1} - Gamma_i)",
            "Hile, Yeh (1984) with Chebyshev's inequality"),
        def("sum_plate_sqrt", P, Family::plate, {K::clamped}, false, "Gamma_1..Gamma_{n+1}",
            "(Gamma_2^{1/2} + ... + Gamma_{n+1}^{1/2})/Gamma_1^{1/2} <= n + 4",
            "Payne-Polya-Weinberger analog for the clamped plate"),
        def("sum_plate", P, Family::plate, {K::clamped}, false, "Gamma_1..Gamma_{n+1}",
            "(Gamma_2 + ... + Gamma_{n+1})/Gamma_1 <= n + 24",
            "Payne-Polya-Weinberger analog for the clamped plate"),
        def("ratio_165", P, Family::plate, {K::clamped}, true, "Gamma_m, Gamma_{m+1}",
            "Gamma_{m+1}/Gamma_m <= (1 + 4/n)^2", "Payne, Polya, Weinberger (1956)"),
        def("hile_yeh_cubic", P, Family::plate, {K::clamped}, false, "Gamma_1, Gamma_2",
            "Gamma_2/Gamma_1 <= root > 1 of (x-1)^3 = 512x/(n^2(n+2))", "Hile, Yeh (1984)"),
        def("ppw_buckling", P, Family::buckling, {K::buckling}, false, "Lambda_1, Lambda_2",
            "Lambda_2/Lambda_1 <= 1 + 4/n", "Payne, Polya, Weinberger (1956)"),
        def("hile_yeh_buckling", P, Family::buckling, {K::buckling}, false, "Lambda_1, Lambda_2",
            "Lambda_2/Lambda_1 <= (n^2 + 8n + 20)/(n + 2)^2", "Hile, Yeh (1984)"),
        def("sum_buckling", P, Family::buckling, {K::buckling}, false, "Lambda_1..Lambda_{n+1}",
            "(Lambda_2 + ... + Lambda_{n+1})/Lambda_1 <= n + 4",
            "Payne-Polya-Weinberger analog for the buckling problem"),
        def("polya_dirichlet", C, Family::polya, {K::dirichlet}, true, "lambda_1..lambda_k, area, n = 2",
            "4 pi k/A <= lambda_k", "Polya conjecture (1961)", 2, 2),
        def("polya_neumann", C, Family::polya, {K::neumann}, true, "mu_0..mu_k, area, n = 2",
            "mu_k <= 4 pi k/A", "Polya conjecture (1961)", 2, 2),
        def("ratio_membrane", C, Family::ratio, {K::dirichlet}, true, "lambda_m, lambda_{m+1}",
            "lambda_{m+1}/lambda_m <= (lambda_2/lambda_1)(ball) (proven for m <= 3)",
            "Payne-Polya-Weinberger ratio conjecture"),
        def("ratio_plate", C, Family::ratio, {K::clamped}, false, "Gamma_1, Gamma_2",
            "Gamma_2/Gamma_1 <= (Gamma_2/Gamma_1)(ball)", "Payne-Polya-Weinberger-type conjecture for the plate"),
        def("ratio_buckling", C, Family::ratio, {K::buckling}, false, "Lambda_1, Lambda_2",
            "Lambda_2/Lambda_1 <= (Lambda_2/Lambda_1)(ball)",
            "Payne-Polya-Weinberger-type conjecture for buckling"),
    };
}

void check_family(const InequalityDef& d, Family f) {
    if (d.family != f)
        throw std::invalid_argument("inequality '" + d.id + "' is not in family " + std::string(to_string(f)));
}

void need_values(const Spectrum& s, std::size_t count, const std::string& id) {
    if (s.size() < count)
        throw InsufficientInput(id + ": needs " + std::to_string(count) + " " + std::string(to_string(s.kind)) +
                                " eigenvalues, spectrum has " + std::to_string(s.size()));
}

void need_kind(const Spectrum& s, ProblemKind k, const std::string& id) {
    if (s.kind != k)
        throw CatalogInputError(id + ": expects a " + std::string(to_string(k)) + " spectrum, got " +
                                std::string(to_string(s.kind)));
}

void need_dimension(const InequalityDef& d, int n) {
    if (n < 2) throw CatalogInputError(d.id + ": dimension must be at least 2");
    if (n < d.requirement.min_dimension || (d.requirement.max_dimension > 0 && n > d.requirement.max_dimension))
        throw InsufficientInput(d.id + ": not defined in dimension " + std::to_string(n));
}

void need_index(int m, const std::string& id) {
    if (m < 1) throw CatalogInputError(id + ": index m must be at least 1");
}

// values[0..m)
double sum_first(const Spectrum& s, int m) {
    return std::accumulate(s.values.begin(), s.values.begin() + m, 0.0);
}

InequalityReport make(const InequalityDef& d, const Spectrum& s, int m, double lhs, double rhs,
                      std::vector<const Spectrum*> inputs, std::size_t count, const EvalOptions& opts) {
    InequalityReport r;
    r.id = d.id;
    r.status = d.status;
    r.family = d.family;
    r.domain_label = s.domain_label;
    r.m = m;
    r.lhs = lhs;
    r.rhs = rhs;
    r.citation = d.citation;
    if (std::isinf(rhs) && rhs > 0) {
        r.slack = INFINITY;
        r.tolerance_used = tolerance_for(std::abs(lhs), inputs, count, opts);
        r.holds = true;
        return r;
    }
    r.slack = rhs - lhs;
    r.tolerance_used = tolerance_for(std::max(std::abs(lhs), std::abs(rhs)), inputs, count, opts);
    r.holds = r.slack >= -r.tolerance_used;
    return r;
}

// Σ num_i/(next - λ_i); a vanishing gap makes the sum +∞.
double gap_sum(const Spectrum& s, int m, const std::function<double(double)>& num) {
    const double next = s.values[std::size_t(m)];
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
        const double gap = next - s.values[std::size_t(i)];
        if (!(gap > 0.0)) return INFINITY;
        sum += num(s.values[std::size_t(i)]) / gap;
    }
    return sum;
}

double yang1_bound(const Spectrum& s, int n, int m) {
    const double a = 1.0 + 2.0 / n, b = 1.0 + 4.0 / n;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < m; ++i) {
        sum += s.values[std::size_t(i)];
        sq += s.values[std::size_t(i)] * s.values[std::size_t(i)];
    }
    double disc = a * a * sum * sum - m * b * sq;
    if (disc < 0.0) {
        if (disc < -1e-12 * a * a * sum * sum)
            throw CatalogInputError("yang1: negative discriminant " + std::to_string(disc) +
                                    " (spectrum inconsistent with the inequality's derivation)");
        disc = 0.0;
    }
    return (a * sum + std::sqrt(disc)) / m;
}

double ppw_sum_bound(const Spectrum& s, int n, int m) {
    return s.values[std::size_t(m - 1)] + 4.0 / (m * n) * sum_first(s, m);
}

double d_cached(int n) {
    static std::mutex mu;
    static std::map<int, double> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, d_constant(n)).first;
    return it->second;
}

}  // namespace

std::string_view to_string(Status s) {
    switch (s) {
        case Status::proven: return "proven";
        case Status::conjecture: return "conjecture";
        case Status::informational: return "informational";
    }
    return "unknown";
}

std::string_view to_string(Family f) {
    switch (f) {
        case Family::membrane_gap: return "membrane_gap";
        case Family::membrane_low: return "membrane_low";
        case Family::isoperimetric: return "isoperimetric";
        case Family::plate: return "plate";
        case Family::buckling: return "buckling";
        case Family::polya: return "polya";
        case Family::ratio: return "ratio";
    }
    return "unknown";
}

const std::vector<InequalityDef>& inequality_catalog() {
    static const std::vector<InequalityDef> cat = build_catalog();
    return cat;
}

const InequalityDef& find_inequality(std::string_view id) {
    for (const auto& d : inequality_catalog())
        if (d.id == id) return d;
    throw std::invalid_argument("unknown inequality id '" + std::string(id) + "'");
}

double tolerance_for(double scale, const std::vector<const Spectrum*>& inputs, std::size_t count,
                     const EvalOptions& opts) {
    double allowance = 0.0;
    for (const Spectrum* s : inputs)
        if (s) allowance += 3.0 * s->relative_allowance(count);
    return std::max(1e-9, 2.0 * allowance * opts.tolerance_scale) * scale;
}

InequalityReport eval_membrane_gap(std::string_view id, const Spectrum& s, int n, int m, const EvalOptions& opts) {
    const InequalityDef& d = find_inequality(id);
    check_family(d, Family::membrane_gap);
    need_kind(s, K::dirichlet, d.id);
    need_dimension(d, n);
    need_index(m, d.id);
    need_values(s, std::size_t(m) + 1, d.id);
    const double next = s.values[std::size_t(m)];
    const std::size_t used = std::size_t(m) + 1;
    if (d.id == "ppw_gap") return make(d, s, m, next, ppw_sum_bound(s, n, m), {&s}, used, opts);
    if (d.id == "yang1") return make(d, s, m, next, yang1_bound(s, n, m), {&s}, used, opts);
    if (d.id == "yang2") return make(d, s, m, next, (1.0 + 4.0 / n) * sum_first(s, m) / m, {&s}, used, opts);
    // hile_protter
    return make(d, s, m, m * n / 4.0, gap_sum(s, m, [](double l) { return l; }), {&s}, used, opts);
}

InequalityReport eval_membrane_low(std::string_view id, const Spectrum& s, int n, const EvalOptions& opts) {
    const InequalityDef& d = find_inequality(id);
    check_family(d, Family::membrane_low);
    need_kind(s, K::dirichlet, d.id);
    need_dimension(d, n);
    const auto& v = s.values;
    if (d.id == "sum_n4" || d.id == "brands") {
        need_values(s, std::size_t(n) + 1, d.id);
        const double ratio = std::accumulate(v.begin() + 1, v.begin() + n + 1, 0.0) / v[0];
        const double rhs = d.id == "sum_n4" ? n + 4.0 : n + 3.0 + v[0] / v[1];
        return make(d, s, 0, ratio, rhs, {&s}, std::size_t(n) + 1, opts);
    }
    need_values(s, 3, d.id);
    const bool both = d.id == "l2l3_window";
    const double sample = both ? (v[1] + v[2]) / v[0] : v[2] / v[0];
    const double lo = both ? 5.077 : 3.1818, hi = both ? 5.50661 : 3.83103;
    InequalityReport r = make(d, s, 0, sample, hi, {&s}, 3, opts);
    r.lower = lo;
    r.holds = r.holds && sample >= lo - r.tolerance_used;
    return r;
}

const Spectrum* SpectraBundle::get(ProblemKind k) const {
    const std::optional<Spectrum>* slot = nullptr;
    switch (k) {
        case K::dirichlet: slot = &dirichlet; break;
        case K::neumann: slot = &neumann; break;
        case K::clamped: slot = &clamped; break;
        case K::buckling: slot = &buckling; break;
    }
    return slot && slot->has_value() ? &**slot : nullptr;
}

std::string SpectraBundle::label() const {
    for (K k : {K::dirichlet, K::neumann, K::clamped, K::buckling})
        if (const Spectrum* s = get(k)) return s->domain_label;
    return "";
}

InequalityReport eval_isoperimetric(std::string_view id, const SpectraBundle& b, int n, double volume,
                                    const EvalOptions& opts) {
    const InequalityDef& d = find_inequality(id);
    check_family(d, Family::isoperimetric);
    need_dimension(d, n);
    if (!(volume > 0.0) || !std::isfinite(volume)) throw CatalogInputError(d.id + ": volume must be positive");
    std::vector<const Spectrum*> in;
    for (K k : d.requirement.kinds) {
        const Spectrum* s = b.get(k);
        if (!s) throw InsufficientInput(d.id + ": needs a " + std::string(to_string(k)) + " spectrum");
        need_kind(*s, k, d.id);
        in.push_back(s);
    }
    const Spectrum& first = *in.front();
    const BallSpec ball = ball_of_volume(n, volume);
    const double nu = n / 2.0 - 1.0;
    auto report = [&](double lhs, double rhs, std::size_t used) { return make(d, first, 0, lhs, rhs, in, used, opts); };

    if (d.id == "faber_krahn") {
        need_values(first, 1, d.id);
        return report(dirichlet_ball(ball, 1).values[0], first.values[0], 1);
    }
    if (d.id == "szego_weinberger") {
        need_values(first, 2, d.id);
        return report(first.values[1], neumann_ball_mu1(ball), 2);
    }
    if (d.id == "ppw_ratio") {
        need_values(first, 2, d.id);
        const double j0 = bessel_zero(nu, 1).value, j1 = bessel_zero(nu + 1.0, 1).value;
        return report(first.values[1] / first.values[0], (j1 * j1) / (j0 * j0), 2);
    }
    if (d.id == "fixed_lambda1") {
        need_values(first, 2, d.id);
        const double R = bessel_zero(nu, 1).value / std::sqrt(first.values[0]);
        return report(first.values[1], dirichlet_ball(BallSpec{n, R}, 2).values[1], 2);
    }
    if (d.id == "payne_buckling") {
        need_values(first, 2, d.id);
        need_values(*in[1], 1, d.id);
        return report(first.values[1], in[1]->values[0], 2);
    }
    if (d.id == "krahn_l2") {
        need_values(first, 2, d.id);
        return report(std::pow(2.0, 2.0 / n) * dirichlet_ball(ball, 1).values[0], first.values[1], 2);
    }
    if (d.id == "bramble_payne") {
        need_values(first, 1, d.id);
        return report(c_constant(n) * buckling_ball(ball, 1).values[0], first.values[0], 1);
    }
    if (d.id == "two_ball_bound") {
        need_values(first, 1, d.id);
        return report(d_cached(n) * clamped_ball(ball, 1).values[0], first.values[0], 1);
    }
    if (d.id == "rayleigh_plate") {
        need_values(first, 1, d.id);
        InequalityReport r = report(clamped_ball(ball, 1).values[0], first.values[0], 1);
        if (n >= 4) r.status = Status::conjecture;
        return r;
    }
    // polya_szego
    need_values(first, 1, d.id);
    return report(buckling_ball(ball, 1).values[0], first.values[0], 1);
}

double hile_yeh_cubic_root(int n) {
    if (n < 1) throw std::invalid_argument("hile_yeh_cubic_root: n must be positive");
    const double c = 512.0 / (double(n) * n * (n + 2));
    // g(x) = (x-1)³ - c x is negative at 1 and positive at 1 + c + 2.
    auto g = [c](double x) { return (x - 1) * (x - 1) * (x - 1) - c * x; };
    double lo = 1.0, hi = 3.0 + c;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

InequalityReport eval_plate(std::string_view id, const Spectrum& s, int n, int m, const EvalOptions& opts) {
    const InequalityDef& d = find_inequality(id);
    check_family(d, Family::plate);
    need_kind(s, K::clamped, d.id);
    need_dimension(d, n);
    const auto& v = s.values;
    const double k = 8.0 * (n + 2) / (double(n) * n);  // (1 + 4/n)² - 1
    if (d.id == "sum_plate_sqrt" || d.id == "sum_plate") {
        need_values(s, std::size_t(n) + 1, d.id);
        double sum = 0.0;
        for (int i = 1; i <= n; ++i) sum += d.id == "sum_plate" ? v[std::size_t(i)] : std::sqrt(v[std::size_t(i)]);
        const double lhs = d.id == "sum_plate" ? sum / v[0] : sum / std::sqrt(v[0]);
        return make(d, s, 0, lhs, d.id == "sum_plate" ? n + 24.0 : n + 4.0, {&s}, std::size_t(n) + 1, opts);
    }
    if (d.id == "hile_yeh_cubic") {
        need_values(s, 2, d.id);
        return make(d, s, 0, v[1] / v[0], hile_yeh_cubic_root(n), {&s}, 2, opts);
    }
    need_index(m, d.id);
    need_values(s, std::size_t(m) + 1, d.id);
    const std::size_t used = std::size_t(m) + 1;
    const double next = v[std::size_t(m)];
    double sum = 0.0, sum_sqrt = 0.0;
    for (int i = 0; i < m; ++i) {
        sum += v[std::size_t(i)];
        sum_sqrt += std::sqrt(v[std::size_t(i)]);
    }
    const double prev = v[std::size_t(m - 1)];
    if (d.id == "ppw_plate_gap") return make(d, s, m, next, prev + k / m * sum, {&s}, used, opts);
    if (d.id == "ppw_plate_gap_sqrt")
        return make(d, s, m, next, prev + k / (double(m) * m) * sum_sqrt * sum_sqrt, {&s}, used, opts);
    if (d.id == "ratio_165") return make(d, s, m, next / v[std::size_t(m - 1)], 1.0 + k, {&s}, used, opts);
    const double target = double(m) / k;  // n² m / (8(n + 2))
    if (d.id == "hile_yeh")
        return make(d, s, m, m * target, gap_sum(s, m, [](double g) { return std::sqrt(g); }) * sum_sqrt, {&s},
                    used, opts);
    if (d.id == "conj_356") {
        double root_sum = 0.0;
        for (int i = 0; i < m; ++i) {
            const double gap = next - v[std::size_t(i)];
            root_sum = gap > 0.0 ? root_sum + std::sqrt(v[std::size_t(i)] / gap) : INFINITY;
        }
        return make(d, s, m, m * target, root_sum * root_sum, {&s}, used, opts);
    }
    // cheb_357
    return make(d, s, m, target, gap_sum(s, m, [](double g) { return g; }), {&s}, used, opts);
}

InequalityReport eval_buckling(std::string_view id, const Spectrum& s, int n, const EvalOptions& opts) {
    const InequalityDef& d = find_inequality(id);
    check_family(d, Family::buckling);
    need_kind(s, K::buckling, d.id);
    need_dimension(d, n);
    const auto& v = s.values;
    if (d.id == "sum_buckling") {
        need_values(s, std::size_t(n) + 1, d.id);
        const double lhs = std::accumulate(v.begin() + 1, v.begin() + n + 1, 0.0) / v[0];
        return make(d, s, 0, lhs, n + 4.0, {&s}, std::size_t(n) + 1, opts);
    }
    need_values(s, 2, d.id);
    const double rhs = d.id == "ppw_buckling" ? 1.0 + 4.0 / n : (n * n + 8.0 * n + 20.0) / ((n + 2.0) * (n + 2.0));
    return make(d, s, 0, v[1] / v[0], rhs, {&s}, 2, opts);
}

std::vector<InequalityReport> eval_polya(std::string_view id, const Spectrum& s, double area, int k_max,
                                         const EvalOptions& opts) {
    const InequalityDef& d = find_inequality(id);
    check_family(d, Family::polya);
    if (s.dimension != 2) throw InsufficientInput(d.id + ": stated for planar domains only");
    if (!(area > 0.0)) throw CatalogInputError(d.id + ": area must be positive");
    const bool dir = d.id == "polya_dirichlet";
    need_kind(s, dir ? K::dirichlet : K::neumann, d.id);
    std::vector<InequalityReport> out;
    for (int k = dir ? 1 : 0; k <= k_max; ++k) {
        const std::size_t idx = dir ? std::size_t(k - 1) : std::size_t(k);
        if (idx >= s.size()) break;
        const double weyl = 4.0 * std::numbers::pi * k / area;
        const double val = s.values[idx];
        InequalityReport r = dir ? make(d, s, k, weyl, val, {&s}, idx + 1, opts)
                                 : make(d, s, k, val, weyl, {&s}, idx + 1, opts);
        if (!dir && k == 0) {
            // μ₀ = 0 = 4π·0/A: the zero mode is exact up to round-off.
            r.tolerance_used = std::max(r.tolerance_used, 1e-9 * std::max(1.0, std::abs(s.values.back())));
            r.holds = r.slack >= -r.tolerance_used;
        }
        out.push_back(r);
    }
    return out;
}

InequalityReport eval_ratio(std::string_view id, const Spectrum& s, int n, int m, const EvalOptions& opts) {
    const InequalityDef& d = find_inequality(id);
    check_family(d, Family::ratio);
    need_dimension(d, n);
    const BallSpec unit{n, 1.0};
    if (d.id == "ratio_membrane") {
        need_kind(s, K::dirichlet, d.id);
        need_index(m, d.id);
        need_values(s, std::size_t(m) + 1, d.id);
        const double nu = n / 2.0 - 1.0;
        const double j0 = bessel_zero(nu, 1).value, j1 = bessel_zero(nu + 1.0, 1).value;
        InequalityReport r = make(d, s, m, s.values[std::size_t(m)] / s.values[std::size_t(m - 1)],
                                  (j1 * j1) / (j0 * j0), {&s}, std::size_t(m) + 1, opts);
        if (m <= 3) r.status = Status::proven;
        return r;
    }
    need_values(s, 2, d.id);
    const bool plate = d.id == "ratio_plate";
    need_kind(s, plate ? K::clamped : K::buckling, d.id);
    const Spectrum ball = plate ? clamped_ball(unit, 2) : buckling_ball(unit, 2);
    return make(d, s, 0, s.values[1] / s.values[0], ball.values[1] / ball.values[0], {&s}, 2, opts);
}

ChainReport chain_check(const Spectrum& s, int n, int m, const EvalOptions& opts) {
    need_kind(s, K::dirichlet, "chain_check");
    if (n < 2) throw CatalogInputError("chain_check: dimension must be at least 2");
    need_index(m, "chain_check");
    need_values(s, std::size_t(m) + 1, "chain_check");
    ChainReport c;
    c.m = m;
    c.lambda_next = s.values[std::size_t(m)];
    c.yang1_bound = yang1_bound(s, n, m);
    c.yang2_bound = (1.0 + 4.0 / n) * sum_first(s, m) / m;
    c.ppw_bound = ppw_sum_bound(s, n, m);
    const InequalityReport hp = eval_membrane_gap("hile_protter", s, n, m, opts);
    c.hp_slack = hp.slack;
    const double tol = tolerance_for(c.ppw_bound, {&s}, std::size_t(m) + 1, opts);
    c.yang1_holds = c.lambda_next <= c.yang1_bound + tol;
    c.yang2_holds = c.lambda_next <= c.yang2_bound + tol;
    c.hp_holds = hp.holds;
    c.ppw_holds = c.lambda_next <= c.ppw_bound + tol;
    const double eps = 1e-12 * c.ppw_bound;
    c.bounds_ordered = c.yang1_bound <= c.yang2_bound + eps && c.yang2_bound <= c.ppw_bound + eps;
    c.implications = (!c.yang1_holds || c.yang2_holds) && (!c.yang2_holds || c.hp_holds) &&
                     (!c.hp_holds || c.ppw_holds);
    return c;
}

std::vector<InequalityReport> evaluate_suite(const SpectraBundle& b, int n, double volume, int m_max, int k_max,
                                             const std::vector<std::string>& filter, const EvalOptions& opts) {
    for (const auto& id : filter) find_inequality(id);
    std::vector<InequalityReport> out;
    for (const InequalityDef& d : inequality_catalog()) {
        if (!filter.empty() && std::find(filter.begin(), filter.end(), d.id) == filter.end()) continue;
        const Spectrum* s = b.get(d.requirement.kinds.front());
        if (!s) continue;
        try {
            switch (d.family) {
                case Family::membrane_gap:
                    for (int m = 1; m <= m_max && std::size_t(m) < s->size(); ++m)
                        out.push_back(eval_membrane_gap(d.id, *s, n, m, opts));
                    break;
                case Family::membrane_low: out.push_back(eval_membrane_low(d.id, *s, n, opts)); break;
                case Family::isoperimetric: out.push_back(eval_isoperimetric(d.id, b, n, volume, opts)); break;
                case Family::plate:
                    if (d.requirement.indexed) {
                        for (int m = 1; m <= m_max && std::size_t(m) < s->size(); ++m)
                            out.push_back(eval_plate(d.id, *s, n, m, opts));
                    } else {
                        out.push_back(eval_plate(d.id, *s, n, 0, opts));
                    }
                    break;
                case Family::buckling: out.push_back(eval_buckling(d.id, *s, n, opts)); break;
                case Family::polya:
                    if (n == 2) {
                        auto rows = eval_polya(d.id, *s, volume, k_max, opts);
                        out.insert(out.end(), rows.begin(), rows.end());
                    }
                    break;
                case Family::ratio:
                    if (d.requirement.indexed) {
                        for (int m = 1; m <= m_max && std::size_t(m) < s->size(); ++m)
                            out.push_back(eval_ratio(d.id, *s, n, m, opts));
                    } else {
                        out.push_back(eval_ratio(d.id, *s, n, 0, opts));
                    }
                    break;
            }
        } catch (const InsufficientInput&) {
            // not applicable to this bundle
        }
    }
    return out;
}

}  // namespace isospec
