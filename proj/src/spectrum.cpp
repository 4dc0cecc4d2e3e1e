#include "isospec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isospec {

std::string_view to_string(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::dirichlet: return "dirichlet";
        case ProblemKind::neumann: return "neumann";
        case ProblemKind::clamped: return "clamped";
        case ProblemKind::buckling: return "buckling";
    }
    return "unknown";
}

ProblemKind parse_problem_kind(std::string_view text) {
    if (text == "dirichlet") return ProblemKind::dirichlet;
    if (text == "neumann") return ProblemKind::neumann;
    if (text == "clamped") return ProblemKind::clamped;
    if (text == "buckling") return ProblemKind::buckling;
    throw std::invalid_argument("unknown problem kind '" + std::string(text) +
                                "' (expected dirichlet|neumann|clamped|buckling)");
}

std::string_view to_string(Provenance p) {
    switch (p) {
        case Provenance::closed_form: return "closed_form";
        case Provenance::discrete: return "discrete";
        case Provenance::discrete_extrapolated: return "discrete_extrapolated";
    }
    return "unknown";
}

double Spectrum::relative_allowance(std::size_t count) const {
    if (uncertainty.empty()) return 0.0;
    const std::size_t n = count == 0 ? values.size() : std::min(count, values.size());
    double rel = 0.0;
    for (std::size_t i = 0; i < n && i < uncertainty.size(); ++i) {
        if (values[i] == 0.0 || (kind == ProblemKind::neumann && i == 0)) continue;
        rel = std::max(rel, std::abs(uncertainty[i] / values[i]));
    }
    return rel;
}

void Spectrum::validate() const {
    if (values.empty()) throw std::logic_error("spectrum is empty");
    if (!uncertainty.empty() && uncertainty.size() != values.size())
        throw std::logic_error("uncertainty length does not match values");
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] < values[i - 1])
            throw std::logic_error("spectrum values are not sorted");
    }
    std::size_t first_positive = 0;
    if (kind == ProblemKind::neumann) {
        const double scale = values.size() > 1 ? std::abs(values[1]) : 1.0;
        if (std::abs(values[0]) > 1e-8 * scale)
            throw std::logic_error("Neumann spectrum must start with the zero mode");
        first_positive = 1;
    }
    for (std::size_t i = first_positive; i < values.size(); ++i) {
        if (!(values[i] > 0.0)) throw std::logic_error("eigenvalue is not positive");
    }
    if (kind == ProblemKind::dirichlet && values.size() > 1 && !(values[0] < values[1]))
        throw std::logic_error("first Dirichlet eigenvalue is not simple");
}

}  // namespace isospec
