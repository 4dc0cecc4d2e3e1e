#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "isospec/runner.hpp"
#include "isospec/two_ball.hpp"

using namespace isospec;

namespace {

// "2..8", "2,3,5" or "4"
std::vector<int> parse_dims(const std::string& text) {
    std::vector<int> out;
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const int lo = std::stoi(text.substr(0, dots)), hi = std::stoi(text.substr(dots + 2));
        if (hi < lo) throw CLI::ValidationError("--n", "empty range " + text);
        for (int n = lo; n <= hi; ++n) out.push_back(n);
        return out;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        out.push_back(std::stoi(text.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::filesystem::path output_dir(const std::string& flag, const std::filesystem::path& fallback) {
    if (!flag.empty()) return flag;
    return resolve_output_dir(fallback);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eigenvalue inequality verification toolkit"};
    app.require_subcommand(1);
    std::string out_flag;
    app.add_option("-o,--output-dir", out_flag, "Output directory (overrides ISOSPEC_OUTPUT_DIR and the config)");

    auto* verify = app.add_subcommand("verify", "Solve the configured domains and check the inequality catalog");
    std::string config_path;
    double tol_scale = 0.0;
    int concurrency = -1;
    verify->add_option("config", config_path, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
    verify->add_option("--tolerance-scale", tol_scale, "Multiply every discretization allowance")
        ->check(CLI::PositiveNumber);
    verify->add_option("-j,--concurrency", concurrency, "Parallel tasks (0: hardware)")->check(CLI::NonNegativeNumber);

    auto* constants = app.add_subcommand("constants", "Tabulate c_n and d_n");
    std::string dims = "2..8";
    constants->add_option("--n", dims, "Dimensions: 2..8 or 2,3,5");

    auto* curve = app.add_subcommand("curve", "Tabulate J(t)/Gamma_1(B_1) for the two-ball problem");
    int curve_n = 2, points = 65;
    curve->add_option("--n", curve_n, "Dimension")->required()->check(CLI::Range(2, 64));
    curve->add_option("--points", points, "Uniform t points on [0, 1]")->check(CLI::Range(2, 100000));

    auto* spectrum = app.add_subcommand("spectrum", "Grid eigenvalues of one domain with extrapolation");
    spectrum->set_help_flag("--help", "Print this help message and exit");  // -h is taken by --h
    std::string shape_desc, problem = "dirichlet", label;
    double h = 1.0 / 32;
    int levels = 2, m = 6;
    spectrum->add_option("--shape", shape_desc, "disk:R, ellipse:a,b, rectangle:a,b, lshape:s,w, annulus:r,R, polygon:...")
        ->required();
    spectrum->add_option("--problem", problem, "dirichlet|neumann|clamped|buckling");
    spectrum->add_option("--h", h, "Coarsest mesh width")->check(CLI::PositiveNumber);
    spectrum->add_option("--levels", levels, "Mesh levels (h, h/2, ...)")->check(CLI::Range(2, 8));
    spectrum->add_option("--m", m, "Number of eigenvalues")->check(CLI::Range(1, 200));
    spectrum->add_option("--label", label, "Domain label (default: the shape descriptor)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*verify) {
            RunConfig cfg = load_config(config_path);
            if (tol_scale > 0.0) cfg.tolerance_scale = tol_scale;
            if (concurrency >= 0) cfg.concurrency = concurrency;
            cfg.output_dir = output_dir(out_flag, cfg.output_dir);
            const VerifyResult res = run_verify(cfg);
            const Tally& t = res.tally;
            std::printf("proven held %d, proven failed %d, conjecture held %d, conjecture failed %d, "
                        "informational %d, chain failures %d, solve errors %zu\n",
                        t.proven_held, t.proven_failed, t.conjecture_held, t.conjecture_failed, t.informational,
                        res.chain_failures, res.errors.size());
            for (const auto& e : res.errors)
                std::fprintf(stderr, "error: %s/%s: %s\n", e.domain.c_str(), e.problem.c_str(), e.message.c_str());
            std::printf("reports written to %s\n", cfg.output_dir.string().c_str());
            return res.exit_code();
        }
        if (*constants) {
            const auto rows = compute_constants(parse_dims(dims));
            const auto path = write_constants(rows, output_dir(out_flag, "."));
            for (const auto& r : rows)
                std::printf("n=%d  c_n=%.6f  d_n=%.6f  t*=%.4f\n", r.n, r.c_n, r.d_n, r.minimizer_t);
            std::printf("wrote %s\n", path.string().c_str());
            return 0;
        }
        if (*curve) {
            const auto path = write_curve(curve_n, uniform_t_grid(points), output_dir(out_flag, "."));
            std::printf("wrote %s\n", path.string().c_str());
            return 0;
        }
        if (*spectrum) {
            const Shape shape = Shape::parse(shape_desc);
            const ProblemKind kind = parse_problem_kind(problem);
            if (label.empty()) label = shape.describe();
            const ConvergenceStudy st = convergence_study(shape, label, kind, h, levels, m);
            const auto path = write_spectrum(st, label, kind, output_dir(out_flag, "."));
            for (std::size_t i = 0; i < st.extrapolated.size(); ++i)
                std::printf("%zu  %.10g  ± %.3g\n", i, st.extrapolated.values[i], st.extrapolated.uncertainty[i]);
            std::printf("wrote %s\n", path.string().c_str());
            return 0;
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
