#include "isospec/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "isospec/two_ball.hpp"

namespace isospec {
namespace {

using json = nlohmann::ordered_json;

// 1-based line and column of a byte offset.
std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

// Line of the first occurrence of "key", for semantic errors.
std::string where(const std::string& text, const std::string& source, const std::string& key) {
    const std::size_t pos = text.find("\"" + key + "\"");
    if (pos == std::string::npos) return source;
    return source + ":" + std::to_string(line_col(text, pos).first);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string problem_slug(ProblemKind k) { return std::string(to_string(k)); }

std::string file_slug(const std::string& label) {
    std::string s;
    for (char c : label) s += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
    return s;
}

std::ofstream open_out(const std::filesystem::path& p) {
    std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    return out;
}

void spectrum_rows(std::ostream& out, const std::string& label, ProblemKind k, const ConvergenceStudy& st) {
    auto rows = [&](const Spectrum& s, const std::string& level) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            out << csv_field(label) << ',' << problem_slug(k) << ',' << level << ',' << format_number(s.mesh_width)
                << ',' << i << ',' << format_number(s.values[i]) << ','
                << (s.uncertainty.empty() ? std::string("0") : format_number(s.uncertainty[i])) << ','
                << to_string(s.provenance) << '\n';
        }
    };
    for (std::size_t l = 0; l < st.levels.size(); ++l) rows(st.levels[l], std::to_string(l));
    rows(st.extrapolated, "extrapolated");
}

constexpr const char* kSpectrumHeader = "domain,problem,level,h,index,value,uncertainty,provenance\n";

int hardware_width() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void RunConfig::validate() const {
    if (domains.empty()) throw ConfigError("config lists no domains");
    if (problems.empty()) throw ConfigError("config lists no problems");
    if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("mesh.h must be positive");
    if (levels < 2) throw ConfigError("mesh.levels must be at least 2 (extrapolation needs two levels)");
    if (m_max < 1) throw ConfigError("m_max must be at least 1");
    if (k_max < 0) throw ConfigError("k_max must be nonnegative");
    if (concurrency < 0) throw ConfigError("concurrency must be nonnegative");
    if (!(tolerance_scale > 0.0)) throw ConfigError("tolerance_scale must be positive");
    for (const auto& id : inequalities) {
        try {
            find_inequality(id);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    std::vector<std::string> labels;
    for (const auto& d : domains) labels.push_back(d.label);
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
        throw ConfigError("domain labels must be unique");
}

int RunConfig::eigen_count(ProblemKind kind) const {
    switch (kind) {
        case ProblemKind::dirichlet: return std::max({m_max + 1, k_max, 3});
        case ProblemKind::neumann: return std::max(k_max + 1, 2);
        case ProblemKind::clamped: return std::max(m_max + 1, 3);
        case ProblemKind::buckling: return 3;
    }
    return m_max + 1;
}

RunConfig parse_config(const std::string& text, const std::string& source) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ConfigError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigError(source + ":1: top level must be an object");

    static const std::vector<std::string> known = {"schema",       "domains", "problems",    "mesh",
                                                   "m_max",        "k_max",   "inequalities", "output_dir",
                                                   "concurrency",  "tolerance_scale", "solver"};
    for (const auto& [key, _] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ConfigError(where(text, source, key) + ": unknown key '" + key + "'");

    RunConfig c;
    std::string key;
    try {
        key = "schema";
        if (!j.contains("schema")) throw ConfigError(source + ": missing \"schema\"");
        if (j.at("schema").get<std::string>() != RunConfig::kSchema)
            throw ConfigError(where(text, source, key) + ": unsupported schema '" + j.at("schema").get<std::string>() +
                              "' (expected " + RunConfig::kSchema + ")");
        key = "domains";
        for (const auto& d : j.at("domains")) {
            DomainEntry e;
            const std::string desc = d.is_string() ? d.get<std::string>() : d.at("shape").get<std::string>();
            try {
                e.shape = Shape::parse(desc);
            } catch (const std::invalid_argument& err) {
                throw ConfigError(where(text, source, "domains") + ": " + err.what());
            }
            e.label = d.is_object() && d.contains("label") ? d.at("label").get<std::string>() : e.shape.describe();
            c.domains.push_back(e);
        }
        key = "problems";
        for (const auto& p : j.at("problems")) {
            try {
                c.problems.push_back(parse_problem_kind(p.get<std::string>()));
            } catch (const std::invalid_argument& err) {
                throw ConfigError(where(text, source, key) + ": " + err.what());
            }
        }
        key = "mesh";
        if (j.contains("mesh")) {
            const auto& m = j.at("mesh");
            c.h = m.value("h", c.h);
            c.levels = m.value("levels", c.levels);
        }
        key = "m_max";
        c.m_max = j.value("m_max", c.m_max);
        key = "k_max";
        c.k_max = j.value("k_max", c.k_max);
        key = "inequalities";
        if (j.contains("inequalities")) c.inequalities = j.at("inequalities").get<std::vector<std::string>>();
        key = "output_dir";
        if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
        key = "concurrency";
        c.concurrency = j.value("concurrency", c.concurrency);
        key = "tolerance_scale";
        c.tolerance_scale = j.value("tolerance_scale", c.tolerance_scale);
        key = "solver";
        if (j.contains("solver")) {
            const auto& s = j.at("solver");
            c.solver.block_size = s.value("block_size", c.solver.block_size);
            c.solver.seed = s.value("seed", c.solver.seed);
            c.solver.residual_tol = s.value("residual_tol", c.solver.residual_tol);
        }
    } catch (const json::exception& e) {
        throw ConfigError(where(text, source, key) + ": bad value for \"" + key + "\": " + e.what());
    }
    try {
        c.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(source + ": " + e.what());
    }
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.string());
}

std::filesystem::path resolve_output_dir(const std::filesystem::path& fallback) {
    if (const char* env = std::getenv("ISOSPEC_OUTPUT_DIR"); env && *env) return env;
    return fallback;
}

int VerifyResult::exit_code() const {
    return (tally.proven_failed == 0 && chain_failures == 0 && errors.empty()) ? 0 : 1;
}

VerifyResult run_verify(const RunConfig& config, bool write) {
    config.validate();
    VerifyResult res;
    const std::size_t np = config.problems.size();
    const std::size_t ntask = config.domains.size() * np;

    std::vector<ConvergenceStudy> studies(ntask);
    std::vector<std::string> failures(ntask);
    std::vector<char> ok(ntask, 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t; (t = next.fetch_add(1)) < ntask;) {
            const DomainEntry& d = config.domains[t / np];
            const ProblemKind k = config.problems[t % np];
            try {
                studies[t] = convergence_study(d.shape, d.label, k, config.h, config.levels, config.eigen_count(k),
                                               config.solver);
                ok[t] = 1;
            } catch (const std::exception& e) {
                failures[t] = e.what();
            }
        }
    };
    const int width = std::max(1, std::min<int>(config.concurrency > 0 ? config.concurrency : hardware_width(),
                                                 int(ntask)));
    if (width == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < width; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    const EvalOptions opts{config.tolerance_scale};
    for (std::size_t di = 0; di < config.domains.size(); ++di) {
        DomainResult dr;
        dr.domain = config.domains[di];
        for (std::size_t pi = 0; pi < np; ++pi) {
            const std::size_t t = di * np + pi;
            const ProblemKind k = config.problems[pi];
            dr.studies.push_back(studies[t]);
            dr.solved.push_back(ok[t] != 0);
            if (!ok[t]) {
                res.errors.push_back({dr.domain.label, problem_slug(k), failures[t]});
                continue;
            }
            switch (k) {
                case ProblemKind::dirichlet: dr.bundle.dirichlet = studies[t].extrapolated; break;
                case ProblemKind::neumann: dr.bundle.neumann = studies[t].extrapolated; break;
                case ProblemKind::clamped: dr.bundle.clamped = studies[t].extrapolated; break;
                case ProblemKind::buckling: dr.bundle.buckling = studies[t].extrapolated; break;
            }
        }
        try {
            dr.reports = evaluate_suite(dr.bundle, 2, dr.domain.shape.area(), config.m_max, config.k_max,
                                        config.inequalities, opts);
            if (dr.bundle.dirichlet) {
                for (int m = 1; m <= config.m_max && std::size_t(m) < dr.bundle.dirichlet->size(); ++m)
                    dr.chain.push_back(chain_check(*dr.bundle.dirichlet, 2, m, opts));
            }
        } catch (const std::exception& e) {
            res.errors.push_back({dr.domain.label, "catalog", e.what()});
        }
        for (const auto& r : dr.reports) {
            switch (r.status) {
                case Status::proven: (r.holds ? res.tally.proven_held : res.tally.proven_failed)++; break;
                case Status::conjecture: (r.holds ? res.tally.conjecture_held : res.tally.conjecture_failed)++; break;
                case Status::informational: res.tally.informational++; break;
            }
        }
        for (const auto& c : dr.chain)
            if (!c.ok()) ++res.chain_failures;
        res.domains.push_back(std::move(dr));
    }
    if (!write) return res;

    const std::filesystem::path dir = config.output_dir;
    {
        std::ofstream out = open_out(dir / "spectra.csv");
        out << kSpectrumHeader;
        for (const auto& dr : res.domains)
            for (std::size_t pi = 0; pi < np; ++pi)
                if (dr.solved[pi]) spectrum_rows(out, dr.domain.label, config.problems[pi], dr.studies[pi]);
    }
    {
        std::ofstream out = open_out(dir / "inequalities.csv");
        out << "id,domain,m,lhs,rhs,slack,holds,tolerance,citation,status,family,lower\n";
        for (const auto& dr : res.domains)
            for (const auto& r : dr.reports)
                out << r.id << ',' << csv_field(dr.domain.label) << ',' << r.m << ',' << format_number(r.lhs) << ','
                    << format_number(r.rhs) << ',' << format_number(r.slack) << ',' << (r.holds ? "true" : "false")
                    << ',' << format_number(r.tolerance_used) << ',' << csv_field(r.citation) << ','
                    << to_string(r.status) << ',' << to_string(r.family) << ','
                    << (r.lower ? format_number(*r.lower) : "") << '\n';
    }
    {
        std::ofstream out = open_out(dir / "chain.csv");
        out << "domain,m,lambda_next,yang1_bound,yang2_bound,ppw_bound,hp_slack,bounds_ordered,implications\n";
        for (const auto& dr : res.domains)
            for (const auto& c : dr.chain)
                out << csv_field(dr.domain.label) << ',' << c.m << ',' << format_number(c.lambda_next) << ','
                    << format_number(c.yang1_bound) << ',' << format_number(c.yang2_bound) << ','
                    << format_number(c.ppw_bound) << ',' << format_number(c.hp_slack) << ','
                    << (c.bounds_ordered ? "true" : "false") << ',' << (c.implications ? "true" : "false") << '\n';
    }
    {
        json s;
        s["schema"] = "isospec-summary/1";
        json cfg;
        cfg["domains"] = json::array();
        for (const auto& d : config.domains) cfg["domains"].push_back({{"label", d.label}, {"shape", d.shape.describe()}});
        cfg["problems"] = json::array();
        for (auto k : config.problems) cfg["problems"].push_back(problem_slug(k));
        cfg["mesh"] = {{"h", config.h}, {"levels", config.levels}};
        cfg["m_max"] = config.m_max;
        cfg["k_max"] = config.k_max;
        cfg["inequalities"] = config.inequalities;
        cfg["tolerance_scale"] = config.tolerance_scale;
        s["config"] = cfg;
        s["counts"] = {{"proven_held", res.tally.proven_held},
                       {"proven_failed", res.tally.proven_failed},
                       {"conjecture_held", res.tally.conjecture_held},
                       {"conjecture_failed", res.tally.conjecture_failed},
                       {"informational", res.tally.informational}};
        s["chain_failures"] = res.chain_failures;
        s["errors"] = json::array();
        for (const auto& e : res.errors)
            s["errors"].push_back({{"domain", e.domain}, {"problem", e.problem}, {"message", e.message}});
        json failed = json::array();
        for (const auto& dr : res.domains)
            for (const auto& r : dr.reports)
                if (r.status == Status::proven && !r.holds)
                    failed.push_back({{"id", r.id}, {"domain", dr.domain.label}, {"m", r.m}, {"slack", r.slack}});
        s["proven_failures"] = failed;
        s["files"] = {"spectra.csv", "inequalities.csv", "chain.csv"};
        s["exit_code"] = res.exit_code();
        std::ofstream out = open_out(dir / "summary.json");
        out << s.dump(2) << '\n';
    }
    return res;
}

std::vector<ConstantsRow> compute_constants(const std::vector<int>& dims) {
    std::vector<int> ns = dims;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    std::vector<ConstantsRow> rows;
    for (int n : ns) {
        if (n < 2) throw std::invalid_argument("constants: dimension must be at least 2");
        const TwoBallResult d = d_constant_result(n);
        ConstantsRow r;
        r.n = n;
        r.c_n = c_constant(n);
        r.d_n = d.d_n;
        r.minimizer_t = std::pow(d.minimizer_a, n);
        r.j_endpoint = J_of_t(n, 0.0).J;
        r.d_prime = d_prime_reference(n);
        rows.push_back(r);
    }
    return rows;
}

std::filesystem::path write_constants(const std::vector<ConstantsRow>& rows, const std::filesystem::path& dir) {
    const auto path = dir / "constants.csv";
    std::ofstream out = open_out(path);
    out << "n,c_n,d_n,minimizer_t,J_endpoint,d_prime_reference\n";
    for (const auto& r : rows)
        out << r.n << ',' << format_number(r.c_n) << ',' << format_number(r.d_n) << ','
            << format_number(r.minimizer_t) << ',' << format_number(r.j_endpoint) << ','
            << (r.d_prime ? format_number(*r.d_prime) : "") << '\n';
    return path;
}

std::filesystem::path write_curve(int n, const std::vector<double>& t_grid, const std::filesystem::path& dir) {
    const auto path = dir / ("curve_n" + std::to_string(n) + ".csv");
    const std::vector<CurvePoint> pts = j_curve(n, t_grid);
    std::ofstream out = open_out(path);
    out << "t,ratio,ok,error\n";
    for (const auto& p : pts)
        out << format_number(p.t) << ',' << (p.ok ? format_number(p.ratio) : "") << ',' << (p.ok ? "true" : "false")
            << ',' << csv_field(p.error) << '\n';
    return path;
}

std::filesystem::path write_spectrum(const ConvergenceStudy& study, const std::string& label, ProblemKind kind,
                                     const std::filesystem::path& dir) {
    const auto path = dir / ("spectrum_" + file_slug(label) + "_" + problem_slug(kind) + ".csv");
    std::ofstream out = open_out(path);
    out << kSpectrumHeader;
    spectrum_rows(out, label, kind, study);
    return path;
}

}  // namespace isospec
