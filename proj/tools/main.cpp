#include "run_config.hpp"

#include "hypzero/analysis.hpp"
#include "hypzero/errors.hpp"
#include "hypzero/exact_core.hpp"
#include "hypzero/geometry.hpp"
#include "hypzero/parallel.hpp"
#include "hypzero/paths_integrals.hpp"
#include "hypzero/rootfinder.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace hypzero;
using hypzero::cli::RunConfig;
using hypzero::cli::UsageError;

namespace {

enum Exit : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kCertification = 3, kPrecision = 4, kPath = 5 };

struct Flags {
    int n = 0;
    std::string n_range, n_list, out, z, kind, config;
    long precision_bits = 0;
    int theta_grid = 0, steps = 0, res = 0;
    double path_tol = 0;
    unsigned workers = 0;
};

struct Options {
    CLI::Option *n, *n_range, *n_list, *bits, *out, *theta_grid, *steps, *path_tol, *workers, *z, *kind, *res, *config;
};

Options add_common(CLI::App& sub, Flags& f) {
    Options o{};
    o.n = sub.add_option("--n", f.n, "Polynomial degree");
    o.n_range = sub.add_option("--n-range", f.n_range, "Inclusive degree range a..b");
    o.n_list = sub.add_option("--n-list", f.n_list, "Comma-separated degrees");
    o.bits = sub.add_option("--precision-bits", f.precision_bits, "Working precision in bits (default 128)");
    o.out = sub.add_option("--out", f.out, "Output base directory");
    o.theta_grid = sub.add_option("--theta-grid", f.theta_grid, "Lemniscate phase samples (default 2048)");
    o.steps = sub.add_option("--steps", f.steps, "Path steps (default 512)");
    o.path_tol = sub.add_option("--path-tol", f.path_tol, "Path tolerance (default 1e-20)");
    o.workers = sub.add_option("--workers", f.workers, "Worker threads (default: available cores)");
    o.z = sub.add_option("--z", f.z, "Complex parameter, exact syntax such as 4/3 or 1/3+2/3i");
    o.kind = sub.add_option("--kind", f.kind, "Figure kind: zeros or levels");
    o.res = sub.add_option("--res", f.res, "Level-field resolution (default 201)");
    o.config = sub.add_option("--config", f.config, "key = value config file");
    o.n->excludes(o.n_range)->excludes(o.n_list);
    o.n_range->excludes(o.n_list);
    return o;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw UsageError("cannot read config file " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

const std::vector<int>& default_n_list(const std::string& command, const std::string& kind) {
    static const std::vector<int> verify = [] {
        std::vector<int> v;
        for (int n = 2; n <= 60; ++n) v.push_back(n);
        return v;
    }();
    static const std::vector<int> report{10, 20, 40, 60};
    static const std::vector<int> figure{5, 10, 16, 23, 40, 60};
    static const std::vector<int> none;
    if (command == "verify") return verify;
    if (command == "report") return report;
    if (command == "figure" && kind == "zeros") return figure;
    return none;
}

RunConfig build_config(const std::string& command, const Flags& f, const Options& o, bool& out_given) {
    RunConfig c;
    c.command = command;
    if (o.config->count()) {
        RunConfig file;
        file.command.clear();
        file.apply(read_file(f.config));
        if (!file.command.empty() && file.command != command)
            throw UsageError("config file is for '" + file.command + "', not '" + command + "'");
        file.command = command;
        c = file;
    }
    out_given = o.out->count() > 0 || o.config->count() > 0;
    if (o.n->count()) c.n_list = {f.n};
    if (o.n_range->count()) c.n_list = cli::parse_n_range(f.n_range);
    if (o.n_list->count()) c.n_list = cli::parse_n_list(f.n_list);
    if (o.bits->count()) c.precision_bits = f.precision_bits;
    if (o.out->count()) c.out = f.out;
    if (o.theta_grid->count()) c.theta_grid = f.theta_grid;
    if (o.steps->count()) c.steps = f.steps;
    if (o.path_tol->count()) c.path_tol = f.path_tol;
    c.workers = o.workers->count() ? f.workers : default_workers();
    if (o.z->count()) c.z = f.z;
    if (o.kind->count()) c.kind = f.kind;
    if (o.res->count()) c.res = f.res;
    if (c.n_list.empty()) c.n_list = default_n_list(command, c.kind);

    const bool needs_n = command == "coeffs" || command == "roots" || command == "verify" || command == "report" ||
                         (command == "figure" && c.kind == "zeros");
    if (needs_n && c.n_list.empty()) throw UsageError(command + " needs --n, --n-range or --n-list");
    for (int n : c.n_list)
        if (n < 1) throw UsageError("degree must be >= 1, got " + std::to_string(n));
    if (c.precision_bits < 64) throw UsageError("--precision-bits must be >= 64");
    if (c.theta_grid < 8) throw UsageError("--theta-grid must be >= 8");
    if (c.steps < 1) throw UsageError("--steps must be >= 1");
    if (!(c.path_tol > 0)) throw UsageError("--path-tol must be positive");
    if (c.workers < 1) throw UsageError("--workers must be >= 1");
    if (c.kind != "zeros" && c.kind != "levels") throw UsageError("--kind must be zeros or levels");
    if (c.res < 16) throw UsageError("--res must be >= 16");
    return c;
}

class Output {
public:
    explicit Output(const RunConfig& c) : dir_(c.run_directory()) {
        fs::create_directories(dir_);
        std::ofstream(dir_ / "config.txt", std::ios::binary) << c.serialize();
    }

    std::ofstream open(const std::string& name) const {
        std::ofstream f(dir_ / name, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + (dir_ / name).string());
        return f;
    }

    const fs::path& dir() const { return dir_; }

private:
    fs::path dir_;
};

class Checks {
public:
    explicit Checks(std::ostream& os) : os_(os) {}

    void report(bool ok, const std::string& name, const std::string& detail, int failure_code = kCheckFailed) {
        os_ << (ok ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
        if (!ok && code_ == kOk) code_ = failure_code;
    }
    void info(const std::string& name, const std::string& detail) { os_ << "INFO " << name << ": " << detail << '\n'; }

    int code() const { return code_; }

private:
    std::ostream& os_;
    int code_ = kOk;
};

std::string fmt(const char* format, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, x);
    return buf;
}

std::string range_text(const std::vector<int>& ns) {
    if (ns.empty()) return "none";
    return "n=" + std::to_string(ns.front()) + ".." + std::to_string(ns.back()) + " (" + std::to_string(ns.size()) +
           " degrees)";
}

ComplexAP parse_z(const RunConfig& c) {
    const cli::RationalComplex q = cli::parse_complex(c.z);
    return ComplexAP::from_rational(q.re, q.im, c.precision_bits);
}

int cmd_coeffs(const RunConfig& c, bool to_file) {
    std::vector<ExactPolynomial> polys;
    for (int n : c.n_list) polys.push_back(build_polynomial(n));
    if (!to_file) {
        write_coefficients_csv(std::cout, polys);
        return kOk;
    }
    const Output out(c);
    auto f = out.open("coefficients.csv");
    write_coefficients_csv(f, polys);
    std::cout << "wrote " << (out.dir() / "coefficients.csv").string() << '\n';
    return kOk;
}

int cmd_roots(const RunConfig& c, bool to_file) {
    const PrecisionConfig cfg = c.precision();
    std::vector<RootSet> sets = parallel_map(c.n_list.size(), c.workers, [&](std::size_t i) {
        return find_certified_roots(build_polynomial(c.n_list[i]), cfg);
    });
    Checks checks(to_file ? std::cout : std::cerr);
    for (const auto& rs : sets)
        checks.report(rs.certified(), "certified n=" + std::to_string(rs.n),
                      std::to_string(rs.roots.size()) + " roots, " + std::to_string(rs.overlaps.size()) +
                          " overlapping disks, precision " + std::to_string(rs.precision_used) + " bits",
                      kCertification);
    if (to_file) {
        const Output out(c);
        auto f = out.open("roots.csv");
        write_roots_csv(f, sets);
    } else {
        write_roots_csv(std::cout, sets);
    }
    return checks.code();
}

int cmd_verify(const RunConfig& c) {
    const std::vector<LemmaReport> reports = verify_lemmas(c.n_list, c.precision(), c.workers);
    const Output out(c);
    {
        auto f = out.open("lemmas.csv");
        write_lemma_csv(f, reports);
        std::vector<RootSet> sets;
        for (const auto& r : reports)
            if (r.failure == FailureKind::None) sets.push_back(r.roots);
        auto g = out.open("roots.csv");
        write_roots_csv(g, sets);
    }

    Checks checks(std::cout);
    const std::string range = range_text(c.n_list);

    int cert_failures = 0, precision_failures = 0;
    for (const auto& r : reports) {
        if (r.failure == FailureKind::Precision) ++precision_failures;
        else if (r.failure != FailureKind::None) ++cert_failures;
    }
    checks.report(precision_failures == 0, "precision", range + ", " + std::to_string(precision_failures) + " exhausted",
                  kPrecision);
    checks.report(cert_failures == 0, "certification", range + ", " + std::to_string(cert_failures) + " failed",
                  kCertification);

    // n = 1 is the non-strict Enestrom-Kakeya case; its boundary verdict is the expected outcome.
    auto verdict_check = [&](const char* name, auto field, bool boundary_at_one) {
        int bad = 0, boundary = 0;
        for (const auto& r : reports) {
            const Verdict v = r.*field;
            if (v == Verdict::Pass) continue;
            if (v == Verdict::Boundary && boundary_at_one && r.n == 1) ++boundary;
            else ++bad;
        }
        std::string detail = range + ", " + std::to_string(bad) + " failing";
        if (boundary) detail += ", boundary at n=1";
        checks.report(bad == 0, name, detail);
    };
    verdict_check("coefficient-ratio |c0/cn| = (3n+1)/(n+1)", &LemmaReport::coefficient_ratio, false);
    verdict_check("ek-coefficient-chain", &LemmaReport::coefficient_chain, true);
    verdict_check("ek-disk |z| < n+1", &LemmaReport::ek_disk, true);
    verdict_check("outside-unit-circle", &LemmaReport::outside_unit_circle, false);
    verdict_check("right-of-one-third", &LemmaReport::right_of_third, false);

    double worst_product = 0.0, min_re = 0.0;
    bool first = true;
    for (const auto& r : reports) {
        if (r.failure != FailureKind::None) continue;
        worst_product = std::max(worst_product, r.product_deviation);
        min_re = first ? r.min_real_part : std::min(min_re, r.min_real_part);
        first = false;
    }
    checks.report(worst_product < 1e-10, "vieta-product", range + ", max relative deviation " + fmt("%.3e", worst_product));
    checks.info("min-real-part", range + ", " + fmt("%.10f", min_re));
    return checks.code();
}

int cmd_report(const RunConfig& c) {
    const std::vector<LemniscateReport> reports = convergence_report(c.n_list, c.precision(), c.workers, c.theta_grid);
    const Output out(c);
    {
        auto f = out.open("roots.csv");
        write_convergence_roots_csv(f, reports);
        auto g = out.open("summary.csv");
        write_summary_csv(g, reports);
    }
    Checks checks(std::cout);
    bool decreasing = true;
    for (std::size_t i = 1; i < reports.size(); ++i)
        decreasing = decreasing && reports[i].median_value_residual < reports[i - 1].median_value_residual;
    std::string medians;
    for (const auto& r : reports) medians += (medians.empty() ? "" : " ") + fmt("%.4e", r.median_value_residual);
    checks.report(decreasing, "median-residual-decreasing", medians);
    checks.report(reports.front().max_value_residual > reports.back().max_value_residual || reports.size() == 1,
                  "max-residual-last-below-first",
                  fmt("%.4e", reports.back().max_value_residual) + " vs " + fmt("%.4e", reports.front().max_value_residual));
    double min_re = reports.front().min_re;
    for (const auto& r : reports) min_re = std::min(min_re, r.min_re);
    checks.report(min_re > 1.0 / 3.0, "right-of-one-third", fmt("min Re %.10f", min_re));
    checks.info("log-residual-slope", fmt("%.4f", log_residual_slope(reports)));
    for (const auto& r : reports)
        checks.info("spread n=" + std::to_string(r.n),
                    fmt("gap ratio %.6f", r.spread.ratio) + " over " + std::to_string(r.spread.counted) + " roots");
    return checks.code();
}

int cmd_figure(const RunConfig& c) {
    Checks checks(std::cout);
    if (c.kind == "zeros") {
        const std::vector<LemniscateReport> reports =
            convergence_report(c.n_list, c.precision(), c.workers, c.theta_grid);
        const LemniscatePolyline branch(c.theta_grid, c.precision());
        const Output out(c);
        auto svg = out.open("zeros.svg");
        auto csv = out.open("zeros.csv");
        figure_zero_plot(reports, branch, svg, csv);
        for (const auto& r : reports)
            checks.report(static_cast<int>(r.per_zero.size()) == r.n, "panel n=" + std::to_string(r.n),
                          std::to_string(r.per_zero.size()) + " markers");
        return checks.code();
    }
    const ComplexAP z = parse_z(c);
    const Output out(c);
    auto field = out.open("level_field.csv");
    auto divides = out.open("divides.csv");
    figure_level_curves(z, Window{}, c.res, c.workers, field, divides);
    checks.report(true, "level-field", std::to_string(c.res * c.res) + " samples at z = " + c.z);
    return checks.code();
}

int cmd_trace(const RunConfig& c) {
    const ComplexAP z = parse_z(c);
    PathOptions options;
    options.steps = c.steps;
    options.path_tol = c.path_tol;
    const SteepestPath path = trace_path(z, options, c.precision());
    const Output out(c);
    {
        auto f = out.open("path.csv");
        write_path_csv(f, path);
    }
    Checks checks(std::cout);
    const PathSample& start = path.samples.front();
    double worst = 0.0;
    for (const auto& s : path.samples) worst = std::max(worst, s.implicit_residual.to_double());
    checks.report(true, "endpoint",
                  std::string(path.start == StartPoint::InvSqrtZ ? "1/sqrt z" : "origin") + ", t(0) = " +
                      start.t.re().to_string(20) + " + " + start.t.im().to_string(20) + "i");
    checks.report(worst <= c.path_tol, "implicit-residual", fmt("max %.3e", worst));
    return checks.code();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hypzero: zeros of 2F1(-n, (n+1)/2; (n+3)/2; z) and the lemniscate |z(1-z)^2| = 4/27"};
    app.require_subcommand(1, 1);
    Flags flags;
    std::vector<std::pair<CLI::App*, Options>> subs;
    for (const char* name : {"coeffs", "roots", "verify", "report", "figure", "trace"}) {
        CLI::App* sub = app.add_subcommand(name);
        subs.emplace_back(sub, add_common(*sub, flags));
    }
    app.get_subcommand("coeffs")->description("Exact rational coefficients as CSV");
    app.get_subcommand("roots")->description("Certified roots as CSV");
    app.get_subcommand("verify")->description("Coefficient and root lemma checks over a range of degrees");
    app.get_subcommand("report")->description("Lemniscate convergence statistics");
    app.get_subcommand("figure")->description("Zero plot (SVG + CSV) or level-field CSV");
    app.get_subcommand("trace")->description("Steepest path CSV for one z");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        for (auto& [sub, opts] : subs) {
            if (!sub->parsed()) continue;
            const std::string command = sub->get_name();
            bool out_given = false;
            const RunConfig c = build_config(command, flags, opts, out_given);
            if (command == "coeffs") return cmd_coeffs(c, out_given);
            if (command == "roots") return cmd_roots(c, out_given);
            if (command == "verify") return cmd_verify(c);
            if (command == "report") return cmd_report(c);
            if (command == "figure") return cmd_figure(c);
            if (command == "trace") return cmd_trace(c);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kUsage;
    } catch (const CertificationFailed& e) {
        std::cerr << "certification failed: " << e.what() << '\n';
        return kCertification;
    } catch (const PrecisionExhausted& e) {
        std::cerr << "precision exhausted: " << e.what() << '\n';
        for (const auto& line : e.trace()) std::cerr << "  " << line << '\n';
        return kPrecision;
    } catch (const PathError& e) {
        std::cerr << "path error: " << e.what() << '\n';
        return kPath;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kCheckFailed;
    }
    return kUsage;
}
