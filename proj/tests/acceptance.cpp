// Runs the twelve acceptance criteria and prints one PASS/FAIL line each.
// Exit status is nonzero when any criterion fails.

#include "hypzero/analysis.hpp"
#include "hypzero/exact_core.hpp"
#include "hypzero/geometry.hpp"
#include "hypzero/paths_integrals.hpp"
#include "hypzero/rootfinder.hpp"

#include <Eigen/Dense>

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace hypzero;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_seconds, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_budget = seconds < budget_seconds;
    const bool pass = o.pass && in_budget;
    if (!pass) ++failures;
    char timing[96];
    std::snprintf(timing, sizeof timing, "%.2f s of %.0f s budget", seconds, budget_seconds);
    std::cout << (pass ? "PASS" : "FAIL") << " AC" << id << " " << title << ": " << o.detail << " [" << timing
              << (in_budget ? "" : ", over budget") << "]" << std::endl;
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

ComplexAP q(long num, long den, Bits bits = 128) { return ComplexAP(BigFloat(mpq_class(num, den), bits)); }

double rel(const ComplexAP& a, const ComplexAP& b) { return (abs(a - b) / abs(b)).to_double(); }

std::vector<std::complex<double>> companion_roots(const ExactPolynomial& p) {
    const int n = p.degree;
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i)
        c(i, n - 1) = -mpq_class(p.coefficients[static_cast<std::size_t>(i)] / p.coefficients.back()).get_d();
    Eigen::EigenSolver<Eigen::MatrixXd> es(c, false);
    std::vector<std::complex<double>> out;
    for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()[i]);
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path only_subdirectory(const fs::path& base) {
    fs::path found;
    for (const auto& e : fs::directory_iterator(base))
        if (e.is_directory()) found = e.path();
    return found;
}

} // namespace

int main() {
    const fs::path work = fs::path(HYPZERO_ACCEPTANCE_DIR);
    fs::create_directories(work);

    criterion(1, "|c0/cn| = (3n+1)/(n+1) exactly for n = 2..200", 5, [] {
        int bad = 0;
        for (int n = 2; n <= 200; ++n) {
            const ExactPolynomial p = build_polynomial(n);
            if (abs(p.coefficients.front() / p.coefficients.back()) != make_rational(3 * n + 1, n + 1)) ++bad;
        }
        return Outcome{bad == 0, std::to_string(199 - bad) + "/199 exact equalities"};
    });

    criterion(2, "Enestrom-Kakeya chain strictly increasing for n = 2..200, boundary at n = 1", 10, [] {
        int bad = 0;
        for (int n = 2; n <= 200; ++n)
            if (!ek_scaled_coefficients(build_polynomial(n)).strictly_increasing) ++bad;
        const EkScaling one = ek_scaled_coefficients(build_polynomial(1));
        const bool boundary = !one.strictly_increasing && one.scaled[0] == one.scaled[1];
        return Outcome{bad == 0 && boundary, std::to_string(199 - bad) + "/199 strict chains; n = 1 " +
                                                 (boundary ? "non-strict (a0 = a1 = 1)" : "not flagged")};
    });

    criterion(3, "certified roots for n = 2..80", 180, [] {
        std::vector<int> ns;
        for (int n = 2; n <= 80; ++n) ns.push_back(n);
        const auto reps = verify_lemmas(ns);
        int bad = 0;
        double worst_product = 0, min_re = 10;
        for (const auto& r : reps) {
            const bool ok = r.failure == FailureKind::None && r.root_count == r.n && r.ek_disk == Verdict::Pass &&
                            r.outside_unit_circle == Verdict::Pass && r.right_of_third == Verdict::Pass &&
                            r.product_deviation < 1e-10;
            bad += !ok;
            worst_product = std::max(worst_product, r.product_deviation);
            min_re = std::min(min_re, r.min_real_part);
        }
        return Outcome{bad == 0, std::to_string(79 - bad) + "/79 degrees pass; max Vieta deviation " +
                                     sci(worst_product) + "; min Re " + std::to_string(min_re)};
    });

    criterion(4, "companion-matrix oracle for n = 1..12 and the n = 2 quadratic", 30, [] {
        double worst = 0;
        for (int n = 1; n <= 12; ++n) {
            const ExactPolynomial p = build_polynomial(n);
            const RootSet rs = find_certified_roots(p, PrecisionConfig{});
            std::vector<std::complex<double>> got;
            for (const auto& r : rs.roots) got.push_back(r.to_complex());
            worst = std::max(worst, match_distance(got, companion_roots(p)));
        }
        const RootSet two = find_certified_roots(build_polynomial(2), PrecisionConfig{});
        const BigFloat im = BigFloat(mpq_class(7, 6), 128) * sqrt(BigFloat(mpq_class(48, 175), 128));
        double quad = 0, mod = 0;
        for (const auto& r : two.roots) {
            quad = std::max(quad, (abs(r.re() - BigFloat(mpq_class(7, 5), 128)) + abs(abs(r.im()) - im)).to_double());
            mod = std::max(mod, abs(norm(r) - BigFloat(mpq_class(7, 3), 128)).to_double());
        }
        const bool ok = worst < 1e-8 && quad < 1e-12 && mod < 1e-12 && two.roots.size() == 2;
        return Outcome{ok, "max matched distance " + sci(worst) + "; quadratic error " + sci(quad) +
                               "; ||z|^2 - 7/3| " + sci(mod)};
    });

    criterion(5, "(n+1) int_0^1 [t(1-zt^2)]^n dt = F_n(z), n = 1..20, 100 random |z| <= 3", 30, [] {
        std::mt19937_64 rng(20240501);
        std::uniform_real_distribution<double> u(-3, 3);
        std::vector<ComplexAP> zs;
        while (zs.size() < 100) {
            const double x = u(rng), y = u(rng);
            if (x * x + y * y <= 9) zs.push_back(ComplexAP::from_double(x, y, 128));
        }
        double worst = 0;
        for (int n = 1; n <= 20; ++n) {
            const ExactPolynomial p = build_polynomial(n);
            for (const auto& z : zs) worst = std::max(worst, rel(integral_full(n, z), eval_horner(p, z, PrecisionConfig{}).value));
        }
        return Outcome{worst < 1e-10, "max relative error " + sci(worst) + " over 2000 evaluations"};
    });

    criterion(6, "Gamma-ratio closed form vs straight-segment quadrature", 30, [] {
        double worst = 0;
        for (int n = 1; n <= 20; ++n)
            for (const ComplexAP& z : {q(1, 1), q(4, 3), q(2, 1), ComplexAP::from_double(1, 1, 128)})
                worst = std::max(worst, rel(segment_integral_quadrature(n, z), segment_integral(n, z)));
        return Outcome{worst < 1e-10, "max relative error " + sci(worst)};
    });

    criterion(7, "saddle term relative error decreases with n at z = 1", 10, [] {
        double err[3];
        const int ns[3] = {20, 50, 200};
        for (int i = 0; i < 3; ++i)
            err[i] = rel(saddle_asymptotic(ns[i], q(1, 1)).value, segment_integral(ns[i], q(1, 1)));
        const bool ok = err[2] < err[1] && err[1] < err[0] && err[2] < 2e-2;
        return Outcome{ok, "n=20: " + sci(err[0]) + ", n=50: " + sci(err[1]) + ", n=200: " + sci(err[2])};
    });

    criterion(8, "segment + tail = full/(n+1) for n <= 30 at z = 4/3 and z = 2", 60, [] {
        PathOptions options;
        options.grid = PathGrid::GaussLegendre;
        double worst = 0;
        for (const ComplexAP& z : {q(4, 3), q(2, 1)}) {
            const SteepestPath path = trace_path(z, options);
            for (int n = 1; n <= 30; ++n) {
                const ComplexAP seg = segment_integral(n, z);
                const ComplexAP rhs = integral_full(n, z) / BigFloat(static_cast<long>(n + 1), 128);
                // F_1(2) = 0, so the error is measured against the larger of |rhs| and |segment|.
                const BigFloat scale = max(abs(rhs), abs(seg));
                worst = std::max(worst, (abs(seg + tail_integral(n, path) - rhs) / scale).to_double());
            }
        }
        return Outcome{worst < 1e-8, "max relative error " + sci(worst) + " over 60 identities"};
    });

    criterion(9, "saddle sign test agrees with lemniscate sign test on 10^4 random z", 30, [] {
        std::mt19937_64 rng(9091);
        std::uniform_real_distribution<double> u(-3, 3);
        int compared = 0, disagree = 0;
        for (int i = 0; i < 10000; ++i) {
            ComplexAP z = ComplexAP::from_double(u(rng), u(rng), 128);
            if (z.is_zero()) continue;
            const SaddleComparison c = saddle_comparison(z);
            if (abs(c.saddle_gap) > 1e-30 && abs(c.lemniscate_gap) > 1e-30) {
                ++compared;
                disagree += c.saddle_gap.sign() != c.lemniscate_gap.sign();
            }
        }
        return Outcome{disagree == 0 && compared > 9000,
                       std::to_string(compared) + " compared, " + std::to_string(disagree) + " disagreements"};
    });

    criterion(10, "lemniscate residual median decreases over n = 10, 20, 40, 60; zero plot emitted", 180, [&] {
        const std::vector<int> ns{10, 20, 40, 60};
        const auto reps = convergence_report(ns);
        bool decreasing = true;
        std::string medians;
        for (std::size_t i = 0; i < reps.size(); ++i) {
            if (i > 0) decreasing = decreasing && reps[i].median_value_residual < reps[i - 1].median_value_residual;
            medians += (i ? ", " : "") + sci(reps[i].median_value_residual);
        }
        const double ratio = reps.back().median_value_residual / reps.front().median_value_residual;

        const std::vector<int> fig{5, 10, 16, 23, 40, 60};
        const auto panels = convergence_report(fig);
        const fs::path svg_path = work / "zeros.svg";
        {
            std::ofstream svg(svg_path, std::ios::binary), csv(work / "zeros.csv", std::ios::binary);
            figure_zero_plot(panels, LemniscatePolyline(), svg, csv);
        }
        const std::string svg = slurp(svg_path);
        std::size_t groups = 0, circles = 0;
        for (auto pos = svg.find("<g id=\"panel-"); pos != std::string::npos; pos = svg.find("<g id=\"panel-", pos + 1)) ++groups;
        for (auto pos = svg.find("<circle"); pos != std::string::npos; pos = svg.find("<circle", pos + 1)) ++circles;
        const bool figure_ok = groups == 6 && circles == 5 + 10 + 16 + 23 + 40 + 60;
        return Outcome{decreasing && ratio <= 0.5 && figure_ok,
                       "medians " + medians + "; n=60/n=10 ratio " + sci(ratio) + "; SVG " + std::to_string(groups) +
                           " panels, " + std::to_string(circles) + " markers"};
    });

    criterion(11, "Re{(1-zt^2)t/(1-3zt^2)} > 1/6 on r in [0.9, 1] for 20 zero-basin z with Re z < 1/3", 30, [] {
        std::mt19937_64 rng(1111);
        std::uniform_real_distribution<double> x(-2.0, 1.0 / 3.0), y(-2.0, 2.0);
        int sampled = 0, held = 0;
        double min_value = 1e9;
        while (sampled < 20) {
            const ComplexAP z = ComplexAP::from_double(x(rng), y(rng), 128);
            if (!(z.re() < BigFloat(mpq_class(1, 3), 128)) || basin_classify(z, 1e-6) != BasinLabel::ZeroBasin) continue;
            const HalfPlaneVerdict v = halfplane_bound_check(trace_path(z));
            ++sampled;
            held += v.holds;
            min_value = std::min(min_value, v.min_real.to_double());
        }
        return Outcome{held == 20, std::to_string(held) + "/20 paths; smallest value " + std::to_string(min_value)};
    });

    criterion(12, "two runs of verify --n-range 2..60 give byte-identical CSVs", 120, [&] {
        std::string files[2][2];
        for (int run = 0; run < 2; ++run) {
            const fs::path base = work / ("determinism_" + std::to_string(run));
            fs::remove_all(base);
            const std::string cmd = std::string(HYPZERO_CLI_PATH) + " verify --n-range 2..60 --out " + base.string() +
                                    " > " + (work / ("determinism_" + std::to_string(run) + ".log")).string() + " 2>&1";
            const int status = std::system(cmd.c_str());
            if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
                return Outcome{false, "verify run " + std::to_string(run) + " exited with status " + std::to_string(status)};
            const fs::path dir = only_subdirectory(base);
            files[run][0] = slurp(dir / "roots.csv");
            files[run][1] = slurp(dir / "lemmas.csv");
        }
        const bool same = files[0][0] == files[1][0] && files[0][1] == files[1][1] && !files[0][0].empty();
        return Outcome{same, "roots.csv " + std::to_string(files[0][0].size()) + " bytes, lemmas.csv " +
                                 std::to_string(files[0][1].size()) + " bytes, " + (same ? "identical" : "different")};
    });

    std::cout << (failures == 0 ? "ALL ACCEPTANCE CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
