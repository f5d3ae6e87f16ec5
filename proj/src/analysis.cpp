#include "hypzero/analysis.hpp"

#include "hypzero/errors.hpp"
#include "hypzero/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace hypzero {

namespace {

std::string format_double(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
    return buf;
}

Verdict chain_verdict(const EkScaling& ek) {
    if (ek.strictly_increasing) return Verdict::Pass;
    for (std::size_t m = 1; m < ek.scaled.size(); ++m)
        if (ek.scaled[m] < ek.scaled[m - 1]) return Verdict::Fail;
    return Verdict::Boundary;
}

void fill_root_verdicts(LemmaReport& rep, const RootSet& rs) {
    const int n = rep.n;
    const Bits bits = rs.precision_used > 0 ? rs.precision_used : 128;
    rep.root_count = static_cast<int>(rs.roots.size());

    const BigFloat disk(static_cast<long>(n + 1), bits);
    const BigFloat one(1L, bits);
    const BigFloat third(mpq_class(1, 3), bits);
    bool all_inside = true, some_outside_disk = false;
    bool some_beyond_unit = false, all_within_unit = true;
    bool all_right = true, some_left = false;
    BigFloat product(1L, bits);
    BigFloat min_re;
    for (std::size_t j = 0; j < rs.roots.size(); ++j) {
        const ComplexAP& z = rs.roots[j];
        const BigFloat rad = rs.inclusion_radii[j].at(bits);
        const BigFloat mod = abs(z);
        const BigFloat lo = mod - rad;
        const BigFloat hi = mod + rad;
        all_inside = all_inside && hi < disk;
        some_outside_disk = some_outside_disk || disk < lo;
        some_beyond_unit = some_beyond_unit || one < lo;
        all_within_unit = all_within_unit && hi < one;
        all_right = all_right && third < z.re() - rad;
        some_left = some_left || z.re() + rad < third;
        product *= mod;
        if (j == 0 || z.re() < min_re) min_re = z.re();
    }
    const bool count_ok = rep.root_count == n;
    rep.ek_disk = !count_ok || some_outside_disk ? Verdict::Fail : (all_inside ? Verdict::Pass : Verdict::Boundary);
    rep.outside_unit_circle =
        !count_ok || all_within_unit ? Verdict::Fail : (some_beyond_unit ? Verdict::Pass : Verdict::Boundary);
    rep.right_of_third = !count_ok || some_left ? Verdict::Fail : (all_right ? Verdict::Pass : Verdict::Boundary);
    rep.min_real_part = min_re.to_double();
    const BigFloat expected(make_rational(3 * n + 1, n + 1), bits);
    rep.product_deviation = (abs(product - expected) / expected).to_double();
}

LemmaReport lemma_report(int n, const PrecisionConfig& cfg) {
    LemmaReport rep;
    rep.n = n;
    const ExactPolynomial p = build_polynomial(n);
    rep.coefficient_chain = chain_verdict(ek_scaled_coefficients(p));
    const BigRational ratio = abs(p.coefficients.front() / p.coefficients.back());
    rep.coefficient_ratio = ratio == make_rational(3 * n + 1, n + 1) ? Verdict::Pass : Verdict::Fail;
    try {
        rep.roots = find_certified_roots(p, cfg);
        if (!rep.roots.certified()) {
            rep.failure = FailureKind::Certification;
            rep.error = "overlapping inclusion disks";
        }
        fill_root_verdicts(rep, rep.roots);
    } catch (const CertificationFailed& e) {
        rep.failure = FailureKind::Certification;
        rep.error = e.what();
    } catch (const PrecisionExhausted& e) {
        rep.failure = FailureKind::Precision;
        rep.error = e.what();
    } catch (const std::exception& e) {
        rep.failure = FailureKind::Other;
        rep.error = e.what();
    }
    return rep;
}

double wrap_two_pi(double x) {
    const double two_pi = 2 * std::numbers::pi;
    x = std::fmod(x, two_pi);
    return x < 0 ? x + two_pi : x;
}

LemniscateReport lemniscate_report(int n, const PrecisionConfig& cfg, const LemniscatePolyline& branch) {
    const RootSet rs = find_certified_roots(build_polynomial(n), cfg);
    LemniscateReport rep;
    rep.n = n;
    std::vector<double> residuals;
    std::vector<double> psi;
    for (std::size_t j = 0; j < rs.roots.size(); ++j) {
        const ComplexAP& z = rs.roots[j];
        ZeroDiagnostics d{z, rs.residuals[j], rs.inclusion_radii[j], 0.0, 0.0, std::nullopt};
        d.value_residual = lemniscate_residual(z).to_double();
        const std::complex<double> zd = z.to_complex();
        d.branch_distance = branch.distance(zd);
        if (zd.real() > 1.0 / 3.0 && std::abs(zd - 1.0 / 3.0) >= kPinchMargin) {
            const ComplexAP w = 1 - z;
            d.theta = arg(z * w * w).to_double();
            psi.push_back(wrap_two_pi(arg(principal_sqrt(z) * w).to_double()));
        }
        residuals.push_back(d.value_residual);
        rep.max_value_residual = std::max(rep.max_value_residual, d.value_residual);
        rep.min_re = j == 0 ? zd.real() : std::min(rep.min_re, zd.real());
        rep.max_modulus = std::max(rep.max_modulus, std::abs(zd));
        rep.per_zero.push_back(std::move(d));
    }
    rep.median_value_residual = median(residuals);

    std::sort(psi.begin(), psi.end());
    rep.spread.counted = static_cast<int>(psi.size());
    if (psi.size() >= 2) {
        rep.spread.min_gap = psi[1] - psi[0];
        for (std::size_t k = 1; k < psi.size(); ++k) {
            const double gap = psi[k] - psi[k - 1];
            rep.spread.min_gap = std::min(rep.spread.min_gap, gap);
            rep.spread.max_gap = std::max(rep.spread.max_gap, gap);
        }
        rep.spread.ratio = rep.spread.min_gap > 0 ? rep.spread.max_gap / rep.spread.min_gap : 0.0;
    }
    return rep;
}

struct PanelFrame {
    static constexpr double re_min = 0.25, re_max = 1.6, im_min = -0.675, im_max = 0.675;
    static constexpr double plot = 300.0, title = 24.0, pad = 10.0;
    static constexpr int columns = 3;

    double x0, y0;

    double px(double re) const { return x0 + pad + (re - re_min) / (re_max - re_min) * plot; }
    double py(double im) const { return y0 + title + pad + (im_max - im) / (im_max - im_min) * plot; }
};

} // namespace

const char* to_string(Verdict v) noexcept {
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Boundary: return "boundary";
    }
    return "?";
}

std::vector<LemmaReport> verify_lemmas(std::span<const int> ns, const PrecisionConfig& cfg, unsigned workers) {
    cfg.validate();
    for (int n : ns)
        if (n < 1) throw DomainError("verify_lemmas needs n >= 1, got " + std::to_string(n));
    return parallel_map(ns.size(), workers, [&](std::size_t i) { return lemma_report(ns[i], cfg); });
}

std::vector<LemniscateReport> convergence_report(std::span<const int> ns, const PrecisionConfig& cfg,
                                                 unsigned workers, int theta_samples) {
    cfg.validate();
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (ns[i] < 1) throw DomainError("convergence_report needs n >= 1");
        if (i > 0 && ns[i] <= ns[i - 1]) throw DomainError("convergence_report needs an ascending n list");
    }
    const LemniscatePolyline branch(theta_samples, cfg);
    return parallel_map(ns.size(), workers, [&](std::size_t i) { return lemniscate_report(ns[i], cfg, branch); });
}

double median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 == 1 ? values[mid] : (values[mid - 1] + values[mid]) / 2;
}

double log_residual_slope(std::span<const LemniscateReport> reports) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (const auto& r : reports) {
        if (!(r.median_value_residual > 0)) continue;
        const double x = std::log(static_cast<double>(r.n));
        const double y = std::log(r.median_value_residual);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count < 2) return 0.0;
    const double denom = count * sxx - sx * sx;
    return denom != 0 ? (count * sxy - sx * sy) / denom : 0.0;
}

void write_lemma_csv(std::ostream& out, std::span<const LemmaReport> reports) {
    out << "n,root_count,ek_disk,outside_unit_circle,right_of_third,coefficient_chain,coefficient_ratio,"
           "min_real_part,product_deviation,error\n";
    for (const auto& r : reports) {
        std::string error = r.error;
        std::replace(error.begin(), error.end(), ',', ';');
        out << r.n << ',' << r.root_count << ',' << to_string(r.ek_disk) << ',' << to_string(r.outside_unit_circle)
            << ',' << to_string(r.right_of_third) << ',' << to_string(r.coefficient_chain) << ','
            << to_string(r.coefficient_ratio) << ',' << format_double(r.min_real_part, 17) << ','
            << format_double(r.product_deviation, 6) << ',' << error << '\n';
    }
}

void write_convergence_roots_csv(std::ostream& out, std::span<const LemniscateReport> reports) {
    out << "n,j,re,im,residual,inclusion_radius,value_residual,branch_distance,theta\n";
    for (const auto& r : reports) {
        for (std::size_t j = 0; j < r.per_zero.size(); ++j) {
            const ZeroDiagnostics& d = r.per_zero[j];
            out << r.n << ',' << j << ',' << d.root.re().to_string(40) << ',' << d.root.im().to_string(40) << ','
                << d.residual.to_string(10) << ',' << d.inclusion_radius.to_string(10) << ','
                << format_double(d.value_residual, 10) << ',' << format_double(d.branch_distance, 10) << ',';
            if (d.theta) out << format_double(*d.theta, 17);
            out << '\n';
        }
    }
}

void write_summary_csv(std::ostream& out, std::span<const LemniscateReport> reports) {
    out << "n,max_value_residual,median_value_residual,min_re,max_modulus,theta_gap_ratio\n";
    for (const auto& r : reports)
        out << r.n << ',' << format_double(r.max_value_residual, 10) << ','
            << format_double(r.median_value_residual, 10) << ',' << format_double(r.min_re, 17) << ','
            << format_double(r.max_modulus, 17) << ',' << format_double(r.spread.ratio, 10) << '\n';
}

void figure_zero_plot(std::span<const LemniscateReport> reports, const LemniscatePolyline& branch,
                      std::ostream& svg, std::ostream& csv) {
    using F = PanelFrame;
    const double panel_w = F::plot + 2 * F::pad;
    const double panel_h = F::plot + 2 * F::pad + F::title;
    const int rows = std::max(1, static_cast<int>((reports.size() + F::columns - 1) / F::columns));
    const int cols = std::min<int>(F::columns, std::max<int>(1, static_cast<int>(reports.size())));
    char buf[160];

    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
                  cols * panel_w, rows * panel_h, cols * panel_w, rows * panel_h);
    svg << buf;
    svg << "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    csv << "panel,n,kind,re,im\n";

    for (std::size_t k = 0; k < reports.size(); ++k) {
        const LemniscateReport& rep = reports[k];
        const F frame{static_cast<double>(k % F::columns) * panel_w, static_cast<double>(k / F::columns) * panel_h};
        svg << "<g id=\"panel-" << k << "\">\n";
        std::snprintf(buf, sizeof buf,
                      "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" stroke=\"#888\"/>\n",
                      frame.px(F::re_min), frame.py(F::im_max), F::plot, F::plot);
        svg << buf;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">n = %d</text>\n",
                      frame.x0 + panel_w / 2, frame.y0 + F::title - 6, rep.n);
        svg << buf;
        std::snprintf(buf, sizeof buf, "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#ccc\"/>\n",
                      frame.px(F::re_min), frame.py(0), frame.px(F::re_max), frame.py(0));
        svg << buf;

        svg << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\" points=\"";
        for (std::size_t v = 0; v < branch.vertices().size(); ++v) {
            const std::complex<double> q = branch.vertices()[v];
            std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", v ? " " : "", frame.px(q.real()), frame.py(q.imag()));
            svg << buf;
            std::snprintf(buf, sizeof buf, "%zu,%d,branch,%.17g,%.17g\n", k, rep.n, q.real(), q.imag());
            csv << buf;
        }
        svg << "\"/>\n";

        for (const auto& d : rep.per_zero) {
            const std::complex<double> z = d.root.to_complex();
            std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.5\" fill=\"#c0392b\"/>\n",
                          frame.px(z.real()), frame.py(z.imag()));
            svg << buf;
            std::snprintf(buf, sizeof buf, "%zu,%d,root,%.17g,%.17g\n", k, rep.n, z.real(), z.imag());
            csv << buf;
        }
        svg << "</g>\n";
    }
    svg << "</svg>\n";
}

void figure_level_curves(const ComplexAP& z, const Window& window, int res, unsigned workers,
                         std::ostream& field_csv, std::ostream& divides_csv) {
    const LevelField field = divides_and_level_field(z, window, res, workers);
    write_level_field_csv(field_csv, field);
    write_divides_csv(divides_csv, field);
}

} // namespace hypzero
