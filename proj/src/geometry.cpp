#include "hypzero/geometry.hpp"

#include "hypzero/errors.hpp"
#include "hypzero/rootfinder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <thread>

namespace hypzero {

namespace {

constexpr double kLemniscateLevel = 4.0 / 27.0;

BigFloat four_27(Bits bits) { return BigFloat(mpq_class(4, 27), bits); }

BigFloat one_third(Bits bits) { return BigFloat(mpq_class(1, 3), bits); }

int sign_with_tolerance(const BigFloat& x, const BigFloat& tol) {
    if (!(tol < abs(x))) return 0;
    return x.sign() > 0 ? 1 : -1;
}

} // namespace

BigFloat lemniscate_residual(const ComplexAP& z) {
    const ComplexAP w = 1 - z;
    return abs(abs(z * w * w) - four_27(z.precision()));
}

std::vector<LemniscatePoint> lemniscate_points(const BigFloat& theta, const PrecisionConfig& cfg) {
    const Bits bits = cfg.bits;
    const BigFloat two_pi = 2 * pi(bits);
    BigFloat phase = theta.at(bits);
    while (phase < BigFloat(0L, bits)) phase += two_pi;
    while (!(phase < two_pi)) phase -= two_pi;

    const BigFloat pinch_tol = pow2(-static_cast<long>(bits) / 2, 53);
    if (phase < pinch_tol || two_pi - phase < pinch_tol) {
        // (3z - 1)^2 (3z - 4) = 0: the right loop meets the left loop at 1/3.
        const BigFloat zero(bits);
        return {
            {ComplexAP(BigFloat(mpq_class(4, 3), bits)), zero, Branch::Right, false},
            {ComplexAP(one_third(bits)), zero, Branch::Right, true},
            {ComplexAP(one_third(bits)), zero, Branch::Left, true},
        };
    }

    // 27 z^3 - 54 z^2 + 27 z - 4 e^{i theta} = 0
    const ComplexAP c0 = -(exp_i(phase) * BigFloat(4L, bits));
    std::array<ComplexAP, 4> coeffs{c0, ComplexAP::from_long(27, bits), ComplexAP::from_long(-54, bits),
                                    ComplexAP::from_long(27, bits)};
    std::vector<ComplexAP> roots = detail::cubic_roots(coeffs, cfg);

    const BigFloat third = one_third(bits);
    std::vector<LemniscatePoint> out;
    for (auto& r : roots) {
        const Branch b = third < r.re() ? Branch::Right : Branch::Left;
        out.push_back({std::move(r), phase, b, false});
    }
    return out;
}

std::vector<LemniscatePoint> lemniscate_branch(std::span<const BigFloat> thetas, const PrecisionConfig& cfg) {
    if (thetas.empty()) throw DomainError("lemniscate_branch needs a nonempty theta grid");
    std::vector<LemniscatePoint> out;
    for (const auto& theta : thetas) {
        std::vector<LemniscatePoint> pts = lemniscate_points(theta, cfg);
        std::vector<LemniscatePoint> right;
        for (auto& p : pts)
            if (p.branch == Branch::Right) right.push_back(std::move(p));
        std::sort(right.begin(), right.end(), [](const LemniscatePoint& a, const LemniscatePoint& b) {
            return arg(a.z - BigFloat(1L, a.z.precision())) < arg(b.z - BigFloat(1L, b.z.precision()));
        });
        for (auto& p : right) out.push_back(std::move(p));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const LemniscatePoint& a, const LemniscatePoint& b) { return a.theta < b.theta; });
    return out;
}

std::vector<BigFloat> theta_grid(int count, Bits bits) {
    if (count < 1) throw DomainError("theta grid needs at least one sample");
    std::vector<BigFloat> grid;
    grid.reserve(static_cast<std::size_t>(count));
    const BigFloat two_pi = 2 * pi(bits);
    for (int k = 0; k < count; ++k) grid.push_back(two_pi * k / count);
    return grid;
}

LemniscatePolyline::LemniscatePolyline(int theta_samples, const PrecisionConfig& cfg) {
    const std::vector<BigFloat> grid = theta_grid(theta_samples, cfg.bits);
    for (const auto& p : lemniscate_branch(grid, cfg))
        if (!p.pinch) vertices_.push_back(p.z.to_complex());
    std::sort(vertices_.begin(), vertices_.end(), [](std::complex<double> a, std::complex<double> b) {
        return std::arg(a - 1.0) < std::arg(b - 1.0);
    });
    vertices_.insert(vertices_.begin(), std::complex<double>(1.0 / 3.0, 0.0));
    vertices_.emplace_back(1.0 / 3.0, 0.0);
}

double LemniscatePolyline::distance(std::complex<double> z) const {
    double best = std::numeric_limits<double>::infinity();
    std::complex<double> nearest = vertices_.front();
    for (std::size_t k = 0; k + 1 < vertices_.size(); ++k) {
        const std::complex<double> a = vertices_[k];
        const std::complex<double> ab = vertices_[k + 1] - a;
        const double len2 = std::norm(ab);
        double s = len2 > 0 ? ((z - a) * std::conj(ab)).real() / len2 : 0.0;
        s = std::clamp(s, 0.0, 1.0);
        const std::complex<double> q = a + s * ab;
        const double d = std::abs(z - q);
        if (d < best) {
            best = d;
            nearest = q;
        }
    }
    // One Newton step on h(q) = |g(q)| - 4/27 with g = q(1-q)^2 along grad h = g conj(g') / |g|.
    const std::complex<double> g = nearest * (1.0 - nearest) * (1.0 - nearest);
    const std::complex<double> dg = (1.0 - nearest) * (1.0 - 3.0 * nearest);
    if (std::abs(g) > 0 && std::abs(dg) > 1e-12) {
        const double h = std::abs(g) - kLemniscateLevel;
        const std::complex<double> grad = g * std::conj(dg) / std::abs(g);
        nearest -= h * grad / std::norm(dg);
    }
    return std::abs(z - nearest);
}

const char* to_string(BasinLabel label) noexcept {
    switch (label) {
    case BasinLabel::ZeroBasin: return "zero-basin";
    case BasinLabel::InvSqrtZBasin: return "inv-sqrt-z-basin";
    case BasinLabel::Boundary: return "boundary";
    }
    return "?";
}

BasinLabel basin_classify(const ComplexAP& z, double input_uncertainty) {
    if (z.is_zero()) throw DomainError("basin undefined at z = 0");
    if (z.im().is_zero() && z.re().sign() < 0) throw DomainError("basin undefined on the branch cut");
    const Bits bits = z.precision();
    const BigFloat gap = principal_sqrt(z).re() - 1 / sqrt(BigFloat(3L, bits));
    BigFloat tau = pow2(4 - static_cast<long>(bits), 53);
    if (tau < input_uncertainty) tau = BigFloat(input_uncertainty, 53);
    if (tau < gap) return BasinLabel::InvSqrtZBasin;
    if (gap < -tau) return BasinLabel::ZeroBasin;
    return BasinLabel::Boundary;
}

std::vector<ComplexAP> parabola_boundary(std::span<const BigFloat> y_grid) {
    std::vector<ComplexAP> out;
    out.reserve(y_grid.size());
    for (const auto& y : y_grid) {
        const Bits bits = y.precision();
        BigFloat x = one_third(bits) - BigFloat(mpq_class(3, 4), bits) * y * y;
        out.emplace_back(std::move(x), y);
    }
    return out;
}

LevelField divides_and_level_field(const ComplexAP& z, const Window& window, int res, unsigned workers) {
    if (res < 16) throw DomainError("level field resolution must be >= 16");
    LevelField field;
    field.z = z.to_complex();
    field.resolution = res;
    field.window = window;
    const auto cells = static_cast<std::size_t>(res) * static_cast<std::size_t>(res);
    field.t.resize(cells);
    field.abs_f.resize(cells);

    const std::complex<double> zc = field.z;
    auto fill_row = [&](int row) {
        const double im = window.im_min + (window.im_max - window.im_min) * row / (res - 1);
        for (int col = 0; col < res; ++col) {
            const double re = window.re_min + (window.re_max - window.re_min) * col / (res - 1);
            const std::complex<double> t(re, im);
            const auto idx = static_cast<std::size_t>(row) * static_cast<std::size_t>(res) + static_cast<std::size_t>(col);
            field.t[idx] = t;
            field.abs_f[idx] = std::abs(t * (1.0 - zc * t * t));
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(res)));
    if (threads == 1) {
        for (int row = 0; row < res; ++row) fill_row(row);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back([&, w] {
                for (int row = static_cast<int>(w); row < res; row += static_cast<int>(threads)) fill_row(row);
            });
    }

    const StructuralPoints sp = structural_points(z);
    const std::complex<double> along = sp.zeros[1].to_complex();
    const std::complex<double> normal = std::complex<double>(0, 1) * along / std::abs(along);
    field.divides = {DivideLine{sp.saddles[0].to_complex(), normal}, DivideLine{sp.saddles[1].to_complex(), normal}};
    return field;
}

SaddleComparison saddle_comparison(const ComplexAP& z) {
    if (z.is_zero()) throw DomainError("saddle comparison undefined at z = 0");
    const Bits bits = z.precision();
    const ComplexAP one = ComplexAP::from_long(1, bits);
    const ComplexAP saddle = one / principal_sqrt(3 * z);
    SaddleComparison out;
    out.saddle_gap = abs(f_eval(z, one)) - abs(f_eval(z, saddle));
    const ComplexAP w = 1 - z;
    out.lemniscate_gap = abs(z * w * w) - four_27(bits);
    const BigFloat tol = pow2(16 - static_cast<long>(bits), 53);
    out.via_saddle = sign_with_tolerance(out.saddle_gap, tol);
    out.via_lemniscate = sign_with_tolerance(out.lemniscate_gap, tol);
    return out;
}

void write_level_field_csv(std::ostream& out, const LevelField& field) {
    out << "re_t,im_t,abs_f\n";
    char buf[96];
    for (std::size_t k = 0; k < field.t.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.12g\n", field.t[k].real(), field.t[k].imag(), field.abs_f[k]);
        out << buf;
    }
}

void write_divides_csv(std::ostream& out, const LevelField& field) {
    out << "line,point_re,point_im,dir_re,dir_im\n";
    char buf[160];
    for (std::size_t k = 0; k < field.divides.size(); ++k) {
        const auto& d = field.divides[k];
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g\n", k, d.point.real(), d.point.imag(),
                      d.direction.real(), d.direction.imag());
        out << buf;
    }
}

void write_lemniscate_csv(std::ostream& out, std::span<const LemniscatePoint> points) {
    out << "theta,re_z,im_z,residual\n";
    for (const auto& p : points)
        out << p.theta.to_string(20) << ',' << p.z.re().to_string(30) << ',' << p.z.im().to_string(30) << ','
            << lemniscate_residual(p.z).to_string(6) << '\n';
}

} // namespace hypzero
