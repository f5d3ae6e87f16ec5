#include "hypzero/paths_integrals.hpp"

#include "hypzero/errors.hpp"
#include "hypzero/exact_core.hpp"
#include "hypzero/geometry.hpp"
#include "hypzero/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

namespace hypzero {

namespace {

constexpr int kNewtonIterations = 50;
constexpr int kMaxHalvings = 40;

struct Grid {
    std::vector<BigFloat> r;
    std::vector<BigFloat> w;
};

Grid make_grid(const PathOptions& options, Bits bits) {
    Grid g;
    if (options.grid == PathGrid::Graded) {
        const int steps = options.steps;
        for (int k = 0; k <= steps; ++k) {
            const BigFloat u = BigFloat(static_cast<long>(steps - k), bits) / steps;
            g.r.push_back(1 - u * u);
        }
        for (int k = 0; k <= steps; ++k) {
            const BigFloat& left = g.r[static_cast<std::size_t>(std::max(k - 1, 0))];
            const BigFloat& right = g.r[static_cast<std::size_t>(std::min(k + 1, steps))];
            g.w.push_back((right - left) / 2);
        }
    } else {
        const GaussLegendreRule& rule = gauss_legendre(options.nodes, bits);
        g.r.emplace_back(bits);
        g.w.emplace_back(bits);
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            g.r.push_back(rule.nodes[k]);
            g.w.push_back(rule.weights[k]);
        }
        g.r.emplace_back(1L, bits);
        g.w.emplace_back(bits);
    }
    return g;
}

class PathStepper {
public:
    PathStepper(const ComplexAP& z, double path_tol, Bits bits)
        : z_(z), one_minus_z_(1 - z), abs_one_minus_z_(abs(1 - z)), saddle_tol_(10 * path_tol, 53),
          newton_tol_(pow2(6 - static_cast<long>(bits), 53)) {}

    ComplexAP slope(const ComplexAP& t) const {
        const ComplexAP denom = fprime_factor(z_, t);
        if (abs(denom) < saddle_tol_)
            throw PathError(PathError::Kind::SaddleProximity, "steepest path runs into a saddle of f_z");
        return one_minus_z_ / denom;
    }

    ComplexAP rk4(const ComplexAP& t, const BigFloat& h) const {
        const BigFloat half = h / 2;
        const ComplexAP k1 = slope(t);
        const ComplexAP k2 = slope(t + k1 * half);
        const ComplexAP k3 = slope(t + k2 * half);
        const ComplexAP k4 = slope(t + k3 * h);
        return t + (k1 + 2 * k2 + 2 * k3 + k4) * (h / 6);
    }

    /// Newton projection onto t(1 - z t^2) = r(1 - z); false if it does not settle.
    bool project(ComplexAP& t, const BigFloat& r) const {
        const ComplexAP target = one_minus_z_ * r;
        for (int it = 0; it < kNewtonIterations; ++it) {
            const ComplexAP denom = fprime_factor(z_, t);
            if (abs(denom) < saddle_tol_)
                throw PathError(PathError::Kind::SaddleProximity, "Newton projection at a saddle of f_z");
            const ComplexAP delta = (f_eval(z_, t) - target) / denom;
            t -= delta;
            if (!(newton_tol_ * (1 + abs(t)) < abs(delta))) return true;
        }
        return false;
    }

    BigFloat residual(const ComplexAP& t, const BigFloat& r) const {
        return abs(f_eval(z_, t) - one_minus_z_ * r).at(53);
    }

    const BigFloat& abs_one_minus_z() const { return abs_one_minus_z_; }

private:
    ComplexAP z_;
    ComplexAP one_minus_z_;
    BigFloat abs_one_minus_z_;
    BigFloat saddle_tol_;
    BigFloat newton_tol_;
};

// Advances t from r_from to r_to with RK4 substeps no longer than max_step, halving a substep
// whenever the Newton correction is large compared to the predicted displacement.
ComplexAP advance(const PathStepper& stepper, ComplexAP t, const BigFloat& r_from, const BigFloat& r_to,
                  const BigFloat& max_step) {
    BigFloat r = r_from;
    const Bits bits = r_from.precision();
    while (!(r == r_to)) {
        BigFloat h = r_to - r;
        if (max_step < abs(h)) h = h.sign() < 0 ? -max_step : max_step;
        bool accepted = false;
        for (int halving = 0; halving <= kMaxHalvings && !accepted; ++halving) {
            const BigFloat r_next = (abs(r_to - r) <= abs(h)) ? r_to : r + h;
            ComplexAP candidate = stepper.rk4(t, r_next - r);
            const ComplexAP predicted = candidate;
            const BigFloat displacement = abs(predicted - t);
            if (stepper.project(candidate, r_next) &&
                abs(candidate - predicted) <= displacement / 10 + pow2(-static_cast<long>(bits) / 2, 53)) {
                t = std::move(candidate);
                r = r_next;
                accepted = true;
            } else {
                h /= 2;
            }
        }
        if (!accepted) throw PathError(PathError::Kind::NewtonFailure, "path continuation failed to converge");
    }
    return t;
}

ComplexAP integrate_power(int n, const ComplexAP& z, const ComplexAP& scale) {
    const Bits bits = z.precision() + 32;
    const GaussLegendreRule& rule = gauss_legendre(std::max(64, 2 * n), bits);
    const ComplexAP zw = z.at(bits);
    const ComplexAP s = scale.at(bits);
    ComplexAP sum(bits);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const ComplexAP t = s * rule.nodes[k];
        sum += pow(f_eval(zw, t), static_cast<unsigned long>(n)) * rule.weights[k];
    }
    return sum * s;
}

BigFloat saddle_constant(int n, Bits bits) {
    // (2/sqrt 27)^n sqrt(2 pi) / (3 sqrt n)
    const BigFloat base = 2 / sqrt(BigFloat(27L, bits));
    return pow(base, static_cast<long>(n)) * sqrt(2 * pi(bits)) / (3 * sqrt(BigFloat(static_cast<long>(n), bits)));
}

void require_degree(int n) {
    if (n < 1) throw DomainError("integral needs n >= 1, got " + std::to_string(n));
}

} // namespace

SteepestPath trace_path(const ComplexAP& z, const PathOptions& options, const PrecisionConfig& cfg) {
    cfg.validate();
    if (options.steps < 1) throw DomainError("path needs at least one step");
    if (options.grid == PathGrid::GaussLegendre && options.nodes < 1) throw DomainError("path needs at least one node");
    const Bits bits = cfg.bits;
    const ComplexAP zw = z.at(bits);
    if (zw.re() == BigFloat(1L, bits) && zw.im().is_zero())
        throw DomainError("steepest path degenerates at z = 1 (f_z(1) = 0)");
    const BasinLabel basin = basin_classify(zw);
    if (basin == BasinLabel::Boundary) throw DomainError("z lies on the basin boundary Re(sqrt z) = 1/sqrt 3");

    SteepestPath path;
    path.z = zw;
    path.start = basin == BasinLabel::InvSqrtZBasin ? StartPoint::InvSqrtZ : StartPoint::Origin;
    path.grid = options.grid;
    path.path_tol = options.path_tol;

    const Grid grid = make_grid(options, bits);
    const PathStepper stepper(zw, options.path_tol, bits);
    const BigFloat max_step = BigFloat(1L, bits) / options.steps;

    const std::size_t count = grid.r.size();
    std::vector<ComplexAP> ts(count, ComplexAP(bits));
    ts[count - 1] = ComplexAP::from_long(1, bits);
    for (std::size_t k = count - 1; k-- > 0;) ts[k] = advance(stepper, ts[k + 1], grid.r[k + 1], grid.r[k], max_step);

    const ComplexAP predicted =
        path.start == StartPoint::InvSqrtZ ? ComplexAP::from_long(1, bits) / principal_sqrt(zw) : ComplexAP(bits);
    if (!(abs(ts.front() - predicted) <= BigFloat(100 * options.path_tol, 53)))
        throw PathError(PathError::Kind::EndpointMismatch,
                        std::string("path ends away from the predicted start point (") + to_string(basin) + ")");

    path.samples.reserve(count);
    for (std::size_t k = 0; k < count; ++k)
        path.samples.push_back({grid.r[k], ts[k], grid.w[k], stepper.residual(ts[k], grid.r[k])});
    return path;
}

ComplexAP integral_full(int n, const ComplexAP& z) {
    require_degree(n);
    const ComplexAP one = ComplexAP::from_long(1, z.precision());
    return (integrate_power(n, z, one) * (n + 1)).at(z.precision());
}

ComplexAP segment_integral(int n, const ComplexAP& z) {
    require_degree(n);
    if (z.is_zero()) throw DomainError("segment integral undefined at z = 0");
    const Bits bits = z.precision();
    const BigFloat ratio(gamma_ratio_exact(n).value, bits);
    const ComplexAP denom = pow(principal_sqrt(z), static_cast<unsigned long>(n + 1)) * 2;
    return ComplexAP(ratio) / denom;
}

ComplexAP segment_integral_quadrature(int n, const ComplexAP& z) {
    require_degree(n);
    if (z.is_zero()) throw DomainError("segment integral undefined at z = 0");
    const ComplexAP end = ComplexAP::from_long(1, z.precision()) / principal_sqrt(z);
    return integrate_power(n, z, end).at(z.precision());
}

AsymptoticTerm saddle_asymptotic(int n, const ComplexAP& z) {
    require_degree(n);
    if (z.is_zero()) throw DomainError("saddle asymptotic undefined at z = 0");
    const Bits bits = z.precision();
    AsymptoticTerm term;
    term.n = n;
    term.value = ComplexAP(saddle_constant(n, bits)) / pow(principal_sqrt(z), static_cast<unsigned long>(n + 1));
    term.rel_error_budget = 1.0 / n;
    return term;
}

ComplexAP tail_r_integral(int n, const SteepestPath& path) {
    require_degree(n);
    const auto& s = path.samples;
    if (s.size() < 2) throw PathError(PathError::Kind::PathTooCoarse, "path has fewer than two samples");
    if (path.grid == PathGrid::Graded) {
        // Every interval reaching into [1 - 4/n, 1] must be narrower than 1/(4n).
        const double layer = 1.0 - 4.0 / n;
        for (std::size_t k = 0; k + 1 < s.size(); ++k)
            if (s[k + 1].r.to_double() > layer && (s[k + 1].r - s[k].r).to_double() >= 1.0 / (4.0 * n))
                throw PathError(PathError::Kind::PathTooCoarse, "r-resolution near r = 1 coarser than 1/(4n)");
    } else if (static_cast<int>(s.size()) - 2 < n) {
        throw PathError(PathError::Kind::PathTooCoarse, "Gauss-Legendre path needs at least n nodes");
    }

    const ComplexAP& z = path.z;
    ComplexAP sum(z.precision());
    for (const auto& sample : s) {
        if (sample.weight.is_zero()) continue;
        const ComplexAP zt2 = z * sample.t * sample.t;
        const ComplexAP integrand = (1 - zt2) * sample.t / (1 - 3 * zt2);
        sum += integrand * (pow(sample.r, static_cast<long>(n - 1)) * sample.weight);
    }
    return sum;
}

ComplexAP tail_integral(int n, const SteepestPath& path) {
    if (path.start != StartPoint::InvSqrtZ)
        throw DomainError("tail integral needs a path starting at 1/sqrt z");
    const ComplexAP w = 1 - path.z;
    return pow(w, static_cast<unsigned long>(n)) * tail_r_integral(n, path);
}

ZeroEquation zero_equation_residual(int n, const ComplexAP& z, PathOptions options, const PrecisionConfig& cfg) {
    require_degree(n);
    const Bits bits = cfg.bits;
    const ComplexAP zw = z.at(bits);
    if (!(BigFloat(mpq_class(1, 3), bits) < zw.re())) throw DomainError("zero condition needs Re z > 1/3");
    options.grid = PathGrid::GaussLegendre;
    options.nodes = std::max(options.nodes, 2 * n + 32);
    const SteepestPath path = trace_path(zw, options, cfg);
    if (path.start != StartPoint::InvSqrtZ) throw DomainError("zero condition needs z in the 1/sqrt z basin");

    ZeroEquation eq;
    const ComplexAP w = 1 - zw;
    eq.lhs = pow(principal_sqrt(zw), static_cast<unsigned long>(n + 1)) * pow(w, static_cast<unsigned long>(n)) *
             tail_r_integral(n, path);
    eq.rhs = ComplexAP(-saddle_constant(n, bits));
    eq.root_ratio = pow(abs(eq.lhs) / abs(eq.rhs), BigFloat(mpq_class(1, n), bits));
    return eq;
}

HalfPlaneVerdict halfplane_bound_check(const SteepestPath& path, double r_lo, double r_hi) {
    if (path.start != StartPoint::Origin) throw DomainError("half-plane bound applies to paths from the origin");
    const ComplexAP& z = path.z;
    const BigFloat sixth(mpq_class(1, 6), z.precision());
    HalfPlaneVerdict v;
    bool first = true;
    for (const auto& s : path.samples) {
        const double r = s.r.to_double();
        if (r < r_lo || r > r_hi) continue;
        const ComplexAP zt2 = z * s.t * s.t;
        const BigFloat value = ((1 - zt2) * s.t / (1 - 3 * zt2)).re();
        if (first || value < v.min_real) v.min_real = value;
        first = false;
        ++v.samples_checked;
    }
    v.holds = v.samples_checked > 0 && sixth < v.min_real;
    return v;
}

void write_path_csv(std::ostream& out, const SteepestPath& path) {
    out << "r,re_t,im_t,implicit_residual\n";
    // Tracing order: r = 1 (t = 1) first, the start point last.
    for (auto it = path.samples.rbegin(); it != path.samples.rend(); ++it) {
        const PathSample& s = *it;
        out << s.r.to_string(30) << ',' << s.t.re().to_string(30) << ',' << s.t.im().to_string(30) << ','
            << s.implicit_residual.to_string(6) << '\n';
    }
}

} // namespace hypzero
