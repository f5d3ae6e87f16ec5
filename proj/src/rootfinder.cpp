#include "hypzero/rootfinder.hpp"

#include "hypzero/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

namespace hypzero {

namespace {

constexpr Bits kBoundBits = 53;
constexpr int kStallWindow = 10;
constexpr int kMaxSweepsPerPrecision = 500;

using cplx = std::complex<double>;

// Aberth sweeps in double precision to move the starting circle close to the roots.
// Stops on convergence or when corrections stop shrinking (noise floor reached).
void double_prepass(std::span<const double> coeffs, std::vector<cplx>& z) {
    const std::size_t n = z.size();
    std::vector<double> history;
    for (int sweep = 0; sweep < 500; ++sweep) {
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cplx v = 0.0, d = 0.0;
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
                d = d * z[i] + v;
                v = v * z[i] + *it;
            }
            if (d == cplx(0.0)) continue;
            const cplx ratio = v / d;
            cplx repulsion = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i && z[i] != z[j]) repulsion += 1.0 / (z[i] - z[j]);
            const cplx w = ratio / (1.0 - ratio * repulsion);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
            z[i] -= w;
            worst = std::max(worst, std::abs(w) / (1.0 + std::abs(z[i])));
        }
        history.push_back(worst);
        if (worst < 1e-13) return;
        if (history.size() > kStallWindow && worst > 0.5 * history[history.size() - 1 - kStallWindow]) return;
    }
}

template <typename Evaluator>
std::vector<ComplexAP> aberth(Evaluator&& evaluate, std::vector<ComplexAP> z, const PrecisionConfig& cfg, int& sweeps_out,
                              Bits& bits_out) {
    const std::size_t n = z.size();
    PrecisionConfig current = cfg;
    std::vector<std::string> trace;
    int total_sweeps = 0;

    while (true) {
        const Bits bits = current.bits;
        for (auto& zi : z) zi = zi.at(bits);
        Bits eval_bits = std::min<Bits>(current.max_bits, bits + 64);
        const BigFloat threshold = pow2(8 - static_cast<long>(bits), kBoundBits);
        const BigFloat local_regime = pow2(-16, kBoundBits);
        std::vector<BigFloat> history;
        int local_sweeps = 0;
        bool stalled = false;

        for (int sweep = 0; sweep < kMaxSweepsPerPrecision; ++sweep) {
            ++total_sweeps;
            BigFloat worst(kBoundBits);
            bool all_below = true;
            for (std::size_t i = 0; i < n; ++i) {
                HornerValueDerivative ev = evaluate(z[i], eval_bits);
                // Near convergence the value is dominated by cancellation; widen the evaluation
                // until the residual is resolved so the correction reflects the true offset.
                while (!(ev.value_error < abs(ev.value)) && eval_bits < current.max_bits) {
                    eval_bits = std::min<Bits>(current.max_bits, eval_bits + bits);
                    ev = evaluate(z[i], eval_bits);
                }
                if (ev.value.is_zero()) continue;
                if (!(ev.value_error < abs(ev.value))) continue; // at the noise floor of max_bits
                if (ev.derivative.is_zero()) throw CertificationFailed("vanishing derivative during iteration");

                const ComplexAP ratio = (ev.value / ev.derivative).at(bits);
                ComplexAP repulsion(bits);
                for (std::size_t j = 0; j < n; ++j) {
                    if (j == i) continue;
                    ComplexAP diff = z[i] - z[j];
                    if (diff.is_zero()) diff = ComplexAP(pow2(-static_cast<long>(bits) / 2, bits), BigFloat(bits));
                    repulsion += ComplexAP::from_long(1, bits) / diff;
                }
                const ComplexAP w = ratio / (1 - ratio * repulsion);
                z[i] -= w;
                const BigFloat corr = (abs(w) / (1 + abs(z[i]))).at(kBoundBits);
                if (!(corr < threshold)) all_below = false;
                worst = max(worst, corr);
            }
            history.push_back(worst);
            if (all_below) {
                sweeps_out = total_sweeps;
                bits_out = bits;
                return z;
            }
            // The stall clock only runs once every iterate is in the local convergence regime;
            // the global phase of the iteration is allowed to wander.
            if (worst < local_regime) ++local_sweeps;
            if (local_sweeps > kStallWindow && worst > history[history.size() - 1 - kStallWindow] / 2) {
                stalled = true;
                break;
            }
        }

        std::ostringstream line;
        line << bits << " bits: " << (stalled ? "stall" : "sweep limit") << " after " << history.size()
             << " sweeps, largest correction " << history.back().to_string(4);
        trace.push_back(line.str());
        if (current.exhausted()) throw PrecisionExhausted("precision exhausted in root iteration", trace);
        current = current.escalated();
    }
}

class FamilyEvaluator {
public:
    explicit FamilyEvaluator(const ExactPolynomial& p) : p_(p) {}

    HornerValueDerivative operator()(const ComplexAP& z, Bits bits) {
        auto it = cache_.find(bits);
        if (it == cache_.end()) it = cache_.emplace(bits, RoundedPolynomial(p_, bits)).first;
        return it->second.evaluate_with_derivative(z);
    }

private:
    const ExactPolynomial& p_;
    std::map<Bits, RoundedPolynomial> cache_;
};

} // namespace

std::vector<ComplexAP> initial_points(const ExactPolynomial& p, Bits bits) {
    const int n = p.degree;
    if (n < 1) throw DomainError("initial points need degree >= 1");
    const BigRational centroid_q = -p.coefficients[n - 1] / (BigRational(n) * p.coefficients[n]);
    const BigFloat centroid(centroid_q, bits);
    const BigFloat radius = BigFloat(std::min(n + 1, 2), bits) * BigFloat(mpq_class(4, 5), bits);
    // Offset of (sqrt(5) - 1)/2 radians keeps the circle off the real axis symmetry.
    const BigFloat offset = (sqrt(BigFloat(5L, bits)) - 1) / 2;
    const BigFloat two_pi = 2 * pi(bits);
    std::vector<ComplexAP> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const BigFloat angle = two_pi * k / n + offset;
        pts.push_back(ComplexAP(centroid) + exp_i(angle) * radius);
    }
    return pts;
}

RootSet find_roots(const ExactPolynomial& p, const PrecisionConfig& cfg) {
    cfg.validate();
    const int n = p.degree;
    if (n < 1) throw DomainError("find_roots needs degree >= 1");

    std::vector<ComplexAP> start = initial_points(p, cfg.bits);
    {
        std::vector<double> coeffs;
        for (const auto& c : p.coefficients) coeffs.push_back(c.get_d());
        std::vector<cplx> z;
        for (const auto& s : start) z.push_back(s.to_complex());
        double_prepass(coeffs, z);
        bool usable = true;
        for (const auto& zi : z) usable = usable && std::isfinite(zi.real()) && std::isfinite(zi.imag());
        if (usable)
            for (std::size_t i = 0; i < z.size(); ++i) start[i] = ComplexAP::from_double(z[i].real(), z[i].imag(), cfg.bits);
    }

    RootSet rs;
    rs.n = n;
    rs.roots = aberth(FamilyEvaluator(p), std::move(start), cfg, rs.sweeps, rs.precision_used);
    return rs;
}

RootSet certify(const ExactPolynomial& p, RootSet rs, const PrecisionConfig& cfg) {
    const int n = rs.n;
    const Bits base = std::max<Bits>(rs.precision_used, 64);
    const Bits ceiling = std::max<Bits>(cfg.max_bits, 2 * base);
    FamilyEvaluator evaluate(p);
    rs.residuals.clear();
    rs.inclusion_radii.clear();
    rs.overlaps.clear();
    for (int j = 0; j < n; ++j) {
        Bits bits = 2 * base;
        HornerValueDerivative ev = evaluate(rs.roots[j], bits);
        // Tighten until the residual is resolved, or the derivative at least separates from its error.
        while ((!(ev.value_error < abs(ev.value)) || !(ev.derivative_error < abs(ev.derivative))) && bits < ceiling) {
            bits = std::min(ceiling, bits + base);
            ev = evaluate(rs.roots[j], bits);
        }
        const BigFloat dmag = abs(ev.derivative).at(kBoundBits);
        if (!(ev.derivative_error < dmag))
            throw CertificationFailed("|p'| not separated from its error at root " + std::to_string(j) +
                                      " (possible multiple root)");
        const BigFloat vmag = abs(ev.value).at(kBoundBits);
        rs.residuals.push_back(vmag);
        rs.inclusion_radii.push_back(BigFloat(static_cast<long>(n), kBoundBits) * (vmag + ev.value_error) /
                                     (dmag - ev.derivative_error));
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const BigFloat dist = abs(rs.roots[i] - rs.roots[j]).at(kBoundBits);
            if (!(rs.inclusion_radii[i] + rs.inclusion_radii[j] < dist)) rs.overlaps.emplace_back(i, j);
        }
    return rs;
}

RootSet find_certified_roots(const ExactPolynomial& p, const PrecisionConfig& cfg) {
    return certify(p, find_roots(p, cfg), cfg);
}

double match_distance(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    std::vector<bool> used(b.size(), false);
    double worst = 0.0;
    for (const auto& x : a) {
        std::size_t best = b.size();
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!used[j] && std::abs(x - b[j]) < best_d) {
                best_d = std::abs(x - b[j]);
                best = j;
            }
        used[best] = true;
        worst = std::max(worst, best_d);
    }
    return worst;
}

void write_roots_csv(std::ostream& out, std::span<const RootSet> sets) {
    out << "n,j,re,im,residual,inclusion_radius\n";
    for (const auto& rs : sets)
        for (int j = 0; j < rs.n; ++j) {
            out << rs.n << ',' << j << ',' << rs.roots[j].re().to_string(40) << ',' << rs.roots[j].im().to_string(40)
                << ',' << (j < static_cast<int>(rs.residuals.size()) ? rs.residuals[j].to_string(10) : "nan") << ','
                << (j < static_cast<int>(rs.inclusion_radii.size()) ? rs.inclusion_radii[j].to_string(10) : "nan")
                << '\n';
        }
}

namespace detail {

std::vector<ComplexAP> cubic_roots(const std::array<ComplexAP, 4>& coeffs, const PrecisionConfig& cfg) {
    cfg.validate();
    if (coeffs[3].is_zero()) throw DomainError("cubic with vanishing leading coefficient");
    auto evaluate = [&coeffs](const ComplexAP& z, Bits bits) {
        const ComplexAP x = z.at(bits);
        const BigFloat absz = abs(x).at(kBoundBits);
        ComplexAP v(bits), d(bits);
        BigFloat mu(kBoundBits), absum(kBoundBits), absderiv(kBoundBits);
        for (int k = 3; k >= 0; --k) {
            d *= x;
            d += v;
            v *= x;
            v += coeffs[static_cast<std::size_t>(k)].at(bits);
            mu = mu * absz + abs(v).at(kBoundBits);
            absderiv = absderiv * absz + absum;
            absum = absum * absz + abs(coeffs[static_cast<std::size_t>(k)]).at(kBoundBits);
        }
        const BigFloat u = unit_roundoff(bits);
        return HornerValueDerivative{std::move(v), std::move(d), u * (6 * mu + absum), u * 24 * absderiv};
    };

    // Start on a circle about the centroid -c2/(3 c3) scaled by the Cauchy-type radius.
    const Bits bits = cfg.bits;
    const ComplexAP centroid = -(coeffs[2] / (3 * coeffs[3])).at(bits);
    BigFloat radius(1L, bits);
    for (int k = 0; k < 3; ++k) {
        const BigFloat r = pow(abs(coeffs[static_cast<std::size_t>(k)] / coeffs[3]), BigFloat(mpq_class(1, 3 - k), bits));
        radius = max(radius, r);
    }
    const BigFloat offset = (sqrt(BigFloat(5L, bits)) - 1) / 2;
    std::vector<ComplexAP> start;
    for (int k = 0; k < 3; ++k) start.push_back(centroid + exp_i(2 * pi(bits) * k / 3 + offset) * radius);
    int sweeps = 0;
    Bits used = 0;
    return aberth(evaluate, std::move(start), cfg, sweeps, used);
}

} // namespace detail

} // namespace hypzero
