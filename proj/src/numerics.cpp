#include "hypzero/numerics.hpp"

#include "hypzero/errors.hpp"

#include <stdexcept>
#include <string>

namespace hypzero {

namespace {

constexpr Bits kBoundBits = 53;

} // namespace

void PrecisionConfig::validate() const {
    if (bits < 64) throw std::invalid_argument("precision must be at least 64 bits");
    if (escalation_factor < 2) throw std::invalid_argument("escalation factor must be at least 2");
    if (max_bits < bits) throw std::invalid_argument("max_bits must be >= bits");
}

PrecisionConfig PrecisionConfig::escalated() const {
    PrecisionConfig next = *this;
    next.bits = std::min(max_bits, bits * escalation_factor);
    return next;
}

BigFloat unit_roundoff(Bits bits) { return pow2(-static_cast<long>(bits), kBoundBits); }

ComplexAP principal_sqrt(const ComplexAP& z) { return sqrt(z); }

RoundedPolynomial::RoundedPolynomial(const ExactPolynomial& p, Bits bits) : bits_(bits) {
    coeffs_.reserve(p.coefficients.size());
    for (const auto& c : p.coefficients) coeffs_.emplace_back(c, bits);
}

HornerValue RoundedPolynomial::evaluate(const ComplexAP& z) const {
    const ComplexAP x = z.at(bits_);
    const BigFloat absz = abs(x).at(kBoundBits);

    ComplexAP b(bits_);
    BigFloat mu(kBoundBits), absum(kBoundBits);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        b *= x;
        b.re() += *it;
        mu *= absz;
        mu += abs(b).at(kBoundBits);
        absum *= absz;
        absum += abs(*it).at(kBoundBits);
    }
    const BigFloat u = unit_roundoff(bits_);
    return {std::move(b), u * (6 * mu + absum), bits_};
}

HornerValueDerivative RoundedPolynomial::evaluate_with_derivative(const ComplexAP& z) const {
    const ComplexAP x = z.at(bits_);
    const BigFloat absz = abs(x).at(kBoundBits);

    ComplexAP b(bits_), d(bits_);
    BigFloat mu(kBoundBits), absum(kBoundBits), absderiv(kBoundBits);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        d *= x;
        d += b;
        b *= x;
        b.re() += *it;
        mu *= absz;
        mu += abs(b).at(kBoundBits);
        absderiv *= absz;
        absderiv += absum;
        absum *= absz;
        absum += abs(*it).at(kBoundBits);
    }
    const BigFloat u = unit_roundoff(bits_);
    const long n = degree();
    return {std::move(b), std::move(d), u * (6 * mu + absum), u * (6 * (n + 1)) * absderiv};
}

HornerValue eval_horner(const ExactPolynomial& p, const ComplexAP& z, const PrecisionConfig& cfg) {
    cfg.validate();
    return RoundedPolynomial(p, cfg.bits).evaluate(z);
}

HornerValue eval_horner_resolved(const ExactPolynomial& p, const ComplexAP& z, const PrecisionConfig& cfg) {
    cfg.validate();
    PrecisionConfig current = cfg;
    std::vector<std::string> trace;
    while (true) {
        HornerValue v = RoundedPolynomial(p, current.bits).evaluate(z);
        if (v.error_bound < abs(v.value)) return v;
        trace.push_back(std::to_string(current.bits) + " bits: |value| " + abs(v.value).to_string(6) +
                        " <= bound " + v.error_bound.to_string(6));
        if (current.exhausted()) throw PrecisionExhausted("precision exhausted in Horner evaluation", trace);
        current = current.escalated();
    }
}

ComplexAP f_eval(const ComplexAP& z, const ComplexAP& t) {
    return t * (1 - z * t * t);
}

ComplexAP fprime_factor(const ComplexAP& z, const ComplexAP& t) {
    return 1 - 3 * (z * t * t);
}

StructuralPoints structural_points(const ComplexAP& z) {
    if (z.is_zero()) throw DomainError("structural points undefined at z = 0");
    const Bits bits = z.precision();
    const ComplexAP one = ComplexAP::from_long(1, bits);
    const ComplexAP inv_root = one / principal_sqrt(z);
    const ComplexAP inv_root3 = one / principal_sqrt(3 * z);
    return {{ComplexAP(bits), inv_root, -inv_root}, {inv_root3, -inv_root3}};
}

} // namespace hypzero
