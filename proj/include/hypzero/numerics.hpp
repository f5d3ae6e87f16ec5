#pragma once

#include "hypzero/bigfloat.hpp"
#include "hypzero/complex_ap.hpp"
#include "hypzero/exact_core.hpp"

#include <array>
#include <vector>

namespace hypzero {

struct PrecisionConfig {
    Bits bits = 128;
    int escalation_factor = 2;
    Bits max_bits = 4096;

    /// Throws std::invalid_argument unless bits >= 64, factor >= 2, max_bits >= bits.
    void validate() const;
    /// Same config with bits multiplied by the escalation factor, capped at max_bits.
    PrecisionConfig escalated() const;
    bool exhausted() const noexcept { return bits >= max_bits; }
};

/// Unit roundoff 2^-bits as a 53-bit BigFloat (no exponent underflow at high precision).
BigFloat unit_roundoff(Bits bits);

ComplexAP principal_sqrt(const ComplexAP& z);

struct HornerValue {
    ComplexAP value;
    /// First-order running bound on |computed - exact|.
    BigFloat error_bound;
    Bits bits = 0;
};

struct HornerValueDerivative {
    ComplexAP value;
    ComplexAP derivative;
    BigFloat value_error;
    BigFloat derivative_error;
};

/// The family polynomial with coefficients rounded once to a working precision.
class RoundedPolynomial {
public:
    RoundedPolynomial(const ExactPolynomial& p, Bits bits);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    Bits bits() const noexcept { return bits_; }
    const std::vector<BigFloat>& coefficients() const noexcept { return coeffs_; }

    HornerValue evaluate(const ComplexAP& z) const;
    HornerValueDerivative evaluate_with_derivative(const ComplexAP& z) const;

private:
    std::vector<BigFloat> coeffs_;
    Bits bits_;
};

/// Horner evaluation at cfg.bits with a running rounding-error bound.
HornerValue eval_horner(const ExactPolynomial& p, const ComplexAP& z, const PrecisionConfig& cfg);

/// Escalates precision until error_bound < |value|. Throws PrecisionExhausted at cfg.max_bits:
/// an exact zero of p can never be resolved this way.
HornerValue eval_horner_resolved(const ExactPolynomial& p, const ComplexAP& z, const PrecisionConfig& cfg);

/// f_z(t) = t (1 - z t^2)
ComplexAP f_eval(const ComplexAP& z, const ComplexAP& t);
/// 1 - 3 z t^2, so that f_z'(t) = fprime_factor(z, t).
ComplexAP fprime_factor(const ComplexAP& z, const ComplexAP& t);

struct StructuralPoints {
    /// {0, 1/sqrt(z), -1/sqrt(z)}
    std::array<ComplexAP, 3> zeros;
    /// {1/sqrt(3z), -1/sqrt(3z)}
    std::array<ComplexAP, 2> saddles;
};

/// Throws DomainError at z = 0.
StructuralPoints structural_points(const ComplexAP& z);

} // namespace hypzero
