#pragma once

#include "hypzero/bigfloat.hpp"

#include <complex>

namespace hypzero {

/// Complex number with MPFR real and imaginary parts at a common precision.
class ComplexAP {
public:
    explicit ComplexAP(Bits bits = 128) : re_(bits), im_(bits) {}
    ComplexAP(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}
    explicit ComplexAP(BigFloat re) : re_(std::move(re)), im_(re_.precision()) {}

    static ComplexAP from_double(double re, double im, Bits bits) {
        return {BigFloat(re, bits), BigFloat(im, bits)};
    }
    static ComplexAP from_rational(const mpq_class& re, const mpq_class& im, Bits bits) {
        return {BigFloat(re, bits), BigFloat(im, bits)};
    }
    static ComplexAP from_long(long re, Bits bits) { return ComplexAP(BigFloat(re, bits)); }

    const BigFloat& re() const noexcept { return re_; }
    const BigFloat& im() const noexcept { return im_; }
    BigFloat& re() noexcept { return re_; }
    BigFloat& im() noexcept { return im_; }

    Bits precision() const noexcept { return std::max(re_.precision(), im_.precision()); }
    ComplexAP at(Bits bits) const { return {re_.at(bits), im_.at(bits)}; }

    std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }
    bool is_zero() const noexcept { return re_.is_zero() && im_.is_zero(); }
    bool is_finite() const noexcept { return re_.is_finite() && im_.is_finite(); }

    ComplexAP operator-() const { return {-re_, -im_}; }

    ComplexAP& operator+=(const ComplexAP& b) { re_ += b.re_; im_ += b.im_; return *this; }
    ComplexAP& operator-=(const ComplexAP& b) { re_ -= b.re_; im_ -= b.im_; return *this; }
    ComplexAP& operator*=(const ComplexAP& b);
    ComplexAP& operator/=(const ComplexAP& b) { return *this = *this / b; }
    ComplexAP& operator*=(const BigFloat& b) { re_ *= b; im_ *= b; return *this; }
    ComplexAP& operator/=(const BigFloat& b) { re_ /= b; im_ /= b; return *this; }
    ComplexAP& operator+=(const BigFloat& b) { re_ += b; return *this; }
    ComplexAP& operator-=(const BigFloat& b) { re_ -= b; return *this; }
    template <std::integral I>
    ComplexAP& operator*=(I b) { re_ *= b; im_ *= b; return *this; }
    template <std::integral I>
    ComplexAP& operator+=(I b) { re_ += b; return *this; }

    friend ComplexAP operator+(ComplexAP a, const ComplexAP& b) { return a += b; }
    friend ComplexAP operator-(ComplexAP a, const ComplexAP& b) { return a -= b; }
    friend ComplexAP operator*(const ComplexAP& a, const ComplexAP& b) {
        ComplexAP r = a;
        r *= b;
        return r;
    }
    friend ComplexAP operator/(const ComplexAP& a, const ComplexAP& b);
    friend ComplexAP operator*(ComplexAP a, const BigFloat& b) { return a *= b; }
    friend ComplexAP operator*(const BigFloat& b, ComplexAP a) { return a *= b; }
    friend ComplexAP operator/(ComplexAP a, const BigFloat& b) { return a /= b; }
    friend ComplexAP operator+(ComplexAP a, const BigFloat& b) { return a += b; }
    friend ComplexAP operator-(ComplexAP a, const BigFloat& b) { return a -= b; }
    template <std::integral I>
    friend ComplexAP operator*(ComplexAP a, I b) { return a *= b; }
    template <std::integral I>
    friend ComplexAP operator*(I b, ComplexAP a) { return a *= b; }
    template <std::integral I>
    friend ComplexAP operator+(ComplexAP a, I b) { return a += b; }
    template <std::integral I>
    friend ComplexAP operator-(I a, const ComplexAP& b) { return {a - b.re_, -b.im_}; }

private:
    BigFloat re_;
    BigFloat im_;
};

ComplexAP conj(const ComplexAP& z);
/// |z|^2
BigFloat norm(const ComplexAP& z);
BigFloat abs(const ComplexAP& z);
/// Principal argument in (-pi, pi].
BigFloat arg(const ComplexAP& z);
/// Principal square root, holomorphic off the negative real axis with sqrt(1) = 1.
/// On the cut the limit from the upper half-plane is taken: sqrt(-1) = i.
ComplexAP sqrt(const ComplexAP& z);
/// z^k by binary powering.
ComplexAP pow(const ComplexAP& z, unsigned long k);
ComplexAP exp_i(const BigFloat& phase);

} // namespace hypzero
