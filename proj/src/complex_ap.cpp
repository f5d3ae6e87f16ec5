#include "hypzero/complex_ap.hpp"

namespace hypzero {

ComplexAP& ComplexAP::operator*=(const ComplexAP& b) {
    const Bits bits = std::max(precision(), b.precision());
    BigFloat ac(bits), bd(bits), ad(bits), bc(bits);
    mpfr_mul(ac.raw(), re_.raw(), b.re_.raw(), MPFR_RNDN);
    mpfr_mul(bd.raw(), im_.raw(), b.im_.raw(), MPFR_RNDN);
    mpfr_mul(ad.raw(), re_.raw(), b.im_.raw(), MPFR_RNDN);
    mpfr_mul(bc.raw(), im_.raw(), b.re_.raw(), MPFR_RNDN);
    if (re_.precision() != bits) re_ = BigFloat(bits);
    if (im_.precision() != bits) im_ = BigFloat(bits);
    mpfr_sub(re_.raw(), ac.raw(), bd.raw(), MPFR_RNDN);
    mpfr_add(im_.raw(), ad.raw(), bc.raw(), MPFR_RNDN);
    return *this;
}

ComplexAP operator/(const ComplexAP& a, const ComplexAP& b) {
    // Smith's algorithm avoids overflow in |b|^2 and keeps accuracy when |c| and |d| differ widely.
    const BigFloat& c = b.re();
    const BigFloat& d = b.im();
    if (abs(c) >= abs(d)) {
        const BigFloat ratio = d / c;
        const BigFloat denom = c + d * ratio;
        return {(a.re() + a.im() * ratio) / denom, (a.im() - a.re() * ratio) / denom};
    }
    const BigFloat ratio = c / d;
    const BigFloat denom = c * ratio + d;
    return {(a.re() * ratio + a.im()) / denom, (a.im() * ratio - a.re()) / denom};
}

ComplexAP conj(const ComplexAP& z) { return {z.re(), -z.im()}; }

BigFloat norm(const ComplexAP& z) { return z.re() * z.re() + z.im() * z.im(); }

BigFloat abs(const ComplexAP& z) { return hypot(z.re(), z.im()); }

BigFloat arg(const ComplexAP& z) { return atan2(z.im(), z.re()); }

ComplexAP sqrt(const ComplexAP& z) {
    const Bits bits = z.precision();
    if (z.is_zero()) return ComplexAP(bits);
    const BigFloat r = abs(z);
    const BigFloat& x = z.re();
    const BigFloat& y = z.im();
    if (x.sign() >= 0) {
        BigFloat a = sqrt((r + x) / 2);
        BigFloat b = y / (2 * a);
        return {std::move(a), std::move(b)};
    }
    // Left half-plane: compute the imaginary part first to avoid cancellation in r + x.
    // y = +0 and y = -0 both select the upper-half-plane limit.
    BigFloat b = sqrt((r - x) / 2);
    if (y.sign() < 0) b = -b;
    BigFloat a = y / (2 * b);
    return {std::move(a), std::move(b)};
}

ComplexAP pow(const ComplexAP& z, unsigned long k) {
    ComplexAP result = ComplexAP::from_long(1, z.precision());
    ComplexAP base = z;
    while (k != 0) {
        if (k & 1UL) result *= base;
        k >>= 1;
        if (k != 0) base *= base;
    }
    return result;
}

ComplexAP exp_i(const BigFloat& phase) { return {cos(phase), sin(phase)}; }

} // namespace hypzero
