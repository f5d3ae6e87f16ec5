#include "hypzero/bigfloat.hpp"

#include <stdexcept>
#include <vector>

namespace hypzero {

BigFloat::BigFloat(std::string_view decimal, Bits bits) {
    mpfr_init2(v_, bits);
    const std::string text(decimal);
    char* end = nullptr;
    if (!text.empty()) mpfr_strtofr(v_, text.c_str(), &end, 10, MPFR_RNDN);
    if (text.empty() || end != text.c_str() + text.size()) {
        mpfr_clear(v_);
        throw std::invalid_argument("not a decimal number: '" + text + "'");
    }
}

std::string BigFloat::to_string(int significant) const {
    if (significant < 1) significant = 1;
    const int len = mpfr_snprintf(nullptr, 0, "%.*Re", significant - 1, v_);
    std::vector<char> buf(static_cast<std::size_t>(len) + 1);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Re", significant - 1, v_);
    return std::string(buf.data(), static_cast<std::size_t>(len));
}

namespace {

template <typename F>
BigFloat unary(const BigFloat& x, F f) {
    BigFloat r(x.precision());
    f(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

} // namespace

BigFloat sqrt(const BigFloat& x) { return unary(x, mpfr_sqrt); }
BigFloat abs(const BigFloat& x) { return unary(x, mpfr_abs); }
BigFloat exp(const BigFloat& x) { return unary(x, mpfr_exp); }
BigFloat log(const BigFloat& x) { return unary(x, mpfr_log); }
BigFloat log2(const BigFloat& x) { return unary(x, mpfr_log2); }
BigFloat sin(const BigFloat& x) { return unary(x, mpfr_sin); }
BigFloat cos(const BigFloat& x) { return unary(x, mpfr_cos); }

BigFloat pow(const BigFloat& x, const BigFloat& y) {
    BigFloat r(std::max(x.precision(), y.precision()));
    mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}

BigFloat pow(const BigFloat& x, long y) {
    BigFloat r(x.precision());
    mpfr_pow_si(r.raw(), x.raw(), y, MPFR_RNDN);
    return r;
}

BigFloat atan2(const BigFloat& y, const BigFloat& x) {
    BigFloat r(std::max(x.precision(), y.precision()));
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}

BigFloat hypot(const BigFloat& x, const BigFloat& y) {
    BigFloat r(std::max(x.precision(), y.precision()));
    mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}

BigFloat ldexp(const BigFloat& x, long e) {
    BigFloat r(x.precision());
    mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
    return r;
}

BigFloat pi(Bits bits) {
    BigFloat r(bits);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

BigFloat pow2(long e, Bits bits) {
    BigFloat r(1L, bits);
    mpfr_mul_2si(r.raw(), r.raw(), e, MPFR_RNDN);
    return r;
}

} // namespace hypzero
