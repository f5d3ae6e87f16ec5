#pragma once

// Value-semantic RAII wrapper over an MPFR floating-point number.
//
// Every BigFloat carries its own precision. Binary operators produce a result
// at the larger of the two operand precisions; compound assignment keeps the
// precision of the left-hand side. All rounding is MPFR_RNDN.

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <concepts>
#include <string>
#include <string_view>
#include <utility>

namespace hypzero {

using Bits = mpfr_prec_t;

class BigFloat {
public:
    explicit BigFloat(Bits bits = 128) {
        mpfr_init2(v_, bits);
        mpfr_set_zero(v_, 1);
    }
    BigFloat(long value, Bits bits) {
        mpfr_init2(v_, bits);
        mpfr_set_si(v_, value, MPFR_RNDN);
    }
    BigFloat(int value, Bits bits) : BigFloat(static_cast<long>(value), bits) {}
    BigFloat(double value, Bits bits) {
        mpfr_init2(v_, bits);
        mpfr_set_d(v_, value, MPFR_RNDN);
    }
    BigFloat(const mpq_class& value, Bits bits) {
        mpfr_init2(v_, bits);
        mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
    }
    BigFloat(const mpz_class& value, Bits bits) {
        mpfr_init2(v_, bits);
        mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
    }
    /// Parses a decimal literal ("1.25e-3"); throws std::invalid_argument on garbage.
    BigFloat(std::string_view decimal, Bits bits);

    BigFloat(const BigFloat& other) {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& other) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, other.v_);
    }
    BigFloat& operator=(const BigFloat& other) {
        if (this != &other) {
            if (mpfr_get_prec(v_) != mpfr_get_prec(other.v_)) mpfr_set_prec(v_, mpfr_get_prec(other.v_));
            mpfr_set(v_, other.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& other) noexcept {
        mpfr_swap(v_, other.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    Bits precision() const noexcept { return mpfr_get_prec(v_); }

    /// Copy of this value rounded (or exactly widened) to `bits`.
    BigFloat at(Bits bits) const {
        BigFloat r(bits);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    mpfr_ptr raw() noexcept { return v_; }
    mpfr_srcptr raw() const noexcept { return v_; }

    double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }
    /// Scientific notation with `significant` digits, e.g. "1.4000000000e+00".
    std::string to_string(int significant = 40) const;

    int sign() const noexcept { return mpfr_sgn(v_); }
    bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
    /// Binary exponent e with 0.5 <= |x| / 2^e < 1; meaningless for zero.
    long exponent() const noexcept { return mpfr_get_exp(v_); }

    BigFloat operator-() const {
        BigFloat r(precision());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    BigFloat& operator+=(const BigFloat& b) { mpfr_add(v_, v_, b.v_, MPFR_RNDN); return *this; }
    BigFloat& operator-=(const BigFloat& b) { mpfr_sub(v_, v_, b.v_, MPFR_RNDN); return *this; }
    BigFloat& operator*=(const BigFloat& b) { mpfr_mul(v_, v_, b.v_, MPFR_RNDN); return *this; }
    BigFloat& operator/=(const BigFloat& b) { mpfr_div(v_, v_, b.v_, MPFR_RNDN); return *this; }
    template <std::integral I>
    BigFloat& operator+=(I b) { mpfr_add_si(v_, v_, static_cast<long>(b), MPFR_RNDN); return *this; }
    template <std::integral I>
    BigFloat& operator-=(I b) { mpfr_sub_si(v_, v_, static_cast<long>(b), MPFR_RNDN); return *this; }
    template <std::integral I>
    BigFloat& operator*=(I b) { mpfr_mul_si(v_, v_, static_cast<long>(b), MPFR_RNDN); return *this; }
    template <std::integral I>
    BigFloat& operator/=(I b) { mpfr_div_si(v_, v_, static_cast<long>(b), MPFR_RNDN); return *this; }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.precision(), b.precision()));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.precision(), b.precision()));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.precision(), b.precision()));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.precision(), b.precision()));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    // Integer scalars only: a double would otherwise narrow silently.
    template <std::integral I>
    friend BigFloat operator+(BigFloat a, I b) { return a += static_cast<long>(b); }
    template <std::integral I>
    friend BigFloat operator-(BigFloat a, I b) { return a -= static_cast<long>(b); }
    template <std::integral I>
    friend BigFloat operator*(BigFloat a, I b) { return a *= static_cast<long>(b); }
    template <std::integral I>
    friend BigFloat operator/(BigFloat a, I b) { return a /= static_cast<long>(b); }
    template <std::integral I>
    friend BigFloat operator+(I a, BigFloat b) { return b += static_cast<long>(a); }
    template <std::integral I>
    friend BigFloat operator*(I a, BigFloat b) { return b *= static_cast<long>(a); }
    template <std::integral I>
    friend BigFloat operator-(I a, const BigFloat& b) {
        BigFloat r(b.precision());
        mpfr_si_sub(r.v_, static_cast<long>(a), b.v_, MPFR_RNDN);
        return r;
    }
    template <std::integral I>
    friend BigFloat operator/(I a, const BigFloat& b) {
        BigFloat r(b.precision());
        mpfr_si_div(r.v_, static_cast<long>(a), b.v_, MPFR_RNDN);
        return r;
    }

    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
        if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
        const int c = mpfr_cmp(a.v_, b.v_);
        return c < 0 ? std::partial_ordering::less
                     : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
    }
    friend bool operator==(const BigFloat& a, double b) { return mpfr_cmp_d(a.v_, b) == 0; }
    friend std::partial_ordering operator<=>(const BigFloat& a, double b) {
        if (mpfr_nan_p(a.v_)) return std::partial_ordering::unordered;
        const int c = mpfr_cmp_d(a.v_, b);
        return c < 0 ? std::partial_ordering::less
                     : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
    }

private:
    mpfr_t v_;
};

BigFloat sqrt(const BigFloat& x);
BigFloat abs(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat log2(const BigFloat& x);
BigFloat pow(const BigFloat& x, const BigFloat& y);
BigFloat pow(const BigFloat& x, long y);
BigFloat atan2(const BigFloat& y, const BigFloat& x);
BigFloat sin(const BigFloat& x);
BigFloat cos(const BigFloat& x);
BigFloat hypot(const BigFloat& x, const BigFloat& y);
/// x * 2^e, exact.
BigFloat ldexp(const BigFloat& x, long e);
BigFloat pi(Bits bits);
/// 2^e at the given precision.
BigFloat pow2(long e, Bits bits);

inline const BigFloat& max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }
inline const BigFloat& min(const BigFloat& a, const BigFloat& b) { return b < a ? b : a; }

} // namespace hypzero
