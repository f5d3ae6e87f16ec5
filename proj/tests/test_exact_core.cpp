#include <doctest.h>

#include "hypzero/errors.hpp"
#include "hypzero/exact_core.hpp"

#include <sstream>

using namespace hypzero;

namespace {

BigRational rising(const BigRational& a, int k) {
    BigRational p = 1;
    for (int i = 0; i < k; ++i) p *= a + i;
    return p;
}

mpz_class fact(unsigned long k) {
    mpz_class f = 1;
    for (unsigned long i = 2; i <= k; ++i) f *= i;
    return f;
}

// Generalized binomial C(a, k) = a (a-1) ... (a-k+1) / k!.
BigRational binom(const BigRational& a, int k) {
    BigRational p = 1;
    for (int i = 0; i < k; ++i) p *= a - i;
    return p / BigRational(fact(static_cast<unsigned long>(k)));
}

std::vector<BigRational> poly_mul(const std::vector<BigRational>& a, const std::vector<BigRational>& b) {
    std::vector<BigRational> c(a.size() + b.size() - 1, BigRational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

// Coefficients in z of P_n^(alpha,beta)(1 - 2z) from the explicit sum
// sum_s C(n+alpha, n-s) C(n+beta, s) (-z)^s (1-z)^(n-s).
std::vector<BigRational> jacobi_explicit(int n, const BigRational& alpha, const BigRational& beta) {
    std::vector<BigRational> total(static_cast<std::size_t>(n + 1), BigRational(0));
    for (int s = 0; s <= n; ++s) {
        std::vector<BigRational> term{binom(n + alpha, n - s) * binom(n + beta, s)};
        for (int k = 0; k < s; ++k) term = poly_mul(term, {BigRational(0), BigRational(-1)});
        for (int k = 0; k < n - s; ++k) term = poly_mul(term, {BigRational(1), BigRational(-1)});
        for (std::size_t m = 0; m < term.size(); ++m) total[m] += term[m];
    }
    return total;
}

} // namespace

TEST_CASE("small-n coefficients") {
    const ExactPolynomial p1 = build_polynomial(1);
    REQUIRE(p1.coefficients.size() == 2);
    CHECK(p1.coefficients[0] == 1);
    CHECK(p1.coefficients[1] == BigRational(-1, 2));

    const ExactPolynomial p2 = build_polynomial(2);
    REQUIRE(p2.degree == 2);
    CHECK(p2.coefficients[1] == BigRational(-6, 5));
    CHECK(p2.coefficients[2] == BigRational(3, 7));

    CHECK_THROWS_AS(build_polynomial(0), DomainError);
}

TEST_CASE("coefficients against brute-force Pochhammer products") {
    for (int n = 1; n <= 40; ++n) {
        const ExactPolynomial p = build_polynomial(n);
        const BigRational b(n + 1, 2), c(n + 3, 2);
        for (int m = 0; m <= n; ++m) {
            BigRational bb = b, cc = c;
            bb.canonicalize();
            cc.canonicalize();
            const BigRational expected = rising(BigRational(-n), m) * rising(bb, m) /
                                         (rising(cc, m) * BigRational(fact(static_cast<unsigned long>(m))));
            CHECK(p.coefficients[static_cast<std::size_t>(m)] == expected);
        }
    }
}

TEST_CASE("pochhammer") {
    CHECK(pochhammer(BigRational(1, 2), 0) == 1);
    CHECK(pochhammer(BigRational(1, 2), 3) == BigRational(15, 8));
    CHECK(pochhammer(BigRational(-3), 4) == 0);
}

TEST_CASE("constant-to-leading ratio") {
    for (int n = 1; n <= 60; ++n) {
        const ExactPolynomial p = build_polynomial(n);
        BigRational expected(3 * n + 1, n + 1);
        expected.canonicalize();
        CHECK(abs(p.coefficients.front() / p.coefficients.back()) == expected);
    }
}

TEST_CASE("Enestrom-Kakeya chain") {
    const EkScaling one = ek_scaled_coefficients(build_polynomial(1));
    CHECK_FALSE(one.strictly_increasing);
    CHECK(one.scaled[0] == one.scaled[1]);
    for (int n = 2; n <= 30; ++n) CHECK(ek_scaled_coefficients(build_polynomial(n)).strictly_increasing);
}

TEST_CASE("Gamma at half-integers from factorials") {
    for (unsigned long k = 1; k <= 12; ++k) {
        const SqrtPiMultiple g = gamma_half_integer(2 * k);
        CHECK_FALSE(g.has_sqrt_pi);
        CHECK(g.rational == BigRational(fact(k - 1)));
    }
    // Gamma(x + 1) = x Gamma(x) from Gamma(1/2) = sqrt(pi).
    BigRational running = 1;
    for (unsigned long m = 0; m <= 12; ++m) {
        const SqrtPiMultiple g = gamma_half_integer(2 * m + 1);
        CHECK(g.has_sqrt_pi);
        CHECK(g.rational == running);
        running *= BigRational(2 * m + 1, 2);
        running.canonicalize();
    }
    CHECK_THROWS_AS(gamma_half_integer(0), DomainError);
}

TEST_CASE("Gamma ratio as a reciprocal Pochhammer") {
    // Gamma(a) / Gamma(a + n + 1) = 1 / (a)_{n+1} with a = (n+1)/2.
    for (int n = 1; n <= 50; ++n) {
        BigRational a(n + 1, 2);
        a.canonicalize();
        const BigRational expected = BigRational(fact(static_cast<unsigned long>(n))) / rising(a, n + 1);
        CHECK(gamma_ratio_exact(n).value == expected);
    }
    // n = 1: int_0^1 t (1 - t^2) dt = 1/4 = ratio / 2
    CHECK(gamma_ratio_exact(1).value == BigRational(1, 2));
}

TEST_CASE("Jacobi correspondence matches the explicit Jacobi sum") {
    for (int n = 1; n <= 14; ++n) {
        const JacobiCorrespondence jc = jacobi_correspondence(n);
        BigRational alpha(n + 1, 2);
        alpha.canonicalize();
        CHECK(jc.alpha == alpha);
        CHECK(jc.beta == -(n + 1));
        CHECK(jc.argument_map.offset == 1);
        CHECK(jc.argument_map.scale == -2);

        const std::vector<BigRational> oracle = jacobi_explicit(n, jc.alpha, jc.beta);
        const ExactPolynomial p = build_polynomial(n);
        const std::vector<BigRational> side = jacobi_side_coefficients(jc);
        for (int m = 0; m <= n; ++m) {
            const auto k = static_cast<std::size_t>(m);
            CHECK(oracle[k] == jc.leading_factor * p.coefficients[k]);
            CHECK(side[k] == p.coefficients[k]);
        }
    }
}

TEST_CASE("coefficient CSV") {
    std::vector<ExactPolynomial> polys{build_polynomial(2)};
    std::ostringstream os;
    write_coefficients_csv(os, polys);
    CHECK(os.str() == "n,m,numerator,denominator\n2,0,1,1\n2,1,-6,5\n2,2,3,7\n");
}
