#include "hypzero/exact_core.hpp"

#include "hypzero/errors.hpp"

#include <ostream>
#include <string>

namespace hypzero {

BigRational make_rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    BigRational q(num, den);
    q.canonicalize();
    return q;
}

BigRational pochhammer(const BigRational& a, unsigned k) {
    BigRational result = 1;
    BigRational factor = a;
    for (unsigned i = 0; i < k; ++i) {
        result *= factor;
        factor += 1;
    }
    return result;
}

ExactPolynomial build_polynomial(int n) {
    if (n < 1) throw DomainError("polynomial degree must be >= 1, got " + std::to_string(n));
    const BigRational a = -n;
    const BigRational b = make_rational(n + 1, 2);
    const BigRational c = make_rational(n + 3, 2);

    ExactPolynomial p;
    p.degree = n;
    p.coefficients.reserve(static_cast<std::size_t>(n) + 1);
    p.coefficients.emplace_back(1);
    for (int m = 1; m <= n; ++m) {
        // c_m = c_{m-1} (a+m-1)(b+m-1) / ((c+m-1) m)
        BigRational next = p.coefficients.back();
        next *= (a + (m - 1)) * (b + (m - 1));
        next /= (c + (m - 1)) * m;
        p.coefficients.push_back(std::move(next));
    }
    return p;
}

EkScaling ek_scaled_coefficients(const ExactPolynomial& p) {
    EkScaling out;
    out.scaled.reserve(p.coefficients.size());
    BigRational scale = 1;
    const BigRational radius = p.degree + 1;
    for (const auto& c : p.coefficients) {
        out.scaled.push_back(abs(c) * scale);
        scale *= radius;
    }
    out.strictly_increasing = !out.scaled.empty() && out.scaled.front() > 0;
    for (std::size_t m = 1; m < out.scaled.size() && out.strictly_increasing; ++m)
        out.strictly_increasing = out.scaled[m - 1] < out.scaled[m];
    return out;
}

namespace {

mpz_class factorial(unsigned long k) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), k);
    return r;
}

} // namespace

SqrtPiMultiple gamma_half_integer(unsigned long twice_argument) {
    if (twice_argument == 0) throw DomainError("Gamma has a pole at 0");
    if (twice_argument % 2 == 0) return {BigRational(factorial(twice_argument / 2 - 1)), false};
    // Gamma(m + 1/2) = (2m)! / (4^m m!) sqrt(pi)
    const unsigned long m = twice_argument / 2;
    mpz_class four_m;
    mpz_ui_pow_ui(four_m.get_mpz_t(), 4, m);
    return {make_rational(factorial(2 * m), four_m * factorial(m)), true};
}

GammaRatioExact gamma_ratio_exact(int n) {
    if (n < 1) throw DomainError("gamma ratio needs n >= 1");
    const auto un = static_cast<unsigned long>(n);
    const SqrtPiMultiple num = gamma_half_integer(un + 1);
    const SqrtPiMultiple den = gamma_half_integer(3 * un + 3);
    // (n+1) and (3n+3) share parity, so the sqrt(pi) factors cancel.
    if (num.has_sqrt_pi != den.has_sqrt_pi) throw DomainError("sqrt(pi) parity mismatch");
    GammaRatioExact g;
    g.n = n;
    g.value = num.rational * BigRational(factorial(un)) / den.rational;
    return g;
}

JacobiCorrespondence jacobi_correspondence(int n) {
    if (n < 1) throw DomainError("Jacobi correspondence needs n >= 1");
    JacobiCorrespondence jc;
    jc.n = n;
    // 1 + alpha = (n+3)/2 and 1 + alpha + beta + n = (n+1)/2
    jc.alpha = make_rational(n + 1, 2);
    jc.beta = -(n + 1);
    jc.argument_map = {BigRational(1), BigRational(-2)};
    jc.leading_factor = pochhammer(1 + jc.alpha, static_cast<unsigned>(n)) / BigRational(factorial(static_cast<unsigned long>(n)));
    return jc;
}

std::vector<BigRational> jacobi_side_coefficients(const JacobiCorrespondence& jc) {
    const BigRational a = -jc.n;
    const BigRational b = 1 + jc.alpha + jc.beta + jc.n;
    const BigRational c = 1 + jc.alpha;
    std::vector<BigRational> coeffs;
    coeffs.reserve(static_cast<std::size_t>(jc.n) + 1);
    for (int m = 0; m <= jc.n; ++m) {
        const auto um = static_cast<unsigned>(m);
        coeffs.push_back(pochhammer(a, um) * pochhammer(b, um) /
                         (pochhammer(c, um) * BigRational(factorial(um))));
    }
    return coeffs;
}

void write_coefficients_csv(std::ostream& out, std::span<const ExactPolynomial> polys) {
    out << "n,m,numerator,denominator\n";
    for (const auto& p : polys)
        for (std::size_t m = 0; m < p.coefficients.size(); ++m)
            out << p.degree << ',' << m << ',' << p.coefficients[m].get_num().get_str() << ','
                << p.coefficients[m].get_den().get_str() << '\n';
}

} // namespace hypzero
