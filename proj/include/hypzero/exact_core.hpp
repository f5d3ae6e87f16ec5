#pragma once

// Exact rational construction of 2F1(-n, (n+1)/2; (n+3)/2; z) and the
// closed forms attached to it.

#include <gmpxx.h>

#include <iosfwd>
#include <span>
#include <vector>

namespace hypzero {

/// Always canonical: lowest terms, positive denominator.
using BigRational = mpq_class;

/// Builds num/den in canonical form; throws DomainError on a zero denominator.
BigRational make_rational(const mpz_class& num, const mpz_class& den);

struct ExactPolynomial {
    int degree = 0;
    /// coefficients[m] = c_m, size degree + 1.
    std::vector<BigRational> coefficients;
};

/// Rising factorial a(a+1)...(a+k-1); 1 when k = 0.
BigRational pochhammer(const BigRational& a, unsigned k);

/// Coefficients of 2F1(-n, (n+1)/2; (n+3)/2; z). Rejects n < 1 with DomainError.
ExactPolynomial build_polynomial(int n);

struct EkScaling {
    /// a_m = |c_m| (n+1)^m
    std::vector<BigRational> scaled;
    /// 0 < a_0 < a_1 < ... < a_n holds exactly.
    bool strictly_increasing = false;
};

/// Enestrom-Kakeya rescaling z -> -(n+1) z of the family polynomial.
EkScaling ek_scaled_coefficients(const ExactPolynomial& p);

/// q * sqrt(pi)^k with k in {0, 1}.
struct SqrtPiMultiple {
    BigRational rational;
    bool has_sqrt_pi = false;
};

/// Gamma(h/2) for a positive integer h, exactly.
SqrtPiMultiple gamma_half_integer(unsigned long twice_argument);

struct GammaRatioExact {
    int n = 0;
    /// Gamma((n+1)/2) Gamma(n+1) / Gamma((3n+3)/2)
    BigRational value;
};

GammaRatioExact gamma_ratio_exact(int n);

/// w = offset + scale * z
struct AffineMap {
    BigRational offset;
    BigRational scale;
};

struct JacobiCorrespondence {
    int n = 0;
    BigRational alpha;
    BigRational beta;
    /// Jacobi argument as a function of z: w = 1 - 2z.
    AffineMap argument_map;
    /// P_n^(alpha,beta)(1 - 2z) = leading_factor * F_n(z), i.e. (1+alpha)_n / n!.
    BigRational leading_factor;
};

JacobiCorrespondence jacobi_correspondence(int n);

/// Expands 2F1(-n, 1+alpha+beta+n; 1+alpha; z) with the correspondence's parameters.
std::vector<BigRational> jacobi_side_coefficients(const JacobiCorrespondence& jc);

/// CSV rows (n, m, numerator, denominator) with a header line.
void write_coefficients_csv(std::ostream& out, std::span<const ExactPolynomial> polys);

} // namespace hypzero
