#pragma once

#include "hypzero/complex_ap.hpp"
#include "hypzero/exact_core.hpp"
#include "hypzero/numerics.hpp"

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hypzero {

struct RootSet {
    int n = 0;
    std::vector<ComplexAP> roots;
    /// |p(root)| as evaluated during certification (empty until certify()).
    std::vector<BigFloat> residuals;
    /// Radius of a disk around each root guaranteed to contain a zero of p.
    std::vector<BigFloat> inclusion_radii;
    Bits precision_used = 0;
    int sweeps = 0;
    /// Index pairs whose inclusion disks intersect.
    std::vector<std::pair<int, int>> overlaps;

    bool certified() const noexcept { return !inclusion_radii.empty() && overlaps.empty(); }
};

/// n points on a circle of radius 0.8 min(n+1, 2) about the root centroid -c_{n-1}/(n c_n).
std::vector<ComplexAP> initial_points(const ExactPolynomial& p, Bits bits);

/// All n zeros by simultaneous (Aberth-Ehrlich) correction. Sweeps stop once every
/// correction is below 2^(8-P)(1+|root|); a stall (less than one bit of decrease in the
/// largest correction over 10 sweeps) escalates P and continues from the current iterates.
/// Throws PrecisionExhausted with a sweep trace when cfg.max_bits does not suffice.
RootSet find_roots(const ExactPolynomial& p, const PrecisionConfig& cfg);

/// Fills residuals and inclusion radii, radius_j = n |p(z_j)| / |p'(z_j)| with evaluation error
/// folded in, and records overlapping disks. Throws CertificationFailed when |p'(z_j)| cannot
/// be separated from its evaluation error.
RootSet certify(const ExactPolynomial& p, RootSet rs, const PrecisionConfig& cfg = {});

/// find_roots followed by certify.
RootSet find_certified_roots(const ExactPolynomial& p, const PrecisionConfig& cfg);

/// Greedy nearest-pair matching; returns the largest matched distance.
double match_distance(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b);

/// Columns (n, j, re, im, residual, inclusion_radius); coordinates at 40 significant digits.
void write_roots_csv(std::ostream& out, std::span<const RootSet> sets);

namespace detail {

/// Roots of c0 + c1 z + c2 z^2 + c3 z^3 with complex coefficients (c3 != 0).
std::vector<ComplexAP> cubic_roots(const std::array<ComplexAP, 4>& coeffs, const PrecisionConfig& cfg);

} // namespace detail

} // namespace hypzero
