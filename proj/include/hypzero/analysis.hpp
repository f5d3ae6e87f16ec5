#pragma once

// Verification campaigns over n: lemma checks on certified roots, lemniscate
// convergence statistics, and figure data emission.

#include "hypzero/geometry.hpp"
#include "hypzero/rootfinder.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hypzero {

enum class Verdict { Pass, Fail, Boundary };

const char* to_string(Verdict v) noexcept;

/// Why a per-n campaign item has no root data.
enum class FailureKind { None, Certification, Precision, Other };

struct LemmaReport {
    int n = 0;
    /// Every inclusion disk lies in |z| < n+1. Boundary when a disk touches |z| = n+1.
    Verdict ek_disk = Verdict::Fail;
    /// Some inclusion disk lies in |z| > 1.
    Verdict outside_unit_circle = Verdict::Fail;
    /// min (Re root - radius) > 1/3; empirical over the tested n.
    Verdict right_of_third = Verdict::Fail;
    /// a_0 < a_1 < ... < a_n for a_m = |c_m| (n+1)^m; Boundary when only non-strict.
    Verdict coefficient_chain = Verdict::Fail;
    /// |c_0 / c_n| = (3n+1)/(n+1) exactly.
    Verdict coefficient_ratio = Verdict::Fail;
    double min_real_part = 0.0;
    int root_count = 0;
    /// |prod |z_j| - (3n+1)/(n+1)| / ((3n+1)/(n+1))
    double product_deviation = 0.0;
    FailureKind failure = FailureKind::None;
    std::string error;
    RootSet roots;
};

/// One report per n; rootfinder errors are recorded in the report rather than thrown.
/// Throws DomainError if some n < 1.
std::vector<LemmaReport> verify_lemmas(std::span<const int> ns, const PrecisionConfig& cfg = {}, unsigned workers = 1);

struct ZeroDiagnostics {
    ComplexAP root;
    BigFloat residual;
    BigFloat inclusion_radius;
    /// | |z(1-z)^2| - 4/27 |
    double value_residual = 0.0;
    /// Euclidean distance to the right-branch polyline.
    double branch_distance = 0.0;
    /// arg(z(1-z)^2 27/4) in (-pi, pi]; absent left of 1/3 and within 0.05 of the pinch.
    std::optional<double> theta;
};

/// Gaps between consecutive values of psi = arg(sqrt z (1 - z)) in [0, 2 pi) over the roots
/// that carry a theta. psi runs once around the right loop (theta runs twice).
struct SpreadStatistics {
    int counted = 0;
    double min_gap = 0.0;
    double max_gap = 0.0;
    /// max_gap / min_gap; 0 when fewer than two roots are counted.
    double ratio = 0.0;
};

struct LemniscateReport {
    int n = 0;
    std::vector<ZeroDiagnostics> per_zero;
    double max_value_residual = 0.0;
    double median_value_residual = 0.0;
    double min_re = 0.0;
    double max_modulus = 0.0;
    SpreadStatistics spread;
};

/// Minimum distance from the pinch 1/3 for a root to carry a theta.
inline constexpr double kPinchMargin = 0.05;

/// Throws DomainError unless ns is strictly ascending with every n >= 1.
std::vector<LemniscateReport> convergence_report(std::span<const int> ns, const PrecisionConfig& cfg = {},
                                                 unsigned workers = 1, int theta_samples = 2048);

/// Least-squares slope of log(median value residual) against log(n).
double log_residual_slope(std::span<const LemniscateReport> reports);

/// Median with the mean of the two middle values for even counts; 0 for an empty input.
double median(std::vector<double> values);

/// Header (n, root_count, ek_disk, outside_unit_circle, right_of_third, coefficient_chain,
/// coefficient_ratio, min_real_part, product_deviation, error).
void write_lemma_csv(std::ostream& out, std::span<const LemmaReport> reports);

/// Header (n, j, re, im, residual, inclusion_radius, value_residual, branch_distance, theta);
/// theta is empty where undefined.
void write_convergence_roots_csv(std::ostream& out, std::span<const LemniscateReport> reports);

/// Header (n, max_value_residual, median_value_residual, min_re, max_modulus, theta_gap_ratio).
void write_summary_csv(std::ostream& out, std::span<const LemniscateReport> reports);

/// Static SVG with one panel per report (right-branch polyline and one marker per root), and a
/// CSV (panel, n, kind, re, im) with every plotted coordinate.
void figure_zero_plot(std::span<const LemniscateReport> reports, const LemniscatePolyline& branch,
                      std::ostream& svg, std::ostream& csv);

/// Level-field samples of |f_z| and the divide-line metadata for external contouring.
void figure_level_curves(const ComplexAP& z, const Window& window, int res, unsigned workers,
                         std::ostream& field_csv, std::ostream& divides_csv);

} // namespace hypzero
