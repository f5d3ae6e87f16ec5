#pragma once

// Steepest paths of f_z(t) = t(1 - z t^2) and the integral representations of
// F_n(z) = (n+1) int_0^1 [f_z(t)]^n dt built on them.

#include "hypzero/complex_ap.hpp"
#include "hypzero/numerics.hpp"

#include <iosfwd>
#include <vector>

namespace hypzero {

enum class StartPoint { Origin, InvSqrtZ };

enum class PathGrid {
    /// r_k = 1 - (1 - k/steps)^2, dense near r = 1; trapezoid weights.
    Graded,
    /// r = 0, Gauss-Legendre nodes, r = 1; Gauss-Legendre weights (zero at the endpoints).
    GaussLegendre,
};

struct PathOptions {
    /// Graded: number of intervals. Both grids: the RK4 step never exceeds 1/steps.
    int steps = 512;
    double path_tol = 1e-20;
    PathGrid grid = PathGrid::Graded;
    /// Interior node count for PathGrid::GaussLegendre.
    int nodes = 128;
};

struct PathSample {
    BigFloat r;
    ComplexAP t;
    /// Quadrature weight of this sample for integrals over r in [0, 1].
    BigFloat weight;
    /// |t(1 - z t^2) - r(1 - z)|
    BigFloat implicit_residual;
};

struct SteepestPath {
    ComplexAP z;
    /// Ascending in r, from r = 0 (t = start) to r = 1 (t = 1).
    std::vector<PathSample> samples;
    StartPoint start = StartPoint::Origin;
    PathGrid grid = PathGrid::Graded;
    double path_tol = 0.0;
};

/// Solves t(1 - z t^2) = r(1 - z) from (r, t) = (1, 1) down to r = 0 by RK4 on
/// dt/dr = (1 - z)/(1 - 3 z t^2) with a Newton projection after every step.
/// Throws DomainError for z = 1 or z on the basin boundary, and PathError on saddle
/// proximity or when t(0) disagrees with the basin prediction.
SteepestPath trace_path(const ComplexAP& z, const PathOptions& options = {}, const PrecisionConfig& cfg = {});

/// (n+1) int_0^1 [t(1 - z t^2)]^n dt by Gauss-Legendre with max(64, 2n) nodes; equals F_n(z).
ComplexAP integral_full(int n, const ComplexAP& z);

/// int_0^{1/sqrt z} [f_z(t)]^n dt = Gamma((n+1)/2) Gamma(n+1) / (2 Gamma((3n+3)/2) (sqrt z)^{n+1}).
ComplexAP segment_integral(int n, const ComplexAP& z);
/// The same integral by Gauss-Legendre along the straight segment t = u / sqrt z.
ComplexAP segment_integral_quadrature(int n, const ComplexAP& z);

struct AsymptoticTerm {
    int n = 0;
    /// (2/sqrt 27)^n sqrt(2 pi) / (3 sqrt(n) (sqrt z)^{n+1})
    ComplexAP value;
    /// Size of the O(1/n) relative correction slot, 1/n.
    double rel_error_budget = 0.0;
};

AsymptoticTerm saddle_asymptotic(int n, const ComplexAP& z);

/// int_0^1 (1 - z t^2) t r^{n-1} / (1 - 3 z t^2) dr along the sampled path.
/// Throws PathError(PathTooCoarse) when the samples cannot resolve the r^{n-1} layer at r = 1.
ComplexAP tail_r_integral(int n, const SteepestPath& path);

/// int_{1/sqrt z}^1 [f_z(t)]^n dt = (1 - z)^n tail_r_integral(n, path); path must start at 1/sqrt z.
ComplexAP tail_integral(int n, const SteepestPath& path);

struct ZeroEquation {
    /// (sqrt z)^{n+1} (1 - z)^n tail_r_integral
    ComplexAP lhs;
    /// -(2/sqrt 27)^n sqrt(2 pi) / (3 sqrt n)
    ComplexAP rhs;
    /// |lhs|^{1/n} / |rhs|^{1/n}
    BigFloat root_ratio;
};

/// Both sides of the asymptotic zero condition at z (Re z > 1/3, z != 1), tracing the path on a
/// Gauss-Legendre grid with max(options.nodes, 2n + 32) nodes.
ZeroEquation zero_equation_residual(int n, const ComplexAP& z, PathOptions options = {.grid = PathGrid::GaussLegendre},
                                    const PrecisionConfig& cfg = {});

struct HalfPlaneVerdict {
    bool holds = false;
    /// Smallest Re{(1 - z t^2) t / (1 - 3 z t^2)} over the window.
    BigFloat min_real;
    int samples_checked = 0;
};

/// Checks Re{(1 - z t^2) t / (1 - 3 z t^2)} > 1/6 for samples with r in [r_lo, r_hi].
/// The path must start at the origin (zero basin, Re z < 1/3).
HalfPlaneVerdict halfplane_bound_check(const SteepestPath& path, double r_lo = 0.9, double r_hi = 1.0);

/// Header (r, re_t, im_t, implicit_residual); rows run from r = 1 down to r = 0.
void write_path_csv(std::ostream& out, const SteepestPath& path);

} // namespace hypzero
