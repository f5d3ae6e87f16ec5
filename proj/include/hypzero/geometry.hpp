#pragma once

// z-plane and t-plane geometry: the lemniscate |z(1-z)^2| = 4/27, the parabola
// Re(sqrt z) = 1/sqrt 3, basins of f_z(t) = t(1 - z t^2) and level-field samples.

#include "hypzero/complex_ap.hpp"
#include "hypzero/numerics.hpp"

#include <array>
#include <complex>
#include <iosfwd>
#include <span>
#include <vector>

namespace hypzero {

/// | |z(1-z)^2| - 4/27 |
BigFloat lemniscate_residual(const ComplexAP& z);

enum class Branch { Right, Left };

struct LemniscatePoint {
    ComplexAP z;
    /// Phase with z(1-z)^2 = (4/27) e^{i theta}, in [0, 2 pi).
    BigFloat theta;
    Branch branch = Branch::Right;
    /// Two cubic roots coalesce at the pinch z = 1/3 for this theta.
    bool pinch = false;
};

/// The three solutions of z(1-z)^2 = (4/27) e^{i theta}, classified by Re(z) against 1/3.
std::vector<LemniscatePoint> lemniscate_points(const BigFloat& theta, const PrecisionConfig& cfg = {});

/// Right-branch (Re z > 1/3) solutions for every theta in the grid, ordered by theta and
/// then by arg(z - 1). At theta = 0 the pinch 1/3 appears as a closure point flagged `pinch`.
std::vector<LemniscatePoint> lemniscate_branch(std::span<const BigFloat> thetas, const PrecisionConfig& cfg = {});

/// Uniform grid of `count` phases in [0, 2 pi).
std::vector<BigFloat> theta_grid(int count, Bits bits);

/// Closed double-precision polyline of the right branch for distance queries.
class LemniscatePolyline {
public:
    /// Built from lemniscate_branch over `theta_samples` phases; vertices sorted by
    /// arg(z - 1) and closed through the pinch 1/3.
    explicit LemniscatePolyline(int theta_samples = 2048, const PrecisionConfig& cfg = {});

    /// Euclidean distance from z to the branch: nearest polyline point refined by one
    /// Newton projection onto the curve.
    double distance(std::complex<double> z) const;

    const std::vector<std::complex<double>>& vertices() const noexcept { return vertices_; }

private:
    std::vector<std::complex<double>> vertices_;
};

enum class BasinLabel { ZeroBasin, InvSqrtZBasin, Boundary };

const char* to_string(BasinLabel label) noexcept;

/// Compares Re(sqrt z) with 1/sqrt 3 using tau = max(2^(4-P), input_uncertainty).
/// Throws DomainError at z = 0 and on the negative real axis.
BasinLabel basin_classify(const ComplexAP& z, double input_uncertainty = 0.0);

/// Points x + iy with x = 1/3 - (3/4) y^2, i.e. the locus Re(sqrt z) = 1/sqrt 3.
std::vector<ComplexAP> parabola_boundary(std::span<const BigFloat> y_grid);

struct Window {
    double re_min = -1.5;
    double re_max = 1.5;
    double im_min = -1.5;
    double im_max = 1.5;
};

/// Line point + s * direction (direction has unit length).
struct DivideLine {
    std::complex<double> point;
    std::complex<double> direction;
};

struct LevelField {
    std::complex<double> z;
    int resolution = 0;
    Window window;
    /// Row-major, res x res; row index runs over Im t, column over Re t.
    std::vector<std::complex<double>> t;
    std::vector<double> abs_f;
    /// Lines through +-1/sqrt(3z) perpendicular to the segment [-1/sqrt z, 1/sqrt z].
    std::array<DivideLine, 2> divides;
};

/// Samples |f_z(t)| on a res x res grid (res >= 16). Rows are computed in parallel over
/// at most `workers` threads; the result does not depend on the worker count.
LevelField divides_and_level_field(const ComplexAP& z, const Window& window, int res, unsigned workers = 1);

struct SaddleComparison {
    /// sign(|f_z(1)| - |f_z(1/sqrt(3z))|), 0 within tolerance
    int via_saddle = 0;
    /// sign(|z(1-z)^2| - 4/27), 0 within tolerance
    int via_lemniscate = 0;
    BigFloat saddle_gap;
    BigFloat lemniscate_gap;

    bool agree() const noexcept { return via_saddle == via_lemniscate; }
};

/// Gaps with magnitude below 2^(16-P) count as zero. Throws DomainError at z = 0.
SaddleComparison saddle_comparison(const ComplexAP& z);

/// Header (re_t, im_t, abs_f).
void write_level_field_csv(std::ostream& out, const LevelField& field);
/// Header (line, point_re, point_im, dir_re, dir_im).
void write_divides_csv(std::ostream& out, const LevelField& field);
/// Header (theta, re_z, im_z, residual).
void write_lemniscate_csv(std::ostream& out, std::span<const LemniscatePoint> points);

} // namespace hypzero
