#include <doctest.h>

#include "hypzero/errors.hpp"
#include "hypzero/rootfinder.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <sstream>

using namespace hypzero;

namespace {

// Eigenvalues of the companion matrix of the monic normalization.
std::vector<std::complex<double>> companion_roots(const ExactPolynomial& p) {
    const int n = p.degree;
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
    const mpq_class lead = p.coefficients.back();
    for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) c(i, n - 1) = -mpq_class(p.coefficients[static_cast<std::size_t>(i)] / lead).get_d();
    Eigen::EigenSolver<Eigen::MatrixXd> es(c, false);
    std::vector<std::complex<double>> out;
    for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()[i]);
    return out;
}

std::vector<std::complex<double>> as_double(const RootSet& rs) {
    std::vector<std::complex<double>> out;
    for (const auto& r : rs.roots) out.push_back(r.to_complex());
    return out;
}

} // namespace

TEST_CASE("degree one is exact") {
    const RootSet rs = find_certified_roots(build_polynomial(1), PrecisionConfig{});
    REQUIRE(rs.roots.size() == 1);
    CHECK(rs.roots[0].re() == 2.0);
    CHECK(rs.roots[0].im().is_zero());
    CHECK(rs.certified());
}

TEST_CASE("degree two against the quadratic formula") {
    const Bits bits = 128;
    const RootSet rs = find_certified_roots(build_polynomial(2), PrecisionConfig{bits, 2, 4096});
    REQUIRE(rs.roots.size() == 2);
    // 7/5 +- (7/6) sqrt(48/175) i
    const BigFloat re(mpq_class(7, 5), bits);
    const BigFloat im = BigFloat(mpq_class(7, 6), bits) * sqrt(BigFloat(mpq_class(48, 175), bits));
    for (const auto& r : rs.roots) {
        CHECK(abs(r.re() - re) < pow2(-110, 53));
        CHECK(abs(abs(r.im()) - im) < pow2(-110, 53));
        CHECK(abs(norm(r) - BigFloat(mpq_class(7, 3), bits)) < pow2(-110, 53));
    }
    CHECK(rs.roots[0].im().sign() == -rs.roots[1].im().sign());
}

TEST_CASE("companion-matrix oracle for small degrees") {
    for (int n = 1; n <= 12; ++n) {
        const ExactPolynomial p = build_polynomial(n);
        const RootSet rs = find_certified_roots(p, PrecisionConfig{});
        CHECK(static_cast<int>(rs.roots.size()) == n);
        CHECK(match_distance(as_double(rs), companion_roots(p)) < 1e-8);
    }
}

TEST_CASE("initial points surround the centroid") {
    const ExactPolynomial p = build_polynomial(10);
    const std::vector<ComplexAP> pts = initial_points(p, 128);
    REQUIRE(pts.size() == 10);
    ComplexAP mean(128);
    for (const auto& z : pts) mean += z;
    mean /= BigFloat(10L, 128);
    const ComplexAP centroid = ComplexAP(-BigFloat(p.coefficients[9] / (10 * p.coefficients[10]), 128));
    CHECK(abs(mean - centroid) < pow2(-100, 53));
    for (const auto& z : pts) CHECK(abs(abs(z - centroid) - BigFloat(mpq_class(8, 5), 128)) < pow2(-100, 53));
}

TEST_CASE("residuals and radii at n = 60") {
    const RootSet rs = find_certified_roots(build_polynomial(60), PrecisionConfig{});
    REQUIRE(rs.roots.size() == 60);
    CHECK(rs.certified());
    for (std::size_t j = 0; j < rs.roots.size(); ++j) {
        CHECK(rs.residuals[j] < 1e-20);
        CHECK(rs.inclusion_radii[j] < 1e-20);
    }
    CHECK(rs.precision_used == 128);
}

TEST_CASE("certification detects overlapping disks") {
    const ExactPolynomial p = build_polynomial(5);
    RootSet rs = find_roots(p, PrecisionConfig{});
    rs.roots[1] = rs.roots[0] + pow2(-200, 128);
    RootSet bad = certify(p, rs);
    CHECK_FALSE(bad.certified());
}

TEST_CASE("a 64-bit cap cannot certify degree 80") {
    // The iteration stops at the 64-bit noise floor; the inclusion disks then overlap or exceed the bound.
    CHECK_THROWS_AS((void)find_certified_roots(build_polynomial(80), PrecisionConfig{64, 2, 64}), CertificationFailed);
    CHECK_NOTHROW((void)find_certified_roots(build_polynomial(80), PrecisionConfig{64, 2, 4096}));
}

TEST_CASE("roots CSV layout") {
    std::vector<RootSet> sets{find_certified_roots(build_polynomial(1), PrecisionConfig{})};
    std::ostringstream os;
    write_roots_csv(os, sets);
    const std::string s = os.str();
    CHECK(s.rfind("n,j,re,im,residual,inclusion_radius\n1,0,2.000000000000000000000000000000000000000e+00,", 0) == 0);
}

TEST_CASE("complex cubic solver") {
    // (z - 1)(z - 2)(z + i) = z^3 + (i - 3) z^2 + (2 - 3i) z + 2i
    const Bits bits = 128;
    std::array<ComplexAP, 4> c{ComplexAP::from_double(0, 2, bits), ComplexAP::from_double(2, -3, bits),
                               ComplexAP::from_double(-3, 1, bits), ComplexAP::from_long(1, bits)};
    std::vector<ComplexAP> r = detail::cubic_roots(c, PrecisionConfig{});
    std::vector<std::complex<double>> got, want{{1, 0}, {2, 0}, {0, -1}};
    for (auto& z : r) got.push_back(z.to_complex());
    CHECK(match_distance(got, want) < 1e-30);
}
