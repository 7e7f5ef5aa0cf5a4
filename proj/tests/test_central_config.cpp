#include <doctest.h>

#include <cmath>
#include <random>

#include "ere/central_config.hpp"

using namespace ere;

namespace {

// Test-side oracle: plain bisection of the quintic on a sign-change bracket,
// independent of the production bracketing/Newton path.
double quintic_root_bisection(const MassTriple& m)
{
    const EulerQuintic q(m);
    double lo = 1e-12, hi = 1.0;
    while (q.eval(hi) < 0.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (q.eval(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

MassTriple random_triple(std::mt19937_64& rng)
{
    std::exponential_distribution<double> exp1(1.0);
    for (;;) {
        const double a = exp1(rng), b = exp1(rng), c = exp1(rng);
        const double s = a + b + c;
        const MassTriple m{a / s, b / s, c / s};
        if (m.m1 > 1e-4 && m.m2 > 1e-4 && m.m3 > 1e-4) return m;
    }
}

}  // namespace

TEST_CASE("euler quintic: symmetric masses give x = 1")
{
    CHECK(solve_euler_quintic(MassTriple{0.3, 0.4, 0.3}) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(solve_euler_quintic(MassTriple{0.4999999999, 2e-10, 0.4999999999}) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("euler quintic: generic root matches the bisection oracle")
{
    const MassTriple m{0.6, 0.2, 0.2};
    const double x = solve_euler_quintic(m);
    const double x_oracle = quintic_root_bisection(m);
    CHECK(std::abs(x - x_oracle) <= 1e-10);
    CHECK(EulerQuintic(m).relative_residual(x) <= 1e-12);
}

TEST_CASE("euler quintic: 1e4 random triples have certified simple roots")
{
    std::mt19937_64 rng(20240811);
    for (int k = 0; k < 10000; ++k) {
        const MassTriple m = random_triple(rng);
        const double x = solve_euler_quintic(m);
        const EulerQuintic q(m);
        CHECK(q.relative_residual(x) <= 1e-12);
        CHECK(q.deriv(x) > 0.0);
    }
}

TEST_CASE("collinear cc: symmetric placement and normalization")
{
    const MassTriple m{0.3, 0.4, 0.3};
    const CentralConfiguration cc = build_collinear_cc(m, 1.0);
    const double s = 1.0 / std::sqrt(1.0 - m.m2);
    CHECK(cc.a1.x() == doctest::Approx(-s).epsilon(1e-13));
    CHECK(cc.a2.x() == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(cc.a3.x() == doctest::Approx(s).epsilon(1e-13));
    CHECK(cc.moment_of_inertia == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("collinear cc: center of mass and CC residual for generic masses")
{
    const MassTriple m{0.5, 0.25, 0.25};
    CentralConfiguration cc = build_collinear_cc(m, solve_euler_quintic(m));
    const double com = m.m1 * cc.a1.x() + m.m2 * cc.a2.x() + m.m3 * cc.a3.x();
    CHECK(std::abs(com) <= 1e-12);
    CHECK(cc.cc_residual() <= 1e-10);

    // mu equals U(a) evaluated directly from the constructed positions.
    double u = 0.0;
    u += m.m1 * m.m2 / (cc.a1 - cc.a2).norm();
    u += m.m1 * m.m3 / (cc.a1 - cc.a3).norm();
    u += m.m2 * m.m3 / (cc.a2 - cc.a3).norm();
    CHECK(cc.mu == doctest::Approx(u).epsilon(1e-13));
}

TEST_CASE("massless body: symmetric case agrees with the y-equation")
{
    for (double m2 : {0.1, 0.4, 0.7}) {
        const double half = 0.5 * (1.0 - m2);
        const MassTriple m{half, m2, half};
        const CentralConfiguration cc = central_configuration(m);
        const double y = solve_symmetric_y(m2);
        const Vec2 expected(0.0, y / std::sqrt(1.0 - m2));
        CHECK((cc.a4 - expected).norm() <= 1e-10);
    }
}

TEST_CASE("massless body: m2 -> 0 sits at the equilateral apex, y = sqrt(3)")
{
    const double eps = 1e-11;
    const MassTriple m{0.5 - eps, 2.0 * eps, 0.5 - eps};
    const CentralConfiguration cc = central_configuration(m);
    CHECK(cc.a4.y() * std::sqrt(1.0 - m.m2) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-8));
    CHECK(std::abs(solve_symmetric_y(0.0) - std::sqrt(3.0)) <= 1e-13);
}

TEST_CASE("massless body: generic masses satisfy both CC identities")
{
    const MassTriple m{0.5, 0.2, 0.3};
    const CentralConfiguration cc = central_configuration(m);
    CHECK(cc.has_a4);
    CHECK(cc.a4.y() > 0.0);
    CHECK(cc.cc_residual() <= 1e-10);
    CHECK(cc.mu_residual() <= 1e-10);
}

TEST_CASE("symmetric y: endpoints, range, residual, monotonicity")
{
    CHECK(solve_symmetric_y(0.0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
    CHECK(solve_symmetric_y(1.0 - 1e-8) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(solve_symmetric_y(0.5) > 1.0);
    CHECK(solve_symmetric_y(0.5) < std::sqrt(3.0));

    double prev = solve_symmetric_y(0.0);
    for (int k = 1; k < 200; ++k) {
        const double m2 = k * (1.0 - 1e-6) / 199.0;
        const double y = solve_symmetric_y(m2);
        CHECK(y >= 1.0);
        CHECK(y <= std::sqrt(3.0));
        CHECK(y < prev);  // strictly decreasing
        const double res = (1.0 - m2) / std::pow(y * y + 1.0, 1.5) + m2 / (y * y * y) -
                           (1.0 + 7.0 * m2) / 8.0;
        CHECK(std::abs(res) <= 1e-13);
        prev = y;
    }
}

TEST_CASE("mass triple validation")
{
    CHECK_THROWS_AS(MassTriple{0.5, 0.5, 0.0}.require_valid(), std::domain_error);
    CHECK_THROWS_AS(MassTriple{0.5, 0.2, 0.2}.require_valid(), std::domain_error);
    CHECK_NOTHROW(MassTriple::normalized(1.0, 2.0, 3.0).require_valid());
}
