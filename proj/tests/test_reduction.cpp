#include <doctest.h>

#include <cmath>
#include <random>

#include "ere/monodromy.hpp"
#include "ere/reduction.hpp"
#include "ere/spectral.hpp"

using namespace ere;

namespace {

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

TEST_CASE("build_D: symmetric m2 -> 0 gives diag(3/4, 9/4)")
{
    const double eps = 1e-12;
    const MassTriple m{0.5 - eps, 2.0 * eps, 0.5 - eps};
    const Mat2 D = build_D(central_configuration(m));
    CHECK(D(0, 0) == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(D(1, 1) == doctest::Approx(2.25).epsilon(1e-9));
    CHECK(std::abs(D(0, 1)) <= 1e-10);
}

TEST_CASE("build_D: direct summation cross-check for generic masses")
{
    const MassTriple m{0.5, 0.2, 0.3};
    const CentralConfiguration cc = central_configuration(m);
    const Mat2 D = build_D(cc);
    Mat2 ref = Mat2::Zero();
    const auto a = cc.primaries();
    const auto mm = cc.primary_masses();
    for (int i = 0; i < 3; ++i) {
        const Vec2 d = a[static_cast<std::size_t>(i)] - cc.a4;
        ref += mm[static_cast<std::size_t>(i)] * d * d.transpose() / std::pow(d.norm(), 5);
    }
    ref *= 3.0 / cc.mu;
    CHECK((D - ref).norm() <= 1e-14);
    CHECK(D.trace() == doctest::Approx(3.0).epsilon(1e-11));
    CHECK(D.determinant() >= -1e-12);
}

TEST_CASE("reduced params: trace 3, det >= 0, beta20 = 0 over 1e4 random triples")
{
    std::mt19937_64 rng(715517);
    for (int k = 0; k < 10000; ++k) {
        const MassTriple m = random_triple(rng);
        const CentralConfiguration cc = central_configuration(m);
        const ReducedParams p = reduced_params(cc, 0.0);
        CHECK(p.D.trace() == doctest::Approx(3.0).epsilon(1e-10));
        CHECK(p.D.determinant() >= -1e-12);
        CHECK(std::abs(p.beta20) <= 1e-10);
        CHECK(p.lambda3 >= p.lambda4);
        CHECK(p.alpha >= 0.0);
        CHECK(p.alpha <= 3.0);
    }
}

TEST_CASE("reduced params: traceless part of D matches the beta_{22,0} embedding")
{
    const MassTriple m{0.45, 0.3, 0.25};
    const CentralConfiguration cc = central_configuration(m);
    const ReducedParams p = reduced_params(cc, 0.0);
    const double scale = 3.0 / (2.0 * cc.mu);
    Mat2 psi;
    psi << scale * p.beta220.real(), scale * p.beta220.imag(), scale * p.beta220.imag(),
        -scale * p.beta220.real();
    const Mat2 dev = p.D - 0.5 * p.D.trace() * Mat2::Identity();
    CHECK((dev - psi).norm() <= 1e-10);
    // alpha from the complex route.
    CHECK(p.alpha == doctest::Approx((3.0 / cc.mu) * std::abs(p.beta220)).epsilon(1e-10));
}

TEST_CASE("eigen_split: isotropic, ordering, clamping")
{
    const Mat2 iso = 1.5 * Mat2::Identity();
    const EigenSplit s = eigen_split(iso);
    CHECK(s.lambda3 == doctest::Approx(1.5));
    CHECK(s.lambda4 == doctest::Approx(1.5));
    CHECK(s.alpha == 0.0);

    Mat2 tilted;
    tilted << 2.0, 0.3, 0.3, 1.0;
    const EigenSplit t = eigen_split(tilted);
    CHECK(t.lambda3 >= t.lambda4);
    const Mat2 rebuilt = rotation(t.angle) * Vec2(t.lambda3, t.lambda4).asDiagonal() *
                         rotation(t.angle).transpose();
    CHECK((rebuilt - tilted).norm() <= 1e-12);
}

TEST_CASE("symmetric alpha: endpoints and the 2sqrt2 consistency value")
{
    CHECK(symmetric_alpha(0.0) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(symmetric_alpha(1.0 - 1e-8) == doctest::Approx(3.0).epsilon(1e-3));
    CHECK(std::abs(symmetric_alpha(0.854) - 2.0 * std::sqrt(2.0)) <= 2e-3);
}

TEST_CASE("symmetric alpha: matches the position pipeline and is non-decreasing")
{
    for (double m2 : {0.05, 0.3, 0.6, 0.9}) {
        const double half = 0.5 * (1.0 - m2);
        const ReducedParams p =
            reduced_params(central_configuration(MassTriple{half, m2, half}), 0.0);
        CHECK(p.alpha == doctest::Approx(symmetric_alpha(m2)).epsilon(1e-9));
    }
    double prev = symmetric_alpha(0.0);
    for (int k = 1; k < 500; ++k) {
        const double cur = symmetric_alpha(k * 0.999 / 499.0);
        CHECK(cur >= prev - 1e-12);
        prev = cur;
    }
}

TEST_CASE("build_B: block structure, symmetry, periodicity")
{
    const ReducedParams p = reduced_params_alpha(1.5, 0.3);
    const LinearSystemCoeff B = build_B(p);
    const Mat4 b0 = B(0.7);
    CHECK((b0 - b0.transpose()).norm() == 0.0);
    CHECK((b0.block<2, 2>(0, 0) - Mat2::Identity()).norm() == 0.0);
    CHECK((b0.block<2, 2>(0, 2) + J2()).norm() == 0.0);
    CHECK((b0.block<2, 2>(2, 0) - J2()).norm() == 0.0);
    CHECK((B(0.7 + TWO_PI) - b0).norm() <= 1e-14);

    // e = 0: constant in theta; e = 0.5 at theta = pi: lower block I - 2D.
    const LinearSystemCoeff B0 = build_B(reduced_params_alpha(1.5, 0.0));
    CHECK((B0(0.1) - B0(2.9)).norm() <= 1e-15);
    const ReducedParams ph = reduced_params_alpha(1.0, 0.5);
    const LinearSystemCoeff Bh = build_B(ph);
    CHECK((Bh(PI).block<2, 2>(2, 2) - (Mat2::Identity() - 2.0 * ph.D)).norm() <= 1e-12);
}

TEST_CASE("rotated_potential: isotropic case and S(0) endpoint")
{
    for (double th : {0.0, 0.9, 2.2}) {
        const Mat2 v = rotated_potential(0.0, 0.3, th);
        const Mat2 want = 1.5 / (1.0 + 0.3 * std::cos(th)) * Mat2::Identity();
        CHECK((v - want).norm() <= 1e-14);
    }
    const Mat2 v30 = rotated_potential(3.0, 0.0, 0.0);
    Mat2 want30;
    want30 << 3.0, 0.0, 0.0, 0.0;
    CHECK((v30 - want30).norm() <= 1e-14);
}

TEST_CASE("rotated_potential: frame-rotated build_B cross-check")
{
    // V(theta) = R(theta) D R(theta)^T / (1 + e cos theta) for diagonal D.
    const double alpha = 2.0, e = 0.4, th = 1.0;
    const ReducedParams p = reduced_params_alpha(alpha, e);
    const Mat2 V = rotated_potential(alpha, e, th);
    const Mat2 ref = rotation(th) * p.D * rotation(th).transpose() / (1.0 + e * std::cos(th));
    CHECK((V - ref).norm() <= 1e-13);
}

TEST_CASE("frame equivalence: rotated-frame and block-form monodromies agree")
{
    for (double e : {0.0, 0.3, 0.6}) {
        const ReducedParams p = reduced_params_alpha(1.8, e);
        const SymplecticPath a = integrate_path(build_B(p), default_steps(e));
        const SymplecticPath b = integrate_path(build_B_rotated(p), default_steps(e));
        // Same fundamental 2pi map: the rotating frame closes after one period.
        CHECK((a.period_map - b.period_map).norm() <= 1e-8);
        const EigenStructure ea = eigenstructure(a.period_map);
        const EigenStructure eb = eigenstructure(b.period_map);
        for (const Cplx& la : ea.eigenvalues) {
            double best = 1e9;
            for (const Cplx& lb : eb.eigenvalues) best = std::min(best, std::abs(la - lb));
            CHECK(best <= 1e-8);
        }
    }
}

TEST_CASE("inertial_to_reduced: ERE maps to (0, sigma, sigma, 0) at all times")
{
    for (double e : {0.0, 0.3, 0.7}) {
        const MassTriple m{0.5, 0.2, 0.3};
        const CentralConfiguration cc = normalized_frame(central_configuration(m));
        CHECK((cc.a4 - Vec2(1.0, 0.0)).norm() <= 1e-14);
        const KeplerOrbit orbit = KeplerOrbit::from_mu_p(cc.mu, 1.0, e);
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            const double t = orbit.period * (k / 100.0 - 0.2);
            const double th = theta_of_time(orbit, t);
            const Vec2 dir = rotation(th) * cc.a4;
            const Vec2 q = orbit.r(th) * dir;
            const Vec2 P =
                orbit.rdot(th) * dir + orbit.r(th) * orbit.theta_dot(th) * J2() * dir;
            const ReducedState s = inertial_to_reduced(P, q, t, orbit);
            worst = std::max(worst, (s.Zbar - Vec2(0.0, orbit.sigma)).norm());
            worst = std::max(worst, (s.zbar - Vec2(orbit.sigma, 0.0)).norm());
        }
        CHECK(worst <= 1e-10);
    }
}

TEST_CASE("inertial_to_reduced: the transform matrix is symplectic")
{
    const KeplerOrbit orbit = KeplerOrbit::from_mu_p(0.8, 1.1, 0.45);
    for (int k = 0; k < 10; ++k) {
        const double t = orbit.period * k / 10.0;
        const Mat4 M = inertial_to_reduced_matrix(t, orbit);
        CHECK((M.transpose() * J4() * M - J4()).norm() <= 1e-12);

        // The matrix reproduces the transform on perturbed states.
        std::mt19937_64 rng(99 + k);
        std::uniform_real_distribution<double> uni(-0.5, 0.5);
        const Vec2 P(uni(rng), uni(rng));
        const Vec2 q(uni(rng) + 1.0, uni(rng));
        const ReducedState s = inertial_to_reduced(P, q, t, orbit);
        Vec4 in;
        in << P, q;
        const Vec4 out = M * in;
        CHECK((out.head<2>() - s.Zbar).norm() <= 1e-12);
        CHECK((out.tail<2>() - s.zbar).norm() <= 1e-12);
    }
}
