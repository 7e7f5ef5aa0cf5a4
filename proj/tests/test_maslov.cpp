#include <doctest.h>

#include <cmath>
#include <random>

#include "ere/maslov.hpp"
#include "ere/monodromy.hpp"

using namespace ere;

namespace {

// e = 0 oracle: the omega-boundary Galerkin operator decouples into 2x2
// blocks pairing mode (k + rho, chi-) with (k + 2 + rho, chi+); the Morse
// index is the number of blocks with negative determinant.
int circular_index_oracle(double alpha, double rho, int K = 600)
{
    // Both diagonal entries are >= 1/2, so a block contributes exactly one
    // negative eigenvalue when its determinant is negative.
    int neg = 0;
    for (int k = -K; k <= K; ++k) {
        const double d1 = (k + rho) * (k + rho) - 1.0 + 1.5;
        const double d2 = (k + 2 + rho) * (k + 2 + rho) - 1.0 + 1.5;
        if (d1 * d2 < 0.25 * alpha * alpha) ++neg;
    }
    return neg;
}

double fhat_closed_form(double e, int n)
{
    // 1/(1+e cos t) = (1 - q^2)^{-1/2}-free form: fhat(n) = (-q)^{|n|}/sqrt(1-e^2),
    // q = e / (1 + sqrt(1 - e^2)).
    const double q = e / (1.0 + std::sqrt(1.0 - e * e));
    return std::pow(-q, std::abs(n)) / std::sqrt(1.0 - e * e);
}

}  // namespace

TEST_CASE("fourier coefficients of 1/(1+e cos t) match the closed form")
{
    for (double e : {0.0, 0.3, 0.8}) {
        const auto fh = inverse_radius_fourier(e, 24, 512);
        for (int n = 0; n <= 24; ++n)
            CHECK(fh[static_cast<std::size_t>(n)] ==
                  doctest::Approx(fhat_closed_form(e, n)).epsilon(1e-12));
    }
}

TEST_CASE("assemble: e=0 alpha=0 is diagonal with entries (k+rho)^2 - 1 + 3/2")
{
    const GalerkinProblem gp = assemble_galerkin(0.0, 0.0, Cplx(-1.0, 0.0), 6);
    CHECK(gp.rho == doctest::Approx(0.5));
    const auto& G = gp.matrix;
    for (int i = 0; i < G.rows(); ++i)
        for (int j = 0; j < G.cols(); ++j)
            if (i != j) CHECK(std::abs(G(i, j)) <= 1e-14);
    for (int k = -6; k <= 6; ++k) {
        const double want = (k + 0.5) * (k + 0.5) - 1.0 + 1.5;
        const int row = 2 * (k + 6);
        CHECK(G(row, row).real() == doctest::Approx(want).epsilon(1e-14));
        CHECK(G(row + 1, row + 1).real() == doctest::Approx(want).epsilon(1e-14));
    }
}

TEST_CASE("assemble: e=0 alpha=3 couples k with k +- 2 only")
{
    const GalerkinProblem gp = assemble_galerkin(3.0, 0.0, Cplx(1.0, 0.0), 6);
    const auto& G = gp.matrix;
    for (int kr = -6; kr <= 6; ++kr)
        for (int kc = -6; kc <= 6; ++kc) {
            const double blk =
                G.block<2, 2>(2 * (kr + 6), 2 * (kc + 6)).cwiseAbs().maxCoeff();
            if (kr == kc || std::abs(kr - kc) == 2)
                continue;
            CHECK(blk <= 1e-14);
        }
}

TEST_CASE("assemble: Hermitian and quadratic form agrees with direct quadrature")
{
    const double alpha = 1.7, e = 0.5;
    const Cplx omega(-1.0, 0.0);
    const int N = 12;
    const GalerkinProblem gp = assemble_galerkin(alpha, e, omega, N);
    CHECK((gp.matrix - gp.matrix.adjoint()).norm() <= 1e-12 * gp.matrix.norm());

    // Random trial functions y(t) = sum c_k e^{i (k + rho) t} v_k with small
    // support; <A y, y> via the matrix vs composite-Simpson quadrature of
    // conj(y)^T (-y'' - y + V y).
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int rep = 0; rep < 5; ++rep) {
        Eigen::VectorXcd c = Eigen::VectorXcd::Zero(gp.size());
        for (int i = 0; i < gp.size(); ++i) c(i) = Cplx(uni(rng), uni(rng));

        const Cplx quad_matrix = (c.adjoint() * gp.matrix * c)(0, 0);

        const int S = 4096;
        auto integrand = [&](double t) {
            Eigen::Vector2cd y = Eigen::Vector2cd::Zero();
            Eigen::Vector2cd ypp = Eigen::Vector2cd::Zero();
            for (int k = -N; k <= N; ++k) {
                const double nu = k + gp.rho;
                const Cplx ph = std::exp(Cplx(0.0, nu * t));
                const Cplx c0 = c(2 * (k + N)), c1 = c(2 * (k + N) + 1);
                y(0) += c0 * ph;
                y(1) += c1 * ph;
                ypp(0) += -nu * nu * c0 * ph;
                ypp(1) += -nu * nu * c1 * ph;
            }
            const Mat2 V = rotated_potential(alpha, e, t);
            const Eigen::Vector2cd Ay = -ypp - y + V.cast<Cplx>() * y;
            return (y.adjoint() * Ay)(0, 0);
        };
        // Periodic integrand: the trapezoid rule is spectrally accurate.
        Cplx integral(0.0, 0.0);
        const double h = TWO_PI / S;
        for (int j = 0; j < S; ++j) integral += integrand(j * h);
        integral *= h / TWO_PI;  // matrix form is the 1/(2pi)-normalized one
        CHECK(std::abs(quad_matrix - integral) <=
              1e-9 * std::max(1.0, std::abs(quad_matrix)));
    }
}

TEST_CASE("morse index: circular case against the 2x2 block oracle")
{
    for (double alpha : {0.3, 1.2, 2.5, 2.83, 2.86, 2.88, 2.95}) {
        const IndexRecord rec = morse_index(alpha, 0.0, Cplx(-1.0, 0.0), 32);
        CHECK(rec.converged);
        CHECK(rec.i_omega == circular_index_oracle(alpha, 0.5));
    }
    for (double alpha : {0.5, 2.0, 2.9}) {
        const IndexRecord rec = morse_index(alpha, 0.0, Cplx(1.0, 0.0), 32);
        CHECK(rec.converged);
        CHECK(rec.i_omega == circular_index_oracle(alpha, 0.0));
    }
}

TEST_CASE("morse index: the index value table")
{
    // i_1 = 0 everywhere on a small sample.
    for (double alpha : {0.0, 1.5, 3.0})
        for (double e : {0.0, 0.4}) {
            const IndexRecord rec = morse_index(alpha, e, Cplx(1.0, 0.0), 64);
            CHECK(rec.converged);
            CHECK(rec.i_omega == 0);
        }
    // alpha = 3: i_{-1} = 2 and nu_1 = 3.
    for (double e : {0.0, 0.2, 0.5}) {
        const IndexRecord rm = morse_index(3.0, e, Cplx(-1.0, 0.0), 64);
        CHECK(rm.converged);
        CHECK(rm.i_omega == 2);
        const IndexRecord r1 = morse_index(3.0, e, Cplx(1.0, 0.0), 64);
        CHECK(r1.nu_omega == 3);
    }
    // alpha = 0: everything vanishes.
    for (double e : {0.0, 0.5}) {
        const IndexRecord rec = morse_index(0.0, e, Cplx(-1.0, 0.0), 64);
        CHECK(rec.converged);
        CHECK(rec.i_omega == 0);
        CHECK(rec.nu_omega == 0);
    }
}

TEST_CASE("morse index: beta bridge")
{
    const double alpha = 1.9;
    const IndexRecord a = morse_index(alpha, 0.3, Cplx(-1.0, 0.0), 32);
    const IndexRecord b = morse_index_beta(9.0 - alpha * alpha, 0.3, Cplx(-1.0, 0.0), 32);
    CHECK(a.i_omega == b.i_omega);
    CHECK(a.nu_omega == b.nu_omega);
}

TEST_CASE("index_via_splitting: hyperbolic means i_omega = i_1")
{
    const Mat4 M = monodromy_circular(1.0);
    for (double ang : {0.4, 2.0, PI}) {
        CHECK(index_via_splitting(0, M, std::polar(1.0, ang)) == 0);
    }
}

TEST_CASE("index_via_splitting: circular EE regions at omega = -1")
{
    // alpha in (2 sqrt 2, sqrt33/2): theta1 in (0,pi) contributes -S^- = -1,
    // the conjugate of theta2 contributes +S^+ = +1: i_{-1} = 0.
    CHECK(index_via_splitting(0, monodromy_circular(2.85), Cplx(-1.0, 0.0)) == 0);
    // alpha above sqrt33/2: both upper-half eigenvalues are conjugates of the
    // defining angles: i_{-1} = 2.
    CHECK(index_via_splitting(0, monodromy_circular(2.9), Cplx(-1.0, 0.0)) == 2);
    CHECK(index_via_splitting(0, monodromy_circular(2.95), Cplx(-1.0, 0.0)) == 2);
}

TEST_CASE("index_via_splitting: agrees with the Galerkin route off the curves")
{
    for (double alpha : {0.4, 1.3, 2.5, 2.86, 2.95}) {
        for (double e : {0.0, 0.3, 0.6}) {
            const Mat4 M =
                integrate_path(build_B(reduced_params_alpha(alpha, e)), default_steps(e))
                    .period_map;
            const EigenStructure es = eigenstructure(M);
            const NormalForm nf = classify_normal_form(es, M);
            if (nf.marginal) continue;
            const IndexRecord rec = morse_index(alpha, e, Cplx(-1.0, 0.0), 64);
            REQUIRE(rec.converged);
            CHECK(index_via_splitting(0, nf, es, Cplx(-1.0, 0.0)) == rec.i_omega);
        }
    }
}

TEST_CASE("index_via_splitting: refuses marginal forms")
{
    NormalForm nf;
    nf.marginal = true;
    EigenStructure es;
    CHECK_THROWS_AS(index_via_splitting(0, nf, es, Cplx(-1.0, 0.0)), InconsistencyError);
}

TEST_CASE("bott identity at the paper sample points")
{
    std::string diag;
    CHECK(bott_check(0.0, 0.4, 64, 1024, &diag));      // 0 = 0 + 0
    CHECK(bott_check(3.0, 0.3, 64, 1024, &diag));      // 2 = 0 + 2
    CHECK(bott_check(2.0, 0.5, 64, 1024, &diag));      // independent equality
}
