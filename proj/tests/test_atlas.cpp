#include <doctest.h>

#include <cmath>

#include "ere/atlas.hpp"

using namespace ere;

namespace {

AtlasConfig quick_cfg()
{
    AtlasConfig cfg;
    cfg.galerkin_N0 = 32;
    return cfg;
}

// Corollary-style oracle for the circular orbit.
std::string circular_verdict_oracle(double alpha)
{
    const double ak = 2.0 * std::sqrt(2.0), am = 0.5 * std::sqrt(33.0);
    if (alpha < ak) return "Hyperbolic";
    if (alpha == ak) return "SpectrallyStableLinearlyUnstable";
    if (alpha < am) return "StronglyLinearlyStable";
    if (alpha == am) return "LinearlyStableNotStrong";
    return "StronglyLinearlyStable";
}

}  // namespace

TEST_CASE("trace curves at e = 0: the circular thresholds")
{
    const CurveSample cs = trace_curves_at(0.0, quick_cfg());
    CHECK(std::abs(cs.alpha_k - 2.0 * std::sqrt(2.0)) <= 1e-6);
    CHECK(std::abs(cs.alpha_s - 0.5 * std::sqrt(33.0)) <= 1e-6);
    CHECK(std::abs(cs.alpha_m - 0.5 * std::sqrt(33.0)) <= 1e-6);
    CHECK(cs.coincident_sm);
}

TEST_CASE("trace curves: ordering and curve containment at e = 0.3")
{
    const AtlasConfig cfg = quick_cfg();
    const CurveSample cs = trace_curves_at(0.3, cfg);
    CHECK(cs.alpha_k <= cs.alpha_s + 1e-7);
    CHECK(cs.alpha_s <= cs.alpha_m + 1e-12);
    CHECK(cs.alpha_m < 3.0);

    // nu_{-1} >= 1 at the traced degeneracy points.
    for (double a : {cs.alpha_s, cs.alpha_m}) {
        const IndexRecord rec = morse_index(a, 0.3, Cplx(-1.0, 0.0), 64);
        CHECK(rec.nu_omega >= 1);
    }
    // Just below alpha_k the spectrum stays away from U.
    const ScanRecord below = evaluate_point(cs.alpha_k - 1e-4, 0.3, cfg, false);
    CHECK(below.verdict == "Hyperbolic");
}

TEST_CASE("scan-ae rows match the circular-corollary verdicts")
{
    const AtlasConfig cfg = quick_cfg();
    const ScanRecord r1 = evaluate_point(2.9, 0.0, cfg);
    CHECK(r1.verdict == "StronglyLinearlyStable");
    CHECK(r1.theta1 > PI);
    CHECK(r1.theta2 > PI);
    CHECK(r1.im1 == 2);
    CHECK(r1.i1 == 0);

    const ScanRecord r2 = evaluate_point(1.0, 0.0, cfg);
    CHECK(r2.form == "ComplexSaddle");
    CHECK(r2.verdict == "Hyperbolic");

    // Full-pipeline verdict at (2, 0.5) must match the i_{-1} region.
    const ScanRecord r3 = evaluate_point(2.0, 0.5, cfg);
    CHECK(r3.error.empty());
    if (r3.im1 == 0 && r3.verdict != "Hyperbolic") {
        CHECK(r3.verdict == "StronglyLinearlyStable");
        CHECK(r3.theta1 < PI);
    }
    if (r3.im1 == 1) CHECK(r3.verdict == "EllipticHyperbolic");
    if (r3.im1 == 2) CHECK(r3.verdict == "StronglyLinearlyStable");
}

TEST_CASE("scan_alpha_e: grid shape, self-consistency, determinism")
{
    const AtlasConfig cfg = quick_cfg();
    const auto rows = scan_alpha_e(0.5, 2.9, 4, 0.0, 0.4, 3, cfg);
    REQUIRE(rows.size() == 12);
    for (const auto& r : rows) {
        if (!r.error.empty()) continue;
        const ScanRecord again = evaluate_point(r.alpha, r.e, cfg, false);
        CHECK(again.form == r.form);
        CHECK(again.verdict == r.verdict);
    }
    const auto rows2 = scan_alpha_e(0.5, 2.9, 4, 0.0, 0.4, 3, cfg);
    CHECK(scan_ae_csv(rows, "t") == scan_ae_csv(rows2, "t"));
}

TEST_CASE("verdict-region concordance along e = 0")
{
    const AtlasConfig cfg = quick_cfg();
    for (double alpha : {0.3, 1.2, 2.5, 2.84, 2.86, 2.9, 2.99}) {
        const ScanRecord r = evaluate_point(alpha, 0.0, cfg, false);
        if (r.marginal) continue;
        CHECK(r.verdict == circular_verdict_oracle(alpha));
    }
}

TEST_CASE("scan_mass_plane: symmetric diagonal behavior at e = 0")
{
    const AtlasConfig cfg = quick_cfg();
    // m1 = m3 = 0.05, m2 = 0.9: stable (Theorem's window).
    const auto stable_rows = scan_mass_plane(0.05, 0.05, 1, 0.05, 0.05, 1, 0.0, cfg);
    REQUIRE(stable_rows.size() == 1);
    CHECK(stable_rows[0].error.empty());
    CHECK(stable_rows[0].verdict == "StronglyLinearlyStable");
    CHECK(stable_rows[0].x == doctest::Approx(1.0).epsilon(1e-10));

    // m2 = 0.5 on the diagonal: alpha < 2 sqrt 2, unstable.
    const auto unstable_rows = scan_mass_plane(0.25, 0.25, 1, 0.25, 0.25, 1, 0.0, cfg);
    REQUIRE(unstable_rows.size() == 1);
    CHECK(unstable_rows[0].verdict == "Hyperbolic");
    CHECK(unstable_rows[0].alpha < 2.0 * std::sqrt(2.0));
    CHECK(unstable_rows[0].alpha ==
          doctest::Approx(symmetric_alpha(0.5)).epsilon(1e-9));

    // Generic point: cross-check alpha against the direct D eigen-split.
    const auto generic = scan_mass_plane(0.1, 0.1, 1, 0.3, 0.3, 1, 0.0, cfg);
    REQUIRE(generic.size() == 1);
    CHECK(generic[0].error.empty());
    const CentralConfiguration cc =
        central_configuration(MassTriple{0.1, 0.6, 0.3});
    CHECK(generic[0].alpha ==
          doctest::Approx(eigen_split(build_D(cc)).alpha).epsilon(1e-12));

    // Off-simplex rows carry an error but the scan continues.
    const auto bad = scan_mass_plane(0.6, 0.6, 1, 0.5, 0.5, 1, 0.0, cfg);
    REQUIRE(bad.size() == 1);
    CHECK(!bad[0].error.empty());
    CHECK(bad[0].form == "ERROR");
}

TEST_CASE("symmetric sweep and the e = 0 threshold")
{
    const AtlasConfig cfg = quick_cfg();
    const auto rows = symmetric_sweep({0.0, 0.5, 0.9}, 0.0, cfg);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].alpha == doctest::Approx(1.5).epsilon(1e-10));
    CHECK(!rows[0].stable);
    CHECK(!rows[1].stable);
    CHECK(rows[2].stable);

    double alpha_at = 0.0;
    const double m2s = symmetric_threshold(0.0, cfg, &alpha_at);
    CHECK(std::abs(m2s - 0.854) <= 1e-3);
    CHECK(std::abs(alpha_at - 2.0 * std::sqrt(2.0)) <= 1e-5);
}

TEST_CASE("csv emitters: schema headers")
{
    CHECK(scan_ae_csv({}, "note").find(
              "alpha,e,i1,im1,nu1,num1,form,verdict,theta1,theta2,residual") !=
          std::string::npos);
    CHECK(scan_mass_csv({}, "").find("m1,m2,m3,x,a4x,a4y,alpha,form,verdict") !=
          std::string::npos);
    CHECK(curves_csv({}, "").find("e,alpha_k,alpha_s,alpha_m") != std::string::npos);
    CHECK(symmetric_csv({}, "").find("m2,y,z,alpha,form,verdict") != std::string::npos);
}

TEST_CASE("cli: trace-curves --e 0 prints the circular constants")
{
    // Route through the real entry point with an output file.
    const char* argv[] = {"ere",  "trace-curves", "--e", "0",
                          "--out", "test_cli_curves.csv"};
    const int rc = cli_main(6, argv);
    CHECK(rc == 0);
    std::FILE* f = std::fopen("test_cli_curves.csv", "rb");
    REQUIRE(f != nullptr);
    char buf[4096];
    const std::size_t n = std::fread(buf, 1, sizeof(buf) - 1, f);
    buf[n] = '\0';
    std::fclose(f);
    const std::string text(buf);
    CHECK(text.find("2.828427") != std::string::npos);
    CHECK(text.find("2.872281") != std::string::npos);
    std::remove("test_cli_curves.csv");
}

TEST_CASE("cli: unknown flags exit with code 1 plus usage text")
{
    const char* argv[] = {"ere", "scan-ae", "--bogus-flag", "1"};
    CHECK(cli_main(4, argv) != 0);
}
