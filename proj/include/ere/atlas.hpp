#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ere/maslov.hpp"
#include "ere/monodromy.hpp"
#include "ere/reduction.hpp"
#include "ere/spectral.hpp"

namespace ere {

struct AtlasConfig {
    int steps = 0;          // 0 -> default_steps(e)
    int stride = 32;
    int galerkin_N0 = 32;   // scan-time cutoff; standalone index queries use 128
    int galerkin_Nmax = 1024;
    double unit_tol = 1e-8;
    double classify_tol = 1e-8;
    int threads = 0;        // 0 -> ERE_THREADS or hardware
    double e_max = 0.99;
    double curve_bracket = 1e-8;  // bisection width for traced curves
};

struct ScanRecord {
    double alpha = 0.0;
    double e = 0.0;
    bool has_masses = false;
    double m1 = 0.0, m2 = 0.0, m3 = 0.0, x = 0.0;
    Vec2 a4 = Vec2::Zero();
    int i1 = 0, im1 = 0, nu1 = 0, num1 = 0;
    std::string form;
    std::string verdict;
    double theta1 = 0.0, theta2 = 0.0;
    double residual = 0.0;
    bool marginal = false;
    std::string error;  // per-row failure note; scan continues
};

/// Monodromy, classification and omega = +-1 index records at one (alpha, e).
ScanRecord evaluate_point(double alpha, double e, const AtlasConfig& cfg,
                          bool with_indices = true);

std::vector<ScanRecord> scan_alpha_e(double alpha_lo, double alpha_hi, int n_alpha,
                                     double e_lo, double e_hi, int n_e,
                                     const AtlasConfig& cfg);

struct CurveSample {
    double e = 0.0;
    double alpha_k = 0.0, alpha_s = 0.0, alpha_m = 0.0;
    double width_k = 0.0, width_s = 0.0, width_m = 0.0;
    bool coincident_sm = false;  // brackets for alpha_s and alpha_m merged
};

/// Gamma_k by bisection of the spectrum-meets-U predicate, Gamma_s / Gamma_m
/// by bisection on the integer jumps of i_{-1}(alpha). Throws
/// InconsistencyError when the index profile does not rise 0 -> 2.
CurveSample trace_curves_at(double e, const AtlasConfig& cfg);
std::vector<CurveSample> trace_curves(const std::vector<double>& es, const AtlasConfig& cfg);

std::vector<ScanRecord> scan_mass_plane(double m1_lo, double m1_hi, int n1,
                                        double m3_lo, double m3_hi, int n3, double e,
                                        const AtlasConfig& cfg);

struct SymmetricSample {
    double m2 = 0.0, y = 0.0, z = 0.0, alpha = 0.0;
    std::string form;
    std::string verdict;
    bool stable = false;
};

std::vector<SymmetricSample> symmetric_sweep(const std::vector<double>& m2s, double e,
                                             const AtlasConfig& cfg);

/// Stability onset in m2 for the symmetric family at eccentricity e: bisects
/// the hyperbolic-to-elliptic flip of the monodromy spectrum (the Gamma_k
/// crossing of the alpha(m2) path). Returns m2*, optionally alpha(m2*).
double symmetric_threshold(double e, const AtlasConfig& cfg, double* alpha_at = nullptr);

// --- emission ---------------------------------------------------------

std::string scan_ae_csv(const std::vector<ScanRecord>& rows, const std::string& header_note);
std::string scan_mass_csv(const std::vector<ScanRecord>& rows, const std::string& header_note);
std::string curves_csv(const std::vector<CurveSample>& rows, const std::string& header_note);
std::string symmetric_csv(const std::vector<SymmetricSample>& rows,
                          const std::string& header_note);

std::string scan_ae_json(const std::vector<ScanRecord>& rows);
std::string scan_mass_json(const std::vector<ScanRecord>& rows);
std::string curves_json(const std::vector<CurveSample>& rows);
std::string symmetric_json(const std::vector<SymmetricSample>& rows);

/// CLI entry point (subcommands cc, monodromy, index, classify, scan-ae,
/// scan-mass, trace-curves, symmetric, selftest). Returns the process exit
/// code: 0 success, 1 input error, 2 solver failure.
int cli_main(int argc, const char* const* argv);

}  // namespace ere
