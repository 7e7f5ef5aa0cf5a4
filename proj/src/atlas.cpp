#include "ere/atlas.hpp"

#include <cmath>
#include <cstdio>
#include <nlohmann/json.hpp>

#include "ere/parallel.hpp"

namespace ere {

namespace {

int steps_for(const AtlasConfig& cfg, double e)
{
    return cfg.steps > 0 ? cfg.steps : default_steps(e);
}

Mat4 period_map_at(double alpha, double e, const AtlasConfig& cfg, double* residual)
{
    const LinearSystemCoeff coeff = build_B(reduced_params_alpha(alpha, e));
    const SymplecticPath path = integrate_path(coeff, steps_for(cfg, e), cfg.stride);
    if (residual) *residual = path.sympl_residual;
    return path.period_map;
}

bool spectrum_meets_unit_circle(double alpha, double e, const AtlasConfig& cfg)
{
    double res = 0.0;
    const Mat4 M = period_map_at(alpha, e, cfg, &res);
    return eigenstructure(M, cfg.unit_tol).unit_distance() <= cfg.unit_tol;
}

}  // namespace

ScanRecord evaluate_point(double alpha, double e, const AtlasConfig& cfg, bool with_indices)
{
    ScanRecord row;
    row.alpha = alpha;
    row.e = e;
    try {
        double res = 0.0;
        const Mat4 M = period_map_at(alpha, e, cfg, &res);
        row.residual = res;
        const EigenStructure es = eigenstructure(M, cfg.unit_tol);
        const NormalForm nf = classify_normal_form(es, M, cfg.classify_tol);
        const StabilityVerdict sv = stability_verdict(nf);
        row.form = nf.label();
        row.verdict = verdict_name(sv.verdict);
        row.theta1 = nf.theta1;
        row.theta2 = nf.theta2;
        row.marginal = nf.marginal;
        if (with_indices) {
            const IndexRecord r1 =
                morse_index(alpha, e, Cplx(1.0, 0.0), cfg.galerkin_N0, cfg.galerkin_Nmax);
            const IndexRecord rm =
                morse_index(alpha, e, Cplx(-1.0, 0.0), cfg.galerkin_N0, cfg.galerkin_Nmax);
            row.i1 = r1.i_omega;
            row.nu1 = r1.nu_omega;
            row.im1 = rm.i_omega;
            row.num1 = rm.nu_omega;
            if (!r1.converged || !rm.converged) row.error = "index-unconverged";
        }
    } catch (const std::exception& ex) {
        row.error = ex.what();
        row.form = "ERROR";
        row.verdict = "ERROR";
    }
    return row;
}

std::vector<ScanRecord> scan_alpha_e(double alpha_lo, double alpha_hi, int n_alpha,
                                     double e_lo, double e_hi, int n_e,
                                     const AtlasConfig& cfg)
{
    if (n_alpha < 1 || n_e < 1) throw std::domain_error("scan_alpha_e: empty grid");
    if (e_hi >= cfg.e_max + 1e-15)
        throw std::domain_error("scan_alpha_e: e range exceeds e_max");
    std::vector<ScanRecord> rows(static_cast<std::size_t>(n_alpha) * n_e);
    parallel_for(
        rows.size(),
        [&](std::size_t idx) {
            const int ia = static_cast<int>(idx) / n_e;
            const int ie = static_cast<int>(idx) % n_e;
            const double alpha =
                n_alpha == 1 ? alpha_lo
                             : alpha_lo + ia * (alpha_hi - alpha_lo) / (n_alpha - 1);
            const double e = n_e == 1 ? e_lo : e_lo + ie * (e_hi - e_lo) / (n_e - 1);
            rows[idx] = evaluate_point(alpha, e, cfg);
        },
        cfg.threads);
    return rows;
}

namespace {

/// First alpha in (lo, hi] where i_{-1} reaches `level`, assuming it does.
double bisect_index_jump(double e, int level, double lo, double hi,
                         const AtlasConfig& cfg)
{
    auto im1 = [&](double a) {
        return morse_index(a, e, Cplx(-1.0, 0.0), cfg.galerkin_N0, cfg.galerkin_Nmax).i_omega;
    };
    while (hi - lo > cfg.curve_bracket) {
        const double mid = 0.5 * (lo + hi);
        (im1(mid) >= level ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

CurveSample trace_curves_at(double e, const AtlasConfig& cfg)
{
    CurveSample out;
    out.e = e;

    // Coarse i_{-1} profile.
    const int coarse = 61;
    std::vector<int> prof(coarse);
    std::vector<double> alphas(coarse);
    parallel_for(
        static_cast<std::size_t>(coarse),
        [&](std::size_t i) {
            alphas[i] = 3.0 * static_cast<double>(i) / (coarse - 1);
            prof[i] = morse_index(alphas[i], e, Cplx(-1.0, 0.0), cfg.galerkin_N0,
                                  cfg.galerkin_Nmax)
                          .i_omega;
        },
        cfg.threads);
    for (int i = 1; i < coarse; ++i)
        if (prof[static_cast<std::size_t>(i)] < prof[static_cast<std::size_t>(i - 1)])
            throw InconsistencyError("trace_curves: i_{-1} profile not non-decreasing");
    if (prof.front() != 0 || prof.back() != 2)
        throw InconsistencyError("trace_curves: total i_{-1} jump is not 2");

    auto first_at_least = [&](int level) {
        for (int i = 0; i < coarse; ++i)
            if (prof[static_cast<std::size_t>(i)] >= level) return i;
        return coarse - 1;
    };
    const int is = first_at_least(1);
    const int im = first_at_least(2);
    out.alpha_s = bisect_index_jump(e, 1, alphas[static_cast<std::size_t>(is - 1)],
                                    alphas[static_cast<std::size_t>(is)], cfg);
    out.alpha_m = bisect_index_jump(e, 2, alphas[static_cast<std::size_t>(im - 1)],
                                    alphas[static_cast<std::size_t>(im)], cfg);
    out.width_s = out.width_m = cfg.curve_bracket;
    out.coincident_sm = std::abs(out.alpha_m - out.alpha_s) <= 2.0 * cfg.curve_bracket;
    if (out.coincident_sm) {
        const double mid = 0.5 * (out.alpha_s + out.alpha_m);
        out.alpha_s = out.alpha_m = mid;
    }

    // Gamma_k: boundary of the hyperbolic region.
    double lo = 0.0, hi = out.alpha_s + 1e-6;
    if (spectrum_meets_unit_circle(lo, e, cfg))
        throw InconsistencyError("trace_curves: alpha = 0 is not hyperbolic");
    while (hi - lo > cfg.curve_bracket) {
        const double mid = 0.5 * (lo + hi);
        (spectrum_meets_unit_circle(mid, e, cfg) ? hi : lo) = mid;
    }
    out.alpha_k = 0.5 * (lo + hi);
    out.width_k = cfg.curve_bracket;

    if (!(out.alpha_k <= out.alpha_s + 1e-7 && out.alpha_s <= out.alpha_m + 1e-12 &&
          out.alpha_m < 3.0))
        throw InconsistencyError("trace_curves: curve ordering alpha_k <= alpha_s <= alpha_m < 3 violated");
    return out;
}

std::vector<CurveSample> trace_curves(const std::vector<double>& es, const AtlasConfig& cfg)
{
    std::vector<CurveSample> out(es.size());
    for (std::size_t i = 0; i < es.size(); ++i) out[i] = trace_curves_at(es[i], cfg);
    return out;
}

std::vector<ScanRecord> scan_mass_plane(double m1_lo, double m1_hi, int n1, double m3_lo,
                                        double m3_hi, int n3, double e,
                                        const AtlasConfig& cfg)
{
    if (n1 < 1 || n3 < 1) throw std::domain_error("scan_mass_plane: empty grid");
    std::vector<ScanRecord> rows(static_cast<std::size_t>(n1) * n3);
    parallel_for(
        rows.size(),
        [&](std::size_t idx) {
            const int i1 = static_cast<int>(idx) / n3;
            const int i3 = static_cast<int>(idx) % n3;
            const double m1 = n1 == 1 ? m1_lo : m1_lo + i1 * (m1_hi - m1_lo) / (n1 - 1);
            const double m3 = n3 == 1 ? m3_lo : m3_lo + i3 * (m3_hi - m3_lo) / (n3 - 1);
            ScanRecord row;
            row.e = e;
            row.has_masses = true;
            row.m1 = m1;
            row.m3 = m3;
            row.m2 = 1.0 - m1 - m3;
            try {
                if (!(m1 > 0.0 && m3 > 0.0 && row.m2 > 0.0))
                    throw std::domain_error("masses outside the open simplex");
                const MassTriple masses{m1, row.m2, m3};
                const CentralConfiguration cc = central_configuration(masses);
                const ReducedParams params = reduced_params(cc, e);
                row.x = cc.x;
                row.a4 = cc.a4;
                row.alpha = params.alpha;
                double res = 0.0;
                const Mat4 M = period_map_at(params.alpha, e, cfg, &res);
                row.residual = res;
                const EigenStructure ess = eigenstructure(M, cfg.unit_tol);
                const NormalForm nf = classify_normal_form(ess, M, cfg.classify_tol);
                row.form = nf.label();
                row.verdict = verdict_name(stability_verdict(nf).verdict);
                row.theta1 = nf.theta1;
                row.theta2 = nf.theta2;
                row.marginal = nf.marginal;
            } catch (const std::exception& ex) {
                row.error = ex.what();
                row.form = "ERROR";
                row.verdict = "ERROR";
            }
            rows[idx] = row;
        },
        cfg.threads);
    return rows;
}

std::vector<SymmetricSample> symmetric_sweep(const std::vector<double>& m2s, double e,
                                             const AtlasConfig& cfg)
{
    std::vector<SymmetricSample> rows(m2s.size());
    parallel_for(
        m2s.size(),
        [&](std::size_t i) {
            SymmetricSample s;
            s.m2 = m2s[i];
            const SymmetricChain chain = symmetric_chain(s.m2);
            s.y = chain.y;
            s.z = chain.z;
            s.alpha = chain.alpha;
            const ScanRecord rec = evaluate_point(s.alpha, e, cfg, false);
            s.form = rec.form;
            s.verdict = rec.verdict;
            s.stable = rec.verdict == "StronglyLinearlyStable" ||
                       rec.verdict == "LinearlyStableNotStrong";
            rows[i] = s;
        },
        cfg.threads);
    return rows;
}

double symmetric_threshold(double e, const AtlasConfig& cfg, double* alpha_at)
{
    auto stable_side = [&](double m2) {
        const double a = symmetric_alpha(m2);
        return spectrum_meets_unit_circle(a, e, cfg);
    };
    double lo = 1e-6, hi = 1.0 - 1e-9;
    if (stable_side(lo))
        throw InconsistencyError("symmetric_threshold: m2 -> 0 side is not hyperbolic");
    if (!stable_side(hi))
        throw InconsistencyError("symmetric_threshold: m2 -> 1 side is not stable");
    for (int it = 0; it < 80 && hi - lo > 1e-10; ++it) {
        const double mid = 0.5 * (lo + hi);
        (stable_side(mid) ? hi : lo) = mid;
    }
    const double m2 = 0.5 * (lo + hi);
    if (alpha_at) *alpha_at = symmetric_alpha(m2);
    return m2;
}

// --- emission ---------------------------------------------------------

namespace {

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

std::string scan_ae_csv(const std::vector<ScanRecord>& rows, const std::string& header_note)
{
    std::string out;
    if (!header_note.empty()) out += "# " + header_note + "\n";
    out += "alpha,e,i1,im1,nu1,num1,form,verdict,theta1,theta2,residual\n";
    for (const auto& r : rows) {
        out += fmt(r.alpha) + "," + fmt(r.e) + "," + std::to_string(r.i1) + "," +
               std::to_string(r.im1) + "," + std::to_string(r.nu1) + "," +
               std::to_string(r.num1) + "," + r.form + "," + r.verdict + "," +
               fmt(r.theta1) + "," + fmt(r.theta2) + "," + fmt(r.residual) + "\n";
    }
    return out;
}

std::string scan_mass_csv(const std::vector<ScanRecord>& rows, const std::string& header_note)
{
    std::string out;
    if (!header_note.empty()) out += "# " + header_note + "\n";
    out += "m1,m2,m3,x,a4x,a4y,alpha,form,verdict\n";
    for (const auto& r : rows) {
        out += fmt(r.m1) + "," + fmt(r.m2) + "," + fmt(r.m3) + "," + fmt(r.x) + "," +
               fmt(r.a4.x()) + "," + fmt(r.a4.y()) + "," + fmt(r.alpha) + "," + r.form +
               "," + r.verdict + "\n";
    }
    return out;
}

std::string curves_csv(const std::vector<CurveSample>& rows, const std::string& header_note)
{
    std::string out;
    if (!header_note.empty()) out += "# " + header_note + "\n";
    out += "e,alpha_k,alpha_s,alpha_m,width_k,width_s,width_m,coincident_sm\n";
    for (const auto& r : rows) {
        out += fmt(r.e) + "," + fmt(r.alpha_k) + "," + fmt(r.alpha_s) + "," +
               fmt(r.alpha_m) + "," + fmt(r.width_k) + "," + fmt(r.width_s) + "," +
               fmt(r.width_m) + "," + (r.coincident_sm ? "1" : "0") + "\n";
    }
    return out;
}

std::string symmetric_csv(const std::vector<SymmetricSample>& rows,
                          const std::string& header_note)
{
    std::string out;
    if (!header_note.empty()) out += "# " + header_note + "\n";
    out += "m2,y,z,alpha,form,verdict\n";
    for (const auto& r : rows) {
        out += fmt(r.m2) + "," + fmt(r.y) + "," + fmt(r.z) + "," + fmt(r.alpha) + "," +
               r.form + "," + r.verdict + "\n";
    }
    return out;
}

namespace {

nlohmann::json record_json(const ScanRecord& r, bool mass_fields)
{
    nlohmann::json j{{"alpha", r.alpha}, {"e", r.e},       {"i1", r.i1},
                     {"im1", r.im1},     {"nu1", r.nu1},   {"num1", r.num1},
                     {"form", r.form},   {"verdict", r.verdict},
                     {"theta1", r.theta1}, {"theta2", r.theta2},
                     {"residual", r.residual}};
    if (mass_fields) {
        j["m1"] = r.m1;
        j["m2"] = r.m2;
        j["m3"] = r.m3;
        j["x"] = r.x;
        j["a4x"] = r.a4.x();
        j["a4y"] = r.a4.y();
    }
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

}  // namespace

std::string scan_ae_json(const std::vector<ScanRecord>& rows)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) arr.push_back(record_json(r, false));
    return arr.dump(2) + "\n";
}

std::string scan_mass_json(const std::vector<ScanRecord>& rows)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) arr.push_back(record_json(r, true));
    return arr.dump(2) + "\n";
}

std::string curves_json(const std::vector<CurveSample>& rows)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows)
        arr.push_back({{"e", r.e},
                       {"alpha_k", r.alpha_k},
                       {"alpha_s", r.alpha_s},
                       {"alpha_m", r.alpha_m},
                       {"width_k", r.width_k},
                       {"width_s", r.width_s},
                       {"width_m", r.width_m},
                       {"coincident_sm", r.coincident_sm}});
    return arr.dump(2) + "\n";
}

std::string symmetric_json(const std::vector<SymmetricSample>& rows)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows)
        arr.push_back({{"m2", r.m2},
                       {"y", r.y},
                       {"z", r.z},
                       {"alpha", r.alpha},
                       {"form", r.form},
                       {"verdict", r.verdict}});
    return arr.dump(2) + "\n";
}

}  // namespace ere
