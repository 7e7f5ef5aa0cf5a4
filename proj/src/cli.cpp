#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "ere/atlas.hpp"
#include "ere/central_config.hpp"
#include "ere/kepler.hpp"
#include "ere/maslov.hpp"
#include "ere/monodromy.hpp"
#include "ere/reduction.hpp"
#include "ere/spectral.hpp"

namespace ere {

namespace {

void write_output(const std::string& text, const std::string& out_path)
{
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << text;
}

std::vector<double> parse_list(const std::string& csv)
{
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

struct CommonOpts {
    AtlasConfig cfg;
    std::string out;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOpts& opts)
{
    cmd->add_option("--out", opts.out, "write output to this path instead of stdout");
    cmd->add_option("--format", opts.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--threads", opts.cfg.threads,
                    "worker threads (0 = ERE_THREADS env or hardware)");
    cmd->add_option("--steps", opts.cfg.steps,
                    "RK4 steps per period (0 = max(4096, 2000/(1-e)))");
    cmd->add_option("--n0", opts.cfg.galerkin_N0, "initial Galerkin cutoff for scans");
    cmd->add_option("--nmax", opts.cfg.galerkin_Nmax, "Galerkin cutoff ceiling");
    cmd->add_option("--emax", opts.cfg.e_max, "eccentricity cap");
    cmd->add_option("--tol", opts.cfg.unit_tol, "unit-circle tolerance");
}

int run_selftest(const AtlasConfig& cfg);

}  // namespace

int cli_main(int argc, const char* const* argv)
{
    CLI::App app{
        "ere: linear stability of the planar restricted 4-body problem with three\n"
        "collinear primaries on Kepler ellipses (monodromy, Maslov indices, normal\n"
        "forms, stability atlases)"};
    app.set_config("--config", "", "key=value config file (section [subcommand])");
    app.require_subcommand(1);

    // cc
    auto* cc_cmd = app.add_subcommand("cc", "central configuration for given masses");
    CommonOpts cc_opts;
    double m1 = 0.0, m2 = 0.0, m3 = 0.0;
    cc_cmd->add_option("--m1", m1, "mass of the first primary")->required();
    cc_cmd->add_option("--m2", m2, "mass of the middle primary")->required();
    cc_cmd->add_option("--m3", m3, "mass of the third primary")->required();
    add_common(cc_cmd, cc_opts);

    // monodromy
    auto* mono_cmd = app.add_subcommand("monodromy", "fundamental solution over one period");
    CommonOpts mono_opts;
    double mono_alpha = 1.5, mono_e = 0.0;
    int mono_stride = 32;
    std::string dump_path, dump_format = "csv";
    mono_cmd->add_option("--alpha", mono_alpha, "spectral gap of D, in [0,3]")->required();
    mono_cmd->add_option("--e", mono_e, "eccentricity")->required();
    mono_cmd->add_option("--stride", mono_stride, "sample stride");
    mono_cmd->add_option("--dump", dump_path, "write (theta, 16 row-major entries) samples");
    mono_cmd->add_option("--dump-format", dump_format, "sample dump format: csv or bin")
        ->check(CLI::IsMember({"csv", "bin"}));
    add_common(mono_cmd, mono_opts);

    // index
    auto* index_cmd = app.add_subcommand("index", "omega-Maslov index via Galerkin Morse counts");
    CommonOpts index_opts;
    index_opts.cfg.galerkin_N0 = 128;
    double idx_alpha = 1.5, idx_e = 0.0, idx_rho = 0.5, idx_beta = -1.0;
    bool idx_doubled = false;
    index_cmd->add_option("--alpha", idx_alpha, "spectral gap of D, in [0,3]");
    index_cmd->add_option("--beta", idx_beta,
                          "Lagrangian parameter beta = 9 - alpha^2 (overrides --alpha)");
    index_cmd->add_option("--e", idx_e, "eccentricity")->required();
    index_cmd->add_option("--rho", idx_rho, "omega = exp(2 pi i rho), rho in [0,1)");
    index_cmd->add_flag("--doubled", idx_doubled, "index of the doubled-period problem");
    add_common(index_cmd, index_opts);

    // classify
    auto* cls_cmd = app.add_subcommand("classify", "normal form and stability verdict");
    CommonOpts cls_opts;
    double cls_alpha = 1.5, cls_e = 0.0;
    cls_cmd->add_option("--alpha", cls_alpha, "spectral gap of D, in [0,3]")->required();
    cls_cmd->add_option("--e", cls_e, "eccentricity")->required();
    add_common(cls_cmd, cls_opts);

    // scan-ae
    auto* sae_cmd = app.add_subcommand("scan-ae", "(alpha, e) stability map");
    CommonOpts sae_opts;
    double a_lo = 0.0, a_hi = 3.0, e_lo = 0.0, e_hi = 0.8;
    int na = 301, ne = 101;
    sae_cmd->add_option("--alpha-min", a_lo, "alpha range start");
    sae_cmd->add_option("--alpha-max", a_hi, "alpha range end");
    sae_cmd->add_option("--na", na, "alpha grid size");
    sae_cmd->add_option("--e-min", e_lo, "eccentricity range start");
    sae_cmd->add_option("--e-max", e_hi, "eccentricity range end");
    sae_cmd->add_option("--ne", ne, "eccentricity grid size");
    add_common(sae_cmd, sae_opts);

    // scan-mass
    auto* sm_cmd = app.add_subcommand("scan-mass", "(m1, m3) mass-plane stability map");
    CommonOpts sm_opts;
    double m1_lo = 0.005, m1_hi = 0.99, m3_lo = 0.005, m3_hi = 0.99, sm_e = 0.0;
    int n1 = 201, n3 = 201;
    sm_cmd->add_option("--m1-min", m1_lo, "m1 range start");
    sm_cmd->add_option("--m1-max", m1_hi, "m1 range end");
    sm_cmd->add_option("--n1", n1, "m1 grid size");
    sm_cmd->add_option("--m3-min", m3_lo, "m3 range start");
    sm_cmd->add_option("--m3-max", m3_hi, "m3 range end");
    sm_cmd->add_option("--n3", n3, "m3 grid size");
    sm_cmd->add_option("--e", sm_e, "eccentricity");
    add_common(sm_cmd, sm_opts);

    // trace-curves
    auto* tc_cmd = app.add_subcommand("trace-curves",
                                      "alpha_k, alpha_s, alpha_m at given eccentricities");
    CommonOpts tc_opts;
    std::string tc_elist;
    double tc_e = -1.0, tc_e_min = 0.0, tc_e_max = 0.8;
    int tc_ne = 0;
    tc_cmd->add_option("--e", tc_e, "single eccentricity");
    tc_cmd->add_option("--e-list", tc_elist, "comma-separated eccentricities");
    tc_cmd->add_option("--e-min", tc_e_min, "range start (with --ne)");
    tc_cmd->add_option("--e-max", tc_e_max, "range end (with --ne)");
    tc_cmd->add_option("--ne", tc_ne, "range size");
    add_common(tc_cmd, tc_opts);

    // symmetric
    auto* sym_cmd = app.add_subcommand("symmetric", "m1 = m3 sweep over m2");
    CommonOpts sym_opts;
    double sym_e = 0.0, sym_lo = 0.0, sym_hi = 0.995;
    int sym_n = 200;
    bool find_threshold = false;
    sym_cmd->add_option("--e", sym_e, "eccentricity");
    sym_cmd->add_option("--m2-min", sym_lo, "m2 range start");
    sym_cmd->add_option("--m2-max", sym_hi, "m2 range end");
    sym_cmd->add_option("--n", sym_n, "grid size");
    sym_cmd->add_flag("--find-threshold", find_threshold,
                      "bisect the stability onset m2* instead of sweeping");
    add_common(sym_cmd, sym_opts);

    // selftest
    auto* st_cmd = app.add_subcommand("selftest", "run the built-in verification table");
    CommonOpts st_opts;
    add_common(st_cmd, st_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*cc_cmd) {
            const MassTriple masses = MassTriple::normalized(m1, m2, m3);
            const CentralConfiguration cc = central_configuration(masses);
            const ReducedParams params = reduced_params(cc, 0.0);
            nlohmann::json j{{"m1", masses.m1},
                             {"m2", masses.m2},
                             {"m3", masses.m3},
                             {"x", cc.x},
                             {"a1", {cc.a1.x(), cc.a1.y()}},
                             {"a2", {cc.a2.x(), cc.a2.y()}},
                             {"a3", {cc.a3.x(), cc.a3.y()}},
                             {"a4", {cc.a4.x(), cc.a4.y()}},
                             {"mu", cc.mu},
                             {"moment", cc.moment_of_inertia},
                             {"cc_residual", cc.cc_residual()},
                             {"mu_residual", cc.mu_residual()},
                             {"lambda3", params.lambda3},
                             {"lambda4", params.lambda4},
                             {"alpha", params.alpha}};
            if (cc_opts.format == "json") {
                write_output(j.dump(2) + "\n", cc_opts.out);
            } else {
                std::string s = "key,value\n";
                for (auto& [k, v] : j.items()) s += k + "," + v.dump() + "\n";
                write_output(s, cc_opts.out);
            }
            return 0;
        }

        if (*mono_cmd) {
            const AtlasConfig& cfg = mono_opts.cfg;
            const int steps = cfg.steps > 0 ? cfg.steps : default_steps(mono_e);
            const LinearSystemCoeff coeff =
                build_B(reduced_params_alpha(mono_alpha, mono_e));
            const SymplecticPath path = integrate_path(coeff, steps, mono_stride);
            if (!dump_path.empty()) {
                if (dump_format == "csv") {
                    std::string s =
                        "theta,x00,x01,x02,x03,x10,x11,x12,x13,x20,x21,x22,x23,x30,x31,"
                        "x32,x33\n";
                    char buf[40];
                    for (std::size_t k = 0; k < path.samples.size(); ++k) {
                        std::snprintf(buf, sizeof(buf), "%.12g", path.thetas[k]);
                        s += buf;
                        for (int r = 0; r < 4; ++r)
                            for (int c = 0; c < 4; ++c) {
                                std::snprintf(buf, sizeof(buf), ",%.12g",
                                              path.samples[k](r, c));
                                s += buf;
                            }
                        s += "\n";
                    }
                    std::ofstream f(dump_path, std::ios::binary);
                    f << s;
                } else {
                    std::ofstream f(dump_path, std::ios::binary);
                    for (std::size_t k = 0; k < path.samples.size(); ++k) {
                        f.write(reinterpret_cast<const char*>(&path.thetas[k]),
                                sizeof(double));
                        for (int r = 0; r < 4; ++r)
                            for (int c = 0; c < 4; ++c) {
                                const double v = path.samples[k](r, c);
                                f.write(reinterpret_cast<const char*>(&v), sizeof(double));
                            }
                    }
                }
            }
            nlohmann::json j{{"alpha", mono_alpha},
                             {"e", mono_e},
                             {"steps", steps},
                             {"sympl_residual", path.sympl_residual},
                             {"reliable", path.reliable}};
            std::vector<double> entries;
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) entries.push_back(path.period_map(r, c));
            j["period_map_row_major"] = entries;
            const EigenStructure es = eigenstructure(path.period_map, cfg.unit_tol);
            nlohmann::json evs = nlohmann::json::array();
            for (const auto& l : es.eigenvalues) evs.push_back({l.real(), l.imag()});
            j["eigenvalues"] = evs;
            if (mono_opts.format == "json") {
                write_output(j.dump(2) + "\n", mono_opts.out);
            } else {
                std::ostringstream os;
                os << "# monodromy alpha=" << mono_alpha << " e=" << mono_e
                   << " steps=" << steps << "\n";
                os << "sympl_residual," << path.sympl_residual << "\n";
                os.precision(15);
                for (int r = 0; r < 4; ++r) {
                    os << path.period_map(r, 0);
                    for (int c = 1; c < 4; ++c) os << "," << path.period_map(r, c);
                    os << "\n";
                }
                write_output(os.str(), mono_opts.out);
            }
            return 0;
        }

        if (*index_cmd) {
            const AtlasConfig& cfg = index_opts.cfg;
            double alpha = idx_alpha;
            if (idx_beta >= 0.0) alpha = std::sqrt(9.0 - idx_beta);
            const Cplx omega = std::polar(1.0, TWO_PI * idx_rho);
            const IndexRecord rec =
                idx_doubled
                    ? morse_index(alpha, idx_e, omega, 2 * cfg.galerkin_N0,
                                  2 * cfg.galerkin_Nmax, 2)
                    : morse_index(alpha, idx_e, omega, cfg.galerkin_N0, cfg.galerkin_Nmax);
            nlohmann::json j{{"alpha", alpha},       {"e", idx_e},
                             {"rho", idx_rho},       {"i_omega", rec.i_omega},
                             {"nu_omega", rec.nu_omega}, {"N_used", rec.N_used},
                             {"converged", rec.converged}};
            if (index_opts.format == "json")
                write_output(j.dump(2) + "\n", index_opts.out);
            else {
                std::string s = "key,value\n";
                for (auto& [k, v] : j.items()) s += k + "," + v.dump() + "\n";
                write_output(s, index_opts.out);
            }
            return rec.converged ? 0 : 2;
        }

        if (*cls_cmd) {
            const AtlasConfig& cfg = cls_opts.cfg;
            const ScanRecord row = evaluate_point(cls_alpha, cls_e, cfg, true);
            if (!row.error.empty() && row.form == "ERROR")
                throw SolverFailure("classify failed: " + row.error);
            nlohmann::json j{{"alpha", row.alpha},     {"e", row.e},
                             {"form", row.form},       {"verdict", row.verdict},
                             {"theta1", row.theta1},   {"theta2", row.theta2},
                             {"i1", row.i1},           {"im1", row.im1},
                             {"nu1", row.nu1},         {"num1", row.num1},
                             {"residual", row.residual}};
            if (cls_opts.format == "json")
                write_output(j.dump(2) + "\n", cls_opts.out);
            else {
                std::string s = "key,value\n";
                for (auto& [k, v] : j.items()) s += k + "," + v.dump() + "\n";
                write_output(s, cls_opts.out);
            }
            return 0;
        }

        if (*sae_cmd) {
            const auto rows = scan_alpha_e(a_lo, a_hi, na, e_lo, e_hi, ne, sae_opts.cfg);
            std::ostringstream note;
            note << "ere scan-ae alpha=[" << a_lo << "," << a_hi << "]x" << na << " e=["
                 << e_lo << "," << e_hi << "]x" << ne;
            write_output(sae_opts.format == "json" ? scan_ae_json(rows)
                                                   : scan_ae_csv(rows, note.str()),
                         sae_opts.out);
            return 0;
        }

        if (*sm_cmd) {
            const auto rows =
                scan_mass_plane(m1_lo, m1_hi, n1, m3_lo, m3_hi, n3, sm_e, sm_opts.cfg);
            std::ostringstream note;
            note << "ere scan-mass m1=[" << m1_lo << "," << m1_hi << "]x" << n1 << " m3=["
                 << m3_lo << "," << m3_hi << "]x" << n3 << " e=" << sm_e;
            write_output(sm_opts.format == "json" ? scan_mass_json(rows)
                                                  : scan_mass_csv(rows, note.str()),
                         sm_opts.out);
            return 0;
        }

        if (*tc_cmd) {
            std::vector<double> es;
            if (tc_e >= 0.0) es.push_back(tc_e);
            for (double v : parse_list(tc_elist)) es.push_back(v);
            if (tc_ne > 0)
                for (int i = 0; i < tc_ne; ++i)
                    es.push_back(tc_ne == 1 ? tc_e_min
                                            : tc_e_min +
                                                  i * (tc_e_max - tc_e_min) / (tc_ne - 1));
            if (es.empty()) throw std::domain_error("trace-curves: no eccentricities given");
            const auto rows = trace_curves(es, tc_opts.cfg);
            std::ostringstream note;
            note << "ere trace-curves (" << rows.size() << " eccentricities)";
            write_output(tc_opts.format == "json" ? curves_json(rows)
                                                  : curves_csv(rows, note.str()),
                         tc_opts.out);
            return 0;
        }

        if (*sym_cmd) {
            if (find_threshold) {
                double alpha_at = 0.0;
                const double m2s = symmetric_threshold(sym_e, sym_opts.cfg, &alpha_at);
                nlohmann::json j{{"e", sym_e}, {"m2_threshold", m2s}, {"alpha", alpha_at}};
                if (sym_opts.format == "json")
                    write_output(j.dump(2) + "\n", sym_opts.out);
                else {
                    std::ostringstream os;
                    os << "e,m2_threshold,alpha\n"
                       << sym_e << "," << m2s << "," << alpha_at << "\n";
                    write_output(os.str(), sym_opts.out);
                }
                return 0;
            }
            std::vector<double> grid;
            for (int i = 0; i < sym_n; ++i)
                grid.push_back(sym_n == 1 ? sym_lo
                                          : sym_lo + i * (sym_hi - sym_lo) / (sym_n - 1));
            const auto rows = symmetric_sweep(grid, sym_e, sym_opts.cfg);
            std::ostringstream note;
            note << "ere symmetric e=" << sym_e;
            write_output(sym_opts.format == "json" ? symmetric_json(rows)
                                                   : symmetric_csv(rows, note.str()),
                         sym_opts.out);
            return 0;
        }

        if (*st_cmd) return run_selftest(st_opts.cfg);
    } catch (const SolverFailure& ex) {
        std::cerr << "solver failure: " << ex.what() << "\n";
        return 2;
    } catch (const IntegrationFailure& ex) {
        std::cerr << "integration failure: " << ex.what() << "\n";
        return 2;
    } catch (const InconsistencyError& ex) {
        std::cerr << "inconsistency: " << ex.what() << "\n";
        return 2;
    } catch (const std::domain_error& ex) {
        std::cerr << "input error: " << ex.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "input error: " << ex.what() << "\n";
        return 1;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}

namespace {

struct SelfTest {
    int failures = 0;
    void check(const std::string& name, bool ok, const std::string& detail = "")
    {
        std::printf("[%s] %-52s %s\n", ok ? "ok" : "FAIL", name.c_str(), detail.c_str());
        if (!ok) ++failures;
    }
};

int run_selftest(const AtlasConfig& cfg_in)
{
    AtlasConfig cfg = cfg_in;
    SelfTest t;
    char buf[160];

    // Symmetric quintic root.
    {
        const double x = solve_euler_quintic(MassTriple{0.3, 0.4, 0.3});
        std::snprintf(buf, sizeof(buf), "x=%.3e", std::abs(x - 1.0));
        t.check("quintic: m1=m3 gives x=1", std::abs(x - 1.0) <= 1e-12, buf);
    }
    // Symmetric positions.
    {
        const MassTriple m{0.3, 0.4, 0.3};
        const CentralConfiguration cc = build_collinear_cc(m, 1.0);
        const double want = -1.0 / std::sqrt(1.0 - 0.4);
        t.check("collinear cc: a1 = (-(1-m2)^{-1/2}, 0)",
                std::abs(cc.a1.x() - want) <= 1e-12 && std::abs(cc.a1.y()) == 0.0);
    }
    // Symmetric y endpoints.
    {
        const double y0 = solve_symmetric_y(0.0);
        const double y1 = solve_symmetric_y(1.0 - 1e-8);
        std::snprintf(buf, sizeof(buf), "y(0)-sqrt3=%.2e y(1-)-1=%.2e",
                      y0 - std::sqrt(3.0), y1 - 1.0);
        t.check("symmetric y: y(0)=sqrt(3), y(1-)=1",
                std::abs(y0 - std::sqrt(3.0)) <= 1e-10 && std::abs(y1 - 1.0) <= 1e-3, buf);
    }
    // Symmetric alpha endpoints.
    {
        const double a0 = symmetric_alpha(0.0);
        const double a1 = symmetric_alpha(1.0 - 1e-8);
        t.check("symmetric alpha: 3/2 at m2=0, -> 3 at m2=1",
                std::abs(a0 - 1.5) <= 1e-10 && std::abs(a1 - 3.0) <= 1e-3);
    }
    // D at m2 = 0.
    {
        const MassTriple m{0.5 - 1e-13, 2e-13, 0.5 - 1e-13};
        const CentralConfiguration cc = central_configuration(m);
        const Mat2 D = build_D(cc);
        const double d_ok = std::abs(D(0, 0) - 0.75) + std::abs(D(1, 1) - 2.25) +
                            std::abs(D(0, 1)) + std::abs(D(1, 0));
        std::snprintf(buf, sizeof(buf), "|D-diag(3/4,9/4)|=%.2e", d_ok);
        t.check("D: m2->0 symmetric gives diag(3/4, 9/4)", d_ok <= 1e-9, buf);
    }
    // Circular thresholds.
    {
        const CurveSample cs = trace_curves_at(0.0, cfg);
        const double ek = std::abs(cs.alpha_k - 2.0 * std::sqrt(2.0));
        const double es = std::abs(cs.alpha_s - 0.5 * std::sqrt(33.0));
        std::snprintf(buf, sizeof(buf), "alpha_k err=%.2e alpha_s err=%.2e", ek, es);
        t.check("curves at e=0: alpha_k=2sqrt2, alpha_s=alpha_m=sqrt33/2",
                ek <= 1e-6 && es <= 1e-6 && cs.coincident_sm, buf);
    }
    // Circular classifications.
    {
        auto form_at = [&](double alpha) {
            const ScanRecord r = evaluate_point(alpha, 0.0, cfg, false);
            return r;
        };
        const ScanRecord r1 = form_at(1.0);
        t.check("classify e=0 alpha=1: ComplexSaddle", r1.form == "ComplexSaddle",
                r1.form);
        const ScanRecord r2 = form_at(2.0 * std::sqrt(2.0));
        t.check("classify e=0 alpha=2sqrt2: trivial N2",
                r2.form.find("N2-trivial") != std::string::npos, r2.form);
        const ScanRecord r3 = form_at(2.85);
        t.check("classify e=0 alpha=2.85: EE with theta1 in (0,pi)",
                r3.form == "EE" && r3.theta1 > 0.0 && r3.theta1 < PI, r3.form);
        const ScanRecord r4 = form_at(0.5 * std::sqrt(33.0));
        t.check("classify e=0 alpha=sqrt33/2: -I2 x R", r4.form == "-I2xR", r4.form);
        const ScanRecord r5 = form_at(2.95);
        t.check("classify e=0 alpha=2.95: EE with both angles in (pi,2pi)",
                r5.form == "EE" && r5.theta1 > PI && r5.theta2 > PI, r5.form);
    }
    // Reduction fixed point.
    for (double e : {0.0, 0.3, 0.7}) {
        const MassTriple m{0.5, 0.2, 0.3};
        const CentralConfiguration cc = normalized_frame(central_configuration(m));
        const KeplerOrbit orbit = KeplerOrbit::from_mu_p(cc.mu, 1.0, e);
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            const double time = orbit.period * k / 100.0;
            const double th = theta_of_time(orbit, time);
            const double r = orbit.r(th);
            const Vec2 a4(1.0, 0.0);
            const Vec2 q = r * rotation(th) * a4;
            const Vec2 P = orbit.rdot(th) * rotation(th) * a4 +
                           r * orbit.theta_dot(th) * J2() * rotation(th) * a4;
            const ReducedState s = inertial_to_reduced(P, q, time, orbit);
            worst = std::max(worst, (s.Zbar - Vec2(0.0, orbit.sigma)).norm());
            worst = std::max(worst, (s.zbar - Vec2(orbit.sigma, 0.0)).norm());
        }
        std::snprintf(buf, sizeof(buf), "e=%.1f err=%.2e", e, worst);
        t.check("reduction maps the ERE to (0,sigma,sigma,0)", worst <= 1e-10, buf);
    }
    // Index table samples.
    {
        const IndexRecord i1a = morse_index(1.5, 0.2, Cplx(1.0, 0.0), 64);
        const IndexRecord i1b = morse_index(3.0, 0.5, Cplx(1.0, 0.0), 64);
        t.check("index: i_1 = 0 (samples)",
                i1a.converged && i1b.converged && i1a.i_omega == 0 && i1b.i_omega == 0);
        const IndexRecord im = morse_index(3.0, 0.2, Cplx(-1.0, 0.0), 64);
        const IndexRecord n1 = morse_index(3.0, 0.2, Cplx(1.0, 0.0), 64);
        std::snprintf(buf, sizeof(buf), "i-1=%d nu1=%d", im.i_omega, n1.nu_omega);
        t.check("index: i_{-1}(3,e)=2, nu_1(3,e)=3",
                im.converged && im.i_omega == 2 && n1.nu_omega == 3, buf);
        const IndexRecord z = morse_index(0.0, 0.5, Cplx(-1.0, 0.0), 64);
        t.check("index: i_{-1}(0,e)=nu_{-1}(0,e)=0",
                z.converged && z.i_omega == 0 && z.nu_omega == 0);
    }
    // Bott identity sample.
    {
        std::string diag;
        const bool ok = bott_check(3.0, 0.3, 64, 1024, &diag);
        t.check("Bott: i_1(xi^2) = i_1 + i_{-1} at (3, 0.3)", ok, diag);
    }
    // e=0 integrator vs matrix exponential.
    {
        const LinearSystemCoeff coeff = build_B(reduced_params_alpha(1.5, 0.0));
        const SymplecticPath p = integrate_path(coeff, default_steps(0.0));
        const double err = (p.period_map - monodromy_circular(1.5)).norm();
        std::snprintf(buf, sizeof(buf), "err=%.2e", err);
        t.check("monodromy: RK4 matches exp(2 pi J B0) at e=0", err <= 1e-8, buf);
    }
    // Symmetric stability threshold.
    {
        double alpha_at = 0.0;
        const double m2s = symmetric_threshold(0.0, cfg, &alpha_at);
        std::snprintf(buf, sizeof(buf), "m2*=%.6f alpha0=%.8f", m2s, alpha_at);
        t.check("threshold: m2* = 0.854 +- 0.001 and alpha(m2*) = 2sqrt2",
                std::abs(m2s - 0.854) <= 1e-3 &&
                    std::abs(alpha_at - 2.0 * std::sqrt(2.0)) <= 1e-5,
                buf);
    }

    std::printf("%s (%d failure%s)\n", t.failures == 0 ? "SELFTEST PASSED" : "SELFTEST FAILED",
                t.failures, t.failures == 1 ? "" : "s");
    return t.failures == 0 ? 0 : 2;
}

}  // namespace

}  // namespace ere
