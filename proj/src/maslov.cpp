#include "ere/maslov.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

namespace ere {

std::vector<double> inverse_radius_fourier(double e, int nmax, int samples)
{
    if (!(e >= 0.0 && e < 1.0))
        throw std::domain_error("inverse_radius_fourier: e must lie in [0,1)");
    if (samples < 2 * nmax + 1) samples = 2 * nmax + 1;
    std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
    if (e == 0.0) {
        out[0] = 1.0;
        return out;
    }
    const double w = TWO_PI / samples;
    for (int j = 0; j < samples; ++j) {
        const double t = j * w;
        const double f = 1.0 / (1.0 + e * std::cos(t));
        for (int n = 0; n <= nmax; ++n) out[static_cast<std::size_t>(n)] += f * std::cos(n * t);
    }
    for (int n = 0; n <= nmax; ++n) out[static_cast<std::size_t>(n)] /= samples;
    return out;
}

GalerkinProblem assemble_galerkin(double alpha, double e, Cplx omega, int N, int period_mult)
{
    if (N < 1) throw std::domain_error("assemble_galerkin: N must be positive");
    if (period_mult < 1) throw std::domain_error("assemble_galerkin: period_mult >= 1");
    if (std::abs(std::abs(omega) - 1.0) > 1e-12)
        throw std::domain_error("assemble_galerkin: omega must lie on the unit circle");

    GalerkinProblem gp;
    gp.alpha = alpha;
    gp.e = e;
    gp.omega = omega;
    gp.N = N;
    gp.period_mult = period_mult;
    double rho = std::arg(omega) / TWO_PI;
    if (rho < 0.0) rho += 1.0;
    gp.rho = rho;

    const int modes = 2 * N + 1;
    const int dim = 2 * modes;
    const int m = period_mult;

    // Fourier coefficients of f(t) = 1/(1+e cos t); couplings reach |n| = 2N,
    // shifted by the +-2 harmonics of S(t).
    const int nmax = 2 * N + 2;
    const std::vector<double> fh = inverse_radius_fourier(e, nmax, 8 * N + 1);
    auto fhat = [&](int n) {
        n = std::abs(n);
        return n <= nmax ? fh[static_cast<std::size_t>(n)] : 0.0;
    };

    // S(t) = e^{2it} Tp / 2 + e^{-2it} Tm / 2.
    Mat2c Tp, Tm;
    Tp << Cplx(1, 0), Cplx(0, -1), Cplx(0, -1), Cplx(-1, 0);
    Tm << Cplx(1, 0), Cplx(0, 1), Cplx(0, 1), Cplx(-1, 0);

    // Fourier coefficient of the potential at integer frequency n:
    // V^(n) = (3/2) fhat(n) I2 + (alpha/4)(fhat(n-2) Tp + fhat(n+2) Tm).
    auto Vhat = [&](int n) -> Mat2c {
        Mat2c v = (1.5 * fhat(n)) * Mat2c::Identity();
        v += (alpha / 4.0) * (fhat(n - 2) * Tp + fhat(n + 2) * Tm);
        return v;
    };

    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(dim, dim);
    for (int kr = -N; kr <= N; ++kr) {
        const int row = 2 * (kr + N);
        const double nu = (kr + rho) / m;
        G.block<2, 2>(row, row) += (nu * nu - 1.0) * Mat2c::Identity();
        for (int kc = -N; kc <= N; ++kc) {
            const int diff = kr - kc;
            if (diff % m != 0) continue;
            const int col = 2 * (kc + N);
            G.block<2, 2>(row, col) += Vhat(diff / m);
        }
    }
    gp.matrix = std::move(G);
    return gp;
}

namespace {

double arg_2pi(Cplx z)
{
    double a = std::arg(z);
    if (a < 0.0) a += TWO_PI;
    return a;
}

struct Counts {
    int neg = 0;
    int null = 0;
};

Counts count_spectrum(const Eigen::MatrixXcd& G)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw InconsistencyError("morse_index: Hermitian eigensolve failed");
    const auto& ev = es.eigenvalues();
    const double scale = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
    // Nullity window 1e-8 |G|; the index count uses a much sharper cut so
    // that integer jumps locate degeneracy curves to bracket accuracy.
    const double eps_null = 1e-8 * scale;
    const double eps_idx = std::max(1e-12 * scale, 1e-13);
    Counts c;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < -eps_idx) ++c.neg;
        if (std::abs(ev(i)) <= eps_null) ++c.null;
    }
    return c;
}

}  // namespace

IndexRecord morse_index(double alpha, double e, Cplx omega, int N0, int Nmax, int period_mult)
{
    IndexRecord rec;
    rec.omega = omega;
    int N = std::max(4, N0 / 2);
    Counts prev = count_spectrum(assemble_galerkin(alpha, e, omega, N, period_mult).matrix);
    while (2 * N <= Nmax) {
        const int N2 = 2 * N;
        const Counts cur =
            count_spectrum(assemble_galerkin(alpha, e, omega, N2, period_mult).matrix);
        if (cur.neg == prev.neg && cur.null == prev.null) {
            rec.i_omega = cur.neg;
            rec.nu_omega = cur.null;
            rec.N_used = N2;
            rec.converged = true;
            return rec;
        }
        prev = cur;
        N = N2;
    }
    rec.i_omega = prev.neg;
    rec.nu_omega = prev.null;
    rec.N_used = N;
    rec.converged = false;
    return rec;
}

IndexRecord morse_index_beta(double beta, double e, Cplx omega, int N0, int Nmax)
{
    if (!(beta >= 0.0 && beta <= 9.0))
        throw std::domain_error("morse_index_beta: beta must lie in [0,9]");
    return morse_index(std::sqrt(9.0 - beta), e, omega, N0, Nmax);
}

int index_via_splitting(int i1, const NormalForm& nf, const EigenStructure& es, Cplx omega)
{
    if (nf.marginal)
        throw InconsistencyError("index_via_splitting: refusing a marginal normal form");

    const double target = arg_2pi(omega);
    // Distinct unit eigenvalues strictly between 1 and omega (counterclockwise).
    std::vector<double> angles;
    const double match = 1e-6;
    for (int i = 0; i < 4; ++i) {
        if (!es.on_unit[static_cast<std::size_t>(i)]) continue;
        double a = std::arg(es.eigenvalues[static_cast<std::size_t>(i)]);
        if (a < 0.0) a += TWO_PI;
        if (a <= match || a >= target - match) continue;
        bool dup = false;
        for (double b : angles)
            if (std::abs(a - b) <= match) dup = true;
        if (!dup) angles.push_back(a);
    }

    int idx = i1;
    {
        const auto s1 = splitting_numbers(nf, Cplx(1.0, 0.0));
        idx += s1.first;
    }
    for (double a : angles) {
        const auto s = splitting_numbers(nf, std::polar(1.0, a));
        idx += s.first - s.second;
    }
    {
        const auto sw = splitting_numbers(nf, omega);
        idx -= sw.second;
    }
    return idx;
}

int index_via_splitting(int i1, const Mat4& M, Cplx omega, double tol)
{
    const EigenStructure es = eigenstructure(M, tol);
    const NormalForm nf = classify_normal_form(es, M, tol);
    return index_via_splitting(i1, nf, es, omega);
}

bool bott_check(double alpha, double e, int N0, int Nmax, std::string* diagnostics)
{
    const IndexRecord r1 = morse_index(alpha, e, Cplx(1.0, 0.0), N0, Nmax);
    const IndexRecord rm = morse_index(alpha, e, Cplx(-1.0, 0.0), N0, Nmax);
    const IndexRecord r2 = morse_index(alpha, e, Cplx(1.0, 0.0), 2 * N0, 2 * Nmax, 2);
    const bool ok = r1.converged && rm.converged && r2.converged &&
                    (r2.i_omega == r1.i_omega + rm.i_omega);
    if (!ok && diagnostics) {
        std::ostringstream os;
        os << "bott_check(alpha=" << alpha << ", e=" << e << "): i1(xi^2)=" << r2.i_omega
           << (r2.converged ? "" : " (unconverged)") << ", i1=" << r1.i_omega
           << (r1.converged ? "" : " (unconverged)") << ", i-1=" << rm.i_omega
           << (rm.converged ? "" : " (unconverged)");
        *diagnostics = os.str();
    }
    return ok;
}

}  // namespace ere
