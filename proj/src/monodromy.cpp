#include "ere/monodromy.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace ere {

double symplecticity_residual(const Mat4& M)
{
    const Mat4 J = J4();
    return (M.transpose() * J * M - J).norm();
}

int default_steps(double e)
{
    if (!(e >= 0.0 && e < 1.0)) throw std::domain_error("default_steps: e must lie in [0,1)");
    const double guard = std::ceil(2000.0 / (1.0 - e));
    return std::max(4096, static_cast<int>(guard));
}

SymplecticPath integrate_path(const LinearSystemCoeff& coeff, int steps, int stride)
{
    if (steps < 64) throw std::domain_error("integrate_path: steps must be at least 64");
    if (stride < 1) stride = 1;

    const Mat4 J = J4();
    auto rhs = [&](double theta, const Mat4& X) -> Mat4 { return J * (coeff(theta) * X); };

    SymplecticPath path;
    path.steps = steps;
    path.stride = stride;
    const double h = TWO_PI / steps;

    Mat4 X = Mat4::Identity();
    path.thetas.push_back(0.0);
    path.samples.push_back(X);
    double worst = 0.0;
    for (int k = 0; k < steps; ++k) {
        const double theta = k * h;
        const Mat4 k1 = rhs(theta, X);
        const Mat4 k2 = rhs(theta + 0.5 * h, X + 0.5 * h * k1);
        const Mat4 k3 = rhs(theta + 0.5 * h, X + 0.5 * h * k2);
        const Mat4 k4 = rhs(theta + h, X + h * k3);
        X += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if ((k + 1) % stride == 0 || k + 1 == steps) {
            path.thetas.push_back((k + 1) * h);
            path.samples.push_back(X);
            worst = std::max(worst, symplecticity_residual(X));
        }
    }
    path.period_map = X;
    path.sympl_residual = worst;
    path.reliable = worst <= 1e-9;
    if (worst > 1e-6)
        throw IntegrationFailure(
            "integrate_path: symplecticity residual above 1e-6, increase steps", worst);
    return path;
}

Mat4 expm(const Mat4& A)
{
    // Scale so |A/2^s| is small, Pade(6), square back.
    const double nrm = A.cwiseAbs().rowwise().sum().maxCoeff();
    int s = 0;
    double scale = 1.0;
    while (nrm * scale > 0.5) {
        scale *= 0.5;
        ++s;
    }
    const Mat4 B = A * scale;
    Mat4 num = Mat4::Identity(), den = Mat4::Identity(), term = Mat4::Identity();
    // Pade(6,6): coefficients c_k = (6!)^2 ... use the classical recursion.
    double c = 1.0;
    for (int k = 1; k <= 6; ++k) {
        c *= static_cast<double>(7 - k) / (k * (13 - k));
        term = term * B;
        num += c * term;
        den += (k % 2 == 0 ? c : -c) * term;
    }
    Mat4 E = den.partialPivLu().solve(num);
    for (int k = 0; k < s; ++k) E = E * E;
    return E;
}

Mat4 monodromy_circular(double alpha)
{
    const ReducedParams p = reduced_params_alpha(alpha, 0.0);
    const LinearSystemCoeff coeff = build_B(p);
    const Mat4 A = TWO_PI * (J4() * coeff(0.0));

    Eigen::EigenSolver<Mat4> es(A);
    if (es.info() == Eigen::Success) {
        const Mat4c V = es.eigenvectors();
        const auto lu = V.partialPivLu();
        const double cond_proxy = V.norm() * lu.inverse().norm();
        if (cond_proxy < 1e8) {
            Eigen::Vector4cd lam = es.eigenvalues();
            for (int i = 0; i < 4; ++i) lam(i) = std::exp(lam(i));
            const Mat4c E = V * lam.asDiagonal() * lu.inverse();
            return E.real();
        }
    }
    return expm(A);
}

SymplecticPath iterate_path(const SymplecticPath& path, int m)
{
    if (m < 1) throw std::domain_error("iterate_path: m must be at least 1");
    if (m == 1) return path;
    SymplecticPath out = path;
    out.iterations = path.iterations * m;
    const Mat4 M = path.period_map;
    const double span = path.thetas.empty() ? TWO_PI : path.thetas.back();
    Mat4 Mj = Mat4::Identity();
    for (int j = 1; j < m; ++j) {
        Mj = Mj * M;
        // Skip the duplicated junction sample at the start of each copy.
        for (std::size_t k = 1; k < path.samples.size(); ++k) {
            out.thetas.push_back(path.thetas[k] + j * span);
            out.samples.push_back(path.samples[k] * Mj);
        }
    }
    Mat4 Mm = Mj * M;
    out.period_map = Mm;
    double worst = out.sympl_residual;
    worst = std::max(worst, symplecticity_residual(Mm));
    out.sympl_residual = worst;
    out.reliable = worst <= 1e-9;
    return out;
}

}  // namespace ere
