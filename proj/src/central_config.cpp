#include "ere/central_config.hpp"

#include <algorithm>
#include <cmath>

namespace ere {

void MassTriple::require_valid() const
{
    if (!(m1 > 0.0 && m2 > 0.0 && m3 > 0.0))
        throw std::domain_error("MassTriple: masses must be strictly positive");
    if (std::abs(sum() - 1.0) > 1e-12)
        throw std::domain_error("MassTriple: masses must sum to 1");
}

MassTriple MassTriple::normalized(double a, double b, double c)
{
    const double s = a + b + c;
    if (!(s > 0.0) || a <= 0.0 || b <= 0.0 || c <= 0.0)
        throw std::domain_error("MassTriple::normalized: masses must be positive");
    return MassTriple{a / s, b / s, c / s};
}

EulerQuintic::EulerQuintic(const MassTriple& m)
{
    c = {-(m.m1 + m.m2),
         -(3.0 * m.m1 + 2.0 * m.m2),
         -(3.0 * m.m1 + m.m2),
         3.0 * m.m3 + m.m2,
         3.0 * m.m3 + 2.0 * m.m2,
         m.m3 + m.m2};
}

double EulerQuintic::eval(double x) const
{
    double p = 0.0;
    for (int k = 5; k >= 0; --k) p = p * x + c[static_cast<std::size_t>(k)];
    return p;
}

double EulerQuintic::deriv(double x) const
{
    double p = 0.0;
    for (int k = 5; k >= 1; --k) p = p * x + k * c[static_cast<std::size_t>(k)];
    return p;
}

double EulerQuintic::relative_residual(double x) const
{
    double scale = 0.0, xk = 1.0;
    for (int k = 0; k <= 5; ++k) {
        scale += std::abs(c[static_cast<std::size_t>(k)]) * xk;
        xk *= x;
    }
    return std::abs(eval(x)) / std::max(scale, 1e-300);
}

double solve_euler_quintic(const MassTriple& masses)
{
    masses.require_valid();
    const EulerQuintic q(masses);

    // One sign change in the coefficients: exactly one positive root.
    double lo = 1e-9;
    double hi = 1.0;
    int grow = 0;
    while (q.eval(hi) < 0.0) {
        hi *= 2.0;
        if (++grow > 200) throw SolverFailure("euler quintic: no sign change found", lo, hi);
    }
    for (int it = 0; it < 200 && hi - lo > 1e-6; ++it) {
        const double mid = 0.5 * (lo + hi);
        (q.eval(mid) < 0.0 ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 60; ++it) {
        const double f = q.eval(x), df = q.deriv(x);
        if (df == 0.0) break;
        const double step = f / df;
        x -= step;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    if (!(x > 0.0) || q.relative_residual(x) > 1e-12 || !(q.deriv(x) > 0.0))
        throw SolverFailure("euler quintic: Newton polish did not certify the root", lo, hi);
    return x;
}

namespace {

double potential_energy(const CentralConfiguration& cc)
{
    const auto m = cc.primary_masses();
    const auto a = cc.primaries();
    double u = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) u += m[i] * m[j] / (a[i] - a[j]).norm();
    return u;
}

}  // namespace

double CentralConfiguration::cc_residual() const
{
    const auto m = primary_masses();
    std::array<Vec2, 4> a = {a1, a2, a3, a4};
    const int n = has_a4 ? 4 : 3;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        Vec2 f = mu * a[static_cast<std::size_t>(i)];
        for (int j = 0; j < 3; ++j) {
            if (j == i) continue;
            const Vec2 d = a[static_cast<std::size_t>(j)] - a[static_cast<std::size_t>(i)];
            f += m[static_cast<std::size_t>(j)] * d / std::pow(d.norm(), 3);
        }
        worst = std::max(worst, f.norm());
    }
    return worst;
}

double CentralConfiguration::mu_residual() const
{
    if (!has_a4) return 0.0;
    const auto m = primary_masses();
    const auto a = primaries();
    double s = 0.0;
    for (int j = 0; j < 3; ++j)
        s += m[static_cast<std::size_t>(j)] / std::pow((a[static_cast<std::size_t>(j)] - a4).norm(), 3);
    return std::abs(mu - s);
}

CentralConfiguration build_collinear_cc(const MassTriple& masses, double x)
{
    masses.require_valid();
    if (!(x > 0.0)) throw std::domain_error("build_collinear_cc: x must be positive");

    // Unit inter-body scale first: q1 = 0, q2 = x, q3 = 1 + x on the axis.
    double q1 = 0.0, q2 = x, q3 = 1.0 + x;
    const double com = masses.m1 * q1 + masses.m2 * q2 + masses.m3 * q3;
    q1 -= com;
    q2 -= com;
    q3 -= com;
    const double norm2 = masses.m1 * q1 * q1 + masses.m2 * q2 * q2 + masses.m3 * q3 * q3;
    if (!(norm2 > 0.0) || !std::isfinite(norm2))
        throw SolverFailure("build_collinear_cc: degenerate mass distribution", 0.0, 0.0);
    const double s = 1.0 / std::sqrt(norm2);

    CentralConfiguration cc;
    cc.masses = masses;
    cc.x = x;
    cc.a1 = Vec2(q1 * s, 0.0);
    cc.a2 = Vec2(q2 * s, 0.0);
    cc.a3 = Vec2(q3 * s, 0.0);
    cc.moment_of_inertia = masses.m1 * cc.a1.squaredNorm() + masses.m2 * cc.a2.squaredNorm() +
                           masses.m3 * cc.a3.squaredNorm();
    cc.mu = potential_energy(cc);
    return cc;
}

Vec2 solve_massless_position(const CentralConfiguration& cc)
{
    const auto m = cc.primary_masses();
    const auto a = cc.primaries();

    auto force = [&](const Vec2& p) {
        Vec2 f = cc.mu * p;
        for (int j = 0; j < 3; ++j) {
            const Vec2 d = a[static_cast<std::size_t>(j)] - p;
            f += m[static_cast<std::size_t>(j)] * d / std::pow(d.norm(), 3);
        }
        return f;
    };
    auto jacobian = [&](const Vec2& p) {
        Mat2 jac = cc.mu * Mat2::Identity();
        for (int j = 0; j < 3; ++j) {
            const Vec2 d = a[static_cast<std::size_t>(j)] - p;
            const double r = d.norm();
            jac += m[static_cast<std::size_t>(j)] *
                   (3.0 * d * d.transpose() / std::pow(r, 5) - Mat2::Identity() / std::pow(r, 3));
        }
        return jac;
    };

    const double span = std::abs(a[2].x() - a[0].x());
    Vec2 p(0.5 * (a[0].x() + a[2].x()), 0.5 * span);
    double res = force(p).norm();
    const double tol = 1e-13 * std::max(1.0, cc.mu);
    bool ok = false;
    for (int it = 0; it < 200; ++it) {
        if (res <= tol) {
            ok = true;
            break;
        }
        const Vec2 f = force(p);
        Vec2 step = jacobian(p).partialPivLu().solve(-f);
        if (!step.allFinite())
            throw SolverFailure("solve_massless_position: singular Newton step", p.x(), p.y());
        double t = 1.0;
        Vec2 cand = p + step;
        double cres = force(cand).norm();
        int halvings = 0;
        while (cres > res && halvings < 60) {
            t *= 0.5;
            cand = p + t * step;
            cres = force(cand).norm();
            ++halvings;
        }
        if (cres >= res && res > tol && halvings >= 60)
            throw SolverFailure("solve_massless_position: Newton stalled", p.x(), p.y());
        p = cand;
        res = cres;
    }
    if (!ok && res > tol)
        throw SolverFailure("solve_massless_position: no convergence", p.x(), p.y());
    if (std::abs(p.y()) < 1e-8)
        throw DegenerateConfiguration(
            "solve_massless_position: a4 collapsed onto the primary axis");
    if (p.y() < 0.0) p.y() = -p.y();
    return p;
}

CentralConfiguration central_configuration(const MassTriple& masses)
{
    CentralConfiguration cc = build_collinear_cc(masses, solve_euler_quintic(masses));
    cc.a4 = solve_massless_position(cc);
    cc.has_a4 = true;
    return cc;
}

double solve_symmetric_y(double m2)
{
    if (!(m2 >= 0.0 && m2 < 1.0))
        throw std::domain_error("solve_symmetric_y: m2 must lie in [0,1)");
    const double rhs = (1.0 + 7.0 * m2) / 8.0;
    auto h = [&](double y) {
        return (1.0 - m2) / std::pow(y * y + 1.0, 1.5) + (m2 > 0.0 ? m2 / (y * y * y) : 0.0) - rhs;
    };
    // h is strictly decreasing with h(1) >= 0 >= h(sqrt 3).
    double lo = 1.0, hi = std::sqrt(3.0);
    for (int it = 0; it < 90; ++it) {
        const double mid = 0.5 * (lo + hi);
        (h(mid) >= 0.0 ? lo : hi) = mid;
    }
    double y = 0.5 * (lo + hi);
    for (int it = 0; it < 40; ++it) {
        const double f = h(y);
        const double df = -3.0 * y * ((1.0 - m2) / std::pow(y * y + 1.0, 2.5) +
                                      (m2 > 0.0 ? m2 / std::pow(y, 5) : 0.0));
        if (df == 0.0) break;
        const double step = f / df;
        y -= step;
        if (std::abs(step) < 1e-16) break;
    }
    y = std::clamp(y, 1.0, std::sqrt(3.0));
    return y;
}

}  // namespace ere
