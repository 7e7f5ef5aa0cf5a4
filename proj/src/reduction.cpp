#include "ere/reduction.hpp"

#include <cmath>

namespace ere {

Mat2 build_D(const std::vector<double>& masses, const std::vector<Vec2>& positions,
             const Vec2& a4, double mu)
{
    if (masses.size() != positions.size())
        throw std::invalid_argument("build_D: masses/positions size mismatch");
    if (!(mu > 0.0)) throw std::domain_error("build_D: mu must be positive");
    Mat2 D = Mat2::Zero();
    for (std::size_t i = 0; i < masses.size(); ++i) {
        const Vec2 d = positions[i] - a4;
        const double r = d.norm();
        if (!(r > 0.0)) throw DegenerateConfiguration("build_D: coincident bodies");
        D += masses[i] * d * d.transpose() / std::pow(r, 5);
    }
    return (3.0 / mu) * D;
}

Mat2 build_D(const CentralConfiguration& cc)
{
    if (!cc.has_a4) throw std::invalid_argument("build_D: configuration lacks a4");
    if (std::abs(cc.a4.y()) < 1e-8)
        throw DegenerateConfiguration("build_D: a4 lies on the primary axis");
    const auto a = cc.primaries();
    const auto m = cc.primary_masses();
    return build_D({m[0], m[1], m[2]}, {a[0], a[1], a[2]}, cc.a4, cc.mu);
}

EigenSplit eigen_split(const Mat2& D)
{
    if (std::abs(D(0, 1) - D(1, 0)) > 1e-10 * std::max(1.0, D.norm()))
        throw std::invalid_argument("eigen_split: D is not symmetric");
    const double tr = D(0, 0) + D(1, 1);
    const double dd = D(0, 0) - D(1, 1);
    const double disc = std::sqrt(dd * dd + 4.0 * D(0, 1) * D(0, 1));
    EigenSplit s;
    s.lambda3 = 0.5 * (tr + disc);
    s.lambda4 = 0.5 * (tr - disc);
    s.alpha = disc;
    s.angle = 0.5 * std::atan2(2.0 * D(0, 1), dd);
    if (s.alpha < 0.0 || s.alpha > 3.0) {
        if (s.alpha < -1e-9 || s.alpha > 3.0 + 1e-9)
            throw InconsistencyError("eigen_split: alpha outside [0,3]");
        s.alpha = std::clamp(s.alpha, 0.0, 3.0);
    }
    if (s.alpha < 1e-9) s.alpha = 0.0;
    if (s.alpha > 3.0 - 1e-9) s.alpha = 3.0;
    return s;
}

SymmetricChain symmetric_chain(double m2)
{
    SymmetricChain c;
    c.m2 = m2;
    c.y = solve_symmetric_y(m2);
    c.z = 8.0 * (1.0 - m2) / ((1.0 + 7.0 * m2) * std::pow(c.y * c.y + 1.0, 2.5));
    c.alpha = 6.0 * (0.5 - c.z);
    return c;
}

double symmetric_alpha(double m2) { return symmetric_chain(m2).alpha; }

namespace {

Cplx beta220_of(const CentralConfiguration& cc)
{
    const auto a = cc.primaries();
    const auto m = cc.primary_masses();
    Cplx b{0.0, 0.0};
    for (int i = 0; i < 3; ++i) {
        const Vec2 d = a[static_cast<std::size_t>(i)] - cc.a4;
        const Cplx z{d.x(), d.y()};
        b += m[static_cast<std::size_t>(i)] * z * z / std::pow(d.norm(), 5);
    }
    return b;
}

}  // namespace

ReducedParams reduced_params(const CentralConfiguration& cc, double e)
{
    ReducedParams p;
    p.D = build_D(cc);
    const EigenSplit s = eigen_split(p.D);
    p.lambda3 = s.lambda3;
    p.lambda4 = s.lambda4;
    p.alpha = s.alpha;
    p.frame_angle = s.angle;
    p.e = e;
    const auto a = cc.primaries();
    const auto m = cc.primary_masses();
    double inv3 = 0.0;
    for (int i = 0; i < 3; ++i)
        inv3 += m[static_cast<std::size_t>(i)] /
                std::pow((a[static_cast<std::size_t>(i)] - cc.a4).norm(), 3);
    p.beta20 = inv3 / cc.mu - 1.0;
    p.beta220 = beta220_of(cc);
    return p;
}

ReducedParams reduced_params_alpha(double alpha, double e)
{
    if (!(alpha >= 0.0 && alpha <= 3.0))
        throw std::domain_error("reduced_params_alpha: alpha must lie in [0,3]");
    ReducedParams p;
    p.alpha = alpha;
    p.lambda3 = 0.5 * (3.0 + alpha);
    p.lambda4 = 0.5 * (3.0 - alpha);
    p.D = Vec2(p.lambda3, p.lambda4).asDiagonal();
    p.e = e;
    return p;
}

Mat4 LinearSystemCoeff::operator()(double theta) const
{
    const double f = 1.0 + e * std::cos(theta);
    // 1 + e cos(theta) > 0 for e < 1; a non-positive value means bad input.
    if (!(f > 0.0)) throw std::domain_error("LinearSystemCoeff: 1 + e cos(theta) <= 0");
    Mat4 B = Mat4::Zero();
    B.block<2, 2>(0, 0) = Mat2::Identity();
    if (frame == Frame::BlockForm) {
        B.block<2, 2>(0, 2) = -J2();
        B.block<2, 2>(2, 0) = J2();
        B.block<2, 2>(2, 2) = Mat2::Identity() - D / f;
    } else {
        B.block<2, 2>(2, 2) = Mat2::Identity() - rotated_potential(alpha, e, theta);
    }
    return B;
}

LinearSystemCoeff build_B(const ReducedParams& params)
{
    LinearSystemCoeff c;
    c.D = params.D;
    c.alpha = params.alpha;
    c.e = params.e;
    c.frame = LinearSystemCoeff::Frame::BlockForm;
    return c;
}

LinearSystemCoeff build_B_rotated(const ReducedParams& params)
{
    LinearSystemCoeff c = build_B(params);
    c.frame = LinearSystemCoeff::Frame::RotatedPotential;
    return c;
}

Mat2 rotated_potential(double alpha, double e, double theta)
{
    const double f = 1.0 + e * std::cos(theta);
    return (3.0 * Mat2::Identity() + alpha * spin_matrix(theta)) / (2.0 * f);
}

Mat4 inertial_to_reduced_matrix(double t, const KeplerOrbit& orbit)
{
    const double theta = theta_of_time(orbit, t);
    const double r = orbit.r(theta);
    const double rdot = orbit.rdot(theta);
    const double sigma = orbit.sigma;
    const Mat2 Rt = rotation(theta).transpose();

    // (P, q) -> (Zhat, zhat) -> (Ztilde, ztilde) -> (Zbar, zbar)
    Mat4 M = Mat4::Zero();
    const Mat2 ZP = (r / sigma) * Rt;                  // Zbar from P
    const Mat2 Zq = -(rdot / sigma) * Rt;              // Zbar from q
    const Mat2 zq = (sigma / r) * Rt;                  // zbar from q
    M.block<2, 2>(0, 0) = ZP;
    M.block<2, 2>(0, 2) = Zq;
    M.block<2, 2>(2, 2) = zq;
    return M;
}

ReducedState inertial_to_reduced(const Vec2& P, const Vec2& q, double t,
                                 const KeplerOrbit& orbit)
{
    const double theta = theta_of_time(orbit, t);
    const double r = orbit.r(theta);
    if (!(r > 0.0)) throw std::domain_error("inertial_to_reduced: nonpositive radius");
    const double rdot = orbit.rdot(theta);
    const Mat2 Rt = rotation(theta).transpose();

    const Vec2 zhat = Rt * q;
    const Vec2 Zhat = Rt * P;
    const Vec2 ztilde = zhat / r;
    const Vec2 Ztilde = r * (Zhat - rdot * ztilde);
    ReducedState out;
    out.zbar = orbit.sigma * ztilde;
    out.Zbar = Ztilde / orbit.sigma;
    return out;
}

CentralConfiguration normalized_frame(const CentralConfiguration& cc)
{
    if (!cc.has_a4) throw std::invalid_argument("normalized_frame: configuration lacks a4");
    const double len = cc.a4.norm();
    const Mat2 R = rotation(-std::atan2(cc.a4.y(), cc.a4.x()));
    CentralConfiguration out = cc;
    out.a1 = R * cc.a1 / len;
    out.a2 = R * cc.a2 / len;
    out.a3 = R * cc.a3 / len;
    out.a4 = Vec2(1.0, 0.0);
    out.mu = cc.mu * len * len * len;
    out.moment_of_inertia = cc.moment_of_inertia / (len * len);
    return out;
}

}  // namespace ere
