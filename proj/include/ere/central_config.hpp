#pragma once

#include <array>

#include "ere/types.hpp"

namespace ere {

/// Primary masses, normalized to m1 + m2 + m3 = 1. The fourth body is massless.
struct MassTriple {
    double m1 = 0.0;
    double m2 = 0.0;
    double m3 = 0.0;

    double sum() const { return m1 + m2 + m3; }
    bool valid() const
    {
        return m1 > 0.0 && m2 > 0.0 && m3 > 0.0 && std::abs(sum() - 1.0) <= 1e-12;
    }
    void require_valid() const;

    /// Rescales an arbitrary positive triple to unit total mass.
    static MassTriple normalized(double a, double b, double c);
};

/// Euler quintic p(x) for the collinear ordering (m1, m2, m3) left to right:
///   (m3+m2)x^5 + (3m3+2m2)x^4 + (3m3+m2)x^3 - (3m1+m2)x^2 - (3m1+2m2)x - (m1+m2)
struct EulerQuintic {
    std::array<double, 6> c;  // c[k] multiplies x^k

    explicit EulerQuintic(const MassTriple& m);
    double eval(double x) const;
    double deriv(double x) const;
    /// |p(x)| scaled by the sum of term magnitudes at x.
    double relative_residual(double x) const;
};

/// Unique positive root of the Euler quintic. Bracketed bisection to width
/// 1e-6, then Newton polish. Throws SolverFailure with the last bracket if
/// either stage fails to converge.
double solve_euler_quintic(const MassTriple& masses);

/// Planar central configuration of the three collinear primaries plus the
/// off-line massless body. Positions use the normalization
/// sum_i m_i |a_i|^2 = 1 with the mass center at the origin, so the CC
/// multiplier equals mu = U(a).
struct CentralConfiguration {
    MassTriple masses;
    Vec2 a1 = Vec2::Zero();
    Vec2 a2 = Vec2::Zero();
    Vec2 a3 = Vec2::Zero();
    Vec2 a4 = Vec2::Zero();
    double x = 0.0;    // Euler spacing ratio, |a1-a2| = x |a2-a3|
    double mu = 0.0;   // U(a) of the primaries
    double moment_of_inertia = 0.0;  // sum m_i |a_i|^2 (primaries)
    bool has_a4 = false;

    std::array<Vec2, 3> primaries() const { return {a1, a2, a3}; }
    std::array<double, 3> primary_masses() const { return {masses.m1, masses.m2, masses.m3}; }

    /// Max norm of sum_j m_j (a_j - a_i)/|a_j - a_i|^3 + mu a_i over the
    /// bodies present (massless body included once placed).
    double cc_residual() const;
    /// |mu - sum_j m_j / |a_j - a4|^3|, the massless-body consistency check.
    double mu_residual() const;
};

/// Places the primaries on the x-axis in the order (m1, m2, m3) with spacing
/// ratio x, shifts the mass center to the origin and rescales so that
/// sum m_i |a_i|^2 = 1; sets mu = U(a). a4 is left unset.
CentralConfiguration build_collinear_cc(const MassTriple& masses, double x);

/// Off-line position of the massless body: damped 2-D Newton on
/// F(a4) = sum_j m_j (a_j - a4)/|a_j - a4|^3 + mu a4, started above the
/// midpoint of the a1-a3 segment at half its span. Returns the a4y > 0
/// representative. Throws SolverFailure on divergence and
/// DegenerateConfiguration if the iterate collapses onto the axis.
Vec2 solve_massless_position(const CentralConfiguration& cc);

/// Full pipeline: quintic root, collinear primaries, massless body.
CentralConfiguration central_configuration(const MassTriple& masses);

/// Root y in [1, sqrt(3)] of the symmetric-case equation
/// (1-m2)/(y^2+1)^{3/2} + m2/y^3 = (1+7 m2)/8, for m2 in [0,1).
double solve_symmetric_y(double m2);

}  // namespace ere
