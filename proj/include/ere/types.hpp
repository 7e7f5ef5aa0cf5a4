#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace ere {

using Vec2 = Eigen::Vector2d;
using Vec4 = Eigen::Vector4d;
using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;
using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;
using Cplx = std::complex<double>;

inline const double PI = 3.14159265358979323846264338327950288;
inline const double TWO_PI = 2.0 * PI;

/// 2x2 standard symplectic unit, J = [[0,-1],[1,0]].
inline Mat2 J2()
{
    Mat2 j;
    j << 0.0, -1.0, 1.0, 0.0;
    return j;
}

/// 4x4 standard symplectic unit in (momentum, position) block order.
inline Mat4 J4()
{
    Mat4 j = Mat4::Zero();
    j.block<2, 2>(0, 2) = -Mat2::Identity();
    j.block<2, 2>(2, 0) = Mat2::Identity();
    return j;
}

/// Counterclockwise rotation by `angle`.
inline Mat2 rotation(double angle)
{
    const double c = std::cos(angle), s = std::sin(angle);
    Mat2 r;
    r << c, -s, s, c;
    return r;
}

/// S(t) = [[cos 2t, sin 2t], [sin 2t, -cos 2t]].
inline Mat2 spin_matrix(double t)
{
    const double c = std::cos(2.0 * t), s = std::sin(2.0 * t);
    Mat2 m;
    m << c, s, s, -c;
    return m;
}

struct SolverFailure : std::runtime_error {
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    SolverFailure(const std::string& what, double lo = 0.0, double hi = 0.0)
        : std::runtime_error(what), bracket_lo(lo), bracket_hi(hi) {}
};

struct DegenerateConfiguration : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IntegrationFailure : std::runtime_error {
    double residual = 0.0;
    IntegrationFailure(const std::string& what, double res)
        : std::runtime_error(what), residual(res) {}
};

struct InconsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ere
