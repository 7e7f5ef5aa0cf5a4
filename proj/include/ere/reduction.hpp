#pragma once

#include <vector>

#include "ere/central_config.hpp"
#include "ere/kepler.hpp"
#include "ere/types.hpp"

namespace ere {

/// D = (3/mu) sum_i m_i (a_i - a4)(a_i - a4)^T / |a_i - a4|^5 for any number
/// of primaries. For a spanning configuration trace(D) = 3 and det(D) >= 0.
Mat2 build_D(const std::vector<double>& masses, const std::vector<Vec2>& positions,
             const Vec2& a4, double mu);
Mat2 build_D(const CentralConfiguration& cc);

struct EigenSplit {
    double lambda3 = 0.0;  // larger eigenvalue
    double lambda4 = 0.0;
    double alpha = 0.0;    // lambda3 - lambda4, clamped to [0,3] near the ends
    double angle = 0.0;    // eigenframe rotation, D = R(angle) diag R(angle)^T
};

/// Closed-form symmetric 2x2 eigen split with lambda3 >= lambda4. alpha is
/// snapped to [0,3] when within 1e-9 of an endpoint; beyond that an
/// InconsistencyError is thrown.
EigenSplit eigen_split(const Mat2& D);

/// Symmetric-case (m1 = m3) closed chain: y from the mass equation, then
/// z = 8(1-m2) / ((1+7m2)(y^2+1)^{5/2}) and alpha = 6(1/2 - z).
struct SymmetricChain {
    double m2 = 0.0, y = 0.0, z = 0.0, alpha = 0.0;
};
SymmetricChain symmetric_chain(double m2);
double symmetric_alpha(double m2);

/// Complete input of the linearized problem.
struct ReducedParams {
    Mat2 D = Mat2::Identity();
    double lambda3 = 0.0;
    double lambda4 = 0.0;
    double alpha = 0.0;
    double e = 0.0;
    double frame_angle = 0.0;
    double beta20 = 0.0;   // (1/mu) sum m_i/|a_i-a4|^3 - 1, zero when spanning
    Cplx beta220{0.0, 0.0};  // sum m_i (z_i - z_4)^2 / |a_i - a4|^5
};

ReducedParams reduced_params(const CentralConfiguration& cc, double e);
/// Diagonal-frame parameters D = diag((3+alpha)/2, (3-alpha)/2).
ReducedParams reduced_params_alpha(double alpha, double e);

/// Coefficient theta -> B(theta) of the linearized system xi' = J B(theta) xi.
/// Two frames are available:
///  - BlockForm: B = [[I2, -J2], [J2, I2 - D/(1+e cos theta)]]
///  - RotatedPotential: B = diag(I2, I2 - V(theta)) for the rotated-frame
///    second-order operator, V = (3 I2 + alpha S(theta)) / (2(1+e cos theta)).
struct LinearSystemCoeff {
    enum class Frame { BlockForm, RotatedPotential };
    Mat2 D = Mat2::Identity();
    double alpha = 0.0;
    double e = 0.0;
    Frame frame = Frame::BlockForm;

    Mat4 operator()(double theta) const;
};

LinearSystemCoeff build_B(const ReducedParams& params);
LinearSystemCoeff build_B_rotated(const ReducedParams& params);

/// Potential block of the rotated-frame operator at time theta.
Mat2 rotated_potential(double alpha, double e, double theta);

/// State of the reduced system in true anomaly: (Zbar, zbar).
struct ReducedState {
    Vec2 Zbar = Vec2::Zero();
    Vec2 zbar = Vec2::Zero();
};

/// Composition of the four reduction transforms: rotate by R(theta)^T,
/// dilate by r, switch to true anomaly, dilate by sigma. Applied to the
/// elliptic relative equilibrium q = r R(theta) (1,0)^T, P = q', it returns
/// the constant point Zbar = (0, sigma), zbar = (sigma, 0).
ReducedState inertial_to_reduced(const Vec2& P, const Vec2& q, double t,
                                 const KeplerOrbit& orbit);

/// The transform is linear in (P, q); this is its 4x4 matrix on (P, q)
/// ordered as (P, q). It is symplectic: M^T J M = J.
Mat4 inertial_to_reduced_matrix(double t, const KeplerOrbit& orbit);

/// Similarity-normalized copy of a configuration: rotated so a4 points along
/// +x and rescaled so |a4| = 1, with mu adjusted (mu -> mu |a4|^3). D and its
/// eigenvalues are invariant under this change.
CentralConfiguration normalized_frame(const CentralConfiguration& cc);

}  // namespace ere
