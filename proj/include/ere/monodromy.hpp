#pragma once

#include <vector>

#include "ere/reduction.hpp"
#include "ere/types.hpp"

namespace ere {

/// Fundamental solution of xi' = J B(theta) xi sampled over [0, 2 pi m].
struct SymplecticPath {
    std::vector<double> thetas;
    std::vector<Mat4> samples;          // stride-spaced, first = I at theta 0
    Mat4 period_map = Mat4::Identity();
    double sympl_residual = 0.0;        // max_k |X_k^T J X_k - J|_F
    int steps = 0;
    int order = 4;
    int stride = 32;
    int iterations = 1;                 // m, path covers [0, 2 pi m]
    bool reliable = true;               // sympl_residual <= 1e-9
};

/// max |M^T J M - J|_F.
double symplecticity_residual(const Mat4& M);

/// Default step count, max(4096, ceil(2000/(1-e))); the coefficient
/// 1/(1+e cos theta) sharpens near theta = pi as e grows.
int default_steps(double e);

/// Classical fixed-step RK4 over [0, 2 pi]. Throws IntegrationFailure when
/// the symplecticity residual exceeds 1e-6; flags the path unreliable above
/// 1e-9.
SymplecticPath integrate_path(const LinearSystemCoeff& coeff, int steps,
                              int stride = 32);

/// e = 0 oracle: exp(2 pi J B(0)) through an eigen-decomposition of J B(0),
/// falling back to scaling-and-squaring when the eigenbasis is ill
/// conditioned.
Mat4 monodromy_circular(double alpha);

/// Scaling-and-squaring matrix exponential (Pade(6)).
Mat4 expm(const Mat4& A);

/// m-fold iteration: samples continued by powers of the period map.
SymplecticPath iterate_path(const SymplecticPath& path, int m);

}  // namespace ere
