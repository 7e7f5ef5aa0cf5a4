#pragma once

#include <string>
#include <vector>

#include "ere/spectral.hpp"
#include "ere/types.hpp"

namespace ere {

/// Hermitian Galerkin discretization of the rotated-frame operator
///   A(alpha,e) = -d^2/dt^2 - I2 + (3 I2 + alpha S(t)) / (2 (1 + e cos t))
/// on the boundary condition y(T) = omega y(0), y'(T) = omega y'(0) with
/// T = 2 pi * period_mult, in the basis y_k(t) = e^{i nu_k t} v with
/// nu_k = (k + rho)/period_mult, k = -N..N, v in C^2, omega = e^{2 pi i rho}.
struct GalerkinProblem {
    double alpha = 0.0;
    double e = 0.0;
    Cplx omega{1.0, 0.0};
    double rho = 0.0;
    int N = 0;
    int period_mult = 1;
    Eigen::MatrixXcd matrix;

    int size() const { return 2 * (2 * N + 1); }
};

/// Fourier coefficients fhat(0..nmax) of 1/(1 + e cos t) from `samples`
/// equispaced nodes (real cosine DFT; fhat(-n) = fhat(n)).
std::vector<double> inverse_radius_fourier(double e, int nmax, int samples);

GalerkinProblem assemble_galerkin(double alpha, double e, Cplx omega, int N,
                                  int period_mult = 1);

/// omega-Morse index and nullity with Galerkin-cutoff doubling until both
/// counts agree at N and 2N (converged) or N exceeds Nmax.
struct IndexRecord {
    Cplx omega{1.0, 0.0};
    int i_omega = 0;
    int nu_omega = 0;
    int N_used = 0;
    bool converged = false;
};

IndexRecord morse_index(double alpha, double e, Cplx omega, int N0 = 128,
                        int Nmax = 1024, int period_mult = 1);

/// Lagrangian-parameter bridge: beta = 9 - alpha^2.
IndexRecord morse_index_beta(double beta, double e, Cplx omega, int N0 = 128,
                             int Nmax = 1024);

/// i_omega from the period map by the splitting-number walk
///   i_omega = i_1 + S^+(1) + sum_{0 < arg(lam) < arg(omega)} (S^+ - S^-)(lam)
///             - S^-(omega),
/// the sum running over distinct unit eigenvalues strictly between 1 and
/// omega counterclockwise. Throws InconsistencyError on a marginal form.
int index_via_splitting(int i1, const Mat4& M, Cplx omega, double tol = 1e-8);
int index_via_splitting(int i1, const NormalForm& nf, const EigenStructure& es,
                        Cplx omega);

/// Bott iteration check: i_1 of the doubled-period (4 pi) operator equals
/// i_1 + i_{-1} of the single period. Returns false (with diagnostics) on a
/// mismatch or non-convergence.
bool bott_check(double alpha, double e, int N0 = 64, int Nmax = 1024,
                std::string* diagnostics = nullptr);

}  // namespace ere
