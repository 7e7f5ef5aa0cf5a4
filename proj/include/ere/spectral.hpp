#pragma once

#include <array>
#include <string>
#include <vector>

#include "ere/types.hpp"

namespace ere {

/// Spectral data of a 4x4 symplectic period map.
struct EigenStructure {
    Mat4 M = Mat4::Identity();
    double tol = 1e-8;  // relative unit-circle tolerance
    std::array<Cplx, 4> eigenvalues{};
    std::array<bool, 4> on_unit{};
    /// Krein sign g = -Im(x^H J x) of the normalized eigenvector; 0 when the
    /// eigenvalue is real or off the unit circle.
    std::array<double, 4> krein{};
    double matrix_norm = 1.0;

    /// dim ker(M - omega I): singular values of (M - omega I) below
    /// 1e-7 |M| count toward the kernel.
    int nullity(Cplx omega) const;
    /// Smallest | |lambda| - 1 | over the spectrum.
    double unit_distance() const;
    /// True when every eigenvalue stays off U by more than tol.
    bool hyperbolic() const;
};

EigenStructure eigenstructure(const Mat4& M, double tol = 1e-8);

/// Basic normal-form blocks of Sp(4) period maps (symplectic sums of 2x2 /
/// 4x4 basic forms).
struct Block {
    enum class Kind { Rot, DPair, N1, N2, M2, Quad };
    Kind kind = Kind::Quad;
    double theta = 0.0;   // Rot: R(theta); N2: angle of the collision
    double lam = 0.0;     // DPair: |lam|<=1 representative; N1/M2: +1 or -1
    int a = 0;            // N1(lam, a): sign of a, 0 for the semisimple case
    bool trivial = false; // N2 only
};

enum class FormTag {
    EE,            // R(t1) x R(t2), distinct elliptic pairs
    EH,            // D(lam) x R(theta)
    HH,            // D x D, two real saddle pairs
    ComplexSaddle, // quadruple off U and R
    MinusIdR,      // -I2 x R(theta)
    N1MinusR,      // N1(-1,a) x R(theta)
    N1MinusD,      // N1(-1,a) x D(lam)
    N1MinusPair,   // N1(-1,a) x N1(-1,b)
    M2Minus,       // M2(-1,c), c2 != 0
    N2Form,        // N2(omega, b)
    IdR,           // I2 x R(theta)
    N1PlusR,
    N1PlusD,
    N1PlusPair,
    M2Plus,
    N1PlusI2,      // N1(1,a) x I2 (nullity-3 edge at alpha = 3)
};

std::string form_tag_name(FormTag tag);

struct NormalForm {
    FormTag tag = FormTag::EE;
    double theta1 = 0.0;  // R-angles in (0,2pi), theta1 <= theta2 when both set
    double theta2 = 0.0;
    double lam = 0.0;     // real eigenvalue representative for D / N1-x-D
    int a_sign = 0;       // N1 parameter sign (first block)
    int b_sign = 0;       // N1 parameter sign (second block)
    Cplx omega0{0.0, 0.0};  // N2 collision eigenvalue
    bool n2_trivial = false;
    bool marginal = false;
    std::vector<Block> blocks;

    std::string label() const;  // compact text, MARGINAL:-prefixed if marginal
};

/// Decision tree over the eigenstructure; within tolerance of two case
/// boundaries the generic case is returned with marginal = true.
NormalForm classify_normal_form(const EigenStructure& es, const Mat4& M, double tol = 1e-8);

/// Splitting numbers (S+, S-) of the classified map at omega: per-block
/// ultimate types, symplectic additivity, zero off the spectrum.
std::pair<int, int> splitting_numbers(const NormalForm& nf, Cplx omega,
                                      double match_tol = 1e-6);

enum class Verdict {
    StronglyLinearlyStable,
    LinearlyStableNotStrong,
    SpectrallyStableLinearlyUnstable,
    EllipticHyperbolic,
    Hyperbolic,
};

enum class Region {
    BelowGammaK,
    OnGammaK,
    KtoS,
    OnGammaS,
    StoM,
    OnGammaM,
    AboveGammaM,
};

std::string verdict_name(Verdict v);
std::string region_name(Region r);

struct StabilityVerdict {
    Verdict verdict = Verdict::Hyperbolic;
    NormalForm normal_form;
    Region region = Region::BelowGammaK;
};

StabilityVerdict stability_verdict(const NormalForm& nf);

}  // namespace ere
