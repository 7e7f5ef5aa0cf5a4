#include "ere/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

namespace ere {

namespace {

using Vec4c = Eigen::Vector4cd;

Mat4c complex_J() { return J4().cast<Cplx>(); }

double krein_sign_of(const Vec4c& x)
{
    const Cplx q = (x.adjoint() * complex_J() * x)(0, 0);
    return -q.imag() / x.squaredNorm();
}

/// Principal angle in [0, 2 pi).
double arg2pi(Cplx z)
{
    double a = std::arg(z);
    if (a < 0.0) a += TWO_PI;
    return a;
}

}  // namespace

int EigenStructure::nullity(Cplx omega) const
{
    Mat4c A = M.cast<Cplx>();
    A.diagonal().array() -= omega;
    const auto sv = Eigen::JacobiSVD<Mat4c>(A).singularValues();
    const double thresh = 1e-7 * matrix_norm;
    int n = 0;
    for (int i = 0; i < 4; ++i)
        if (sv(i) < thresh) ++n;
    return n;
}

double EigenStructure::unit_distance() const
{
    double d = std::numeric_limits<double>::infinity();
    for (const Cplx& l : eigenvalues) d = std::min(d, std::abs(std::abs(l) - 1.0));
    return d;
}

bool EigenStructure::hyperbolic() const { return unit_distance() > tol; }

EigenStructure eigenstructure(const Mat4& M, double tol)
{
    EigenStructure es;
    es.M = M;
    es.tol = tol;
    es.matrix_norm = M.norm();

    Eigen::EigenSolver<Mat4> solver(M);
    if (solver.info() != Eigen::Success) {
        // Retry on a balanced copy: D^-1 M D with power-of-two row/col scaling.
        Mat4 B = M;
        Vec4 d = Vec4::Ones();
        for (int pass = 0; pass < 4; ++pass) {
            for (int i = 0; i < 4; ++i) {
                const double r = B.row(i).cwiseAbs().sum() - std::abs(B(i, i));
                const double c = B.col(i).cwiseAbs().sum() - std::abs(B(i, i));
                if (r <= 0.0 || c <= 0.0) continue;
                const double f = std::exp2(std::round(0.5 * std::log2(r / c)));
                d(i) *= f;
                B.col(i) *= f;
                B.row(i) /= f;
            }
        }
        solver.compute(B);
        if (solver.info() != Eigen::Success)
            throw InconsistencyError("eigenstructure: eigen-solve failed after balancing");
        for (int i = 0; i < 4; ++i) {
            es.eigenvalues[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
        }
        // Eigenvalues are similarity-invariant; eigenvectors of B map back by d.
        for (int i = 0; i < 4; ++i) {
            Vec4c x = solver.eigenvectors().col(i);
            for (int k = 0; k < 4; ++k) x(k) *= d(k);
            const Cplx l = solver.eigenvalues()(i);
            const bool unit = std::abs(std::abs(l) - 1.0) <= tol;
            es.on_unit[static_cast<std::size_t>(i)] = unit;
            es.krein[static_cast<std::size_t>(i)] =
                (unit && std::abs(l.imag()) > tol) ? krein_sign_of(x) : 0.0;
        }
        return es;
    }

    for (int i = 0; i < 4; ++i) {
        const Cplx l = solver.eigenvalues()(i);
        es.eigenvalues[static_cast<std::size_t>(i)] = l;
        const bool unit = std::abs(std::abs(l) - 1.0) <= tol;
        es.on_unit[static_cast<std::size_t>(i)] = unit;
        es.krein[static_cast<std::size_t>(i)] =
            (unit && std::abs(l.imag()) > tol) ? krein_sign_of(solver.eigenvectors().col(i))
                                               : 0.0;
    }
    return es;
}

namespace {

struct ClassifyContext {
    const EigenStructure* es;
    Mat4 M;
    double tol;
    double ctol;     // eigenvalue clustering tolerance
    bool marginal = false;
};

/// Real kernel vector(s) of M - eta I from the SVD, smallest singular first.
std::vector<Vec4> real_kernel(const Mat4& M, double eta, int count, double norm)
{
    Mat4 A = M;
    A.diagonal().array() -= eta;
    Eigen::JacobiSVD<Mat4> svd(A, Eigen::ComputeFullV | Eigen::ComputeFullU);
    (void)norm;
    std::vector<Vec4> out;
    for (int k = 0; k < count; ++k) out.push_back(svd.matrixV().col(3 - k));
    return out;
}

/// Least-squares solve (M - eta I) v = u through the SVD pseudo-inverse.
Vec4 jordan_partner(const Mat4& M, double eta, const Vec4& u, double* rel_res)
{
    Mat4 A = M;
    A.diagonal().array() -= eta;
    Eigen::JacobiSVD<Mat4> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cut = 1e-9 * std::max(sv(0), 1.0);
    Vec4 y = svd.matrixU().transpose() * u;
    for (int i = 0; i < 4; ++i) y(i) = sv(i) > cut ? y(i) / sv(i) : 0.0;
    const Vec4 v = svd.matrixV() * y;
    if (rel_res) *rel_res = (A * v - u).norm() / std::max(u.norm(), 1e-300);
    return v;
}

/// Sign of the N1(eta, a) parameter from the Jordan pair: a = -1/(u^T J v).
int n1_sign(const Mat4& M, double eta, const Vec4& u, bool* marginal)
{
    double res = 0.0;
    const Vec4 v = jordan_partner(M, eta, u, &res);
    const double q = u.dot(J4() * v);
    if (std::abs(q) < 1e-9 * std::max(1.0, u.norm() * v.norm())) *marginal = true;
    return q < 0.0 ? 1 : -1;
}

/// Rot block from a non-real unit eigenvalue pair: the defining angle is the
/// one whose eigenvector carries negative Krein sign.
Block rot_block(Cplx lambda_upper, double krein_upper, bool* marginal)
{
    Block b;
    b.kind = Block::Kind::Rot;
    const double a = arg2pi(lambda_upper);
    if (std::abs(krein_upper) < 1e-10) *marginal = true;
    b.theta = krein_upper < 0.0 ? a : TWO_PI - a;
    return b;
}

Block d_block(Cplx lam_real)
{
    Block b;
    b.kind = Block::Kind::DPair;
    double l = lam_real.real();
    if (std::abs(l) > 1.0) l = 1.0 / l;
    b.lam = l;
    return b;
}

/// N2 triviality: with u the omega-eigenvector (Im omega > 0) and v a Jordan
/// partner, the normal-form basis k1 = Re u, k2 = -Im u, k3 = Re g,
/// k4 = -Im g with g = beta v + t u (beta = -2/(u^H J v), t fixing
/// k3^T J k4 = 0) is symplectic and carries M to N2(omega, b); b2 - b3 is
/// read off the transformed matrix. Returns (b2-b3) sin(theta).
double n2_triviality_indicator(const Mat4& M, Cplx omega, const Vec4c& u0, bool* marginal)
{
    const Mat4c Jc = complex_J();
    Vec4c u = u0.normalized();

    // Jordan partner within the generalized eigenspace.
    Mat4c A = M.cast<Cplx>();
    A.diagonal().array() -= omega;
    Eigen::JacobiSVD<Mat4c> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cut = 1e-9 * std::max(sv(0), 1.0);
    Vec4c y = svd.matrixU().adjoint() * u;
    for (int i = 0; i < 4; ++i) y(i) = sv(i) > cut ? y(i) / sv(i) : Cplx(0.0, 0.0);
    const Vec4c v = svd.matrixV() * y;
    if ((A * v - u).norm() > 1e-5) *marginal = true;

    const Cplx P2 = (u.adjoint() * Jc * v)(0, 0);
    if (std::abs(P2) < 1e-12) {
        *marginal = true;
        return 0.0;
    }

    // Symplectic normal-form basis.
    const Cplx beta = Cplx(-2.0, 0.0) / P2;
    const Cplx P4 = (v.transpose() * Jc * v.conjugate())(0, 0);  // v^T J conj(v)
    // t so that Im(beta * conj(t) * P2) = |beta|^2 Im(P4) / 2.
    const double target = 0.5 * std::norm(beta) * P4.imag();
    const Cplx tbar = Cplx(0.0, target) / (beta * P2);
    const Cplx t = std::conj(tbar);
    const Vec4c g = beta * v + t * u;

    Mat4 K;
    K.col(0) = u.real();
    K.col(1) = -u.imag();
    K.col(2) = g.real();
    K.col(3) = -g.imag();

    const double sympl_err = (K.transpose() * J4() * K - J4()).norm();
    const Mat4 N = K.partialPivLu().solve(M * K);
    const double structure_err = N.block<2, 2>(2, 0).norm();
    if (sympl_err > 1e-6 || structure_err > 1e-5) *marginal = true;

    const double b2 = N(0, 3);
    const double b3 = N(1, 2);
    const double theta = arg2pi(omega);
    const double indicator = (b2 - b3) * std::sin(theta);
    if (std::abs(indicator) < 1e-9) *marginal = true;
    return indicator;
}

/// Classifies the remaining eigenvalue pair after a +-1 block was split off.
Block remaining_pair_block(ClassifyContext& cx, const std::vector<int>& idx)
{
    const auto& ev = cx.es->eigenvalues;
    const auto& kr = cx.es->krein;
    // Prefer the upper-half member when the pair is elliptic.
    int up = idx[0];
    for (int i : idx)
        if (ev[static_cast<std::size_t>(i)].imag() > ev[static_cast<std::size_t>(up)].imag())
            up = i;
    const Cplx l = ev[static_cast<std::size_t>(up)];
    if (std::abs(l.imag()) > cx.ctol &&
        cx.es->on_unit[static_cast<std::size_t>(up)]) {
        return rot_block(l, kr[static_cast<std::size_t>(up)], &cx.marginal);
    }
    if (std::abs(l.imag()) > cx.ctol) {
        // Off-circle non-real pair cannot stand alone in Sp(4); flag it.
        cx.marginal = true;
        return d_block(Cplx(std::abs(l), 0.0));
    }
    if (std::abs(std::abs(l.real()) - 1.0) <= cx.ctol) cx.marginal = true;
    return d_block(l);
}

NormalForm pm_one_family(ClassifyContext& cx, double eta, const std::vector<int>& at,
                         const std::vector<int>& rest)
{
    const Mat4& M = cx.M;
    NormalForm nf;
    const int alg = static_cast<int>(at.size());
    const int geo = cx.es->nullity(Cplx(eta, 0.0));
    const bool minus = eta < 0.0;

    if (alg <= 2) {
        Block first;
        if (geo >= 2) {
            first.kind = Block::Kind::N1;
            first.lam = eta;
            first.a = 0;  // semisimple: the -I2 / I2 block
        } else {
            const auto kernel = real_kernel(M, eta, 1, cx.es->matrix_norm);
            first.kind = Block::Kind::N1;
            first.lam = eta;
            first.a = n1_sign(M, eta, kernel[0], &cx.marginal);
        }
        Block second = remaining_pair_block(cx, rest);
        nf.blocks = {first, second};
        const bool second_rot = second.kind == Block::Kind::Rot;
        if (second_rot)
            nf.theta1 = second.theta;
        else
            nf.lam = second.lam;
        nf.a_sign = first.a;
        if (minus) {
            if (first.a == 0)
                nf.tag = second_rot ? FormTag::MinusIdR : FormTag::N1MinusD;
            else
                nf.tag = second_rot ? FormTag::N1MinusR : FormTag::N1MinusD;
        } else {
            if (first.a == 0)
                nf.tag = second_rot ? FormTag::IdR : FormTag::N1PlusD;
            else
                nf.tag = second_rot ? FormTag::N1PlusR : FormTag::N1PlusD;
        }
        return nf;
    }

    // Full +-1 quadruple.
    if (geo <= 1) {
        Block b;
        b.kind = Block::Kind::M2;
        b.lam = eta;
        nf.blocks = {b};
        nf.tag = minus ? FormTag::M2Minus : FormTag::M2Plus;
        return nf;
    }
    if (geo == 2) {
        // Two Jordan chains: signs from the form Q(u) = u^T J v(u) on the kernel.
        const auto kernel = real_kernel(M, eta, 2, cx.es->matrix_norm);
        Eigen::Matrix2d Q;
        std::array<Vec4, 2> partners;
        for (int j = 0; j < 2; ++j)
            partners[static_cast<std::size_t>(j)] =
                jordan_partner(M, eta, kernel[static_cast<std::size_t>(j)], nullptr);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                Q(i, j) = kernel[static_cast<std::size_t>(i)].dot(
                    J4() * partners[static_cast<std::size_t>(j)]);
        Q = 0.5 * (Q + Q.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> qe(Q);
        Block b1, b2;
        b1.kind = b2.kind = Block::Kind::N1;
        b1.lam = b2.lam = eta;
        if (std::abs(qe.eigenvalues()(0)) < 1e-9 || std::abs(qe.eigenvalues()(1)) < 1e-9)
            cx.marginal = true;
        b1.a = qe.eigenvalues()(0) < 0.0 ? 1 : -1;
        b2.a = qe.eigenvalues()(1) < 0.0 ? 1 : -1;
        nf.blocks = {b1, b2};
        nf.a_sign = b1.a;
        nf.b_sign = b2.a;
        nf.tag = minus ? FormTag::N1MinusPair : FormTag::N1PlusPair;
        return nf;
    }
    if (geo == 3) {
        // One 2-chain plus a semisimple plane: N1(eta, a) x I2-type.
        Mat4 A = M;
        A.diagonal().array() -= eta;
        Eigen::JacobiSVD<Mat4> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const Vec4 u0 = svd.matrixU().col(0);  // spans range(A) = ker cap range
        Block b1, b2;
        b1.kind = b2.kind = Block::Kind::N1;
        b1.lam = b2.lam = eta;
        b1.a = n1_sign(M, eta, u0, &cx.marginal);
        b2.a = 0;
        nf.blocks = {b1, b2};
        nf.a_sign = b1.a;
        nf.tag = minus ? FormTag::N1MinusPair : FormTag::N1PlusI2;
        return nf;
    }
    // geo 4: +-identity, vanishing measure; report the semisimple pair form.
    cx.marginal = true;
    Block b1, b2;
    b1.kind = b2.kind = Block::Kind::N1;
    b1.lam = b2.lam = eta;
    b1.a = b2.a = 0;
    nf.blocks = {b1, b2};
    nf.tag = minus ? FormTag::N1MinusPair : FormTag::N1PlusPair;
    return nf;
}

}  // namespace

NormalForm classify_normal_form(const EigenStructure& es, const Mat4& M, double tol)
{
    ClassifyContext cx;
    cx.es = &es;
    cx.M = M;
    cx.tol = tol;
    cx.ctol = std::max(1e-6, 50.0 * tol);

    const auto& ev = es.eigenvalues;
    auto dist = [&](int i, Cplx z) { return std::abs(ev[static_cast<std::size_t>(i)] - z); };

    std::vector<int> at_minus, at_plus, others;
    for (int i = 0; i < 4; ++i) {
        if (dist(i, Cplx(-1.0, 0.0)) <= cx.ctol)
            at_minus.push_back(i);
        else if (dist(i, Cplx(1.0, 0.0)) <= cx.ctol)
            at_plus.push_back(i);
        else
            others.push_back(i);
    }
    // Ambiguity band around the +-1 decisions.
    for (int i = 0; i < 4; ++i) {
        const double dm = dist(i, Cplx(-1.0, 0.0)), dp = dist(i, Cplx(1.0, 0.0));
        if ((dm > cx.ctol && dm < 50.0 * cx.ctol) || (dp > cx.ctol && dp < 50.0 * cx.ctol))
            cx.marginal = true;
    }

    NormalForm nf;
    if (at_minus.size() >= 2 && at_minus.size() % 2 == 0) {
        nf = pm_one_family(cx, -1.0, at_minus, others.empty() ? at_plus : others);
    } else if (at_plus.size() >= 2 && at_plus.size() % 2 == 0) {
        nf = pm_one_family(cx, 1.0, at_plus, others.empty() ? at_minus : others);
    } else if (at_minus.empty() && at_plus.empty()) {
        // No +-1 eigenvalues: branch on the number of unit eigenvalues.
        int unit_count = 0;
        for (int i = 0; i < 4; ++i)
            if (es.on_unit[static_cast<std::size_t>(i)]) ++unit_count;
        // Marginality band on the unit-circle distances.
        for (int i = 0; i < 4; ++i) {
            const double d = std::abs(std::abs(ev[static_cast<std::size_t>(i)]) - 1.0);
            if (d > tol && d < 50.0 * tol) cx.marginal = true;
        }

        if (unit_count == 0) {
            bool realish = true;
            for (int i = 0; i < 4; ++i)
                if (std::abs(ev[static_cast<std::size_t>(i)].imag()) > cx.ctol) realish = false;
            if (realish) {
                std::vector<double> inside;
                for (int i = 0; i < 4; ++i) {
                    const double l = ev[static_cast<std::size_t>(i)].real();
                    if (std::abs(l) < 1.0) inside.push_back(l);
                }
                nf.tag = FormTag::HH;
                if (inside.size() != 2) cx.marginal = true;
                Block b1 = d_block(Cplx(inside.size() > 0 ? inside[0] : 0.5, 0.0));
                Block b2 = d_block(Cplx(inside.size() > 1 ? inside[1] : 0.5, 0.0));
                nf.blocks = {b1, b2};
                nf.lam = b1.lam;
            } else {
                nf.tag = FormTag::ComplexSaddle;
                Block b;
                b.kind = Block::Kind::Quad;
                nf.blocks = {b};
            }
        } else if (unit_count == 2) {
            nf.tag = FormTag::EH;
            int up = -1;
            std::vector<int> real_idx;
            for (int i = 0; i < 4; ++i) {
                if (es.on_unit[static_cast<std::size_t>(i)]) {
                    if (ev[static_cast<std::size_t>(i)].imag() > 0.0) up = i;
                } else {
                    real_idx.push_back(i);
                }
            }
            if (up < 0) {
                cx.marginal = true;
                up = 0;
            }
            Block r = rot_block(ev[static_cast<std::size_t>(up)],
                                es.krein[static_cast<std::size_t>(up)], &cx.marginal);
            Block d = d_block(real_idx.empty() ? Cplx(0.5, 0.0)
                                               : ev[static_cast<std::size_t>(real_idx[0])]);
            nf.blocks = {d, r};
            nf.theta1 = r.theta;
            nf.lam = d.lam;
        } else {
            // Four unit eigenvalues, none at +-1: two conjugate pairs.
            std::vector<int> upper;
            for (int i = 0; i < 4; ++i)
                if (ev[static_cast<std::size_t>(i)].imag() > 0.0) upper.push_back(i);
            if (upper.size() != 2) {
                cx.marginal = true;
                while (upper.size() < 2) upper.push_back(upper.empty() ? 0 : upper[0]);
            }
            const Cplx la = ev[static_cast<std::size_t>(upper[0])];
            const Cplx lb = ev[static_cast<std::size_t>(upper[1])];
            const double gap = std::abs(la - lb);
            if (gap > cx.ctol) {
                if (gap < 50.0 * cx.ctol) cx.marginal = true;
                Block r1 = rot_block(la, es.krein[static_cast<std::size_t>(upper[0])],
                                     &cx.marginal);
                Block r2 = rot_block(lb, es.krein[static_cast<std::size_t>(upper[1])],
                                     &cx.marginal);
                if (r1.theta > r2.theta) std::swap(r1, r2);
                nf.tag = FormTag::EE;
                nf.blocks = {r1, r2};
                nf.theta1 = r1.theta;
                nf.theta2 = r2.theta;
            } else {
                // Krein collision.
                Cplx omega = 0.5 * (la + lb);
                omega /= std::abs(omega);
                const int geo = es.nullity(omega);
                if (geo >= 2) {
                    // Semisimple resonance: R(theta) x R(theta') by Krein signs.
                    cx.marginal = true;
                    const double k1 = es.krein[static_cast<std::size_t>(upper[0])];
                    const double k2 = es.krein[static_cast<std::size_t>(upper[1])];
                    Block r1 = rot_block(la, k1, &cx.marginal);
                    Block r2 = rot_block(lb, k2, &cx.marginal);
                    if (r1.theta > r2.theta) std::swap(r1, r2);
                    nf.tag = FormTag::EE;
                    nf.blocks = {r1, r2};
                    nf.theta1 = r1.theta;
                    nf.theta2 = r2.theta;
                } else {
                    Eigen::EigenSolver<Mat4> solver(M);
                    // Eigenvector for the collision: take the column whose
                    // eigenvalue is closest to omega.
                    int best = 0;
                    double bd = std::numeric_limits<double>::infinity();
                    for (int i = 0; i < 4; ++i) {
                        const double d = std::abs(solver.eigenvalues()(i) - omega);
                        if (d < bd) {
                            bd = d;
                            best = i;
                        }
                    }
                    const Vec4c u = solver.eigenvectors().col(best);
                    const double indicator =
                        n2_triviality_indicator(M, omega, u, &cx.marginal);
                    Block b;
                    b.kind = Block::Kind::N2;
                    b.theta = arg2pi(omega);
                    b.trivial = indicator > 0.0;
                    nf.tag = FormTag::N2Form;
                    nf.blocks = {b};
                    nf.omega0 = omega;
                    nf.n2_trivial = b.trivial;
                    nf.theta1 = b.theta;
                }
            }
        }
    } else {
        // A lone +-1-adjacent eigenvalue: boundary noise; classify by unit count.
        cx.marginal = true;
        nf.tag = FormTag::EE;
        std::vector<int> upper;
        for (int i = 0; i < 4; ++i)
            if (ev[static_cast<std::size_t>(i)].imag() > 0.0) upper.push_back(i);
        for (std::size_t j = 0; j < upper.size() && j < 2; ++j) {
            Block r = rot_block(ev[static_cast<std::size_t>(upper[j])],
                                es.krein[static_cast<std::size_t>(upper[j])], &cx.marginal);
            nf.blocks.push_back(r);
            (j == 0 ? nf.theta1 : nf.theta2) = r.theta;
        }
    }

    nf.marginal = nf.marginal || cx.marginal;
    return nf;
}

std::string form_tag_name(FormTag tag)
{
    switch (tag) {
        case FormTag::EE: return "EE";
        case FormTag::EH: return "EH";
        case FormTag::HH: return "HH";
        case FormTag::ComplexSaddle: return "ComplexSaddle";
        case FormTag::MinusIdR: return "-I2xR";
        case FormTag::N1MinusR: return "N1(-1)xR";
        case FormTag::N1MinusD: return "N1(-1)xD";
        case FormTag::N1MinusPair: return "N1(-1)xN1(-1)";
        case FormTag::M2Minus: return "M2(-1)";
        case FormTag::N2Form: return "N2";
        case FormTag::IdR: return "I2xR";
        case FormTag::N1PlusR: return "N1(1)xR";
        case FormTag::N1PlusD: return "N1(1)xD";
        case FormTag::N1PlusPair: return "N1(1)xN1(1)";
        case FormTag::M2Plus: return "M2(1)";
        case FormTag::N1PlusI2: return "N1(1)xI2";
    }
    return "?";
}

std::string NormalForm::label() const
{
    std::string s = form_tag_name(tag);
    if (tag == FormTag::N2Form) s += n2_trivial ? "-trivial" : "-nontrivial";
    if (tag == FormTag::N1MinusR || tag == FormTag::N1MinusD)
        s += a_sign > 0 ? "[a=1]" : "[a=-1]";
    if (marginal) s = "MARGINAL:" + s;
    return s;
}

std::pair<int, int> splitting_numbers(const NormalForm& nf, Cplx omega, double match_tol)
{
    int sp = 0, sm = 0;
    auto near = [&](Cplx a, Cplx b) { return std::abs(a - b) <= match_tol; };
    for (const Block& b : nf.blocks) {
        switch (b.kind) {
            case Block::Kind::Rot: {
                const Cplx def = std::polar(1.0, b.theta);
                if (near(omega, def)) {
                    sp += 0;
                    sm += 1;
                } else if (near(omega, std::conj(def))) {
                    sp += 1;
                    sm += 0;
                }
                break;
            }
            case Block::Kind::DPair:
            case Block::Kind::Quad:
                break;
            case Block::Kind::N1: {
                if (!near(omega, Cplx(b.lam, 0.0))) break;
                const bool null_type = (b.lam > 0.0) ? (b.a >= 0) : (b.a <= 0);
                if (null_type) {
                    sp += 1;
                    sm += 1;
                }
                break;
            }
            case Block::Kind::N2: {
                const Cplx def = std::polar(1.0, b.theta);
                if (near(omega, def) || near(omega, std::conj(def))) {
                    if (!b.trivial) {
                        sp += 1;
                        sm += 1;
                    }
                }
                break;
            }
            case Block::Kind::M2: {
                // Ultimate type (0,0) at its eigenvalue.
                break;
            }
        }
    }
    return {sp, sm};
}

std::string verdict_name(Verdict v)
{
    switch (v) {
        case Verdict::StronglyLinearlyStable: return "StronglyLinearlyStable";
        case Verdict::LinearlyStableNotStrong: return "LinearlyStableNotStrong";
        case Verdict::SpectrallyStableLinearlyUnstable:
            return "SpectrallyStableLinearlyUnstable";
        case Verdict::EllipticHyperbolic: return "EllipticHyperbolic";
        case Verdict::Hyperbolic: return "Hyperbolic";
    }
    return "?";
}

std::string region_name(Region r)
{
    switch (r) {
        case Region::BelowGammaK: return "BelowGammaK";
        case Region::OnGammaK: return "OnGammaK";
        case Region::KtoS: return "KtoS";
        case Region::OnGammaS: return "OnGammaS";
        case Region::StoM: return "StoM";
        case Region::OnGammaM: return "OnGammaM";
        case Region::AboveGammaM: return "AboveGammaM";
    }
    return "?";
}

StabilityVerdict stability_verdict(const NormalForm& nf)
{
    StabilityVerdict out;
    out.normal_form = nf;
    switch (nf.tag) {
        case FormTag::EE:
            out.verdict = Verdict::StronglyLinearlyStable;
            out.region = nf.theta1 < PI ? Region::KtoS : Region::AboveGammaM;
            break;
        case FormTag::EH:
            out.verdict = Verdict::EllipticHyperbolic;
            out.region = Region::StoM;
            break;
        case FormTag::HH:
        case FormTag::ComplexSaddle:
            out.verdict = Verdict::Hyperbolic;
            out.region = Region::BelowGammaK;
            break;
        case FormTag::MinusIdR:
            out.verdict = Verdict::LinearlyStableNotStrong;
            out.region = Region::OnGammaM;
            break;
        case FormTag::N1MinusR:
            out.verdict = Verdict::SpectrallyStableLinearlyUnstable;
            out.region = nf.a_sign > 0 ? Region::OnGammaM : Region::OnGammaS;
            break;
        case FormTag::N1MinusD:
            out.verdict = Verdict::EllipticHyperbolic;
            out.region = Region::OnGammaK;
            break;
        case FormTag::N1MinusPair:
        case FormTag::M2Minus:
        case FormTag::N2Form:
            out.verdict = Verdict::SpectrallyStableLinearlyUnstable;
            out.region = Region::OnGammaK;
            break;
        case FormTag::IdR:
            out.verdict = Verdict::LinearlyStableNotStrong;
            out.region = Region::AboveGammaM;
            break;
        case FormTag::N1PlusR:
        case FormTag::N1PlusD:
        case FormTag::N1PlusPair:
        case FormTag::M2Plus:
        case FormTag::N1PlusI2:
            out.verdict = Verdict::SpectrallyStableLinearlyUnstable;
            out.region = Region::AboveGammaM;
            break;
    }
    return out;
}

}  // namespace ere
