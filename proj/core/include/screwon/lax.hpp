#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "screwon/conserved.hpp"
#include "screwon/poisson.hpp"
#include "screwon/types.hpp"

namespace screwon {
namespace dynamics {
struct Trajectory;
}

namespace lax {

using cplx = std::complex<double>;

// Dense 2x2 complex matrix, enough linear algebra for the Lax machinery.
struct Mat2 {
    cplx a{}, b{}, c{}, d{};

    Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat2 operator*(cplx s) const { return {a * s, b * s, c * s, d * s}; }
    cplx tr() const { return a + d; }
    double fnorm() const {
        return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
    }
    static Mat2 zero() { return {}; }
    static Mat2 ident() { return {1.0, 0.0, 0.0, 1.0}; }
};

inline Mat2 commutator(const Mat2& x, const Mat2& y) { return x * y - y * x; }

// su(2) basis t_a = sigma_a / (2i); X = X_a t_a.
Mat2 su2(const Vec3& comps);

// Invariant trace convention used by all trace polynomials: Tr X := -2 tr X,
// normalized so that Tr(S^2) = sum_a S_a^2.
inline cplx Tr(const Mat2& m) { return -2.0 * m.tr(); }

// A(zeta) = -K zeta^2 + L zeta + S/lambda and B = S/zeta.
std::pair<Mat2, Mat2> lax_pair(const PhaseState& x, const ModelParams& p, cplx zeta);
Mat2 lax_A(const PhaseState& x, const ModelParams& p, cplx zeta);

// max over interior samples and zetas of |dA/dt - [B,A]|_F / (1 + |A|_F);
// dA/dt by 4th-order central differences on the uniformly sampled trajectory.
double lax_residual(const dynamics::Trajectory& traj, const ModelParams& p,
                    const std::vector<cplx>& zetas);

// Coefficients (ascending in zeta) of Tr A^n(zeta), n in {2, 4}, computed by
// matrix polynomial arithmetic. Imaginary parts vanish identically.
std::vector<double> trace_poly(const PhaseState& x, const ModelParams& p, int n);

// Closed forms of the same coefficients as functions of the invariants.
std::vector<double> trace2_closed_form(const conserved::ConservedSet& q, const ModelParams& p);
std::vector<double> trace4_closed_form(const conserved::ConservedSet& q, const ModelParams& p);

// max entrywise |{A (x) A} - [r, A (x) I + I (x) A]| for the chosen bracket;
// nilpotent uses (A, r = -P/(2 lambda (z - z'))), euclidean (A/z^2, lambda^2 r).
// An optional scale on the r-matrix supports fault-injection tests.
double rmatrix_residual(const PhaseState& x, const ModelParams& p, poisson::Kind kind,
                        cplx zeta, cplx zeta_prime, double r_scale = 1.0);

}  // namespace lax
}  // namespace screwon
