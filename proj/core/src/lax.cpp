#include "screwon/lax.hpp"

#include <stdexcept>

#include "screwon/dynamics.hpp"

namespace screwon::lax {

namespace {
const cplx I{0.0, 1.0};
}

Mat2 su2(const Vec3& v) {
    // t1 = [[0,-i/2],[-i/2,0]], t2 = [[0,-1/2],[1/2,0]], t3 = [[-i/2,0],[0,i/2]]
    return {-0.5 * I * v[2], -0.5 * I * v[0] - 0.5 * v[1],
            -0.5 * I * v[0] + 0.5 * v[1], 0.5 * I * v[2]};
}

Mat2 lax_A(const PhaseState& x, const ModelParams& p, cplx zeta) {
    const Mat2 K = su2({0.0, 0.0, -p.k});
    const Mat2 L = su2(x.L), S = su2(x.S);
    return K * (-zeta * zeta) + L * zeta + S * (1.0 / p.lambda);
}

std::pair<Mat2, Mat2> lax_pair(const PhaseState& x, const ModelParams& p, cplx zeta) {
    if (zeta == cplx{0.0, 0.0})
        throw std::invalid_argument("lax_pair: B = S/zeta undefined at zeta = 0");
    return {lax_A(x, p, zeta), su2(x.S) * (1.0 / zeta)};
}

double lax_residual(const dynamics::Trajectory& traj, const ModelParams& p,
                    const std::vector<cplx>& zetas) {
    const auto& ts = traj.times;
    if (ts.size() < 5) throw std::invalid_argument("lax_residual: need >= 5 samples");
    const double dt = ts[1] - ts[0];
    double worst = 0.0;
    for (cplx z : zetas) {
        std::vector<Mat2> As(ts.size());
        for (std::size_t i = 0; i < ts.size(); ++i) As[i] = lax_A(traj.states[i], p, z);
        for (std::size_t i = 2; i + 2 < ts.size(); ++i) {
            const Mat2 dA = (As[i - 2] - As[i + 2] + (As[i + 1] - As[i - 1]) * 8.0) *
                            (1.0 / (12.0 * dt));
            const Mat2 B = su2(traj.states[i].S) * (1.0 / z);
            const Mat2 res = dA - commutator(B, As[i]);
            worst = std::max(worst, res.fnorm() / (1.0 + As[i].fnorm()));
        }
    }
    return worst;
}

namespace {

// matrix-coefficient polynomial multiply
std::vector<Mat2> mpoly_mul(const std::vector<Mat2>& a, const std::vector<Mat2>& b) {
    std::vector<Mat2> c(a.size() + b.size() - 1, Mat2::zero());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = c[i + j] + a[i] * b[j];
    return c;
}

}  // namespace

std::vector<double> trace_poly(const PhaseState& x, const ModelParams& p, int n) {
    if (n != 2 && n != 4) throw std::invalid_argument("trace_poly: n must be 2 or 4");
    const std::vector<Mat2> A{su2(x.S) * (1.0 / p.lambda), su2(x.L),
                              su2({0.0, 0.0, -p.k}) * cplx{-1.0, 0.0}};
    std::vector<Mat2> pw = mpoly_mul(A, A);
    if (n == 4) pw = mpoly_mul(pw, pw);
    std::vector<double> out(pw.size());
    for (std::size_t i = 0; i < pw.size(); ++i) out[i] = std::real(Tr(pw[i]));
    return out;
}

std::vector<double> trace2_closed_form(const conserved::ConservedSet& q, const ModelParams& p) {
    const double k2 = p.k * p.k, lam = p.lambda;
    return {q.s2() * k2 / (lam * lam), 2.0 * q.h * k2 / lam, 2.0 * q.c * k2,
            -2.0 * q.m * k2, k2};
}

std::vector<double> trace4_closed_form(const conserved::ConservedSet& q, const ModelParams& p) {
    // For traceless 2x2 matrices tr A^4 = (tr A^2)^2 / 2, hence with the
    // invariant normalization Tr A^4 = -(Tr A^2)^2 / 4.
    const auto t2 = trace2_closed_form(q, p);
    std::vector<double> out(9, 0.0);
    for (std::size_t i = 0; i < t2.size(); ++i)
        for (std::size_t j = 0; j < t2.size(); ++j) out[i + j] += -0.25 * t2[i] * t2[j];
    return out;
}

namespace {

struct Mat4 {
    std::array<cplx, 16> e{};
    cplx& operator()(int r, int c) { return e[r * 4 + c]; }
    cplx operator()(int r, int c) const { return e[r * 4 + c]; }
    Mat4 operator-(const Mat4& o) const {
        Mat4 r;
        for (int i = 0; i < 16; ++i) r.e[i] = e[i] - o.e[i];
        return r;
    }
    Mat4 operator+(const Mat4& o) const {
        Mat4 r;
        for (int i = 0; i < 16; ++i) r.e[i] = e[i] + o.e[i];
        return r;
    }
    double maxabs() const {
        double m = 0.0;
        for (auto& v : e) m = std::max(m, std::abs(v));
        return m;
    }
};

Mat4 mul(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < 4; ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

Mat4 kron(const Mat2& x, const Mat2& y) {
    const cplx xv[2][2] = {{x.a, x.b}, {x.c, x.d}};
    const cplx yv[2][2] = {{y.a, y.b}, {y.c, y.d}};
    Mat4 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = xv[i][j] * yv[k][l];
    return r;
}

}  // namespace

double rmatrix_residual(const PhaseState& x, const ModelParams& p, poisson::Kind kind,
                        cplx zeta, cplx zeta_prime, double r_scale) {
    if (zeta == zeta_prime)
        throw std::invalid_argument("rmatrix_residual: r has a pole at zeta == zeta'");
    const double lam = p.lambda;

    // d A(z)_{uv} / d xi_a for xi = (L1,L2,L3,S1,S2,S3)
    auto coeff = [&](cplx z, int a) -> Mat2 {
        Vec3 e{0.0, 0.0, 0.0};
        e[a % 3] = 1.0;
        Mat2 t = su2(e);
        return (a < 3) ? t * z : t * (1.0 / lam);
    };
    const cplx zfac = (kind == poisson::Kind::Euclidean) ? 1.0 / (zeta * zeta) : cplx{1.0, 0.0};
    const cplx zfacp =
        (kind == poisson::Kind::Euclidean) ? 1.0 / (zeta_prime * zeta_prime) : cplx{1.0, 0.0};

    const auto st = (kind == poisson::Kind::Euclidean) ? poisson::Structure::euclidean()
                                                       : poisson::Structure::nilpotent();
    const auto P = poisson::tensor(st, x, p);

    // LHS: {A(z) (x), A(z')} built from the coordinate brackets
    Mat4 lhs;
    for (int a = 0; a < 6; ++a) {
        for (int b = 0; b < 6; ++b) {
            if (P[a * 6 + b] == 0.0) continue;
            const Mat2 ca = coeff(zeta, a) * zfac;
            const Mat2 cb = coeff(zeta_prime, b) * zfacp;
            Mat4 k4 = kron(ca, cb);
            for (int i = 0; i < 16; ++i) lhs.e[i] += P[a * 6 + b] * k4.e[i];
        }
    }

    // RHS: [r, A (x) I + I (x) A'] with permutation matrix P4
    Mat4 P4;
    P4(0, 0) = 1.0;
    P4(1, 2) = 1.0;
    P4(2, 1) = 1.0;
    P4(3, 3) = 1.0;
    cplx rcoef = -1.0 / (2.0 * lam * (zeta - zeta_prime));
    if (kind == poisson::Kind::Euclidean) rcoef *= lam * lam;
    rcoef *= r_scale;
    Mat4 r;
    for (int i = 0; i < 16; ++i) r.e[i] = rcoef * P4.e[i];

    const Mat2 A = lax_A(x, p, zeta) * zfac;
    const Mat2 Ap = lax_A(x, p, zeta_prime) * zfacp;
    const Mat4 sum = kron(A, Mat2::ident()) + kron(Mat2::ident(), Ap);
    const Mat4 rhs = mul(r, sum) - mul(sum, r);

    return (lhs - rhs).maxabs();
}

}  // namespace screwon::lax
