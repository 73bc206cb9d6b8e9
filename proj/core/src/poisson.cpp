#include "screwon/poisson.hpp"

#include <cmath>

#include "screwon/conserved.hpp"
#include "screwon/numerics.hpp"

namespace screwon::poisson {

namespace {

constexpr int eps(int a, int b, int c) {
    return (a - b) * (b - c) * (c - a) / 2;  // Levi-Civita for 0-based indices
}

// Affine form of a tensor entry: value = c0 + sum_a lin[a] * xi_a.
struct Affine {
    double c0 = 0.0;
    std::array<double, 6> lin{};
};

// Entry {xi_i, xi_j} of the pure nilpotent / euclidean structures as affine
// functions of the coordinates. K = (0, 0, -k).
Affine entry(Kind kind, double w, int i, int j, const ModelParams& p) {
    // w: pencil weight; both contributions are accumulated by the caller.
    Affine out;
    const double lam = p.lambda, k = p.k;
    (void)kind;
    const bool iL = i < 3, jL = j < 3;
    const int a = iL ? i : i - 3, b = jL ? j : j - 3;
    // nilpotent part, weight (1-w)
    if (!iL && !jL) {  // {S_a, S_b} = lam eps_abc L_c
        for (int c = 0; c < 3; ++c) out.lin[c] += (1.0 - w) * lam * eps(a, b, c);
    } else if (!iL && jL) {  // {S_a, L_b} = -eps_abc K_c = k eps_ab2
        out.c0 += (1.0 - w) * k * eps(a, b, 2);
    } else if (iL && !jL) {  // {L_a, S_b} = -{S_b, L_a}
        out.c0 += -(1.0 - w) * k * eps(b, a, 2);
    }
    // euclidean part, weight w
    if (iL && jL) {  // {L_a, L_b} = -lam eps_abc L_c
        for (int c = 0; c < 3; ++c) out.lin[c] += -w * lam * eps(a, b, c);
    } else if (iL && !jL) {  // {L_a, S_b} = -lam eps_abc S_c
        for (int c = 0; c < 3; ++c) out.lin[3 + c] += -w * lam * eps(a, b, c);
    } else if (!iL && jL) {  // {S_a, L_b} = -lam eps_abc S_c as well
        for (int c = 0; c < 3; ++c) out.lin[3 + c] += -w * lam * eps(a, b, c);
    }
    return out;
}

double eval(const Affine& e, const Vec6& xi) {
    double v = e.c0;
    for (int a = 0; a < 6; ++a) v += e.lin[a] * xi[a];
    return v;
}

}  // namespace

double bracket(const Structure& s, int i, int j, const PhaseState& x, const ModelParams& p) {
    if (i < 0 || i > 5 || j < 0 || j > 5)
        throw std::invalid_argument("poisson::bracket: coordinate index out of range");
    return eval(entry(s.kind, s.weight(), i, j, p), x.as_vec());
}

std::array<double, 36> tensor(const Structure& s, const PhaseState& x, const ModelParams& p) {
    std::array<double, 36> t{};
    const Vec6 xi = x.as_vec();
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) t[i * 6 + j] = eval(entry(s.kind, s.weight(), i, j, p), xi);
    return t;
}

double bracket_fn(const Structure& s, const ScalarField& f, const ScalarField& g,
                  const PhaseState& x, const ModelParams& p, double fd_step) {
    Vec6 xi = x.as_vec();
    std::array<double, 6> df{}, dg{};
    for (int a = 0; a < 6; ++a) {
        const double h = fd_step * (1.0 + std::abs(xi[a]));
        Vec6 up = xi, dn = xi;
        up[a] += h;
        dn[a] -= h;
        df[a] = (f(PhaseState::from_vec(up)) - f(PhaseState::from_vec(dn))) / (2.0 * h);
        dg[a] = (g(PhaseState::from_vec(up)) - g(PhaseState::from_vec(dn))) / (2.0 * h);
    }
    const auto t = tensor(s, x, p);
    double v = 0.0;
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) v += t[a * 6 + b] * df[a] * dg[b];
    return v;
}

double jacobi_residual(const Structure& s, const PhaseState& x, const ModelParams& p) {
    const double w = s.weight();
    const Vec6 xi = x.as_vec();
    // nested bracket {{xi_i, xi_j}, xi_k} = sum_a d{xi_i,xi_j}/dxi_a * {xi_a, xi_k}
    auto nested = [&](int i, int j, int k) {
        const Affine eij = entry(s.kind, w, i, j, p);
        double v = 0.0;
        for (int a = 0; a < 6; ++a) {
            if (eij.lin[a] == 0.0) continue;
            v += eij.lin[a] * eval(entry(s.kind, w, a, k, p), xi);
        }
        return v;
    };
    double worst = 0.0;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            for (int k = j + 1; k < 6; ++k) {
                double r = nested(i, j, k) + nested(j, k, i) + nested(k, i, j);
                worst = std::max(worst, std::abs(r));
            }
    return worst;
}

std::pair<double, double> pencil_casimirs(double alpha, const PhaseState& x,
                                          const ModelParams& p) {
    const auto q = conserved::conserved_set(x, p);
    return {(1.0 - alpha) * q.m / p.lambda + alpha * q.h,
            (1.0 - alpha) * q.c - alpha * q.s * q.s / 2.0};
}

std::array<double, 6> tensor_singular_values(const Structure& s, const PhaseState& x,
                                             const ModelParams& p) {
    const auto t = tensor(s, x, p);
    std::vector<double> a(t.begin(), t.end());
    auto sv = num::singular_values(a, 6, 6);
    std::array<double, 6> out{};
    for (int i = 0; i < 6; ++i) out[i] = sv[i];
    return out;
}

}  // namespace screwon::poisson
