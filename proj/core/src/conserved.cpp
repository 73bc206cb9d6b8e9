#include "screwon/conserved.hpp"

#include <cmath>

#include "screwon/dynamics.hpp"
#include "screwon/numerics.hpp"

namespace screwon::conserved {

ConservedSet conserved_set(const PhaseState& x, const ModelParams& p) {
    p.require_dynamics();
    const double k = p.k, lam = p.lambda;
    ConservedSet q;
    q.c = (0.5 * dot(x.L, x.L) + (k / lam) * x.S[2]) / (k * k);
    q.m = -x.L[2] / k;
    q.s = std::sqrt(dot(x.S, x.S)) / std::abs(k);
    q.h = dot(x.S, x.L) / (k * k);
    q.E = 0.5 * q.s * q.s + q.c + 1.0 / (2.0 * lam * lam);
    return q;
}

double energy_direct(const PhaseState& x, const ModelParams& p) {
    const double k = p.k, lam = p.lambda;
    double H = 0.5 * (dot(x.S, x.S) + dot(x.L, x.L)) + (k / lam) * x.S[2] +
               k * k / (2.0 * lam * lam);
    return H / (k * k);
}

std::string_view to_string(SubmanifoldTag t) {
    switch (t) {
        case SubmanifoldTag::Generic: return "Generic";
        case SubmanifoldTag::Sigma2: return "Sigma2";
        case SubmanifoldTag::Sigma3: return "Sigma3";
        case SubmanifoldTag::CircularC: return "CircularC";
        case SubmanifoldTag::C1: return "C1";
        case SubmanifoldTag::C2: return "C2";
        case SubmanifoldTag::HornInterior: return "HornInterior";
        case SubmanifoldTag::HornCenter: return "HornCenter";
    }
    return "?";
}

double xi1(const PhaseState& x) { return x.S[0] * x.L[1] - x.S[1] * x.L[0]; }

double xi2(const PhaseState& x, const ModelParams& p) {
    const Vec3 sxl = cross(x.S, x.L);
    return -p.lambda * x.L[0] * sxl[1] - p.k * x.S[0] * x.S[0];
}

double xi3(const PhaseState& x, const ModelParams& p) {
    const Vec3 sxl = cross(x.S, x.L);
    return p.lambda * x.L[1] * sxl[0] - p.k * x.S[1] * x.S[1];
}

double wedge4(const PhaseState& x, const ModelParams& p) {
    const double k = p.k, lam = p.lambda;
    // gradients of (s^2, c, m, h) w.r.t. (L1,L2,L3,S1,S2,S3), common k^2 factors kept
    const std::array<std::array<double, 6>, 4> g{{
        {0.0, 0.0, 0.0, 2.0 * x.S[0], 2.0 * x.S[1], 2.0 * x.S[2]},
        {x.L[0], x.L[1], x.L[2], 0.0, 0.0, k / lam},
        {0.0, 0.0, -k, 0.0, 0.0, 0.0},  // grad of k^2 m = -k L3
        {x.S[0], x.S[1], x.S[2], x.L[0], x.L[1], x.L[2]},
    }};
    // product of the singular values of the 6x4 gradient matrix, i.e. the
    // square root of the Gram determinant, computed without squaring away
    // the small directions
    std::vector<double> mat(24);
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 4; ++c) mat[r * 4 + c] = g[c][r];
    const auto sv = num::singular_values(mat, 6, 4);
    double prod = 1.0;
    for (double s : sv) prod *= s;
    return prod;
}

namespace {

bool horn_relations(const ConservedSet& q, const ModelParams& p, double tol, double scale) {
    return std::abs(q.h + q.m * q.s) < tol * scale &&
           std::abs(q.c - 0.5 * q.m * q.m - q.s / p.lambda) < tol * scale;
}

}  // namespace

SubmanifoldTag classify_submanifold(const PhaseState& x, const ModelParams& p, double tol) {
    const double k = p.k;
    const double norm2 = dot(x.L, x.L) + dot(x.S, x.S);
    const double scale = (1.0 + norm2 / (k * k));
    const double eps = tol * scale;
    const auto q = conserved_set(x, p);

    const bool s1z = std::abs(x.S[0] / k) < eps, s2z = std::abs(x.S[1] / k) < eps;
    const bool l1z = std::abs(x.L[0] / k) < eps, l2z = std::abs(x.L[1] / k) < eps;
    const bool s3z = std::abs(x.S[2] / k) < eps;

    if (s1z && s2z && l1z && l2z) {
        // On Sigma2 (or deeper). Horn centers are the subset with u = +s and
        // 4s >= lambda m^2.
        const double u = x.S[2] / k;
        if (std::abs(u - q.s) < eps && 4.0 * q.s >= p.lambda * q.m * q.m - eps)
            return SubmanifoldTag::HornCenter;
        return SubmanifoldTag::Sigma2;
    }
    if (s1z && s2z && s3z) return SubmanifoldTag::Sigma3;

    const double x1 = xi1(x) / (k * k), x2 = xi2(x, p) / (k * k * k),
                 x3 = xi3(x, p) / (k * k * k);
    const bool xi1z = std::abs(x1) < eps, xi2z = std::abs(x2) < eps * scale,
               xi3z = std::abs(x3) < eps * scale;

    if (s1z && !s2z && l1z && xi3z) return SubmanifoldTag::C1;
    if (!s1z && s2z && l2z && xi2z) return SubmanifoldTag::C2;
    if (!s1z && !s2z && xi1z && (xi2z || xi3z)) return SubmanifoldTag::CircularC;

    if (horn_relations(q, p, tol, scale) && 4.0 * q.s > p.lambda * q.m * q.m + eps)
        return SubmanifoldTag::HornInterior;

    return SubmanifoldTag::Generic;
}

double DriftReport::max() const {
    return std::max({c, m, s, h, E});
}

DriftReport drift(const dynamics::Trajectory& traj, const ModelParams& p) {
    DriftReport d;
    if (traj.states.empty()) return d;
    const auto q0 = conserved_set(traj.states.front(), p);
    auto rel = [](double a, double b) { return std::abs(a - b) / (1.0 + std::abs(b)); };
    for (const auto& st : traj.states) {
        const auto q = conserved_set(st, p);
        d.c = std::max(d.c, rel(q.c, q0.c));
        d.m = std::max(d.m, rel(q.m, q0.m));
        d.s = std::max(d.s, rel(q.s, q0.s));
        d.h = std::max(d.h, rel(q.h, q0.h));
        d.E = std::max(d.E, rel(q.E, q0.E));
    }
    return d;
}

}  // namespace screwon::conserved
