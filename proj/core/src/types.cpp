#include "screwon/types.hpp"

namespace screwon {

PolarCoords to_polar(const PhaseState& x, const ModelParams& p) {
    p.require_dynamics();
    PolarCoords c;
    const double k = p.k;
    c.r = std::hypot(x.L[0], x.L[1]) / std::abs(k);
    c.rho = std::hypot(x.S[0], x.S[1]) / std::abs(k);
    c.u = x.S[2] / k;
    if (c.r >= PolarCoords::pole_eps)
        c.theta = wrap_angle(std::atan2(x.L[1] / k, x.L[0] / k));
    if (c.rho >= PolarCoords::pole_eps)
        c.phi = wrap_angle(std::atan2(x.S[1] / k, x.S[0] / k));
    return c;
}

PhaseState from_polar(const PolarCoords& c, double m, const ModelParams& p) {
    p.require_dynamics();
    const double k = p.k;
    const double th = c.theta.value_or(0.0), ph = c.phi.value_or(0.0);
    PhaseState x;
    x.L = {k * c.r * std::cos(th), k * c.r * std::sin(th), -m * k};
    x.S = {k * c.rho * std::cos(ph), k * c.rho * std::sin(ph), k * c.u};
    return x;
}

DarbouxState to_darboux(const PhaseState& x, double R3, const ModelParams& p) {
    p.require_dynamics();
    const double k = p.k, lam = p.lambda;
    const double m = x.m(p);
    DarbouxState d;
    d.R = {-x.L[1] / k, x.L[0] / k, R3};
    d.P = {(x.S[0] + 0.5 * lam * m * x.L[0]) / k,
           (x.S[1] + 0.5 * lam * m * x.L[1]) / k,
           (x.S[2] + k / lam + 0.5 * (lam / k) * (x.L[0] * x.L[0] + x.L[1] * x.L[1])) / k};
    return d;
}

PhaseState from_darboux(const DarbouxState& d, const ModelParams& p, double m) {
    p.require_dynamics();
    const double k = p.k, lam = p.lambda;
    PhaseState x;
    x.L = {k * d.R[1], -k * d.R[0], -m * k};
    x.S[0] = k * d.P[0] - 0.5 * lam * m * x.L[0];
    x.S[1] = k * d.P[1] - 0.5 * lam * m * x.L[1];
    x.S[2] = k * d.P[2] - k / lam - 0.5 * (lam / k) * (x.L[0] * x.L[0] + x.L[1] * x.L[1]);
    return x;
}

}  // namespace screwon
