#pragma once

#include <complex>
#include <vector>

#include "screwon/conserved.hpp"
#include "screwon/numerics.hpp"
#include "screwon/types.hpp"

namespace screwon::dynamics {

struct Trajectory {
    std::vector<double> times;
    std::vector<PhaseState> states;
    num::OdeStats stats;
};

// Right-hand side of the L-S equations; the L3 component is structurally 0.
Vec6 eom_rhs(const PhaseState& x, const ModelParams& p);

// Adaptive integration over [0, t_end] recording every accepted step.
Trajectory integrate(const PhaseState& x0, const ModelParams& p, double t_end, double tol);

// Integration sampled at the given times exactly (steps are clipped).
Trajectory integrate_sampled(const PhaseState& x0, const ModelParams& p,
                             const std::vector<double>& times, double tol);

struct ReducedRates {
    double du_sq = 0.0;  // (du/dt)^2 = 2 lambda k^2 chi(u)
    double dtheta = 0.0;
    double dphi = 0.0;
};

// Reduced rates on the level set; the removable singularities at r^2 = 0 and
// rho^2 = 0 are evaluated as the limits of the smooth vector field.
ReducedRates theta_phi_rates(double u, const conserved::ConservedSet& q, double lambda,
                             double k);

// Exact sinusoidal solution on the circular submanifold:
// S1/k = A sin(k w t) + B cos(k w t), S2/k = A cos(k w t) - B sin(k w t),
// L_{1,2} = S_{1,2}/w, S3 = k u with u = -w(m + w/lambda), L3 = -m k.
PhaseState circular_solution(double t, double omega, double A, double B, double m,
                             const ModelParams& p);

struct HornPoint {
    double u = 0.0, theta = 0.0, phi = 0.0;
    PhaseState state;
};

// Homoclinic solution on the horn torus with u(0) at the minimum latitude:
// u(t) = u1 + (s - u1) tanh^2(t / 2 tau), theta linear, phi with the arctan
// correction. Requires 4 s > lambda m^2.
HornPoint horn_solution(double t, double m, double s, const ModelParams& p,
                        double theta0 = 0.0);

enum class FixedPointFamily { Sigma2, Sigma3 };
enum class StabilityClass { CenterFlat, CenterFlatLinearGrowth, SaddleFocus };

struct StabilityReport {
    FixedPointFamily family = FixedPointFamily::Sigma2;
    std::vector<std::complex<double>> eigenvalues;  // all six
    int defect = 0;  // sum over eigenvalues of (algebraic - geometric) multiplicity
    StabilityClass classification = StabilityClass::CenterFlat;
};

// Linearization about a static point (tagged Sigma2 or Sigma3); throws on
// non-static input.
StabilityReport linearize_static(const PhaseState& x, const ModelParams& p);

struct HornGradientReport {
    bool monotone = true;          // W = -sign(km) theta strictly decreasing
    bool metric_positive = true;   // gradient-flow inverse metric positive definite
    double theta_rate_max_dev = 0.0;  // max |thetadot - k m lambda/2|
    double min_metric_det = 0.0;
};

// Verifies the gradient-flow structure along an integrated horn-torus
// trajectory: W decreasing, metric positive, thetadot constant at k m lambda/2.
HornGradientReport horn_gradient_check(const Trajectory& traj, double m, double s,
                                       const ModelParams& p);

}  // namespace screwon::dynamics
