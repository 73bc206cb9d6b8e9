#pragma once

#include <array>

#include "screwon/conserved.hpp"
#include "screwon/elliptic.hpp"
#include "screwon/types.hpp"

namespace screwon::actionangle {

using elliptic::Branch;

// Torus action-angle data with the simple choice f(h) = -I2(h) = k h:
// I1 = k s^2/2 + k h, I2 = -k h, Omega1 = Omega2 = k,
// H = k (I1 + I2) + k^2 (c + 1/(2 lambda^2)).
struct TorusAA {
    double I1 = 0.0, I2 = 0.0;
    double Omega1 = 0.0, Omega2 = 0.0;
};

TorusAA torus_actions(const conserved::ConservedSet& q, const ModelParams& p);

// theta^1(u) = k (P^{-1}((u - b)/a) - omega_I), computed as a quadrature of
// dt = du / sqrt(2 lambda k^2 chi) from u_min; ranges over [0, 2 k omega_R).
double theta1(double u, const conserved::ConservedSet& q, const ModelParams& p,
              Branch branch = Branch::StartAtMin);

// theta^2 = theta + theta^1 - int_inf^s s' d_h theta^1 ds' (simple choice);
// on the falling patch the u-dependent part flips sign and the branch is
// glued by continuity at the upper turning point. The improper integral is
// truncated at s_cutoff (default max(10s, 50)); the remainder decays like
// 1/s'^2 and is folded in exactly through sigma = 1/s'.
struct Theta2Result {
    double value = 0.0;
    double tail_estimate = 0.0;  // accumulated quadrature error estimate
};
Theta2Result theta2(double u, double theta, const conserved::ConservedSet& q,
                    const ModelParams& p, double s_cutoff = 0.0,
                    Branch branch = Branch::StartAtMin);

// Empirical theta^2 range over one u-cycle; no closed form is asserted.
double theta2_period(const conserved::ConservedSet& q, const ModelParams& p,
                     double s_cutoff = 0.0);

// Poisson-bracket residual table for the action-angle set at a sample point
// (u away from the turning points).
struct CanonicalCheck {
    double th1_I1 = 0.0;  // {theta^1, I1} - 1
    double th1_I2 = 0.0;  // {theta^1, I2}
    double th2_I1 = 0.0;  // {theta^2, I1}
    double th2_I2 = 0.0;  // {theta^2, I2} - 1
    double th1_th2 = 0.0; // {theta^1, theta^2}
    double I1_I2 = 0.0;   // {I1, I2}
    double worst() const;
};
CanonicalCheck canonical_check(const conserved::ConservedSet& q, const ModelParams& p,
                               double u, double theta, double fd_step = 1e-5);

// Action-angle pair on the circular submanifold: I = -k h with
// h = omega (2c + 3 m omega/lambda + 2 omega^2/lambda^2), angle theta,
// angle rate -k omega.
struct CircleAA {
    double action = 0.0;
    double omega = 0.0;
    double angle_rate = 0.0;
};
CircleAA circle_action(double omega, double c, double m, const ModelParams& p);

// {theta, omega} on the circular submanifold (from the reduced Hamiltonian).
double circle_theta_omega_bracket(double omega, double c, double m, const ModelParams& p);

}  // namespace screwon::actionangle
