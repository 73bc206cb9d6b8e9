#pragma once

#include <complex>
#include <vector>

#include "screwon/conserved.hpp"
#include "screwon/numerics.hpp"
#include "screwon/types.hpp"

namespace screwon::elliptic {

using num::cplx;
using num::degenerate_error;

// chi(u) = u^3 - lambda c u^2 - (s^2 + lambda h m) u
//          + (lambda/2)(2 c s^2 - h^2 - m^2 s^2)
double chi(double u, const conserved::ConservedSet& q, double lambda);
double chi_deriv(double u, const conserved::ConservedSet& q, double lambda);

// Monic coefficients (b, c, d) of chi: u^3 + b u^2 + c u + d.
std::array<double, 3> chi_coeffs(const conserved::ConservedSet& q, double lambda);

// Discriminant of chi; equals the product of squared root differences.
double discriminant(const conserved::ConservedSet& q, double lambda);

struct RootMult {
    double u = 0.0;
    int mult = 1;
};

// All real roots ascending with multiplicities merged when the discriminant
// (or pairwise clustering) indicates degeneracy at the given tolerance.
std::vector<RootMult> chi_roots(const conserved::ConservedSet& q, double lambda,
                                double tol = 1e-9);

// Weierstrass invariants of the normal form vdot^2 = 4v^3 - g2 v - g3 reached
// by u = a v + b with a = 2/(k^2 lambda), b = c lambda / 3.
std::pair<double, double> weierstrass_invariants(const conserved::ConservedSet& q,
                                                 double lambda, double k);
double u_scale(double lambda, double k);                          // a
double u_shift(const conserved::ConservedSet& q, double lambda);  // b

struct HalfPeriods {
    double omega_R = 0.0;  // real half-period
    double omega_I = 0.0;  // magnitude of the purely imaginary half-period
};

// Half periods for real (g2, g3) with three distinct real roots; throws
// degenerate_error when roots collide (circle/horn/point regimes).
HalfPeriods half_periods(double g2, double g3);

// Weierstrass P function (and derivative) via the truncated Laurent series
// plus repeated duplication. Relative accuracy ~1e-10 within a couple of
// fundamental domains; throws near lattice points.
cplx wp(cplx z, double g2, double g3);
std::pair<cplx, cplx> wp_and_deriv(cplx z, double g2, double g3);

enum class Branch { StartAtMin, StartAtMax };

// u(t) = a P(t + alpha; g2, g3) + b with alpha = omega_I (StartAtMin) or
// omega_R + omega_I (StartAtMax); valid in the torus regime only.
double u_of_t(double t, const conserved::ConservedSet& q, double lambda, double k,
              Branch branch = Branch::StartAtMin);

// Legendre-form incomplete elliptic integrals with modulus q_mod in [0, 1).
double ellip_F(double gamma, double q_mod);
double ellip_Pi(double gamma, double n_char, double q_mod);

}  // namespace screwon::elliptic
