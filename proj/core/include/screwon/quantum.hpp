#pragma once

#include <string>
#include <vector>

#include "screwon/numerics.hpp"
#include "screwon/types.hpp"

namespace screwon::quantum {

// Dimensionless radial problem
//   -hbar_t^2 (rho'' + rho'/r - l^2 rho / r^2) + (alpha_t r^2 + beta_t r^4) rho
//     = E1_t rho.
struct RadialProblem {
    double lambda_t = 0.0;  // >= 0
    double hbar_t = 1.0;    // > 0
    int l = 0;
    double pz_t = 0.0;

    double alpha_t() const { return lambda_t * lambda_t / 4.0 - lambda_t * pz_t + 1.0; }
    double beta_t() const { return lambda_t * lambda_t / 4.0; }
    double g_t() const { return lambda_t / hbar_t; }
};

struct LevelDiagnostics {
    double fd_value = 0.0;         // Richardson-extrapolated finite differences
    double shooting_value = 0.0;   // node-matched shooting refinement
    double richardson_error = 0.0; // |E_h - E_{h/2}| / 3
    double disagreement = 0.0;     // |fd - shooting|
};

struct Spectrum {
    std::vector<double> eigenvalues;  // ascending
    std::vector<LevelDiagnostics> diagnostics;
    int grid_points = 0;
    double r_max = 0.0;
};

struct GridSpec {
    int points = 4000;      // cells of the fine grid
    double r_max = 0.0;     // 0 = choose from the asymptotic tail
};

// Lowest n_levels eigenvalues E1_t by cell-centered finite differences
// (Sturm bisection on the symmetrized tridiagonal) cross-validated by
// shooting; throws if the two disagree beyond 10x the estimated error.
Spectrum solve_spectrum(const RadialProblem& p, int n_levels, GridSpec grid = {});

// Strong-coupling form rho'' + rho'/r - (l^2/r^2 + (g^2/4)(r^2 + r^4)
//   - g^2 E2) rho = 0, solved for E2 with the same machinery.
Spectrum strong_coupling_spectrum(double g_t, int l, int n_levels, GridSpec grid = {});

// Map a dimensionful setup onto the strong-coupling coupling g_t = lambda_t/hbar_t.
double strong_coupling_g(double lambda, double k, double m, double mu, double hbar);

// Frobenius coefficients rho_0..rho_N of the strong-coupling equation about
// r = 0 (eta = +l branch; odd coefficients vanish).
std::vector<double> frobenius_coeffs(double g_t, double E2_t, int l, int N);

// Leading asymptotic tail r^{-3/2} exp(-(g/2)(r^3/3 + r/2)) of the
// strong-coupling equation, and its general-problem counterpart.
double asymptotic_tail(double r_t, double g_t);
double asymptotic_tail_log_deriv(double r_t, double g_t);
double general_tail_log_deriv(double r_t, const RadialProblem& p);

// WKB levels of the dimensionful problem: solves
//   int sqrt(2 mu E - p_z^2 - p_th lam m k - k^2 m^2 mu - 2 mu U(r)
//            - p_th^2/r^2) dr = (n + maslov) pi hbar
// for each n in [n_lo, n_hi]. maslov = 1/2 is the two-turning-point
// connection value; 0 recovers the leading large-n form.
struct WkbParams {
    double mu = 1.0, k = 1.0, lambda = 1.0, m = 1.0, hbar = 1.0;
    double p_z = 0.0, p_theta = 0.0;
    double maslov = 0.5;
};
std::vector<double> wkb_levels(const WkbParams& wp, int n_lo, int n_hi);
// Turning points r_min < r_max of the classically allowed interval at E.
std::pair<double, double> wkb_turning_points(const WkbParams& wp, double E);
double wkb_action(const WkbParams& wp, double E);

// Ince classification [a, b, species...] of y'' + p y' + q y with rational
// coefficients given as numerator/denominator coefficient lists (ascending).
struct OdeSingularityType {
    int elementary = 0;
    int regular = 0;
    std::vector<int> species;  // one entry (2 x rank) per irregular point
    std::string to_string() const;
};
OdeSingularityType ince_classify(const std::vector<double>& p_num,
                                 const std::vector<double>& p_den,
                                 const std::vector<double>& q_num,
                                 const std::vector<double>& q_den);

// Grid verification of the nilpotent-algebra operator representation: max
// over the five nonzero commutation relations and test functions of
// ||([X, Y] - rhs) psi|| / ||psi|| with 8th-order stencils.
struct NilrepOptions {
    int grid = 512;
    double box = 10.0;  // grid covers [-box, box]^2
    int test_functions = 6;
};
double nilrep_residual(double m, double p_z, const ModelParams& mp, NilrepOptions opt = {});

// Residual of (c k^2 - expected * I) on the p_z sector; expected value is
// m^2 k^2/2 + k p_z/lambda - k^2/lambda^2.
double nilrep_casimir_residual(double m, double p_z, const ModelParams& mp,
                               NilrepOptions opt = {});

}  // namespace screwon::quantum
