#include "screwon/elliptic.hpp"

#include <algorithm>
#include <cmath>

namespace screwon::elliptic {

std::array<double, 3> chi_coeffs(const conserved::ConservedSet& q, double lambda) {
    const double s2 = q.s2();
    return {-lambda * q.c, -(s2 + lambda * q.h * q.m),
            0.5 * lambda * (2.0 * q.c * s2 - q.h * q.h - q.m * q.m * s2)};
}

double chi(double u, const conserved::ConservedSet& q, double lambda) {
    const auto c = chi_coeffs(q, lambda);
    return ((u + c[0]) * u + c[1]) * u + c[2];
}

double chi_deriv(double u, const conserved::ConservedSet& q, double lambda) {
    const auto c = chi_coeffs(q, lambda);
    return (3.0 * u + 2.0 * c[0]) * u + c[1];
}

double discriminant(const conserved::ConservedSet& q, double lambda) {
    const auto c = chi_coeffs(q, lambda);
    return num::cubic_discriminant(c[0], c[1], c[2]);
}

std::vector<RootMult> chi_roots(const conserved::ConservedSet& q, double lambda, double tol) {
    const auto c = chi_coeffs(q, lambda);
    const double b = c[0];
    std::vector<double> simple = num::cubic_roots(b, c[1], c[2]);
    double rscale = 1.0;
    for (double r : simple) rscale = std::max(rscale, std::abs(r));
    const double scale = 1.0 + rscale;
    const double disc = num::cubic_discriminant(b, c[1], c[2]);

    if (std::abs(disc) < tol * scale * scale * scale) {
        // Degenerate: build the repeated root from the depressed cubic
        // t^3 + p t + q0, where the double root is t = -3 q0 / (2p).
        const double p = c[1] - b * b / 3.0;
        const double q0 = 2.0 * b * b * b / 27.0 - b * c[1] / 3.0 + c[2];
        std::vector<RootMult> out;
        if (std::abs(p) < tol * scale * scale) {
            out.push_back({-b / 3.0, 3});
            return out;
        }
        double ud = -1.5 * q0 / p - b / 3.0;
        double us = 3.0 * q0 / p - b / 3.0;
        // one Newton step on chi' polishes the double root
        const double d2 = 6.0 * ud + 2.0 * b;
        if (std::abs(d2) > 1e-12) ud -= chi_deriv(ud, q, lambda) / d2;
        if (ud <= us) {
            out.push_back({ud, 2});
            out.push_back({us, 1});
        } else {
            out.push_back({us, 1});
            out.push_back({ud, 2});
        }
        return out;
    }

    std::vector<RootMult> out;
    for (double r : simple) out.push_back({r, 1});
    return out;
}

double u_scale(double lambda, double k) { return 2.0 / (k * k * lambda); }
double u_shift(const conserved::ConservedSet& q, double lambda) { return q.c * lambda / 3.0; }

std::pair<double, double> weierstrass_invariants(const conserved::ConservedSet& q,
                                                 double lambda, double k) {
    const double s2 = q.s2(), c = q.c, m = q.m, h = q.h;
    const double k4 = k * k * k * k, k6 = k4 * k * k;
    const double l2 = lambda * lambda;
    const double g2 = (k4 * l2 / 3.0) * (3.0 * lambda * h * m + l2 * c * c + 3.0 * s2);
    const double g3 = (k6 * l2 * l2 / 108.0) *
                      (27.0 * h * h + 18.0 * lambda * c * m * h + 4.0 * l2 * c * c * c -
                       36.0 * c * s2 + 27.0 * m * m * s2);
    return {g2, g3};
}

namespace {

constexpr int kWpTerms = 12;

std::vector<double> wp_series_coeffs(double g2, double g3) {
    // P(z) = 1/z^2 + sum_{k>=2} c_k z^{2k-2}; c2 = g2/20, c3 = g3/28,
    // c_k = 3/((2k+1)(k-3)) sum_{m=2}^{k-2} c_m c_{k-m}
    std::vector<double> c(kWpTerms + 1, 0.0);
    c[2] = g2 / 20.0;
    c[3] = g3 / 28.0;
    for (int k = 4; k <= kWpTerms; ++k) {
        double s = 0.0;
        for (int m = 2; m <= k - 2; ++m) s += c[m] * c[k - m];
        c[k] = 3.0 * s / ((2 * k + 1) * (k - 3));
    }
    return c;
}

struct WpPair {
    cplx p, dp;
};

WpPair wp_series(cplx z, const std::vector<double>& c) {
    const cplx z2 = z * z;
    cplx p = 1.0 / z2, dp = -2.0 / (z2 * z);
    cplx zpow = z2;  // z^{2k-2} for k = 2
    for (int k = 2; k <= kWpTerms; ++k) {
        p += c[k] * zpow;
        dp += static_cast<double>(2 * k - 2) * c[k] * zpow / z;
        zpow *= z2;
    }
    return {p, dp};
}

}  // namespace

std::pair<cplx, cplx> wp_and_deriv(cplx z, double g2, double g3) {
    if (std::abs(z) < 1e-12)
        throw std::domain_error("wp: z too close to the lattice point 0");
    // scale-aware series radius; coefficients c_k shrink like (lattice size)^-2k
    double lattice_scale = std::max({std::pow(std::abs(g2), 0.25), std::pow(std::abs(g3), 1.0 / 6.0), 1e-8});
    double r0 = std::min(0.35 / lattice_scale, 0.5);
    int halvings = 0;
    while (std::abs(z) / std::pow(2.0, halvings) > r0 && halvings < 60) ++halvings;
    const auto c = wp_series_coeffs(g2, g3);
    cplx zr = z / std::pow(2.0, halvings);
    auto [p, dp] = wp_series(zr, c);
    for (int it = 0; it < halvings; ++it) {
        // duplication: P(2z) = -2P + ((6P^2 - g2/2)/(2P'))^2, and
        // P'(2z) = -P' + P''(12 P P'^2 - P''^2) / (4 P'^3), P'' = 6P^2 - g2/2
        const cplx ppp = 6.0 * p * p - 0.5 * g2;
        if (std::abs(dp) < 1e-140)
            throw std::domain_error("wp: duplication hit a half-period (P' = 0)");
        const cplx ratio = ppp / (2.0 * dp);
        const cplx p2 = ratio * ratio - 2.0 * p;
        const cplx dp2 = -dp + ppp * (12.0 * p * dp * dp - ppp * ppp) / (4.0 * dp * dp * dp);
        p = p2;
        dp = dp2;
    }
    return {p, dp};
}

cplx wp(cplx z, double g2, double g3) { return wp_and_deriv(z, g2, g3).first; }

HalfPeriods half_periods(double g2, double g3) {
    // roots of 4v^3 - g2 v - g3
    auto roots = num::cubic_roots(0.0, -g2 / 4.0, -g3 / 4.0);
    if (roots.size() != 3)
        throw degenerate_error("half_periods: cubic has complex roots (no torus)");
    std::sort(roots.begin(), roots.end());
    const double e3 = roots[0], e2 = roots[1], e1 = roots[2];
    const double scale = 1.0 + std::max(std::abs(e1), std::abs(e3));
    if (e1 - e2 < 1e-11 * scale || e2 - e3 < 1e-11 * scale)
        throw degenerate_error("half_periods: repeated roots, period diverges");
    // omega_R = int_{e1}^inf dv / sqrt(4 v^3 - g2 v - g3); substitute v = e1 + w^2,
    // then w = x/(1-x) maps [0,1) onto [0,inf).
    auto period = [&](double ra, double rb, double rc) {
        // int_0^inf dw / sqrt((w^2 + ra - rb)(w^2 + ra - rc))
        const double A = ra - rb, B = ra - rc;
        auto f = [&](double x) {
            const double w = x / (1.0 - x);
            const double jac = 1.0 / ((1.0 - x) * (1.0 - x));
            return jac / std::sqrt((w * w + A) * (w * w + B));
        };
        return num::adaptive_gk(f, 0.0, 1.0, 1e-12).value;
    };
    HalfPeriods hp;
    hp.omega_R = period(e1, e2, e3);
    hp.omega_I = period(-e3, -e2, -e1);  // int_{-inf}^{e3} with v = e3 - w^2
    return hp;
}

double u_of_t(double t, const conserved::ConservedSet& q, double lambda, double k,
              Branch branch) {
    const auto [g2, g3] = weierstrass_invariants(q, lambda, k);
    const HalfPeriods hp = half_periods(g2, g3);  // throws outside torus regime
    const double alpha_re = (branch == Branch::StartAtMax) ? hp.omega_R : 0.0;
    const cplx z{t + alpha_re, hp.omega_I};
    const cplx v = wp(z, g2, g3);
    const double a = u_scale(lambda, k), b = q.c * lambda / 3.0;
    return a * v.real() + b;
}

double ellip_F(double gamma, double q_mod) {
    if (q_mod < 0.0 || q_mod >= 1.0)
        throw std::invalid_argument("ellip_F: modulus must be in [0,1)");
    const double m = q_mod * q_mod;
    auto f = [&](double th) { return 1.0 / std::sqrt(1.0 - m * std::sin(th) * std::sin(th)); };
    return num::adaptive_gk(f, 0.0, gamma, 1e-12).value;
}

double ellip_Pi(double gamma, double n_char, double q_mod) {
    if (q_mod < 0.0 || q_mod >= 1.0)
        throw std::invalid_argument("ellip_Pi: modulus must be in [0,1)");
    const double m = q_mod * q_mod;
    // reject a singular characteristic on the integration path
    if (n_char > 0.0) {
        const double peak = std::abs(gamma) >= M_PI_2
                                ? 1.0
                                : std::sin(std::abs(gamma)) * std::sin(std::abs(gamma));
        if (n_char * peak >= 1.0 - 1e-12)
            throw std::domain_error("ellip_Pi: characteristic singular on the path");
    }
    auto f = [&](double th) {
        const double s2 = std::sin(th) * std::sin(th);
        return 1.0 / ((1.0 - n_char * s2) * std::sqrt(1.0 - m * s2));
    };
    return num::adaptive_gk(f, 0.0, gamma, 1e-12).value;
}

}  // namespace screwon::elliptic
