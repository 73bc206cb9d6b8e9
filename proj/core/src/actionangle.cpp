#include "screwon/actionangle.hpp"

#include <algorithm>
#include <cmath>

#include "screwon/dynamics.hpp"

namespace screwon::actionangle {

namespace {

struct Band {
    double u_min = 0.0, u_max = 0.0, u3 = 0.0;
    // dr/dh = lambda (h + m r) / chi'(r) for each root
    double d_min = 0.0, d_max = 0.0, d3 = 0.0;
};

Band torus_band(const conserved::ConservedSet& q, double lambda) {
    const auto roots = elliptic::chi_roots(q, lambda);
    if (roots.size() != 3)
        throw num::degenerate_error("action-angle: level set is not a torus");
    Band b{roots[0].u, roots[1].u, roots[2].u, 0.0, 0.0, 0.0};
    auto droot = [&](double r) {
        return lambda * (q.h + q.m * r) / elliptic::chi_deriv(r, q, lambda);
    };
    b.d_min = droot(b.u_min);
    b.d_max = droot(b.u_max);
    b.d3 = droot(b.u3);
    return b;
}

// Everything below works in the trigonometric parametrization
// u' = u_min + (u_max - u_min) sin^2(phi), under which
// du' / sqrt(chi) = 2 dphi / sqrt(u3 - u') and both turning points are
// regular interior values of the integrand.

// time from u_min to u along the rising branch
double time_from_min(double u, double lambda, double k, const Band& b) {
    const double slack = 1e-4 * (1.0 + b.u_max - b.u_min);
    if (u < b.u_min - slack || u > b.u_max + slack)
        throw std::invalid_argument("theta1: u outside [u_min, u_max]");
    u = std::clamp(u, b.u_min, b.u_max);
    const double norm = 2.0 * lambda * k * k;
    const double w = std::clamp((u - b.u_min) / (b.u_max - b.u_min), 0.0, 1.0);
    const double phi_u = std::asin(std::sqrt(w));
    auto f = [&](double phi) {
        const double s2 = std::sin(phi) * std::sin(phi);
        const double x = b.u_min + (b.u_max - b.u_min) * s2;
        return 2.0 / std::sqrt(norm * std::max(b.u3 - x, 1e-300));
    };
    return num::adaptive_gk(f, 0.0, phi_u, 1e-12, 1e-14, 200).value;
}

double omega_R_of(double lambda, double k, const Band& b) {
    return time_from_min(b.u_max, lambda, k, b);
}

// d/dh of the time integral at fixed u (u strictly inside the band unless
// at_top, which takes the full half period with no boundary term)
double dh_time(double u, double lambda, double k, const Band& b, bool at_top) {
    const double norm = 2.0 * lambda * k * k;
    const double span = b.u_max - b.u_min;
    const double w = at_top ? 1.0 : std::clamp((u - b.u_min) / span, 0.0, 1.0);
    const double phi_u = at_top ? M_PI_2 : std::asin(std::sqrt(w));
    auto Phi_h = [&](double phi) {
        const double s2 = std::sin(phi) * std::sin(phi);
        const double x = b.u_min + span * s2;
        const double xh = b.d_min + (b.d_max - b.d_min) * s2;
        const double cx = std::max(b.u3 - x, 1e-300);
        const double Phi = 2.0 / std::sqrt(norm * cx);
        return 0.5 * Phi * (xh - b.d3) / cx;
    };
    double v = num::adaptive_gk(Phi_h, 0.0, phi_u, 1e-12, 1e-14, 200).value;
    if (!at_top && w > 0.0 && w < 1.0) {
        // moving upper limit: sin^2(phi_u) = (u - u_min)/span
        const double wh = (-b.d_min * span - (u - b.u_min) * (b.d_max - b.d_min)) /
                          (span * span);
        const double dphi = wh / std::sin(2.0 * phi_u);
        const double s2 = w;
        const double x = b.u_min + span * s2;
        v += (2.0 / std::sqrt(norm * std::max(b.u3 - x, 1e-300))) * dphi;
    }
    return v;
}

double default_cutoff(double s) { return std::max(10.0 * s, 50.0); }

// S(u; s) = int_s^inf s' d_h theta^1(u; s') ds' with the tail folded in via
// sigma = 1/s'. kind selects the integrand at fixed u, at the moving top
// edge (for the falling-patch constant) or at the moving bottom edge.
enum class SKind { FixedU, TopEdge, BottomEdge };

double s_integral(SKind kind, double u, const conserved::ConservedSet& q,
                  const ModelParams& p, double s_cutoff, double* err_out = nullptr) {
    double uu = u;
    if (kind != SKind::FixedU) {
        const Band b0 = torus_band(q, p.lambda);
        uu = (kind == SKind::TopEdge) ? b0.u_max : b0.u_min;
    }
    auto integrand = [&](double sp) {
        conserved::ConservedSet qs = q;
        qs.s = sp;
        const Band b = torus_band(qs, p.lambda);
        return sp * p.k * dh_time(uu, p.lambda, p.k, b, false);
    };
    double total = 0.0, err = 0.0;
    if (kind == SKind::FixedU) {
        const auto body = num::adaptive_gk(integrand, q.s, s_cutoff, 1e-10, 1e-11, 500);
        total += body.value;
        err += body.error;
    } else {
        // the edge integrands behave like 1/sqrt(s' - s); substitute
        // s' = s + w^2
        const double wmax = std::sqrt(s_cutoff - q.s);
        auto sub = [&](double w) { return 2.0 * w * integrand(q.s + w * w); };
        const auto body = num::adaptive_gk(sub, 0.0, wmax, 1e-10, 1e-11, 500);
        total += body.value;
        err += body.error;
    }
    auto tail_integrand = [&](double sigma) { return integrand(1.0 / sigma) / (sigma * sigma); };
    const auto tail = num::adaptive_gk(tail_integrand, 0.0, 1.0 / s_cutoff, 1e-10, 1e-12, 200);
    total += tail.value;
    err += tail.error;
    if (err_out) *err_out = err;
    return total;
}

}  // namespace

TorusAA torus_actions(const conserved::ConservedSet& q, const ModelParams& p) {
    torus_band(q, p.lambda);  // validate regime
    const double k = p.k;
    TorusAA aa;
    aa.I1 = k * q.s2() / 2.0 + k * q.h;
    aa.I2 = -k * q.h;
    aa.Omega1 = aa.Omega2 = k;
    return aa;
}

double theta1(double u, const conserved::ConservedSet& q, const ModelParams& p,
              Branch branch) {
    const double k = p.k, lambda = p.lambda;
    const Band band = torus_band(q, lambda);
    const double t = time_from_min(u, lambda, k, band);
    if (branch == Branch::StartAtMin) return k * t;
    return k * (2.0 * omega_R_of(lambda, k, band) - t);
}

Theta2Result theta2(double u, double theta, const conserved::ConservedSet& q,
                    const ModelParams& p, double s_cutoff, Branch branch) {
    if (s_cutoff <= 0.0) s_cutoff = default_cutoff(q.s);
    const Band band = torus_band(q, p.lambda);
    Theta2Result out;
    double err1 = 0.0;
    const double S_u = s_integral(SKind::FixedU, u, q, p, s_cutoff, &err1);
    if (branch == Branch::StartAtMin) {
        // theta^2 = theta + theta^1 - int_inf^s ... = theta + theta^1 + S(u)
        out.value = theta + theta1(u, q, p, Branch::StartAtMin) + S_u;
        out.tail_estimate = err1;
        return out;
    }
    // falling patch: glued by continuity at the upper turning point, where
    // the u-derivative flips sign together with udot
    double err2 = 0.0;
    const double S_top = s_integral(SKind::TopEdge, 0.0, q, p, s_cutoff, &err2);
    const double omega_R = omega_R_of(p.lambda, p.k, band);
    out.value = theta + 2.0 * p.k * omega_R + 2.0 * S_top -
                theta1(u, q, p, Branch::StartAtMin) - S_u;
    out.tail_estimate = err1 + err2;
    return out;
}

double theta2_period(const conserved::ConservedSet& q, const ModelParams& p,
                     double s_cutoff) {
    if (s_cutoff <= 0.0) s_cutoff = default_cutoff(q.s);
    const Band band = torus_band(q, p.lambda);
    const double S_top = s_integral(SKind::TopEdge, 0.0, q, p, s_cutoff);
    const double S_bot = s_integral(SKind::BottomEdge, 0.0, q, p, s_cutoff);
    return 2.0 * p.k * omega_R_of(p.lambda, p.k, band) + 2.0 * (S_top - S_bot);
}

double CanonicalCheck::worst() const {
    return std::max({std::abs(th1_I1), std::abs(th1_I2), std::abs(th2_I1),
                     std::abs(th2_I2), std::abs(th1_th2), std::abs(I1_I2)});
}

CanonicalCheck canonical_check(const conserved::ConservedSet& q, const ModelParams& p,
                               double u, double theta, double fd_step) {
    const double k = p.k, lambda = p.lambda;
    const Band band = torus_band(q, lambda);
    const double span = band.u_max - band.u_min;
    if (u - band.u_min < 1e-3 * span || band.u_max - u < 1e-3 * span)
        throw std::invalid_argument("canonical_check: sample too close to a turning point");

    // coordinates z = (s, h, u, theta); nonzero brackets (rising patch):
    // {h, theta} = 1/k, {s, theta} = -thetadot/(k^2 s), {s, u} = -udot/(k^2 s)
    const auto rates = dynamics::theta_phi_rates(u, q, lambda, k);
    const double udot = std::sqrt(std::max(rates.du_sq, 0.0));
    double br[4][4] = {};
    br[1][3] = 1.0 / k;
    br[0][3] = -rates.dtheta / (k * k * q.s);
    br[0][2] = -udot / (k * k * q.s);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < i; ++j) br[i][j] = -br[j][i];

    auto TH1 = [&](const std::array<double, 4>& z) {
        conserved::ConservedSet qq = q;
        qq.s = z[0];
        qq.h = z[1];
        return theta1(z[2], qq, p);
    };
    auto TH2 = [&](const std::array<double, 4>& z) {
        conserved::ConservedSet qq = q;
        qq.s = z[0];
        qq.h = z[1];
        return theta2(z[2], z[3], qq, p).value;
    };
    auto I1f = [&](const std::array<double, 4>& z) { return k * z[0] * z[0] / 2.0 + k * z[1]; };
    auto I2f = [&](const std::array<double, 4>& z) { return -k * z[1]; };

    const std::array<double, 4> z0{q.s, q.h, u, theta};
    auto grad = [&](auto&& f, double step) {
        std::array<double, 4> g{};
        for (int a = 0; a < 4; ++a) {
            auto up = z0, dn = z0;
            const double h = step * (1.0 + std::abs(z0[a]));
            up[a] += h;
            dn[a] -= h;
            g[a] = (f(up) - f(dn)) / (2.0 * h);
        }
        return g;
    };
    auto pb = [&](const std::array<double, 4>& gf, const std::array<double, 4>& gg) {
        double v = 0.0;
        for (int a = 0; a < 4; ++a)
            for (int c = 0; c < 4; ++c) v += br[a][c] * gf[a] * gg[c];
        return v;
    };

    // theta^2 carries ~1e-10 quadrature noise, so its partials take a wider
    // stencil than the cheap exact functions
    const auto g_th1 = grad(TH1, fd_step);
    const auto g_th2 = grad(TH2, std::max(fd_step, 1e-4));
    const auto g_I1 = grad(I1f, fd_step);
    const auto g_I2 = grad(I2f, fd_step);
    CanonicalCheck c;
    c.th1_I1 = pb(g_th1, g_I1) - 1.0;
    c.th1_I2 = pb(g_th1, g_I2);
    c.th2_I1 = pb(g_th2, g_I1);
    c.th2_I2 = pb(g_th2, g_I2) - 1.0;
    c.th1_th2 = pb(g_th1, g_th2);
    c.I1_I2 = pb(g_I1, g_I2);
    return c;
}

CircleAA circle_action(double omega, double c, double m, const ModelParams& p) {
    const double k = p.k, lam = p.lambda;
    CircleAA out;
    out.omega = omega;
    const double h = omega * (2.0 * c + 3.0 * m * omega / lam + 2.0 * omega * omega / (lam * lam));
    out.action = -k * h;
    out.angle_rate = -k * omega;
    return out;
}

double circle_theta_omega_bracket(double omega, double c, double m, const ModelParams& p) {
    const double k = p.k, lam = p.lambda;
    return -1.0 / (2.0 * k * (c + (3.0 * omega / lam) * (m + omega / lam)));
}

}  // namespace screwon::actionangle
