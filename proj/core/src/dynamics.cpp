#include "screwon/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "screwon/elliptic.hpp"

namespace screwon::dynamics {

Vec6 eom_rhs(const PhaseState& x, const ModelParams& p) {
    const double k = p.k, lam = p.lambda;
    const Vec3 sxl = cross(x.S, x.L);
    return {k * x.S[1], -k * x.S[0], 0.0, lam * sxl[0], lam * sxl[1], lam * sxl[2]};
}

namespace {

num::OdeRhs<6> make_rhs(const ModelParams& p) {
    return [p](double, const std::array<double, 6>& y, std::array<double, 6>& dy) {
        const double k = p.k, lam = p.lambda;
        dy[0] = k * y[4];
        dy[1] = -k * y[3];
        dy[2] = 0.0;
        dy[3] = lam * (y[4] * y[2] - y[5] * y[1]);
        dy[4] = lam * (y[5] * y[0] - y[3] * y[2]);
        dy[5] = lam * (y[3] * y[1] - y[4] * y[0]);
    };
}

}  // namespace

Trajectory integrate(const PhaseState& x0, const ModelParams& p, double t_end, double tol) {
    p.require_dynamics();
    if (tol < 1e-13 || tol > 1e-2)
        throw std::invalid_argument("integrate: tol outside [1e-13, 1e-2]");
    Trajectory traj;
    traj.times.push_back(0.0);
    traj.states.push_back(x0);
    auto y = x0.as_vec();
    traj.stats = num::rk45<6>(make_rhs(p), y, 0.0, t_end, tol,
                              [&](double t, const std::array<double, 6>& s) {
                                  traj.times.push_back(t);
                                  traj.states.push_back(PhaseState::from_vec(s));
                              });
    return traj;
}

Trajectory integrate_sampled(const PhaseState& x0, const ModelParams& p,
                             const std::vector<double>& times, double tol) {
    p.require_dynamics();
    Trajectory traj;
    traj.stats = num::rk45_sampled<6>(make_rhs(p), x0.as_vec(), times, tol,
                                      [&](double t, const std::array<double, 6>& s) {
                                          traj.times.push_back(t);
                                          traj.states.push_back(PhaseState::from_vec(s));
                                      });
    return traj;
}

ReducedRates theta_phi_rates(double u, const conserved::ConservedSet& q, double lambda,
                             double k) {
    ReducedRates out;
    out.du_sq = 2.0 * lambda * k * k * elliptic::chi(u, q, lambda);
    const double scale = 1.0 + q.s * q.s + q.c * q.c + q.m * q.m;
    const double eps = 1e-12 * scale;
    const double r2 = 2.0 * q.c - q.m * q.m - 2.0 * u / lambda;
    const double rho2 = q.s * q.s - u * u;
    const double num_th = q.h + q.m * u;

    // thetadot = -k (h + m u) / r^2; when both numerator and denominator
    // vanish on the level set the limit is k m lambda / 2.
    if (std::abs(r2) < eps && std::abs(num_th) < eps)
        out.dtheta = k * q.m * lambda / 2.0;
    else
        out.dtheta = -k * num_th / r2;

    // phidot = k m lambda + k lambda u (h + m u) / rho^2; at a pole latitude
    // the level-set limit is again k m lambda / 2.
    if (std::abs(rho2) < eps && std::abs(num_th) < eps)
        out.dphi = k * q.m * lambda / 2.0;
    else
        out.dphi = k * q.m * lambda + k * lambda * u * num_th / rho2;
    return out;
}

PhaseState circular_solution(double t, double omega, double A, double B, double m,
                             const ModelParams& p) {
    p.require_dynamics();
    if (omega == 0.0)
        throw std::invalid_argument("circular_solution: omega = 0 is the Sigma3 family");
    const double k = p.k, lam = p.lambda;
    const double ph = k * omega * t;
    PhaseState x;
    x.S[0] = k * (A * std::sin(ph) + B * std::cos(ph));
    x.S[1] = k * (A * std::cos(ph) - B * std::sin(ph));
    x.S[2] = k * (-omega * (m + omega / lam));
    x.L = {x.S[0] / omega, x.S[1] / omega, -m * k};
    return x;
}

HornPoint horn_solution(double t, double m, double s, const ModelParams& p, double theta0) {
    p.require_dynamics();
    const double k = p.k, lam = p.lambda;
    if (4.0 * s <= lam * m * m)
        throw std::invalid_argument("horn_solution: requires 4s > lambda m^2");
    const double u1 = -s + 0.5 * lam * m * m;
    const double tau = 1.0 / std::sqrt(lam * k * k * (4.0 * s - lam * m * m));
    const double th = std::tanh(t / (2.0 * tau));

    HornPoint hp;
    hp.u = u1 + (s - u1) * th * th;
    hp.theta = theta0 + 0.5 * k * m * lam * t;
    // theta - phi equals Delta0 - arctan(tanh(t/2tau)/(k tau m lambda)) with
    // cos Delta0 = -sign(m)
    const double delta0 = (m > 0.0) ? M_PI : 0.0;
    const double delta = delta0 - std::atan(th / (k * tau * m * lam));
    hp.phi = hp.theta - delta;

    const double r = std::sqrt(std::max((2.0 / lam) * (s - hp.u), 0.0));
    const double rho = std::sqrt(std::max(s * s - hp.u * hp.u, 0.0));
    hp.state.L = {k * r * std::cos(hp.theta), k * r * std::sin(hp.theta), -m * k};
    hp.state.S = {k * rho * std::cos(hp.phi), k * rho * std::sin(hp.phi), k * hp.u};
    return hp;
}

namespace {

// characteristic polynomial by Faddeev-LeVerrier; coefficients ascending
std::vector<double> char_poly(const std::vector<double>& a, int n) {
    std::vector<double> M(n * n, 0.0), AM(n * n, 0.0);
    std::vector<double> c(n + 1, 0.0);
    c[n] = 1.0;
    for (int i = 0; i < n; ++i) M[i * n + i] = 1.0;
    double coef = 1.0;
    for (int kstep = 1; kstep <= n; ++kstep) {
        // AM = A * M
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 0.0;
                for (int l = 0; l < n; ++l) s += a[i * n + l] * M[l * n + j];
                AM[i * n + j] = s;
            }
        double tr = 0.0;
        for (int i = 0; i < n; ++i) tr += AM[i * n + i];
        coef = -tr / kstep;
        c[n - kstep] = coef;
        M = AM;
        for (int i = 0; i < n; ++i) M[i * n + i] += coef;
    }
    return c;
}

// Roots of a real polynomial that is even in lambda after factoring lambda^j;
// exploits the structure for machine-accurate repeated imaginary pairs.
std::vector<std::complex<double>> structured_roots(std::vector<double> c) {
    using cplx = std::complex<double>;
    double scale = 0.0;
    for (double x : c) scale = std::max(scale, std::abs(x));
    std::vector<cplx> roots;
    std::size_t lead = 0;
    while (lead + 1 < c.size() && std::abs(c[lead]) < 1e-12 * scale) {
        roots.push_back(0.0);
        ++lead;
    }
    std::vector<double> rest(c.begin() + lead, c.end());
    bool even = true;
    for (std::size_t i = 1; i < rest.size(); i += 2)
        if (std::abs(rest[i]) > 1e-10 * scale) even = false;
    if (even) {
        std::vector<double> w;  // polynomial in w = lambda^2
        for (std::size_t i = 0; i < rest.size(); i += 2) w.push_back(rest[i]);
        std::vector<cplx> wroots;
        if (w.size() == 2) {
            wroots = {cplx(-w[0] / w[1], 0.0)};
        } else if (w.size() == 3) {
            const cplx disc = std::sqrt(cplx(w[1] * w[1] - 4.0 * w[2] * w[0], 0.0));
            wroots = {(-w[1] + disc) / (2.0 * w[2]), (-w[1] - disc) / (2.0 * w[2])};
        } else {
            std::vector<cplx> wio(w.begin(), w.end());
            wroots = num::durand_kerner(wio);
        }
        for (cplx wr : wroots) {
            cplx sq = std::sqrt(wr);
            roots.push_back(sq);
            roots.push_back(-sq);
        }
    } else {
        std::vector<cplx> cc(rest.begin(), rest.end());
        for (cplx r : num::durand_kerner(cc)) roots.push_back(r);
    }
    std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

}  // namespace

StabilityReport linearize_static(const PhaseState& x, const ModelParams& p) {
    const auto tag = conserved::classify_submanifold(x, p);
    using conserved::SubmanifoldTag;
    StabilityReport rep;
    if (tag == SubmanifoldTag::Sigma3)
        rep.family = FixedPointFamily::Sigma3;
    else if (tag == SubmanifoldTag::Sigma2 || tag == SubmanifoldTag::HornCenter)
        rep.family = FixedPointFamily::Sigma2;
    else
        throw std::invalid_argument("linearize_static: point is not a static solution");

    const double k = p.k, lam = p.lambda;
    // Jacobian of eom_rhs at x, order (l1,l2,l3,s1,s2,s3)
    std::vector<double> J(36, 0.0);
    auto at = [&](int r, int c) -> double& { return J[r * 6 + c]; };
    at(0, 4) = k;
    at(1, 3) = -k;
    const Vec3 L = x.L, S = x.S;
    // dy[3] = lam (y4 y2 - y5 y1), dy[4] = lam (y5 y0 - y3 y2), dy[5] = lam (y3 y1 - y4 y0)
    at(3, 1) = -lam * S[2];
    at(3, 2) = lam * S[1];
    at(3, 4) = lam * L[2];
    at(3, 5) = -lam * L[1];
    // dy[4] = lam (y5 y0 - y3 y2): d/dy0 = lam y5, d/dy2 = -lam y3, d/dy3 = -lam y2, d/dy5 = lam y0
    at(4, 0) = lam * S[2];
    at(4, 2) = -lam * S[0];
    at(4, 3) = -lam * L[2];
    at(4, 5) = lam * L[0];
    // dy[5] = lam (y3 y1 - y4 y0): d/dy0 = -lam y4, d/dy1 = lam y3, d/dy3 = lam y1, d/dy4 = -lam y0
    at(5, 0) = -lam * S[1];
    at(5, 1) = lam * S[0];
    at(5, 3) = lam * L[1];
    at(5, 4) = -lam * L[0];

    const auto cp = char_poly(J, 6);
    rep.eigenvalues = structured_roots(cp);

    // defect: for each distinct eigenvalue compare algebraic and geometric mult
    double normA = 0.0;
    for (double v : J) normA = std::max(normA, std::abs(v));
    const double tol = 1e-8 * std::max(normA, 1.0);
    std::vector<std::complex<double>> distinct;
    std::vector<int> alg;
    for (auto ev : rep.eigenvalues) {
        bool found = false;
        for (std::size_t i = 0; i < distinct.size(); ++i)
            if (std::abs(ev - distinct[i]) < 1e2 * tol) {
                ++alg[i];
                found = true;
                break;
            }
        if (!found) {
            distinct.push_back(ev);
            alg.push_back(1);
        }
    }
    rep.defect = 0;
    for (std::size_t i = 0; i < distinct.size(); ++i) {
        std::vector<std::complex<double>> shifted(36);
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 6; ++c)
                shifted[r * 6 + c] = J[r * 6 + c] - (r == c ? distinct[i] : 0.0);
        const int geo = 6 - num::matrix_rank(shifted, 6, tol);
        rep.defect += std::max(0, alg[i] - geo);
    }

    bool all_imag = true;
    for (auto ev : rep.eigenvalues)
        if (std::abs(ev.real()) > 1e2 * tol) all_imag = false;
    if (!all_imag)
        rep.classification = StabilityClass::SaddleFocus;
    else
        rep.classification = (rep.defect > 0) ? StabilityClass::CenterFlatLinearGrowth
                                              : StabilityClass::CenterFlat;
    return rep;
}

HornGradientReport horn_gradient_check(const Trajectory& traj, double m, double s,
                                       const ModelParams& p) {
    (void)s;
    HornGradientReport rep;
    const double k = p.k, lam = p.lambda;
    const double sgn = (k * m > 0) ? 1.0 : -1.0;
    const double eps_metric = 1.0;
    const double th_rate = 0.5 * k * m * lam;
    double prevW = 0.0, prev_theta = 0.0;
    bool first = true;
    rep.min_metric_det = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        const PhaseState& st = traj.states[i];
        const auto q = conserved::conserved_set(st, p);
        const double u = st.u(p);
        // unwrapped theta from the transverse L components
        double theta = std::atan2(st.L[1] / k, st.L[0] / k);
        if (!first) {
            while (theta - prev_theta > M_PI) theta -= 2.0 * M_PI;
            while (theta - prev_theta < -M_PI) theta += 2.0 * M_PI;
        }
        const auto rates = theta_phi_rates(u, q, lam, k);
        rep.theta_rate_max_dev = std::max(rep.theta_rate_max_dev,
                                          std::abs(rates.dtheta - th_rate));
        const double W = -sgn * theta;
        if (!first && W >= prevW) rep.monotone = false;
        // inverse metric g^{ij} = sign(km) [[Upsilon, phdot], [phdot, thdot]]
        const double thdot = rates.dtheta, phdot = rates.dphi;
        const double upsilon = phdot * phdot / thdot + sgn * eps_metric;
        const double det = upsilon * thdot - phdot * phdot;
        const double trace = sgn * (upsilon + thdot);
        rep.min_metric_det = std::min(rep.min_metric_det, det);
        if (det <= 0.0 || trace <= 0.0) rep.metric_positive = false;
        prevW = W;
        prev_theta = theta;
        first = false;
    }
    return rep;
}

}  // namespace screwon::dynamics
