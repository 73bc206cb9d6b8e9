#include "screwon/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace screwon::quantum {

namespace {

// Generalized radial operator data: -hb2 (rho'' + rho'/r - l^2 rho/r^2)
// + (a2 r^2 + a4 r^4) rho = E rho. The strong-coupling equation corresponds
// to hb2 = 1, a2 = a4 = g^2/4, E = g^2 E2.
struct RadialOp {
    double hb2 = 1.0;  // hbar_t^2
    double a2 = 1.0;
    double a4 = 0.0;
    int l = 0;

    double potential(double r) const { return (a2 + a4 * r * r) * r * r; }
    double effective(double r) const {
        return potential(r) + hb2 * static_cast<double>(l) * l / (r * r);
    }
};

double tail_exponent(const RadialOp& op, double r) {
    // rho ~ exp(-(sqrt(a4)/hbar)(r^3/3 + a2 r/(2 a4))) for a4 > 0; Gaussian
    // exp(-sqrt(a2) r^2 / (2 hbar)) for a4 = 0.
    const double hb = std::sqrt(op.hb2);
    if (op.a4 > 0.0)
        return (std::sqrt(op.a4) / hb) * (r * r * r / 3.0 + op.a2 * r / (2.0 * op.a4));
    return std::sqrt(std::max(op.a2, 1e-300)) * r * r / (2.0 * hb);
}

double choose_rmax(const RadialOp& op, double e_top) {
    // classically allowed up to the turning point of the highest level; then
    // extend until the WKB tail is < 1e-16.
    double r_turn = 1.0;
    for (int it = 0; it < 200; ++it) {
        if (op.effective(std::max(r_turn, 1e-6)) > e_top) break;
        r_turn *= 1.15;
    }
    double r = r_turn;
    while (tail_exponent(op, r) - tail_exponent(op, r_turn) < 40.0 && r < 1e4) r *= 1.1;
    return r;
}

// cell-centered FD eigenvalues (symmetrized tridiagonal + Sturm bisection)
std::vector<double> fd_eigs(const RadialOp& op, int n_levels, int N, double R) {
    const double h = R / N;
    std::vector<double> diag(N), off(N - 1);
    for (int i = 0; i < N; ++i) {
        const double r = (i + 0.5) * h;
        const double rp = (i + 1) * h, rm = i * h;
        diag[i] = op.hb2 * (rp + rm) / (r * h * h) +
                  op.hb2 * static_cast<double>(op.l) * op.l / (r * r) + op.potential(r);
        if (i + 1 < N) {
            const double rnext = (i + 1.5) * h;
            off[i] = -op.hb2 * rp / (h * h * std::sqrt(r * rnext));
        }
    }
    return num::tridiag_lowest_eigs(diag, off, n_levels);
}

// shooting: outward Frobenius start + inward WKB tail, Wronskian match
double shoot(const RadialOp& op, double E, double R) {
    // match at the outer turning point (or mid-domain fallback)
    double r_match = R * 0.5;
    for (double r = R; r > 1e-3; r *= 0.995) {
        if (op.effective(r) < E) {
            r_match = std::min(r * 1.0, R * 0.9);
            break;
        }
    }
    r_match = std::clamp(r_match, 0.05 * R, 0.9 * R);

    const double r0 = std::max(1e-4, 1e-5 * R);
    // series rho = r^l (1 + c2 r^2 + c4 r^4 + ...) for the general equation:
    // hb2 [(l+n)^2 - l^2] c_n = -E c_{n-2} + a2 c_{n-4} + a4 c_{n-6}
    std::array<double, 9> c{};
    c[0] = 1.0;
    for (int n = 2; n <= 8; n += 2) {
        double rhs = -E * c[n - 2];
        if (n >= 4) rhs += op.a2 * c[n - 4];
        if (n >= 6) rhs += op.a4 * c[n - 6];
        const double denom = op.hb2 * ((op.l + n) * (op.l + n) - op.l * op.l);
        c[n] = rhs / denom;
    }
    auto series = [&](double r) {
        double poly = 0.0, dpoly = 0.0;
        double rp = 1.0;
        for (int n = 0; n <= 8; n += 2) {
            poly += c[n] * rp;
            dpoly += (op.l + n) * c[n] * rp;
            rp *= r * r;
        }
        const double rl = std::pow(r, op.l);
        return std::pair<double, double>{rl * poly, rl * dpoly / r};
    };

    num::OdeRhs<2> rhs = [&](double r, const std::array<double, 2>& y,
                             std::array<double, 2>& dy) {
        dy[0] = y[1];
        dy[1] = -y[1] / r +
                (static_cast<double>(op.l) * op.l / (r * r) +
                 (op.potential(r) - E) / op.hb2) *
                    y[0];
    };

    auto [f0, df0] = series(r0);
    std::array<double, 2> yout{f0, df0};
    // integrate in modest hops, renormalizing to avoid overflow
    const int hops = 32;
    for (int i = 0; i < hops; ++i) {
        const double ta = r0 + (r_match - r0) * i / hops;
        const double tb = r0 + (r_match - r0) * (i + 1) / hops;
        num::rk45<2>(rhs, yout, ta, tb, 1e-12);
        const double mag = std::max(std::abs(yout[0]), std::abs(yout[1]));
        if (mag > 1e100) {
            yout[0] /= mag;
            yout[1] /= mag;
        }
    }

    // inward from R with WKB decay; integrating against the decay direction
    // is the stable way to pick up the subdominant solution
    const double kappaR = std::sqrt(std::max(op.effective(R) - E, 1e-12) / op.hb2);
    std::array<double, 2> yin{1.0, -kappaR};
    for (int i = 0; i < hops; ++i) {
        const double ta = R - (R - r_match) * i / hops;
        const double tb = R - (R - r_match) * (i + 1) / hops;
        num::rk45<2>(rhs, yin, ta, tb, 1e-12);
        const double mag = std::max(std::abs(yin[0]), std::abs(yin[1]));
        if (mag > 1e100) {
            yin[0] /= mag;
            yin[1] /= mag;
        }
    }

    const double wron = yout[1] * yin[0] - yin[1] * yout[0];
    const double scale = std::abs(yout[0] * yin[0]) + std::abs(yout[1] * yin[1]) + 1e-300;
    return wron / scale;
}

double shoot_refine(const RadialOp& op, double E_lo, double E_hi, double R) {
    double f_lo = shoot(op, E_lo, R);
    double f_hi = shoot(op, E_hi, R);
    // expand the bracket a little if needed
    for (int it = 0; it < 40 && f_lo * f_hi > 0.0; ++it) {
        const double w = E_hi - E_lo;
        E_lo -= 0.5 * w;
        E_hi += 0.5 * w;
        f_lo = shoot(op, E_lo, R);
        f_hi = shoot(op, E_hi, R);
    }
    if (f_lo * f_hi > 0.0)
        throw std::runtime_error("quantum: shooting failed to bracket an eigenvalue");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (E_lo + E_hi);
        const double fm = shoot(op, mid, R);
        if (fm == 0.0 || E_hi - E_lo < 1e-13 * (1.0 + std::abs(mid))) return mid;
        if ((fm > 0) == (f_lo > 0)) {
            E_lo = mid;
            f_lo = fm;
        } else {
            E_hi = mid;
        }
    }
    return 0.5 * (E_lo + E_hi);
}

Spectrum solve_operator(const RadialOp& op, int n_levels, GridSpec grid) {
    if (n_levels < 1) throw std::invalid_argument("solve_spectrum: n_levels >= 1");
    Spectrum spec;
    // crude top-level estimate to size the domain: harmonic upper bound
    double e_top = 0.0;
    {
        const double hb = std::sqrt(op.hb2);
        const double harm = 2.0 * hb * std::sqrt(std::max(op.a2, 0.25)) *
                            (2.0 * n_levels + std::abs(op.l) + 1.0);
        // quartic scaling fallback for large n
        const double quart = std::pow(op.a4, 1.0 / 3.0) *
                             std::pow(3.0 * hb * (n_levels + op.l + 1.0), 4.0 / 3.0);
        e_top = 2.0 * std::max(harm, quart) + 1.0;
    }
    const double R = grid.r_max > 0.0 ? grid.r_max : choose_rmax(op, e_top);
    const int N = grid.points;

    const auto coarse = fd_eigs(op, n_levels, N / 2, R);
    const auto fine = fd_eigs(op, n_levels, N, R);
    spec.grid_points = N;
    spec.r_max = R;
    for (int i = 0; i < n_levels; ++i) {
        LevelDiagnostics d;
        d.fd_value = (4.0 * fine[i] - coarse[i]) / 3.0;
        d.richardson_error = std::abs(fine[i] - coarse[i]) / 3.0;
        const double halfgap =
            (i + 1 < n_levels ? 0.5 * (fine[i + 1] - fine[i]) : 1.0 + std::abs(fine[i]) * 0.05);
        const double lo = d.fd_value - std::min(halfgap, 10.0 * d.richardson_error + 1e-6);
        const double hi = d.fd_value + std::min(halfgap, 10.0 * d.richardson_error + 1e-6);
        d.shooting_value = shoot_refine(op, lo, hi, R);
        d.disagreement = std::abs(d.shooting_value - d.fd_value);
        if (d.disagreement > 10.0 * std::max(d.richardson_error, 1e-10)) {
            std::ostringstream msg;
            msg << "quantum: solver disagreement at level " << i << ": fd=" << d.fd_value
                << " shooting=" << d.shooting_value << " estimate=" << d.richardson_error;
            throw std::runtime_error(msg.str());
        }
        spec.eigenvalues.push_back(d.shooting_value);
        spec.diagnostics.push_back(d);
    }
    return spec;
}

}  // namespace

Spectrum solve_spectrum(const RadialProblem& p, int n_levels, GridSpec grid) {
    if (p.hbar_t <= 0.0) throw std::invalid_argument("solve_spectrum: hbar_t > 0 required");
    RadialOp op{p.hbar_t * p.hbar_t, p.alpha_t(), p.beta_t(), std::abs(p.l)};
    return solve_operator(op, n_levels, grid);
}

Spectrum strong_coupling_spectrum(double g_t, int l, int n_levels, GridSpec grid) {
    if (g_t <= 0.0) throw std::invalid_argument("strong_coupling_spectrum: g_t > 0");
    RadialOp op{1.0, g_t * g_t / 4.0, g_t * g_t / 4.0, std::abs(l)};
    Spectrum spec = solve_operator(op, n_levels, grid);
    // eigenvalue of the operator form is g^2 E2
    for (auto& e : spec.eigenvalues) e /= g_t * g_t;
    for (auto& d : spec.diagnostics) {
        d.fd_value /= g_t * g_t;
        d.shooting_value /= g_t * g_t;
        d.richardson_error /= g_t * g_t;
        d.disagreement /= g_t * g_t;
    }
    return spec;
}

double strong_coupling_g(double lambda, double k, double m, double mu, double hbar) {
    // g_t = lambda_t / hbar_t with lambda_t = lambda m / sqrt(mu),
    // hbar_t = hbar / (k m^2 sqrt(mu))
    const double lambda_t = lambda * m / std::sqrt(mu);
    const double hbar_t = hbar / (k * m * m * std::sqrt(mu));
    return lambda_t / hbar_t;
}

// Four-term recursion from the series expansion of the strong-coupling
// radial equation: (2nl + n^2) rho_n + g^2 E2 rho_{n-2}
//   - (g^2/4)(rho_{n-4} + rho_{n-6}) = 0, odd coefficients zero.
std::vector<double> frobenius_coeffs(double g_t, double E2_t, int l, int N) {
    if (l < 0) throw std::invalid_argument("frobenius_coeffs: l >= 0 branch");
    if (N < 6) throw std::invalid_argument("frobenius_coeffs: N >= 6");
    std::vector<double> rho(N + 1, 0.0);
    rho[0] = 1.0;
    const double g2 = g_t * g_t;
    for (int n = 2; n <= N; n += 2) {
        double rhs = -g2 * E2_t * rho[n - 2];
        if (n >= 4) rhs += (g2 / 4.0) * rho[n - 4];
        if (n >= 6) rhs += (g2 / 4.0) * rho[n - 6];
        rho[n] = rhs / (2.0 * n * l + n * n);
    }
    return rho;
}

double asymptotic_tail(double r_t, double g_t) {
    return std::pow(r_t, -1.5) * std::exp(-(g_t / 2.0) * (r_t * r_t * r_t / 3.0 + r_t / 2.0));
}

double asymptotic_tail_log_deriv(double r_t, double g_t) {
    return -(g_t / 2.0) * (r_t * r_t + 0.5) - 1.5 / r_t;
}

double general_tail_log_deriv(double r_t, const RadialProblem& p) {
    const double b = p.beta_t(), a = p.alpha_t(), hb = p.hbar_t;
    // rho ~ r^{-3/2} exp(-(sqrt(b)/hb)(r^3/3 + a r/(2 b)))
    return -(std::sqrt(b) / hb) * (r_t * r_t + a / (2.0 * b)) - 1.5 / r_t;
}

// --------------------------------------------------------------- WKB

namespace {

struct WkbPoly {
    // p(r)^2 * r^2 = c3 s^3 + c2 s^2 + c1 s + c0 with s = r^2
    double c3 = 0.0, c2 = 0.0, c1 = 0.0, c0 = 0.0;
};

WkbPoly wkb_poly(const WkbParams& w, double E) {
    const double mu = w.mu, k = w.k, lam = w.lambda, m = w.m;
    const double alpha = lam * lam * m * m * k * k / (8.0 * mu) - lam * k * w.p_z / (2.0 * mu) +
                         k * k / 2.0;
    const double beta = lam * lam * k * k / (8.0 * mu);
    WkbPoly poly;
    poly.c3 = -2.0 * mu * beta;
    poly.c2 = -2.0 * mu * alpha;
    poly.c1 = 2.0 * mu * E - w.p_z * w.p_z - w.p_theta * lam * m * k - k * k * m * m * mu;
    poly.c0 = -w.p_theta * w.p_theta;
    return poly;
}

double wkb_p2(const WkbPoly& poly, double r) {
    const double s = r * r;
    return (((poly.c3 * s + poly.c2) * s + poly.c1) * s + poly.c0) / s;
}

}  // namespace

std::pair<double, double> wkb_turning_points(const WkbParams& w, double E) {
    const WkbPoly poly = wkb_poly(w, E);
    std::vector<double> roots;
    if (std::abs(poly.c3) > 1e-300) {
        roots = num::cubic_roots(poly.c2 / poly.c3, poly.c1 / poly.c3, poly.c0 / poly.c3);
    } else {
        // quadratic c2 s^2 + c1 s + c0
        const double disc = poly.c1 * poly.c1 - 4.0 * poly.c2 * poly.c0;
        if (disc < 0.0) throw std::runtime_error("wkb: no classically allowed interval");
        const double sd = std::sqrt(disc);
        roots = {(-poly.c1 - sd) / (2.0 * poly.c2), (-poly.c1 + sd) / (2.0 * poly.c2)};
        std::sort(roots.begin(), roots.end());
    }
    // allowed interval: the pair of adjacent positive roots with the
    // polynomial positive in between; p_theta = 0 opens the interval at r = 0
    std::vector<double> pos;
    const double cscale = std::abs(poly.c1) + std::abs(poly.c2) + std::abs(poly.c3) + 1e-300;
    if (std::abs(poly.c0) < 1e-14 * cscale) pos.push_back(0.0);
    for (double s : roots)
        if (s > 1e-14 * cscale) pos.push_back(s);
    std::sort(pos.begin(), pos.end());
    for (std::size_t i = 0; i + 1 < pos.size(); ++i) {
        const double smid = 0.5 * (pos[i] + pos[i + 1]);
        const double val = ((poly.c3 * smid + poly.c2) * smid + poly.c1) * smid + poly.c0;
        if (val > 0.0) return {std::sqrt(pos[i]), std::sqrt(pos[i + 1])};
    }
    throw std::runtime_error("wkb: no classically allowed interval at this energy");
}

double wkb_action(const WkbParams& w, double E) {
    const auto [r_lo, r_hi] = wkb_turning_points(w, E);
    const WkbPoly poly = wkb_poly(w, E);
    auto p2 = [&](double r) { return wkb_p2(poly, r); };
    // sqrt(p^2) vanishes like sqrt(r - r_turn) at each end; the substitution
    // r = r_lo + t^2 (resp. r_hi - t^2) renders both halves smooth.
    auto integrand_lo = [&](double t) {
        const double r = r_lo + t * t;
        return 2.0 * t * std::sqrt(std::max(p2(r), 0.0));
    };
    auto integrand_hi = [&](double t) {
        const double r = r_hi - t * t;
        return 2.0 * t * std::sqrt(std::max(p2(r), 0.0));
    };
    const double mid = 0.5 * (r_lo + r_hi);
    const double a = num::adaptive_gk(integrand_lo, 0.0, std::sqrt(mid - r_lo), 1e-11).value;
    const double b = num::adaptive_gk(integrand_hi, 0.0, std::sqrt(r_hi - mid), 1e-11).value;
    return a + b;
}

std::vector<double> wkb_levels(const WkbParams& w, int n_lo, int n_hi) {
    std::vector<double> out;
    // find the potential floor (minimum of effective potential) to start
    const WkbPoly probe = wkb_poly(w, 0.0);
    (void)probe;
    double E_lo = 1e-8;
    {
        // scan a coarse grid in E for the first E with allowed interval
        double E = 1e-6;
        for (int it = 0; it < 400; ++it) {
            try {
                wkb_turning_points(w, E);
                break;
            } catch (const std::runtime_error&) {
                E = E * 1.5 + 1e-6;
            }
        }
        E_lo = E;
    }
    for (int n = n_lo; n <= n_hi; ++n) {
        const double target = (n + w.maslov) * M_PI * w.hbar;
        // bracket: action is increasing in E
        double a = E_lo, b = std::max(2.0 * E_lo, 1.0);
        while (wkb_action(w, b) < target) {
            a = b;
            b *= 2.0;
            if (b > 1e12) throw std::runtime_error("wkb: failed to bracket level");
        }
        for (int it = 0; it < 200; ++it) {
            const double m = 0.5 * (a + b);
            if (wkb_action(w, m) < target)
                a = m;
            else
                b = m;
            if (b - a < 1e-12 * (1.0 + std::abs(b))) break;
        }
        out.push_back(0.5 * (a + b));
    }
    return out;
}

// --------------------------------------------------------- Ince typing

namespace {

struct Rational {
    std::vector<double> num, den;
};

int valuation(const std::vector<double>& c, double scale) {
    for (std::size_t i = 0; i < c.size(); ++i)
        if (std::abs(c[i]) > 1e-10 * scale) return static_cast<int>(i);
    return static_cast<int>(c.size());
}

double coeff_scale(const std::vector<double>& c) {
    double s = 0.0;
    for (double x : c) s = std::max(s, std::abs(x));
    return std::max(s, 1e-300);
}

int degree(const std::vector<double>& c) {
    const double s = coeff_scale(c);
    for (std::size_t i = c.size(); i-- > 0;)
        if (std::abs(c[i]) > 1e-10 * s) return static_cast<int>(i);
    return -1;
}

// pole order of num/den at x0 (positive = pole), and the limit of
// (x - x0)^order * num/den there.
std::pair<int, double> local_data(const Rational& f, double x0) {
    const auto ns = num::taylor_shift(f.num, x0);
    const auto ds = num::taylor_shift(f.den, x0);
    const int vn = valuation(ns, coeff_scale(f.num));
    const int vd = valuation(ds, coeff_scale(f.den));
    const int order = vd - vn;
    double lead = 0.0;
    if (vn < static_cast<int>(ns.size()) && vd < static_cast<int>(ds.size()))
        lead = ns[vn] / ds[vd];
    return {order, lead};
}

}  // namespace

std::string OdeSingularityType::to_string() const {
    std::ostringstream os;
    os << "[" << elementary << ", " << regular << ", ";
    if (species.empty()) {
        os << "0";
    } else {
        for (std::size_t i = 0; i < species.size(); ++i)
            os << (i ? ", " : "") << "1_" << species[i];
    }
    os << "]";
    return os.str();
}

OdeSingularityType ince_classify(const std::vector<double>& p_num,
                                 const std::vector<double>& p_den,
                                 const std::vector<double>& q_num,
                                 const std::vector<double>& q_den) {
    if (degree(p_den) < 0 || degree(q_den) < 0)
        throw std::invalid_argument("ince_classify: zero denominator");
    OdeSingularityType out;
    const Rational P{p_num, p_den}, Q{q_num, q_den};

    // candidate finite singular points: roots of either denominator
    std::vector<double> candidates;
    for (const auto* den : {&p_den, &q_den}) {
        const int d = degree(*den);
        if (d < 1) continue;
        std::vector<num::cplx> cc(den->begin(), den->begin() + d + 1);
        for (auto r : num::durand_kerner(cc))
            if (std::abs(r.imag()) < 1e-8) candidates.push_back(r.real());
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end(),
                                 [](double a, double b) { return std::abs(a - b) < 1e-8; }),
                     candidates.end());

    auto classify_point = [&](int ordp, int ordq, double A, double B) {
        if (ordp <= 0 && ordq <= 0) return;  // ordinary
        if (ordp <= 1 && ordq <= 2) {
            // regular; elementary iff |rho1 - rho2| = 1/2 with
            // rho^2 + (A - 1) rho + B = 0
            const double disc = (A - 1.0) * (A - 1.0) - 4.0 * B;
            const double diff = std::sqrt(std::abs(disc));
            if (disc >= 0.0 && std::abs(diff - 0.5) < 1e-9)
                ++out.elementary;
            else
                ++out.regular;
            return;
        }
        const int K1 = ordp - 2, K2 = ordq - 4;
        const double g = 1.0 + std::max(static_cast<double>(K1), K2 / 2.0);
        out.species.push_back(static_cast<int>(std::lround(2.0 * g)));
    };

    for (double x0 : candidates) {
        auto [ordp, leadp] = local_data(P, x0);
        auto [ordq, leadq] = local_data(Q, x0);
        const double A = (ordp == 1) ? leadp : 0.0;
        const double B = (ordq == 2) ? leadq : 0.0;
        classify_point(std::max(ordp, 0), std::max(ordq, 0), A, B);
    }

    // Point at infinity: with p ~ P z^{K1}, q ~ Q z^{K2} as z -> inf, the
    // singularity is irregular iff K1 >= 0 or K2 >= -1, with rank
    // g = 1 + max(K1, K2/2). Otherwise the expansion coefficients p_1 (of
    // 1/z) and q_2, q_3 decide ordinary vs regular.
    {
        const int dnp = degree(p_num), ddp = degree(p_den);
        const int dnq = degree(q_num), ddq = degree(q_den);
        const int K1 = dnp - ddp;
        const int K2 = dnq - ddq;
        if (K1 >= 0 || K2 >= -1) {
            const double g = 1.0 + std::max(static_cast<double>(K1), K2 / 2.0);
            out.species.push_back(static_cast<int>(std::lround(2.0 * g)));
        } else {
            const double p1 = (K1 == -1 && dnp >= 0) ? p_num[dnp] / p_den[ddp] : 0.0;
            const double q2 = (K2 == -2 && dnq >= 0) ? q_num[dnq] / q_den[ddq] : 0.0;
            const bool q_has_23 = (K2 == -2) || (K2 == -3);
            const bool ordinary = std::abs(p1 - 2.0) < 1e-12 && !q_has_23;
            if (!ordinary) {
                const double A = 2.0 - p1, B = q2;
                const double disc = (A - 1.0) * (A - 1.0) - 4.0 * B;
                const double diff = std::sqrt(std::abs(disc));
                if (disc >= 0.0 && std::abs(diff - 0.5) < 1e-9)
                    ++out.elementary;
                else
                    ++out.regular;
            }
        }
    }
    return out;
}

// --------------------------------------------- nilpotent representation

namespace {

struct Grid2D {
    int n = 0;
    double box = 0.0, h = 0.0;
    std::vector<double> x;  // coordinates

    explicit Grid2D(int n_, double box_) : n(n_), box(box_), h(2.0 * box_ / (n_ - 1)) {
        x.resize(n);
        for (int i = 0; i < n; ++i) x[i] = -box + i * h;
    }
};

using Field = std::vector<num::cplx>;  // row-major n x n, index i*n + j over (x_i, y_j)

Field dx_field(const Grid2D& g, const Field& f) {
    Field out(f.size(), 0.0);
    const int n = g.n;
    auto idx = [n](int i, int j) { return i * n + j; };
    static const double w[4] = {0.8, -0.2, 4.0 / 105.0, -1.0 / 280.0};
    for (int i = 4; i < n - 4; ++i)
        for (int j = 0; j < n; ++j) {
            num::cplx d = 0.0;
            for (int s = 1; s <= 4; ++s) d += w[s - 1] * (f[idx(i + s, j)] - f[idx(i - s, j)]);
            out[idx(i, j)] = d / g.h;
        }
    return out;
}

Field dy_field(const Grid2D& g, const Field& f) {
    Field out(f.size(), 0.0);
    const int n = g.n;
    auto idx = [n](int i, int j) { return i * n + j; };
    static const double w[4] = {0.8, -0.2, 4.0 / 105.0, -1.0 / 280.0};
    for (int i = 0; i < n; ++i)
        for (int j = 4; j < n - 4; ++j) {
            num::cplx d = 0.0;
            for (int s = 1; s <= 4; ++s) d += w[s - 1] * (f[idx(i, j + s)] - f[idx(i, j - s)]);
            out[idx(i, j)] = d / g.h;
        }
    return out;
}

double norm(const Field& f) {
    double s = 0.0;
    for (auto v : f) s += std::norm(v);
    return std::sqrt(s);
}

}  // namespace

double nilrep_residual(double m, double p_z, const ModelParams& mp, NilrepOptions opt) {
    const double k = mp.k, lam = mp.lambda, hb = mp.hbar;
    const Grid2D g(opt.grid, opt.box);
    const int n = g.n;
    auto idx = [n](int i, int j) { return i * n + j; };

    // operators as closures: multiplication and first derivatives
    auto mulxy = [&](const Field& f, auto&& fn) {
        Field out(f.size());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out[idx(i, j)] = fn(g.x[i], g.x[j]) * f[idx(i, j)];
        return out;
    };
    const num::cplx I{0.0, 1.0};
    auto S1 = [&](const Field& f) {
        Field d = dx_field(g, f);
        Field out(f.size());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out[idx(i, j)] = -I * hb * d[idx(i, j)] - 0.5 * lam * m * k * g.x[j] * f[idx(i, j)];
        return out;
    };
    auto S2 = [&](const Field& f) {
        Field d = dy_field(g, f);
        Field out(f.size());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out[idx(i, j)] = -I * hb * d[idx(i, j)] + 0.5 * lam * m * k * g.x[i] * f[idx(i, j)];
        return out;
    };
    auto S3 = [&](const Field& f) {
        return mulxy(f, [&](double x, double y) {
            return (p_z - k / lam) - 0.5 * lam * k * (x * x + y * y);
        });
    };
    auto L1 = [&](const Field& f) { return mulxy(f, [&](double, double y) { return k * y; }); };
    auto L2 = [&](const Field& f) { return mulxy(f, [&](double x, double) { return -k * x; }); };

    // test functions: gaussians times low polynomials, decayed to ~1e-20 at
    // the box edge so the skipped stencil margin carries no weight
    std::vector<Field> tests;
    const int nf = std::max(1, opt.test_functions);
    for (int t = 0; t < nf; ++t) {
        Field f(static_cast<std::size_t>(n) * n);
        const double sig = 0.8 + 0.04 * (t % 4);
        const double x0 = 0.3 * std::cos(2.1 * t), y0 = 0.3 * std::sin(1.7 * t);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double x = g.x[i] - x0, y = g.x[j] - y0;
                double poly = 1.0;
                switch (t % 4) {
                    case 1: poly = x; break;
                    case 2: poly = y; break;
                    case 3: poly = x * y; break;
                    default: break;
                }
                f[idx(i, j)] = poly * std::exp(-(x * x + y * y) / (2.0 * sig * sig));
            }
        tests.push_back(std::move(f));
    }

    auto commutator_residual = [&](auto&& X, auto&& Y, auto&& rhs_fn, const Field& psi) {
        Field a = X(Y(psi)), b = Y(X(psi)), r = rhs_fn(psi);
        double worst = 0.0;
        Field diff(psi.size());
        for (std::size_t i = 0; i < psi.size(); ++i) diff[i] = a[i] - b[i] - r[i];
        worst = norm(diff) / norm(psi);
        return worst;
    };

    double worst = 0.0;
    for (const auto& psi : tests) {
        // [L1, S2] = i hb k I
        worst = std::max(worst, commutator_residual(L1, S2, [&](const Field& f) {
            Field o(f.size());
            for (std::size_t i = 0; i < f.size(); ++i) o[i] = I * hb * k * f[i];
            return o;
        }, psi));
        // [L2, S1] = -i hb k I
        worst = std::max(worst, commutator_residual(L2, S1, [&](const Field& f) {
            Field o(f.size());
            for (std::size_t i = 0; i < f.size(); ++i) o[i] = -I * hb * k * f[i];
            return o;
        }, psi));
        // [S1, S2] = i hb lam L3 = -i hb lam m k
        worst = std::max(worst, commutator_residual(S1, S2, [&](const Field& f) {
            Field o(f.size());
            for (std::size_t i = 0; i < f.size(); ++i) o[i] = -I * hb * lam * m * k * f[i];
            return o;
        }, psi));
        // [S1, S3] = -i hb lam L2 = i hb lam k x
        worst = std::max(worst, commutator_residual(S1, S3, [&](const Field& f) {
            Field o(f.size());
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) o[idx(i, j)] = I * hb * lam * k * g.x[i] * f[idx(i, j)];
            return o;
        }, psi));
        // [S2, S3] = i hb lam L1 = i hb lam k y
        worst = std::max(worst, commutator_residual(S2, S3, [&](const Field& f) {
            Field o(f.size());
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) o[idx(i, j)] = I * hb * lam * k * g.x[j] * f[idx(i, j)];
            return o;
        }, psi));
    }
    return worst;
}

double nilrep_casimir_residual(double m, double p_z, const ModelParams& mp, NilrepOptions opt) {
    const double k = mp.k, lam = mp.lambda;
    const Grid2D g(opt.grid, opt.box);
    const int n = g.n;
    auto idx = [n](int i, int j) { return i * n + j; };
    const double expected = 0.5 * m * m * k * k + k * p_z / lam - k * k / (lam * lam);
    // c k^2 = (L1^2 + L2^2 + L3^2)/2 + k S3 / lam; everything multiplicative
    Field psi(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            psi[idx(i, j)] = std::exp(-(g.x[i] * g.x[i] + g.x[j] * g.x[j]) / 2.0);
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double x = g.x[i], y = g.x[j];
            const double L12sq = k * k * (x * x + y * y);
            const double S3v = (p_z - k / lam) - 0.5 * lam * k * (x * x + y * y);
            const double ck2 = 0.5 * (L12sq + m * m * k * k) + k * S3v / lam;
            worst = std::max(worst, std::abs((ck2 - expected) * std::abs(psi[idx(i, j)])));
        }
    return worst;
}

}  // namespace screwon::quantum
