#include "screwon/numerics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace screwon::num {

namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct GkEval {
    double kronrod;
    double err;
};

GkEval gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    double fc = f(c);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        double x = hw * kXgk[j];
        double f1 = f(c - x), f2 = f(c + x);
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    resk *= hw;
    resg *= hw;
    return {resk, std::abs(resk - resg)};
}

}  // namespace

QuadResult adaptive_gk(const std::function<double(double)>& f, double a, double b,
                       double rel_tol, double abs_tol, int max_intervals) {
    struct Seg {
        double a, b, val, err;
    };
    QuadResult out;
    if (a == b) return out;
    GkEval first = gk15(f, a, b);
    out.evals = 15;
    std::vector<Seg> segs{{a, b, first.kronrod, first.err}};
    for (int iter = 0; iter < max_intervals; ++iter) {
        double total = 0.0, errsum = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            total += segs[i].val;
            errsum += segs[i].err;
            if (segs[i].err > segs[worst].err) worst = i;
        }
        if (errsum <= std::max(abs_tol, rel_tol * std::abs(total))) {
            out.value = total;
            out.error = errsum;
            return out;
        }
        Seg s = segs[worst];
        double mid = 0.5 * (s.a + s.b);
        GkEval l = gk15(f, s.a, mid), r = gk15(f, mid, s.b);
        out.evals += 30;
        segs[worst] = {s.a, mid, l.kronrod, l.err};
        segs.push_back({mid, s.b, r.kronrod, r.err});
    }
    double total = 0.0, errsum = 0.0;
    for (auto& s : segs) {
        total += s.val;
        errsum += s.err;
    }
    out.value = total;
    out.error = errsum;
    return out;
}

QuadResult integrate_inverse_sqrt(const std::function<double(double)>& g,
                                  const std::function<double(double)>& p, double a,
                                  double b, bool singular_at_a, bool singular_at_b,
                                  double rel_tol) {
    auto piece = [&](double lo, double hi, bool from_lo) {
        // from_lo: substitute u = lo + w^2; else u = hi - w^2.
        double wmax = std::sqrt(hi - lo);
        auto integrand = [&](double w) {
            double u = from_lo ? lo + w * w : hi - w * w;
            double pu = p(u);
            double base = from_lo ? (u - a) : (b - u);
            // p(u) = (u-a)*(rest) or (b-u)*(rest); divide out the simple zero.
            double rest = pu / base;
            if (rest <= 0.0) rest = std::numeric_limits<double>::min();
            return 2.0 * g(u) / std::sqrt(rest);
        };
        return adaptive_gk(integrand, 0.0, wmax, rel_tol);
    };
    QuadResult out;
    if (singular_at_a && singular_at_b) {
        double mid = 0.5 * (a + b);
        QuadResult lo = piece(a, mid, true);
        QuadResult hi = piece(mid, b, false);
        out.value = lo.value + hi.value;
        out.error = lo.error + hi.error;
        out.evals = lo.evals + hi.evals;
    } else if (singular_at_a) {
        out = piece(a, b, true);
    } else if (singular_at_b) {
        out = piece(a, b, false);
    } else {
        auto integrand = [&](double u) { return g(u) / std::sqrt(p(u)); };
        out = adaptive_gk(integrand, a, b, rel_tol);
    }
    return out;
}

// ----------------------------------------------------------------- RK45

namespace {
// Dormand-Prince coefficients.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
                 B5 = -2187.0 / 6784, B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920,
                 E5 = -17253.0 / 339200, E6 = 22.0 / 525, E7 = -1.0 / 40;
}  // namespace

template <std::size_t N>
OdeStats rk45(const OdeRhs<N>& f, std::array<double, N>& y, double t0, double t1,
              double tol, const std::function<void(double, const std::array<double, N>&)>& on_step) {
    OdeStats stats;
    stats.tol = tol;
    if (t0 == t1) return stats;
    const double dir = (t1 > t0) ? 1.0 : -1.0;
    double t = t0;
    std::array<double, N> k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;
    f(t, y, k1);
    double h = dir * std::min(std::abs(t1 - t0), 1e-2);
    double err_prev = 1.0;
    const double safety = 0.9, min_h = std::abs(t1 - t0) * 1e-15;
    while (dir * (t1 - t) > 0.0) {
        if (dir * (t + h - t1) > 0.0) h = t1 - t;
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * A21 * k1[i];
        f(t + h / 5.0, ytmp, k2);
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
        f(t + 3.0 * h / 10.0, ytmp, k3);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        f(t + 4.0 * h / 5.0, ytmp, k4);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        f(t + 8.0 * h / 9.0, ytmp, k5);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
        f(t + h, ytmp, k6);
        for (std::size_t i = 0; i < N; ++i)
            ynew[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
        f(t + h, ynew, k7);
        double errnorm = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            double sc = tol * (1.0 + std::max(std::abs(y[i]), std::abs(ynew[i])));
            errnorm += (e / sc) * (e / sc);
        }
        errnorm = std::sqrt(errnorm / N);
        if (errnorm <= 1.0) {
            t += h;
            y = ynew;
            k1 = k7;
            ++stats.steps;
            if (on_step) on_step(t, y);
            // PI controller
            double fac = safety * std::pow(errnorm + 1e-30, -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
            fac = std::clamp(fac, 0.2, 6.0);
            h *= fac;
            err_prev = errnorm + 1e-30;
        } else {
            ++stats.rejected;
            h *= std::max(0.1, safety * std::pow(errnorm, -0.2));
            if (std::abs(h) < min_h) throw std::runtime_error("rk45: step-size underflow");
        }
    }
    return stats;
}

template <std::size_t N>
OdeStats rk45_sampled(const OdeRhs<N>& f, std::array<double, N> y,
                      const std::vector<double>& times, double tol,
                      const std::function<void(double, const std::array<double, N>&)>& on_sample) {
    OdeStats total;
    total.tol = tol;
    if (times.empty()) return total;
    on_sample(times.front(), y);
    for (std::size_t i = 1; i < times.size(); ++i) {
        OdeStats s = rk45<N>(f, y, times[i - 1], times[i], tol);
        total.steps += s.steps;
        total.rejected += s.rejected;
        on_sample(times[i], y);
    }
    return total;
}

template OdeStats rk45<2>(const OdeRhs<2>&, std::array<double, 2>&, double, double, double,
                          const std::function<void(double, const std::array<double, 2>&)>&);
template OdeStats rk45<6>(const OdeRhs<6>&, std::array<double, 6>&, double, double, double,
                          const std::function<void(double, const std::array<double, 6>&)>&);
template OdeStats rk45_sampled<2>(const OdeRhs<2>&, std::array<double, 2>,
                                  const std::vector<double>&, double,
                                  const std::function<void(double, const std::array<double, 2>&)>&);
template OdeStats rk45_sampled<6>(const OdeRhs<6>&, std::array<double, 6>,
                                  const std::vector<double>&, double,
                                  const std::function<void(double, const std::array<double, 6>&)>&);

// ----------------------------------------------------------- polynomials

double poly_eval(const std::vector<double>& p, double x) {
    double v = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
    return v;
}

cplx poly_eval(const std::vector<cplx>& p, cplx x) {
    cplx v = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
    return v;
}

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<double> c(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

std::vector<double> poly_deriv(const std::vector<double>& p) {
    if (p.size() <= 1) return {0.0};
    std::vector<double> d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<double>(i);
    return d;
}

std::vector<double> taylor_shift(const std::vector<double>& p, double x0) {
    // repeated synthetic division; afterwards a[k] = p^(k)(x0)/k!
    std::vector<double> a = p;
    const std::size_t n = a.size();
    if (n < 2) return a;
    for (std::size_t k = 0; k + 1 < n; ++k)
        for (std::size_t i = n - 1; i-- > k;) a[i] += x0 * a[i + 1];
    return a;
}

std::vector<cplx> durand_kerner(std::vector<cplx> coeffs, int max_iter) {
    while (coeffs.size() > 1 && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
    const int n = static_cast<int>(coeffs.size()) - 1;
    if (n < 1) return {};
    cplx lead = coeffs.back();
    for (auto& c : coeffs) c /= lead;
    std::vector<cplx> r(n);
    // scale-aware starting circle
    double scale = 0.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::pow(std::abs(coeffs[i]), 1.0 / (n - i)));
    scale = std::max(scale, 0.5);
    for (int i = 0; i < n; ++i)
        r[i] = scale * std::polar(1.0, 2.0 * M_PI * i / n + 0.4);
    for (int it = 0; it < max_iter; ++it) {
        double delta = 0.0;
        for (int i = 0; i < n; ++i) {
            cplx num = poly_eval(coeffs, r[i]);
            cplx den = 1.0;
            for (int j = 0; j < n; ++j)
                if (j != i) den *= (r[i] - r[j]);
            if (std::abs(den) < 1e-300) den = 1e-300;
            cplx step = num / den;
            r[i] -= step;
            delta = std::max(delta, std::abs(step));
        }
        if (delta < 1e-14 * std::max(1.0, scale)) break;
    }
    // Newton polish
    std::vector<cplx> dcoef(n);
    for (int i = 1; i <= n; ++i) dcoef[i - 1] = coeffs[i] * static_cast<double>(i);
    for (auto& root : r) {
        for (int it = 0; it < 3; ++it) {
            cplx d = poly_eval(dcoef, root);
            if (std::abs(d) < 1e-14) break;
            root -= poly_eval(coeffs, root) / d;
        }
    }
    return r;
}

std::vector<double> cubic_roots(double b, double c, double d) {
    // x^3 + b x^2 + c x + d; depressed via x = t - b/3.
    const double p = c - b * b / 3.0;
    const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    const double shift = -b / 3.0;
    const double disc = -4.0 * p * p * p - 27.0 * q * q;  // of t^3 + p t + q
    std::vector<double> roots;
    if (disc >= 0.0) {
        if (p == 0.0 && q == 0.0) {
            roots = {shift, shift, shift};
        } else {
            double rho = 2.0 * std::sqrt(std::max(-p / 3.0, 0.0));
            double arg = std::clamp(3.0 * q / (p * rho + 1e-300), -1.0, 1.0);
            // t_k = rho * cos(phi/3 - 2 pi k/3) with cos(phi) = 3q/(p*rho)
            double phi = std::acos(arg);
            for (int k = 0; k < 3; ++k)
                roots.push_back(rho * std::cos(phi / 3.0 - 2.0 * M_PI * k / 3.0) + shift);
        }
    } else {
        double u3 = -q / 2.0 + std::sqrt(q * q / 4.0 + p * p * p / 27.0);
        double u = std::cbrt(u3);
        double v = (u == 0.0) ? 0.0 : -p / (3.0 * u);
        roots.push_back(u + v + shift);
    }
    // Newton polish
    const std::vector<double> poly{d, c, b, 1.0}, dpoly{c, 2.0 * b, 3.0};
    for (auto& r : roots) {
        for (int it = 0; it < 2; ++it) {
            double der = poly_eval(dpoly, r);
            if (std::abs(der) < 1e-12) break;
            r -= poly_eval(poly, r) / der;
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

double cubic_discriminant(double b, double c, double d) {
    return 18.0 * b * c * d - 4.0 * b * b * b * d + b * b * c * c - 4.0 * c * c * c -
           27.0 * d * d;
}

// ---------------------------------------------------------- linear algebra

std::vector<double> singular_values(const std::vector<double>& a, int rows, int cols) {
    // one-sided Jacobi on columns of A (rows x cols, row-major)
    std::vector<double> u = a;
    auto coldot = [&](int i, int j) {
        double s = 0.0;
        for (int r = 0; r < rows; ++r) s += u[r * cols + i] * u[r * cols + j];
        return s;
    };
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < cols - 1; ++i) {
            for (int j = i + 1; j < cols; ++j) {
                double aii = coldot(i, i), ajj = coldot(j, j), aij = coldot(i, j);
                off = std::max(off, std::abs(aij) / std::sqrt(aii * ajj + 1e-300));
                if (std::abs(aij) < 1e-30) continue;
                double tau = (ajj - aii) / (2.0 * aij);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double cth = 1.0 / std::sqrt(1.0 + t * t), sth = cth * t;
                for (int r = 0; r < rows; ++r) {
                    double x = u[r * cols + i], y = u[r * cols + j];
                    u[r * cols + i] = cth * x - sth * y;
                    u[r * cols + j] = sth * x + cth * y;
                }
            }
        }
        if (off < 1e-15) break;
    }
    std::vector<double> sv(cols);
    for (int j = 0; j < cols; ++j) sv[j] = std::sqrt(std::max(coldot(j, j), 0.0));
    std::sort(sv.rbegin(), sv.rend());
    return sv;
}

int matrix_rank(std::vector<cplx> a, int n, double tol) {
    int rank = 0;
    std::vector<int> used(n, 0);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        double best = tol;
        for (int r = 0; r < n; ++r) {
            if (!used[r] && std::abs(a[r * n + col]) > best) {
                best = std::abs(a[r * n + col]);
                piv = r;
            }
        }
        if (piv < 0) continue;
        used[piv] = 1;
        ++rank;
        for (int r = 0; r < n; ++r) {
            if (r == piv || std::abs(a[r * n + col]) == 0.0) continue;
            cplx f = a[r * n + col] / a[piv * n + col];
            for (int cc = col; cc < n; ++cc) a[r * n + cc] -= f * a[piv * n + cc];
        }
    }
    return rank;
}

double determinant(std::vector<double> a, int n) {
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        if (std::abs(a[piv * n + col]) == 0.0) return 0.0;
        if (piv != col) {
            for (int cc = 0; cc < n; ++cc) std::swap(a[piv * n + cc], a[col * n + cc]);
            det = -det;
        }
        det *= a[col * n + col];
        for (int r = col + 1; r < n; ++r) {
            double f = a[r * n + col] / a[col * n + col];
            for (int cc = col; cc < n; ++cc) a[r * n + cc] -= f * a[col * n + cc];
        }
    }
    return det;
}

std::vector<double> tridiag_lowest_eigs(const std::vector<double>& diag,
                                        const std::vector<double>& off, int k, double tol) {
    const int n = static_cast<int>(diag.size());
    k = std::min(k, n);
    // Gershgorin bounds
    double lo = diag[0], hi = diag[0];
    for (int i = 0; i < n; ++i) {
        double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(off[i]) : 0.0);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    auto count_below = [&](double x) {
        // Sturm sequence: number of eigenvalues < x
        int cnt = 0;
        double d = diag[0] - x;
        if (d < 0) ++cnt;
        for (int i = 1; i < n; ++i) {
            double o = off[i - 1];
            if (d == 0.0) d = 1e-300;
            d = (diag[i] - x) - o * o / d;
            if (d < 0) ++cnt;
        }
        return cnt;
    };
    std::vector<double> eigs(k);
    double span = hi - lo;
    for (int idx = 0; idx < k; ++idx) {
        double a = lo, b = hi;
        while (b - a > tol * std::max(1.0, std::abs(a) + std::abs(b)) && b - a > 1e-300 * span) {
            double mid = 0.5 * (a + b);
            if (count_below(mid) > idx)
                b = mid;
            else
                a = mid;
        }
        eigs[idx] = 0.5 * (a + b);
    }
    return eigs;
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    LinearFit fit;
    const std::size_t n = x.size();
    if (n < 2) return fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    for (std::size_t i = 0; i < n; ++i)
        fit.max_residual = std::max(fit.max_residual,
                                    std::abs(y[i] - fit.slope * x[i] - fit.intercept));
    return fit;
}

}  // namespace screwon::num
