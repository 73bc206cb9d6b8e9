#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace screwon::num {

using cplx = std::complex<double>;

// Thrown when an operation is asked for in a regime where it degenerates
// (repeated roots, diverging periods, non-torus level sets).
struct degenerate_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- quadrature

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int evals = 0;
};

// Adaptive Gauss-Kronrod 7-15 on [a, b]. The integrand must be finite on the
// open interval; integrable endpoint singularities should be removed by a
// substitution before calling.
QuadResult adaptive_gk(const std::function<double(double)>& f, double a, double b,
                       double rel_tol = 1e-12, double abs_tol = 1e-14,
                       int max_intervals = 4000);

// \int_a^b g(u) / sqrt(p(u)) du where p has simple zeros at one or both
// endpoints. Substitutes u = a + w^2 (and from the top) so the integrand is
// smooth, then applies adaptive_gk on each half.
QuadResult integrate_inverse_sqrt(const std::function<double(double)>& g,
                                  const std::function<double(double)>& p,
                                  double a, double b,
                                  bool singular_at_a, bool singular_at_b,
                                  double rel_tol = 1e-12);

// ------------------------------------------------------------------- ODE

struct OdeStats {
    std::size_t steps = 0;
    std::size_t rejected = 0;
    double tol = 0.0;
};

// Dormand-Prince 5(4) with PI step control. Integrates y' = f(t, y) from t0
// to t1 (t1 < t0 integrates backwards). The callback, when given, is invoked
// after every accepted step with (t, y).
template <std::size_t N>
using OdeRhs = std::function<void(double, const std::array<double, N>&, std::array<double, N>&)>;

template <std::size_t N>
OdeStats rk45(const OdeRhs<N>& f, std::array<double, N>& y, double t0, double t1,
              double tol,
              const std::function<void(double, const std::array<double, N>&)>& on_step = {});

// Integrates hitting each time in `times` exactly (steps are clipped), calling
// on_sample at each requested time, including times.front() == t0.
template <std::size_t N>
OdeStats rk45_sampled(const OdeRhs<N>& f, std::array<double, N> y,
                      const std::vector<double>& times, double tol,
                      const std::function<void(double, const std::array<double, N>&)>& on_sample);

extern template OdeStats rk45<2>(const OdeRhs<2>&, std::array<double, 2>&, double, double,
                                 double, const std::function<void(double, const std::array<double, 2>&)>&);
extern template OdeStats rk45<6>(const OdeRhs<6>&, std::array<double, 6>&, double, double,
                                 double, const std::function<void(double, const std::array<double, 6>&)>&);
extern template OdeStats rk45_sampled<2>(const OdeRhs<2>&, std::array<double, 2>,
                                         const std::vector<double>&, double,
                                         const std::function<void(double, const std::array<double, 2>&)>&);
extern template OdeStats rk45_sampled<6>(const OdeRhs<6>&, std::array<double, 6>,
                                         const std::vector<double>&, double,
                                         const std::function<void(double, const std::array<double, 6>&)>&);

// ------------------------------------------------------------- polynomials

// Coefficients are stored ascending: p[0] + p[1] x + ...
double poly_eval(const std::vector<double>& p, double x);
cplx poly_eval(const std::vector<cplx>& p, cplx x);
std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b);
std::vector<double> poly_deriv(const std::vector<double>& p);
// Expands p around x0: returns q with p(x0 + w) = sum q[i] w^i.
std::vector<double> taylor_shift(const std::vector<double>& p, double x0);

// All roots of a complex polynomial by Durand-Kerner with a Newton polish.
std::vector<cplx> durand_kerner(std::vector<cplx> coeffs, int max_iter = 200);

// Real roots of the monic cubic x^3 + b x^2 + c x + d (ascending order).
// Returns 1 or 3 entries; repeated roots are returned repeated.
std::vector<double> cubic_roots(double b, double c, double d);

// Monic-cubic discriminant, equal to the product of squared root differences.
double cubic_discriminant(double b, double c, double d);

// ---------------------------------------------------------- linear algebra

// Singular values (descending) of a dense m x n matrix (row-major), m <= 8.
std::vector<double> singular_values(const std::vector<double>& a, int rows, int cols);

// Rank of a complex square matrix by row echelon with partial pivoting.
int matrix_rank(std::vector<cplx> a, int n, double tol);

// det of a small real matrix (row-major), n <= 8, by LU.
double determinant(std::vector<double> a, int n);

// Lowest k eigenvalues of a symmetric tridiagonal matrix by Sturm bisection.
std::vector<double> tridiag_lowest_eigs(const std::vector<double>& diag,
                                        const std::vector<double>& off, int k,
                                        double tol = 1e-13);

// ----------------------------------------------------------------- fitting

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
};
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// --------------------------------------------------------------- stencils

// Central first derivative, order 8, of samples with spacing h (interior).
inline double deriv8(const double* y, double h) {
    return (0.8 * (y[1] - y[-1]) - 0.2 * (y[2] - y[-2]) + (4.0 / 105.0) * (y[3] - y[-3]) -
            (1.0 / 280.0) * (y[4] - y[-4])) / h;
}

}  // namespace screwon::num
