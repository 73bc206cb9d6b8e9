#include "screwon/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "screwon/actionangle.hpp"
#include "screwon/conserved.hpp"
#include "screwon/dynamics.hpp"
#include "screwon/elliptic.hpp"
#include "screwon/lax.hpp"
#include "screwon/levelsets.hpp"
#include "screwon/poisson.hpp"
#include "screwon/quantum.hpp"

namespace screwon::verify {

namespace {

PhaseState random_state(std::mt19937_64& rng, double span = 3.0) {
    std::uniform_real_distribution<double> d(-span, span);
    PhaseState x;
    for (int a = 0; a < 3; ++a) {
        x.L[a] = d(rng);
        x.S[a] = d(rng);
    }
    return x;
}

void push(std::vector<CheckResult>& out, const std::string& name, double value,
          double threshold, const std::string& detail = "") {
    out.push_back({name, value <= threshold, value, threshold, detail});
}

}  // namespace

std::vector<CheckResult> run_all(const Options& opt) {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(opt.seed);
    const ModelParams p{1.0, 1.0, 1.0, 1.0};

    // --- poisson: Jacobi identity across the pencil
    {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const auto x = random_state(rng);
            for (double a : {0.0, 0.25, 0.5, 0.75, 1.0})
                worst = std::max(worst,
                                 poisson::jacobi_residual(poisson::Structure::pencil_of(a), x, p));
        }
        push(out, "poisson.jacobi_pencil", worst, 1e-12);
    }
    // --- poisson: rank 4 with two-dimensional kernel
    {
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            const auto x = random_state(rng);
            for (double a : {0.0, 0.5, 1.0}) {
                const auto sv =
                    poisson::tensor_singular_values(poisson::Structure::pencil_of(a), x, p);
                worst = std::max(worst, sv[4] / sv[0]);
            }
        }
        push(out, "poisson.rank4_kernel", worst, 1e-10);
    }
    // --- conserved: energy formula equivalence and drift
    {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const auto x = random_state(rng);
            const auto q = conserved::conserved_set(x, p);
            const double direct = conserved::energy_direct(x, p);
            worst = std::max(worst, std::abs(q.E - direct) / (1.0 + std::abs(direct)));
        }
        push(out, "conserved.energy_two_routes", worst, 1e-12);
    }
    {
        double worst = 0.0;
        for (int i = 0; i < 3; ++i) {
            const auto x = random_state(rng);
            const auto traj = dynamics::integrate(x, p, 30.0, 1e-10);
            worst = std::max(worst, conserved::drift(traj, p).max());
        }
        push(out, "conserved.drift", worst, 1e-7);
    }
    // --- lax: trace polynomials against closed forms
    {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const auto x = random_state(rng);
            const auto q = conserved::conserved_set(x, p);
            const auto t2 = lax::trace_poly(x, p, 2);
            const auto t2c = lax::trace2_closed_form(q, p);
            const auto t4 = lax::trace_poly(x, p, 4);
            const auto t4c = lax::trace4_closed_form(q, p);
            for (std::size_t j = 0; j < t2.size(); ++j)
                worst = std::max(worst, std::abs(t2[j] - t2c[j]) / (1.0 + std::abs(t2c[j])));
            for (std::size_t j = 0; j < t4.size(); ++j)
                worst = std::max(worst, std::abs(t4[j] - t4c[j]) / (1.0 + std::abs(t4c[j])));
        }
        push(out, "lax.trace_closed_forms", worst, 1e-10);
    }
    // --- lax: r-matrix fundamental bracket identity (fault-injection point)
    {
        double worst = 0.0;
        const std::vector<std::pair<lax::cplx, lax::cplx>> zz{
            {{2.0, 0.0}, {0.5, 0.0}}, {{1.0, 1.0}, {-1.0, 0.0}}, {{0.3, -0.7}, {1.4, 0.2}}};
        for (int i = 0; i < 10; ++i) {
            const auto x = random_state(rng);
            for (const auto& [za, zb] : zz) {
                worst = std::max(worst, lax::rmatrix_residual(x, p, poisson::Kind::Nilpotent, za,
                                                              zb, opt.rmatrix_scale));
                worst = std::max(worst, lax::rmatrix_residual(x, p, poisson::Kind::Euclidean, za,
                                                              zb, opt.rmatrix_scale));
            }
        }
        push(out, "lax.rmatrix_fpb", worst, 1e-12);
    }
    // --- lax: Lax equation residual along a trajectory
    {
        const PhaseState x0{{0.4, -0.3, 0.8}, {0.9, 0.2, -0.5}};
        std::vector<double> times;
        for (int i = 0; i <= 4000; ++i) times.push_back(i * 1e-3);
        const auto traj = dynamics::integrate_sampled(x0, p, times, 1e-10);
        const double res =
            lax::lax_residual(traj, p, {{0.5, 0.0}, {1.0, 1.0}, {3.0, 0.0}});
        push(out, "lax.lax_equation", res, 1e-6);
    }
    // --- elliptic: chi roots and discriminant consistency
    {
        double worst = 0.0;
        std::uniform_real_distribution<double> d(-2.0, 2.0);
        for (int i = 0; i < 200; ++i) {
            conserved::ConservedSet q;
            q.c = d(rng);
            q.m = d(rng);
            q.s = std::abs(d(rng)) + 0.1;
            q.h = d(rng);
            const auto roots = elliptic::chi_roots(q, p.lambda);
            for (const auto& r : roots) {
                double scale = 1.0;
                for (const auto& rr : roots) scale = std::max(scale, std::abs(rr.u));
                worst = std::max(worst, std::abs(elliptic::chi(r.u, q, p.lambda)) /
                                            (scale * scale * scale));
            }
            const double disc = elliptic::discriminant(q, p.lambda);
            if (roots.size() == 3) {
                const double d12 = roots[0].u - roots[1].u, d13 = roots[0].u - roots[2].u,
                             d23 = roots[1].u - roots[2].u;
                const double prod = d12 * d12 * d13 * d13 * d23 * d23;
                worst = std::max(worst, std::abs(disc - prod) / (1.0 + std::abs(disc)));
            }
        }
        push(out, "elliptic.roots_and_discriminant", worst, 1e-8);
    }
    // --- elliptic: wp defining ODE
    {
        double worst = 0.0;
        std::uniform_real_distribution<double> d(-1.2, 1.2);
        for (int i = 0; i < 60; ++i) {
            const double g2 = d(rng) * 3.0, g3 = d(rng);
            const num::cplx z{d(rng), d(rng)};
            if (std::abs(z) < 0.15) continue;
            try {
                const auto [P, dP] = elliptic::wp_and_deriv(z, g2, g3);
                const num::cplx lhs = dP * dP;
                const num::cplx rhs = 4.0 * P * P * P - g2 * P - g3;
                worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
            } catch (const std::domain_error&) {
            }
        }
        push(out, "elliptic.wp_ode", worst, 1e-8);
    }
    // --- dynamics vs analytic u(t) on the acceptance torus
    {
        conserved::ConservedSet q;
        q.c = 3.0;
        q.m = -1.0;
        q.s = 1.0;
        q.h = 1.0;
        q.E = 0.5 * q.s2() + q.c + 0.5;
        const auto x0 = levelsets::seed_state(q, p, -0.7320508075688772, 0.3, +1);
        const auto [g2, g3] = elliptic::weierstrass_invariants(q, p.lambda, p.k);
        const auto hp = elliptic::half_periods(g2, g3);
        std::vector<double> times;
        for (int i = 0; i <= 400; ++i) times.push_back(i * (2.0 * hp.omega_R) / 400.0);
        const auto traj = dynamics::integrate_sampled(x0, p, times, 1e-11);
        double worst = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i) {
            const double ua = elliptic::u_of_t(times[i], q, p.lambda, p.k);
            worst = std::max(worst, std::abs(ua - traj.states[i].u(p)));
        }
        push(out, "dynamics.u_of_t_match", worst, 1e-6);
    }
    // --- levelsets: the twelve figure fixtures
    {
        using levelsets::Tag;
        struct Fix {
            double c, m, s, h;
            Tag tag;
        };
        const std::vector<Fix> fixtures{
            {3.0, 1.0, 1.0, 2.0, Tag::Torus2},     {1.5, -1.0, 1.0, 1.0, Tag::HornTorus},
            {2.0, -1.0, 1.0, 1.0, Tag::Torus2},    {0.0, 1.0, 1.0, 1.0, Tag::Torus2},
            {-0.5, 1.0, 1.0, 1.0, Tag::Point},     {17.0 / 8, -0.5, 1.0, 2.0, Tag::Circle},
            {0.0, 0.5, 1.0, -0.5, Tag::Circle},    {2.0, 0.0, 1.0, 0.0, Tag::Torus2},
            {1.0, 0.0, 1.0, 0.0, Tag::HornTorus},  {0.0, 0.0, 1.0, 0.0, Tag::Torus2},
            {-1.0, 0.0, 1.0, 0.0, Tag::Point},     {3.0, 2.0, 1.0, -2.0, Tag::Point}};
        int bad = 0;
        for (const auto& f : fixtures) {
            conserved::ConservedSet q;
            q.c = f.c;
            q.m = f.m;
            q.s = f.s;
            q.h = f.h;
            if (levelsets::classify(q, 1.0, 1.0).tag != f.tag) ++bad;
        }
        push(out, "levelsets.figure_fixtures", bad, 0.0);
    }
    // --- actionangle: torus actions against the Hamiltonian
    {
        conserved::ConservedSet q;
        q.c = 3.0;
        q.m = -1.0;
        q.s = 1.0;
        q.h = 1.0;
        const auto aa = actionangle::torus_actions(q, p);
        const double H = p.k * p.k * (0.5 * q.s2() + q.c + 0.5 / (p.lambda * p.lambda));
        const double model = p.k * (aa.I1 + aa.I2) +
                             p.k * p.k * (q.c + 0.5 / (p.lambda * p.lambda));
        push(out, "actionangle.energy_identity", std::abs(H - model), 1e-12);
    }
    // --- quantum: weak-coupling ground state
    {
        quantum::RadialProblem qp;
        qp.lambda_t = 0.0;
        qp.hbar_t = 1.0;
        qp.l = 0;
        const auto spec = quantum::solve_spectrum(qp, 2, {1200, 0.0});
        const double err = std::max(std::abs(spec.eigenvalues[0] - 2.0),
                                    std::abs(spec.eigenvalues[1] - 6.0));
        push(out, "quantum.weak_coupling_levels", err, 1e-7);
    }
    // --- quantum: Ince typing of the four reference equations
    {
        int bad = 0;
        // hypergeometric (a=1,b=3,c=1): [0,3,0]
        {
            const auto t = quantum::ince_classify({1.0, -5.0}, {0.0, 1.0, -1.0}, {-3.0},
                                                  {0.0, 1.0, -1.0});
            if (!(t.elementary == 0 && t.regular == 3 && t.species.empty())) ++bad;
        }
        // confluent hypergeometric: [0,1,1_2]
        {
            const auto t =
                quantum::ince_classify({2.0, -1.0}, {0.0, 1.0}, {-1.0}, {0.0, 1.0});
            if (!(t.elementary == 0 && t.regular == 1 && t.species == std::vector<int>{2}))
                ++bad;
        }
        // RR radial, l = 1, hbar = 1: [0,1,1_6]
        {
            const std::vector<double> qn{-1.0, 0.0, 5.0, 0.0, -1.25, 0.0, -0.25};
            const auto t = quantum::ince_classify({1.0}, {0.0, 1.0}, qn, {0.0, 0.0, 1.0});
            if (!(t.elementary == 0 && t.regular == 1 && t.species == std::vector<int>{6}))
                ++bad;
        }
        // weak-coupling radial: [0,1,1_4]
        {
            const std::vector<double> qn{-1.0, 0.0, 5.0, 0.0, -1.0};
            const auto t = quantum::ince_classify({1.0}, {0.0, 1.0}, qn, {0.0, 0.0, 1.0});
            if (!(t.elementary == 0 && t.regular == 1 && t.species == std::vector<int>{4}))
                ++bad;
        }
        push(out, "quantum.ince_types", bad, 0.0);
    }
    return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

}  // namespace screwon::verify
