#include <doctest.h>

#include <random>

#include "screwon/conserved.hpp"
#include "screwon/poisson.hpp"

using namespace screwon;
using poisson::Structure;

namespace {

PhaseState random_state(std::mt19937_64& rng, double span = 2.0) {
    std::uniform_real_distribution<double> d(-span, span);
    PhaseState x;
    for (int a = 0; a < 3; ++a) {
        x.L[a] = d(rng);
        x.S[a] = d(rng);
    }
    return x;
}

}  // namespace

TEST_CASE("coordinate bracket fixtures") {
    const ModelParams p{1.0, 1.0};
    std::mt19937_64 rng(3);
    const auto x0 = random_state(rng);

    // nilpotent {L1, L2} = 0 for any state
    CHECK(poisson::bracket(Structure::nilpotent(), 0, 1, x0, p) == 0.0);

    // nilpotent {S1, S2} = lam eps_123 L3 = -1 at L3 = -1
    PhaseState x = x0;
    x.L[2] = -1.0;
    CHECK(poisson::bracket(Structure::nilpotent(), 3, 4, x, p) == doctest::Approx(-1.0));

    // euclidean {L1, L2} = -lam eps_123 L3 = -1 at L3 = 1
    x.L[2] = 1.0;
    CHECK(poisson::bracket(Structure::euclidean(), 0, 1, x, p) == doctest::Approx(-1.0));
}

TEST_CASE("antisymmetry holds exactly for every structure") {
    const ModelParams p{0.7, 1.4};
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto x = random_state(rng);
        for (double a : {0.0, 0.37, 1.0}) {
            const auto s = Structure::pencil_of(a);
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j)
                    CHECK(poisson::bracket(s, i, j, x, p) ==
                          -poisson::bracket(s, j, i, x, p));
        }
    }
}

TEST_CASE("bracket_fn: antisymmetry and Casimirs") {
    const ModelParams p{1.0, 1.0};
    std::mt19937_64 rng(9);
    const auto x = random_state(rng);

    poisson::ScalarField f = [](const PhaseState& s) {
        return std::sin(s.L[0]) + s.S[1] * s.S[2] + 0.3 * s.L[2] * s.L[2];
    };
    CHECK(std::abs(poisson::bracket_fn(Structure::nilpotent(), f, f, x, p)) < 1e-10);

    poisson::ScalarField H = [&](const PhaseState& s) {
        return conserved::energy_direct(s, p);
    };
    poisson::ScalarField c = [&](const PhaseState& s) {
        return conserved::conserved_set(s, p).c;
    };
    poisson::ScalarField m = [&](const PhaseState& s) {
        return conserved::conserved_set(s, p).m;
    };
    poisson::ScalarField s2 = [&](const PhaseState& s) {
        return conserved::conserved_set(s, p).s2();
    };
    CHECK(std::abs(poisson::bracket_fn(Structure::nilpotent(), H, c, x, p)) < 1e-8);
    CHECK(std::abs(poisson::bracket_fn(Structure::nilpotent(), H, m, x, p)) < 1e-8);
    CHECK(std::abs(poisson::bracket_fn(Structure::euclidean(), H, s2, x, p)) < 1e-8);
}

TEST_CASE("bracket_fn satisfies the Leibniz rule to O(fd_step^2)") {
    const ModelParams p{1.0, 1.0};
    std::mt19937_64 rng(13);
    const auto x = random_state(rng);
    poisson::ScalarField f = [](const PhaseState& s) { return s.L[0] + 0.2 * s.S[2] * s.S[2]; };
    poisson::ScalarField g = [](const PhaseState& s) { return s.S[0] - 0.1 * s.L[1]; };
    poisson::ScalarField h = [](const PhaseState& s) { return s.S[1] + s.L[2]; };
    poisson::ScalarField fg = [&](const PhaseState& s) { return f(s) * g(s); };

    const auto st = Structure::nilpotent();
    const double lhs = poisson::bracket_fn(st, fg, h, x, p);
    const double rhs = f(x) * poisson::bracket_fn(st, g, h, x, p) +
                       g(x) * poisson::bracket_fn(st, f, h, x, p);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-7));
}

TEST_CASE("Jacobi residual vanishes across the pencil") {
    const ModelParams p{1.0, 1.0};
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const auto x = random_state(rng);
        CHECK(poisson::jacobi_residual(Structure::nilpotent(), x, p) == 0.0);
        CHECK(poisson::jacobi_residual(Structure::euclidean(), x, p) == 0.0);
        CHECK(poisson::jacobi_residual(Structure::pencil_of(0.37), x, p) < 1e-12);
    }
}

TEST_CASE("pencil casimirs reduce to the pure structures") {
    const ModelParams p{1.0, 1.0};
    std::mt19937_64 rng(19);
    const auto x = random_state(rng);
    const auto q = conserved::conserved_set(x, p);

    const auto [c0a, c0b] = poisson::pencil_casimirs(0.0, x, p);
    CHECK(c0a == doctest::Approx(q.m / p.lambda).epsilon(1e-14));
    CHECK(c0b == doctest::Approx(q.c).epsilon(1e-14));

    const auto [c1a, c1b] = poisson::pencil_casimirs(1.0, x, p);
    CHECK(c1a == doctest::Approx(q.h).epsilon(1e-14));
    CHECK(c1b == doctest::Approx(-q.s2() / 2.0).epsilon(1e-14));
}

TEST_CASE("pencil casimirs have zero bracket with all coordinates") {
    const ModelParams p{1.0, 1.0};
    std::mt19937_64 rng(23);
    const auto x = random_state(rng);
    const double alpha = 0.5;
    const auto st = Structure::pencil_of(alpha);
    for (int which = 0; which < 2; ++which) {
        poisson::ScalarField cas = [&, which](const PhaseState& s) {
            const auto pr = poisson::pencil_casimirs(alpha, s, p);
            return which == 0 ? pr.first : pr.second;
        };
        for (int i = 0; i < 6; ++i) {
            poisson::ScalarField coord = [i](const PhaseState& s) { return s.as_vec()[i]; };
            CHECK(std::abs(poisson::bracket_fn(st, cas, coord, x, p)) < 1e-8);
        }
    }
}

TEST_CASE("tensor has rank 4 with a two-dimensional kernel") {
    const ModelParams p{1.0, 1.0};
    std::mt19937_64 rng(29);
    const auto x = random_state(rng);
    for (double a : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const auto sv = poisson::tensor_singular_values(Structure::pencil_of(a), x, p);
        CHECK(sv[3] > 1e-10 * sv[0]);
        CHECK(sv[4] < 1e-10 * sv[0]);
        CHECK(sv[5] < 1e-10 * sv[0]);
    }
}
