#include <doctest.h>

#include <random>

#include "screwon/conserved.hpp"
#include "screwon/dynamics.hpp"

using namespace screwon;
using conserved::SubmanifoldTag;

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

}  // namespace

TEST_CASE("conserved_set fixtures") {
    const ModelParams p{1.0, 1.0};
    SUBCASE("vacuum") {
        const auto q = conserved::conserved_set(PhaseState{}, p);
        CHECK(q.c == 0.0);
        CHECK(q.m == 0.0);
        CHECK(q.s == 0.0);
        CHECK(q.h == 0.0);
        CHECK(q.E == doctest::Approx(0.5));
    }
    SUBCASE("S-sphere radius of the common-level-set example") {
        PhaseState x;
        x.S = {3.0, 2.0, 1.0};
        const auto q = conserved::conserved_set(x, p);
        CHECK(q.s2() == doctest::Approx(14.0));
    }
}

TEST_CASE("the two energy routes agree") {
    const ModelParams p{1.3, 0.8};
    std::mt19937_64 rng(31);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto x = random_state(rng);
        const auto q = conserved::conserved_set(x, p);
        const double direct = conserved::energy_direct(x, p);
        worst = std::max(worst, std::abs(q.E - direct) / (1.0 + std::abs(direct)));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("drift: static point, accurate run, and tolerance ordering") {
    const ModelParams p{1.0, 1.0};
    SUBCASE("Sigma2 point stays put") {
        PhaseState x;
        x.L = {0.0, 0.0, -1.0};
        x.S = {0.0, 0.0, 0.4};
        const auto traj = dynamics::integrate(x, p, 50.0, 1e-10);
        CHECK(conserved::drift(traj, p).max() == 0.0);
    }
    SUBCASE("generic run meets the budget") {
        std::mt19937_64 rng(37);
        const auto x = random_state(rng);
        const auto traj = dynamics::integrate(x, p, 100.0, 1e-10);
        CHECK(conserved::drift(traj, p).max() < 1e-7);
    }
    SUBCASE("drift grows with tolerance") {
        PhaseState x{{0.4, -0.3, 0.8}, {0.9, 0.2, -0.5}};
        double prev = 0.0;
        for (double tol : {1e-9, 1e-6, 1e-3}) {
            const auto traj = dynamics::integrate(x, p, 20.0, tol);
            const double d = conserved::drift(traj, p).max();
            CHECK(d >= prev);
            prev = d;
        }
    }
}

TEST_CASE("wedge4 vanishes exactly on the singular set") {
    const ModelParams p{1.0, 1.0};
    SUBCASE("Sigma3") {
        PhaseState x;
        x.L = {1.0, 2.0, 3.0};
        CHECK(conserved::wedge4(x, p) < 1e-12);
    }
    SUBCASE("point of the circular submanifold") {
        // trigonometric family with alpha = 1, A = B = 1, m = 0
        const auto x = dynamics::circular_solution(0.0, 1.0, 1.0, 1.0, 0.0, p);
        CHECK(conserved::wedge4(x, p) < 1e-10);
    }
    SUBCASE("generic states are regular") {
        std::mt19937_64 rng(41);
        for (int i = 0; i < 100; ++i) {
            const auto x = random_state(rng);
            const double n2 = dot(x.L, x.L) + dot(x.S, x.S);
            CHECK(conserved::wedge4(x, p) > 1e-6 * n2 * n2);
        }
    }
}

TEST_CASE("classify_submanifold fixtures") {
    const ModelParams p{1.0, 1.0};
    SUBCASE("Sigma3") {
        PhaseState x;
        x.L = {1.0, 2.0, 3.0};
        CHECK(conserved::classify_submanifold(x, p) == SubmanifoldTag::Sigma3);
    }
    SUBCASE("horn center") {
        PhaseState x;
        x.S = {0.0, 0.0, 1.0};
        x.L = {0.0, 0.0, -1.0};
        CHECK(conserved::classify_submanifold(x, p) == SubmanifoldTag::HornCenter);
    }
    SUBCASE("Sigma2 that is not a horn center") {
        PhaseState x;
        x.S = {0.0, 0.0, -2.0};  // u = -s, not +s
        x.L = {0.0, 0.0, -1.0};
        CHECK(conserved::classify_submanifold(x, p) == SubmanifoldTag::Sigma2);
    }
    SUBCASE("circular submanifold") {
        const auto x = dynamics::circular_solution(0.3, 1.0, 1.0, 1.0, 0.0, p);
        CHECK(conserved::classify_submanifold(x, p) == SubmanifoldTag::CircularC);
    }
    SUBCASE("horn interior") {
        const auto hp = dynamics::horn_solution(0.8, -1.0, 1.0, p);
        CHECK(conserved::classify_submanifold(hp.state, p) == SubmanifoldTag::HornInterior);
    }
    SUBCASE("generic") {
        std::mt19937_64 rng(43);
        const auto x = random_state(rng);
        CHECK(conserved::classify_submanifold(x, p) == SubmanifoldTag::Generic);
    }
}

TEST_CASE("wedge4 <-> singular-set tags on random and constructed states") {
    const ModelParams p{1.0, 1.0};
    std::mt19937_64 rng(47);
    int tagged = 0;
    for (int i = 0; i < 10000; ++i) {
        const auto x = random_state(rng);
        const auto tag = conserved::classify_submanifold(x, p, 1e-8);
        const double n2 = dot(x.L, x.L) + dot(x.S, x.S);
        const double w = conserved::wedge4(x, p) / (1.0 + n2 * n2);
        const bool wedge_zero = w < 1e-8;
        if (tag != SubmanifoldTag::Generic) ++tagged;
        // random states should be generic with nonzero wedge
        CHECK(wedge_zero == (tag != SubmanifoldTag::Generic));
    }
    CHECK(tagged == 0);

    // constructed members of the Xi-singular set have vanishing wedge4
    {
        PhaseState x;
        x.L = {0.3, -1.2, 0.7};  // Sigma3
        CHECK(conserved::wedge4(x, p) < 1e-10);
        const auto circ = dynamics::circular_solution(1.1, 0.8, 0.5, -0.4, 0.3, p);
        const double n2 = dot(circ.L, circ.L) + dot(circ.S, circ.S);
        CHECK(conserved::wedge4(circ, p) / (1.0 + n2 * n2) < 1e-8);
    }
    // on horn interiors the invariants are related yet the wedge is nonzero
    {
        const auto hp = dynamics::horn_solution(1.2, -1.0, 1.0, p);
        CHECK(conserved::classify_submanifold(hp.state, p) == SubmanifoldTag::HornInterior);
        CHECK(conserved::wedge4(hp.state, p) > 1e-6);
    }
}

TEST_CASE("Sigma2 relations among the invariants") {
    for (double k : {1.0, -1.0}) {
        const ModelParams p{k, 1.0};
        for (double S3 : {0.8, -0.6}) {
            PhaseState x;
            x.L = {0.0, 0.0, -0.5 * k};
            x.S = {0.0, 0.0, S3};
            const auto q = conserved::conserved_set(x, p);
            const double sigma = (S3 / std::abs(k) >= 0) ? 1.0 : -1.0;  // S3 = sigma s|k|
            const double sgn_k = (k > 0) ? 1.0 : -1.0;
            CHECK(q.h == doctest::Approx(-sigma * sgn_k * q.m * q.s).epsilon(1e-12));
            CHECK(q.c ==
                  doctest::Approx(q.m * q.m / 2.0 + sigma * sgn_k * q.s / p.lambda).epsilon(1e-12));
            // lambda^2 (2 c s^2 - h^2)^2 = 4 s^6 on Sigma2
            const double lhs = std::pow(2.0 * q.c * q.s2() - q.h * q.h, 2.0);
            CHECK(lhs == doctest::Approx(4.0 * std::pow(q.s, 6.0)).epsilon(1e-10));
        }
    }
}
