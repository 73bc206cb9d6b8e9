#pragma once

#include <string_view>
#include <vector>

#include "screwon/types.hpp"

namespace screwon {
namespace dynamics {
struct Trajectory;
}

namespace conserved {

// The four invariants plus the reduced energy E = H/k^2.
struct ConservedSet {
    double c = 0.0;
    double m = 0.0;
    double s = 0.0;  // nonnegative square root of s^2
    double h = 0.0;
    double E = 0.0;

    double s2() const { return s * s; }
};

ConservedSet conserved_set(const PhaseState& x, const ModelParams& p);

// Direct evaluation of H/k^2 from the quadratic form, for cross-checks
// against ConservedSet::E = s^2/2 + c + 1/(2 lambda^2).
double energy_direct(const PhaseState& x, const ModelParams& p);

enum class SubmanifoldTag {
    Generic,
    Sigma2,
    Sigma3,
    CircularC,
    C1,
    C2,
    HornInterior,
    HornCenter,
};

std::string_view to_string(SubmanifoldTag t);

// Xi relations defining the closure of the circular submanifold.
double xi1(const PhaseState& x);
double xi2(const PhaseState& x, const ModelParams& p);
double xi3(const PhaseState& x, const ModelParams& p);

// Scale-free norm of dh ^ ds^2 ^ dm ^ dc via the Gram determinant of the
// four gradient 6-vectors; vanishes exactly where the 1-forms are dependent.
double wedge4(const PhaseState& x, const ModelParams& p);

SubmanifoldTag classify_submanifold(const PhaseState& x, const ModelParams& p,
                                    double tol = 1e-9);

struct DriftReport {
    double c = 0.0, m = 0.0, s = 0.0, h = 0.0, E = 0.0;
    double max() const;
};

// Per-invariant max over samples of |q(t) - q(0)| / (1 + |q(0)|).
DriftReport drift(const dynamics::Trajectory& traj, const ModelParams& p);

}  // namespace conserved
}  // namespace screwon
