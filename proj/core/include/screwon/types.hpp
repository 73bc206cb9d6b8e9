#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace screwon {

using Vec3 = std::array<double, 3>;
using Vec6 = std::array<double, 6>;

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Model parameters. k is the wavenumber of the underlying screw wave, lambda
// the coupling; hbar and mu only matter for the quantum module.
struct ModelParams {
    double k = 1.0;
    double lambda = 1.0;
    double hbar = 1.0;
    double mu = 1.0;

    void require_dynamics() const {
        if (k == 0.0) throw std::invalid_argument("ModelParams: k must be nonzero");
        if (lambda <= 0.0) throw std::invalid_argument("ModelParams: lambda must be positive");
    }
};

// A point of the 6D phase space, components in units of k.
struct PhaseState {
    Vec3 L{0.0, 0.0, 0.0};
    Vec3 S{0.0, 0.0, 0.0};

    // m = -L3/k is derived, never stored, so it cannot drift out of sync.
    double m(const ModelParams& p) const { return -L[2] / p.k; }
    double u(const ModelParams& p) const { return S[2] / p.k; }

    Vec6 as_vec() const { return {L[0], L[1], L[2], S[0], S[1], S[2]}; }
    static PhaseState from_vec(const Vec6& v) {
        return {{v[0], v[1], v[2]}, {v[3], v[4], v[5]}};
    }
};

// Polar form of the transverse components: L_{1,2} = k r (cos,sin) theta,
// S_{1,2} = k rho (cos,sin) phi. Angles are meaningless when the respective
// radius vanishes; they are then reported as absent.
struct PolarCoords {
    double r = 0.0;
    std::optional<double> theta;  // absent at the pole r < pole_eps
    double rho = 0.0;
    std::optional<double> phi;
    double u = 0.0;

    static constexpr double pole_eps = 1e-12;
};

inline double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * M_PI);
    if (a < 0.0) a += 2.0 * M_PI;
    return a;
}

PolarCoords to_polar(const PhaseState& x, const ModelParams& p);
// theta/phi default to 0 where the polar representation has a pole.
PhaseState from_polar(const PolarCoords& c, double m, const ModelParams& p);

// Darboux coordinates (R_a, k P_a) of the canonical R-P phase space. R3 is
// the extra coordinate invisible to the S-L variables.
struct DarbouxState {
    Vec3 R{0.0, 0.0, 0.0};
    Vec3 P{0.0, 0.0, 0.0};
};

// R1 = -L2/k, R2 = L1/k, kP_a = S_a + (lambda/2) m L_a (a = 1,2),
// kP3 = S3 + k/lambda + (lambda/2k)(L1^2+L2^2).
DarbouxState to_darboux(const PhaseState& x, double R3, const ModelParams& p);
// m cancels out of the P3 relation and cannot be recovered from the Darboux
// data; it must be supplied to invert the transverse momenta.
PhaseState from_darboux(const DarbouxState& d, const ModelParams& p, double m = 0.0);

}  // namespace screwon
