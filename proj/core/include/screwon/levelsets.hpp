#pragma once

#include <string_view>
#include <vector>

#include "screwon/conserved.hpp"
#include "screwon/elliptic.hpp"
#include "screwon/types.hpp"

namespace screwon::levelsets {

enum class Tag { Torus2, HornTorus, Circle, Point, Empty };
enum class Fibre { None, Circle, Point };

std::string_view to_string(Tag t);
std::string_view to_string(Fibre f);

struct LevelSetReport {
    Tag tag = Tag::Empty;
    double u_lo = 0.0, u_hi = 0.0;  // allowed latitude interval (meaningless for Empty)
    Fibre pole_north = Fibre::None;
    Fibre pole_south = Fibre::None;
    std::vector<elliptic::RootMult> roots;  // witness roots of chi
};

// c_min(s, h) = -s/lambda + h^2 / (2 s^2); rejects s = 0.
double cmin(double s, double h, double lambda);

// Fibre over the N/S pole of the S-sphere (latitude u = +-sign(k) s).
enum class Pole { N, S };
Fibre pole_fibre(const conserved::ConservedSet& q, double lambda, double k, Pole pole,
                 double tol = 1e-9);

// Full taxonomy of the common level set of (c, m, s, h).
LevelSetReport classify(const conserved::ConservedSet& q, double lambda, double k,
                        double tol = 1e-9);

// A state on the level set at latitude u (interior of the allowed band).
// patch = +1/-1 selects phi = theta +- arccos((h + m u)/(r rho)).
PhaseState seed_state(const conserved::ConservedSet& q, const ModelParams& p, double u,
                      double theta = 0.0, int patch = +1);

enum class HillRegion { Empty, B4, B3xS1 };
enum class LevelTopology { Empty, PointSet, S3, S2xS1, CriticalSlice };

struct HillReport {
    int regime = 0;           // sign of 2c - m^2
    double E_G = 0.0;         // isolated critical energy (regime <= 0)
    double E_ring = 0.0;      // ring critical energy (regime > 0)
    double E_sad = 0.0;       // saddle energy (regime > 0)
    HillRegion hill = HillRegion::Empty;
    LevelTopology level = LevelTopology::Empty;
};

HillReport hill_topology(double c, double m, double E, double lambda, double k);

}  // namespace screwon::levelsets
