#pragma once

#include <functional>
#include <utility>

#include "screwon/types.hpp"

namespace screwon::poisson {

// Coordinate order is fixed as (L1, L2, L3, S1, S2, S3) throughout.
enum class Kind { Nilpotent, Euclidean };

struct Structure {
    Kind kind = Kind::Nilpotent;
    double alpha = 0.0;  // pencil weight; 0 = nilpotent, 1 = euclidean
    bool pencil = false;

    static Structure nilpotent() { return {Kind::Nilpotent, 0.0, false}; }
    static Structure euclidean() { return {Kind::Euclidean, 1.0, false}; }
    static Structure pencil_of(double a) { return {Kind::Nilpotent, a, true}; }

    double weight() const { return pencil ? alpha : (kind == Kind::Euclidean ? 1.0 : 0.0); }
};

// {xi_i, xi_j} at the state; the full antisymmetric 6x6 tensor entry.
double bracket(const Structure& s, int i, int j, const PhaseState& x, const ModelParams& p);

// All 36 entries, row-major.
std::array<double, 36> tensor(const Structure& s, const PhaseState& x, const ModelParams& p);

using ScalarField = std::function<double(const PhaseState&)>;

// {f, g}(x) by the chain rule over the tensor with central-difference
// gradients; exact for fields linear in the coordinates, O(fd_step^2) else.
double bracket_fn(const Structure& s, const ScalarField& f, const ScalarField& g,
                  const PhaseState& x, const ModelParams& p, double fd_step = 1e-5);

// max over coordinate triples of |{{xi_i,xi_j},xi_k} + cyclic|, evaluated in
// closed form (coordinate brackets are affine in the coordinates).
double jacobi_residual(const Structure& s, const PhaseState& x, const ModelParams& p);

// Casimirs of the pencil member alpha: (1-a) m/lambda + a h, (1-a) c - a s^2/2.
std::pair<double, double> pencil_casimirs(double alpha, const PhaseState& x,
                                          const ModelParams& p);

// Singular values of the tensor, descending; generic rank is 4.
std::array<double, 6> tensor_singular_values(const Structure& s, const PhaseState& x,
                                             const ModelParams& p);

}  // namespace screwon::poisson
