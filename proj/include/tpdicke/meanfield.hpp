// meanfield.hpp — closed-form analytic layer: Holstein-Primakoff/Bogoliubov
// variational energy and the NP/SP ground-state observables.
//
// SP branch (radicands A = 1 - 4 gamma^2/omega^2, B = 1 - (j omega0/gamma)^2,
// both required positive):
//   E0        = -(omega/2) (1 - sqrt(A B))
//   <a^+ a>   = (sqrt(B/A) - 1)/2
//   <Jz>/j    = -(j omega0 omega / 2 gamma^2) sqrt(A/B)
// NP branch: E0 = -j|omega0|, <a^+ a> = 0, <Jz>/j = -sgn(omega0).
// omega0 = 0 is handled analytically (B = 1, <Jz>/j = 0 exactly).

#pragma once

#include "tpdicke/model.hpp"

namespace tpdicke {
namespace meanfield {

struct MeanFieldObservables {
    double e0;
    double photon_number;
    double jz_over_j;
    Phase phase;
};

// Exact closed-form evaluation. Throws UnphysicalError for CollapseRegime or
// Unphysical parameters, naming the failed condition.
MeanFieldObservables observables(const ModelParams& p);

struct HPVariationalState {
    double b;       // real variational parameter, |b| <= sqrt(2)
    double r_b;     // squeezing parameter of the variational ground state
    double energy;  // E0(b)
};

// Variational energy at real b:
//   E0(b) = cosh(2 r_b)/(2 omega) [omega^2 - g(b)^2] + j omega0 (b^2 - 1) - omega/2,
// with g(b) = 2 gamma b sqrt(2 - b^2) and r_b = arctanh(g(b)/omega)/2.
// Domain: |b| <= sqrt(2) and |g(b)| < omega; violations throw UnphysicalError.
double hp_energy(double b, const ModelParams& p);

// Closed-form minimizer of hp_energy. NP: b0 = 0 (omega0 >= 0) or sqrt(2)
// (omega0 < 0, spins up); SP: b0 = +sqrt(1 - (j omega0 omega/2 gamma^2) sqrt(A/B)),
// the positive root being canonical.
HPVariationalState hp_minimize(const ModelParams& p);

}  // namespace meanfield
}  // namespace tpdicke
