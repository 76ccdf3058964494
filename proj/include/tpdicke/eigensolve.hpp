// eigensolve.hpp — smallest eigenpair of a real symmetric sparse matrix
// (Lanczos with reorthogonalization, dense fallback) and the Fock-cutoff
// convergence loop for the ground state.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tpdicke/hamiltonian.hpp"
#include "tpdicke/model.hpp"

namespace tpdicke {

struct EigResult {
    double eigenvalue{0.0};
    std::vector<double> eigenvector;  // unit norm
    double residual{0.0};             // ||H v - lambda v||
    int iterations{0};                // matrix-vector products
    std::uint64_t seed{0};
};

struct LanczosOptions {
    std::uint64_t seed{0x7d1c5eed2026ULL};
    int max_subspace{400};       // Krylov dimension per restart cycle
    int max_restarts{80};
    int full_reorth_dim{2000};   // full reorthogonalization below, selective above
    int check_interval{8};       // Ritz convergence test cadence
};

class NoConvergenceError : public std::runtime_error {
public:
    NoConvergenceError(const std::string& what, EigResult best_so_far)
        : std::runtime_error(what), best(std::move(best_so_far)) {}
    EigResult best;
};

EigResult smallest_eigenpair(const SymSparseMatrix& m, double tol,
                             const LanczosOptions& opt = {});

struct GroundStateResult {
    double energy{0.0};
    double photon_number{0.0};  // <a^+ a>
    double jz_over_j{0.0};      // <Jz>/j
    int n_max_used{0};
    bool converged{false};
    ParitySector sector{ParitySector::Plus1};
    double sector_gap{0.0};  // energy gap to the runner-up sector
    double residual{0.0};
    std::uint64_t seed{0};
    Phase phase{Phase::Normal};
};

struct GroundStateOptions {
    bool parallel_sectors{true};
    std::uint64_t seed{0x7d1c5eed2026ULL};
};

// Minimizes over the four parity sectors, doubling the Fock cutoff until the
// ground energy change stays below tol_abs + tol_rel |E0| for two consecutive
// doublings or n_cap is reached. In the collapse regime (gamma >= omega/2) the
// spectrum is unbounded below without truncation: the solve runs once at the
// initial cutoff and the result is flagged unconverged by policy.
GroundStateResult ground_state(const ModelParams& p, const NumericalControls& ctrl,
                               const GroundStateOptions& opt = {});

}  // namespace tpdicke
