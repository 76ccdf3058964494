// hamiltonian.hpp — truncated two-photon Dicke Hamiltonian as a real symmetric
// sparse matrix, whole or per parity sector.
//
// Matrix elements over basis states |n, m>:
//   diagonal:      omega n + omega0 m
//   off-diagonal:  (gamma/N) <n'|a^+2 + a^2|n> <m'|J+ + J-|m>,  N = 2j
// Truncation is the photon-number projection P H P: couplings that would leave
// n <= n_max are dropped, which keeps every block symmetric and sector-closed.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tpdicke/model.hpp"

namespace tpdicke {

inline constexpr std::int64_t kDefaultEntryBudget = std::int64_t{1} << 28;

struct SymSparseMatrix {
    struct Entry {
        int row, col;  // row <= col
        double value;
    };

    int dim{0};
    std::vector<Entry> entries;  // upper triangle, no explicit zeros, no duplicates

    // y = M x with the symmetric mirror applied.
    void apply(const double* x, double* y) const;

    // max_i sum_j |M_ij|, cheap operator-norm bound.
    double inf_norm() const;

    // Largest |entry|.
    double max_abs() const;
};

// Assemble the Hamiltonian restricted to an arbitrary list of basis states
// (couplings to states outside the list are dropped).
SymSparseMatrix assemble(const ModelParams& p, const std::vector<BasisIndex>& basis,
                         std::int64_t entry_budget = kDefaultEntryBudget);

SymSparseMatrix build_full(const ModelParams& p, int n_max,
                           std::int64_t entry_budget = kDefaultEntryBudget);

struct BlockDecomposition {
    std::array<std::vector<BasisIndex>, 4> index_maps;  // indexed by ParitySector
    std::array<SymSparseMatrix, 4> blocks;
};

BlockDecomposition decompose(const ModelParams& p, int n_max,
                             std::int64_t entry_budget = kDefaultEntryBudget);

// Max-norm of [H, Pi] with Pi the exact diagonal parity unitary. Exactly 0 for
// all inputs: the photon-number truncation preserves the four sectors.
double commutator_norm_with_parity(const ModelParams& p, int n_max);

// Coordinate-format text dump. Header line "dim nnz", then one
// "row col value" line per stored entry, values at 17 significant digits.
void write_coordinate_file(const SymSparseMatrix& m, const std::string& path);

}  // namespace tpdicke
