#include "tpdicke/hamiltonian.hpp"

#include <cmath>
#include <cstdio>

#include "tpdicke/table.hpp"

namespace tpdicke {

void SymSparseMatrix::apply(const double* x, double* y) const {
    for (int i = 0; i < dim; ++i) y[i] = 0.0;
    for (const Entry& e : entries) {
        y[e.row] += e.value * x[e.col];
        if (e.row != e.col) y[e.col] += e.value * x[e.row];
    }
}

double SymSparseMatrix::inf_norm() const {
    std::vector<double> row_sum(static_cast<std::size_t>(dim), 0.0);
    for (const Entry& e : entries) {
        row_sum[e.row] += std::abs(e.value);
        if (e.row != e.col) row_sum[e.col] += std::abs(e.value);
    }
    double m = 0.0;
    for (double v : row_sum) m = std::max(m, v);
    return m;
}

double SymSparseMatrix::max_abs() const {
    double m = 0.0;
    for (const Entry& e : entries) m = std::max(m, std::abs(e.value));
    return m;
}

namespace {

// <m+1|J+|m> = sqrt(j(j+1) - m(m+1)), exact on the doubled-integer lattice.
double jplus_element(int two_j, int two_m) {
    double num = static_cast<double>(two_j) * (two_j + 2) -
                 static_cast<double>(two_m) * (two_m + 2);
    return std::sqrt(num / 4.0);
}

}  // namespace

SymSparseMatrix assemble(const ModelParams& p, const std::vector<BasisIndex>& basis,
                         std::int64_t entry_budget) {
    p.validate();
    const int dim = static_cast<int>(basis.size());
    // Upper bound: diagonal plus two raising couplings per state.
    if (3 * static_cast<std::int64_t>(dim) > entry_budget)
        throw ResourceError("assemble: entry budget exceeded (dim " +
                            std::to_string(dim) + ")");

    // (n, two_m) -> local index
    int n_hi = 0;
    for (const BasisIndex& b : basis) n_hi = std::max(n_hi, b.n);
    const int m_count = p.two_j + 1;
    std::vector<int> lookup(static_cast<std::size_t>(n_hi + 1) * m_count, -1);
    auto slot = [&](int n, int two_m) -> int& {
        return lookup[static_cast<std::size_t>(n) * m_count + (two_m + p.two_j) / 2];
    };
    for (int i = 0; i < dim; ++i) slot(basis[i].n, basis[i].two_m) = i;

    const double coupling = p.gamma / static_cast<double>(p.two_j);

    SymSparseMatrix m;
    m.dim = dim;
    m.entries.reserve(static_cast<std::size_t>(3) * dim);
    for (int i = 0; i < dim; ++i) {
        const int n = basis[i].n;
        const int two_m = basis[i].two_m;
        const double diag = p.omega * n + p.omega0 * (0.5 * two_m);
        if (diag != 0.0) m.entries.push_back({i, i, diag});
        if (coupling == 0.0) continue;
        // a^+2 raising: (n, m) -> (n+2, m±1); lowering terms are the mirrors.
        const double boson = std::sqrt(static_cast<double>(n + 1) * (n + 2));
        if (n + 2 <= n_hi) {
            if (two_m + 2 <= p.two_j) {
                int t = slot(n + 2, two_m + 2);
                if (t >= 0) {
                    double v = coupling * boson * jplus_element(p.two_j, two_m);
                    m.entries.push_back({std::min(i, t), std::max(i, t), v});
                }
            }
            if (two_m - 2 >= -p.two_j) {
                int t = slot(n + 2, two_m - 2);
                if (t >= 0) {
                    double v = coupling * boson * jplus_element(p.two_j, two_m - 2);
                    m.entries.push_back({std::min(i, t), std::max(i, t), v});
                }
            }
        }
    }
    return m;
}

SymSparseMatrix build_full(const ModelParams& p, int n_max, std::int64_t entry_budget) {
    if (n_max < 2) throw std::invalid_argument("build_full: n_max must be >= 2");
    return assemble(p, full_basis(p.two_j, n_max), entry_budget);
}

BlockDecomposition decompose(const ModelParams& p, int n_max,
                             std::int64_t entry_budget) {
    p.validate();
    BlockDecomposition d;
    for (int s = 0; s < 4; ++s) {
        d.index_maps[s] = sector_basis(p.two_j, n_max, static_cast<ParitySector>(s));
        d.blocks[s] = assemble(p, d.index_maps[s], entry_budget);
    }
    return d;
}

double commutator_norm_with_parity(const ModelParams& p, int n_max) {
    const auto basis = full_basis(p.two_j, n_max);
    SymSparseMatrix h = assemble(p, basis);
    // [H, Pi]_(r,c) = H_rc (pi_c - pi_r); Pi is diagonal with unit entries.
    double norm = 0.0;
    for (const auto& e : h.entries) {
        double rr, ri, cr, ci;
        parity_eigenvalue(parity_label(basis[e.row], p), rr, ri);
        parity_eigenvalue(parity_label(basis[e.col], p), cr, ci);
        const double mag = std::abs(e.value) * std::hypot(cr - rr, ci - ri);
        norm = std::max(norm, mag);
    }
    return norm;
}

void write_coordinate_file(const SymSparseMatrix& m, const std::string& path) {
    std::string out;
    out.reserve(m.entries.size() * 32 + 32);
    out += std::to_string(m.dim) + " " + std::to_string(m.entries.size()) + "\n";
    for (const auto& e : m.entries) {
        out += std::to_string(e.row) + " " + std::to_string(e.col) + " " +
               format_double(e.value) + "\n";
    }
    write_file_atomic(path, out);
}

}  // namespace tpdicke
