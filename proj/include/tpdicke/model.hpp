// model.hpp — parameters, truncated basis, parity labeling, phase classification
//
// Conventions: hbar = 1, j = N/2 with N the number of atoms. Half-integer spins
// are exact: 2j and 2m are stored as integers and all parity arithmetic is
// integer-modular.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tpdicke {

// Raised when an analytic branch is requested outside its domain
// (negative radicand, collapse regime, Bloch-sphere violation).
class UnphysicalError : public std::domain_error {
public:
    explicit UnphysicalError(const std::string& what) : std::domain_error(what) {}
};

// Raised when an assembly or solve would exceed a configured resource budget.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

struct ModelParams {
    double omega{1.0};   // field frequency, > 0
    double omega0{0.0};  // atomic frequency, any sign
    double gamma{0.0};   // coupling, >= 0
    int two_j{1};        // 2j >= 1; j = N/2

    double j() const { return 0.5 * static_cast<double>(two_j); }
    int n_atoms() const { return two_j; }

    void validate() const;
};

struct NumericalControls {
    int n_max{16};         // initial Fock cutoff, >= 4
    int n_cap{1024};       // hard maximum cutoff
    double tol_abs{1e-10};
    double tol_rel{1e-10};
    double eig_tol{1e-11};

    void validate() const;
};

struct BasisIndex {
    int n;      // photon number, 0..n_max
    int two_m;  // 2m, -2j..2j in steps of 2

    bool operator==(const BasisIndex&) const = default;
};

// Reporting/tie-break order: +1, -1, +i, -i.
enum class ParitySector : int { Plus1 = 0, Minus1 = 1, PlusI = 2, MinusI = 3 };

enum class Phase { Normal, Superradiant, CollapseRegime, Unphysical };

// gamma_c = sqrt(omega |omega0| j / 2); vanishes with omega0.
double critical_coupling(const ModelParams& p);

// gamma_sc = omega / 2.
double collapse_coupling(const ModelParams& p);

// CollapseRegime if gamma >= omega/2; else Superradiant if gamma > gamma_c and
// (j omega0)^2 < gamma^2; else Normal. The boundary gamma == gamma_c is Normal.
Phase classify_phase(const ModelParams& p);

// Parity label i^n (-1)^(m+j), computed as i^k with k = (n + 2m + 2j) mod 4.
ParitySector parity_label(const BasisIndex& b, const ModelParams& p);
ParitySector parity_label(int n, int two_m, int two_j);

// Unit complex eigenvalue of the parity operator on a basis state:
// returns (re, im) in {(1,0), (-1,0), (0,1), (0,-1)}.
void parity_eigenvalue(ParitySector s, double& re, double& im);

const char* sector_name(ParitySector s);  // "+1", "-1", "+i", "-i"
const char* phase_name(Phase ph);         // "normal", "superradiant", "collapse", "unphysical"

// Canonical lexicographic basis: n-major, two_m ascending within each n.
std::vector<BasisIndex> full_basis(int two_j, int n_max);

// Subset of full_basis carrying the given parity label, in induced order.
std::vector<BasisIndex> sector_basis(int two_j, int n_max, ParitySector s);

inline std::int64_t basis_dimension(int two_j, int n_max) {
    return static_cast<std::int64_t>(n_max + 1) * (two_j + 1);
}

}  // namespace tpdicke
