#include "tpdicke/model.hpp"

#include <cmath>

namespace tpdicke {

void ModelParams::validate() const {
    if (!(omega > 0.0)) throw std::invalid_argument("ModelParams: omega must be > 0");
    if (!(gamma >= 0.0)) throw std::invalid_argument("ModelParams: gamma must be >= 0");
    if (two_j < 1) throw std::invalid_argument("ModelParams: two_j must be >= 1");
    if (!std::isfinite(omega) || !std::isfinite(omega0) || !std::isfinite(gamma))
        throw std::invalid_argument("ModelParams: parameters must be finite");
}

void NumericalControls::validate() const {
    if (n_max < 4) throw std::invalid_argument("NumericalControls: n_max must be >= 4");
    if (n_cap < n_max)
        throw std::invalid_argument("NumericalControls: n_cap must be >= n_max");
    if (!(tol_abs > 0.0) || !(tol_rel > 0.0) || !(eig_tol > 0.0))
        throw std::invalid_argument("NumericalControls: tolerances must be > 0");
}

double critical_coupling(const ModelParams& p) {
    return std::sqrt(p.omega * std::abs(p.omega0) * p.j() / 2.0);
}

double collapse_coupling(const ModelParams& p) { return 0.5 * p.omega; }

Phase classify_phase(const ModelParams& p) {
    if (p.gamma >= collapse_coupling(p)) return Phase::CollapseRegime;
    if (p.gamma > critical_coupling(p)) {
        // Below collapse gamma > gamma_c implies (j omega0)^2 < gamma^2; the
        // Unphysical branch is kept for contract completeness.
        return (p.j() * std::abs(p.omega0) < p.gamma) ? Phase::Superradiant
                                                      : Phase::Unphysical;
    }
    return Phase::Normal;
}

ParitySector parity_label(int n, int two_m, int two_j) {
    // i^n (-1)^(m+j) = i^(n + 2m + 2j); two_m + two_j is always even.
    int k = (n + two_m + two_j) % 4;
    if (k < 0) k += 4;
    switch (k) {
        case 0: return ParitySector::Plus1;
        case 1: return ParitySector::PlusI;
        case 2: return ParitySector::Minus1;
        default: return ParitySector::MinusI;
    }
}

ParitySector parity_label(const BasisIndex& b, const ModelParams& p) {
    return parity_label(b.n, b.two_m, p.two_j);
}

void parity_eigenvalue(ParitySector s, double& re, double& im) {
    switch (s) {
        case ParitySector::Plus1: re = 1.0; im = 0.0; break;
        case ParitySector::Minus1: re = -1.0; im = 0.0; break;
        case ParitySector::PlusI: re = 0.0; im = 1.0; break;
        case ParitySector::MinusI: re = 0.0; im = -1.0; break;
    }
}

const char* sector_name(ParitySector s) {
    switch (s) {
        case ParitySector::Plus1: return "+1";
        case ParitySector::Minus1: return "-1";
        case ParitySector::PlusI: return "+i";
        case ParitySector::MinusI: return "-i";
    }
    return "?";
}

const char* phase_name(Phase ph) {
    switch (ph) {
        case Phase::Normal: return "normal";
        case Phase::Superradiant: return "superradiant";
        case Phase::CollapseRegime: return "collapse";
        case Phase::Unphysical: return "unphysical";
    }
    return "?";
}

std::vector<BasisIndex> full_basis(int two_j, int n_max) {
    std::vector<BasisIndex> b;
    b.reserve(static_cast<std::size_t>(basis_dimension(two_j, n_max)));
    for (int n = 0; n <= n_max; ++n)
        for (int two_m = -two_j; two_m <= two_j; two_m += 2) b.push_back({n, two_m});
    return b;
}

std::vector<BasisIndex> sector_basis(int two_j, int n_max, ParitySector s) {
    std::vector<BasisIndex> b;
    for (int n = 0; n <= n_max; ++n)
        for (int two_m = -two_j; two_m <= two_j; two_m += 2)
            if (parity_label(n, two_m, two_j) == s) b.push_back({n, two_m});
    return b;
}

}  // namespace tpdicke
