#include "tpdicke/meanfield.hpp"

#include <cmath>
#include <string>

namespace tpdicke {
namespace meanfield {

namespace {

double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// Boundary rounding guard: values within 1e-14 below zero clamp to zero,
// anything more negative is a genuine domain violation.
double guard_radicand(double v, const char* condition) {
    if (v >= 0.0) return v;
    if (v > -1e-14) return 0.0;
    throw UnphysicalError(std::string("negative radicand: ") + condition);
}

}  // namespace

MeanFieldObservables observables(const ModelParams& p) {
    p.validate();
    const Phase ph = classify_phase(p);
    const double j = p.j();
    switch (ph) {
        case Phase::CollapseRegime:
            throw UnphysicalError(
                "collapse regime: gamma >= omega/2, no mean-field ground state");
        case Phase::Unphysical:
            throw UnphysicalError(
                "superradiant branch unphysical: j^2 omega0^2 >= gamma^2");
        case Phase::Normal:
            // + 0.0 normalizes the omega0 = 0 corner away from negative zero
            return {-(j * std::abs(p.omega0)) + 0.0, 0.0, -sign_of(p.omega0) + 0.0, ph};
        case Phase::Superradiant:
            break;
    }
    const double A = guard_radicand(1.0 - 4.0 * p.gamma * p.gamma / (p.omega * p.omega),
                                    "1 - 4 gamma^2/omega^2 < 0");
    if (p.omega0 == 0.0) {
        // j-independent reduction: B = 1 and the atoms decouple.
        const double e0 = -(p.omega / 2.0) * (1.0 - std::sqrt(A));
        const double n = 0.5 * (1.0 / std::sqrt(A) - 1.0);
        return {e0, n, 0.0, ph};
    }
    const double jw = j * p.omega0 / p.gamma;
    const double B = guard_radicand(1.0 - jw * jw, "1 - j^2 omega0^2/gamma^2 < 0");
    const double e0 = -(p.omega / 2.0) * (1.0 - std::sqrt(A * B));
    const double n = 0.5 * (std::sqrt(B / A) - 1.0);
    const double jz =
        -(j * p.omega0 * p.omega / (2.0 * p.gamma * p.gamma)) * std::sqrt(A / B);
    return {e0, n, jz, ph};
}

double hp_energy(double b, const ModelParams& p) {
    p.validate();
    const double rad = guard_radicand(2.0 - b * b, "hp_energy: 2 - b^2 < 0");
    const double g = 2.0 * p.gamma * b * std::sqrt(rad);
    if (std::abs(g) >= p.omega)
        throw UnphysicalError(
            "hp_energy: collapse condition |2 gamma b sqrt(2-b^2)| >= omega");
    const double r_b = 0.5 * std::atanh(g / p.omega);
    return std::cosh(2.0 * r_b) / (2.0 * p.omega) * (p.omega * p.omega - g * g) +
           p.j() * p.omega0 * (b * b - 1.0) - p.omega / 2.0;
}

HPVariationalState hp_minimize(const ModelParams& p) {
    p.validate();
    const Phase ph = classify_phase(p);
    if (ph == Phase::CollapseRegime)
        throw UnphysicalError("hp_minimize: collapse regime");
    if (ph == Phase::Unphysical)
        throw UnphysicalError("hp_minimize: superradiant branch unphysical");

    double b0;
    if (ph == Phase::Normal) {
        // The fully polarized state: b^2 - 1 = <Jz>/j = -sgn(omega0).
        b0 = p.omega0 >= 0.0 ? 0.0 : std::sqrt(2.0);
    } else if (p.omega0 == 0.0) {
        b0 = 1.0;
    } else {
        const double A = 1.0 - 4.0 * p.gamma * p.gamma / (p.omega * p.omega);
        const double jw = p.j() * p.omega0 / p.gamma;
        const double B = 1.0 - jw * jw;
        const double u = (p.j() * p.omega0 * p.omega / (2.0 * p.gamma * p.gamma)) *
                         std::sqrt(A / B);
        b0 = std::sqrt(guard_radicand(1.0 - u, "b0^2 = 1 - u < 0"));
    }
    const double g =
        2.0 * p.gamma * b0 * std::sqrt(guard_radicand(2.0 - b0 * b0, "2 - b0^2 < 0"));
    HPVariationalState st;
    st.b = b0;
    st.r_b = 0.5 * std::atanh(g / p.omega);
    st.energy = hp_energy(b0, p);
    return st;
}

}  // namespace meanfield
}  // namespace tpdicke
