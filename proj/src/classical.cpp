#include "tpdicke/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tpdicke {
namespace classical {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_bloch(double Q, double P, bool strict) {
    const double r2 = Q * Q + P * P;
    if (r2 > 4.0)
        throw UnphysicalError("atomic point outside the Bloch projection: Q^2+P^2 > 4");
    if (strict && r2 == 4.0)
        throw UnphysicalError("atomic radical singular at Q^2+P^2 = 4");
}

// Snap components whose imaginary part is only rounding noise.
Complex tidy(Complex z) {
    if (z.imag() != 0.0 && std::abs(z.imag()) <= 1e-12 * (1.0 + std::abs(z.real())))
        return Complex(z.real(), 0.0);
    return z;
}

bool effectively_real(const Complex& z) { return z.imag() == 0.0; }

ClassicalPoint make_pair_point(Complex q, Complex Q) {
    ClassicalPoint pt;
    pt.q = tidy(q);
    pt.Q = tidy(Q);
    pt.p = 0.0;
    pt.P = 0.0;
    pt.status = (effectively_real(pt.q) && effectively_real(pt.Q))
                    ? PointStatus::Real
                    : PointStatus::Complex;
    return pt;
}

ClassicalPoint not_applicable_point() {
    ClassicalPoint pt;
    pt.q = pt.p = pt.Q = pt.P = Complex(kNaN, kNaN);
    pt.status = PointStatus::NotApplicable;
    return pt;
}

double cnorm(const std::array<Complex, 4>& v) {
    double m = 0.0;
    for (const auto& c : v) m = std::max(m, std::abs(c));
    return m;
}

}  // namespace

double h_squeezed(const ModelParams& p, double q, double pp, double Q, double P) {
    p.validate();
    check_bloch(Q, P, false);
    const double s2 = 1.0 / (2.0 * p.j()) + (q * q + pp * pp) / 4.0;
    const double t2 = 1.0 - (Q * Q + P * P) / 4.0;
    return 0.5 * p.omega * (q * q + pp * pp) + 0.5 * p.omega0 * (Q * Q + P * P) -
           p.omega0 - 2.0 * p.gamma * q * Q * std::sqrt(s2 * t2);
}

double h_coherent(const ModelParams& p, double q, double pp, double Q, double P) {
    p.validate();
    check_bloch(Q, P, false);
    const double t = std::sqrt(1.0 - (Q * Q + P * P) / 4.0);
    return 0.5 * p.omega * (q * q + pp * pp) + 0.5 * p.omega0 * (Q * Q + P * P) -
           p.omega0 + p.gamma * (q * q - pp * pp) * Q * t;
}

std::array<double, 4> eom_squeezed(const ModelParams& p, double q, double pp, double Q,
                                   double P) {
    p.validate();
    check_bloch(Q, P, true);
    const double j = p.j();
    const double s = std::sqrt(1.0 / (2.0 * j) + (q * q + pp * pp) / 4.0);
    const double t = std::sqrt(1.0 - (Q * Q + P * P) / 4.0);
    const double g = p.gamma;
    const double qdot = p.omega * pp - 0.5 * g * q * pp * Q * t / s;
    const double pdot =
        -p.omega * q + 2.0 * g * Q * t * (1.0 / (2.0 * j) + (2.0 * q * q + pp * pp) / 4.0) / s;
    const double Qdot = p.omega0 * P + 0.5 * g * q * Q * P * s / t;
    const double Pdot =
        -p.omega0 * Q + 2.0 * g * q * s * (1.0 - (2.0 * Q * Q + P * P) / 4.0) / t;
    return {qdot, pdot, Qdot, Pdot};
}

std::array<double, 4> eom_coherent(const ModelParams& p, double q, double pp, double Q,
                                   double P) {
    p.validate();
    check_bloch(Q, P, true);
    const double t = std::sqrt(1.0 - (Q * Q + P * P) / 4.0);
    const double g = p.gamma;
    const double d = q * q - pp * pp;
    const double qdot = p.omega * pp - 2.0 * g * pp * Q * t;
    const double pdot = -p.omega * q - 2.0 * g * q * Q * t;
    const double Qdot = p.omega0 * P - 0.25 * g * d * Q * P / t;
    const double Pdot = -p.omega0 * Q - g * d * (1.0 - (2.0 * Q * Q + P * P) / 4.0) / t;
    return {qdot, pdot, Qdot, Pdot};
}

std::array<Complex, 4> eom_squeezed(const ModelParams& p, const ClassicalPoint& x,
                                    int boson_sheet, int atom_sheet) {
    p.validate();
    const double j = p.j();
    const Complex q = x.q, pp = x.p, Q = x.Q, P = x.P;
    const Complex s = static_cast<double>(boson_sheet) *
                      std::sqrt(1.0 / (2.0 * j) + (q * q + pp * pp) / 4.0);
    const Complex t =
        static_cast<double>(atom_sheet) * std::sqrt(1.0 - (Q * Q + P * P) / 4.0);
    const double g = p.gamma;
    const Complex qdot = p.omega * pp - 0.5 * g * q * pp * Q * t / s;
    const Complex pdot =
        -p.omega * q + 2.0 * g * Q * t * (1.0 / (2.0 * j) + (2.0 * q * q + pp * pp) / 4.0) / s;
    const Complex Qdot = p.omega0 * P + 0.5 * g * q * Q * P * s / t;
    const Complex Pdot =
        -p.omega0 * Q + 2.0 * g * q * s * (1.0 - (2.0 * Q * Q + P * P) / 4.0) / t;
    return {qdot, pdot, Qdot, Pdot};
}

std::array<Complex, 4> eom_coherent(const ModelParams& p, const ClassicalPoint& y,
                                    int atom_sheet) {
    p.validate();
    const Complex q = y.q, pp = y.p, Q = y.Q, P = y.P;
    const Complex t =
        static_cast<double>(atom_sheet) * std::sqrt(1.0 - (Q * Q + P * P) / 4.0);
    const double g = p.gamma;
    const Complex d = q * q - pp * pp;
    const Complex qdot = p.omega * pp - 2.0 * g * pp * Q * t;
    const Complex pdot = -p.omega * q - 2.0 * g * q * Q * t;
    const Complex Qdot = p.omega0 * P - 0.25 * g * d * Q * P / t;
    const Complex Pdot = -p.omega0 * Q - g * d * (1.0 - (2.0 * Q * Q + P * P) / 4.0) / t;
    return {qdot, pdot, Qdot, Pdot};
}

double stationarity_residual_squeezed(const ModelParams& p, const ClassicalPoint& x) {
    if (x.status == PointStatus::NotApplicable)
        throw std::invalid_argument("stationarity_residual: point not applicable");
    double best = std::numeric_limits<double>::infinity();
    for (int bs : {+1, -1})
        for (int as : {+1, -1}) best = std::min(best, cnorm(eom_squeezed(p, x, bs, as)));
    return best;
}

double stationarity_residual_coherent(const ModelParams& p, const ClassicalPoint& y) {
    if (y.status == PointStatus::NotApplicable)
        throw std::invalid_argument("stationarity_residual: point not applicable");
    double best = std::numeric_limits<double>::infinity();
    for (int as : {+1, -1}) best = std::min(best, cnorm(eom_coherent(p, y, as)));
    return best;
}

StationarySet stationary_squeezed_at(double omega, double omega0, double gamma,
                                     double j) {
    StationarySet set;
    set.origin = ClassicalPoint{};
    if (gamma == 0.0) {
        // The nontrivial pair diverges with the vanishing coupling.
        set.plus = not_applicable_point();
        set.minus = not_applicable_point();
        return set;
    }
    const Complex num(1.0 - (j * omega0 / gamma) * (j * omega0 / gamma));
    const Complex den(1.0 - 4.0 * gamma * gamma / (omega * omega));
    const Complex S = std::sqrt(num / den);
    const Complex q = std::sqrt((S - 1.0) / j);
    const Complex Q =
        std::sqrt(2.0 - (j * omega0 * omega / (gamma * gamma)) * std::sqrt(den / num));
    set.plus = make_pair_point(q, Q);
    set.minus = make_pair_point(-q, -Q);
    set.minus.status = set.plus.status;
    return set;
}

StationarySet stationary_squeezed(const ModelParams& p) {
    p.validate();
    return stationary_squeezed_at(p.omega, p.omega0, p.gamma, p.j());
}

StationarySet stationary_coherent_at(double omega, double omega0, double gamma) {
    if (!(gamma > 0.0))
        throw std::invalid_argument("stationary_coherent: gamma must be > 0");
    if (gamma == 0.5 * omega)
        throw UnphysicalError(
            "stationary_coherent: singular at gamma = omega/2 "
            "((1 - 4 gamma^2/omega^2)^(-1/4) undefined)");
    StationarySet set;
    set.origin = ClassicalPoint{};
    const Complex root4(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));  // e^{i pi/4}
    const Complex A(1.0 - 4.0 * gamma * gamma / (omega * omega));
    const Complex q =
        root4 * std::sqrt(Complex(omega0 / gamma)) * std::pow(A, -0.25);
    const Complex Q = std::sqrt(2.0 + Complex(0.0, 1.0) * (omega / gamma) * std::sqrt(A));
    set.plus = make_pair_point(q, Q);
    set.minus = make_pair_point(-q, -Q);
    set.minus.status = set.plus.status;
    return set;
}

StationarySet stationary_coherent(const ModelParams& p) {
    p.validate();
    return stationary_coherent_at(p.omega, p.omega0, p.gamma);
}

std::vector<LimitRow> limit_correspondence(const ModelParams& p,
                                           const std::vector<double>& j_list) {
    p.validate();
    if (!(p.gamma > 0.0) || !(p.gamma < 0.5 * p.omega))
        throw std::invalid_argument("limit_correspondence: requires gamma in (0, omega/2)");
    if (p.omega0 == 0.0)
        throw std::invalid_argument("limit_correspondence: requires omega0 != 0");
    for (std::size_t i = 0; i + 1 < j_list.size(); ++i)
        if (!(j_list[i] < j_list[i + 1]))
            throw std::invalid_argument("limit_correspondence: j_list must be ascending");

    const StationarySet y = stationary_coherent_at(p.omega, p.omega0, p.gamma);
    std::vector<LimitRow> rows;
    rows.reserve(j_list.size());
    for (double j : j_list) {
        if (!(j > 0.0))
            throw std::invalid_argument("limit_correspondence: j values must be > 0");
        const StationarySet x = stationary_squeezed_at(p.omega, p.omega0, p.gamma, j);
        auto dist = [](const ClassicalPoint& a, const ClassicalPoint& b) {
            const double dq = std::abs(a.q - b.q);
            const double dp = std::abs(a.p - b.p);
            const double dQ = std::abs(a.Q - b.Q);
            const double dP = std::abs(a.P - b.P);
            return std::sqrt(dq * dq + dp * dp + dQ * dQ + dP * dP);
        };
        rows.push_back({j, dist(x.plus, y.plus), dist(x.minus, y.minus)});
    }
    return rows;
}

double effective_surface(const ModelParams& p, double q, double pp) {
    p.validate();
    // Equals (omega/2)(q^2+p^2) - omega0 sqrt(1 + gamma^2 (q^2-p^2)^2/omega0^2)
    // for omega0 > 0 and realizes the omega0 -> 0 limit exactly.
    return 0.5 * p.omega * (q * q + pp * pp) -
           std::hypot(p.omega0, p.gamma * (q * q - pp * pp));
}

Boundedness surface_boundedness(const ModelParams& p) {
    p.validate();
    const double gsc = 0.5 * p.omega;
    if (p.gamma < gsc) return {false, false};
    // Marginal at gamma = omega/2: flat valleys along both axes reach the
    // ground energy at infinity; reported unbounded with the boundary flag.
    return {true, p.gamma == gsc};
}

}  // namespace classical
}  // namespace tpdicke
