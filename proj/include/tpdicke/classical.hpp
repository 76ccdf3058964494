// classical.hpp — the two classical limits of the model: squeezed-vacuum and
// Glauber-coherent constructions, Hamilton equations, stationary points
// (complex ones are first-class data), the thermodynamic-limit correspondence
// x± -> y±, and the effective bosonic energy surface.
//
// Complex conventions: principal branch for every square root and
// (-1)^{1/4} = e^{i pi/4}. A complex stationary point is stationary on a
// definite sheet of the atomic radical t = sqrt(1 - (Q^2+P^2)/4) (and, for the
// squeezed form, of the bosonic radical s); eom_* take the sheet signs
// explicitly and stationarity_residual_* minimize over them.

#pragma once

#include <array>
#include <complex>
#include <vector>

#include "tpdicke/model.hpp"

namespace tpdicke {
namespace classical {

using Complex = std::complex<double>;

enum class PointStatus { Real, Complex, NotApplicable };

struct ClassicalPoint {
    Complex q{0.0}, p{0.0};  // bosonic canonical coordinates
    Complex Q{0.0}, P{0.0};  // atomic canonical coordinates, Q^2+P^2 <= 4 when real
    PointStatus status{PointStatus::Real};

    bool is_real() const { return status == PointStatus::Real; }
};

struct StationarySet {
    ClassicalPoint origin;  // x0 / y0 = (0,0;0,0), always real
    ClassicalPoint plus;    // canonical branch (q >= 0, Q >= 0 when real)
    ClassicalPoint minus;   // sign partner (-q, -Q)
};

// Classical energy per spin of the squeezed-vacuum construction:
//   h = (omega/2)(q^2+p^2) + (omega0/2)(Q^2+P^2) - omega0
//       - 2 gamma q Q sqrt((1/2j + (q^2+p^2)/4)(1 - (Q^2+P^2)/4)).
// Throws UnphysicalError if Q^2+P^2 > 4.
double h_squeezed(const ModelParams& p, double q, double pp, double Q, double P);

// Coherent-state counterpart:
//   h = (omega/2)(q^2+p^2) + (omega0/2)(Q^2+P^2) - omega0
//       + gamma (q^2 - p^2) Q sqrt(1 - (Q^2+P^2)/4).
double h_coherent(const ModelParams& p, double q, double pp, double Q, double P);

// Hamilton equations (qdot, pdot, Qdot, Pdot) as exact analytic gradients.
// Real overloads require Q^2+P^2 < 4 strictly (the boundary is singular).
std::array<double, 4> eom_squeezed(const ModelParams& p, double q, double pp, double Q,
                                   double P);
std::array<double, 4> eom_coherent(const ModelParams& p, double q, double pp, double Q,
                                   double P);

// Complex evaluation on explicit radical sheets (+1 = principal).
std::array<Complex, 4> eom_squeezed(const ModelParams& p, const ClassicalPoint& x,
                                    int boson_sheet = +1, int atom_sheet = +1);
std::array<Complex, 4> eom_coherent(const ModelParams& p, const ClassicalPoint& y,
                                    int atom_sheet = +1);

// Max-norm EOM residual, minimized over the radical sheets that carry the point.
double stationarity_residual_squeezed(const ModelParams& p, const ClassicalPoint& x);
double stationarity_residual_coherent(const ModelParams& p, const ClassicalPoint& y);

// Stationary points of the squeezed form. x0 is the origin; x± have
//   q = ±(1/sqrt(j)) (sqrt((1-(j omega0/gamma)^2)/(1-4 gamma^2/omega^2)) - 1)^{1/2},
//   Q = ±(2 - (j omega0 omega/gamma^2) sqrt((1-4 gamma^2/omega^2)/(1-(j omega0/gamma)^2)))^{1/2},
//   p = P = 0,
// evaluated with complex square roots when radicands are negative. At gamma = 0
// the nontrivial pair diverges and is flagged NotApplicable.
StationarySet stationary_squeezed(const ModelParams& p);
StationarySet stationary_squeezed_at(double omega, double omega0, double gamma, double j);

// Stationary points of the coherent form. y0 is the origin and is the only
// real solution; y± are complex for every gamma in (0, omega/2):
//   q = ±e^{i pi/4} sqrt(omega0/gamma) (1-4 gamma^2/omega^2)^{-1/4},
//   Q = ±(2 + i (omega/gamma) sqrt(1-4 gamma^2/omega^2))^{1/2}.
// Requires gamma > 0; gamma == omega/2 is singular.
StationarySet stationary_coherent(const ModelParams& p);
StationarySet stationary_coherent_at(double omega, double omega0, double gamma);

struct LimitRow {
    double j;
    double dist_plus;   // ||x+(j) - y+|| over the complex 4-vector
    double dist_minus;  // ||x-(j) - y-||
};

// Distance table between the squeezed stationary pair at each finite j and the
// coherent pair, for matched sign branches. Requires ascending j_list,
// gamma in (0, omega/2), omega0 != 0.
std::vector<LimitRow> limit_correspondence(const ModelParams& p,
                                           const std::vector<double>& j_list);

// Effective bosonic energy surface after eliminating the atomic variables:
//   h(q, p) = (omega/2)(q^2+p^2) - sqrt(omega0^2 + gamma^2 (q^2-p^2)^2).
// For omega0 > 0 this is the textbook form -omega0 sqrt(1 + ...); at omega0 = 0
// it reduces exactly to (omega/2)(q^2+p^2) - gamma |q^2-p^2|.
double effective_surface(const ModelParams& p, double q, double pp);

struct Boundedness {
    bool unbounded;
    bool at_boundary;  // gamma == omega/2: marginal, reported unbounded
};

// Bounded for gamma < omega/2, unbounded for gamma > omega/2 (along p = 0 the
// surface behaves as (omega/2 - gamma) q^2 at large q).
Boundedness surface_boundedness(const ModelParams& p);

}  // namespace classical
}  // namespace tpdicke
