// oracles.hpp — independent reference computations used by the tests:
// dense Hamiltonians from explicit ladder-operator matrices, truncated
// coherent/squeezed/Bloch state vectors, derivative-free minimizers and a
// deterministic RNG. Nothing here reuses the code paths under test.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "tpdicke/model.hpp"

namespace oracle {

struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    double uniform() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(uniform() * (hi - lo + 1)) % (hi - lo + 1);
    }
};

// Superradiant-valid parameters away from the domain boundaries.
inline tpdicke::ModelParams sample_sp_valid(Rng& rng) {
    tpdicke::ModelParams p;
    p.omega = rng.uniform(0.5, 2.0);
    p.two_j = rng.uniform_int(1, 400);
    p.gamma = p.omega * rng.uniform(0.05, 0.495);
    const double bound = 2.0 * p.gamma * p.gamma / (p.omega * p.j());
    p.omega0 = rng.uniform(0.02, 0.95) * bound * (rng.uniform() < 0.25 ? -1.0 : 1.0);
    return p;
}

// Dense two-photon Dicke Hamiltonian as kron(boson, spin) of explicit
// operator matrices.
inline Eigen::MatrixXd dense_hamiltonian(const tpdicke::ModelParams& p, int n_max) {
    const int db = n_max + 1;
    const int da = p.two_j + 1;
    const double jv = p.j();
    Eigen::MatrixXd ad2 = Eigen::MatrixXd::Zero(db, db);
    for (int n = 0; n + 2 <= n_max; ++n)
        ad2(n + 2, n) = std::sqrt(static_cast<double>(n + 1) * (n + 2));
    Eigen::MatrixXd num = Eigen::MatrixXd::Zero(db, db);
    for (int n = 0; n <= n_max; ++n) num(n, n) = n;
    Eigen::MatrixXd jp = Eigen::MatrixXd::Zero(da, da);
    Eigen::MatrixXd jz = Eigen::MatrixXd::Zero(da, da);
    for (int k = 0; k < da; ++k) {
        const double m = -jv + k;
        jz(k, k) = m;
        if (k + 1 < da) jp(k + 1, k) = std::sqrt(jv * (jv + 1) - m * (m + 1));
    }
    const Eigen::MatrixXd ib = Eigen::MatrixXd::Identity(db, db);
    const Eigen::MatrixXd ia = Eigen::MatrixXd::Identity(da, da);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(db * da, db * da);
    auto kron = [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
        Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j)
                out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        return out;
    };
    h = p.omega * kron(num, ia) + p.omega0 * kron(ib, jz) +
        (p.gamma / p.two_j) *
            kron(Eigen::MatrixXd(ad2 + ad2.transpose()), Eigen::MatrixXd(jp + jp.transpose()));
    return h;
}

// |alpha> amplitudes on the truncated Fock basis.
inline Eigen::VectorXcd coherent_vector(std::complex<double> alpha, int n_max) {
    Eigen::VectorXcd v(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        const double logmag =
            -0.5 * std::norm(alpha) + n * std::log(std::abs(alpha) + 1e-300) -
            0.5 * std::lgamma(n + 1.0);
        v(n) = std::polar(std::exp(logmag), n * std::arg(alpha));
    }
    if (std::abs(alpha) == 0.0) {
        v.setZero();
        v(0) = 1.0;
    }
    return v;
}

// Squeezed vacuum exp((xi* a^2 - xi a^+2)/2)|0> with xi = r e^{i theta}.
inline Eigen::VectorXcd squeezed_vector(double r, double theta, int n_max) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n_max + 1);
    const double th = std::tanh(r);
    for (int k = 0; 2 * k <= n_max; ++k) {
        const double logmag = k * std::log(std::max(th, 1e-300)) +
                              0.5 * std::lgamma(2.0 * k + 1.0) - k * std::log(2.0) -
                              std::lgamma(k + 1.0);
        v(2 * k) = std::pow(std::complex<double>(-std::cos(theta), -std::sin(theta)), k) *
                   std::exp(logmag);
    }
    v /= std::sqrt(std::cosh(r));
    return v;
}

// Bloch coherent state (1+|beta|^2)^-j exp(beta J+)|j,-j>.
inline Eigen::VectorXcd bloch_vector(std::complex<double> beta, int two_j) {
    const double jv = 0.5 * two_j;
    Eigen::VectorXcd v(two_j + 1);
    for (int k = 0; k <= two_j; ++k) {
        const double logbinom = std::lgamma(two_j + 1.0) - std::lgamma(k + 1.0) -
                                std::lgamma(two_j - k + 1.0);
        v(k) = std::pow(beta, k) * std::exp(0.5 * logbinom);
    }
    v /= std::pow(1.0 + std::norm(beta), jv);
    return v;
}

// <boson x atom| H |boson x atom> on the truncated basis.
inline double quantum_expectation(const tpdicke::ModelParams& p, int n_max,
                                  const Eigen::VectorXcd& boson,
                                  const Eigen::VectorXcd& atom) {
    const Eigen::MatrixXd h = dense_hamiltonian(p, n_max);
    Eigen::VectorXcd v(boson.size() * atom.size());
    for (int n = 0; n < boson.size(); ++n)
        for (int k = 0; k < atom.size(); ++k) v(n * atom.size() + k) = boson(n) * atom(k);
    return (v.adjoint() * h * v)(0).real();
}

// Derivative-free Nelder-Mead, sufficient to localize a minimum basin.
inline std::vector<double> nelder_mead(
    const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
    double step, int max_iter) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> pts(n + 1, x0);
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
    for (std::size_t i = 0; i <= n; ++i) fv[i] = f(pts[i]);
    for (int it = 0; it < max_iter; ++it) {
        std::vector<std::size_t> order(n + 1);
        for (std::size_t i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        std::vector<std::vector<double>> sp;
        std::vector<double> sf;
        for (auto idx : order) {
            sp.push_back(pts[idx]);
            sf.push_back(fv[idx]);
        }
        pts = sp;
        fv = sf;
        if (std::abs(fv[n] - fv[0]) < 1e-15 * (1.0 + std::abs(fv[0]))) break;
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t d = 0; d < n; ++d) centroid[d] += pts[i][d] / n;
        auto blend = [&](double c) {
            std::vector<double> x(n);
            for (std::size_t d = 0; d < n; ++d)
                x[d] = centroid[d] + c * (pts[n][d] - centroid[d]);
            return x;
        };
        auto xr = blend(-1.0);
        double fr = f(xr);
        if (fr < fv[0]) {
            auto xe = blend(-2.0);
            double fe = f(xe);
            if (fe < fr) {
                pts[n] = xe;
                fv[n] = fe;
            } else {
                pts[n] = xr;
                fv[n] = fr;
            }
        } else if (fr < fv[n - 1]) {
            pts[n] = xr;
            fv[n] = fr;
        } else {
            auto xc = blend(0.5);
            double fc = f(xc);
            if (fc < fv[n]) {
                pts[n] = xc;
                fv[n] = fc;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t d = 0; d < n; ++d)
                        pts[i][d] = pts[0][d] + 0.5 * (pts[i][d] - pts[0][d]);
                    fv[i] = f(pts[i]);
                }
            }
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (fv[i] < fv[best]) best = i;
    return pts[best];
}

// Golden-section minimization of a unimodal 1-D function.
inline double golden_section(const std::function<double(double)>& f, double a, double b,
                             double tol) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// Newton polish of grad(x)=0 given a 4-vector gradient function; the Jacobian
// comes from central differences of the gradient itself.
inline bool newton_polish4(const std::function<std::array<double, 4>(const std::array<double, 4>&)>& grad,
                           std::array<double, 4>& x, double bloch_cap = 3.999) {
    for (int it = 0; it < 60; ++it) {
        const auto f0 = grad(x);
        double rn = 0.0;
        for (double v : f0) rn = std::max(rn, std::abs(v));
        if (rn < 1e-13) return true;
        Eigen::Matrix4d J;
        const double h = 1e-7;
        for (int c = 0; c < 4; ++c) {
            auto xp = x, xm = x;
            xp[c] += h;
            xm[c] -= h;
            const auto fp = grad(xp);
            const auto fm = grad(xm);
            for (int r = 0; r < 4; ++r) J(r, c) = (fp[r] - fm[r]) / (2.0 * h);
        }
        Eigen::Vector4d rhs(-f0[0], -f0[1], -f0[2], -f0[3]);
        Eigen::Vector4d dx = J.fullPivLu().solve(rhs);
        double scale = 1.0;
        for (int damp = 0; damp < 30; ++damp) {
            auto xn = x;
            for (int d = 0; d < 4; ++d) xn[d] += scale * dx[d];
            if (xn[2] * xn[2] + xn[3] * xn[3] < bloch_cap) {
                x = xn;
                break;
            }
            scale *= 0.5;
        }
    }
    const auto f0 = grad(x);
    double rn = 0.0;
    for (double v : f0) rn = std::max(rn, std::abs(v));
    return rn < 1e-11;
}

}  // namespace oracle
