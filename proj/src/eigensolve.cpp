#include "tpdicke/eigensolve.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <future>
#include <limits>

namespace tpdicke {

namespace {

// Deterministic uniform start vector; hand-rolled mapping so results are
// identical across standard-library implementations.
std::vector<double> seeded_unit_vector(int n, std::uint64_t seed) {
    std::vector<double> v(static_cast<std::size_t>(n));
    std::uint64_t state = seed ? seed : 0x9e3779b97f4a7c15ULL;
    auto next = [&state]() {
        // splitmix64
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    double norm2 = 0.0;
    for (auto& x : v) {
        x = (static_cast<double>(next() >> 11) * 0x1.0p-53) * 2.0 - 1.0;
        norm2 += x * x;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& x : v) x *= inv;
    return v;
}

struct TridiagEig {
    double value;
    Eigen::VectorXd vector;
};

// Smallest eigenpair of the k x k tridiagonal with diagonal alpha[0..k-1] and
// subdiagonal beta[0..k-2].
TridiagEig smallest_of_tridiagonal(const std::vector<double>& alpha,
                                   const std::vector<double>& beta, int k) {
    Eigen::VectorXd d(k), e(std::max(k - 1, 0));
    for (int i = 0; i < k; ++i) d[i] = alpha[i];
    for (int i = 0; i + 1 < k; ++i) e[i] = beta[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
    return {es.eigenvalues()(0), es.eigenvectors().col(0)};
}

void canonicalize_sign(std::vector<double>& v) {
    std::size_t imax = 0;
    double amax = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double a = std::abs(v[i]);
        if (a > amax) {
            amax = a;
            imax = i;
        }
    }
    if (!v.empty() && v[imax] < 0.0)
        for (auto& x : v) x = -x;
}

}  // namespace

EigResult smallest_eigenpair(const SymSparseMatrix& m, double tol,
                             const LanczosOptions& opt) {
    const int n = m.dim;
    if (n < 1) throw std::invalid_argument("smallest_eigenpair: empty matrix");
    if (!(tol > 0.0)) throw std::invalid_argument("smallest_eigenpair: tol must be > 0");

    if (n == 1) {
        double d = 0.0;
        for (const auto& e : m.entries) d = e.value;
        return {d, {1.0}, 0.0, 0, opt.seed};
    }

    const double anorm = std::max(m.inf_norm(), 1e-300);
    const double breakdown = 64.0 * std::numeric_limits<double>::epsilon() * anorm;
    // Cap the stored subspace so memory stays bounded on large blocks.
    const int memory_cap =
        std::max(48, static_cast<int>(std::int64_t{12'000'000} / std::max(n, 1)));
    const int m_max = std::min({opt.max_subspace, n, memory_cap});
    const bool full_reorth = n < opt.full_reorth_dim;
    const double eps = std::numeric_limits<double>::epsilon();
    const double reorth_threshold = std::sqrt(eps);

    std::vector<double> v0 = seeded_unit_vector(n, opt.seed);
    EigResult best;
    best.eigenvalue = std::numeric_limits<double>::infinity();
    best.residual = std::numeric_limits<double>::infinity();
    best.seed = opt.seed;
    int total_matvecs = 0;

    std::vector<double> V;  // Lanczos vectors, m_max rows of length n
    std::vector<double> alpha, beta, w(static_cast<std::size_t>(n));
    std::vector<double> omega_prev, omega_cur;  // orthogonality estimates
    int stagnant = 0;

    for (int restart = 0; restart <= opt.max_restarts; ++restart) {
        const double residual_before = best.residual;
        V.assign(static_cast<std::size_t>(m_max) * n, 0.0);
        alpha.clear();
        beta.clear();
        omega_prev.assign(static_cast<std::size_t>(m_max) + 2, eps);
        omega_cur.assign(static_cast<std::size_t>(m_max) + 2, eps);
        std::memcpy(V.data(), v0.data(), sizeof(double) * n);

        int k = 0;  // number of completed Lanczos vectors
        bool broke_down = false;
        bool converged = false;
        while (k < m_max && !converged) {
            // Step k: alpha has k entries, beta has k-1 (for k >= 1).
            const double* vk = V.data() + static_cast<std::size_t>(k) * n;
            m.apply(vk, w.data());
            ++total_matvecs;
            if (k > 0) {
                const double* vkm1 = V.data() + static_cast<std::size_t>(k - 1) * n;
                const double b = beta[k - 1];
                for (int i = 0; i < n; ++i) w[i] -= b * vkm1[i];
            }
            double a = 0.0;
            for (int i = 0; i < n; ++i) a += w[i] * vk[i];
            alpha.push_back(a);
            for (int i = 0; i < n; ++i) w[i] -= a * vk[i];

            bool do_reorth = full_reorth;
            if (!full_reorth && k > 0) {
                // Simon-style recurrence estimating |v_{k+1} . v_i|; any term
                // above sqrt(eps) triggers a full sweep.
                for (int i = 0; i < k; ++i) {
                    double t = (alpha[i] - a) * omega_cur[i] + beta[i] * omega_cur[i + 1];
                    if (i > 0) t += beta[i - 1] * omega_cur[i - 1];
                    if (k > 1) t -= beta[k - 2] * omega_prev[i];
                    omega_prev[i] = std::abs(t) + 2.0 * eps * anorm;
                }
                std::swap(omega_prev, omega_cur);
                omega_cur[k] = eps;
                omega_cur[k + 1] = 1.0;
                for (int i = 0; i < k; ++i)
                    if (omega_cur[i] > reorth_threshold) {
                        do_reorth = true;
                        break;
                    }
            }
            if (do_reorth) {
                for (int pass = 0; pass < 2; ++pass) {
                    for (int c = 0; c <= k; ++c) {
                        const double* vc = V.data() + static_cast<std::size_t>(c) * n;
                        double d = 0.0;
                        for (int i = 0; i < n; ++i) d += w[i] * vc[i];
                        for (int i = 0; i < n; ++i) w[i] -= d * vc[i];
                    }
                }
                if (!full_reorth)
                    for (int c = 0; c <= k + 1; ++c) omega_cur[c] = eps;
            }

            double b2 = 0.0;
            for (int i = 0; i < n; ++i) b2 += w[i] * w[i];
            const double bnorm = std::sqrt(b2);
            ++k;
            if (bnorm <= breakdown) {
                broke_down = true;  // exact invariant subspace: T is now exact
            } else {
                beta.push_back(bnorm);
                if (k < m_max) {
                    double* vnext = V.data() + static_cast<std::size_t>(k) * n;
                    const double inv = 1.0 / bnorm;
                    for (int i = 0; i < n; ++i) vnext[i] = w[i] * inv;
                }
            }

            const bool check =
                broke_down || k == m_max || (k % opt.check_interval == 0);
            if (!check) continue;
            TridiagEig te = smallest_of_tridiagonal(alpha, beta, k);
            const double est = (static_cast<int>(beta.size()) >= k)
                                   ? std::abs(beta[k - 1] * te.vector(k - 1))
                                   : 0.0;
            if (est > 0.5 * tol && k < m_max && !broke_down) continue;

            // Form the Ritz vector and measure the true residual.
            std::vector<double> x(static_cast<std::size_t>(n), 0.0);
            for (int c = 0; c < k; ++c) {
                const double s = te.vector(c);
                const double* vc = V.data() + static_cast<std::size_t>(c) * n;
                for (int i = 0; i < n; ++i) x[i] += s * vc[i];
            }
            double xn = 0.0;
            for (double xv : x) xn += xv * xv;
            xn = std::sqrt(xn);
            for (auto& xv : x) xv /= xn;
            std::vector<double> hx(static_cast<std::size_t>(n));
            m.apply(x.data(), hx.data());
            ++total_matvecs;
            double r2 = 0.0;
            for (int i = 0; i < n; ++i) {
                const double d = hx[i] - te.value * x[i];
                r2 += d * d;
            }
            const double res = std::sqrt(r2);
            if (best.eigenvector.empty() || te.value <= best.eigenvalue) {
                best.eigenvalue = te.value;
                best.eigenvector = std::move(x);
                best.residual = res;
                best.iterations = total_matvecs;
            }
            if (res <= tol) converged = true;
            if (broke_down) break;
        }

        if (converged || (broke_down && best.residual <= tol)) break;
        // An exact invariant subspace or a residual stuck at the rounding floor
        // cannot improve under restarts.
        if (broke_down || !(best.residual < 0.5 * residual_before)) {
            if (++stagnant >= 2) break;
        } else {
            stagnant = 0;
        }
        if (!best.eigenvector.empty()) v0 = best.eigenvector;
    }

    if (best.residual <= tol) {
        canonicalize_sign(best.eigenvector);
        return best;
    }
    throw NoConvergenceError(
        "smallest_eigenpair: residual " + std::to_string(best.residual) +
            " above tolerance after " + std::to_string(opt.max_restarts) + " restarts",
        best);
}

namespace {

struct SectorSolve {
    double energy{std::numeric_limits<double>::infinity()};
    EigResult eig;
};

SectorSolve solve_sector(const SymSparseMatrix& block, double tol,
                         const LanczosOptions& opt) {
    SectorSolve out;
    if (block.dim == 0) return out;
    try {
        out.eig = smallest_eigenpair(block, tol, opt);
    } catch (const NoConvergenceError&) {
        if (block.dim > 4096) throw;
        // Dense fallback.
        Eigen::MatrixXd dm = Eigen::MatrixXd::Zero(block.dim, block.dim);
        for (const auto& en : block.entries) {
            dm(en.row, en.col) = en.value;
            dm(en.col, en.row) = en.value;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dm);
        out.eig.eigenvalue = es.eigenvalues()(0);
        out.eig.eigenvector.assign(es.eigenvectors().col(0).data(),
                                   es.eigenvectors().col(0).data() + block.dim);
        Eigen::VectorXd r = dm * es.eigenvectors().col(0) -
                            es.eigenvalues()(0) * es.eigenvectors().col(0);
        out.eig.residual = r.norm();
        out.eig.seed = opt.seed;
    }
    out.energy = out.eig.eigenvalue;
    return out;
}

}  // namespace

GroundStateResult ground_state(const ModelParams& p, const NumericalControls& ctrl,
                               const GroundStateOptions& opt) {
    p.validate();
    ctrl.validate();
    const Phase phase = classify_phase(p);
    const bool collapse = phase == Phase::CollapseRegime;

    LanczosOptions lopt;
    lopt.seed = opt.seed;

    GroundStateResult result;
    result.phase = phase;
    result.seed = opt.seed;

    int n_max = ctrl.n_max;
    int streak = 0;
    bool have_prev = false;
    double prev_energy = 0.0;

    while (true) {
        std::array<std::vector<BasisIndex>, 4> maps;
        std::array<SectorSolve, 4> solves;
        auto run = [&](int s) {
            maps[s] = sector_basis(p.two_j, n_max, static_cast<ParitySector>(s));
            SymSparseMatrix block = assemble(p, maps[s]);
            solves[s] = solve_sector(block, ctrl.eig_tol, lopt);
        };
        if (opt.parallel_sectors) {
            std::array<std::future<void>, 4> fut;
            for (int s = 0; s < 4; ++s) fut[s] = std::async(std::launch::async, run, s);
            for (auto& f : fut) f.get();
        } else {
            for (int s = 0; s < 4; ++s) run(s);
        }

        // Deterministic merge: smallest energy, ties broken by sector order.
        int best_s = 0;
        for (int s = 1; s < 4; ++s)
            if (solves[s].energy < solves[best_s].energy) best_s = s;
        double runner_up = std::numeric_limits<double>::infinity();
        for (int s = 0; s < 4; ++s)
            if (s != best_s) runner_up = std::min(runner_up, solves[s].energy);

        const auto& eig = solves[best_s].eig;
        const auto& basis = maps[best_s];
        double photon = 0.0, jz = 0.0;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            const double w = eig.eigenvector[i] * eig.eigenvector[i];
            photon += w * basis[i].n;
            jz += w * (0.5 * basis[i].two_m);
        }

        result.energy = eig.eigenvalue;
        result.photon_number = photon;
        result.jz_over_j = jz / p.j();
        result.n_max_used = n_max;
        result.sector = static_cast<ParitySector>(best_s);
        result.sector_gap = runner_up - eig.eigenvalue;
        result.residual = eig.residual;

        if (collapse) {
            // Unbounded spectrum below the truncation: fixed-cutoff policy.
            result.converged = false;
            return result;
        }
        if (have_prev) {
            const double change = std::abs(result.energy - prev_energy);
            if (change < ctrl.tol_abs + ctrl.tol_rel * std::abs(result.energy))
                ++streak;
            else
                streak = 0;
            if (streak >= 2) {
                result.converged = true;
                return result;
            }
        }
        prev_energy = result.energy;
        have_prev = true;
        if (n_max >= ctrl.n_cap) {
            result.converged = false;
            return result;
        }
        n_max = std::min(2 * n_max, ctrl.n_cap);
    }
}

}  // namespace tpdicke
