#include "tpdicke/verify.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "tpdicke/classical.hpp"
#include "tpdicke/eigensolve.hpp"
#include "tpdicke/hamiltonian.hpp"
#include "tpdicke/meanfield.hpp"
#include "tpdicke/model.hpp"
#include "tpdicke/sweep.hpp"

namespace tpdicke {
namespace verify {

namespace {

// Deterministic uniform RNG, independent of <random> distributions.
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

ModelParams sample_sp_valid(Rng& rng) {
    // gamma strictly above gamma_c, omega0 kept off both domain boundaries.
    ModelParams p;
    p.omega = rng.uniform(0.5, 2.0);
    p.two_j = rng.uniform_int(1, 400);
    p.gamma = p.omega * rng.uniform(0.05, 0.495);
    const double bound = 2.0 * p.gamma * p.gamma / (p.omega * p.j());
    double frac = rng.uniform(0.02, 0.95);
    p.omega0 = frac * bound * (rng.uniform() < 0.25 ? -1.0 : 1.0);
    return p;
}

// Nelder-Mead on an n-dimensional objective; enough accuracy to localize a
// basin for the Newton polish.
std::vector<double> nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                std::vector<double> x0, double step, int max_iter) {
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

// Newton root polish on the squeezed Hamilton equations with a central
// finite-difference Jacobian; independent of the closed-form branch values.
bool newton_polish_squeezed(const ModelParams& p, std::vector<double>& x) {
    auto F = [&](const std::vector<double>& v) -> std::array<double, 4> {
        return classical::eom_squeezed(p, v[0], v[1], v[2], v[3]);
    };
    for (int it = 0; it < 60; ++it) {
        const auto f0 = F(x);
        double rn = 0.0;
        for (double v : f0) rn = std::max(rn, std::abs(v));
        if (rn < 1e-13) return true;
        Eigen::Matrix4d J;
        const double h = 1e-7;
        for (int c = 0; c < 4; ++c) {
            auto xp = x, xm = x;
            xp[c] += h;
            xm[c] -= h;
            const auto fp = F(xp);
            const auto fm = F(xm);
            for (int r = 0; r < 4; ++r) J(r, c) = (fp[r] - fm[r]) / (2.0 * h);
        }
        Eigen::Vector4d rhs(-f0[0], -f0[1], -f0[2], -f0[3]);
        Eigen::Vector4d dx = J.fullPivLu().solve(rhs);
        double scale = 1.0;
        for (int damp = 0; damp < 30; ++damp) {
            std::vector<double> xn = x;
            for (int d = 0; d < 4; ++d) xn[d] += scale * dx[d];
            if (xn[2] * xn[2] + xn[3] * xn[3] < 3.999) {
                x = xn;
                break;
            }
            scale *= 0.5;
        }
    }
    const auto f0 = F(x);
    double rn = 0.0;
    for (double v : f0) rn = std::max(rn, std::abs(v));
    return rn < 1e-11;
}

struct MinimizedObservables {
    double e0, photon, jz;
};

// Independent route to the ground-state observables: 4-D minimization of
// j h(x) followed by a Newton polish of the stationarity conditions.
MinimizedObservables minimize_squeezed(const ModelParams& p) {
    const double j = p.j();
    auto obj = [&](const std::vector<double>& v) {
        if (v[2] * v[2] + v[3] * v[3] >= 3.999) return 1e9;
        return classical::h_squeezed(p, v[0], v[1], v[2], v[3]);
    };
    const double qs = p.omega0 >= 0.0 ? 1.0 : 1.0;
    const double Qs = p.omega0 >= 0.0 ? 1.0 : -1.0;
    std::vector<std::vector<double>> starts = {
        {0.2 * qs, 0.0, 1.0 * Qs, 0.0}, {0.5, 0.0, 1.5, 0.0},  {0.1, 0.0, 0.3, 0.0},
        {-0.3, 0.0, -1.0, 0.0},         {0.3, 0.0, -1.5, 0.0}, {0.05, 0.0, 1.9, 0.0}};
    std::vector<double> best;
    double fbest = 1e18;
    for (auto& s : starts) {
        auto x = nelder_mead(obj, s, 0.12, 4000);
        const double fx = obj(x);
        if (fx < fbest) {
            fbest = fx;
            best = x;
        }
    }
    newton_polish_squeezed(p, best);
    if (obj(best) > fbest + 1e-12) best = nelder_mead(obj, best, 0.01, 4000);
    MinimizedObservables out;
    out.e0 = j * classical::h_squeezed(p, best[0], best[1], best[2], best[3]);
    out.photon = 0.5 * j * (best[0] * best[0] + best[1] * best[1]);
    out.jz = 0.5 * (best[2] * best[2] + best[3] * best[3]) - 1.0;
    return out;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

std::vector<Check> run_all() {
    std::vector<Check> checks;
    auto add = [&checks](const std::string& name, bool pass, const std::string& detail) {
        checks.push_back({name, pass, detail});
    };

    {  // Parity partition covers the basis for assorted sizes.
        bool ok = true;
        Rng rng(11);
        for (int rep = 0; rep < 12 && ok; ++rep) {
            const int two_j = rng.uniform_int(1, 21);
            const int n_max = rng.uniform_int(4, 40);
            std::size_t total = 0;
            for (int s = 0; s < 4; ++s)
                total += sector_basis(two_j, n_max, static_cast<ParitySector>(s)).size();
            ok = total == static_cast<std::size_t>(basis_dimension(two_j, n_max));
        }
        add("parity-partition", ok, "four sector sizes sum to (n_max+1)(2j+1)");
    }

    {  // [H, Pi] vanishes exactly.
        bool ok = true;
        double worst = 0.0;
        Rng rng(13);
        for (int rep = 0; rep < 10; ++rep) {
            ModelParams p;
            p.omega = rng.uniform(0.5, 2.0);
            p.omega0 = rng.uniform(-1.5, 1.5);
            p.gamma = rng.uniform(0.0, 1.0);
            p.two_j = rng.uniform_int(1, 9);
            const double c = commutator_norm_with_parity(p, rng.uniform_int(4, 24));
            worst = std::max(worst, c);
            ok = ok && c == 0.0;
        }
        add("parity-commutator", ok, "max |[H,Pi]| = " + fmt(worst));
    }

    {  // Block reassembly reproduces the full matrix bit-for-bit.
        bool ok = true;
        Rng rng(17);
        for (int rep = 0; rep < 6 && ok; ++rep) {
            ModelParams p;
            p.omega = rng.uniform(0.5, 2.0);
            p.omega0 = rng.uniform(-1.0, 1.0);
            p.gamma = rng.uniform(0.0, 0.8);
            p.two_j = rng.uniform_int(1, 7);
            const int n_max = rng.uniform_int(4, 14);
            const auto full = build_full(p, n_max);
            const auto basis = full_basis(p.two_j, n_max);
            std::vector<int> where(basis.size());
            const auto dec = decompose(p, n_max);
            // map (n,two_m) -> full index
            auto key = [&](const BasisIndex& b) {
                return b.n * (p.two_j + 1) + (b.two_m + p.two_j) / 2;
            };
            std::vector<int> fidx(static_cast<std::size_t>(n_max + 1) * (p.two_j + 1), -1);
            for (std::size_t i = 0; i < basis.size(); ++i) fidx[key(basis[i])] = (int)i;
            std::vector<std::vector<double>> dense(basis.size(),
                                                   std::vector<double>(basis.size(), 0.0));
            for (int s = 0; s < 4; ++s) {
                const auto& map = dec.index_maps[s];
                for (const auto& e : dec.blocks[s].entries) {
                    const int r = fidx[key(map[e.row])];
                    const int c = fidx[key(map[e.col])];
                    dense[std::min(r, c)][std::max(r, c)] = e.value;
                }
            }
            for (const auto& e : full.entries)
                if (dense[e.row][e.col] != e.value) ok = false;
            std::size_t nnz = 0;
            for (int s = 0; s < 4; ++s) nnz += dec.blocks[s].entries.size();
            if (nnz != full.entries.size()) ok = false;
        }
        add("block-reassembly", ok, "sector blocks reassemble build_full exactly");
    }

    {  // Lanczos against the dense oracle.
        bool ok = true;
        double worst = 0.0;
        Rng rng(19);
        for (int rep = 0; rep < 20; ++rep) {
            const int dim = rng.uniform_int(2, 50);
            SymSparseMatrix m;
            m.dim = dim;
            Eigen::MatrixXd dm = Eigen::MatrixXd::Zero(dim, dim);
            for (int r = 0; r < dim; ++r)
                for (int c = r; c < dim; ++c) {
                    const double v = rng.uniform(-1.0, 1.0);
                    m.entries.push_back({r, c, v});
                    dm(r, c) = dm(c, r) = v;
                }
            const auto eig = smallest_eigenpair(m, 1e-12);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dm,
                                                              Eigen::EigenvaluesOnly);
            worst = std::max(worst, std::abs(eig.eigenvalue - es.eigenvalues()(0)));
        }
        ok = worst < 1e-10;
        add("eigensolver-vs-dense", ok, "max |lambda - dense| = " + fmt(worst));
    }

    {  // Decoupled limit is exact.
        ModelParams p;
        p.omega = 1.0;
        p.omega0 = 1.0;
        p.gamma = 0.0;
        p.two_j = 10;
        NumericalControls ctrl;
        const auto g = ground_state(p, ctrl);
        const bool ok = std::abs(g.energy + 5.0) < 1e-12 && g.photon_number < 1e-12 &&
                        std::abs(g.jz_over_j + 1.0) < 1e-12 && g.converged;
        add("decoupled-exact", ok,
            "E0 = " + fmt(g.energy) + ", <n> = " + fmt(g.photon_number));
    }

    {  // Closed forms match the Holstein-Primakoff route and the 4-D minimizer.
        bool ok = true;
        double worst_hp = 0.0, worst_min = 0.0;
        Rng rng(23);
        for (int rep = 0; rep < 25; ++rep) {
            const ModelParams p = sample_sp_valid(rng);
            const auto obs = meanfield::observables(p);
            const auto hp = meanfield::hp_minimize(p);
            worst_hp = std::max(worst_hp,
                                std::abs(hp.energy - obs.e0) / (1.0 + std::abs(obs.e0)));
            if (rep < 8) {
                const auto mo = minimize_squeezed(p);
                auto rel = [](double a, double b) {
                    return std::abs(a - b) / (1.0 + std::abs(b));
                };
                worst_min = std::max({worst_min, rel(mo.e0, obs.e0),
                                      rel(mo.photon, obs.photon_number),
                                      rel(mo.jz, obs.jz_over_j)});
            }
        }
        ok = worst_hp < 1e-12 && worst_min < 1e-8;
        add("meanfield-selfconsistency", ok,
            "hp route " + fmt(worst_hp) + ", 4-D minimization " + fmt(worst_min));
    }

    {  // Analytic gradients against central finite differences.
        double worst = 0.0;
        Rng rng(29);
        for (int rep = 0; rep < 50; ++rep) {
            ModelParams p;
            p.omega = rng.uniform(0.5, 2.0);
            p.omega0 = rng.uniform(-1.5, 1.5);
            p.gamma = rng.uniform(0.0, 1.0);
            p.two_j = rng.uniform_int(1, 40);
            double q = rng.uniform(-1.5, 1.5), pp = rng.uniform(-1.5, 1.5);
            double Q = rng.uniform(-0.9, 0.9), P = rng.uniform(-0.9, 0.9);
            const double h = 1e-6;
            for (int form = 0; form < 2; ++form) {
                auto hf = [&](double a, double b, double c, double d) {
                    return form == 0 ? classical::h_squeezed(p, a, b, c, d)
                                     : classical::h_coherent(p, a, b, c, d);
                };
                const auto eom = form == 0 ? classical::eom_squeezed(p, q, pp, Q, P)
                                           : classical::eom_coherent(p, q, pp, Q, P);
                const double fd[4] = {
                    (hf(q, pp + h, Q, P) - hf(q, pp - h, Q, P)) / (2 * h),
                    -(hf(q + h, pp, Q, P) - hf(q - h, pp, Q, P)) / (2 * h),
                    (hf(q, pp, Q, P + h) - hf(q, pp, Q, P - h)) / (2 * h),
                    -(hf(q, pp, Q + h, P) - hf(q, pp, Q - h, P)) / (2 * h)};
                for (int i = 0; i < 4; ++i)
                    worst = std::max(worst, std::abs(eom[i] - fd[i]));
            }
        }
        add("gradient-finite-difference", worst < 1e-6, "max |eom - fd| = " + fmt(worst));
    }

    {  // Stationary points have vanishing residuals.
        double worst = 0.0;
        Rng rng(31);
        for (int rep = 0; rep < 40; ++rep) {
            const ModelParams p = sample_sp_valid(rng);
            const auto xs = classical::stationary_squeezed(p);
            worst = std::max(worst, classical::stationarity_residual_squeezed(p, xs.origin));
            if (xs.plus.is_real()) {
                worst = std::max(worst,
                                 classical::stationarity_residual_squeezed(p, xs.plus));
                worst = std::max(worst,
                                 classical::stationarity_residual_squeezed(p, xs.minus));
            }
            ModelParams pc = p;
            pc.omega0 = rng.uniform(0.2, 2.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
            const auto ys = classical::stationary_coherent(pc);
            worst = std::max(worst, classical::stationarity_residual_coherent(pc, ys.origin));
            worst = std::max(worst, classical::stationarity_residual_coherent(pc, ys.plus));
            worst = std::max(worst, classical::stationarity_residual_coherent(pc, ys.minus));
        }
        add("stationarity-residuals", worst < 1e-10, "max residual = " + fmt(worst));
    }

    {  // x± converge monotonically to y±.
        ModelParams p;
        p.omega = 1.0;
        p.omega0 = 2.0;
        p.gamma = 0.4;
        p.two_j = 2;
        const auto rows = classical::limit_correspondence(p, {10.0, 100.0, 1000.0, 10000.0});
        bool ok = true;
        for (std::size_t i = 0; i + 1 < rows.size(); ++i)
            ok = ok && rows[i + 1].dist_plus < rows[i].dist_plus &&
                 rows[i + 1].dist_minus < rows[i].dist_minus;
        add("limit-correspondence", ok,
            "last distance " + fmt(rows.back().dist_plus));
    }

    {  // Surface boundedness rule vs large-q probe; minimum at the origin.
        ModelParams p;
        p.omega = 1.0;
        p.omega0 = 2.0;
        p.two_j = 2;
        bool ok = true;
        for (double g : {0.1, 0.3, 0.49, 0.51, 0.7}) {
            p.gamma = g;
            const auto b = classical::surface_boundedness(p);
            const double probe = classical::effective_surface(p, 1e6, 0.0);
            const bool probe_unbounded = probe < -p.omega0 - 1.0;
            ok = ok && (b.unbounded == probe_unbounded);
        }
        p.gamma = 0.4;
        double minv = 1e18;
        double at_q = 0, at_p = 0;
        for (int iq = -40; iq <= 40; ++iq)
            for (int ip = -40; ip <= 40; ++ip) {
                const double v =
                    classical::effective_surface(p, 0.15 * iq, 0.15 * ip);
                if (v < minv) {
                    minv = v;
                    at_q = 0.15 * iq;
                    at_p = 0.15 * ip;
                }
            }
        ok = ok && std::abs(minv + p.omega0) < 1e-12 && at_q == 0.0 && at_p == 0.0;
        add("surface-collapse", ok, "grid min " + fmt(minv) + " at origin");
    }

    {  // Sweep determinism: identical data under different worker counts.
        sweep::GridSpec spec;
        spec.model.omega = 1.0;
        spec.model.two_j = 8;
        spec.axes = {{"omega0", 0.0, 0.4, 7, false}, {"gamma", 0.0, 0.45, 7, false}};
        const Table a = sweep::run_sweep(spec, 1);
        const Table b = sweep::run_sweep(spec, 4);
        std::string sa = a.csv_string(), sb = b.csv_string();
        // The created stamp may tick between runs; data rows must be identical.
        auto strip = [](std::string s) {
            const auto pos = s.find("# created:");
            const auto end = s.find('\n', pos);
            return s.erase(pos, end - pos);
        };
        const bool ok = strip(sa) == strip(sb);
        add("sweep-determinism", ok, "serial and 4-worker CSV data identical");
    }

    return checks;
}

}  // namespace verify
}  // namespace tpdicke
