#include "tpdicke/sweep.hpp"

#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "tpdicke/classical.hpp"
#include "tpdicke/meanfield.hpp"
#include "tpdicke/version.hpp"

namespace tpdicke {
namespace sweep {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

int two_j_from(double j) {
    const double two_j = 2.0 * j;
    const double r = std::round(two_j);
    if (!(j > 0.0) || std::abs(two_j - r) > 1e-9 || r < 1.0 || r > 2e9)
        throw std::invalid_argument("j must be a positive half-integer, got " +
                                    std::to_string(j));
    return static_cast<int>(r);
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex err_mutex;
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int count = std::min<std::size_t>(workers, n);
    pool.reserve(count);
    for (int i = 0; i < count; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

int resolve_workers(int requested) {
    int w = requested > 0 ? requested
                          : static_cast<int>(std::thread::hardware_concurrency());
    if (w < 1) w = 1;
    if (const char* cap = std::getenv("TPD_MAX_WORKERS")) {
        const int c = std::atoi(cap);
        if (c >= 1) w = std::min(w, c);
    }
    return w;
}

double AxisSpec::value_at(int i) const {
    if (count == 1) return min;
    const double f = static_cast<double>(i) / (count - 1);
    if (log) return std::exp(std::log(min) + f * (std::log(max) - std::log(min)));
    return min + f * (max - min);
}

void GridSpec::validate() const {
    model.validate();
    controls.validate();
    if (axes.empty() || axes.size() > 2)
        throw std::invalid_argument("GridSpec: need 1 or 2 axes");
    for (const auto& a : axes) {
        if (a.param != "omega0" && a.param != "gamma" && a.param != "omega")
            throw std::invalid_argument("GridSpec: unknown axis parameter " + a.param);
        if (a.count < 2) throw std::invalid_argument("GridSpec: axis count must be >= 2");
        if (!(a.min <= a.max))
            throw std::invalid_argument("GridSpec: axis min must be <= max");
        if (a.log && !(a.min > 0.0))
            throw std::invalid_argument("GridSpec: log axis requires min > 0");
        if (a.param == "gamma" && a.min < 0.0)
            throw std::invalid_argument("GridSpec: gamma axis must be >= 0");
        if (a.param == "omega" && !(a.min > 0.0))
            throw std::invalid_argument("GridSpec: omega axis must be > 0");
    }
    if (axes.size() == 2 && axes[0].param == axes[1].param)
        throw std::invalid_argument("GridSpec: duplicate axis parameter");
    for (double j : j_list) two_j_from(j);
    if (mode != SweepMode::Analytic && !allow_collapse_numeric) {
        double gamma_hi = model.gamma;
        double omega_lo = model.omega;
        for (const auto& a : axes) {
            if (a.param == "gamma") gamma_hi = a.max;
            if (a.param == "omega") omega_lo = a.min;
        }
        if (gamma_hi >= 0.5 * omega_lo)
            throw std::invalid_argument(
                "GridSpec: numeric mode reaches the collapse regime (gamma >= omega/2); "
                "set allow_collapse_numeric to override");
    }
}

std::string GridSpec::to_json() const {
    nlohmann::json doc;
    doc["model"] = {{"omega", model.omega},
                    {"omega0", model.omega0},
                    {"gamma", model.gamma},
                    {"two_j", model.two_j}};
    doc["axes"] = nlohmann::json::array();
    for (const auto& a : axes)
        doc["axes"].push_back({{"param", a.param},
                               {"min", a.min},
                               {"max", a.max},
                               {"count", a.count},
                               {"log", a.log}});
    doc["j_list"] = j_list;
    doc["j_infinite"] = j_infinite;
    doc["mode"] = mode == SweepMode::Analytic ? "analytic"
                  : mode == SweepMode::Numeric ? "numeric"
                                               : "both";
    doc["controls"] = {{"n_max", controls.n_max},
                       {"n_cap", controls.n_cap},
                       {"tol_abs", controls.tol_abs},
                       {"tol_rel", controls.tol_rel},
                       {"eig_tol", controls.eig_tol}};
    doc["allow_collapse_numeric"] = allow_collapse_numeric;
    return doc.dump();
}

GridSpec GridSpec::from_json(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text);
    GridSpec spec;
    if (doc.contains("model")) {
        const auto& m = doc["model"];
        spec.model.omega = m.value("omega", 1.0);
        spec.model.omega0 = m.value("omega0", 0.0);
        spec.model.gamma = m.value("gamma", 0.0);
        if (m.contains("two_j"))
            spec.model.two_j = m["two_j"].get<int>();
        else if (m.contains("j"))
            spec.model.two_j = two_j_from(m["j"].get<double>());
    }
    if (!doc.contains("axes"))
        throw std::invalid_argument("GridSpec: missing axes");
    for (const auto& a : doc["axes"]) {
        AxisSpec axis;
        axis.param = a.at("param").get<std::string>();
        axis.min = a.at("min").get<double>();
        axis.max = a.at("max").get<double>();
        axis.count = a.at("count").get<int>();
        axis.log = a.value("log", false);
        spec.axes.push_back(axis);
    }
    if (doc.contains("j_list")) spec.j_list = doc["j_list"].get<std::vector<double>>();
    spec.j_infinite = doc.value("j_infinite", false);
    const std::string mode = doc.value("mode", "analytic");
    if (mode == "analytic")
        spec.mode = SweepMode::Analytic;
    else if (mode == "numeric")
        spec.mode = SweepMode::Numeric;
    else if (mode == "both")
        spec.mode = SweepMode::Both;
    else
        throw std::invalid_argument("GridSpec: unknown mode " + mode);
    if (doc.contains("controls")) {
        const auto& c = doc["controls"];
        spec.controls.n_max = c.value("n_max", spec.controls.n_max);
        spec.controls.n_cap = c.value("n_cap", spec.controls.n_cap);
        spec.controls.tol_abs = c.value("tol_abs", spec.controls.tol_abs);
        spec.controls.tol_rel = c.value("tol_rel", spec.controls.tol_rel);
        spec.controls.eig_tol = c.value("eig_tol", spec.controls.eig_tol);
    }
    spec.allow_collapse_numeric = doc.value("allow_collapse_numeric", false);
    spec.validate();
    return spec;
}

namespace {

struct RowTask {
    ModelParams params;
    double j;         // finite j value (ignored when infinite)
    bool infinite;
};

void fill_analytic(Table& t, std::size_t r, const RowTask& task,
                   const std::vector<int>& cols) {
    // cols order: omega omega0 gamma j j_infinite gamma_c phase e0 photon jz
    //             excitation e0_displaced unphysical_sp_branch
    const ModelParams& p = task.params;
    int c = 0;
    t.set(r, cols[c++], p.omega);
    t.set(r, cols[c++], p.omega0);
    t.set(r, cols[c++], p.gamma);
    t.set(r, cols[c++], task.infinite ? kInf : task.j);
    t.set(r, cols[c++], task.infinite ? 1.0 : 0.0);
    const int col_gc = cols[c++];
    const int col_phase = cols[c++];
    const int col_e0 = cols[c++];
    const int col_n = cols[c++];
    const int col_jz = cols[c++];
    const int col_exc = cols[c++];
    const int col_disp = cols[c++];
    const int col_unph = cols[c++];

    if (task.infinite) {
        // Analytic thermodynamic limit: the superradiant window is empty and
        // only the normal phase survives below collapse.
        t.set(r, col_gc, p.omega0 == 0.0 ? 0.0 : kInf);
        const bool collapse = p.gamma >= 0.5 * p.omega;
        t.set(r, col_phase, std::string(collapse ? "collapse" : "normal"));
        if (collapse) {
            t.set(r, col_e0, kNaN);
            t.set(r, col_n, kNaN);
            t.set(r, col_jz, kNaN);
            t.set(r, col_exc, kNaN);
            t.set(r, col_disp, kNaN);
        } else {
            const double jz = -sign_of(p.omega0) + 0.0;
            t.set(r, col_e0, kNaN);  // extensive; diverges with j
            t.set(r, col_n, 0.0);
            t.set(r, col_jz, jz);
            t.set(r, col_exc, 1.0 + jz);
            t.set(r, col_disp, 0.0);
        }
        t.set(r, col_unph, 0.0);
        return;
    }

    t.set(r, col_gc, critical_coupling(p));
    const Phase ph = classify_phase(p);
    t.set(r, col_phase, std::string(phase_name(ph)));
    if (ph == Phase::CollapseRegime) {
        t.set(r, col_e0, kNaN);
        t.set(r, col_n, kNaN);
        t.set(r, col_jz, kNaN);
        t.set(r, col_exc, kNaN);
        t.set(r, col_disp, kNaN);
        t.set(r, col_unph, 0.0);
        return;
    }
    // Unphysical rows fall back to NP values, flagged.
    const bool unphysical = ph == Phase::Unphysical;
    meanfield::MeanFieldObservables obs;
    if (unphysical) {
        obs = {-(task.j * std::abs(p.omega0)) + 0.0, 0.0, -sign_of(p.omega0) + 0.0, ph};
    } else {
        obs = meanfield::observables(p);
    }
    t.set(r, col_e0, obs.e0);
    t.set(r, col_n, obs.photon_number);
    t.set(r, col_jz, obs.jz_over_j);
    t.set(r, col_exc, 1.0 + obs.jz_over_j);
    t.set(r, col_disp, obs.e0 + task.j * std::abs(p.omega0));
    t.set(r, col_unph, unphysical ? 1.0 : 0.0);
}

}  // namespace

Table run_sweep(const GridSpec& spec, int n_workers) {
    spec.validate();
    const int workers = resolve_workers(n_workers);

    // Deterministic row order: j blocks outer, then axis 0, then axis 1.
    std::vector<RowTask> tasks;
    const AxisSpec* ax0 = &spec.axes[0];
    const AxisSpec* ax1 = spec.axes.size() > 1 ? &spec.axes[1] : nullptr;
    // Finite blocks come from j_list (or the model j); an empty j_list with the
    // j_infinite flag produces the limit block alone.
    std::vector<std::pair<double, bool>> j_blocks;  // (j, infinite)
    if (!spec.j_list.empty())
        for (double j : spec.j_list) j_blocks.push_back({j, false});
    else if (!spec.j_infinite)
        j_blocks.push_back({spec.model.j(), false});
    if (spec.j_infinite) j_blocks.push_back({0.0, true});

    for (const auto& [jv, inf] : j_blocks) {
        for (int i0 = 0; i0 < ax0->count; ++i0) {
            for (int i1 = 0; i1 < (ax1 ? ax1->count : 1); ++i1) {
                RowTask task;
                task.params = spec.model;
                task.infinite = inf;
                task.j = inf ? 0.0 : jv;
                if (!inf) task.params.two_j = two_j_from(jv);
                auto apply = [&task](const AxisSpec& a, int i) {
                    const double v = a.value_at(i);
                    if (a.param == "omega0")
                        task.params.omega0 = v;
                    else if (a.param == "gamma")
                        task.params.gamma = v;
                    else
                        task.params.omega = v;
                };
                apply(*ax0, i0);
                if (ax1) apply(*ax1, i1);
                tasks.push_back(task);
            }
        }
    }

    Metadata meta;
    meta.version = TPDICKE_VERSION;
    meta.spec_echo = spec.to_json();
    meta.seed = GroundStateOptions{}.seed;
    meta.created = Metadata::timestamp();
    Table t(meta);

    std::vector<int> acols;
    for (const char* name : {"omega", "omega0", "gamma", "j", "j_infinite", "gamma_c"})
        acols.push_back(t.add_numeric_column(name));
    acols.push_back(t.add_text_column("phase"));
    for (const char* name :
         {"e0", "photon_number", "jz_over_j", "excitation", "e0_displaced",
          "unphysical_sp_branch"})
        acols.push_back(t.add_numeric_column(name));

    const bool numeric = spec.mode != SweepMode::Analytic;
    int col_ne0 = -1, col_nn = -1, col_njz = -1, col_nexc = -1, col_ndisp = -1,
        col_nmax = -1, col_conv = -1, col_res = -1, col_sector = -1, col_status = -1;
    if (numeric) {
        col_ne0 = t.add_numeric_column("num_e0");
        col_nn = t.add_numeric_column("num_photon_number");
        col_njz = t.add_numeric_column("num_jz_over_j");
        col_nexc = t.add_numeric_column("num_excitation");
        col_ndisp = t.add_numeric_column("num_e0_displaced");
        col_nmax = t.add_numeric_column("num_n_max_used");
        col_conv = t.add_numeric_column("num_converged");
        col_res = t.add_numeric_column("num_residual");
        col_sector = t.add_text_column("num_sector");
        col_status = t.add_text_column("num_status");
    }
    t.resize_rows(tasks.size());

    parallel_for(tasks.size(), workers, [&](std::size_t r) {
        const RowTask& task = tasks[r];
        fill_analytic(t, r, task, acols);
        if (!numeric) return;
        if (task.infinite) {
            t.set(r, col_ne0, kNaN);
            t.set(r, col_nn, kNaN);
            t.set(r, col_njz, kNaN);
            t.set(r, col_nexc, kNaN);
            t.set(r, col_ndisp, kNaN);
            t.set(r, col_nmax, kNaN);
            t.set(r, col_conv, 0.0);
            t.set(r, col_res, kNaN);
            t.set(r, col_sector, std::string(""));
            t.set(r, col_status, std::string("skipped-jinf"));
            return;
        }
        try {
            GroundStateOptions gopt;
            gopt.parallel_sectors = workers == 1;
            const GroundStateResult g = ground_state(task.params, spec.controls, gopt);
            t.set(r, col_ne0, g.energy);
            t.set(r, col_nn, g.photon_number);
            t.set(r, col_njz, g.jz_over_j);
            t.set(r, col_nexc, 1.0 + g.jz_over_j);
            t.set(r, col_ndisp, g.energy + task.j * std::abs(task.params.omega0));
            t.set(r, col_nmax, static_cast<double>(g.n_max_used));
            t.set(r, col_conv, g.converged ? 1.0 : 0.0);
            t.set(r, col_res, g.residual);
            t.set(r, col_sector, std::string(sector_name(g.sector)));
            t.set(r, col_status,
                  std::string(g.converged
                                  ? "ok"
                                  : (g.phase == Phase::CollapseRegime ? "collapse-policy"
                                                                      : "unconverged")));
        } catch (const std::exception& e) {
            t.set(r, col_ne0, kNaN);
            t.set(r, col_nn, kNaN);
            t.set(r, col_njz, kNaN);
            t.set(r, col_nexc, kNaN);
            t.set(r, col_ndisp, kNaN);
            t.set(r, col_nmax, kNaN);
            t.set(r, col_conv, 0.0);
            t.set(r, col_res, kNaN);
            t.set(r, col_sector, std::string(""));
            t.set(r, col_status, std::string("error: ") + e.what());
        }
    });
    return t;
}

double superradiant_area(const ModelParams& base, const AxisSpec& omega0_axis,
                         const AxisSpec& gamma_axis, bool j_infinite) {
    base.validate();
    std::int64_t sp = 0;
    const std::int64_t total =
        static_cast<std::int64_t>(omega0_axis.count) * gamma_axis.count;
    if (!j_infinite) {
        for (int i0 = 0; i0 < omega0_axis.count; ++i0) {
            ModelParams p = base;
            p.omega0 = omega0_axis.value_at(i0);
            for (int i1 = 0; i1 < gamma_axis.count; ++i1) {
                p.gamma = gamma_axis.value_at(i1);
                if (classify_phase(p) == Phase::Superradiant) ++sp;
            }
        }
    }
    return static_cast<double>(sp) / static_cast<double>(total);
}

Table limit_table(const ModelParams& p, const std::vector<double>& j_list) {
    const auto rows = classical::limit_correspondence(p, j_list);
    nlohmann::json spec;
    spec["limit"] = {{"omega", p.omega},
                     {"omega0", p.omega0},
                     {"gamma", p.gamma},
                     {"j_list", j_list}};
    Metadata meta;
    meta.version = TPDICKE_VERSION;
    meta.spec_echo = spec.dump();
    meta.seed = GroundStateOptions{}.seed;
    meta.created = Metadata::timestamp();
    Table t(meta);
    const int cj = t.add_numeric_column("j");
    const int cp = t.add_numeric_column("dist_plus");
    const int cm = t.add_numeric_column("dist_minus");
    t.resize_rows(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        t.set(r, cj, rows[r].j);
        t.set(r, cp, rows[r].dist_plus);
        t.set(r, cm, rows[r].dist_minus);
    }
    return t;
}

Table surface_grid(const ModelParams& p, double q_min, double q_max, int nq,
                   double p_min, double p_max, int np) {
    p.validate();
    if (nq < 2 || np < 2)
        throw std::invalid_argument("surface_grid: grid counts must be >= 2");
    nlohmann::json spec;
    spec["surface"] = {{"omega", p.omega},   {"omega0", p.omega0}, {"gamma", p.gamma},
                       {"q_min", q_min},     {"q_max", q_max},     {"nq", nq},
                       {"p_min", p_min},     {"p_max", p_max},     {"np", np}};
    Metadata meta;
    meta.version = TPDICKE_VERSION;
    meta.spec_echo = spec.dump();
    meta.seed = GroundStateOptions{}.seed;
    meta.created = Metadata::timestamp();
    Table t(meta);
    const int cq = t.add_numeric_column("q");
    const int cp = t.add_numeric_column("p");
    const int ch = t.add_numeric_column("h");
    t.resize_rows(static_cast<std::size_t>(nq) * np);
    std::size_t r = 0;
    for (int iq = 0; iq < nq; ++iq) {
        const double q = q_min + (q_max - q_min) * iq / (nq - 1);
        for (int ip = 0; ip < np; ++ip, ++r) {
            const double pp = p_min + (p_max - p_min) * ip / (np - 1);
            t.set(r, cq, q);
            t.set(r, cp, pp);
            t.set(r, ch, classical::effective_surface(p, q, pp));
        }
    }
    return t;
}

}  // namespace sweep
}  // namespace tpdicke
