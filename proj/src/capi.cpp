// capi.cpp — extern-C surface of the shared library. Exceptions from the C++
// core map to status codes; the message lands in a thread-local buffer.

#include "tpdicke/tpdicke.h"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "tpdicke/classical.hpp"
#include "tpdicke/eigensolve.hpp"
#include "tpdicke/hamiltonian.hpp"
#include "tpdicke/meanfield.hpp"
#include "tpdicke/model.hpp"
#include "tpdicke/sweep.hpp"
#include "tpdicke/table.hpp"
#include "tpdicke/verify.hpp"
#include "tpdicke/version.hpp"

using tpdicke::ModelParams;
using tpdicke::NumericalControls;

struct tpd_table {
    tpdicke::Table table;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

ModelParams to_params(const tpd_params* p) {
    ModelParams mp;
    mp.omega = p->omega;
    mp.omega0 = p->omega0;
    mp.gamma = p->gamma;
    mp.two_j = p->two_j;
    return mp;
}

NumericalControls to_controls(const tpd_controls* c) {
    NumericalControls ctrl;
    if (c) {
        ctrl.n_max = c->n_max;
        ctrl.n_cap = c->n_cap;
        ctrl.tol_abs = c->tol_abs;
        ctrl.tol_rel = c->tol_rel;
        ctrl.eig_tol = c->eig_tol;
    }
    return ctrl;
}

tpd_status translate_exception() {
    try {
        throw;
    } catch (const tpdicke::UnphysicalError& e) {
        set_error(e.what());
        return TPD_EUNPHYSICAL;
    } catch (const tpdicke::ResourceError& e) {
        set_error(e.what());
        return TPD_ERESOURCE;
    } catch (const tpdicke::NoConvergenceError& e) {
        set_error(e.what());
        return TPD_ENOCONV;
    } catch (const nlohmann::json::exception& e) {
        set_error(e.what());
        return TPD_EINVAL;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return TPD_EINVAL;
    } catch (const std::domain_error& e) {
        set_error(e.what());
        return TPD_EDOMAIN;
    } catch (const std::bad_alloc&) {
        set_error("out of memory");
        return TPD_ERESOURCE;
    } catch (const std::exception& e) {
        set_error(e.what());
        return TPD_EINTERNAL;
    } catch (...) {
        set_error("unknown error");
        return TPD_EINTERNAL;
    }
}

template <typename Fn>
tpd_status guarded(Fn&& fn) {
    try {
        fn();
        return TPD_OK;
    } catch (...) {
        return translate_exception();
    }
}

void fill_point(const tpdicke::classical::ClassicalPoint& src, tpd_stationary_point* dst) {
    dst->q = {src.q.real(), src.q.imag()};
    dst->p = {src.p.real(), src.p.imag()};
    dst->Q = {src.Q.real(), src.Q.imag()};
    dst->P = {src.P.real(), src.P.imag()};
    dst->status = static_cast<int>(src.status);
}

}  // namespace

extern "C" {

const char* tpd_version(void) { return TPDICKE_VERSION; }

const char* tpd_status_str(tpd_status s) {
    switch (s) {
        case TPD_OK: return "ok";
        case TPD_EINVAL: return "invalid argument";
        case TPD_EDOMAIN: return "domain error";
        case TPD_EUNPHYSICAL: return "unphysical branch";
        case TPD_ESINGULAR: return "singular evaluation";
        case TPD_ENOCONV: return "no convergence";
        case TPD_ERESOURCE: return "resource budget exceeded";
        case TPD_EIO: return "i/o error";
        case TPD_EINTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* tpd_last_error(void) { return g_last_error.c_str(); }

tpd_controls tpd_controls_default(void) {
    const NumericalControls c;
    return {c.n_max, c.n_cap, c.tol_abs, c.tol_rel, c.eig_tol};
}

tpd_status tpd_validate_params(const tpd_params* p) {
    if (!p) {
        set_error("null params");
        return TPD_EINVAL;
    }
    return guarded([&] { to_params(p).validate(); });
}

double tpd_critical_coupling(const tpd_params* p) {
    return tpdicke::critical_coupling(to_params(p));
}

double tpd_collapse_coupling(const tpd_params* p) {
    return tpdicke::collapse_coupling(to_params(p));
}

tpd_phase tpd_classify_phase(const tpd_params* p) {
    return static_cast<tpd_phase>(tpdicke::classify_phase(to_params(p)));
}

int tpd_parity_label(int n, int two_m, int two_j) {
    return static_cast<int>(tpdicke::parity_label(n, two_m, two_j));
}

const char* tpd_sector_str(tpd_sector s) {
    return tpdicke::sector_name(static_cast<tpdicke::ParitySector>(s));
}

const char* tpd_phase_str(tpd_phase ph) {
    return tpdicke::phase_name(static_cast<tpdicke::Phase>(ph));
}

tpd_status tpd_meanfield_observables(const tpd_params* p, tpd_meanfield_obs* out) {
    if (!p || !out) {
        set_error("null argument");
        return TPD_EINVAL;
    }
    return guarded([&] {
        const auto obs = tpdicke::meanfield::observables(to_params(p));
        out->e0 = obs.e0;
        out->photon_number = obs.photon_number;
        out->jz_over_j = obs.jz_over_j;
        out->phase = static_cast<tpd_phase>(obs.phase);
    });
}

tpd_status tpd_hp_energy(const tpd_params* p, double b, double* out) {
    if (!p || !out) {
        set_error("null argument");
        return TPD_EINVAL;
    }
    return guarded([&] { *out = tpdicke::meanfield::hp_energy(b, to_params(p)); });
}

tpd_status tpd_hp_minimize(const tpd_params* p, double* b0, double* r_b, double* energy) {
    if (!p) {
        set_error("null argument");
        return TPD_EINVAL;
    }
    return guarded([&] {
        const auto st = tpdicke::meanfield::hp_minimize(to_params(p));
        if (b0) *b0 = st.b;
        if (r_b) *r_b = st.r_b;
        if (energy) *energy = st.energy;
    });
}

tpd_status tpd_ground_state(const tpd_params* p, const tpd_controls* ctrl,
                            tpd_ground_state_result* out) {
    if (!p || !out) {
        set_error("null argument");
        return TPD_EINVAL;
    }
    return guarded([&] {
        const auto g = tpdicke::ground_state(to_params(p), to_controls(ctrl));
        out->energy = g.energy;
        out->photon_number = g.photon_number;
        out->jz_over_j = g.jz_over_j;
        out->residual = g.residual;
        out->sector_gap = g.sector_gap;
        out->seed = g.seed;
        out->n_max_used = g.n_max_used;
        out->converged = g.converged ? 1 : 0;
        out->sector = static_cast<int>(g.sector);
        out->phase = static_cast<int>(g.phase);
    });
}

tpd_status tpd_dump_hamiltonian(const tpd_params* p, int n_max, const char* path) {
    if (!p || !path) {
        set_error("null argument");
        return TPD_EINVAL;
    }
    return guarded([&] {
        const auto m = tpdicke::build_full(to_params(p), n_max);
        tpdicke::write_coordinate_file(m, path);
    });
}

tpd_status tpd_stationary_squeezed(const tpd_params* p, tpd_stationary_point out[3]) {
    if (!p || !out) {
        set_error("null argument");
        return TPD_EINVAL;
    }
    return guarded([&] {
        const auto set = tpdicke::classical::stationary_squeezed(to_params(p));
        fill_point(set.origin, &out[0]);
        fill_point(set.plus, &out[1]);
        fill_point(set.minus, &out[2]);
    });
}

tpd_status tpd_stationary_coherent(const tpd_params* p, tpd_stationary_point out[3]) {
    if (!p || !out) {
        set_error("null argument");
        return TPD_EINVAL;
    }
    return guarded([&] {
        const auto set = tpdicke::classical::stationary_coherent(to_params(p));
        fill_point(set.origin, &out[0]);
        fill_point(set.plus, &out[1]);
        fill_point(set.minus, &out[2]);
    });
}

tpd_status tpd_h_squeezed(const tpd_params* p, double q, double pp, double Qa, double Pa,
                          double* out) {
    if (!p || !out) {
        set_error("null argument");
        return TPD_EINVAL;
    }
    return guarded(
        [&] { *out = tpdicke::classical::h_squeezed(to_params(p), q, pp, Qa, Pa); });
}

tpd_status tpd_h_coherent(const tpd_params* p, double q, double pp, double Qa, double Pa,
                          double* out) {
    if (!p || !out) {
        set_error("null argument");
        return TPD_EINVAL;
    }
    return guarded(
        [&] { *out = tpdicke::classical::h_coherent(to_params(p), q, pp, Qa, Pa); });
}

tpd_status tpd_effective_surface(const tpd_params* p, double q, double pp, double* out) {
    if (!p || !out) {
        set_error("null argument");
        return TPD_EINVAL;
    }
    return guarded(
        [&] { *out = tpdicke::classical::effective_surface(to_params(p), q, pp); });
}

tpd_status tpd_surface_boundedness(const tpd_params* p, int* unbounded,
                                   int* at_boundary) {
    if (!p || !unbounded) {
        set_error("null argument");
        return TPD_EINVAL;
    }
    return guarded([&] {
        const auto b = tpdicke::classical::surface_boundedness(to_params(p));
        *unbounded = b.unbounded ? 1 : 0;
        if (at_boundary) *at_boundary = b.at_boundary ? 1 : 0;
    });
}

tpd_status tpd_limit_distances(const tpd_params* p, const double* j_values, int count,
                               double* dist_plus, double* dist_minus) {
    if (!p || !j_values || count < 1 || !dist_plus) {
        set_error("null argument or empty j list");
        return TPD_EINVAL;
    }
    return guarded([&] {
        const std::vector<double> js(j_values, j_values + count);
        const auto rows = tpdicke::classical::limit_correspondence(to_params(p), js);
        for (int i = 0; i < count; ++i) {
            dist_plus[i] = rows[i].dist_plus;
            if (dist_minus) dist_minus[i] = rows[i].dist_minus;
        }
    });
}

tpd_status tpd_limit_table(const tpd_params* p, const double* j_values, int count,
                           tpd_table** out) {
    if (!p || !j_values || count < 1 || !out) {
        set_error("null argument or empty j list");
        return TPD_EINVAL;
    }
    return guarded([&] {
        const std::vector<double> js(j_values, j_values + count);
        *out = new tpd_table{tpdicke::sweep::limit_table(to_params(p), js)};
    });
}

tpd_status tpd_sweep_run(const char* spec_json, int n_workers, tpd_table** out) {
    if (!spec_json || !out) {
        set_error("null argument");
        return TPD_EINVAL;
    }
    return guarded([&] {
        const auto spec = tpdicke::sweep::GridSpec::from_json(spec_json);
        auto* handle = new tpd_table{tpdicke::sweep::run_sweep(spec, n_workers)};
        *out = handle;
    });
}

tpd_status tpd_surface_grid(const tpd_params* p, double q_min, double q_max, int nq,
                            double p_min, double p_max, int np, tpd_table** out) {
    if (!p || !out) {
        set_error("null argument");
        return TPD_EINVAL;
    }
    return guarded([&] {
        auto* handle = new tpd_table{
            tpdicke::sweep::surface_grid(to_params(p), q_min, q_max, nq, p_min, p_max, np)};
        *out = handle;
    });
}

int tpd_table_rows(const tpd_table* t) {
    return t ? static_cast<int>(t->table.rows()) : 0;
}

int tpd_table_cols(const tpd_table* t) {
    return t ? static_cast<int>(t->table.cols()) : 0;
}

const char* tpd_table_col_name(const tpd_table* t, int idx) {
    if (!t || idx < 0 || idx >= static_cast<int>(t->table.cols())) return nullptr;
    return t->table.column(idx).name.c_str();
}

int tpd_table_col_index(const tpd_table* t, const char* name) {
    if (!t || !name) return -1;
    return t->table.column_index(name);
}

tpd_status tpd_table_numeric_column(const tpd_table* t, const char* name, double* out,
                                    int capacity) {
    if (!t || !name || !out) {
        set_error("null argument");
        return TPD_EINVAL;
    }
    const int idx = t->table.column_index(name);
    if (idx < 0) {
        set_error(std::string("no such column: ") + name);
        return TPD_EINVAL;
    }
    const auto& col = t->table.column(idx);
    if (!col.numeric) {
        set_error(std::string("column is text: ") + name);
        return TPD_EINVAL;
    }
    if (capacity < static_cast<int>(t->table.rows())) {
        set_error("buffer too small");
        return TPD_EINVAL;
    }
    std::memcpy(out, col.num.data(), sizeof(double) * t->table.rows());
    return TPD_OK;
}

tpd_status tpd_table_cell_text(const tpd_table* t, int row, int col, char* buf,
                               int capacity) {
    if (!t || !buf || capacity < 1) {
        set_error("null argument");
        return TPD_EINVAL;
    }
    if (row < 0 || row >= static_cast<int>(t->table.rows()) || col < 0 ||
        col >= static_cast<int>(t->table.cols())) {
        set_error("index out of range");
        return TPD_EINVAL;
    }
    const auto& c = t->table.column(col);
    const std::string s =
        c.numeric ? tpdicke::format_double(c.num[row]) : c.text[row];
    std::strncpy(buf, s.c_str(), capacity - 1);
    buf[capacity - 1] = '\0';
    return TPD_OK;
}

tpd_status tpd_table_write_csv(const tpd_table* t, const char* path) {
    if (!t || !path) {
        set_error("null argument");
        return TPD_EINVAL;
    }
    return guarded([&] { t->table.write_csv(path); });
}

tpd_status tpd_table_write_json(const tpd_table* t, const char* path) {
    if (!t || !path) {
        set_error("null argument");
        return TPD_EINVAL;
    }
    return guarded([&] { t->table.write_json(path); });
}

const char* tpd_table_spec_echo(const tpd_table* t) {
    return t ? t->table.meta().spec_echo.c_str() : nullptr;
}

void tpd_table_free(tpd_table* t) { delete t; }

tpd_status tpd_superradiant_area(const tpd_params* base, double omega0_min,
                                 double omega0_max, int n_omega0, double gamma_min,
                                 double gamma_max, int n_gamma, int j_infinite,
                                 double* out) {
    if (!base || !out) {
        set_error("null argument");
        return TPD_EINVAL;
    }
    return guarded([&] {
        tpdicke::sweep::AxisSpec a0{"omega0", omega0_min, omega0_max, n_omega0, false};
        tpdicke::sweep::AxisSpec a1{"gamma", gamma_min, gamma_max, n_gamma, false};
        *out = tpdicke::sweep::superradiant_area(to_params(base), a0, a1,
                                                 j_infinite != 0);
    });
}

tpd_status tpd_run_verification(int* n_checks, int* n_failed, char** report) {
    return guarded([&] {
        const auto checks = tpdicke::verify::run_all();
        int failed = 0;
        std::string text;
        for (const auto& c : checks) {
            if (!c.passed) ++failed;
            text += (c.passed ? "[PASS] " : "[FAIL] ") + c.name + ": " + c.detail + "\n";
        }
        if (n_checks) *n_checks = static_cast<int>(checks.size());
        if (n_failed) *n_failed = failed;
        if (report) {
            char* buf = static_cast<char*>(std::malloc(text.size() + 1));
            if (!buf) throw std::bad_alloc();
            std::memcpy(buf, text.c_str(), text.size() + 1);
            *report = buf;
        }
    });
}

void tpd_string_free(char* s) { std::free(s); }

}  // extern "C"
