/* tpdicke.h — C API of the two-photon Dicke model library.
 *
 * All functions return a tpd_status (TPD_OK on success) unless the result is
 * a plain scalar. On failure tpd_last_error() carries a thread-local message.
 * Tables are opaque handles; sweep specifications cross the boundary as JSON
 * strings using the same schema as the CLI --config grid section.
 */

#ifndef TPDICKE_H
#define TPDICKE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TPD_API __declspec(dllexport)
#else
#define TPD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tpd_status {
    TPD_OK = 0,
    TPD_EINVAL = 1,      /* invalid argument / spec validation */
    TPD_EDOMAIN = 2,     /* outside a function's mathematical domain */
    TPD_EUNPHYSICAL = 3, /* analytic branch radicand negative / collapse regime */
    TPD_ESINGULAR = 4,   /* singular evaluation point */
    TPD_ENOCONV = 5,     /* eigensolver failed to converge */
    TPD_ERESOURCE = 6,   /* resource budget exceeded */
    TPD_EIO = 7,         /* file I/O failure */
    TPD_EINTERNAL = 8
} tpd_status;

typedef enum tpd_phase {
    TPD_PHASE_NORMAL = 0,
    TPD_PHASE_SUPERRADIANT = 1,
    TPD_PHASE_COLLAPSE = 2,
    TPD_PHASE_UNPHYSICAL = 3
} tpd_phase;

/* Reporting order: +1, -1, +i, -i. */
typedef enum tpd_sector {
    TPD_SECTOR_P1 = 0,
    TPD_SECTOR_M1 = 1,
    TPD_SECTOR_PI = 2,
    TPD_SECTOR_MI = 3
} tpd_sector;

typedef struct tpd_params {
    double omega;  /* field frequency, > 0 */
    double omega0; /* atomic frequency, any sign */
    double gamma;  /* coupling, >= 0 */
    int two_j;     /* 2j >= 1 */
} tpd_params;

typedef struct tpd_controls {
    int n_max;      /* initial Fock cutoff, >= 4 */
    int n_cap;      /* hard maximum cutoff */
    double tol_abs; /* ground-energy convergence tolerances */
    double tol_rel;
    double eig_tol; /* eigensolver residual tolerance */
} tpd_controls;

TPD_API const char* tpd_version(void);
TPD_API const char* tpd_status_str(tpd_status s);
TPD_API const char* tpd_last_error(void);
TPD_API tpd_controls tpd_controls_default(void);

TPD_API tpd_status tpd_validate_params(const tpd_params* p);
TPD_API double tpd_critical_coupling(const tpd_params* p);
TPD_API double tpd_collapse_coupling(const tpd_params* p);
TPD_API tpd_phase tpd_classify_phase(const tpd_params* p);
TPD_API int tpd_parity_label(int n, int two_m, int two_j); /* tpd_sector value */
TPD_API const char* tpd_sector_str(tpd_sector s);
TPD_API const char* tpd_phase_str(tpd_phase ph);

/* ---- analytic mean-field layer ---- */

typedef struct tpd_meanfield_obs {
    double e0;
    double photon_number;
    double jz_over_j;
    tpd_phase phase;
} tpd_meanfield_obs;

TPD_API tpd_status tpd_meanfield_observables(const tpd_params* p, tpd_meanfield_obs* out);
TPD_API tpd_status tpd_hp_energy(const tpd_params* p, double b, double* out);
TPD_API tpd_status tpd_hp_minimize(const tpd_params* p, double* b0, double* r_b,
                                   double* energy);

/* ---- exact diagonalization ---- */

typedef struct tpd_ground_state_result {
    double energy;
    double photon_number;
    double jz_over_j;
    double residual;
    double sector_gap;
    uint64_t seed;
    int n_max_used;
    int converged; /* 0/1 */
    int sector;    /* tpd_sector value */
    int phase;     /* tpd_phase value */
} tpd_ground_state_result;

TPD_API tpd_status tpd_ground_state(const tpd_params* p, const tpd_controls* ctrl,
                                    tpd_ground_state_result* out);

/* Coordinate-format dump of the truncated Hamiltonian. */
TPD_API tpd_status tpd_dump_hamiltonian(const tpd_params* p, int n_max, const char* path);

/* ---- classical limits ---- */

typedef struct tpd_complex {
    double re, im;
} tpd_complex;

typedef struct tpd_stationary_point {
    tpd_complex q, p, Q, P;
    int status; /* 0 real, 1 complex, 2 not applicable */
} tpd_stationary_point;

/* out[0] = trivial point, out[1] = plus branch, out[2] = minus branch. */
TPD_API tpd_status tpd_stationary_squeezed(const tpd_params* p,
                                           tpd_stationary_point out[3]);
TPD_API tpd_status tpd_stationary_coherent(const tpd_params* p,
                                           tpd_stationary_point out[3]);

TPD_API tpd_status tpd_h_squeezed(const tpd_params* p, double q, double pp, double Qa,
                                  double Pa, double* out);
TPD_API tpd_status tpd_h_coherent(const tpd_params* p, double q, double pp, double Qa,
                                  double Pa, double* out);
TPD_API tpd_status tpd_effective_surface(const tpd_params* p, double q, double pp,
                                         double* out);
/* unbounded: 0/1; at_boundary: 1 when gamma == omega/2 exactly. */
TPD_API tpd_status tpd_surface_boundedness(const tpd_params* p, int* unbounded,
                                           int* at_boundary);

/* Distances ||x±(j) - y±|| for each j in j_values (ascending); fills
 * dist_plus[i] and dist_minus[i]. */
TPD_API tpd_status tpd_limit_distances(const tpd_params* p, const double* j_values,
                                       int count, double* dist_plus, double* dist_minus);

/* Same data as an owned table (columns j, dist_plus, dist_minus). */
TPD_API tpd_status tpd_limit_table(const tpd_params* p, const double* j_values, int count,
                                   struct tpd_table** out);

/* ---- sweeps and tables ---- */

typedef struct tpd_table tpd_table; /* opaque */

TPD_API tpd_status tpd_sweep_run(const char* spec_json, int n_workers, tpd_table** out);
TPD_API tpd_status tpd_surface_grid(const tpd_params* p, double q_min, double q_max,
                                    int nq, double p_min, double p_max, int np,
                                    tpd_table** out);

TPD_API int tpd_table_rows(const tpd_table* t);
TPD_API int tpd_table_cols(const tpd_table* t);
TPD_API const char* tpd_table_col_name(const tpd_table* t, int idx);
TPD_API int tpd_table_col_index(const tpd_table* t, const char* name); /* -1 if absent */
/* Copies a numeric column (text columns are rejected); capacity in doubles. */
TPD_API tpd_status tpd_table_numeric_column(const tpd_table* t, const char* name,
                                            double* out, int capacity);
TPD_API tpd_status tpd_table_cell_text(const tpd_table* t, int row, int col, char* buf,
                                       int capacity);
TPD_API tpd_status tpd_table_write_csv(const tpd_table* t, const char* path);
TPD_API tpd_status tpd_table_write_json(const tpd_table* t, const char* path);
TPD_API const char* tpd_table_spec_echo(const tpd_table* t);
TPD_API void tpd_table_free(tpd_table* t);

/* Fraction of an (omega0, gamma) window classified superradiant. */
TPD_API tpd_status tpd_superradiant_area(const tpd_params* base, double omega0_min,
                                         double omega0_max, int n_omega0,
                                         double gamma_min, double gamma_max, int n_gamma,
                                         int j_infinite, double* out);

/* ---- self-verification ---- */

/* Runs every built-in cross-check; *report receives a malloc'd text block
 * (one line per check) to be released with tpd_string_free. */
TPD_API tpd_status tpd_run_verification(int* n_checks, int* n_failed, char** report);
TPD_API void tpd_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* TPDICKE_H */
