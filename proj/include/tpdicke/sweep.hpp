// sweep.hpp — parallel parameter-sweep engine: phase diagrams, fixed-coupling
// slices, the j->infinity reference, superradiant-area measurements, and
// bosonic surface grids. Grid points are independent work items; output order
// is the row-major grid order regardless of the execution schedule.

#pragma once

#include <string>
#include <vector>

#include "tpdicke/eigensolve.hpp"
#include "tpdicke/model.hpp"
#include "tpdicke/table.hpp"

namespace tpdicke {
namespace sweep {

struct AxisSpec {
    std::string param;  // "omega0", "gamma" or "omega"
    double min{0.0};
    double max{1.0};
    int count{2};     // >= 2
    bool log{false};  // geometric spacing, requires min > 0

    double value_at(int i) const;
};

enum class SweepMode { Analytic, Numeric, Both };

struct GridSpec {
    ModelParams model;           // fixed parameters; axis parameters override per point
    std::vector<AxisSpec> axes;  // 1 or 2 axes
    std::vector<double> j_list;  // optional multi-size panels (j values, half-integers ok)
    bool j_infinite{false};      // append the analytic-limit block (NP everywhere)
    SweepMode mode{SweepMode::Analytic};
    NumericalControls controls;
    bool allow_collapse_numeric{false};

    void validate() const;
    std::string to_json() const;  // canonical (sorted keys, defaults filled)
    static GridSpec from_json(const std::string& text);
};

// One row per grid point, deterministic order (j blocks outer, axis 0, axis 1);
// numeric failures are recorded per row and never abort the sweep.
Table run_sweep(const GridSpec& spec, int n_workers = 0);

// Fraction of grid points classified Superradiant on a rectangular
// (omega0, gamma) window. The j_infinite flag yields exactly 0.
double superradiant_area(const ModelParams& base, const AxisSpec& omega0_axis,
                         const AxisSpec& gamma_axis, bool j_infinite = false);

// Rectangular (q, p) grid of the effective bosonic surface; columns q, p, h.
Table surface_grid(const ModelParams& p, double q_min, double q_max, int nq,
                   double p_min, double p_max, int np);

// Distance table of the thermodynamic-limit correspondence (columns j,
// dist_plus, dist_minus).
Table limit_table(const ModelParams& p, const std::vector<double>& j_list);

// Requested worker count clamped by hardware and the TPD_MAX_WORKERS env var;
// 0 means "auto".
int resolve_workers(int requested);

}  // namespace sweep
}  // namespace tpdicke
