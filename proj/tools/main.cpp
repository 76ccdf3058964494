// tpdicke CLI: ground-state, phase-diagram, slice, surface, stationary, limit
// and verify subcommands over the shared-library C API.
//
// Exit codes: 0 ok, 2 usage/validation, 3 numerical non-convergence,
// 4 internal/invariant failure.

#include <tpdicke/tpdicke.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "svg.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNoConv = 3;
constexpr int kExitInternal = 4;

int exit_code_for(tpd_status s) {
    switch (s) {
        case TPD_OK: return kExitOk;
        case TPD_EINVAL:
        case TPD_EDOMAIN:
        case TPD_EUNPHYSICAL:
        case TPD_ESINGULAR: return kExitUsage;
        case TPD_ENOCONV: return kExitNoConv;
        default: return kExitInternal;
    }
}

int report_error(tpd_status s, const std::string& context) {
    std::cerr << "error: " << context << ": " << tpd_status_str(s) << " ("
              << tpd_last_error() << ")\n";
    return exit_code_for(s);
}

void write_atomic(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    fs::path tmp(path);
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp.string());
        f << contents;
    }
    fs::rename(tmp, path);
}

bool check_writable(const std::string& path) {
    namespace fs = std::filesystem;
    fs::path probe(path);
    probe += ".probe";
    std::ofstream f(probe, std::ios::binary | std::ios::trunc);
    if (!f) return false;
    f.close();
    std::error_code ec;
    fs::remove(probe, ec);
    return true;
}

int two_j_from(double j) {
    const double two_j = 2.0 * j;
    const double r = std::round(two_j);
    if (!(j > 0.0) || std::abs(two_j - r) > 1e-9)
        throw CLI::ValidationError("--j", "j must be a positive half-integer");
    return static_cast<int>(r);
}

std::pair<double, double> parse_range(const std::string& s, const std::string& flag) {
    const auto pos = s.find(':');
    if (pos == std::string::npos)
        throw CLI::ValidationError(flag, "expected <min>:<max>");
    return {std::stod(s.substr(0, pos)), std::stod(s.substr(pos + 1))};
}

std::pair<int, int> parse_grid(const std::string& s, const std::string& flag) {
    const auto pos = s.find('x');
    if (pos == std::string::npos)
        throw CLI::ValidationError(flag, "expected <nx>x<ny>");
    return {std::stoi(s.substr(0, pos)), std::stoi(s.substr(pos + 1))};
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start < s.size()) {
        auto pos = s.find(',', start);
        if (pos == std::string::npos) pos = s.size();
        out.push_back(std::stod(s.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

// Shared model/controls/config option block. Config file values fill in flags
// the user did not pass; explicit flags always win.
struct CommonOpts {
    double omega{1.0}, omega0{0.0}, gamma{0.0}, j{0.5};
    tpd_controls controls = tpd_controls_default();
    std::string config_path;
    json config;

    CLI::Option *o_omega{}, *o_omega0{}, *o_gamma{}, *o_j{};
    CLI::Option *o_nmax{}, *o_ncap{}, *o_tabs{}, *o_trel{}, *o_etol{};

    void add_model(CLI::App* cmd, bool with_j = true) {
        o_omega = cmd->add_option("--omega", omega, "field frequency (energy units)");
        o_omega0 = cmd->add_option("--omega0", omega0, "atomic frequency");
        o_gamma = cmd->add_option("--gamma", gamma, "atom-field coupling");
        if (with_j)
            o_j = cmd->add_option("--j", j, "collective spin j = N/2 (half-integers ok)");
        cmd->add_option("--config", config_path, "JSON config file (flags win)");
    }
    void add_controls(CLI::App* cmd) {
        o_nmax = cmd->add_option("--n-max", controls.n_max, "initial Fock cutoff");
        o_ncap = cmd->add_option("--n-cap", controls.n_cap, "maximum Fock cutoff");
        o_tabs = cmd->add_option("--tol-abs", controls.tol_abs, "absolute energy tolerance");
        o_trel = cmd->add_option("--tol-rel", controls.tol_rel, "relative energy tolerance");
        o_etol = cmd->add_option("--eig-tol", controls.eig_tol, "eigensolver residual tolerance");
    }
    void load_config() {
        if (config_path.empty()) return;
        std::ifstream f(config_path);
        if (!f) throw CLI::ValidationError("--config", "cannot read " + config_path);
        f >> config;
        auto fill = [&](CLI::Option* opt, const char* section, const char* key, auto& value) {
            if (opt && !opt->count() && config.contains(section) &&
                config[section].contains(key))
                value = config[section][key].template get<std::decay_t<decltype(value)>>();
        };
        fill(o_omega, "model", "omega", omega);
        fill(o_omega0, "model", "omega0", omega0);
        fill(o_gamma, "model", "gamma", gamma);
        fill(o_j, "model", "j", j);
        fill(o_nmax, "controls", "n_max", controls.n_max);
        fill(o_ncap, "controls", "n_cap", controls.n_cap);
        fill(o_tabs, "controls", "tol_abs", controls.tol_abs);
        fill(o_trel, "controls", "tol_rel", controls.tol_rel);
        fill(o_etol, "controls", "eig_tol", controls.eig_tol);
    }
    tpd_params params() const { return {omega, omega0, gamma, two_j_from(j)}; }
};

struct OutputOpts {
    std::string path;
    std::string format{"csv"};
    std::string plot_path;
    std::string plot_column;
    bool log_color{false};
    int workers{0};

    void add(CLI::App* cmd, const std::string& default_path,
             const std::string& default_column) {
        path = default_path;
        plot_column = default_column;
        cmd->add_option("--output", path, "output table path");
        cmd->add_option("--format", format, "table format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--plot", plot_path, "optional SVG plot path");
        cmd->add_option("--plot-column", plot_column, "column rendered in the plot");
        cmd->add_flag("--log-color", log_color, "logarithmic color scale");
        cmd->add_option("--workers", workers, "worker threads (0 = auto)");
    }
};

int write_table(tpd_table* t, const OutputOpts& out) {
    const tpd_status s = out.format == "json" ? tpd_table_write_json(t, out.path.c_str())
                                              : tpd_table_write_csv(t, out.path.c_str());
    if (s != TPD_OK) return report_error(s, "writing " + out.path);
    std::cout << "wrote " << out.path << " (" << tpd_table_rows(t) << " rows)\n";
    return kExitOk;
}

std::vector<double> fetch_column(tpd_table* t, const std::string& name) {
    const int n = tpd_table_rows(t);
    std::vector<double> v(static_cast<std::size_t>(n));
    const tpd_status s = tpd_table_numeric_column(t, name.c_str(), v.data(), n);
    if (s != TPD_OK)
        throw std::runtime_error("column " + name + ": " + tpd_last_error());
    return v;
}

int emit_heatmap(tpd_table* t, const OutputOpts& out, const std::string& x_col,
                 const std::string& y_col, const std::string& title) {
    tpdsvg::HeatmapData hd;
    hd.x = fetch_column(t, x_col);
    hd.y = fetch_column(t, y_col);
    hd.value = fetch_column(t, out.plot_column);
    hd.title = title;
    hd.x_label = x_col;
    hd.y_label = y_col;
    hd.value_label = out.plot_column;
    hd.log_color = out.log_color;
    write_atomic(out.plot_path, tpdsvg::render_heatmap(hd));
    std::cout << "wrote " << out.plot_path << "\n";
    return kExitOk;
}

std::string fmt_complex(const tpd_complex& c) {
    char buf[64];
    if (c.im == 0.0)
        std::snprintf(buf, sizeof(buf), "%.9g", c.re);
    else
        std::snprintf(buf, sizeof(buf), "%.9g%+.9gi", c.re, c.im);
    return buf;
}

json point_json(const tpd_stationary_point& pt) {
    auto c = [](const tpd_complex& z) { return json{{"re", z.re}, {"im", z.im}}; };
    const char* status = pt.status == 0 ? "real" : (pt.status == 1 ? "complex" : "n/a");
    return json{{"q", c(pt.q)}, {"p", c(pt.p)}, {"Q", c(pt.Q)}, {"P", c(pt.P)},
                {"status", status}};
}

void print_points(const char* family, const char* names[3],
                  const tpd_stationary_point pts[3]) {
    std::cout << family << "\n";
    for (int i = 0; i < 3; ++i) {
        const auto& pt = pts[i];
        const char* status = pt.status == 0 ? "real" : (pt.status == 1 ? "complex" : "n/a");
        std::cout << "  " << names[i] << ": q=" << fmt_complex(pt.q)
                  << "  p=" << fmt_complex(pt.p) << "  Q=" << fmt_complex(pt.Q)
                  << "  P=" << fmt_complex(pt.P) << "  [" << status << "]\n";
    }
}

// ---------------------------------------------------------------------------

int run_ground_state(const CommonOpts& common, const std::string& json_path,
                     const std::string& dump_path, int dump_nmax) {
    const tpd_params p = common.params();
    tpd_status s = tpd_validate_params(&p);
    if (s != TPD_OK) return report_error(s, "parameters");
    if (!json_path.empty() && !check_writable(json_path)) {
        std::cerr << "error: cannot write " << json_path << "\n";
        return kExitUsage;
    }

    if (!dump_path.empty()) {
        s = tpd_dump_hamiltonian(&p, dump_nmax, dump_path.c_str());
        if (s != TPD_OK) return report_error(s, "matrix dump");
        std::cout << "wrote " << dump_path << "\n";
    }

    const tpd_phase phase = tpd_classify_phase(&p);
    const double gc = tpd_critical_coupling(&p);
    const double gsc = tpd_collapse_coupling(&p);

    tpd_meanfield_obs mf{};
    const tpd_status mf_status = tpd_meanfield_observables(&p, &mf);

    tpd_ground_state_result g{};
    s = tpd_ground_state(&p, &common.controls, &g);
    if (s != TPD_OK) return report_error(s, "ground state");

    const double jv = 0.5 * p.two_j;
    std::printf("two-photon Dicke ground state  (omega=%g, omega0=%g, gamma=%g, j=%g)\n",
                p.omega, p.omega0, p.gamma, jv);
    std::printf("phase: %s   gamma_c: %.9g   gamma_sc: %.9g\n\n", tpd_phase_str(phase),
                gc, gsc);
    std::printf("  %-18s %18s %24s\n", "", "numeric", "analytic (mean field)");
    auto row = [&](const char* label, double num, bool have_mf, double mfv) {
        if (have_mf)
            std::printf("  %-18s %18.12g %24.12g\n", label, num, mfv);
        else
            std::printf("  %-18s %18.12g %24s\n", label, num, "n/a");
    };
    const bool have_mf = mf_status == TPD_OK;
    row("E0", g.energy, have_mf, mf.e0);
    row("<a^+a>", g.photon_number, have_mf, mf.photon_number);
    row("<Jz>/j", g.jz_over_j, have_mf, mf.jz_over_j);
    row("E0 + j|omega0|", g.energy + jv * std::abs(p.omega0), have_mf,
        mf.e0 + jv * std::abs(p.omega0));
    std::printf(
        "\nnumeric: sector %s, n_max %d, converged %s, residual %.3g, sector gap %.3g, "
        "seed %llu\n",
        tpd_sector_str(static_cast<tpd_sector>(g.sector)), g.n_max_used,
        g.converged ? "yes" : "no", g.residual, g.sector_gap,
        static_cast<unsigned long long>(g.seed));
    if (phase == TPD_PHASE_COLLAPSE)
        std::cout << "warning: collapse regime (gamma >= omega/2); spectrum unbounded "
                     "below without truncation, result computed at fixed cutoff\n";

    if (!json_path.empty()) {
        json doc;
        doc["params"] = {{"omega", p.omega}, {"omega0", p.omega0}, {"gamma", p.gamma},
                         {"j", jv}};
        doc["phase"] = tpd_phase_str(phase);
        doc["gamma_c"] = gc;
        doc["gamma_sc"] = gsc;
        doc["numeric"] = {{"e0", g.energy},
                          {"photon_number", g.photon_number},
                          {"jz_over_j", g.jz_over_j},
                          {"n_max_used", g.n_max_used},
                          {"converged", g.converged != 0},
                          {"sector", tpd_sector_str(static_cast<tpd_sector>(g.sector))},
                          {"sector_gap", g.sector_gap},
                          {"residual", g.residual},
                          {"seed", g.seed}};
        doc["analytic"] = have_mf ? json{{"e0", mf.e0},
                                         {"photon_number", mf.photon_number},
                                         {"jz_over_j", mf.jz_over_j}}
                                  : json(nullptr);
        write_atomic(json_path, doc.dump(1) + "\n");
        std::cout << "wrote " << json_path << "\n";
    }
    return g.converged ? kExitOk : kExitNoConv;
}

// Precedence: explicit flags > config "grid" section > built-in defaults.
struct GridFlags {
    bool axes_given{}, j_given{}, jmax_given{}, mode_given{}, collapse_given{};
    std::vector<json> axes;
    std::vector<double> j_list;
    bool j_infinite{};
    std::string mode{"analytic"};
    bool allow_collapse_numeric{};
};

json build_grid_spec(const CommonOpts& common, const GridFlags& flags) {
    json spec = common.config.contains("grid") ? common.config["grid"] : json::object();
    if (!spec.contains("model") || !spec["model"].is_object())
        spec["model"] = json::object();
    auto& model = spec["model"];
    auto set_model = [&](CLI::Option* opt, const char* key, double v) {
        if ((opt && opt->count()) || !model.contains(key)) model[key] = v;
    };
    set_model(common.o_omega, "omega", common.omega);
    set_model(common.o_omega0, "omega0", common.omega0);
    set_model(common.o_gamma, "gamma", common.gamma);
    if ((common.o_j && common.o_j->count()) ||
        (!model.contains("two_j") && !model.contains("j")))
        model["two_j"] = two_j_from(common.j);
    if (flags.axes_given || !spec.contains("axes")) spec["axes"] = flags.axes;
    if (flags.j_given || flags.jmax_given || !spec.contains("j_list"))
        spec["j_list"] = flags.j_list;
    if (flags.jmax_given || !spec.contains("j_infinite"))
        spec["j_infinite"] = flags.j_infinite;
    if (flags.mode_given || !spec.contains("mode")) spec["mode"] = flags.mode;
    if (!spec.contains("controls") || !spec["controls"].is_object())
        spec["controls"] = json::object();
    auto& ctrl = spec["controls"];
    auto set_ctrl = [&](CLI::Option* opt, const char* key, auto v) {
        if ((opt && opt->count()) || !ctrl.contains(key)) ctrl[key] = v;
    };
    set_ctrl(common.o_nmax, "n_max", common.controls.n_max);
    set_ctrl(common.o_ncap, "n_cap", common.controls.n_cap);
    set_ctrl(common.o_tabs, "tol_abs", common.controls.tol_abs);
    set_ctrl(common.o_trel, "tol_rel", common.controls.tol_rel);
    set_ctrl(common.o_etol, "eig_tol", common.controls.eig_tol);
    if (flags.collapse_given || !spec.contains("allow_collapse_numeric"))
        spec["allow_collapse_numeric"] = flags.allow_collapse_numeric;
    return spec;
}

int run_sweep_command(const json& spec, const OutputOpts& out, const std::string& x_col,
                      const std::string& y_col, const std::string& title,
                      bool lines_by_j) {
    if (!check_writable(out.path)) {
        std::cerr << "error: cannot write " << out.path << "\n";
        return kExitUsage;
    }
    if (!out.plot_path.empty() && !check_writable(out.plot_path)) {
        std::cerr << "error: cannot write " << out.plot_path << "\n";
        return kExitUsage;
    }
    tpd_table* t = nullptr;
    const tpd_status s = tpd_sweep_run(spec.dump().c_str(), out.workers, &t);
    if (s != TPD_OK) return report_error(s, "sweep");
    int rc = write_table(t, out);
    if (rc == kExitOk && !out.plot_path.empty()) {
        try {
            if (lines_by_j) {
                const auto xs = fetch_column(t, x_col);
                const auto vs = fetch_column(t, out.plot_column);
                const auto js = fetch_column(t, "j");
                tpdsvg::LinePlotData ld;
                ld.title = title;
                ld.x_label = x_col;
                ld.y_label = out.plot_column;
                std::vector<double> seen;
                for (double jv : js)
                    if (std::find(seen.begin(), seen.end(), jv) == seen.end())
                        seen.push_back(jv);
                for (double jv : seen) {
                    tpdsvg::LineSeries series;
                    series.label =
                        std::isinf(jv) ? "j=inf" : ("j=" + std::to_string(jv).substr(0, 6));
                    for (std::size_t i = 0; i < js.size(); ++i)
                        if (js[i] == jv || (std::isinf(js[i]) && std::isinf(jv))) {
                            series.x.push_back(xs[i]);
                            series.y.push_back(vs[i]);
                        }
                    ld.series.push_back(std::move(series));
                }
                write_atomic(out.plot_path, tpdsvg::render_lines(ld));
                std::cout << "wrote " << out.plot_path << "\n";
            } else {
                rc = emit_heatmap(t, out, x_col, y_col, title);
            }
        } catch (const std::exception& e) {
            std::cerr << "error: plot: " << e.what() << "\n";
            rc = kExitInternal;
        }
    }
    tpd_table_free(t);
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-photon Dicke model: exact diagonalization, mean-field limits and "
                 "sweep engine"};
    app.require_subcommand(1);
    std::cout.setf(std::ios::unitbuf);

    int rc = kExitOk;

    // ---- ground-state ----
    auto* gs = app.add_subcommand("ground-state",
                                  "numeric ground state next to the mean-field values");
    CommonOpts gs_common;
    gs_common.add_model(gs);
    gs_common.add_controls(gs);
    std::string gs_json, gs_dump;
    int gs_dump_nmax = 16;
    gs->add_option("--json", gs_json, "write machine-readable result JSON");
    gs->add_option("--dump-matrix", gs_dump, "write the Hamiltonian in coordinate format");
    gs->add_option("--dump-nmax", gs_dump_nmax, "cutoff for --dump-matrix");
    gs->callback([&]() {
        gs_common.load_config();
        rc = run_ground_state(gs_common, gs_json, gs_dump, gs_dump_nmax);
    });

    // ---- phase-diagram ----
    auto* pd = app.add_subcommand("phase-diagram",
                                  "(omega0, gamma) phase diagram at fixed j");
    CommonOpts pd_common;
    pd_common.j = 10.0;
    pd_common.add_model(pd);
    pd_common.add_controls(pd);
    OutputOpts pd_out;
    pd_out.add(pd, "phase-diagram.csv", "excitation");
    std::string pd_grid, pd_w0range = "0:1", pd_grange = "0:0.5";
    std::string pd_mode = "analytic", pd_jmax = "off";
    bool pd_allow_collapse = false;
    pd->add_option("--grid", pd_grid, "grid size <n_omega0>x<n_gamma> (default 101x101 analytic, 41x41 numeric)");
    pd->add_option("--omega0-range", pd_w0range, "omega0 range <min>:<max>");
    pd->add_option("--gamma-range", pd_grange, "gamma range <min>:<max>");
    pd->add_option("--mode", pd_mode, "analytic, numeric or both")
        ->check(CLI::IsMember({"analytic", "numeric", "both"}));
    pd->add_option("--jmax-mode", pd_jmax, "thermodynamic-limit block: off, only or append")
        ->check(CLI::IsMember({"off", "only", "append"}));
    pd->add_flag("--allow-collapse-numeric", pd_allow_collapse,
                 "permit numeric rows at gamma >= omega/2");
    pd->callback([&]() {
        pd_common.load_config();
        const auto w0 = parse_range(pd_w0range, "--omega0-range");
        const auto ga = parse_range(pd_grange, "--gamma-range");
        const bool numeric = pd_mode != "analytic";
        std::pair<int, int> g =
            pd_grid.empty() ? std::pair<int, int>{numeric ? 41 : 101, numeric ? 41 : 101}
                            : parse_grid(pd_grid, "--grid");
        GridFlags flags;
        flags.axes = {
            {{"param", "omega0"}, {"min", w0.first}, {"max", w0.second}, {"count", g.first}},
            {{"param", "gamma"}, {"min", ga.first}, {"max", ga.second}, {"count", g.second}}};
        flags.axes_given = pd->count("--grid") || pd->count("--omega0-range") ||
                           pd->count("--gamma-range") || pd->count("--mode");
        if (pd_jmax != "only") flags.j_list.push_back(pd_common.j);
        flags.j_given = pd_common.o_j->count() > 0;
        flags.jmax_given = pd->count("--jmax-mode") > 0;
        flags.j_infinite = pd_jmax != "off";
        flags.mode = pd_mode;
        flags.mode_given = pd->count("--mode") > 0;
        flags.allow_collapse_numeric = pd_allow_collapse;
        flags.collapse_given = pd->count("--allow-collapse-numeric") > 0;
        const json spec = build_grid_spec(pd_common, flags);
        rc = run_sweep_command(spec, pd_out, "omega0", "gamma", "phase diagram", false);
    });

    // ---- slice ----
    auto* sl = app.add_subcommand("slice", "fixed-gamma slice over omega0 for several j");
    CommonOpts sl_common;
    sl_common.gamma = 0.45;
    sl_common.add_model(sl);
    sl_common.add_controls(sl);
    OutputOpts sl_out;
    sl_out.add(sl, "slice.csv", "excitation");
    std::string sl_range = "-0.1:0.1", sl_jlist = "20,40,100,200", sl_jmax = "append";
    std::string sl_mode = "analytic";
    int sl_points = 201;
    bool sl_allow_collapse = false;
    sl->add_option("--omega0-range", sl_range, "omega0 range <min>:<max>");
    sl->add_option("--points", sl_points, "number of omega0 samples");
    sl->add_option("--j-list", sl_jlist, "comma-separated j values");
    sl->add_option("--jmax-mode", sl_jmax, "off, only or append")
        ->check(CLI::IsMember({"off", "only", "append"}));
    sl->add_option("--mode", sl_mode, "analytic, numeric or both")
        ->check(CLI::IsMember({"analytic", "numeric", "both"}));
    sl->add_flag("--allow-collapse-numeric", sl_allow_collapse,
                 "permit numeric rows at gamma >= omega/2");
    sl->callback([&]() {
        sl_common.load_config();
        const auto w0 = parse_range(sl_range, "--omega0-range");
        GridFlags flags;
        flags.axes = {{{"param", "omega0"},
                       {"min", w0.first},
                       {"max", w0.second},
                       {"count", sl_points}}};
        flags.axes_given = sl->count("--omega0-range") || sl->count("--points");
        flags.j_list = sl_jmax == "only" ? std::vector<double>{} : parse_list(sl_jlist);
        flags.j_given = sl->count("--j-list") > 0;
        flags.jmax_given = sl->count("--jmax-mode") > 0;
        flags.j_infinite = sl_jmax != "off";
        flags.mode = sl_mode;
        flags.mode_given = sl->count("--mode") > 0;
        flags.allow_collapse_numeric = sl_allow_collapse;
        flags.collapse_given = sl->count("--allow-collapse-numeric") > 0;
        const json spec = build_grid_spec(sl_common, flags);
        rc = run_sweep_command(spec, sl_out, "omega0", "", "fixed-coupling slice", true);
    });

    // ---- surface ----
    auto* sf = app.add_subcommand("surface", "effective bosonic energy surface grid");
    CommonOpts sf_common;
    sf_common.omega0 = 2.0;
    sf_common.gamma = 0.4;
    sf_common.add_model(sf);
    OutputOpts sf_out;
    sf_out.add(sf, "surface.csv", "h");
    std::string sf_grid = "201x201", sf_qrange = "-6:6", sf_prange = "-6:6";
    sf->add_option("--grid", sf_grid, "grid size <nq>x<np>");
    sf->add_option("--q-range", sf_qrange, "q range <min>:<max>");
    sf->add_option("--p-range", sf_prange, "p range <min>:<max>");
    sf->callback([&]() {
        sf_common.load_config();
        const auto qr = parse_range(sf_qrange, "--q-range");
        const auto pr = parse_range(sf_prange, "--p-range");
        const auto g = parse_grid(sf_grid, "--grid");
        if (!check_writable(sf_out.path)) {
            std::cerr << "error: cannot write " << sf_out.path << "\n";
            rc = kExitUsage;
            return;
        }
        const tpd_params p = sf_common.params();
        tpd_table* t = nullptr;
        const tpd_status s = tpd_surface_grid(&p, qr.first, qr.second, g.first, pr.first,
                                              pr.second, g.second, &t);
        if (s != TPD_OK) {
            rc = report_error(s, "surface grid");
            return;
        }
        rc = write_table(t, sf_out);
        if (rc == kExitOk && !sf_out.plot_path.empty())
            rc = emit_heatmap(t, sf_out, "q", "p", "effective energy surface");
        tpd_table_free(t);
    });

    // ---- stationary ----
    auto* st = app.add_subcommand("stationary",
                                  "stationary points of both classical limits");
    CommonOpts st_common;
    st_common.omega0 = 0.02;
    st_common.gamma = 0.45;
    st_common.j = 10.0;
    st_common.add_model(st);
    std::string st_family = "both", st_json;
    st->add_option("--family", st_family, "squeezed, coherent or both")
        ->check(CLI::IsMember({"squeezed", "coherent", "both"}));
    st->add_option("--json", st_json, "write points as JSON");
    st->callback([&]() {
        st_common.load_config();
        const tpd_params p = st_common.params();
        json doc;
        tpd_stationary_point pts[3];
        if (st_family != "coherent") {
            const tpd_status s = tpd_stationary_squeezed(&p, pts);
            if (s != TPD_OK) {
                rc = report_error(s, "squeezed stationary points");
                return;
            }
            const char* names[3] = {"x0", "x+", "x-"};
            print_points("squeezed-vacuum stationary points:", names, pts);
            doc["squeezed"] = {point_json(pts[0]), point_json(pts[1]), point_json(pts[2])};
        }
        if (st_family != "squeezed") {
            const tpd_status s = tpd_stationary_coherent(&p, pts);
            if (s != TPD_OK) {
                rc = report_error(s, "coherent stationary points");
                return;
            }
            const char* names[3] = {"y0", "y+", "y-"};
            print_points("coherent-state stationary points:", names, pts);
            doc["coherent"] = {point_json(pts[0]), point_json(pts[1]), point_json(pts[2])};
        }
        if (!st_json.empty()) {
            write_atomic(st_json, doc.dump(1) + "\n");
            std::cout << "wrote " << st_json << "\n";
        }
    });

    // ---- limit ----
    auto* lm = app.add_subcommand(
        "limit", "distance of the squeezed stationary pair to its j->inf limit");
    CommonOpts lm_common;
    lm_common.omega0 = 2.0;
    lm_common.gamma = 0.4;
    lm_common.add_model(lm, /*with_j=*/false);
    OutputOpts lm_out;
    lm_out.add(lm, "limit.csv", "dist_plus");
    std::string lm_jlist = "10,100,1000,10000";
    lm->add_option("--j,--j-list", lm_jlist, "comma-separated ascending j values");
    lm->callback([&]() {
        lm_common.load_config();
        const auto js = parse_list(lm_jlist);
        const tpd_params p = lm_common.params();
        if (!check_writable(lm_out.path)) {
            std::cerr << "error: cannot write " << lm_out.path << "\n";
            rc = kExitUsage;
            return;
        }
        tpd_table* t = nullptr;
        tpd_status s = tpd_limit_table(&p, js.data(), static_cast<int>(js.size()), &t);
        if (s != TPD_OK) {
            rc = report_error(s, "limit correspondence");
            return;
        }
        std::printf("%12s %22s %22s\n", "j", "dist(x+, y+)", "dist(x-, y-)");
        const auto jv = fetch_column(t, "j");
        const auto dp = fetch_column(t, "dist_plus");
        const auto dm = fetch_column(t, "dist_minus");
        for (std::size_t i = 0; i < jv.size(); ++i)
            std::printf("%12g %22.15g %22.15g\n", jv[i], dp[i], dm[i]);
        rc = write_table(t, lm_out);
        tpd_table_free(t);
    });

    // ---- verify ----
    auto* vf = app.add_subcommand("verify", "run the built-in oracle cross-checks");
    std::string vf_config;
    vf->add_option("--config", vf_config, "accepted for uniformity; verify takes no parameters");
    vf->callback([&]() {
        int n_checks = 0, n_failed = 0;
        char* report = nullptr;
        const tpd_status s = tpd_run_verification(&n_checks, &n_failed, &report);
        if (s != TPD_OK) {
            rc = report_error(s, "verification");
            return;
        }
        std::cout << report;
        tpd_string_free(report);
        std::cout << n_checks - n_failed << "/" << n_checks << " checks passed\n";
        rc = n_failed == 0 ? kExitOk : kExitInternal;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return rc;
}
