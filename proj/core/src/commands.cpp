#include "chiralqb/commands.hpp"

#include <atomic>
#include <cmath>
#include <ctime>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

#include "chiralqb/analytic.hpp"
#include "chiralqb/dynamics.hpp"
#include "chiralqb/errors.hpp"
#include "chiralqb/thermo.hpp"
#include "chiralqb/version.hpp"

namespace chiralqb {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string timestamp_utc() {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

std::vector<std::string> preamble(const std::string& command,
                                  const SystemParams& p) {
    return {std::string("chiralqb ") + kVersion, "command: " + command,
            "params: " + params_json(p), "generated: " + timestamp_utc()};
}

template <typename F>
void parallel_for(int n, int jobs, F&& body) {
    if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
    jobs = std::max(1, std::min(jobs, n));
    if (jobs == 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int j = 0; j < jobs; ++j) {
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

ParamsSpec spec_of(const SystemParams& p) {
    ParamsSpec raw;
    raw.omega0 = p.omega0;
    raw.gamma_R = p.gamma_R;
    raw.gamma_L = p.gamma_L;
    raw.kappa = p.kappa;
    raw.nbar = p.nbar;
    raw.drive_amp = p.drive_amp;
    raw.phase = p.phase;
    return raw;
}

SystemParams with_var(const SystemParams& base, const std::string& var,
                      double value) {
    ParamsSpec raw = spec_of(base);
    if (var == "D") {
        raw.gamma_L = rates_from_chirality(base.gamma_R, value).gamma_L;
    } else if (var == "phase") {
        raw.phase = value;
    } else if (var == "nbar") {
        raw.nbar = value;
    } else if (var == "drive_amp") {
        raw.drive_amp = value;
    } else {
        throw ValidationError("unknown sweep variable '" + var + "'");
    }
    return validate(raw);
}

SystemParams reciprocal_baseline(const SystemParams& p) {
    ParamsSpec raw = spec_of(p);
    raw.gamma_L = raw.gamma_R;  // D = 0 at the same phase and drive
    return validate(raw);
}

struct SteadyPoint {
    bool ok = false;
    Metrics m{};
    SteadyReport rep{};
};

SteadyPoint steady_point(const SystemParams& p) {
    SteadyPoint out;
    try {
        out.rep = steady_metrics(p);
        out.m = metrics_at(steady_moments(p), p);
        out.ok = true;
    } catch (const SteadyStateUndefined&) {
        out.ok = false;
    }
    return out;
}

double safe_ratio(double num, double den) {
    if (!std::isfinite(num) || !std::isfinite(den) || std::abs(den) < 1e-12) {
        return kNaN;
    }
    return num / den;
}

}  // namespace

ResultTable cmd_evolve(const RunConfig& cfg) {
    if (!cfg.evolve) throw ValidationError("evolve block missing from config");
    const EvolveConfig& e = *cfg.evolve;
    const Trajectory traj = evolve(cfg.params, e.t_end, e.n_samples,
                                   EvolveOptions{e.rtol, e.atol, {}});

    ResultTable t;
    t.preamble = preamble("evolve", cfg.params);
    t.columns = {"t",  "E_B", "E_C", "W",  "R",     "eta",
                 "C",  "n1",  "n2",  "abs_m1", "abs_m2"};
    t.rows.reserve(traj.times.size());
    for (size_t i = 0; i < traj.times.size(); ++i) {
        const MomentState& s = traj.states[i];
        const Metrics m = metrics_at(s, cfg.params);
        t.rows.push_back({traj.times[i], m.E_B, m.E_C, m.W, m.R, m.eta, m.C,
                          s.n1, s.n2, std::abs(s.m1), std::abs(s.m2)});
    }
    return t;
}

ResultTable cmd_steady(const RunConfig& cfg) {
    const SteadyReport rep = steady_metrics(cfg.params);
    const Metrics m = metrics_at(steady_moments(cfg.params), cfg.params);

    ResultTable t;
    t.preamble = preamble("steady", cfg.params);
    t.columns = {"E_B_ss",    "E_C_ss",    "W_ss",      "eta_ss",  "R_ss",
                 "C_ss",      "R1_ss",     "R2_ss",     "re_m1_ss", "im_m1_ss",
                 "re_m2_ss",  "im_m2_ss",  "re_zeta",   "im_zeta",  "xi"};
    t.rows.push_back({rep.E_B_ss, rep.E_C_ss, rep.W_ss, m.eta, m.R, m.C,
                      rep.R1_ss, rep.R2_ss, rep.m1_ss.real(), rep.m1_ss.imag(),
                      rep.m2_ss.real(), rep.m2_ss.imag(), rep.zeta.real(),
                      rep.zeta.imag(), rep.xi});
    return t;
}

ResultTable cmd_sweep(const RunConfig& cfg, int jobs) {
    if (!cfg.sweep) throw ValidationError("sweep block missing from config");
    const SweepRange& r1 = cfg.sweep->primary;
    const int n2 = cfg.sweep->secondary ? cfg.sweep->secondary->count : 1;
    const int total = r1.count * n2;

    ResultTable t;
    t.preamble = preamble("sweep", cfg.params);
    t.preamble.push_back("baseline: D=0 at the same phase");
    t.columns = {r1.var};
    if (cfg.sweep->secondary) t.columns.push_back(cfg.sweep->secondary->var);
    const std::vector<std::string> metric_cols = {
        "E_B_ss",  "E_C_ss",  "W_ss",    "eta_ss",  "R_ss",     "C_ss",
        "R1_ss",   "R2_ss",   "W_ratio", "E_ratio", "C_ratio",  "degenerate"};
    t.columns.insert(t.columns.end(), metric_cols.begin(), metric_cols.end());

    t.rows.assign(total, {});
    parallel_for(total, jobs, [&](int idx) {
        const int i = idx / n2;
        const int j = idx % n2;
        const double v1 =
            r1.start + (r1.stop - r1.start) * i / double(r1.count - 1);
        SystemParams p = with_var(cfg.params, r1.var, v1);
        std::vector<double> row = {v1};
        if (cfg.sweep->secondary) {
            const SweepRange& r2 = *cfg.sweep->secondary;
            const double v2 =
                r2.start + (r2.stop - r2.start) * j / double(r2.count - 1);
            p = with_var(p, r2.var, v2);
            row.push_back(v2);
        }
        const SteadyPoint sp = steady_point(p);
        const SteadyPoint base = steady_point(reciprocal_baseline(p));
        if (sp.ok) {
            row.insert(row.end(),
                       {sp.m.E_B, sp.m.E_C, sp.m.W, sp.m.eta, sp.m.R, sp.m.C,
                        sp.rep.R1_ss, sp.rep.R2_ss});
            if (base.ok) {
                row.push_back(safe_ratio(sp.m.W, base.m.W));
                row.push_back(safe_ratio(sp.m.E_B, base.m.E_B));
                row.push_back(safe_ratio(sp.m.C, base.m.C));
            } else {
                row.insert(row.end(), 3, kNaN);
            }
            row.push_back(0.0);
        } else {
            row.insert(row.end(), 11, kNaN);
            row.push_back(1.0);
        }
        t.rows[idx] = std::move(row);
    });
    return t;
}

namespace {

ResultTable figure_fig2(const RunConfig& cfg, int /*jobs*/) {
    const double t_end = cfg.evolve ? cfg.evolve->t_end : 32000.0;
    const int n_samples = cfg.evolve ? cfg.evolve->n_samples : 321;
    ResultTable t;
    t.preamble = preamble("figure fig2", cfg.params);
    t.columns = {"D", "t", "E_B", "E_C", "W", "R", "eta", "C"};
    for (double D : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const SystemParams p = with_var(cfg.params, "D", D);
        const Trajectory traj = evolve(p, t_end, n_samples);
        for (size_t i = 0; i < traj.times.size(); ++i) {
            const Metrics m = metrics_at(traj.states[i], p);
            t.rows.push_back({D, traj.times[i], m.E_B, m.E_C, m.W, m.R, m.eta,
                              m.C});
        }
    }
    return t;
}

ResultTable figure_fig3(const RunConfig& cfg, int jobs) {
    const int nD = 101, nPhase = 101;
    ResultTable t;
    t.preamble = preamble("figure fig3", cfg.params);
    t.columns = {"D",    "phase",   "eta_ss",  "W_ss",
                 "W_ratio", "C_ss", "C_ratio"};
    t.rows.assign(nD * nPhase, {});
    parallel_for(nD * nPhase, jobs, [&](int idx) {
        const int i = idx / nPhase;
        const int j = idx % nPhase;
        const double D = i / double(nD - 1);
        const double phase = M_PI * j / double(nPhase - 1);
        SystemParams p = with_var(cfg.params, "D", D);
        p = with_var(p, "phase", phase);
        const SteadyPoint sp = steady_point(p);
        const SteadyPoint base = steady_point(reciprocal_baseline(p));
        std::vector<double> row = {D, phase};
        if (sp.ok) {
            row.insert(row.end(), {sp.m.eta, sp.m.W,
                                   base.ok ? safe_ratio(sp.m.W, base.m.W) : kNaN,
                                   sp.m.C,
                                   base.ok ? safe_ratio(sp.m.C, base.m.C) : kNaN});
        } else {
            row.insert(row.end(), 5, kNaN);
        }
        t.rows[idx] = std::move(row);
    });
    return t;
}

ResultTable figure_fig4(const RunConfig& cfg, int jobs) {
    const int nPhase = 201;
    const std::vector<double>& nbars = cfg.figure.nbars;
    ResultTable t;
    t.preamble = preamble("figure fig4", cfg.params);
    t.columns = {"nbar", "phase", "E_ratio", "R_ss_D1"};
    const int total = static_cast<int>(nbars.size()) * nPhase;
    t.rows.assign(total, {});
    parallel_for(total, jobs, [&](int idx) {
        const int i = idx / nPhase;
        const int j = idx % nPhase;
        const double phase = 2.0 * M_PI * j / double(nPhase - 1);
        SystemParams p = with_var(cfg.params, "nbar", nbars[i]);
        p = with_var(p, "phase", phase);
        const SteadyPoint chiral = steady_point(with_var(p, "D", 1.0));
        const SteadyPoint base = steady_point(with_var(p, "D", 0.0));
        t.rows[idx] = {nbars[i], phase,
                       (chiral.ok && base.ok)
                           ? safe_ratio(chiral.m.E_B, base.m.E_B)
                           : kNaN,
                       chiral.ok ? chiral.m.R : kNaN};
    });
    return t;
}

ResultTable figure_figS1(const RunConfig& cfg, int jobs) {
    std::vector<double> omegas = cfg.figure.omegas;
    if (omegas.empty()) omegas = {1e-3, 36.0 / 16200.0, 1e-2, 5e-2};
    const int nPhase = 161;
    const int nLog = 50;

    struct Point {
        double omega, phase;
    };
    std::vector<Point> grid;
    for (double om : omegas) {
        for (int j = 0; j < nPhase; ++j) {
            grid.push_back({om, 2.0 * M_PI * j / double(nPhase - 1)});
        }
    }
    for (int k = 0; k < nLog; ++k) {
        const double om =
            std::pow(10.0, -4.0 + 3.0 * k / double(nLog - 1));  // 1e-4..1e-1
        grid.push_back({om, 0.5 * M_PI});
    }

    ResultTable t;
    t.preamble = preamble("figure figS1", cfg.params);
    t.columns = {"omega", "phase", "E_ratio", "W_ratio"};
    t.rows.assign(grid.size(), {});
    parallel_for(static_cast<int>(grid.size()), jobs, [&](int idx) {
        SystemParams p = with_var(cfg.params, "drive_amp", grid[idx].omega);
        p = with_var(p, "phase", grid[idx].phase);
        const SteadyPoint chiral = steady_point(with_var(p, "D", 1.0));
        const SteadyPoint base = steady_point(with_var(p, "D", 0.0));
        const bool ok = chiral.ok && base.ok;
        t.rows[idx] = {grid[idx].omega, grid[idx].phase,
                       ok ? safe_ratio(chiral.m.E_B, base.m.E_B) : kNaN,
                       ok ? safe_ratio(chiral.m.W, base.m.W) : kNaN};
    });
    return t;
}

}  // namespace

ResultTable cmd_figure(const std::string& name, const RunConfig& cfg,
                       int jobs) {
    if (name == "fig2") return figure_fig2(cfg, jobs);
    if (name == "fig3") return figure_fig3(cfg, jobs);
    if (name == "fig4") return figure_fig4(cfg, jobs);
    if (name == "figS1") return figure_figS1(cfg, jobs);
    throw ValidationError("unknown figure '" + name +
                          "'; expected fig2, fig3, fig4 or figS1");
}

}  // namespace chiralqb
