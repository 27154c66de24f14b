#include "chiralqb/config.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "chiralqb/errors.hpp"

namespace chiralqb {

namespace {

using nlohmann::json;

double number_at(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) {
        throw ParseError("field '" + key + "' must be a number");
    }
    return j[key].get<double>();
}

int int_at(const json& j, const std::string& key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) {
        throw ParseError("field '" + key + "' must be an integer");
    }
    return j[key].get<int>();
}

void reject_unknown(const json& j, const std::set<std::string>& known,
                    const std::string& context) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!known.count(it.key())) {
            throw ParseError("unknown key '" + it.key() + "' in " + context);
        }
    }
}

SweepRange parse_range(const json& j, const std::string& suffix) {
    SweepRange r;
    const std::string var_key = "var" + suffix;
    if (!j.contains(var_key) || !j[var_key].is_string()) {
        throw ParseError("sweep." + var_key + " must be a string");
    }
    r.var = j[var_key].get<std::string>();
    static const std::set<std::string> kVars = {"D", "phase", "nbar",
                                                "drive_amp"};
    if (!kVars.count(r.var)) {
        throw ParseError("sweep variable '" + r.var +
                         "' is not one of D, phase, nbar, drive_amp");
    }
    r.start = number_at(j, "start" + suffix, 0.0);
    r.stop = number_at(j, "stop" + suffix, 0.0);
    r.count = int_at(j, "count" + suffix, 0);
    if (r.count < 2) {
        throw ParseError("sweep.count" + suffix + " must be >= 2");
    }
    return r;
}

RunConfig from_json(const json& j) {
    if (!j.is_object()) throw ParseError("config root must be an object");
    reject_unknown(j,
                   {"omega0", "gamma_R", "gamma_L", "D", "kappa", "nbar",
                    "temperature_ratio", "drive_amp", "phase", "evolve",
                    "sweep", "oracle", "figure"},
                   "config root");

    ParamsSpec raw;
    raw.omega0 = number_at(j, "omega0", 1.0);
    raw.gamma_R = number_at(j, "gamma_R", 0.0);
    raw.kappa = number_at(j, "kappa", 0.0);
    raw.drive_amp = number_at(j, "drive_amp", 0.0);
    raw.phase = number_at(j, "phase", 0.0);

    if (j.contains("gamma_L") && j.contains("D")) {
        throw ParseError("give either gamma_L or D, not both");
    }
    if (j.contains("D")) {
        raw.gamma_L = rates_from_chirality(raw.gamma_R,
                                           number_at(j, "D", 0.0))
                          .gamma_L;
    } else {
        raw.gamma_L = number_at(j, "gamma_L", 0.0);
    }

    if (j.contains("nbar") && j.contains("temperature_ratio")) {
        throw ParseError("give either nbar or temperature_ratio, not both");
    }
    if (j.contains("temperature_ratio")) {
        raw.nbar =
            nbar_from_temperature_ratio(number_at(j, "temperature_ratio", 0.0));
    } else {
        raw.nbar = number_at(j, "nbar", 0.0);
    }

    RunConfig cfg;
    cfg.params = validate(raw);

    if (j.contains("evolve")) {
        const json& e = j["evolve"];
        reject_unknown(e, {"t_end", "n_samples", "rtol", "atol"},
                       "evolve block");
        EvolveConfig ec;
        ec.t_end = number_at(e, "t_end", 0.0);
        ec.n_samples = int_at(e, "n_samples", 201);
        ec.rtol = number_at(e, "rtol", 1e-9);
        ec.atol = number_at(e, "atol", 1e-12);
        if (!(ec.t_end > 0.0)) throw ParseError("evolve.t_end must be > 0");
        if (ec.n_samples < 2) throw ParseError("evolve.n_samples must be >= 2");
        cfg.evolve = ec;
    }
    if (j.contains("sweep")) {
        const json& s = j["sweep"];
        reject_unknown(s,
                       {"var", "start", "stop", "count", "var2", "start2",
                        "stop2", "count2"},
                       "sweep block");
        SweepConfig sc;
        sc.primary = parse_range(s, "");
        if (s.contains("var2")) sc.secondary = parse_range(s, "2");
        cfg.sweep = sc;
    }
    if (j.contains("oracle")) {
        const json& o = j["oracle"];
        reject_unknown(o, {"cutoff", "omega_scale"}, "oracle block");
        cfg.oracle.cutoff = int_at(o, "cutoff", 6);
        cfg.oracle.omega_scale = number_at(o, "omega_scale", 0.05);
        if (cfg.oracle.cutoff < 1) throw ParseError("oracle.cutoff must be >= 1");
    }
    if (j.contains("figure")) {
        const json& f = j["figure"];
        reject_unknown(f, {"nbars", "omegas"}, "figure block");
        if (f.contains("nbars")) {
            cfg.figure.nbars = f["nbars"].get<std::vector<double>>();
        }
        if (f.contains("omegas")) {
            cfg.figure.omegas = f["omegas"].get<std::vector<double>>();
        }
    }
    return cfg;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    try {
        return from_json(j);
    } catch (const json::exception& e) {
        throw ParseError(std::string("config schema violation: ") + e.what());
    }
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_config(buf.str());
}

std::string params_json(const SystemParams& p) {
    json j;
    j["omega0"] = p.omega0;
    j["gamma_R"] = p.gamma_R;
    j["gamma_L"] = p.gamma_L;
    j["kappa"] = p.kappa;
    j["nbar"] = p.nbar;
    j["drive_amp"] = p.drive_amp;
    j["phase"] = p.phase;
    j["alpha"] = p.alpha;
    if (p.chirality) {
        j["chirality"] = *p.chirality;
    } else {
        j["chirality"] = nullptr;
    }
    return j.dump();
}

}  // namespace chiralqb
