#include "uscpt/scenario.hpp"

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

namespace uscpt {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::string& where,
                    const std::set<std::string>& known) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key()))
            throw std::invalid_argument("config: unknown key '" + where + it.key() + "'");
}

double num(const json& j, const std::string& where) {
    if (!j.is_number())
        throw std::invalid_argument("config: '" + where + "' must be a number");
    return j.get<double>();
}

Scheme parse_scheme(const std::string& s) {
    if (s == "rabi") return Scheme::Rabi;
    if (s == "lambda") return Scheme::Lambda;
    if (s == "vee") return Scheme::Vee;
    throw std::invalid_argument("config: unknown scheme '" + s + "'");
}

DriveScheme parse_drive(const std::string& s) {
    if (s == "lambda_ladder") return DriveScheme::LambdaLadder;
    if (s == "vee_ladder") return DriveScheme::VeeLadder;
    if (s == "ug_only") return DriveScheme::UGOnly;
    if (s == "ue_only") return DriveScheme::UEOnly;
    throw std::invalid_argument("config: unknown drive scheme '" + s + "'");
}

ModelParams parse_model(Scheme scheme, const json& m) {
    reject_unknown(m, "model.",
                   {"epsilon", "epsilon_prime", "alpha", "g", "g_c", "g_prime", "g_prime_c"});
    const double eps = m.contains("epsilon") ? num(m["epsilon"], "model.epsilon") : 1.0;
    const double g = m.contains("g") ? num(m["g"], "model.g") : 0.0;
    const double gc = m.contains("g_c") ? num(m["g_c"], "model.g_c") : 0.0;
    const double gp = m.contains("g_prime") ? num(m["g_prime"], "model.g_prime") : 0.0;
    const double gpc = m.contains("g_prime_c") ? num(m["g_prime_c"], "model.g_prime_c") : 0.0;
    if (scheme == Scheme::Rabi) {
        if (m.contains("epsilon_prime") || m.contains("alpha"))
            throw std::invalid_argument("config: rabi model has no ancilla level");
        return ModelParams::rabi(eps, g, gc);
    }
    if (scheme == Scheme::Lambda) {
        if (!m.contains("epsilon_prime"))
            throw std::invalid_argument("config: lambda model requires model.epsilon_prime");
        if (m.contains("alpha"))
            throw std::invalid_argument(
                "config: lambda model takes epsilon_prime, not alpha");
        return ModelParams::lambda_scheme(eps, num(m["epsilon_prime"], "model.epsilon_prime"),
                                          g, gc, gp, gpc);
    }
    if (!m.contains("alpha"))
        throw std::invalid_argument("config: vee model requires model.alpha");
    if (m.contains("epsilon_prime"))
        throw std::invalid_argument("config: vee model takes alpha, not epsilon_prime");
    return ModelParams::vee_scheme(eps, num(m["alpha"], "model.alpha"), g, gc, gp, gpc);
}

} // namespace

ScenarioFile parse_scenario_file(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
    reject_unknown(j, "",
                   {"command", "scheme", "model", "drive", "pulse", "compensation",
                    "intermediate", "numerics", "kappa_p_override", "scan", "gc_over_g",
                    "count", "output"});

    ScenarioFile f;
    if (!j.contains("command") || !j["command"].is_string())
        throw std::invalid_argument("config: missing 'command'");
    f.command = j["command"].get<std::string>();
    const std::set<std::string> commands{"spectrum", "amplitudes", "stirap", "sweep",
                                         "selectivity"};
    if (!commands.count(f.command))
        throw std::invalid_argument("config: unknown command '" + f.command + "'");

    if (!j.contains("scheme") || !j["scheme"].is_string())
        throw std::invalid_argument("config: missing 'scheme'");
    StirapScenario& sc = f.scenario;
    sc.scheme = parse_scheme(j["scheme"].get<std::string>());

    if (!j.contains("model") || !j["model"].is_object())
        throw std::invalid_argument("config: missing 'model' object");
    sc.model = parse_model(sc.scheme, j["model"]);

    const bool needs_pulses = f.command == "stirap" || f.command == "sweep";
    if (j.contains("drive")) {
        const json& d = j["drive"];
        reject_unknown(d, "drive.", {"scheme", "eta"});
        if (!d.contains("scheme"))
            throw std::invalid_argument("config: drive.scheme required");
        sc.drive = parse_drive(d["scheme"].get<std::string>());
        sc.drive_eta = d.contains("eta") ? num(d["eta"], "drive.eta") : 0.0;
    } else if (needs_pulses) {
        throw std::invalid_argument("config: '" + f.command + "' requires a 'drive' block");
    }

    if (j.contains("pulse")) {
        const json& p = j["pulse"];
        reject_unknown(p, "pulse.", {"omega0_T", "T", "tau_over_T", "delta_p", "delta_s"});
        if (!p.contains("omega0_T") || !p.contains("T"))
            throw std::invalid_argument("config: pulse requires omega0_T and T");
        sc.omega0_T = num(p["omega0_T"], "pulse.omega0_T");
        sc.pulse_T = num(p["T"], "pulse.T");
        sc.tau_over_T =
            p.contains("tau_over_T") ? num(p["tau_over_T"], "pulse.tau_over_T") : 0.75;
        sc.delta_p = p.contains("delta_p") ? num(p["delta_p"], "pulse.delta_p") : 0.0;
        sc.delta_s = p.contains("delta_s") ? num(p["delta_s"], "pulse.delta_s") : 0.0;
    } else if (needs_pulses) {
        throw std::invalid_argument("config: '" + f.command + "' requires a 'pulse' block");
    }

    if (j.contains("compensation")) {
        if (!j["compensation"].is_boolean())
            throw std::invalid_argument("config: 'compensation' must be a boolean");
        sc.compensation = j["compensation"].get<bool>();
    }

    if (j.contains("intermediate")) {
        const std::string s = j["intermediate"].get<std::string>();
        if (s == "1-") sc.intermediate_branch = DoubletBranch::Minus;
        else if (s == "1+") sc.intermediate_branch = DoubletBranch::Plus;
        else if (s != "0")
            throw std::invalid_argument("config: intermediate must be '0', '1-' or '1+'");
    }

    if (j.contains("numerics")) {
        const json& n = j["numerics"];
        reject_unknown(n, "numerics.", {"n_max", "tol", "sample_count"});
        if (n.contains("n_max")) sc.n_max = static_cast<int>(num(n["n_max"], "numerics.n_max"));
        if (n.contains("tol")) sc.tol = num(n["tol"], "numerics.tol");
        if (n.contains("sample_count"))
            sc.sample_count = static_cast<int>(num(n["sample_count"], "numerics.sample_count"));
    }
    if (sc.n_max <= 0) throw std::invalid_argument("config: numerics.n_max must be set > 0");

    if (j.contains("kappa_p_override"))
        sc.kappa_p_override = num(j["kappa_p_override"], "kappa_p_override");

    if (j.contains("scan")) {
        const json& s = j["scan"];
        reject_unknown(s, "scan.", {"axis", "values"});
        if (!s.contains("axis") || !s.contains("values"))
            throw std::invalid_argument("config: scan requires axis and values");
        f.scan.axis = s["axis"].get<std::string>();
        if (!s["values"].is_array())
            throw std::invalid_argument("config: scan.values must be an array");
        for (const auto& v : s["values"]) f.scan.values.push_back(num(v, "scan.values"));
    } else if (f.command == "spectrum" || f.command == "amplitudes" ||
               f.command == "sweep") {
        throw std::invalid_argument("config: '" + f.command + "' requires a 'scan' block");
    }

    if (j.contains("gc_over_g")) f.gc_over_g = num(j["gc_over_g"], "gc_over_g");
    if (j.contains("count")) f.count = static_cast<int>(num(j["count"], "count"));
    if (j.contains("output")) f.output = j["output"].get<std::string>();

    // record the fully defaulted configuration for the digest
    json eff = j;
    eff["pulse"] = json::object();
    if (j.contains("pulse")) eff["pulse"] = j["pulse"];
    eff["pulse"]["tau_over_T"] = sc.tau_over_T;
    eff["pulse"]["delta_p"] = sc.delta_p;
    eff["pulse"]["delta_s"] = sc.delta_s;
    if (!needs_pulses && !j.contains("pulse")) eff.erase("pulse");
    eff["compensation"] = sc.compensation;
    eff["numerics"]["n_max"] = sc.n_max;
    eff["numerics"]["tol"] = sc.tol;
    eff["numerics"]["sample_count"] = sc.sample_count;
    f.effective = eff;
    return f;
}

ScenarioFile load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("config parse error in '" + path + "': " + e.what());
    }
    return parse_scenario_file(j);
}

void apply_override(json& j, const std::string& key_eq_value) {
    const auto eq = key_eq_value.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("--set expects key=value, got '" + key_eq_value + "'");
    const std::string path = key_eq_value.substr(0, eq);
    const std::string value = key_eq_value.substr(eq + 1);

    json* node = &j;
    std::stringstream ss(path);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.')) parts.push_back(part);
    if (parts.empty()) throw std::invalid_argument("--set: empty key path");
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) node = &((*node)[parts[i]]);

    json parsed;
    try {
        parsed = json::parse(value);
    } catch (const json::parse_error&) {
        parsed = value; // plain string
    }
    (*node)[parts.back()] = parsed;
}

std::string config_digest(const json& j) {
    const std::string s = j.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace uscpt
