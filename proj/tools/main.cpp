// uscpt — dressed-state spectra, amplitude tables, and two-tone STIRAP
// population-transfer simulations for an ultrastrongly coupled atom-mode
// system; writes CSV tables for offline plotting.

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"

#include "uscpt/csv.hpp"
#include "uscpt/scenario.hpp"

namespace {

using namespace uscpt;

std::string resolve_output(const ScenarioFile& f, const std::string& out_flag) {
    std::string path = !out_flag.empty() ? out_flag
                       : !f.output.empty() ? f.output
                                           : f.command + ".csv";
    if (std::filesystem::path(path).is_relative()) {
        if (const char* dir = std::getenv("USCPT_OUT_DIR"))
            path = (std::filesystem::path(dir) / path).string();
    }
    return path;
}

ModelParams model_at(const ScenarioFile& f, double axis_value) {
    StirapScenario sc = f.scenario;
    apply_axis(sc, f.scan.axis, axis_value);
    if (f.scan.axis == "g") sc.model.g_c = f.gc_over_g * sc.model.g;
    return sc.model;
}

int cmd_spectrum(const ScenarioFile& f, const std::string& out_path,
                 const std::string& digest) {
    const Basis basis(f.scenario.n_max, scheme_levels(f.scenario.scheme));
    CsvWriter csv(out_path, digest);

    std::vector<StateLabel> columns;
    std::vector<std::vector<double>> rows;
    for (double v : f.scan.values) {
        LabelOptions opt;
        opt.force_structural = true;
        const LabeledSpectrum spec =
            label_spectrum(f.scenario.scheme, basis, model_at(f, v), opt);
        const int k = f.count > 0 ? std::min(f.count, spec.dimension()) : spec.dimension();
        if (columns.empty())
            columns.assign(spec.labels.begin(), spec.labels.begin() + k);
        std::vector<double> row{v};
        for (const StateLabel& l : columns) row.push_back(spec.energy(l));
        rows.push_back(std::move(row));
    }

    std::vector<std::string> header{f.scan.axis};
    for (const StateLabel& l : columns) header.push_back("E[" + l.str() + "]");
    csv.header(header);
    for (const auto& row : rows) {
        std::vector<std::string> cells;
        for (double v : row) cells.push_back(CsvWriter::cell(v));
        csv.row(cells);
    }
    return 0;
}

int cmd_amplitudes(const ScenarioFile& f, const std::string& out_path,
                   const std::string& digest) {
    CsvWriter csv(out_path, digest);
    const bool with_stokes = f.scenario.scheme != Scheme::Rabi;
    std::vector<std::string> header{f.scan.axis,
                                    "c00_num", "c00_pert", "c00_dev",
                                    "c02_num", "c02_pert", "c02_dev",
                                    "d1m2_num", "d1m2_pert", "d1m2_dev",
                                    "d1p2_num", "d1p2_pert", "d1p2_dev"};
    if (with_stokes) {
        header.push_back("stokes_num");
        header.push_back("stokes_pert");
        header.push_back("stokes_dev");
    }
    csv.header(header);

    auto rel_dev = [](double num, double pert) {
        return pert != 0.0 ? (num - pert) / pert : 0.0;
    };

    const Basis rabi_basis(std::max(f.scenario.n_max, 10), two_level_set());
    for (double v : f.scan.values) {
        const ModelParams p = model_at(f, v);
        ModelParams rp = ModelParams::rabi(p.epsilon, p.g, p.g_c);
        LabelOptions opt;
        opt.force_structural = true;
        const LabeledSpectrum spec = label_spectrum(Scheme::Rabi, rabi_basis, rp, opt);
        const double c00n = spec.amplitude(StateLabel::ground(), {0, Level::g});
        const double c02n = spec.amplitude(StateLabel::ground(), {2, Level::g});
        const double d1m2n = spec.amplitude(StateLabel::doublet(1, -1), {2, Level::e});
        const double d1p2n = spec.amplitude(StateLabel::doublet(1, +1), {2, Level::e});
        const GroundAmplitudes ga = perturbative_ground_amplitudes(rp);
        const DoubletAmplitudes da = perturbative_doublet_amplitudes(rp);

        std::vector<std::string> cells{CsvWriter::cell(v),
                                       CsvWriter::cell(c00n), CsvWriter::cell(ga.c00),
                                       CsvWriter::cell(rel_dev(c00n, ga.c00)),
                                       CsvWriter::cell(c02n), CsvWriter::cell(ga.c02),
                                       CsvWriter::cell(rel_dev(c02n, ga.c02)),
                                       CsvWriter::cell(d1m2n), CsvWriter::cell(da.d_minus_2),
                                       CsvWriter::cell(rel_dev(d1m2n, da.d_minus_2)),
                                       CsvWriter::cell(d1p2n), CsvWriter::cell(da.d_plus_2),
                                       CsvWriter::cell(rel_dev(d1p2n, da.d_plus_2))};
        if (with_stokes) {
            const double num =
                stokes_matrix_element_full(f.scenario.scheme, p, f.scenario.n_max,
                                           f.scenario.intermediate_branch);
            double pert = 0.0;
            if (f.scenario.scheme == Scheme::Lambda) {
                const LambdaStrayAmplitudes st = lambda_stray_perturbative(p);
                pert = ga.c02 + st.f01 * st.c2u1 + st.f2u0;
            } else {
                pert = f.scenario.intermediate_branch == DoubletBranch::Minus ? da.d_minus_2
                                                                              : da.d_plus_2;
            }
            cells.push_back(CsvWriter::cell(num));
            cells.push_back(CsvWriter::cell(pert));
            cells.push_back(CsvWriter::cell(rel_dev(num, pert)));
        }
        csv.row(cells);
    }
    return 0;
}

int cmd_stirap(const ScenarioFile& f, const std::string& out_path,
               const std::string& digest) {
    const StirapResult r = run(f.scenario);
    CsvWriter csv(out_path, digest);
    csv.header({"t", "P_initial", "P_target", "P_intermediate", "P_other"});
    const auto& h = r.history;
    for (int s = 0; s < h.times.size(); ++s) {
        const double sum = h.populations.col(s).sum();
        csv.row({CsvWriter::cell(h.times(s)), CsvWriter::cell(h.populations(0, s)),
                 CsvWriter::cell(h.populations(1, s)), CsvWriter::cell(h.populations(2, s)),
                 CsvWriter::cell(1.0 - sum)});
    }
    csv.comment("final_P_initial: " + format_double(r.final_initial_population));
    csv.comment("final_P_target: " + format_double(r.final_target_population));
    csv.comment("final_P_intermediate: " + format_double(r.final_intermediate_population));
    csv.comment("final_P_other: " + format_double(r.final_other_population));
    std::string pn = "photon_distribution:";
    for (int n = 0; n < r.final_photon_distribution.size(); ++n)
        pn += " " + format_double(r.final_photon_distribution(n));
    csv.comment(pn);
    csv.comment("omega_sT: " + format_double(r.diagnostics.omega_sT));
    csv.comment("omega_pT: " + format_double(r.diagnostics.omega_pT));
    if (r.diagnostics.selectivity_A > 0)
        csv.comment("selectivity_A: " + format_double(r.diagnostics.selectivity_A));
    csv.comment("stark_delta_peak: " + format_double(r.diagnostics.stark_delta_peak));
    csv.comment("max_P_intermediate: " +
                format_double(r.diagnostics.max_intermediate_population));
    csv.comment("norm_drift: " + format_double(r.diagnostics.norm_drift));
    std::cout << "final target population " << format_double(r.final_target_population)
              << "\n";
    return 0;
}

int cmd_sweep(const ScenarioFile& f, const std::string& out_path,
              const std::string& digest) {
    const std::vector<SweepRow> rows = sweep(f.scenario, f.scan.axis, f.scan.values);
    CsvWriter csv(out_path, digest);
    csv.header({f.scan.axis, "P_initial", "P_target", "P_intermediate", "P_other",
                "photon2", "omega_sT", "omega_pT", "error"});
    for (const SweepRow& r : rows) {
        csv.row({CsvWriter::cell(r.value), CsvWriter::cell(r.final_initial),
                 CsvWriter::cell(r.final_target), CsvWriter::cell(r.final_intermediate),
                 CsvWriter::cell(r.final_other), CsvWriter::cell(r.photon2),
                 CsvWriter::cell(r.omega_sT), CsvWriter::cell(r.omega_pT),
                 r.ok ? std::string() : r.error});
    }
    return 0;
}

int cmd_selectivity(const ScenarioFile& f, const std::string& out_path,
                    const std::string& digest) {
    const ModelParams& m = f.scenario.model;
    const double alpha = m.epsilon > 0 ? m.epsilon_prime / m.epsilon - 1.0 : 0.0;
    const double r = m.epsilon > 0 ? m.g / m.epsilon : 0.0;
    std::vector<double> etas = f.scan.values;
    if (etas.empty()) {
        if (m.g <= 0 || m.g_prime <= 0)
            throw std::invalid_argument("selectivity: provide scan.values over eta or a "
                                        "model with g, g_prime > 0");
        etas.push_back(m.g_prime / m.g);
    }
    CsvWriter csv(out_path, digest);
    csv.header({"eta", "alpha", "g_over_eps", "A", "selective"});
    for (double eta : etas) {
        const double A = selectivity_A(alpha, r, eta);
        csv.row({CsvWriter::cell(eta), CsvWriter::cell(alpha), CsvWriter::cell(r),
                 CsvWriter::cell(A), A >= 10.0 ? "1" : "0"});
        std::cout << "eta=" << format_double(eta) << " A=" << format_double(A)
                  << (A >= 10.0 ? " (selective)" : " (not selective)") << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"uscpt - ultrastrong-coupling population-transfer simulator"};
    app.require_subcommand(1);

    std::string config_path, out_flag;
    int n_max_flag = 0;
    double tol_flag = 0;
    std::vector<std::string> overrides;

    for (const std::string name : {"spectrum", "amplitudes", "stirap", "sweep",
                                   "selectivity"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "scenario file (JSON)")->required();
        sub->add_option("--out", out_flag, "output CSV path");
        sub->add_option("--n-max", n_max_flag, "photon cutoff override");
        sub->add_option("--tol", tol_flag, "integration tolerance override");
        sub->add_option("--set", overrides, "dotted-path override key=value")
            ->take_all();
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        std::ifstream in(config_path);
        if (!in) throw std::runtime_error("cannot open config file '" + config_path + "'");
        nlohmann::json j;
        in >> j;
        for (const std::string& kv : overrides) apply_override(j, kv);
        if (n_max_flag > 0) j["numerics"]["n_max"] = n_max_flag;
        if (tol_flag > 0) j["numerics"]["tol"] = tol_flag;

        ScenarioFile f = parse_scenario_file(j);
        if (f.command != command)
            throw std::invalid_argument("config command '" + f.command +
                                        "' does not match subcommand '" + command + "'");
        const std::string digest = config_digest(f.effective);
        const std::string out_path = resolve_output(f, out_flag);

        int rc = 1;
        if (command == "spectrum") rc = cmd_spectrum(f, out_path, digest);
        else if (command == "amplitudes") rc = cmd_amplitudes(f, out_path, digest);
        else if (command == "stirap") rc = cmd_stirap(f, out_path, digest);
        else if (command == "sweep") rc = cmd_sweep(f, out_path, digest);
        else if (command == "selectivity") rc = cmd_selectivity(f, out_path, digest);
        if (rc == 0) std::cerr << "wrote " << out_path << "\n";
        return rc;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
