#include "uscpt/stirap.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

namespace uscpt {

namespace {

ProtocolSetup configure_impl(const StirapScenario& sc) {
    if (sc.omega0_T <= 0 || sc.pulse_T <= 0)
        throw std::invalid_argument("configure: omega0_T and pulse_T must be > 0");

    const Basis basis(sc.n_max, scheme_levels(sc.scheme));
    LabelOptions lopt;
    lopt.force_structural = true;
    LabeledSpectrum spec = label_spectrum(sc.scheme, basis, sc.model, lopt);
    OperatorMatrix h0 = build_hamiltonian(sc.scheme, basis, sc.model);
    OperatorMatrix dipole = drive_operator(basis, sc.drive, sc.drive_eta);

    ProtocolLabels labels;
    labels.initial = StateLabel::ancilla(0);
    labels.target = StateLabel::ancilla(2);
    labels.intermediate =
        sc.scheme == Scheme::Lambda
            ? StateLabel::ground()
            : StateLabel::doublet(1, sc.intermediate_branch == DoubletBranch::Minus ? -1 : +1);

    const double e_init = spec.energy(labels.initial);
    const double e_tgt = spec.energy(labels.target);
    const double e_mid = spec.energy(labels.intermediate);

    ProtocolSetup setup{basis, h0, dipole, spec, labels, {}, 0, 0, 0, 0};
    setup.pump_element = dressed_element(spec, dipole, labels.intermediate, labels.initial);
    setup.stokes_element = dressed_element(spec, dipole, labels.intermediate, labels.target);
    setup.kappa_p = sc.kappa_p_override >= 0
                        ? sc.kappa_p_override
                        : (setup.pump_element != 0.0
                               ? std::abs(setup.stokes_element / setup.pump_element)
                               : 0.0);

    const double tau = sc.tau_over_T * sc.pulse_T;
    const double w_s_peak = sc.omega0_T / sc.pulse_T;
    DriveConfig& drive = setup.drive;
    drive.tau = tau;
    drive.t_start = -3 * sc.pulse_T - tau;
    drive.t_end = 3 * sc.pulse_T + tau;
    drive.stokes = PulseSpec{w_s_peak, -tau, sc.pulse_T,
                             std::abs(e_mid - e_tgt) + sc.delta_s, {}};
    drive.pump = PulseSpec{setup.kappa_p * w_s_peak, +tau, sc.pulse_T,
                           std::abs(e_mid - e_init) + sc.delta_p, {}};
    drive.validate();

    const StarkModel stark = build_stark_model(spec, dipole);
    const CompensationLaw law = compensation_phase_law(drive, stark, labels);
    setup.stark_delta_peak = law.delta_peak;
    if (sc.compensation) drive.stokes.phase_law = law.phase;
    return setup;
}

} // namespace

ProtocolSetup configure_lambda(const StirapScenario& sc) {
    if (sc.scheme != Scheme::Lambda)
        throw std::invalid_argument("configure_lambda: scenario scheme is not Lambda");
    return configure_impl(sc);
}

ProtocolSetup configure_vee(const StirapScenario& sc) {
    if (sc.scheme != Scheme::Vee)
        throw std::invalid_argument("configure_vee: scenario scheme is not Vee");
    return configure_impl(sc);
}

ProtocolSetup configure(const StirapScenario& sc) {
    return sc.scheme == Scheme::Lambda ? configure_lambda(sc) : configure_vee(sc);
}

StirapResult execute(const ProtocolSetup& setup, const StirapScenario& sc) {
    const Eigen::VectorXcd sub = setup.spectrum.vector(setup.labels.initial);
    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(setup.basis.dimension());
    for (std::size_t r = 0; r < setup.spectrum.kept.size(); ++r)
        psi0(setup.spectrum.kept[r]) = sub(r);

    const Trajectory traj =
        evolve(setup.h0, setup.dipole, setup.drive, psi0, sc.tol, sc.sample_count);

    StirapResult res;
    res.truncation = truncation_check(traj, setup.basis, sc.truncation_threshold);
    if (!res.truncation.pass)
        throw std::runtime_error("run: truncation check failed, top-level occupation " +
                                 std::to_string(res.truncation.max_top_occupation) +
                                 "; increase n_max");

    const std::vector<StateLabel> labels{setup.labels.initial, setup.labels.target,
                                         setup.labels.intermediate};
    res.history = project_populations(traj, setup.spectrum, labels);
    const int last = static_cast<int>(traj.times.size()) - 1;
    res.final_initial_population = res.history.populations(0, last);
    res.final_target_population = res.history.populations(1, last);
    res.final_intermediate_population = res.history.populations(2, last);
    res.final_other_population = 1.0 - res.history.populations.col(last).sum();
    res.final_photon_distribution = photon_distribution(traj.states.col(last), setup.basis);
    res.history.final_photon_distribution = res.final_photon_distribution;

    StirapDiagnostics& d = res.diagnostics;
    d.omega_s_peak = std::abs(setup.stokes_element) * setup.drive.stokes.peak;
    d.omega_p_peak = std::abs(setup.pump_element) * setup.drive.pump.peak;
    d.omega_sT = d.omega_s_peak * sc.pulse_T;
    d.omega_pT = d.omega_p_peak * sc.pulse_T;
    d.stark_delta_peak = setup.stark_delta_peak;
    d.norm_drift = traj.norm_drift;
    d.max_intermediate_population = res.history.populations.row(2).maxCoeff();
    const double eta = sc.model.g > 0 ? sc.model.g_prime / sc.model.g : 0.0;
    if (eta > 0 && sc.model.epsilon > 0) {
        const double alpha = sc.model.epsilon_prime / sc.model.epsilon - 1.0;
        d.selectivity_A = selectivity_A(alpha, sc.model.g / sc.model.epsilon, eta);
    }
    return res;
}

StirapResult run(const StirapScenario& sc) {
    return execute(configure(sc), sc);
}

double selectivity_A(double alpha, double g_over_eps, double eta) {
    if (eta <= 0)
        throw std::invalid_argument("selectivity_A: criterion undefined for eta <= 0");
    const double r2 = g_over_eps * g_over_eps;
    const double den = 2.0 - r2;
    if (den == 0.0) throw std::invalid_argument("selectivity_A: vanishing denominator");
    return std::abs((alpha * alpha - r2) / den) / (2.0 * eta * eta);
}

void apply_axis(StirapScenario& sc, const std::string& axis, double value) {
    if (axis == "g") {
        sc.model.g = value;
        sc.model.eta = sc.model.g > 0 ? sc.model.g_prime / sc.model.g : 0.0;
    } else if (axis == "g_c") {
        sc.model.g_c = value;
    } else if (axis == "g_prime") {
        sc.model.g_prime = value;
        sc.model.eta = sc.model.g > 0 ? value / sc.model.g : 0.0;
    } else if (axis == "g_prime_c") {
        sc.model.g_prime_c = value;
    } else if (axis == "eta") {
        // physical stray: g' = g'_c = eta g, ladder ratio follows
        sc.model.eta = value;
        sc.model.g_prime = value * sc.model.g;
        sc.model.g_prime_c = value * sc.model.g;
        sc.drive_eta = value;
    } else if (axis == "epsilon") {
        sc.model.epsilon = value;
    } else if (axis == "epsilon_prime") {
        sc.model.epsilon_prime = value;
        sc.model.alpha = sc.model.epsilon > 0 ? value / sc.model.epsilon - 1.0 : 0.0;
    } else if (axis == "alpha") {
        sc.model.alpha = value;
        sc.model.epsilon_prime = (1.0 + value) * sc.model.epsilon;
    } else if (axis == "omega0_T") {
        sc.omega0_T = value;
    } else if (axis == "pulse_T") {
        sc.pulse_T = value;
    } else if (axis == "tau_over_T") {
        sc.tau_over_T = value;
    } else if (axis == "delta_p") {
        sc.delta_p = value;
    } else if (axis == "delta_s") {
        sc.delta_s = value;
    } else if (axis == "drive_eta") {
        sc.drive_eta = value;
    } else if (axis == "n_max") {
        sc.n_max = static_cast<int>(value);
    } else if (axis == "tol") {
        sc.tol = value;
    } else {
        throw std::invalid_argument("unknown sweep axis '" + axis + "'");
    }
}

std::vector<SweepRow> sweep(const StirapScenario& templ, const std::string& axis,
                            const std::vector<double>& values) {
    // validate the axis before dispatching workers
    {
        StirapScenario probe = templ;
        if (!values.empty()) apply_axis(probe, axis, values.front());
    }
    std::vector<std::future<SweepRow>> futures;
    futures.reserve(values.size());
    for (double v : values) {
        futures.push_back(std::async(std::launch::async, [templ, axis, v]() {
            SweepRow row;
            row.value = v;
            try {
                StirapScenario sc = templ;
                apply_axis(sc, axis, v);
                const StirapResult r = run(sc);
                row.ok = true;
                row.final_initial = r.final_initial_population;
                row.final_target = r.final_target_population;
                row.final_intermediate = r.final_intermediate_population;
                row.final_other = r.final_other_population;
                row.photon2 = r.final_photon_distribution.size() > 2
                                  ? r.final_photon_distribution(2)
                                  : 0.0;
                row.omega_sT = r.diagnostics.omega_sT;
                row.omega_pT = r.diagnostics.omega_pT;
            } catch (const std::exception& e) {
                row.ok = false;
                row.error = e.what();
            }
            return row;
        }));
    }
    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (auto& f : futures) rows.push_back(f.get());
    return rows;
}

} // namespace uscpt
