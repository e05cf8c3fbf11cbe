// stirap.hpp — complete Lambda / Vee STIRAP experiments: carrier selection
// from the labeled spectrum, pulse scaling, selectivity diagnostics, sweeps

#pragma once

#include "uscpt/evolve.hpp"

namespace uscpt {

struct StirapScenario {
    Scheme scheme{Scheme::Lambda};
    ModelParams model;
    DoubletBranch intermediate_branch{DoubletBranch::Minus}; // Vee only
    double pulse_T{1.0};
    double omega0_T{0.0};    // peak Stokes envelope = omega0_T / pulse_T
    double tau_over_T{0.75};
    double delta_p{0.0};
    double delta_s{0.0};
    bool compensation{false};
    int n_max{6};
    DriveScheme drive{DriveScheme::LambdaLadder};
    double drive_eta{0.0};
    double kappa_p_override{-1.0}; // < 0: derive from dressed elements
    double tol{1e-9};
    int sample_count{2000};
    double truncation_threshold{1e-6};
};

struct ProtocolSetup {
    Basis basis;
    OperatorMatrix h0;
    OperatorMatrix dipole;
    LabeledSpectrum spectrum;
    ProtocolLabels labels;
    DriveConfig drive;
    double pump_element{0.0};
    double stokes_element{0.0};
    double kappa_p{0.0};
    double stark_delta_peak{0.0}; // two-photon detuning at the Stokes peak
};

// builds H0, labels the spectrum, sets carriers from the labeled energies,
// scales the envelopes, applies the compensation law when enabled
ProtocolSetup configure_lambda(const StirapScenario& sc);
ProtocolSetup configure_vee(const StirapScenario& sc);
ProtocolSetup configure(const StirapScenario& sc);

struct StirapDiagnostics {
    double omega_p_peak{0.0};
    double omega_s_peak{0.0};
    double omega_pT{0.0};
    double omega_sT{0.0};
    double selectivity_A{0.0}; // 0 when eta = 0 (criterion undefined)
    double stark_delta_peak{0.0};
    double norm_drift{0.0};
    double max_intermediate_population{0.0};
};

struct StirapResult {
    PopulationHistory history;
    double final_initial_population{0.0};
    double final_target_population{0.0};
    double final_intermediate_population{0.0};
    double final_other_population{0.0};
    Eigen::VectorXd final_photon_distribution;
    StirapDiagnostics diagnostics;
    TruncationReport truncation;
};

// evolution from the labeled |0u> over [-3T-tau, 3T+tau]
StirapResult run(const StirapScenario& sc);

// run a prepared setup (reused pulses, substituted Hamiltonians)
StirapResult execute(const ProtocolSetup& setup, const StirapScenario& numerics);

// A = (1 / 2 eta^2) |(alpha^2 - (g/eps)^2) / (2 - (g/eps)^2)|
double selectivity_A(double alpha, double g_over_eps, double eta);

struct SweepRow {
    double value{0.0};
    bool ok{false};
    std::string error;
    double final_initial{0.0};
    double final_target{0.0};
    double final_intermediate{0.0};
    double final_other{0.0};
    double photon2{0.0};
    double omega_sT{0.0};
    double omega_pT{0.0};
};

// one run per value along the named axis; failures recorded per row
std::vector<SweepRow> sweep(const StirapScenario& templ, const std::string& axis,
                            const std::vector<double>& values);

// apply a named sweep-axis value to a scenario (shared with the CLI --set)
void apply_axis(StirapScenario& sc, const std::string& axis, double value);

} // namespace uscpt
