// evolve.hpp — lab-frame Schrodinger integration for H(t) = H0 + W(t) D,
// dressed-state population projection, photon statistics, truncation guard

#pragma once

#include <map>

#include "uscpt/pulse.hpp"

namespace uscpt {

struct Trajectory {
    Eigen::VectorXd times;     // uniform samples over the drive window
    Eigen::MatrixXcd states;   // column per sample
    double norm_drift{0.0};    // max | ||psi|| - 1 | over the samples
};

// Adaptive embedded Runge-Kutta integration of i dpsi/dt = [H0 + W(t) D] psi
// with local error per unit time <= tol; the trajectory is sampled on
// sample_count uniform points by integrating exactly to each sample time.
// Backward windows (t_end < t_start) integrate with negative steps.
// Throws if the norm drift exceeds 1e-6 or the step size underflows.
Trajectory evolve(const OperatorMatrix& h0, const OperatorMatrix& dipole,
                  const DriveConfig& drive, const Eigen::VectorXcd& psi0,
                  double tol = 1e-9, int sample_count = 2000);

struct PopulationHistory {
    Eigen::VectorXd times;
    std::vector<StateLabel> labels;
    Eigen::MatrixXd populations;       // row per label, column per sample
    Eigen::VectorXd final_photon_distribution;

    Eigen::VectorXd series(const StateLabel& l) const;
    double final_population(const StateLabel& l) const;
};

// P_label(t) = |<Psi_label|psi(t)>|^2
PopulationHistory project_populations(const Trajectory& traj, const LabeledSpectrum& spec,
                                      const std::vector<StateLabel>& labels);

// p(n) = sum_levels |<n,l|psi>|^2
Eigen::VectorXd photon_distribution(const Eigen::VectorXcd& psi, const Basis& basis);

struct TruncationReport {
    bool pass{true};
    double max_top_occupation{0.0};
};

// max over time of the population on the two highest Fock levels
TruncationReport truncation_check(const Trajectory& traj, const Basis& basis,
                                  double threshold = 1e-6);

} // namespace uscpt
