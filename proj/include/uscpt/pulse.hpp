// pulse.hpp — two-tone STIRAP control field: Gaussian envelopes, carriers,
// dynamical Stark shifts, and the Stokes phase-modulation compensation law

#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "uscpt/spectrum.hpp"

namespace uscpt {

// optional slowly varying phase added to the carrier argument
using PhaseLaw = std::function<double(double)>;

struct PulseSpec {
    double peak{0.0};    // envelope peak (units omega_c)
    double center{0.0};  // pulse center time
    double width{1.0};   // Gaussian width T
    double carrier{0.0}; // angular frequency
    PhaseLaw phase_law;  // empty = zero phase

    double phase(double t) const { return phase_law ? phase_law(t) : 0.0; }
};

// peak * exp(-((t-center)/width)^2)
double envelope(const PulseSpec& spec, double t);

// closed-form Gaussian pulse area integral of the envelope
double pulse_area(const PulseSpec& spec);

struct DriveConfig {
    PulseSpec pump;   // centered at +tau
    PulseSpec stokes; // centered at -tau
    double tau{0.0};
    double t_start{0.0};
    double t_end{0.0};

    // counterintuitive ordering and >= 3 widths of margin on each side
    void validate() const;
};

// W(t) = sum_k envelope_k(t) cos(omega_k t + phi_k(t))
double field_value(const DriveConfig& cfg, double t);

// dressed-basis data for Stark sums: energies and signed dipole elements
struct StarkModel {
    Eigen::VectorXd energies;
    Eigen::MatrixXd dipole;
    std::vector<StateLabel> labels;

    int find(const StateLabel& l) const;
};

StarkModel build_stark_model(const LabeledSpectrum& spec, const OperatorMatrix& dipole);

// shift of level j under a field of unit peak at the given carrier:
//   sum_i |eta_ij / 2|^2 (1/(E_i - E_j - w) + 1/(E_i - E_j + w))
// pairs within `resonance_cutoff` of either resonance are skipped, as are
// explicitly excluded (i, j) label pairs (the intended transitions)
double stark_coefficient(const StarkModel& model, int j, double carrier,
                         const std::vector<std::pair<int, int>>& excluded,
                         double resonance_cutoff = 0.05);

// S_j(t) = coefficient * envelope(t)^2 for the given field
double stark_shift(const StarkModel& model, const StateLabel& level_j,
                   const PulseSpec& field,
                   const std::vector<std::pair<StateLabel, StateLabel>>& excluded,
                   double t, double resonance_cutoff = 0.05);

struct ProtocolLabels {
    StateLabel initial;
    StateLabel target;
    StateLabel intermediate;
};

// net two-photon Stark detuning of the target-initial pair under the Stokes
// field, per unit envelope^2 (the intended Stokes transition is excluded)
double two_photon_stark_coefficient(const StarkModel& model, const ProtocolLabels& labels,
                                    double stokes_carrier, double resonance_cutoff = 0.05);

struct CompensationLaw {
    PhaseLaw phase;     // phi_s(t) = -integral of delta(t')
    double delta_peak;  // two-photon detuning at the envelope peak
};

// phase modulation of the Stokes pulse tracking the Stark-shifted two-photon
// resonance; delta(t) inherits the Gaussian^2 envelope so the integral is
// closed-form (erf)
CompensationLaw compensation_phase_law(const DriveConfig& cfg, const StarkModel& model,
                                       const ProtocolLabels& labels);

// closed-form phi(t) = -delta_peak * int_{t_start}^t exp(-2((t'-center)/width)^2) dt'
PhaseLaw gaussian_integral_phase_law(double delta_peak, double center, double width,
                                     double t_start);

} // namespace uscpt
