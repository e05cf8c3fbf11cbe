#include "uscpt/pulse.hpp"

#include <cmath>
#include <stdexcept>

namespace uscpt {

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
}

double envelope(const PulseSpec& spec, double t) {
    const double x = (t - spec.center) / spec.width;
    return spec.peak * std::exp(-x * x);
}

double pulse_area(const PulseSpec& spec) {
    return spec.peak * spec.width * kSqrtPi;
}

void DriveConfig::validate() const {
    if (pump.peak < 0 || stokes.peak < 0)
        throw std::invalid_argument("DriveConfig: negative peak amplitude");
    if (pump.width <= 0 || stokes.width <= 0)
        throw std::invalid_argument("DriveConfig: pulse width must be > 0");
    if (pump.carrier < 0 || stokes.carrier < 0)
        throw std::invalid_argument("DriveConfig: negative carrier frequency");
    if (tau > 0 && !(stokes.center < pump.center))
        throw std::invalid_argument("DriveConfig: counterintuitive ordering violated");
    const double lo = std::min(stokes.center - 3 * stokes.width, pump.center - 3 * pump.width);
    const double hi = std::max(stokes.center + 3 * stokes.width, pump.center + 3 * pump.width);
    if (t_start > lo || t_end < hi)
        throw std::invalid_argument("DriveConfig: window must cover both pulses to >= 3 widths");
}

double field_value(const DriveConfig& cfg, double t) {
    double w = 0.0;
    for (const PulseSpec* p : {&cfg.pump, &cfg.stokes})
        w += envelope(*p, t) * std::cos(p->carrier * t + p->phase(t));
    return w;
}

int StarkModel::find(const StateLabel& l) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == l) return static_cast<int>(i);
    throw std::invalid_argument("StarkModel: unknown label '" + l.str() + "'");
}

StarkModel build_stark_model(const LabeledSpectrum& spec, const OperatorMatrix& dipole) {
    const OperatorMatrix d = spec.restrict_operator(dipole);
    const Eigen::MatrixXcd dressed = spec.vectors.adjoint() * d * spec.vectors;
    return {spec.energies, dressed.real(), spec.labels};
}

double stark_coefficient(const StarkModel& model, int j, double carrier,
                         const std::vector<std::pair<int, int>>& excluded,
                         double resonance_cutoff) {
    const int n = static_cast<int>(model.energies.size());
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        if (i == j) continue;
        bool skip = false;
        for (const auto& [a, b] : excluded)
            if ((a == i && b == j) || (a == j && b == i)) skip = true;
        if (skip) continue;
        const double de = model.energies(i) - model.energies(j);
        if (std::abs(de - carrier) < resonance_cutoff ||
            std::abs(de + carrier) < resonance_cutoff)
            continue;
        const double eta2 = model.dipole(i, j) * model.dipole(i, j);
        sum += eta2 / 4.0 * (1.0 / (de - carrier) + 1.0 / (de + carrier));
    }
    return sum;
}

double stark_shift(const StarkModel& model, const StateLabel& level_j,
                   const PulseSpec& field,
                   const std::vector<std::pair<StateLabel, StateLabel>>& excluded,
                   double t, double resonance_cutoff) {
    std::vector<std::pair<int, int>> ex;
    for (const auto& [a, b] : excluded)
        ex.emplace_back(model.find(a), model.find(b));
    const double coef =
        stark_coefficient(model, model.find(level_j), field.carrier, ex, resonance_cutoff);
    const double env = envelope(field, t);
    return coef * env * env;
}

double two_photon_stark_coefficient(const StarkModel& model, const ProtocolLabels& labels,
                                    double stokes_carrier, double resonance_cutoff) {
    const int ji = model.find(labels.initial);
    const int jt = model.find(labels.target);
    const int jm = model.find(labels.intermediate);
    const std::vector<std::pair<int, int>> ex{{jt, jm}};
    const double st = stark_coefficient(model, jt, stokes_carrier, ex, resonance_cutoff);
    const double si = stark_coefficient(model, ji, stokes_carrier, ex, resonance_cutoff);
    return st - si;
}

PhaseLaw gaussian_integral_phase_law(double delta_peak, double center, double width,
                                     double t_start) {
    // integral of exp(-2((t-c)/T)^2) = T sqrt(pi/2)/2 [erf(sqrt2 (t-c)/T) - ...]
    const double pref = delta_peak * width * kSqrtPi / (2.0 * std::sqrt(2.0));
    const double erf0 = std::erf(std::sqrt(2.0) * (t_start - center) / width);
    return [pref, center, width, erf0](double t) {
        return -pref * (std::erf(std::sqrt(2.0) * (t - center) / width) - erf0);
    };
}

CompensationLaw compensation_phase_law(const DriveConfig& cfg, const StarkModel& model,
                                       const ProtocolLabels& labels) {
    const double coef =
        two_photon_stark_coefficient(model, labels, cfg.stokes.carrier);
    const double delta_peak = coef * cfg.stokes.peak * cfg.stokes.peak;
    return {gaussian_integral_phase_law(delta_peak, cfg.stokes.center, cfg.stokes.width,
                                        cfg.t_start),
            delta_peak};
}

} // namespace uscpt
