#include "uscpt/evolve.hpp"

#include <boost/numeric/odeint/algebra/vector_space_algebra.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>
#include <boost/numeric/odeint/util/is_resizeable.hpp>
#include <boost/numeric/odeint/util/resize.hpp>
#include <boost/numeric/odeint/util/same_size.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace boost::numeric::odeint {

// resize support for the Eigen state type used by the integrator
template <>
struct is_resizeable<Eigen::VectorXcd> {
    using type = boost::true_type;
    static constexpr bool value = true;
};

template <>
struct same_size_impl<Eigen::VectorXcd, Eigen::VectorXcd> {
    static bool same_size(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
        return a.size() == b.size();
    }
};

template <>
struct resize_impl<Eigen::VectorXcd, Eigen::VectorXcd> {
    static void resize(Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
        a.resize(b.size());
    }
};

} // namespace boost::numeric::odeint

namespace uscpt {

namespace {

constexpr double kNormGate = 1e-6;
constexpr int kOrder = 8;

using State = Eigen::VectorXcd;

// right-hand side -i (H0 + W(t) D) psi with a real fast path (all model
// Hamiltonians are real symmetric; only the state is complex)
class SchrodingerRhs {
public:
    SchrodingerRhs(const OperatorMatrix& h0, const OperatorMatrix& dipole,
                   const DriveConfig& drive, double energy_shift)
        : drive_(drive) {
        const double im_h0 = h0.imag().cwiseAbs().maxCoeff();
        const double im_d = dipole.imag().cwiseAbs().maxCoeff();
        real_mode_ = im_h0 == 0.0 && im_d == 0.0;
        if (real_mode_) {
            h0r_ = h0.real();
            h0r_.diagonal().array() -= energy_shift;
            dr_ = dipole.real();
            const int d = static_cast<int>(h0.rows());
            xr_.resize(d); xi_.resize(d); yr_.resize(d); yi_.resize(d); z_.resize(d);
        } else {
            h0c_ = h0;
            h0c_.diagonal().array() -= energy_shift;
            dc_ = dipole;
        }
    }

    void operator()(const State& x, State& dxdt, double t) {
        const double w = field_value(drive_, t);
        if (real_mode_) {
            xr_ = x.real();
            xi_ = x.imag();
            yr_.noalias() = h0r_ * xi_;
            z_.noalias() = dr_ * xi_;
            yr_.noalias() += w * z_;
            yi_.noalias() = h0r_ * xr_;
            z_.noalias() = dr_ * xr_;
            yi_.noalias() += w * z_;
            dxdt.resize(x.size());
            dxdt.real() = yr_;
            dxdt.imag() = -yi_;
        } else {
            dxdt = std::complex<double>(0, -1) * (h0c_ * x + w * (dc_ * x));
        }
    }

private:
    DriveConfig drive_;
    bool real_mode_{false};
    Eigen::MatrixXd h0r_, dr_;
    Eigen::MatrixXcd h0c_, dc_;
    Eigen::VectorXd xr_, xi_, yr_, yi_, z_;
};

} // namespace

Trajectory evolve(const OperatorMatrix& h0, const OperatorMatrix& dipole,
                  const DriveConfig& drive, const Eigen::VectorXcd& psi0, double tol,
                  int sample_count) {
    if (h0.rows() != h0.cols() || dipole.rows() != dipole.cols() || h0.rows() != dipole.rows())
        throw std::invalid_argument("evolve: dimension mismatch between H0 and dipole");
    if (psi0.size() != h0.rows())
        throw std::invalid_argument("evolve: state dimension mismatch");
    if (std::abs(psi0.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("evolve: initial state not normalized");
    if (sample_count < 2) throw std::invalid_argument("evolve: sample_count < 2");
    if (tol <= 0) throw std::invalid_argument("evolve: tol must be > 0");
    if (drive.t_end == drive.t_start)
        throw std::invalid_argument("evolve: empty time window");

    // shift by the spectral midpoint to minimize the fastest phase
    double shift = 0.0;
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h0, Eigen::EigenvaluesOnly);
        shift = 0.5 * (es.eigenvalues().minCoeff() + es.eigenvalues().maxCoeff());
    }
    SchrodingerRhs rhs(h0, dipole, drive, shift);

    const double span = drive.t_end - drive.t_start;
    const double dir = span > 0 ? 1.0 : -1.0;
    const double h_min = 1e-14 * std::abs(span);

    boost::numeric::odeint::runge_kutta_fehlberg78<State, double, State, double,
                                                   boost::numeric::odeint::vector_space_algebra>
        stepper;

    Trajectory traj;
    traj.times.resize(sample_count);
    traj.states.resize(psi0.size(), sample_count);
    for (int i = 0; i < sample_count; ++i)
        traj.times(i) = drive.t_start + span * double(i) / (sample_count - 1);

    State x = psi0;
    State x_new(psi0.size()), err(psi0.size());
    double t = drive.t_start;
    double h = dir * std::min(1e-3, std::abs(span) / sample_count);

    traj.states.col(0) = x;
    for (int sample = 1; sample < sample_count; ++sample) {
        const double t_target = traj.times(sample);
        while (dir * (t_target - t) > 0) {
            if (dir * (t + h) > dir * t_target) h = t_target - t;
            if (std::abs(h) < h_min)
                throw std::runtime_error("evolve: step size underflow at t=" +
                                         std::to_string(t));
            stepper.do_step(rhs, x, t, x_new, h, err);
            const double err_norm = err.norm();
            const double tol_step = tol * std::abs(h);
            if (err_norm <= tol_step) {
                t += h;
                x.swap(x_new);
                const double grow =
                    err_norm > 0 ? 0.9 * std::pow(tol_step / err_norm, 1.0 / kOrder) : 5.0;
                h *= std::clamp(grow, 0.2, 5.0);
            } else {
                h *= std::max(0.2, 0.9 * std::pow(tol_step / err_norm, 1.0 / kOrder));
            }
        }
        traj.states.col(sample) = x;
        const double drift = std::abs(x.norm() - 1.0);
        traj.norm_drift = std::max(traj.norm_drift, drift);
        if (traj.norm_drift > kNormGate)
            throw std::runtime_error(
                "evolve: norm drift " + std::to_string(traj.norm_drift) +
                " exceeds 1e-6; tighten tol");
    }
    return traj;
}

Eigen::VectorXd PopulationHistory::series(const StateLabel& l) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == l) return populations.row(i);
    throw std::invalid_argument("PopulationHistory: unknown label '" + l.str() + "'");
}

double PopulationHistory::final_population(const StateLabel& l) const {
    const Eigen::VectorXd s = series(l);
    return s(s.size() - 1);
}

PopulationHistory project_populations(const Trajectory& traj, const LabeledSpectrum& spec,
                                      const std::vector<StateLabel>& labels) {
    const int n_samples = static_cast<int>(traj.times.size());
    PopulationHistory hist;
    hist.times = traj.times;
    hist.labels = labels;
    hist.populations.resize(labels.size(), n_samples);
    const int full_dim = spec.basis.dimension();
    if (traj.states.rows() != full_dim)
        throw std::invalid_argument("project_populations: trajectory/basis dimension mismatch");
    for (std::size_t li = 0; li < labels.size(); ++li) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(full_dim);
        const Eigen::VectorXcd sub = spec.vector(labels[li]);
        for (std::size_t r = 0; r < spec.kept.size(); ++r) v(spec.kept[r]) = sub(r);
        for (int s = 0; s < n_samples; ++s)
            hist.populations(li, s) = std::norm(v.dot(traj.states.col(s)));
    }
    return hist;
}

Eigen::VectorXd photon_distribution(const Eigen::VectorXcd& psi, const Basis& basis) {
    if (psi.size() != basis.dimension())
        throw std::invalid_argument("photon_distribution: dimension mismatch");
    Eigen::VectorXd p = Eigen::VectorXd::Zero(basis.n_max() + 1);
    for (int i = 0; i < basis.dimension(); ++i)
        p(basis.state(i).photon_n) += std::norm(psi(i));
    return p;
}

TruncationReport truncation_check(const Trajectory& traj, const Basis& basis,
                                  double threshold) {
    TruncationReport rep;
    for (int s = 0; s < traj.times.size(); ++s) {
        double top = 0.0;
        for (int i = 0; i < basis.dimension(); ++i) {
            const int n = basis.state(i).photon_n;
            if (n >= basis.n_max() - 1) top += std::norm(traj.states(i, s));
        }
        rep.max_top_occupation = std::max(rep.max_top_occupation, top);
    }
    rep.pass = rep.max_top_occupation <= threshold;
    return rep;
}

} // namespace uscpt
