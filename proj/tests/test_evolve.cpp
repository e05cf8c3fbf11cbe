#include "doctest.h"

#include <cmath>

#include "uscpt/evolve.hpp"

using namespace uscpt;

namespace {

// drive window with no field
DriveConfig quiet_window(double t0, double t1) {
    DriveConfig cfg;
    cfg.stokes = PulseSpec{0.0, 0.5 * (t0 + t1), 1.0, 0.0, {}};
    cfg.pump = PulseSpec{0.0, 0.5 * (t0 + t1), 1.0, 0.0, {}};
    cfg.t_start = t0;
    cfg.t_end = t1;
    return cfg;
}

} // namespace

TEST_CASE("drive off: eigenstate populations stationary") {
    const Basis b(6, two_level_set());
    const ModelParams p = ModelParams::rabi(1.0, 0.25, 0.25);
    const OperatorMatrix h = rabi_hamiltonian(b, p);
    const LabeledSpectrum spec = label_spectrum(Scheme::Rabi, b, p);
    const OperatorMatrix d = OperatorMatrix::Zero(b.dimension(), b.dimension());

    Eigen::VectorXcd psi0 = spec.vector(StateLabel::doublet(1, -1));
    const Trajectory traj = evolve(h, d, quiet_window(0.0, 50.0), psi0, 1e-10, 200);
    const PopulationHistory hist =
        project_populations(traj, spec, {StateLabel::doublet(1, -1), StateLabel::ground()});
    for (int s = 0; s < hist.times.size(); ++s) {
        CHECK(std::abs(hist.populations(0, s) - 1.0) <= 1e-8);
        CHECK(hist.populations(1, s) <= 1e-8);
    }
    CHECK(traj.norm_drift <= 1e-6);
}

TEST_CASE("resonant two-level rabi oscillation") {
    // bare two-level atom (vacuum-only mode), drive on the e-g dipole at
    // carrier epsilon: population oscillates at Omega = W within O(W/eps)
    const Basis b(0, two_level_set());
    const ModelParams p = ModelParams::rabi(1.0, 0.0, 0.0);
    const OperatorMatrix h = rabi_hamiltonian(b, p);
    const OperatorMatrix d = atomic_transition(b, Level::g, Level::e) +
                             atomic_transition(b, Level::e, Level::g);
    const double w = 0.02;
    const double t_half = M_PI / w; // half rabi period
    DriveConfig cfg;
    cfg.stokes = PulseSpec{w, 0.0, 1e6, 1.0, {}}; // effectively constant envelope
    cfg.pump = PulseSpec{0.0, 0.0, 1e6, 0.0, {}};
    cfg.t_start = 0.0;
    cfg.t_end = t_half;

    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(2);
    psi0(b.index(0, Level::g)) = 1.0;
    const Trajectory traj = evolve(h, d, cfg, psi0, 1e-10, 400);
    const double pe = std::norm(traj.states(b.index(0, Level::e), traj.times.size() - 1));
    CHECK(pe == doctest::Approx(1.0).epsilon(0.05)); // RWA corrections O(w/eps)
}

TEST_CASE("time reversal") {
    const Basis b(5, lambda_level_set());
    const ModelParams p = ModelParams::lambda_scheme(1.0, 4.0, 0.25, 0.25, 0.1, 0.1);
    const OperatorMatrix h = lambda_hamiltonian(b, p);
    const OperatorMatrix d = drive_operator(b, DriveScheme::LambdaLadder, 0.4);

    DriveConfig cfg;
    cfg.stokes = PulseSpec{0.05, -15.0, 20.0, 2.0, {}};
    cfg.pump = PulseSpec{0.03, 15.0, 20.0, 4.0, {}};
    cfg.tau = 15.0;
    cfg.t_start = -80.0;
    cfg.t_end = 80.0;

    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(b.dimension());
    psi0(b.index(0, Level::u)) = 1.0;
    const Trajectory fwd = evolve(h, d, cfg, psi0, 1e-11, 100);

    DriveConfig back = cfg;
    back.t_start = 80.0;
    back.t_end = -80.0;
    const Eigen::VectorXcd psi1 = fwd.states.col(fwd.times.size() - 1);
    const Trajectory rev = evolve(h, d, back, psi1 / psi1.norm(), 1e-11, 100);
    const std::complex<double> overlap = psi0.dot(rev.states.col(rev.times.size() - 1));
    CHECK(std::norm(overlap) >= 1.0 - 1e-6);
}

TEST_CASE("energy-time rescaling invariance") {
    const Basis b(4, two_level_set());
    const ModelParams p = ModelParams::rabi(1.0, 0.2, 0.2);
    const OperatorMatrix h = rabi_hamiltonian(b, p);
    const OperatorMatrix d = atomic_transition(b, Level::g, Level::e) +
                             atomic_transition(b, Level::e, Level::g);
    DriveConfig cfg;
    cfg.stokes = PulseSpec{0.05, 0.0, 30.0, 1.1, {}};
    cfg.pump = PulseSpec{0.0, 0.0, 30.0, 0.0, {}};
    cfg.t_start = -90.0;
    cfg.t_end = 90.0;
    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(b.dimension());
    psi0(0) = 1.0;
    const Trajectory base = evolve(h, d, cfg, psi0, 1e-12, 60);

    const double lam = 2.7;
    DriveConfig scaled = cfg;
    scaled.stokes = PulseSpec{0.05 * lam, 0.0, 30.0 / lam, 1.1 * lam, {}};
    scaled.pump = PulseSpec{0.0, 0.0, 30.0 / lam, 0.0, {}};
    scaled.t_start = cfg.t_start / lam;
    scaled.t_end = cfg.t_end / lam;
    const Trajectory resc = evolve(lam * h, d, scaled, psi0, 1e-12, 60);

    for (int s = 0; s < base.times.size(); ++s)
        for (int i = 0; i < b.dimension(); ++i)
            CHECK(std::abs(std::norm(base.states(i, s)) - std::norm(resc.states(i, s))) <=
                  1e-8);
}

TEST_CASE("self convergence under tol refinement") {
    const Basis b(4, two_level_set());
    const OperatorMatrix h = rabi_hamiltonian(b, ModelParams::rabi(1.0, 0.2, 0.2));
    const OperatorMatrix d = atomic_transition(b, Level::g, Level::e) +
                             atomic_transition(b, Level::e, Level::g);
    DriveConfig cfg;
    cfg.stokes = PulseSpec{0.08, 0.0, 20.0, 1.0, {}};
    cfg.pump = PulseSpec{0.0, 0.0, 20.0, 0.0, {}};
    cfg.t_start = -60.0;
    cfg.t_end = 60.0;
    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(b.dimension());
    psi0(0) = 1.0;

    const Trajectory ref = evolve(h, d, cfg, psi0, 1e-13, 40);
    auto max_err = [&](double tol) {
        const Trajectory t = evolve(h, d, cfg, psi0, tol, 40);
        double m = 0;
        for (int s = 0; s < t.times.size(); ++s)
            m = std::max(m, (t.states.col(s) - ref.states.col(s)).norm());
        return m;
    };
    const double coarse = max_err(3e-8);
    const double fine = max_err(3e-9);
    CHECK(fine < coarse);
    MESSAGE("errors ", coarse, " -> ", fine);
}

TEST_CASE("photon distribution") {
    const Basis b(5, vee_level_set());
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(b.dimension());
    psi(b.index(2, Level::u)) = 1.0;
    const Eigen::VectorXd pd = photon_distribution(psi, b);
    CHECK(pd(2) == doctest::Approx(1.0));
    CHECK(pd.sum() == doctest::Approx(1.0));

    psi.setZero();
    psi(b.index(0, Level::u)) = std::complex<double>(0, 1);
    CHECK(photon_distribution(psi, b)(0) == doctest::Approx(1.0));
}

TEST_CASE("truncation guard") {
    const Basis b(2, two_level_set());
    const OperatorMatrix h = rabi_hamiltonian(b, ModelParams::rabi(1.0, 0.0, 0.0));
    const OperatorMatrix d = OperatorMatrix::Zero(b.dimension(), b.dimension());

    SUBCASE("undriven ground state passes") {
        Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(b.dimension());
        psi0(b.index(0, Level::g)) = 1.0;
        const Trajectory traj = evolve(h, d, quiet_window(0, 10), psi0, 1e-9, 50);
        CHECK(truncation_check(traj, b).pass);
    }

    SUBCASE("designed violation fails") {
        Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(b.dimension());
        psi0(b.index(2, Level::g)) = 1.0; // sits on the top Fock level
        const Trajectory traj = evolve(h, d, quiet_window(0, 10), psi0, 1e-9, 50);
        CHECK_FALSE(truncation_check(traj, b).pass);
    }
}

TEST_CASE("evolve input validation") {
    const Basis b(2, two_level_set());
    const OperatorMatrix h = rabi_hamiltonian(b, ModelParams::rabi(1.0, 0.1, 0.1));
    const OperatorMatrix d = OperatorMatrix::Zero(b.dimension(), b.dimension());
    Eigen::VectorXcd bad = Eigen::VectorXcd::Zero(b.dimension());
    bad(0) = 0.7;
    CHECK_THROWS_AS(evolve(h, d, quiet_window(0, 1), bad), std::invalid_argument);
    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(b.dimension());
    psi0(0) = 1.0;
    CHECK_THROWS_AS(evolve(h, OperatorMatrix::Zero(3, 3), quiet_window(0, 1), psi0),
                    std::invalid_argument);
}
