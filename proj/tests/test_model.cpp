#include "doctest.h"

#include <Eigen/Eigenvalues>

#include "uscpt/model.hpp"

using namespace uscpt;

namespace {

double commutator_norm(const OperatorMatrix& a, const OperatorMatrix& b) {
    return (a * b - b * a).cwiseAbs().maxCoeff();
}

} // namespace

TEST_CASE("rabi hamiltonian limits") {
    const Basis b(12, two_level_set());

    SUBCASE("uncoupled spectrum is the product spectrum") {
        const OperatorMatrix h = rabi_hamiltonian(b, ModelParams::rabi(1.0, 0.0, 0.0));
        CHECK(h.isDiagonal(0.0));
        CHECK(h(b.index(3, Level::e), b.index(3, Level::e)).real() == doctest::Approx(4.0));
    }

    SUBCASE("JC doublet at N=1") {
        const OperatorMatrix h = rabi_hamiltonian(b, ModelParams::rabi(1.0, 0.1, 0.0));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
        // lowest three: 0, 1 -+ 0.1
        CHECK(es.eigenvalues()(0) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(es.eigenvalues()(1) == doctest::Approx(0.9));
        CHECK(es.eigenvalues()(2) == doctest::Approx(1.1));
    }

    SUBCASE("Bloch-Siegert depression of the ground state") {
        const Basis big(40, two_level_set());
        const OperatorMatrix h = rabi_hamiltonian(big, ModelParams::rabi(1.0, 0.25, 0.25));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
        CHECK(es.eigenvalues()(0) < 0.0);
        // converged against a larger truncation
        const Basis bigger(48, two_level_set());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es2(
            rabi_hamiltonian(bigger, ModelParams::rabi(1.0, 0.25, 0.25)));
        CHECK(std::abs(es.eigenvalues()(0) - es2.eigenvalues()(0)) < 1e-12);
    }

    SUBCASE("textbook form at g_c = g") {
        const ModelParams p = ModelParams::rabi(1.0, 0.25, 0.25);
        const OperatorMatrix h = rabi_hamiltonian(b, p);
        const OperatorMatrix a = annihilation(b);
        const OperatorMatrix sx = atomic_transition(b, Level::g, Level::e) +
                                  atomic_transition(b, Level::e, Level::g);
        OperatorMatrix ref = p.g * (a + a.adjoint()) * sx;
        for (int i = 0; i < b.dimension(); ++i) {
            const BasisState s = b.state(i);
            ref(i, i) += s.photon_n + (s.atom_level == Level::e ? p.epsilon : 0.0);
        }
        CHECK((h - ref).cwiseAbs().maxCoeff() < 1e-14);
    }

    SUBCASE("three-level basis rejected") {
        const Basis b3(2, lambda_level_set());
        CHECK_THROWS_AS(rabi_hamiltonian(b3, ModelParams::rabi(1.0, 0.1, 0.1)),
                        std::invalid_argument);
    }
}

TEST_CASE("lambda hamiltonian structure") {
    const Basis b(6, lambda_level_set());
    const ModelParams p = ModelParams::lambda_scheme(1.0, 4.0, 0.25, 0.25, 0.0, 0.0);
    const OperatorMatrix h = lambda_hamiltonian(b, p);
    CHECK(hermiticity_defect(h) < 1e-12);

    SUBCASE("decoupled ancilla ladder") {
        CHECK(h(b.index(0, Level::u), b.index(0, Level::u)).real() == doctest::Approx(-4.0));
        CHECK(h(b.index(2, Level::u), b.index(2, Level::u)).real() == doctest::Approx(-2.0));
        // no matrix element out of |n u>
        for (int i = 0; i < b.dimension(); ++i) {
            const BasisState s = b.state(i);
            if (s.atom_level != Level::u)
                CHECK(std::abs(h(i, b.index(1, Level::u))) == 0.0);
        }
    }

    SUBCASE("restriction to the e-g block equals the rabi hamiltonian") {
        const Basis b2(6, two_level_set());
        const OperatorMatrix hr = rabi_hamiltonian(b2, ModelParams::rabi(1.0, 0.25, 0.25));
        for (int i = 0; i < b2.dimension(); ++i)
            for (int j = 0; j < b2.dimension(); ++j) {
                const BasisState si = b2.state(i), sj = b2.state(j);
                const std::complex<double> hij =
                    h(b.index(si.photon_n, si.atom_level), b.index(sj.photon_n, sj.atom_level));
                CHECK(std::abs(hij - hr(i, j)) < 1e-14);
            }
    }

    SUBCASE("parity conservation with stray coupling") {
        const ModelParams ps = ModelParams::lambda_scheme(1.0, 4.0, 0.25, 0.25, 0.1, 0.1);
        const OperatorMatrix hs = lambda_hamiltonian(b, ps);
        const OperatorMatrix pi = parity_operator(b, lambda_weights());
        CHECK(commutator_norm(hs, pi) < 1e-12);
    }

    SUBCASE("excitation number conserved without counterrotating terms") {
        const ModelParams pr = ModelParams::lambda_scheme(1.0, 4.0, 0.25, 0.0, 0.1, 0.0);
        const OperatorMatrix hr = lambda_hamiltonian(b, pr);
        const OperatorMatrix n = excitation_number(b, lambda_weights());
        CHECK(commutator_norm(hr, n) < 1e-12);
        // counterrotating terms break it
        CHECK(commutator_norm(h, n) > 0.1);
    }
}

TEST_CASE("vee hamiltonian structure") {
    const Basis b(6, vee_level_set());

    SUBCASE("decoupled |0u> eigenstate") {
        const ModelParams p = ModelParams::vee_scheme(1.0, 1.5, 0.25, 0.0, 0.0, 0.0);
        const OperatorMatrix h = vee_hamiltonian(b, p);
        const int i = b.index(0, Level::u);
        CHECK(h(i, i).real() == doctest::Approx(3.5));
        Eigen::VectorXcd e0u = Eigen::VectorXcd::Zero(b.dimension());
        e0u(i) = 1.0;
        CHECK((h * e0u - 3.5 * e0u).norm() < 1e-14);
    }

    SUBCASE("u level at (2+alpha) epsilon") {
        const ModelParams p = ModelParams::vee_scheme(1.0, 1.5, 0.25, 0.25, 0.0, 0.0);
        CHECK(p.epsilon_prime == doctest::Approx(2.5));
        const OperatorMatrix h = vee_hamiltonian(b, p);
        CHECK(h(b.index(0, Level::u), b.index(0, Level::u)).real() == doctest::Approx(3.5));
    }

    SUBCASE("hermitian and parity conserving with stray coupling") {
        const double gp = 2.0 / 3.0 * 0.25;
        const ModelParams p = ModelParams::vee_scheme(1.0, 1.5, 0.25, 0.25, gp, gp);
        const OperatorMatrix h = vee_hamiltonian(b, p);
        CHECK(hermiticity_defect(h) < 1e-12);
        CHECK(commutator_norm(h, parity_operator(b, vee_weights())) < 1e-12);
    }
}

TEST_CASE("model params consistency") {
    CHECK_THROWS_AS(ModelParams::rabi(1.0, -0.1, 0.0), std::invalid_argument);
    ModelParams p = ModelParams::lambda_scheme(1.0, 4.0, 0.25, 0.25, 0.1, 0.1);
    CHECK(p.eta == doctest::Approx(0.4));
    CHECK(p.alpha == doctest::Approx(3.0));
    p.eta = 0.9; // now inconsistent with g_prime/g
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("drive operators") {
    const Basis bl(3, lambda_level_set());

    SUBCASE("ug dipole moves |0g> to |0u>") {
        const OperatorMatrix d = drive_operator(bl, DriveScheme::UGOnly);
        Eigen::VectorXcd in = Eigen::VectorXcd::Zero(bl.dimension());
        in(bl.index(0, Level::g)) = 1.0;
        const Eigen::VectorXcd out = d * in;
        CHECK(std::abs(out(bl.index(0, Level::u))) == doctest::Approx(1.0));
    }

    SUBCASE("lambda ladder matrix elements") {
        const OperatorMatrix d = drive_operator(bl, DriveScheme::LambdaLadder, 0.4);
        CHECK(d(bl.index(0, Level::g), bl.index(0, Level::e)).real() == doctest::Approx(2.5));
        CHECK(d(bl.index(0, Level::u), bl.index(0, Level::g)).real() == doctest::Approx(1.0));
        CHECK(hermiticity_defect(d) == 0.0);
    }

    SUBCASE("vee ladder matrix elements") {
        const Basis bv(3, vee_level_set());
        const OperatorMatrix d = drive_operator(bv, DriveScheme::VeeLadder, 2.0 / 3.0);
        CHECK(d(bv.index(0, Level::u), bv.index(0, Level::e)).real() == doctest::Approx(1.0));
        CHECK(d(bv.index(0, Level::e), bv.index(0, Level::g)).real() == doctest::Approx(1.5));
    }

    SUBCASE("ladder requires positive eta") {
        CHECK_THROWS_AS(drive_operator(bl, DriveScheme::LambdaLadder, 0.0),
                        std::invalid_argument);
    }
}
