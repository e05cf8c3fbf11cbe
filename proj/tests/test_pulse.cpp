#include "doctest.h"

#include <cmath>

#include "uscpt/pulse.hpp"

using namespace uscpt;

TEST_CASE("gaussian envelope") {
    const PulseSpec p{0.4, 2.0, 5.0, 1.5, {}};
    CHECK(envelope(p, 2.0) == doctest::Approx(0.4));
    CHECK(envelope(p, 2.0 + 5.0) == doctest::Approx(0.4 / std::exp(1.0)));
    CHECK(envelope(p, 2.0 - 5.0) == doctest::Approx(0.4 / std::exp(1.0)));

    SUBCASE("pulse area matches a numeric quadrature") {
        // Simpson on a wide window as the independent oracle
        const double a = 2.0 - 40.0, b = 2.0 + 40.0;
        const int n = 20000;
        double sum = 0.0;
        const double h = (b - a) / n;
        for (int i = 0; i <= n; ++i) {
            const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            sum += w * envelope(p, a + i * h);
        }
        sum *= h / 3.0;
        CHECK(std::abs(sum - pulse_area(p)) < 1e-10);
    }
}

TEST_CASE("two-tone field value") {
    DriveConfig cfg;
    cfg.stokes = PulseSpec{0.1, -7.5, 10.0, 2.0, {}};
    cfg.pump = PulseSpec{0.05, 7.5, 10.0, 4.0, {}};
    cfg.tau = 7.5;
    cfg.t_start = -40.0;
    cfg.t_end = 40.0;
    cfg.validate();

    SUBCASE("zero peaks give zero field") {
        DriveConfig off = cfg;
        off.pump.peak = off.stokes.peak = 0.0;
        for (double t : {-20.0, 0.0, 13.0}) CHECK(field_value(off, t) == 0.0);
    }

    SUBCASE("single tone at center with zero carrier phase") {
        DriveConfig one = cfg;
        one.pump.peak = 0.0;
        one.stokes.center = 0.0;
        one.tau = 0.0;
        CHECK(field_value(one, 0.0) == doctest::Approx(0.1));
    }

    SUBCASE("bounded by the sum of peaks") {
        for (double t = -40.0; t <= 40.0; t += 0.37)
            CHECK(std::abs(field_value(cfg, t)) <= 0.15 + 1e-12);
    }

    SUBCASE("window must cover the pulses") {
        DriveConfig bad = cfg;
        bad.t_end = 20.0;
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
        DriveConfig swapped = cfg;
        std::swap(swapped.pump.center, swapped.stokes.center);
        CHECK_THROWS_AS(swapped.validate(), std::invalid_argument);
    }
}

TEST_CASE("stark shift") {
    // two-level far-detuned check against the textbook AC-Stark form
    LabeledSpectrum spec{Basis(0, two_level_set()), {0, 1}, Eigen::VectorXd(2),
                         Eigen::MatrixXcd::Identity(2, 2),
                         {StateLabel::product(0, Level::g), StateLabel::product(0, Level::e)}};
    spec.energies << 0.0, 1.0;
    OperatorMatrix dip = OperatorMatrix::Zero(2, 2);
    dip(0, 1) = dip(1, 0) = 0.7;
    const StarkModel model = build_stark_model(spec, dip);

    const double w = 0.3, peak = 0.02;
    const PulseSpec field{peak, 0.0, 10.0, w, {}};
    const double shift = stark_shift(model, StateLabel::product(0, Level::g), field, {}, 0.0);
    const double delta = 1.0 - 0.0; // E_e - E_g
    const double expect = 0.7 * 0.7 * peak * peak / 4.0 * 2.0 * delta / (delta * delta - w * w);
    CHECK(shift == doctest::Approx(expect).epsilon(1e-12));

    SUBCASE("zero field gives zero shift") {
        const PulseSpec off{0.0, 0.0, 10.0, w, {}};
        CHECK(stark_shift(model, StateLabel::product(0, Level::g), off, {}, 0.0) == 0.0);
    }

    SUBCASE("strictly quadratic in the field") {
        const PulseSpec twice{2 * peak, 0.0, 10.0, w, {}};
        const double s2 = stark_shift(model, StateLabel::product(0, Level::g), twice, {}, 0.0);
        CHECK(s2 == doctest::Approx(4.0 * shift).epsilon(1e-14));
    }

    SUBCASE("excluded pairs and resonant pairs are skipped") {
        const double none = stark_shift(
            model, StateLabel::product(0, Level::g), field,
            {{StateLabel::product(0, Level::g), StateLabel::product(0, Level::e)}}, 0.0);
        CHECK(none == 0.0);
        const PulseSpec resonant{peak, 0.0, 10.0, 1.0, {}};
        CHECK(stark_shift(model, StateLabel::product(0, Level::g), resonant, {}, 0.0) == 0.0);
    }
}

TEST_CASE("compensation phase law") {
    SUBCASE("zero detuning gives zero phase") {
        const PhaseLaw law = gaussian_integral_phase_law(0.0, -5.0, 10.0, -40.0);
        for (double t : {-40.0, -5.0, 12.0}) CHECK(law(t) == 0.0);
    }

    SUBCASE("antisymmetric under delta -> -delta") {
        const PhaseLaw plus = gaussian_integral_phase_law(3e-4, -5.0, 10.0, -40.0);
        const PhaseLaw minus = gaussian_integral_phase_law(-3e-4, -5.0, 10.0, -40.0);
        for (double t = -40.0; t <= 40.0; t += 2.0)
            CHECK(plus(t) == doctest::Approx(-minus(t)).epsilon(1e-14));
    }

    SUBCASE("derivative cancels the gaussian-squared detuning") {
        const double d0 = 2e-3, c = -7.5, T = 10.0, t0 = -40.0;
        const PhaseLaw law = gaussian_integral_phase_law(d0, c, T, t0);
        for (double t = -30.0; t <= 30.0; t += 1.3) {
            const double h = 1e-5;
            const double dphi = (law(t + h) - law(t - h)) / (2 * h);
            const double delta = d0 * std::exp(-2.0 * (t - c) * (t - c) / (T * T));
            CHECK(std::abs(dphi + delta) < 1e-9);
        }
    }
}
