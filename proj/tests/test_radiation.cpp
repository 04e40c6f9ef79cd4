#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "wprad/radiation.hpp"

using Catch::Approx;
using namespace wprad;

namespace {

const double omega_b_800 = 2.0 * pi * c0 / 800e-9;

RadiationModeSpec sync_mode(double v0, double L = 1e-4) {
    return RadiationModeSpec::make(1e5, 1.0, 1.0, L, [v0](double w) { return w / v0; });
}

GaussianWavepacket drive_packet() {
    return GaussianWavepacket::make(RelativisticElectron::from_beta(0.7),
                                    0.22 * (4.0 / 3.0) * 1e-6);
}

} // namespace

TEST_CASE("mode and wave validation") {
    REQUIRE_THROWS_AS(RadiationModeSpec::make(1.0, 0.0, 1.0, 1e-4, [](double w) { return w; }),
                      validation_error);
    REQUIRE_THROWS_AS(RadiationModeSpec::make(1.0, 1.0, 1.0, 0.0, [](double w) { return w; }),
                      validation_error);
    REQUIRE_THROWS_AS(RadiationModeSpec::make(1.0, 1.0, 1.5, 1e-4, [](double w) { return w; }),
                      validation_error);
    REQUIRE_THROWS_AS(RadiationModeSpec::make(1.0, 1.0, 1.0, 1e-4, nullptr),
                      validation_error);
    REQUIRE_THROWS_AS(InputWave::make(-1.0, omega_b_800, 0.0), validation_error);
    REQUIRE_THROWS_AS(InputWave::make(1.0, 0.0, 0.0), validation_error);
    auto fs = RadiationModeSpec::free_space(1.0, 1.0, 1.0, 1e-4);
    REQUIRE(fs.qz_of_omega(3e15) == Approx(3e15 / c0).epsilon(1e-15));
}

TEST_CASE("synchronous mode has zero detuning everywhere") {
    double v0 = 0.7 * c0;
    auto mode = sync_mode(v0);
    for (double w : {1e14, 1e15, 4e15})
        REQUIRE(detuning_theta(mode, v0, w) == Approx(0.0).margin(1e-20));
    REQUIRE_THROWS_AS(detuning_theta(mode, v0, 0.0), validation_error);
}

TEST_CASE("finite size suppresses spontaneous power by the full exponent") {
    double v0 = 0.7 * c0;
    auto mode = sync_mode(v0);
    double st = 2e-15;
    for (double w : {2e14, 8e14, 3e15}) {
        double ratio = spontaneous_spectrum_unmodulated(mode, {st, 0.0}, v0, w) /
                       spontaneous_spectrum_unmodulated(mode, {0.0, 0.0}, v0, w);
        REQUIRE(ratio == Approx(std::exp(-w * w * st * st)).epsilon(1e-12));
    }
}

TEST_CASE("finite size suppresses stimulated exchange by half the exponent") {
    double v0 = 0.7 * c0;
    auto mode = sync_mode(v0);
    auto wave = InputWave::make(2e4, omega_b_800, 0.0);
    double st = 1.5e-15;
    double ratio = stimulated_energy_unmodulated(mode, {st, 0.0}, v0, wave) /
                   stimulated_energy_unmodulated(mode, {0.0, 0.0}, v0, wave);
    double a = omega_b_800 * st;
    REQUIRE(ratio == Approx(std::exp(-0.5 * a * a)).epsilon(1e-12));
}

TEST_CASE("stimulated exchange follows the wave phase") {
    double v0 = 0.7 * c0;
    auto mode = sync_mode(v0);
    double w0 = stimulated_energy_unmodulated(mode, {0.0, 0.0}, v0,
                                              InputWave::make(2e4, omega_b_800, 0.0));
    double w_phi = stimulated_energy_unmodulated(mode, {0.0, 0.0}, v0,
                                                 InputWave::make(2e4, omega_b_800, 0.7));
    REQUIRE(w_phi == Approx(w0 * std::cos(0.7)).epsilon(1e-12));
    REQUIRE(w0 == Approx(q_e * 2e4 * mode.L).epsilon(1e-12));
}

TEST_CASE("sinc lineshape zeros at the detuned orders") {
    double v0 = 0.7 * c0;
    double L = 1e-4;
    auto mode = RadiationModeSpec::free_space(1e5, 1.0, 1.0, L);
    // theta(omega) = omega (1/v0 - 1/c); first zero at theta L = 2 pi.
    double slope = 1.0 / v0 - 1.0 / c0;
    double w_zero = 2.0 * pi / (slope * L);
    double peak = spontaneous_spectrum_unmodulated(mode, {0.0, 0.0}, v0, 0.01 * w_zero);
    REQUIRE(spontaneous_spectrum_unmodulated(mode, {0.0, 0.0}, v0, w_zero) < 1e-25 * peak);
}

TEST_CASE("emission equals exchange at synchronism for any packet size") {
    double v0 = 0.7 * c0;
    auto mode = sync_mode(v0);
    auto wave = InputWave::make(2e4, omega_b_800, 0.0);
    for (double st : {0.0, 2e-15, 8e-15}) {
        REQUIRE(einstein_residual(mode, {st, 0.0}, v0, wave, false) < 1e-12);
        REQUIRE(einstein_residual(mode, {st, 0.0}, v0, wave, true) < 1e-12);
    }
    auto detuned = RadiationModeSpec::free_space(1e5, 1.0, 1.0, 1e-4);
    REQUIRE_THROWS_AS(einstein_residual(detuned, {0.0, 0.0}, v0, wave), validation_error);
}

TEST_CASE("modulated spontaneous spectrum sits on the harmonic lines") {
    auto wp = drive_packet();
    auto spec = ModulationSpec::make(11.4, omega_b_800);
    double v0 = wp.el.v0;
    double t = 2.65e-11;
    auto bs = make_bunching_spectrum(wp, spec, t, 0.0, 6);
    auto mode = sync_mode(v0);
    for (int l = 1; l <= 3; ++l) {
        double got = spontaneous_spectrum_modulated(mode, bs, v0, l * bs.omega_b);
        double line = spontaneous_scale(mode) * std::norm(bs.B(l));
        REQUIRE(got == Approx(line).epsilon(1e-4));  // neighbor lines are e^-10.9 down
    }
    REQUIRE_FALSE(harmonic_lines_overlap(bs));
}

TEST_CASE("unmodulated limit of the modulated spectrum") {
    auto wp = drive_packet();
    auto off = ModulationSpec::make(0.0, omega_b_800);
    double v0 = wp.el.v0;
    double t = 1e-11;
    auto bs = make_bunching_spectrum(wp, off, t, 0.0, 4);
    auto mode = sync_mode(v0);
    for (double w : {5e14, omega_b_800, 3e15})
        REQUIRE(spontaneous_spectrum_modulated(mode, bs, v0, w) ==
                Approx(spontaneous_spectrum_unmodulated(mode, {bs.sigma_t, 0.0}, v0, w))
                    .epsilon(1e-12));
}

TEST_CASE("modulated stimulated exchange is linear in the drive field") {
    auto wp = drive_packet();
    auto spec = ModulationSpec::make(11.4, omega_b_800);
    double v0 = wp.el.v0;
    auto bs = make_bunching_spectrum(wp, spec, 2.65e-11, 0.0, 6);
    auto mode = sync_mode(v0);
    double w1 = stimulated_energy_modulated(mode, bs, v0, InputWave::make(1e4, omega_b_800, 0.3));
    double w2 = stimulated_energy_modulated(mode, bs, v0, InputWave::make(2e4, omega_b_800, 0.3));
    REQUIRE(w2 == Approx(2.0 * w1).epsilon(1e-12));
}

TEST_CASE("energy decomposition is exact bookkeeping") {
    cplx cin(0.3, -1.2), dc(-0.7, 0.45);
    auto d = emission_decomposition(cin, dc);
    REQUIRE(d.total() == Approx(std::norm(cin + dc)).epsilon(1e-14));
    REQUIRE(d.in_wave == Approx(std::norm(cin)).epsilon(1e-14));
    REQUIRE(d.spontaneous == Approx(std::norm(dc)).epsilon(1e-14));
}

TEST_CASE("input wave spectral amplitude peaks at its carrier") {
    double v0 = 0.7 * c0;
    auto mode = sync_mode(v0);
    auto wave = InputWave::make(2e4, omega_b_800, 0.0);
    double T = 1e-11;
    REQUIRE(input_wave_spectral_amplitude(wave, mode, v0, T, omega_b_800) ==
            Approx(0.5 * wave.E_0 * T).epsilon(1e-12));
    REQUIRE(std::abs(input_wave_spectral_amplitude(wave, mode, v0, T,
                                                   omega_b_800 + 2.0 * pi / T)) <
            1e-10 * wave.E_0 * T);
    REQUIRE_THROWS_AS(input_wave_spectral_amplitude(wave, mode, v0, 1e-15, omega_b_800),
                      validation_error);
}
