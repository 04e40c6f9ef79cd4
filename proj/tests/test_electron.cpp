#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "wprad/electron.hpp"
#include "wprad/numeric.hpp"

using Catch::Approx;
using namespace wprad;

namespace {
RelativisticElectron el07() { return RelativisticElectron::from_beta(0.7); }
}

TEST_CASE("relativistic carrier quantities at beta = 0.7") {
    auto el = el07();
    REQUIRE(el.gamma0 == Approx(1.4002800840280099).epsilon(1e-14));
    REQUIRE(el.v0 == Approx(0.7 * c0).epsilon(1e-15));
    REQUIRE(el.p0 == Approx(2.676841461962999e-22).epsilon(1e-12));
    REQUIRE(el.m_star == Approx(2.5011154068587854e-30).epsilon(1e-12));
    REQUIRE(el.m_star == Approx(el.gamma0 * el.gamma0 * el.gamma0 * m_e).epsilon(1e-15));
}

TEST_CASE("electron validation") {
    REQUIRE_THROWS_AS(RelativisticElectron::from_beta(0.0), validation_error);
    REQUIRE_THROWS_AS(RelativisticElectron::from_beta(1.0), validation_error);
    REQUIRE_THROWS_AS(RelativisticElectron::from_beta(-0.5), validation_error);
}

TEST_CASE("quadratic dispersion tracks the exact branch near p0") {
    auto el = el07();
    for (double f : {0.999, 0.9995, 1.0005, 1.001}) {
        double p = f * el.p0;
        double rel = std::abs(el.energy_quadratic(p) - el.energy_exact(p)) / el.E0;
        REQUIRE(rel < 1e-8);
    }
    REQUIRE(el.energy_quadratic(el.p0) == Approx(el.energy_exact(el.p0)).epsilon(1e-15));
}

TEST_CASE("wavepacket widths and spreading rate") {
    auto wp = GaussianWavepacket::make(el07(), 1e-7);
    REQUIRE(wp.sigma_p0() == Approx(hbar / (2e-7)).epsilon(1e-15));
    REQUIRE(wp.sigma_t0() == Approx(1e-7 / wp.el.v0).epsilon(1e-15));
    REQUIRE(wp.xi() == Approx(2108203032.35).epsilon(1e-10));

    // sqrt(1 + 3) = 2: the width doubles after sqrt(3)/xi of drift.
    double t2 = std::sqrt(3.0) / wp.xi();
    REQUIRE(wp.sigma_z(t2) == Approx(2.0 * wp.sigma_z0).epsilon(1e-12));
    REQUIRE(wp.sigma_t(t2) == Approx(wp.sigma_z(t2) / wp.el.v0).epsilon(1e-15));
}

TEST_CASE("chirped packet contracts to the waist and re-expands") {
    auto el = el07();
    double t_w = 5e-11;
    double C = -t_w / (2.0 * el.m_star * hbar);
    auto wp = GaussianWavepacket::make(el, 1e-7, C);
    REQUIRE(wp.waist_time() == Approx(t_w).epsilon(1e-12));
    REQUIRE(wp.sigma_z(t_w) == Approx(wp.sigma_z0).epsilon(1e-14));
    REQUIRE(wp.sigma_z(0.0) > wp.sigma_z0);
    double x = 2e-11;
    REQUIRE(wp.sigma_z(t_w + x) == Approx(wp.sigma_z(t_w - x)).epsilon(1e-13));
}

TEST_CASE("drift solvers invert the width law") {
    auto wp = GaussianWavepacket::make(el07(), 1e-7);
    double target = 0.22 * (4.0 / 3.0) * 1e-6;
    double t = wp.drift_time_for_width(target);
    REQUIRE(wp.sigma_z(t) == Approx(target).epsilon(1e-10));
    REQUIRE(wp.drift_length_for_width(target) == Approx(wp.el.v0 * t).epsilon(1e-15));
    REQUIRE_THROWS_AS(wp.drift_time_for_width(0.5e-7), validation_error);
    REQUIRE(wp.drift_time_for_width(wp.sigma_z0) == Approx(0.0).margin(1e-30));
}

TEST_CASE("free wavefunction stays normalized while dispersing") {
    auto el = el07();
    for (double C : {0.0, -2e52}) {
        auto wp = GaussianWavepacket::make(el, 1e-7, C);
        for (double t : {0.0, 1.0 / wp.xi()}) {
            double sz = wp.sigma_z(t);
            int n = 4001;
            auto zs = linspace(el.v0 * t - 8.0 * sz, el.v0 * t + 8.0 * sz, std::size_t(n));
            std::vector<double> dens(zs.size());
            for (std::size_t i = 0; i < zs.size(); ++i)
                dens[i] = std::norm(wp.psi(zs[i], t));
            double h = zs[1] - zs[0];
            // Lab-frame sampling at v0 t ~ 0.1 m costs a few digits in z - v0 t.
            REQUIRE(simpson(dens, h) == Approx(1.0).epsilon(1e-7));
        }
    }
}

TEST_CASE("lab density equals the comoving envelope") {
    auto wp = GaussianWavepacket::make(el07(), 1e-7);
    double t = 2e-10;
    for (double zeta : {-1.5e-7, 0.0, 0.7e-7}) {
        double direct = std::norm(wp.psi(wp.el.v0 * t + zeta, t));
        REQUIRE(direct == Approx(wp.density_envelope(zeta, t)).epsilon(1e-10));
    }
}

TEST_CASE("plane view carries width and arrival time") {
    auto wp = GaussianWavepacket::make(el07(), 1e-7);
    auto pk = at_plane(wp, 3e-10, 2.5e-15);
    REQUIRE(pk.sigma_t == Approx(wp.sigma_t(3e-10)).epsilon(1e-15));
    REQUIRE(pk.t0e == 2.5e-15);
}

TEST_CASE("wavepacket validation") {
    REQUIRE_THROWS_AS(GaussianWavepacket::make(el07(), 0.0), validation_error);
    REQUIRE_THROWS_AS(GaussianWavepacket::make(el07(), -1e-7), validation_error);
}
