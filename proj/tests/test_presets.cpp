#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "wprad/presets.hpp"

using Catch::Approx;
using namespace wprad;

TEST_CASE("every preset resolves") {
    auto names = preset_names();
    REQUIRE(names.size() == 10);
    for (const auto& name : names) {
        INFO("preset " << name);
        auto sc = resolve_scenario(preset_config(name));
        REQUIRE(sc.el.gamma0 == Approx(1.4002800840280099).epsilon(1e-14));
        REQUIRE(sc.t_drift >= 0.0);
    }
    REQUIRE_THROWS_AS(preset_config("fig7"), validation_error);
    REQUIRE_THROWS_AS(parse_channel("bogus"), validation_error);
}

TEST_CASE("dispersed packets arrive at the target width") {
    auto sc = resolve_scenario(preset_config("fig5b"));
    REQUIRE_FALSE(sc.modulated);
    REQUIRE(sc.cfg.get_double("resolved.sigma_z_plane_over_lambda_G", 0.0) ==
            Approx(0.22).epsilon(1e-6));
    REQUIRE(sc.channel == MapChannel::quantum);
    REQUIRE(resolve_scenario(preset_config("fig5a")).channel == MapChannel::classical);
}

TEST_CASE("driven presets land near the quarter-period drift") {
    auto sc = resolve_scenario(preset_config("fig3"));
    REQUIRE(sc.modulated);
    double est = sc.cfg.get_double("resolved.t_opt_estimate_s", 0.0);
    double refined = sc.cfg.get_double("resolved.t_opt_refined_s", 0.0);
    REQUIRE(est == Approx(2.6478238238391374e-11).epsilon(1e-9));
    REQUIRE(refined == sc.t_drift);
    REQUIRE(refined / est > 1.05);
    REQUIRE(refined / est < 1.30);
    REQUIRE(sc.cfg.get_double("resolved.lambda_b_over_lambda_G", 0.0) ==
            Approx(0.6).epsilon(1e-12));
    REQUIRE(sc.wigner_zeta_half == 1.9e-6);
    REQUIRE(sc.wigner_n_zeta == 640);
    REQUIRE(sc.wigner_n_pp == 448);
}

TEST_CASE("envelope length presets pin the micro-bunch count") {
    auto a = resolve_scenario(preset_config("fig6a"));
    auto b = resolve_scenario(preset_config("fig6b"));
    REQUIRE(a.cfg.get_double("resolved.N_b", 0.0) == Approx(3.0).margin(0.01));
    REQUIRE(b.cfg.get_double("resolved.N_b", 0.0) == Approx(25.0).margin(0.01));
    REQUIRE(a.channel == MapChannel::revival);
    REQUIRE(a.grating.m_range == std::vector<int>{1});
}

TEST_CASE("balance preset uses the synchronous mode at the drive frequency") {
    auto sc = resolve_scenario(preset_config("einstein"));
    REQUIRE(sc.mode_kind == "synchronous");
    REQUIRE(sc.t_drift == 0.0);
    REQUIRE(sc.wave_omega_0 == sc.mod.omega_b);
    auto mode = scenario_mode(sc);
    for (double omega : {1e14, 1e15, 3e15})
        REQUIRE(detuning_theta(mode, sc.el.v0, omega) == 0.0);
}

TEST_CASE("pulse preset carries the ensemble parameters") {
    auto sc = resolve_scenario(preset_config("appendixD"));
    REQUIRE(sc.pulse.N == 1000);
    REQUIRE(sc.pulse.sigma_pulse == 1e-13);
    REQUIRE(sc.pulse.rng_seed == 20240817);
    REQUIRE(sc.n_trials == 500);
    REQUIRE(sc.mode_kind == "synchronous");
}

TEST_CASE("preset map axes satisfy the resolution rule") {
    for (const char* name : {"fig5a", "fig5c", "fig5d", "fig6a", "fig6b"}) {
        INFO("preset " << name);
        auto sc = resolve_scenario(preset_config(name));
        REQUIRE(sc.has_axes);
        REQUIRE_NOTHROW(validate_map_axes(sc.grating, sc.axes));
    }
    REQUIRE(resolve_scenario(preset_config("fig4")).l_max == 5);
}

TEST_CASE("resolved configs replay to the same scenario") {
    auto sc = resolve_scenario(preset_config("fig4"));
    auto again = resolve_scenario(sc.cfg);
    REQUIRE(again.t_drift == sc.t_drift);
    REQUIRE(again.plane.sigma_t == sc.plane.sigma_t);
    REQUIRE(again.mod.omega_b == sc.mod.omega_b);
}
