#pragma once

#include <string>
#include <vector>

#include "wprad/bunching.hpp"
#include "wprad/electron.hpp"
#include "wprad/ensemble.hpp"
#include "wprad/io.hpp"
#include "wprad/modulation.hpp"
#include "wprad/smith_purcell.hpp"

namespace wprad {

inline constexpr const char* tool_version = "0.1.0";

// ---------------------------------------------------------------------------
// Scenario: every module input resolved from a flat config. The resolver
// writes the derived SI quantities back into the config under resolved.* so
// manifests carry them.

struct Scenario {
    io::Config cfg;
    RelativisticElectron el;
    GaussianWavepacket wp;
    bool modulated = false;
    ModulationSpec mod;
    double t_drift = 0.0;
    double t0e = 0.0;
    PacketAtPlane plane;
    bool has_grating = false;
    GratingSpec grating;
    bool has_axes = false;
    MapAxes axes;
    MapChannel channel = MapChannel::classical;
    double theta_cut = 0.5 * pi;
    int l_max = 8;
    PulseSpec pulse;
    std::size_t n_trials = 500;
    double wigner_zeta_half = 0.0;
    int wigner_n_zeta = 256;
    int wigner_n_pp = 256;
    std::string mode_kind;  // synchronous | grating
    double mode_E_qz0 = 1e5;
    double mode_P_q = 1.0;
    double mode_M_perp = 1.0;
    double mode_L = 1e-4;
    double wave_E_0 = 2e4;
    double wave_omega_0 = 0.0;  // 0 resolves to omega_b
    double wave_phi_0 = 0.0;
    double einstein_sigma_t = 0.0;
};

inline MapChannel parse_channel(const std::string& s) {
    if (s == "classical") return MapChannel::classical;
    if (s == "quantum") return MapChannel::quantum;
    if (s == "modulated") return MapChannel::modulated;
    if (s == "revival") return MapChannel::revival;
    throw validation_error("config: unknown map.channel " + s);
}

inline Scenario resolve_scenario(io::Config cfg) {
    Scenario sc;
    sc.el = RelativisticElectron::from_beta(cfg.get_double("electron.beta0", 0.7));

    if (cfg.has("grating.lambda_G_m")) {
        sc.has_grating = true;
        sc.grating = GratingSpec::make(cfg.require_double("grating.lambda_G_m"),
                                       int(cfg.get_int("grating.N_G", 9)),
                                       cfg.get_int_list("grating.m_range", {1, 2, 3}));
    }

    double sigma_z0 = 0.0;
    if (cfg.has("packet.sigma_z0_m")) {
        sigma_z0 = cfg.require_double("packet.sigma_z0_m");
    } else if (cfg.has("packet.sigma_z0_over_lambda_G")) {
        if (!sc.has_grating)
            throw validation_error(
                "config: packet.sigma_z0_over_lambda_G needs grating.lambda_G_m");
        sigma_z0 = cfg.require_double("packet.sigma_z0_over_lambda_G") * sc.grating.lambda_G;
    } else {
        throw validation_error(
            "config: set packet.sigma_z0_m or packet.sigma_z0_over_lambda_G");
    }
    sc.wp = GaussianWavepacket::make(sc.el, sigma_z0, cfg.get_double("packet.chirp", 0.0));

    sc.modulated = cfg.get_bool("modulation.enabled", cfg.has("modulation.g2"));
    if (sc.modulated) {
        double omega_b;
        if (cfg.has("modulation.hbar_omega_b_eV"))
            omega_b = cfg.require_double("modulation.hbar_omega_b_eV") * eV / hbar;
        else
            omega_b = 2.0 * pi * c0 / cfg.get_double("modulation.lambda_b_m", 800e-9);
        sc.mod = ModulationSpec::make(cfg.get_double("modulation.g2", 11.4), omega_b,
                                      cfg.get_double("modulation.t0_mod_s", 0.0),
                                      int(cfg.get_int("modulation.n_max", -1)));
    }

    std::string dmode = cfg.get_string("drift.mode", "auto_optimal");
    if (dmode == "auto_optimal") {
        if (!sc.modulated)
            throw validation_error("config: drift.mode auto_optimal needs modulation");
        double est = optimal_drift_estimate(sc.wp, sc.mod);
        sc.t_drift = optimal_drift_refined(sc.wp, sc.mod);
        cfg.set("resolved.t_opt_estimate_s", est);
        cfg.set("resolved.t_opt_refined_s", sc.t_drift);
    } else if (dmode == "time") {
        sc.t_drift = cfg.require_double("drift.time_s");
    } else if (dmode == "length") {
        sc.t_drift = cfg.require_double("drift.length_m") / sc.el.v0;
    } else if (dmode == "solve_width") {
        if (!sc.has_grating)
            throw validation_error("config: drift.mode solve_width needs a grating");
        double target =
            cfg.require_double("drift.sigma_z_target_over_lambda_G") * sc.grating.lambda_G;
        sc.t_drift = sc.wp.drift_time_for_width(target);
    } else {
        throw validation_error("config: unknown drift.mode " + dmode);
    }

    sc.t0e = cfg.get_double("plane.t0e_s", 0.0);
    sc.plane = at_plane(sc.wp, sc.t_drift, sc.t0e);
    sc.theta_cut = cfg.get_double("cut.theta_rad", 0.5 * pi);
    sc.l_max = int(cfg.get_int("bunching.l_max", 8));

    if (sc.has_grating && cfg.has("map.n_lambda")) {
        sc.has_axes = true;
        double lg = sc.grating.lambda_G;
        sc.axes = make_axes(cfg.get_double("map.lambda_min_over_lambda_G", 0.2) * lg,
                            cfg.get_double("map.lambda_max_over_lambda_G", 2.6) * lg,
                            int(cfg.require_double("map.n_lambda")),
                            cfg.get_double("map.theta_min_rad", 0.125 * pi),
                            cfg.get_double("map.theta_max_rad", 0.875 * pi),
                            int(cfg.get_int("map.n_theta", 241)));
        sc.channel = parse_channel(cfg.get_string("map.channel", "classical"));
    }

    sc.pulse = PulseSpec::make(cfg.get_int("pulse.N", 1000),
                               cfg.get_double("pulse.sigma_pulse_s", 1e-13),
                               cfg.get_double("pulse.t0_pulse_s", 0.0),
                               std::uint64_t(cfg.get_int("pulse.seed", 20240817)));
    sc.n_trials = std::size_t(cfg.get_int("ensemble.n_trials", 500));

    sc.wigner_zeta_half = cfg.get_double("wigner.zeta_half_m", 0.0);
    sc.wigner_n_zeta = int(cfg.get_int("wigner.n_zeta", 256));
    sc.wigner_n_pp = int(cfg.get_int("wigner.n_pp", 256));

    sc.mode_kind = cfg.get_string("mode.kind", sc.has_grating ? "grating" : "synchronous");
    sc.mode_E_qz0 = cfg.get_double("mode.E_qz0_V_per_m", 1e5);
    sc.mode_P_q = cfg.get_double("mode.P_q_W", 1.0);
    sc.mode_M_perp = cfg.get_double("mode.M_perp", 1.0);
    sc.mode_L = cfg.get_double("mode.L_m", sc.has_grating ? sc.grating.L_G() : 1e-4);
    sc.wave_E_0 = cfg.get_double("wave.E_0_V_per_m", 2e4);
    sc.wave_omega_0 = cfg.get_double("wave.omega_0_rad_s", 0.0);
    if (sc.wave_omega_0 == 0.0 && sc.modulated) sc.wave_omega_0 = sc.mod.omega_b;
    sc.wave_phi_0 = cfg.get_double("wave.phi_0_rad", 0.0);
    sc.einstein_sigma_t = cfg.get_double("einstein.sigma_t_s", 0.0);

    cfg.set("resolved.gamma0", sc.el.gamma0);
    cfg.set("resolved.v0_m_per_s", sc.el.v0);
    cfg.set("resolved.p0_kg_m_per_s", sc.el.p0);
    cfg.set("resolved.m_star_kg", sc.el.m_star);
    cfg.set("resolved.sigma_z0_m", sc.wp.sigma_z0);
    cfg.set("resolved.sigma_p0_kg_m_per_s", sc.wp.sigma_p0());
    cfg.set("resolved.t_drift_s", sc.t_drift);
    cfg.set("resolved.drift_length_m", sc.t_drift * sc.el.v0);
    cfg.set("resolved.sigma_z_plane_m", sc.wp.sigma_z(sc.t_drift));
    cfg.set("resolved.sigma_t_plane_s", sc.plane.sigma_t);
    if (sc.has_grating)
        cfg.set("resolved.sigma_z_plane_over_lambda_G",
                sc.wp.sigma_z(sc.t_drift) / sc.grating.lambda_G);
    if (sc.modulated) {
        cfg.set("resolved.omega_b_rad_s", sc.mod.omega_b);
        cfg.set("resolved.T_b_s", sc.mod.period());
        cfg.set("resolved.delta_p_kg_m_per_s", sc.mod.delta_p(sc.el));
        cfg.set("resolved.walkoff", sc.mod.walkoff(sc.el));
        cfg.set("resolved.omega_b_sigma_t", sc.mod.omega_b * sc.plane.sigma_t);
        cfg.set("resolved.N_b", 2.0 * sc.plane.sigma_t / sc.mod.period());
        if (sc.has_grating)
            cfg.set("resolved.lambda_b_over_lambda_G",
                    2.0 * pi * c0 / sc.mod.omega_b / sc.grating.lambda_G);
    }
    sc.cfg = std::move(cfg);
    return sc;
}

// Builder for the radiation mode implied by the scenario: either the
// synchronous slow wave (q_z = omega/v0 at every frequency, used for the
// emission/exchange identity) or one grating space harmonic at a fixed angle.
inline RadiationModeSpec scenario_mode(const Scenario& sc, double Theta = 0.0, int m = 1) {
    if (sc.mode_kind == "synchronous") {
        double v0 = sc.el.v0;
        return RadiationModeSpec::make(sc.mode_E_qz0, sc.mode_P_q, sc.mode_M_perp, sc.mode_L,
                                       [v0](double omega) { return omega / v0; });
    }
    if (sc.mode_kind == "grating") {
        if (!sc.has_grating)
            throw validation_error("config: mode.kind grating needs a grating");
        GratingSpec g = sc.grating;
        return RadiationModeSpec::make(
            sc.mode_E_qz0, sc.mode_P_q, sc.mode_M_perp, sc.mode_L,
            [g, Theta, m](double omega) { return floquet_qz(g, Theta, omega, m); });
    }
    throw validation_error("config: unknown mode.kind " + sc.mode_kind);
}

// ---------------------------------------------------------------------------
// Presets. All figure scenarios share one electron and drive: beta0 = 0.7,
// g2 = 11.4, 800 nm drive, lambda_G chosen so lambda_b/lambda_G = 0.6,
// N_G = 9.

inline std::vector<std::string> preset_names() {
    return {"fig3",  "fig4",  "fig5a", "fig5b",    "fig5c",
            "fig5d", "fig6a", "fig6b", "einstein", "appendixD"};
}

inline io::Config preset_config(const std::string& name) {
    io::Config c;
    c.set("preset", name);
    c.set("electron.beta0", "0.7");
    c.set("grating.lambda_G_m", "1.3333333333333333e-06");
    c.set("grating.N_G", "9");
    c.set("grating.m_range", "1,2,3");
    c.set("map.theta_min_rad", "0.39269908169872414");  // pi/8
    c.set("map.theta_max_rad", "2.7488935718910690");   // 7 pi/8
    c.set("map.n_theta", "241");
    c.set("plane.t0e_s", "0");
    c.set("bunching.l_max", "8");

    auto drive = [&c]() {
        c.set("modulation.enabled", "true");
        c.set("modulation.g2", "11.4");
        c.set("modulation.lambda_b_m", "8e-07");
        c.set("modulation.t0_mod_s", "0");
        c.set("drift.mode", "auto_optimal");
        c.set("packet.sigma_z0_over_lambda_G", "0.22");
    };
    auto dispersed = [&c]() {
        c.set("modulation.enabled", "false");
        c.set("packet.sigma_z0_m", "1e-07");
        c.set("drift.mode", "solve_width");
        c.set("drift.sigma_z_target_over_lambda_G", "0.22");
    };

    if (name == "fig3") {
        drive();
        c.set("wigner.zeta_half_m", "1.9e-06");
        c.set("wigner.n_zeta", "640");
        c.set("wigner.n_pp", "448");
    } else if (name == "fig4") {
        drive();
        c.set("bunching.l_max", "5");
        c.set("bunching.scan_n", "121");
        c.set("bunching.scan_max_frac", "3");
    } else if (name == "fig5a" || name == "fig5b") {
        dispersed();
        c.set("map.lambda_min_over_lambda_G", "0.2");
        c.set("map.lambda_max_over_lambda_G", "2.6");
        c.set("map.n_lambda", "2600");
        c.set("map.channel", name == "fig5a" ? "classical" : "quantum");
    } else if (name == "fig5c") {
        drive();
        c.set("map.lambda_min_over_lambda_G", "0.2");
        c.set("map.lambda_max_over_lambda_G", "2.6");
        c.set("map.n_lambda", "2600");
        c.set("cut.theta_rad", "1.5707963267948966");  // pi/2
    } else if (name == "fig5d") {
        drive();
        c.set("map.lambda_min_over_lambda_G", "0.4");
        c.set("map.lambda_max_over_lambda_G", "2.6");
        c.set("map.n_lambda", "1280");
        c.set("map.channel", "modulated");
    } else if (name == "fig6a" || name == "fig6b") {
        drive();
        // Packet length picked for N_b = 2 sigma_t / T_b of 3 and 25
        // micro-bunches; narrow lambda window around the m = 1 line.
        c.set("packet.sigma_z0_m", name == "fig6a" ? "8.4e-07" : "7e-06");
        c.set("grating.m_range", "1");
        c.set("map.lambda_min_over_lambda_G", "0.4");
        c.set("map.lambda_max_over_lambda_G", "1.0");
        c.set("map.n_lambda", "512");
        c.set("map.channel", "revival");
    } else if (name == "einstein") {
        c.set("modulation.enabled", "true");
        c.set("modulation.g2", "11.4");
        c.set("modulation.lambda_b_m", "8e-07");
        c.set("modulation.t0_mod_s", "0");
        c.set("packet.sigma_z0_m", "1e-07");
        c.set("drift.mode", "time");
        c.set("drift.time_s", "0");
        c.set("mode.kind", "synchronous");
        c.set("mode.E_qz0_V_per_m", "1e5");
        c.set("mode.P_q_W", "1");
        c.set("mode.M_perp", "1");
        c.set("mode.L_m", "1e-4");
        c.set("wave.E_0_V_per_m", "2e4");
        c.set("wave.phi_0_rad", "0");
        c.set("einstein.sigma_t_s", "0");
    } else if (name == "appendixD") {
        drive();
        c.set("pulse.N", "1000");
        c.set("pulse.sigma_pulse_s", "1e-13");
        c.set("pulse.t0_pulse_s", "0");
        c.set("pulse.seed", "20240817");
        c.set("ensemble.n_trials", "500");
        c.set("ensemble.sigma_omega_list", "0,1,3");
        c.set("mode.kind", "synchronous");
    } else {
        throw validation_error("unknown preset " + name);
    }
    return c;
}

} // namespace wprad
