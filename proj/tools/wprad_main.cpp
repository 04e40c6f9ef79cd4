// wprad: wavepacket radiation calculator command line front end.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wprad/acceptance.hpp"
#include "wprad/ensemble.hpp"
#include "wprad/io.hpp"
#include "wprad/presets.hpp"
#include "wprad/wigner.hpp"

namespace fs = std::filesystem;
using namespace wprad;

namespace {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonOpts {
    std::string preset;
    std::string config_path;
    std::vector<std::string> sets;
    std::string out_dir = ".";
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--preset", o.preset, "named scenario preset");
    cmd->add_option("--config", o.config_path, "flat key = value configuration file");
    cmd->add_option("--set", o.sets, "override a single key, as key=value")->take_all();
    cmd->add_option("-o,--out", o.out_dir, "output directory");
    cmd->add_option("-j,--threads", o.threads,
                    "worker threads (default: WPRAD_THREADS or 1)");
}

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        "preset",
        "electron.beta0",
        "packet.sigma_z0_m",
        "packet.sigma_z0_over_lambda_G",
        "packet.chirp",
        "modulation.enabled",
        "modulation.g2",
        "modulation.lambda_b_m",
        "modulation.hbar_omega_b_eV",
        "modulation.t0_mod_s",
        "modulation.n_max",
        "drift.mode",
        "drift.time_s",
        "drift.length_m",
        "drift.sigma_z_target_over_lambda_G",
        "plane.t0e_s",
        "grating.lambda_G_m",
        "grating.N_G",
        "grating.m_range",
        "map.lambda_min_over_lambda_G",
        "map.lambda_max_over_lambda_G",
        "map.n_lambda",
        "map.theta_min_rad",
        "map.theta_max_rad",
        "map.n_theta",
        "map.channel",
        "cut.theta_rad",
        "bunching.l_max",
        "bunching.scan_n",
        "bunching.scan_max_frac",
        "pulse.N",
        "pulse.sigma_pulse_s",
        "pulse.t0_pulse_s",
        "pulse.seed",
        "ensemble.n_trials",
        "ensemble.sigma_omega_list",
        "wigner.zeta_half_m",
        "wigner.n_zeta",
        "wigner.n_pp",
        "wavepacket.t_max_s",
        "wavepacket.n_t",
        "wavepacket.n_tau",
        "mode.kind",
        "mode.E_qz0_V_per_m",
        "mode.P_q_W",
        "mode.M_perp",
        "mode.L_m",
        "wave.E_0_V_per_m",
        "wave.omega_0_rad_s",
        "wave.phi_0_rad",
        "einstein.sigma_t_s",
    };
    return keys;
}

void check_known(const std::string& key) {
    if (key.rfind("resolved.", 0) == 0) return;  // manifest echoes are replayable
    for (const auto& k : known_keys())
        if (k == key) return;
    throw usage_error("unknown configuration key: " + key);
}

io::Config assemble_config(const CommonOpts& o) {
    io::Config cfg;
    if (!o.preset.empty()) cfg = preset_config(o.preset);
    if (!o.config_path.empty()) {
        io::Config file = io::Config::parse_file(o.config_path);
        for (const auto& [k, v] : file.entries()) {
            check_known(k);
            cfg.set(k, v);
        }
    }
    for (const auto& s : o.sets) {
        auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0)
            throw usage_error("--set expects key=value, got: " + s);
        std::string key = s.substr(0, eq);
        check_known(key);
        cfg.set(key, s.substr(eq + 1));
    }
    if (cfg.entries().empty())
        throw usage_error("no configuration: give --preset and/or --config/--set");
    return cfg;
}

int effective_threads(const CommonOpts& o) {
    if (o.threads > 0) return o.threads;
    if (const char* env = std::getenv("WPRAD_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

fs::path prepare_out(const CommonOpts& o) {
    fs::path dir(o.out_dir);
    fs::create_directories(dir);
    return dir;
}

void emit_manifest(const fs::path& dir, const io::Config& cfg,
                   std::vector<std::string> outputs) {
    outputs.push_back("resolved.cfg");
    io::write_config_flat((dir / "resolved.cfg").string(), cfg);
    io::write_manifest((dir / "manifest.json").string(), cfg, tool_version, outputs);
}

// ---------------------------------------------------------------------------

int run_wavepacket(const CommonOpts& o) {
    Scenario sc = resolve_scenario(assemble_config(o));
    fs::path dir = prepare_out(o);

    double t_max = sc.cfg.get_double("wavepacket.t_max_s",
                                     sc.t_drift > 0.0 ? 2.0 * sc.t_drift
                                                      : 2.0 / sc.wp.xi());
    int n_t = int(sc.cfg.get_int("wavepacket.n_t", 201));
    auto width = io::open_out((dir / "width.csv").string());
    width << "t_s,sigma_z_m,sigma_t_s\n";
    for (double t : linspace(0.0, t_max, std::size_t(n_t)))
        width << io::format_g17(t) << ',' << io::format_g17(sc.wp.sigma_z(t)) << ','
              << io::format_g17(sc.wp.sigma_t(t)) << '\n';

    int n_tau = int(sc.cfg.get_int("wavepacket.n_tau", 4001));
    double span = 4.0 * sc.plane.sigma_t;
    auto dens = io::open_out((dir / "density.csv").string());
    dens << "tau_s,envelope,density\n";
    for (double tau : linspace(-span, span, std::size_t(n_tau))) {
        double env = sc.wp.temporal_envelope(tau, sc.t_drift);
        double rho = sc.modulated ? temporal_density(sc.wp, sc.mod, tau, sc.t_drift) : env;
        dens << io::format_g17(tau) << ',' << io::format_g17(env) << ','
             << io::format_g17(rho) << '\n';
    }
    emit_manifest(dir, sc.cfg, {"width.csv", "density.csv"});
    return 0;
}

int run_wigner(const CommonOpts& o) {
    Scenario sc = resolve_scenario(assemble_config(o));
    if (!(sc.wigner_zeta_half > 0.0))
        throw validation_error("wigner needs wigner.zeta_half_m > 0");
    fs::path dir = prepare_out(o);
    WignerGridSpec grid =
        conjugate_grid(sc.wigner_zeta_half, sc.wigner_n_zeta, sc.wigner_n_pp);
    WignerGrid w = sc.modulated
                       ? wigner_transform(sc.wp, sc.mod, grid, sc.t_drift,
                                          effective_threads(o))
                       : wigner_transform(sc.wp, grid, sc.t_drift, effective_threads(o));
    io::write_binary_grid((dir / "wigner.bin").string(), w.zeta_axis, w.pp_axis, w.values);
    io::write_matrix_csv((dir / "wigner.csv").string(), "zeta_m\\pp_kgmps", w.zeta_axis,
                         w.pp_axis, w.values);
    auto marg = io::open_out((dir / "marginals.csv").string());
    marg << "axis,coordinate,marginal\n";
    auto mz = w.position_marginal();
    for (std::size_t i = 0; i < mz.size(); ++i)
        marg << "zeta," << io::format_g17(w.zeta_axis[i]) << ',' << io::format_g17(mz[i])
             << '\n';
    auto mp = w.momentum_marginal();
    for (std::size_t k = 0; k < mp.size(); ++k)
        marg << "pp," << io::format_g17(w.pp_axis[k]) << ',' << io::format_g17(mp[k])
             << '\n';
    sc.cfg.set("resolved.wigner_mass", w.total());
    sc.cfg.set("resolved.wigner_max_im_residual", w.max_im_residual);
    emit_manifest(dir, sc.cfg, {"wigner.bin", "wigner.csv", "marginals.csv"});
    return 0;
}

int run_bunching(const CommonOpts& o) {
    Scenario sc = resolve_scenario(assemble_config(o));
    if (!sc.modulated) throw validation_error("bunching needs modulation.enabled = true");
    fs::path dir = prepare_out(o);
    BunchingSpectrum bs =
        make_bunching_spectrum(sc.wp, sc.mod, sc.t_drift, sc.t0e, sc.l_max);
    io::write_bl_csv((dir / "bl.csv").string(), bs);

    auto bw = io::open_out((dir / "b_omega.csv").string());
    bw << "omega,re,im,abs\n";
    for (double omega :
         linspace(0.02 * sc.mod.omega_b, (sc.l_max + 0.98) * sc.mod.omega_b, 4001)) {
        cplx B = bunching_factor_spectrum(bs, omega);
        bw << io::format_g17(omega) << ',' << io::format_g17(B.real()) << ','
           << io::format_g17(B.imag()) << ',' << io::format_g17(std::abs(B)) << '\n';
    }

    std::vector<std::string> outputs = {"bl.csv", "b_omega.csv"};
    if (sc.cfg.has("bunching.scan_n")) {
        int n = int(sc.cfg.get_int("bunching.scan_n", 121));
        double frac = sc.cfg.get_double("bunching.scan_max_frac", 3.0);
        double t_est = optimal_drift_estimate(sc.wp, sc.mod);
        int l_top = std::min(sc.l_max, 5);
        auto scan = io::open_out((dir / "drift_scan.csv").string());
        scan << "t_s";
        for (int l = 1; l <= l_top; ++l) scan << ",abs_B" << l;
        scan << '\n';
        for (double t : linspace(0.02 * t_est, frac * t_est, std::size_t(n))) {
            scan << io::format_g17(t);
            for (int l = 1; l <= l_top; ++l)
                scan << ',' << io::format_g17(
                                   std::abs(fourier_coefficient_Bl(sc.wp, sc.mod, l, t)));
            scan << '\n';
        }
        outputs.push_back("drift_scan.csv");
    }
    emit_manifest(dir, sc.cfg, outputs);
    return 0;
}

int run_spectrum(const CommonOpts& o) {
    Scenario sc = resolve_scenario(assemble_config(o));
    fs::path dir = prepare_out(o);

    if (sc.mode_kind == "synchronous") {
        // Synchronous slow wave: report the emission/exchange identity.
        RadiationModeSpec mode = scenario_mode(sc);
        InputWave wave = InputWave::make(sc.wave_E_0, sc.wave_omega_0, sc.wave_phi_0);
        PacketAtPlane pk{sc.einstein_sigma_t, sc.t0e};
        double qz = mode.qz_of_omega(wave.omega_0);
        auto out = io::open_out((dir / "einstein.csv").string());
        out << "quantity,value\n";
        out << "residual_direct," << io::format_g17(einstein_residual(mode, pk, sc.el.v0,
                                                                      wave, false))
            << '\n';
        out << "residual_pierce," << io::format_g17(einstein_residual(mode, pk, sc.el.v0,
                                                                      wave, true))
            << '\n';
        out << "pierce_impedance_ohm,"
            << io::format_g17(mode.E_qz0 * mode.E_qz0 / (2.0 * qz * mode.P_q)) << '\n';
        out << "sigma_t_s," << io::format_g17(pk.sigma_t) << '\n';
        emit_manifest(dir, sc.cfg, {"einstein.csv"});
        return 0;
    }

    if (!sc.has_grating || !sc.has_axes)
        throw validation_error("spectrum needs a grating and map axes (or mode.kind = "
                               "synchronous)");
    BunchingSpectrum bs;
    if (sc.modulated)
        bs = make_bunching_spectrum(sc.wp, sc.mod, sc.t_drift, sc.t0e, sc.l_max);
    std::vector<io::SpectrumRow> rows;
    for (int m : sc.grating.m_range) {
        RadiationModeSpec mode = scenario_mode(sc, sc.theta_cut, m);
        for (double lambda : sc.axes.lambda) {
            double omega = 2.0 * pi * c0 / lambda;
            rows.push_back({omega,
                            spontaneous_spectrum_unmodulated(mode, {0.0, sc.t0e}, sc.el.v0,
                                                             omega),
                            "classical", 0, m});
            rows.push_back({omega,
                            spontaneous_spectrum_unmodulated(mode, sc.plane, sc.el.v0,
                                                             omega),
                            "quantum", 0, m});
            if (sc.modulated)
                rows.push_back({omega,
                                spontaneous_spectrum_modulated(mode, bs, sc.el.v0, omega),
                                "modulated", 0, m});
        }
    }
    io::write_spectrum_csv((dir / "spectrum.csv").string(), rows);
    emit_manifest(dir, sc.cfg, {"spectrum.csv"});
    return 0;
}

int run_spr_map(const CommonOpts& o) {
    Scenario sc = resolve_scenario(assemble_config(o));
    if (!sc.has_grating || !sc.has_axes)
        throw validation_error("spr-map needs grating.* and map.* configuration");
    fs::path dir = prepare_out(o);
    BunchingSpectrum bs;
    bool need_bs = sc.channel == MapChannel::modulated || sc.channel == MapChannel::revival;
    if (need_bs) {
        if (!sc.modulated)
            throw validation_error("map channel needs modulation.enabled = true");
        bs = make_bunching_spectrum(sc.wp, sc.mod, sc.t_drift, sc.t0e, sc.l_max);
    }
    SpectralMap map = spectral_map(sc.grating, sc.el, sc.plane, need_bs ? &bs : nullptr,
                                   sc.axes, sc.channel, {}, effective_threads(o));
    io::write_map_csv((dir / "map.csv").string(), map);
    io::write_binary_grid((dir / "map.bin").string(), map.axes.theta, map.axes.lambda,
                          map.values);
    std::vector<std::string> outputs = {"map.csv", "map.bin"};
    if (sc.channel == MapChannel::revival) {
        auto spots = find_revival_spots(map, sc.plane.sigma_t);
        auto out = io::open_out((dir / "spots.csv").string());
        out << "theta,lambda,value,l,m\n";
        for (const auto& s : spots)
            out << io::format_g17(s.Theta) << ',' << io::format_g17(s.lambda) << ','
                << io::format_g17(s.value) << ',' << s.l << ',' << s.m << '\n';
        outputs.push_back("spots.csv");
    }
    emit_manifest(dir, sc.cfg, outputs);
    return 0;
}

int run_stimulated_map(const CommonOpts& o) {
    Scenario sc = resolve_scenario(assemble_config(o));
    if (!sc.has_grating || !sc.has_axes)
        throw validation_error("stimulated-map needs grating.* and map.* configuration");
    fs::path dir = prepare_out(o);
    BunchingSpectrum bs;
    if (sc.modulated)
        bs = make_bunching_spectrum(sc.wp, sc.mod, sc.t_drift, sc.t0e, sc.l_max);
    SpectralMap map =
        stimulated_map(sc.grating, sc.el, sc.plane, sc.modulated ? &bs : nullptr,
                       sc.wave_E_0, sc.wave_phi_0, sc.axes, {}, effective_threads(o));
    io::write_map_csv((dir / "map.csv").string(), map);
    io::write_binary_grid((dir / "map.bin").string(), map.axes.theta, map.axes.lambda,
                          map.values);
    emit_manifest(dir, sc.cfg, {"map.csv", "map.bin"});
    return 0;
}

int run_ensemble(const CommonOpts& o) {
    Scenario sc = resolve_scenario(assemble_config(o));
    fs::path dir = prepare_out(o);

    std::vector<double> sigma_omegas;
    {
        std::stringstream ss(sc.cfg.get_string("ensemble.sigma_omega_list", "0,1,3"));
        std::string tok;
        while (std::getline(ss, tok, ',')) sigma_omegas.push_back(std::stod(tok));
    }
    double omega_b = sc.modulated ? sc.mod.omega_b : 0.0;
    std::vector<io::EnsembleRow> rows;
    for (int l = 0; l <= std::min(3, sc.l_max); ++l) {
        if (l > 0 && !sc.modulated) break;
        for (double so : sigma_omegas) {
            double omega_eff =
                sc.pulse.sigma_pulse > 0.0 ? so / sc.pulse.sigma_pulse : 0.0;
            auto an = analytic_bunching(sc.pulse, omega_eff, l);
            auto mc = monte_carlo_bunching(sc.pulse, omega_eff, l, sc.n_trials);
            rows.push_back({l, l * omega_b + omega_eff, an.mean_b2, mc.mean_b2, mc.std_err,
                            mc.n_trials, sc.pulse.rng_seed});
        }
    }
    io::write_ensemble_csv((dir / "ensemble.csv").string(), rows);
    std::vector<std::string> outputs = {"ensemble.csv"};

    if (sc.modulated) {
        BunchingSpectrum bs =
            make_bunching_spectrum(sc.wp, sc.mod, sc.t_drift, sc.t0e, sc.l_max);
        RadiationModeSpec mode = sc.mode_kind == "synchronous"
                                     ? scenario_mode(sc)
                                     : scenario_mode(sc, sc.theta_cut,
                                                     sc.grating.m_range.front());
        auto sr = io::open_out((dir / "superradiance.csv").string());
        sr << "omega,exact,approx\n";
        for (double omega : linspace(0.5 * omega_b, 3.5 * omega_b, 3001))
            sr << io::format_g17(omega) << ','
               << io::format_g17(
                      modulated_beam_superradiance(sc.pulse, bs, mode, sc.el.v0, omega))
               << ','
               << io::format_g17(modulated_beam_superradiance(sc.pulse, bs, mode,
                                                              sc.el.v0, omega, true))
               << '\n';
        outputs.push_back("superradiance.csv");

        InputWave wave = InputWave::make(sc.wave_E_0, sc.wave_omega_0, sc.wave_phi_0);
        auto st = io::open_out((dir / "stimulated.csv").string());
        st << "quantity,value\n";
        st << "closed_form,"
           << io::format_g17(modulated_beam_stimulated(sc.pulse, bs, mode, sc.el.v0, wave))
           << '\n';
        auto mc = monte_carlo_stimulated(sc.pulse, bs, mode, sc.el.v0, wave, sc.n_trials);
        st << "mc_mean," << io::format_g17(mc.mean) << '\n';
        st << "mc_stderr," << io::format_g17(mc.std_err) << '\n';
        st << "n_trials," << mc.n_trials << '\n';
        outputs.push_back("stimulated.csv");
    }
    emit_manifest(dir, sc.cfg, outputs);
    return 0;
}

int run_verify(const CommonOpts& o) {
    fs::path dir = prepare_out(o);
    auto results = acceptance::run_all();
    acceptance::print_report(std::cout, results, true);
    auto report = io::open_out((dir / "verify_report.txt").string());
    acceptance::print_report(report, results, false);
    io::Config cfg;
    if (!o.preset.empty() || !o.config_path.empty() || !o.sets.empty())
        cfg = assemble_config(o);
    else
        cfg.set("preset", "verify");
    io::write_manifest((dir / "manifest.json").string(), cfg, tool_version,
                       {"verify_report.txt"});
    return acceptance::all_pass(results) ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"wavepacket Smith-Purcell radiation calculator"};
    app.set_version_flag("--version", tool_version);
    app.require_subcommand(1);

    CommonOpts o;
    int rc = 0;
    struct Cmd {
        const char* name;
        const char* help;
        int (*fn)(const CommonOpts&);
    };
    const Cmd cmds[] = {
        {"wavepacket", "dispersion curves and density profiles", run_wavepacket},
        {"wigner", "phase-space distribution on a grid", run_wigner},
        {"bunching", "harmonic coefficients, spectra, drift scans", run_bunching},
        {"spectrum", "per-harmonic emission spectra or the exchange identity",
         run_spectrum},
        {"spr-map", "wavelength-angle emission maps", run_spr_map},
        {"stimulated-map", "wavelength-angle stimulated exchange maps",
         run_stimulated_map},
        {"ensemble", "multi-electron pulse statistics", run_ensemble},
        {"verify", "run the acceptance suite and write a report", run_verify},
    };
    for (const auto& c : cmds) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        add_common(sub, o);
        sub->callback([&rc, &o, fn = c.fn]() { rc = fn(o); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const resolution_error& e) {
        std::cerr << "resolution error: " << e.what() << '\n';
        return 3;
    } catch (const numeric_error& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const validation_error& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return rc;
}
