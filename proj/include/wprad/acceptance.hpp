#pragma once

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "wprad/bessel.hpp"
#include "wprad/ensemble.hpp"
#include "wprad/presets.hpp"
#include "wprad/wigner.hpp"

// The fourteen release gates. Each criterion is a self-contained check with
// its tolerances pinned here; the same functions back the acceptance test
// binary and the `verify` subcommand.

namespace wprad::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

namespace detail {

class stopwatch {
  public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

  private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

inline std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return std::string(buf);
}

inline std::size_t nearest_index(const std::vector<double>& axis, double v) {
    double step = axis[1] - axis[0];
    long j = std::lround((v - axis.front()) / step);
    if (j < 0) j = 0;
    if (j >= long(axis.size())) j = long(axis.size()) - 1;
    return std::size_t(j);
}

inline double sup_rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num = std::max(num, std::abs(a[i] - b[i]));
        den = std::max(den, std::abs(b[i]));
    }
    return num / den;
}

} // namespace detail

// 1. Bessel ladder: closure and discrete orthogonality of J_n(11.4).
inline CriterionResult criterion_1() {
    detail::stopwatch sw;
    CriterionResult r{1, "bessel sum rules", false, "", 0.0};
    double x = 11.4;
    double sum = bessel::j(0, x) * bessel::j(0, x);
    for (int n = 1; n <= 60; ++n) sum += 2.0 * bessel::j(n, x) * bessel::j(n, x);
    double closure_defect = std::abs(sum - 1.0);
    double orth_defect = 0.0;
    for (int l = -10; l <= 10; ++l) {
        double s = 0.0;
        for (int n = -85; n <= 85; ++n) s += bessel::j(n, x) * bessel::j(n + l, x);
        orth_defect = std::max(orth_defect, std::abs(s - (l == 0 ? 1.0 : 0.0)));
    }
    r.seconds = sw.seconds();
    r.pass = closure_defect < 1e-10 && orth_defect < 1e-10 && r.seconds < 1.0;
    r.detail = detail::fmt("closure defect %.2e, orthogonality defect %.2e", closure_defect,
                           orth_defect);
    return r;
}

// 2. Closed-form harmonic coefficients against the density-projection oracle.
inline CriterionResult criterion_2() {
    detail::stopwatch sw;
    CriterionResult r{2, "B_l closed form vs density oracle", false, "", 0.0};
    Scenario sc = resolve_scenario(preset_config("fig3"));
    double t_est = optimal_drift_estimate(sc.wp, sc.mod);
    double worst = 0.0;
    for (double frac : {0.2, 0.65, 1.1, 1.55, 2.0}) {
        double t = frac * t_est;
        for (int l = 1; l <= 5; ++l) {
            cplx a = fourier_coefficient_Bl(sc.wp, sc.mod, l, t);
            cplx o = bunching_oracle(sc.wp, sc.mod, l, t);
            worst = std::max(worst, std::abs(a - o) / std::abs(o));
        }
    }
    r.seconds = sw.seconds();
    r.pass = worst < 1e-4 && r.seconds < 30.0;
    r.detail = detail::fmt("max relative defect %.2e over l = 1..5, five drifts", worst);
    return r;
}

// 3. Optimal drift: refined argmax near the quarter-period estimate, with the
// single-peak shape around it.
inline CriterionResult criterion_3() {
    detail::stopwatch sw;
    CriterionResult r{3, "optimal drift time", false, "", 0.0};
    Scenario sc = resolve_scenario(preset_config("fig3"));
    double est = optimal_drift_estimate(sc.wp, sc.mod);
    double opt = optimal_drift_refined(sc.wp, sc.mod);
    double rel = std::abs(opt - est) / est;
    double b_opt = std::abs(fourier_coefficient_Bl(sc.wp, sc.mod, 1, opt));
    double b_half = std::abs(fourier_coefficient_Bl(sc.wp, sc.mod, 1, 0.5 * opt));
    double b_twice = std::abs(fourier_coefficient_Bl(sc.wp, sc.mod, 1, 2.0 * opt));
    r.seconds = sw.seconds();
    r.pass = rel <= 0.25 && b_opt > b_half && b_opt > b_twice && r.seconds < 30.0;
    r.detail = detail::fmt("argmax/estimate - 1 = %.3f; |B_1| %.4f vs %.4f (x0.5), %.4f (x2)",
                           opt / est - 1.0, b_opt, b_half, b_twice);
    return r;
}

// 4. Wigner transform: unit mass, marginals against independent densities,
// drift-invariant momentum marginal.
inline CriterionResult criterion_4() {
    detail::stopwatch sw;
    CriterionResult r{4, "wigner integrity", false, "", 0.0};
    RelativisticElectron el = RelativisticElectron::from_beta(0.7);
    GaussianWavepacket wp = GaussianWavepacket::make(el, 60e-9);
    ModulationSpec mod = ModulationSpec::make(11.4, 2.0 * pi * c0 / 800e-9);
    double t_opt = optimal_drift_refined(wp, mod);
    WignerGridSpec grid = conjugate_grid(500e-9, 256, 256);
    WignerGrid w1 = wigner_transform(wp, mod, grid, 0.2 * t_opt);
    WignerGrid w2 = wigner_transform(wp, mod, grid, 0.35 * t_opt);

    double mass_defect = std::abs(w1.total() - 1.0);

    std::vector<double> mz = w1.position_marginal(), mz_ref(mz.size());
    for (std::size_t i = 0; i < mz.size(); ++i)
        mz_ref[i] = density_probability(wp, mod, w1.zeta_axis[i], w1.t_eval);
    double dz = detail::sup_rel_diff(mz, mz_ref);

    std::vector<double> mp = w1.momentum_marginal(), mp_ref(mp.size());
    for (std::size_t k = 0; k < mp.size(); ++k)
        mp_ref[k] = std::norm(momentum_amplitude(wp, mod, w1.pp_axis[k]));
    double dp = detail::sup_rel_diff(mp, mp_ref);

    double dpp = detail::sup_rel_diff(w1.momentum_marginal(), w2.momentum_marginal());

    r.seconds = sw.seconds();
    r.pass = mass_defect < 1e-6 && dz < 1e-6 && dp < 1e-6 && dpp < 1e-6 && r.seconds < 60.0;
    r.detail = detail::fmt(
        "mass defect %.2e; marginal defects z %.2e, p %.2e; drift shift %.2e", mass_defect,
        dz, dp, dpp);
    return r;
}

// 5. Micro-bunch spike width at the optimal drift (Feist parameters).
inline CriterionResult criterion_5() {
    detail::stopwatch sw;
    CriterionResult r{5, "micro-bunch width", false, "", 0.0};
    Scenario sc = resolve_scenario(preset_config("fig3"));
    double width = micro_bunch_width(sc.wp, sc.mod, sc.t_drift);
    r.seconds = sw.seconds();
    r.pass = width > 60e-18 && width < 90e-18;
    r.detail = detail::fmt("2 sigma_b = %.1f as (allowed 75 as +/- 20%%)", width / atto);
    return r;
}

// 6. Finite-size suppression is exactly the Gaussian factor, frequency by
// frequency.
inline CriterionResult criterion_6() {
    detail::stopwatch sw;
    CriterionResult r{6, "quantum cutoff ratio", false, "", 0.0};
    RelativisticElectron el = RelativisticElectron::from_beta(0.7);
    double v0 = el.v0;
    RadiationModeSpec mode =
        RadiationModeSpec::make(1e5, 1.0, 1.0, 1e-4, [v0](double w) { return w / v0; });
    PacketAtPlane wide{2e-15, 0.0}, point{0.0, 0.0};
    double worst = 0.0;
    for (double omega : linspace(1e14, 5e15, 100)) {
        double ratio = spontaneous_spectrum_unmodulated(mode, wide, v0, omega) /
                       spontaneous_spectrum_unmodulated(mode, point, v0, omega);
        double expect = std::exp(-omega * omega * wide.sigma_t * wide.sigma_t);
        worst = std::max(worst, std::abs(ratio / expect - 1.0));
    }
    r.seconds = sw.seconds();
    r.pass = worst < 1e-12;
    r.detail = detail::fmt("max cell defect %.2e over 100 frequencies", worst);
    return r;
}

// 7. Emission/exchange identity at synchronism, direct and via the Pierce
// impedance.
inline CriterionResult criterion_7() {
    detail::stopwatch sw;
    CriterionResult r{7, "einstein relation", false, "", 0.0};
    Scenario sc = resolve_scenario(preset_config("einstein"));
    RadiationModeSpec mode = scenario_mode(sc);
    InputWave wave = InputWave::make(sc.wave_E_0, sc.wave_omega_0, sc.wave_phi_0);
    PacketAtPlane pk{sc.einstein_sigma_t, 0.0};
    double res_direct = einstein_residual(mode, pk, sc.el.v0, wave, false);
    double res_pierce = einstein_residual(mode, pk, sc.el.v0, wave, true);
    r.seconds = sw.seconds();
    r.pass = res_direct < 1e-12 && res_pierce < 1e-12 && r.seconds < 1.0;
    r.detail = detail::fmt("residual %.2e direct, %.2e via impedance", res_direct, res_pierce);
    return r;
}

// 8. Classical map crests sit on the grating dispersion line.
inline CriterionResult criterion_8() {
    detail::stopwatch sw;
    CriterionResult r{8, "classical ridge positions", false, "", 0.0};
    Scenario sc = resolve_scenario(preset_config("fig5a"));
    SpectralMap map = spectral_map(sc.grating, sc.el, sc.plane, nullptr, sc.axes,
                                   MapChannel::classical);
    long worst = 0;
    for (double Theta : {0.25 * pi, 0.5 * pi, 0.75 * pi}) {
        std::size_t i = detail::nearest_index(sc.axes.theta, Theta);
        for (int m : {1, 2, 3}) {
            std::size_t jc = ridge_crest_index(map, sc.grating, sc.el.beta0, i, m);
            std::size_t jp = detail::nearest_index(
                sc.axes.lambda, spr_wavelength(sc.grating, sc.el.beta0, sc.axes.theta[i], m));
            worst = std::max(worst, std::labs(long(jc) - long(jp)));
        }
    }
    r.seconds = sw.seconds();
    r.pass = worst <= 1;
    r.detail = detail::fmt("max crest offset %ld cell(s) over m = 1..3, three angles", worst);
    return r;
}

// 9. Finite-size classification on the sigma_z = 0.22 lambda_G scenario, with
// the measured crest attenuations.
inline CriterionResult criterion_9() {
    detail::stopwatch sw;
    CriterionResult r{9, "cutoff classification", false, "", 0.0};
    Scenario sc = resolve_scenario(preset_config("fig5b"));
    SpectralMap classical = spectral_map(sc.grating, sc.el, sc.plane, nullptr, sc.axes,
                                         MapChannel::classical);
    SpectralMap quantum = spectral_map(sc.grating, sc.el, sc.plane, nullptr, sc.axes,
                                       MapChannel::quantum);
    double sigma_z = sc.wp.sigma_z(sc.t_drift);
    auto reports = cutoff_window(sc.grating, sc.el.beta0, sigma_z);
    std::size_t i = detail::nearest_index(sc.axes.theta, 0.5 * pi);
    double ratio[4] = {0, 0, 0, 0};
    for (int m : {1, 2, 3}) {
        std::size_t j = ridge_crest_index(classical, sc.grating, sc.el.beta0, i, m);
        ratio[m] = quantum.at(i, j) / classical.at(i, j);
    }
    r.seconds = sw.seconds();
    r.pass = reports[0].cls == CutoffClass::partially_cut && ratio[2] < 1e-2 &&
             ratio[3] < 1e-4;
    r.detail = detail::fmt("m=1 %s, crest factors m=1 %.4g, m=2 %.4g, m=3 %.4g",
                           to_string(reports[0].cls), ratio[1], ratio[2], ratio[3]);
    return r;
}

// 10. Exactly three revival spots, on the predicted (l, m) resonances.
inline CriterionResult criterion_10() {
    detail::stopwatch sw;
    CriterionResult r{10, "revival spots", false, "", 0.0};
    Scenario sc = resolve_scenario(preset_config("fig5d"));
    BunchingSpectrum bs =
        make_bunching_spectrum(sc.wp, sc.mod, sc.t_drift, sc.t0e, sc.l_max);
    SpectralMap map = spectral_map(sc.grating, sc.el, sc.plane, &bs, sc.axes,
                                   MapChannel::revival);
    auto spots = find_revival_spots(map, sc.plane.sigma_t);

    double sigma_b = 0.5 * micro_bunch_width(sc.wp, sc.mod, sc.t_drift);
    auto predicted = revival_spots(sc.grating, sc.el.beta0, sc.mod.omega_b, sc.l_max, sigma_b);
    std::vector<RevivalSpot> in_window;
    for (const auto& p : predicted)
        if (p.lambda >= sc.axes.lambda.front() && p.lambda <= sc.axes.lambda.back() &&
            p.Theta >= sc.axes.theta.front() && p.Theta <= sc.axes.theta.back())
            in_window.push_back(p);

    bool ok = spots.size() == 3 && in_window.size() == 3;
    double d_theta = sc.axes.theta[1] - sc.axes.theta[0];
    double d_lambda = sc.axes.lambda[1] - sc.axes.lambda[0];
    long worst_rows = 0;
    double worst_cells = 0.0;
    if (ok)
        for (std::size_t k = 0; k < 3; ++k) {
            const auto& s = spots[k];
            const auto& p = in_window[k];
            long di = std::labs(long(s.i_theta) -
                                long(detail::nearest_index(sc.axes.theta, p.Theta)));
            // The maximum rides the grating ridge, whose crest moves by
            // lambda_G sin(Theta) per radian of angle, so the wavelength
            // budget is one cell of rounding plus half a row of crest motion.
            double budget = 1.5 * d_lambda +
                            0.5 * d_theta * sc.grating.lambda_G * std::sin(p.Theta);
            double dl = std::abs(s.lambda - p.lambda);
            worst_rows = std::max(worst_rows, di);
            worst_cells = std::max(worst_cells, dl / d_lambda);
            ok = ok && s.l == p.l && s.m == p.m && di <= 1 && dl <= budget;
        }
    r.seconds = sw.seconds();
    r.pass = ok;
    r.detail =
        detail::fmt("%zu spot(s) found, 3 predicted in window, worst offset %ld row(s), "
                    "%.2f lambda cell(s)",
                    spots.size(), worst_rows, worst_cells);
    return r;
}

// 11. Spot linewidth follows the narrower of the grating sinc lobe and the
// harmonic line of the bunch train.
inline CriterionResult criterion_11() {
    detail::stopwatch sw;
    CriterionResult r{11, "linewidth dominance", false, "", 0.0};
    bool ok = true;
    std::string note;
    for (const char* name : {"fig6a", "fig6b"}) {
        Scenario sc = resolve_scenario(preset_config(name));
        BunchingSpectrum bs =
            make_bunching_spectrum(sc.wp, sc.mod, sc.t_drift, sc.t0e, sc.l_max);
        double Theta = std::acos(1.0 / sc.el.beta0 - 2.0 * pi * c0 /
                                                         (sc.mod.omega_b * sc.grating.lambda_G));
        double N_b = 2.0 * sc.plane.sigma_t / sc.mod.period();
        double expected = std::min(1.0 / sc.grating.N_G, (2.0 / pi) / N_b);

        auto value = [&](double omega) {
            double x =
                0.5 * floquet_detuning(sc.grating, sc.el.v0, Theta, omega, 1) * sc.grating.L_G();
            double s2 = sinc(x) * sinc(x);
            double acc = 0.0;
            for (int l = 1; l <= bs.l_max; ++l) {
                double d = (omega - l * bs.omega_b) * bs.sigma_t;
                acc += std::norm(bs.B(l)) * std::exp(-d * d);
            }
            return s2 * acc;
        };
        auto omegas = linspace(0.75 * sc.mod.omega_b, 1.25 * sc.mod.omega_b, 8001);
        std::vector<double> v(omegas.size());
        std::size_t pk = 0;
        for (std::size_t k = 0; k < omegas.size(); ++k) {
            v[k] = value(omegas[k]);
            if (v[k] > v[pk]) pk = k;
        }
        double half = 0.5 * v[pk];
        auto cross = [&](long from, long step) {
            for (long k = from; k + step >= 0 && k + step < long(v.size()); k += step)
                if ((v[std::size_t(k)] - half) * (v[std::size_t(k + step)] - half) <= 0.0)
                    return double(k) +
                           (half - v[std::size_t(k)]) /
                               (v[std::size_t(k + step)] - v[std::size_t(k)]) * double(step);
            return double(from);
        };
        double d_omega = omegas[1] - omegas[0];
        double fwhm = (cross(long(pk), +1) - cross(long(pk), -1)) * d_omega;
        double rel = fwhm / omegas[pk];
        double err = std::abs(rel - expected) / expected;
        ok = ok && err <= 0.30;
        note += detail::fmt("%s%s rel FWHM %.4f vs %.4f (err %.0f%%)", note.empty() ? "" : "; ",
                            name, rel, expected, 100.0 * err);
    }
    r.seconds = sw.seconds();
    r.pass = ok;
    r.detail = note;
    return r;
}

// 12. Pulse statistics: Monte-Carlo second moment against the closed form,
// and the exact N-scaling of the two spectrum terms.
inline CriterionResult criterion_12() {
    detail::stopwatch sw;
    CriterionResult r{12, "ensemble statistics", false, "", 0.0};
    PulseSpec pulse = PulseSpec::make(1000, 1e-13, 0.0, 20240817);
    bool ok = true;
    std::string note;
    for (double so : {0.0, 1.0, 3.0}) {
        double omega_eff = so / pulse.sigma_pulse;
        auto an = analytic_bunching(pulse, omega_eff);
        auto mc = monte_carlo_bunching(pulse, omega_eff, 0, 500);
        double dev = std::abs(mc.mean_b2 - an.mean_b2);
        ok = ok && dev <= 3.0 * mc.std_err + 1e-15;
        note += detail::fmt("%ssigma*omega=%g dev/SE %.2f", note.empty() ? "" : ", ", so,
                            mc.std_err > 0 ? dev / mc.std_err : 0.0);
    }
    RelativisticElectron el = RelativisticElectron::from_beta(0.7);
    double v0 = el.v0;
    RadiationModeSpec mode =
        RadiationModeSpec::make(1e5, 1.0, 1.0, 1e-4, [v0](double w) { return w / v0; });
    PacketAtPlane pk{1e-15, 0.0};
    double omega = 1.0 / pulse.sigma_pulse;
    auto t1 = pulse_spontaneous_terms(pulse, mode, pk, v0, omega);
    auto t2 = pulse_spontaneous_terms(PulseSpec::make(2000, 1e-13), mode, pk, v0, omega);
    double exp_sr = std::log2(t2.superradiant / t1.superradiant);
    double exp_sn = std::log2(t2.shot_noise / t1.shot_noise);
    ok = ok && std::abs(exp_sr - 2.0) < 1e-6 && std::abs(exp_sn - 1.0) < 1e-6;
    r.seconds = sw.seconds();
    r.pass = ok && r.seconds < 60.0;
    r.detail = note + detail::fmt("; doubling exponents %.9f, %.9f", exp_sr, exp_sn);
    return r;
}

// 13. Advancing the drive phase by pi negates every stimulated quantity.
// cos() cannot see the pi shift exactly at IEEE argument level, so "exactly"
// is pinned as a defect below 1e-13 of the bare exchange amplitude
// q_e E_0 L (observed around 1e-16 of it).
inline CriterionResult criterion_13() {
    detail::stopwatch sw;
    CriterionResult r{13, "stimulated phase antisymmetry", false, "", 0.0};
    Scenario sc = resolve_scenario(preset_config("fig3"));
    BunchingSpectrum bs =
        make_bunching_spectrum(sc.wp, sc.mod, sc.t_drift, 0.3e-15, sc.l_max);
    double v0 = sc.el.v0;
    RadiationModeSpec mode =
        RadiationModeSpec::make(1e5, 1.0, 1.0, 1e-4, [v0](double w) { return w / v0; });
    PacketAtPlane pk{1e-15, 0.3e-15};
    double phi = 0.7;
    InputWave wa = InputWave::make(2e4, sc.mod.omega_b, phi);
    InputWave wb = InputWave::make(2e4, sc.mod.omega_b, phi + pi);
    double amp = q_e * wa.E_0 * mode.L;
    double defect = 0.0;

    defect = std::max(defect, std::abs(stimulated_energy_unmodulated(mode, pk, v0, wa) +
                                       stimulated_energy_unmodulated(mode, pk, v0, wb)));
    defect = std::max(defect, std::abs(stimulated_energy_modulated(mode, bs, v0, wa) +
                                       stimulated_energy_modulated(mode, bs, v0, wb)));

    PulseSpec pulse = PulseSpec::make(50, 3e-15, 0.0, 7);
    double ens_scale = double(pulse.N) * amp;
    defect = std::max(defect,
                      std::abs(modulated_beam_stimulated(pulse, bs, mode, v0, wa) +
                               modulated_beam_stimulated(pulse, bs, mode, v0, wb)) /
                          double(pulse.N));
    auto mca = monte_carlo_stimulated(pulse, bs, mode, v0, wa, 100);
    auto mcb = monte_carlo_stimulated(pulse, bs, mode, v0, wb, 100);
    defect = std::max(defect, std::abs(mca.mean + mcb.mean) / double(pulse.N));

    MapAxes axes = make_axes(0.9 * sc.grating.lambda_G, 1.1 * sc.grating.lambda_G, 64,
                             0.25 * pi, 0.75 * pi, 7);
    SpectralMap ma = stimulated_map(sc.grating, sc.el, pk, &bs, wa.E_0, wa.phi_0, axes);
    SpectralMap mb = stimulated_map(sc.grating, sc.el, pk, &bs, wb.E_0, wb.phi_0, axes);
    double map_amp = q_e * wa.E_0 * sc.grating.L_G();
    double map_defect = 0.0;
    for (std::size_t c = 0; c < ma.values.size(); ++c)
        map_defect = std::max(map_defect, std::abs(ma.values[c] + mb.values[c]));
    defect = std::max(defect, map_defect * amp / map_amp);

    r.seconds = sw.seconds();
    r.pass = defect <= 1e-13 * amp;
    r.detail = detail::fmt("max sign defect %.2e of amplitude scale", defect / amp);
    return r;
}

// 14. Bit-identical artifacts from repeated runs, including a map rendered
// with different thread counts.
inline CriterionResult criterion_14() {
    detail::stopwatch sw;
    CriterionResult r{14, "determinism", false, "", 0.0};
    namespace fs = std::filesystem;
    auto render = [](const fs::path& dir, int threads) {
        fs::create_directories(dir);
        Scenario sc = resolve_scenario(preset_config("fig4"));
        BunchingSpectrum bs = make_bunching_spectrum(sc.wp, sc.mod, sc.t_drift, sc.t0e, 5);
        io::write_bl_csv((dir / "bl.csv").string(), bs);

        PulseSpec pulse = PulseSpec::make(200, 1e-13, 0.0, 99);
        auto an = analytic_bunching(pulse, 1e13);
        auto mc = monte_carlo_bunching(pulse, 1e13, 0, 120);
        io::write_ensemble_csv((dir / "ensemble.csv").string(),
                               {{0, 1e13, an.mean_b2, mc.mean_b2, mc.std_err, mc.n_trials,
                                 pulse.rng_seed}});

        MapAxes axes = make_axes(0.9 * sc.grating.lambda_G, 1.1 * sc.grating.lambda_G, 64,
                                 0.25 * pi, 0.75 * pi, 7);
        SpectralMap map = spectral_map(sc.grating, sc.el, sc.plane, &bs, axes,
                                       MapChannel::modulated, {}, threads);
        io::write_map_csv((dir / "map.csv").string(), map);
        io::write_binary_grid((dir / "map.bin").string(), map.axes.theta, map.axes.lambda,
                              map.values);
        io::write_manifest((dir / "manifest.json").string(), sc.cfg, tool_version,
                           {"bl.csv", "ensemble.csv", "map.csv", "map.bin"});
    };
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in),
                           std::istreambuf_iterator<char>());
    };
    fs::path base = fs::temp_directory_path() / "wprad-acceptance";
    render(base / "a", 1);
    render(base / "b", 2);
    bool ok = true;
    for (const char* f : {"bl.csv", "ensemble.csv", "map.csv", "map.bin", "manifest.json"}) {
        std::string sa = slurp(base / "a" / f), sb = slurp(base / "b" / f);
        ok = ok && !sa.empty() && sa == sb;
    }
    r.seconds = sw.seconds();
    r.pass = ok;
    r.detail = ok ? "five artifact pairs bit-identical across reruns and thread counts"
                  : "artifact mismatch between identical runs";
    return r;
}

inline std::vector<CriterionResult> run_all() {
    return {criterion_1(),  criterion_2(),  criterion_3(),  criterion_4(),  criterion_5(),
            criterion_6(),  criterion_7(),  criterion_8(),  criterion_9(),  criterion_10(),
            criterion_11(), criterion_12(), criterion_13(), criterion_14()};
}

inline bool all_pass(const std::vector<CriterionResult>& rs) {
    for (const auto& r : rs)
        if (!r.pass) return false;
    return true;
}

// with_timing = false keeps the report byte-reproducible across runs.
inline void print_report(std::ostream& os, const std::vector<CriterionResult>& rs,
                         bool with_timing = true) {
    for (const auto& r : rs) {
        os << "criterion " << r.id << " [" << r.name << "]: " << (r.pass ? "pass" : "FAIL");
        if (with_timing) os << " (" << detail::fmt("%.2f", r.seconds) << " s)";
        os << ' ' << r.detail << "\n";
    }
    os << (all_pass(rs) ? "all criteria passed\n" : "ACCEPTANCE FAILED\n");
}

} // namespace wprad::acceptance
