#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include "wprad/bunching.hpp"
#include "wprad/electron.hpp"
#include "wprad/numeric.hpp"

namespace wprad {

// Single radiation mode in the traveling-wave expansion. E_qz0 is the axial
// field amplitude seen by the wavepacket center, P_q the mode normalization
// power, M_perp the transverse overlap (1 for a narrow transverse profile).
struct RadiationModeSpec {
    double E_qz0 = 1.0;  // V/m
    double P_q = 1.0;    // W
    cplx M_perp = 1.0;
    double L = 0.0;      // m
    std::function<double(double)> qz_of_omega;

    static RadiationModeSpec make(double E_qz0, double P_q, cplx M_perp, double L,
                                  std::function<double(double)> qz) {
        if (!(P_q > 0.0)) throw validation_error("mode: P_q must be > 0");
        if (!(L > 0.0)) throw validation_error("mode: L must be > 0");
        if (std::abs(M_perp) > 1.0 + 1e-12)
            throw validation_error("mode: |M_perp| must be <= 1");
        if (!qz) throw validation_error("mode: dispersion qz_of_omega required");
        RadiationModeSpec m;
        m.E_qz0 = E_qz0;
        m.P_q = P_q;
        m.M_perp = M_perp;
        m.L = L;
        m.qz_of_omega = std::move(qz);
        return m;
    }

    static RadiationModeSpec free_space(double E_qz0, double P_q, cplx M_perp, double L) {
        return make(E_qz0, P_q, M_perp, L, [](double w) { return w / c0; });
    }
};

struct InputWave {
    double E_0 = 0.0;      // V/m
    double omega_0 = 0.0;  // rad/s
    double phi_0 = 0.0;    // rad

    static InputWave make(double E_0, double omega_0, double phi_0) {
        if (!(E_0 >= 0.0)) throw validation_error("wave: E_0 must be >= 0");
        if (!(omega_0 > 0.0)) throw validation_error("wave: omega_0 must be > 0");
        return InputWave{E_0, omega_0, phi_0};
    }
};

inline double detuning_theta(const RadiationModeSpec& mode, double v0, double omega) {
    if (!(omega > 0.0)) throw validation_error("detuning: omega must be > 0");
    return omega / v0 - mode.qz_of_omega(omega);
}

inline cplx matrix_element(const RadiationModeSpec& mode, double v0, double omega) {
    double x = 0.5 * detuning_theta(mode, v0, omega) * mode.L;
    return mode.M_perp * mode.E_qz0 * mode.L * std::exp(cplx(0.0, x)) * sinc(x);
}

// Spectral energy scale of spontaneous emission into the mode, J s.
inline double spontaneous_scale(const RadiationModeSpec& mode) {
    double m2 = std::norm(mode.M_perp);
    return q_e * q_e * mode.E_qz0 * mode.E_qz0 * mode.L * mode.L * m2 /
           (8.0 * pi * mode.P_q);
}

inline double spontaneous_spectrum_unmodulated(const RadiationModeSpec& mode,
                                               const PacketAtPlane& pk, double v0,
                                               double omega) {
    double x = 0.5 * detuning_theta(mode, v0, omega) * mode.L;
    double s = sinc(x);
    double arg = omega * pk.sigma_t;
    return spontaneous_scale(mode) * s * s * std::exp(-arg * arg);
}

// Signed energy transferred to the mode by an unmodulated packet; positive
// at the maximum-deceleration phase (theta_0 = 0, omega_0 t0e - phi_0 = 0).
// The wavepacket factor is exp(-omega^2 sigma_t^2 / 2): the finite size
// washes out the field amplitude, not the energy, hence half the spontaneous
// exponent.
inline double stimulated_energy_unmodulated(const RadiationModeSpec& mode,
                                            const PacketAtPlane& pk, double v0,
                                            const InputWave& wave) {
    double x = 0.5 * detuning_theta(mode, v0, wave.omega_0) * mode.L;
    double arg = wave.omega_0 * pk.sigma_t;
    return q_e * wave.E_0 * mode.L * std::abs(mode.M_perp) *
           std::cos(x + wave.omega_0 * pk.t0e - wave.phi_0) * sinc(x) *
           std::exp(-0.5 * arg * arg);
}

// Relative residual of the emission/exchange identity
//   (Delta W_max)^2 = 8 pi E_0^2 P_q / E_qz0^2 * (dW/domega)_SP,max,
// evaluated at synchronism. The Pierce route substitutes
// E_qz0^2 / P_q = 2 q_z K with K the interaction impedance.
inline double einstein_residual(const RadiationModeSpec& mode, const PacketAtPlane& pk,
                                double v0, const InputWave& wave, bool via_pierce = false) {
    double th = detuning_theta(mode, v0, wave.omega_0);
    if (std::abs(th) * mode.L > 1e-9)
        throw validation_error("einstein relation requires theta_0 = 0 (synchronism)");
    double arg = wave.omega_0 * pk.sigma_t;
    double dwmax = q_e * wave.E_0 * mode.L * std::abs(mode.M_perp) *
                   std::exp(-0.5 * arg * arg);
    double lhs = dwmax * dwmax;
    double sp = spontaneous_scale(mode) * std::exp(-arg * arg);
    double rhs;
    if (via_pierce) {
        double qz = mode.qz_of_omega(wave.omega_0);
        double K = mode.E_qz0 * mode.E_qz0 / (2.0 * qz * mode.P_q);
        rhs = 8.0 * pi * wave.E_0 * wave.E_0 / (2.0 * qz * K) * sp;
    } else {
        rhs = 8.0 * pi * wave.E_0 * wave.E_0 * mode.P_q / (mode.E_qz0 * mode.E_qz0) * sp;
    }
    return std::abs(lhs - rhs) / rhs;
}

// True when the harmonic lines of a modulated packet overlap appreciably and
// the per-line formulas below stop being a good decomposition.
inline bool harmonic_lines_overlap(const BunchingSpectrum& bs) {
    return bs.sigma_t * bs.omega_b < 3.0;
}

inline double spontaneous_spectrum_modulated(const RadiationModeSpec& mode,
                                             const BunchingSpectrum& bs, double v0,
                                             double omega) {
    double x = 0.5 * detuning_theta(mode, v0, omega) * mode.L;
    double s2 = sinc(x) * sinc(x);
    double acc = 0.0;
    for (int l = -bs.l_max; l <= bs.l_max; ++l) {
        double d = (omega - l * bs.omega_b) * bs.sigma_t;
        acc += std::norm(bs.B(l)) * std::exp(-d * d);
    }
    return spontaneous_scale(mode) * s2 * acc;
}

// Per-harmonic stimulated exchange; each line keeps the certified complex
// phase of B_l in its cosine.
inline double stimulated_energy_modulated(const RadiationModeSpec& mode,
                                          const BunchingSpectrum& bs, double v0,
                                          const InputWave& wave) {
    double x = 0.5 * detuning_theta(mode, v0, wave.omega_0) * mode.L;
    double acc = 0.0;
    for (int l = -bs.l_max; l <= bs.l_max; ++l) {
        cplx Bl = bs.B(l);
        if (std::abs(Bl) == 0.0) continue;
        double d = wave.omega_0 - l * bs.omega_b;
        acc += std::abs(Bl) *
               std::cos(x + d * bs.t0e + std::arg(Bl) - wave.phi_0) *
               std::exp(-0.5 * bs.sigma_t * bs.sigma_t * d * d);
    }
    return q_e * wave.E_0 * mode.L * std::abs(mode.M_perp) * sinc(x) * acc;
}

// Finite-window spectral amplitude of the input wave (per unit axial mode
// field). The window must contain the transit through the interaction
// region; the infinite-window delta limit is always taken analytically in
// the stimulated expressions, never sampled.
inline double input_wave_spectral_amplitude(const InputWave& wave,
                                            const RadiationModeSpec& mode, double v0,
                                            double T_win, double omega) {
    if (!(T_win > mode.L / v0))
        throw validation_error("input wave window shorter than the interaction transit");
    if (!(omega > 0.0))
        throw validation_error("input wave spectrum defined for positive frequencies only");
    return 0.5 * wave.E_0 * T_win * sinc(0.5 * (omega - wave.omega_0) * T_win);
}

// Energy bookkeeping for one mode amplitude: with C = C_in + dC the spectral
// energy splits into the input wave, the spontaneous term |dC|^2, and the
// signed interference (stimulated) term; the three add up to |C|^2 exactly.
struct EmissionDecomposition {
    double in_wave = 0.0;
    double spontaneous = 0.0;
    double stimulated = 0.0;
    double total() const { return in_wave + spontaneous + stimulated; }
};

inline EmissionDecomposition emission_decomposition(cplx C_in, cplx dC) {
    EmissionDecomposition d;
    d.in_wave = std::norm(C_in);
    d.spontaneous = std::norm(dC);
    d.stimulated = 2.0 * std::real(std::conj(C_in) * dC);
    return d;
}

} // namespace wprad
