#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "wprad/modulation.hpp"
#include "wprad/numeric.hpp"

namespace wprad {

// Harmonic content of the micro-bunched density. The density at a drift
// plane factors into the envelope and a near-periodic modulation; B_l is the
// l-th Fourier coefficient of the modulation over the central period,
//   B_l = (1/T_b) integral f_mod(tau) e^{+i l omega_b tau} dtau.
// Positive sidebands arrive early (tau = -n * delta * t), which fixes every
// sign below; the projection-based oracle certifies them.

// Closed form. Writing u for the width phase (xi*(t - t_w), plain xi*t when
// unchirped), D = 4 sigma_t0^2 (1 + u^2), Delta = delta*t the per-rung
// walk-off, phi_q = omega_b Delta / 2:
//   B_l = sum_{n,m} J_n J_m e^{i(n-m)phi_b}
//         exp[-(Delta^2/D)((n^2+m^2) - i u (n^2-m^2))] e^{-i(n^2-m^2)phi_q}
//         sinhc(s_nm T_b/2),
//   s_nm = i(l-(n-m)) omega_b - alpha_nm,
//   alpha_nm = (2 Delta/D)((n+m) - i u (n-m)).
// At t = 0 the sinhc collapses to the Kronecker selection n-m = l and the
// Bessel addition theorem gives B_l = delta_{l0} exactly.
inline cplx fourier_coefficient_Bl(const GaussianWavepacket& wp, const ModulationSpec& spec,
                                   int l, double t_drift) {
    auto J = sideband_weights(spec);
    double sz0 = wp.sigma_z0;
    double u = wp.sigma_z2_complex(t_drift).imag() / (sz0 * sz0);
    double st0 = wp.sigma_t0();
    double D = 4.0 * st0 * st0 * (1.0 + u * u);
    double delta = spec.walkoff(wp.el);
    double Delta = delta * t_drift;
    double phi_q = 0.5 * spec.omega_b * Delta;
    double Tb = spec.period();
    double phi_b = spec.phi_b();

    cplx acc = 0.0;
    for (int n = -spec.n_max; n <= spec.n_max; ++n) {
        double Jn = sideband_J(J, n);
        if (std::abs(Jn) < 1e-18) continue;
        for (int m = -spec.n_max; m <= spec.n_max; ++m) {
            double Jm = sideband_J(J, m);
            if (std::abs(Jn * Jm) < 1e-18) continue;
            double sum2 = double(n) * n + double(m) * m;
            double dif2 = double(n) * n - double(m) * m;
            cplx damp = std::exp(cplx(-(Delta * Delta / D) * sum2,
                                      (Delta * Delta / D) * u * dif2 - dif2 * phi_q +
                                          (n - m) * phi_b));
            cplx alpha = (2.0 * Delta / D) * cplx(double(n + m), -u * double(n - m));
            cplx s = cplx(0.0, (l - (n - m)) * spec.omega_b) - alpha;
            acc += Jn * Jm * damp * sinhc(s * (0.5 * Tb));
        }
    }
    return acc;
}

// Independent certification path: evaluate the full density on a grid over
// the central bunching period, divide out the envelope, project onto the
// harmonic by Simpson quadrature.
inline cplx bunching_oracle(const GaussianWavepacket& wp, const ModulationSpec& spec,
                            int l, double t_drift, int n_samples = 1025) {
    if (n_samples % 2 == 0) ++n_samples;
    double Tb = spec.period();
    double h = Tb / (n_samples - 1);
    double st = wp.sigma_t(t_drift);
    std::vector<cplx> integrand(static_cast<std::size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        double tau = -0.5 * Tb + i * h;
        double f = temporal_density(wp, spec, tau, t_drift);
        double fe = wp.temporal_envelope(tau, t_drift);
        double fm = (fe > 1e-12 / (std::sqrt(2.0 * pi) * st)) ? f / fe : 0.0;
        integrand[std::size_t(i)] = fm * std::exp(cplx(0.0, l * spec.omega_b * tau));
    }
    std::vector<double> re(static_cast<std::size_t>(n_samples));
    std::vector<double> im(static_cast<std::size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        re[std::size_t(i)] = integrand[std::size_t(i)].real();
        im[std::size_t(i)] = integrand[std::size_t(i)].imag();
    }
    return cplx(simpson(re, h), simpson(im, h)) / Tb;
}

// The envelope/modulation factorization is only approximately periodic; the
// defect is the relative mismatch of f_mod between the central period and
// its neighbor, useful for quantifying when the factorized picture holds.
inline double factorization_defect(const GaussianWavepacket& wp, const ModulationSpec& spec,
                                   double t_drift, int n_samples = 257) {
    double Tb = spec.period();
    double h = Tb / (n_samples - 1);
    double worst = 0.0, peak = 0.0;
    std::vector<double> central(static_cast<std::size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        double tau = -0.5 * Tb + i * h;
        central[std::size_t(i)] = temporal_density(wp, spec, tau, t_drift) /
                                  wp.temporal_envelope(tau, t_drift);
        peak = std::max(peak, central[std::size_t(i)]);
    }
    for (int i = 0; i < n_samples; ++i) {
        double tau = -0.5 * Tb + i * h + Tb;
        double next = temporal_density(wp, spec, tau, t_drift) /
                      wp.temporal_envelope(tau, t_drift);
        worst = std::max(worst, std::abs(next - central[std::size_t(i)]));
    }
    return worst / peak;
}

struct BunchingSpectrum {
    std::vector<cplx> coeffs;  // l = 0..l_max, modulation phase excluded
    int l_max = 0;
    double omega_b = 0.0;
    double t_drift = 0.0;
    double sigma_t = 0.0;  // envelope width at the radiating plane
    double t0e = 0.0;      // envelope arrival time
    double t0_mod = 0.0;   // modulation phase reference

    // Zero-phase coefficient, reflected to negative l via B_{-l} = B_l*.
    cplx B0(int l) const {
        int a = std::abs(l);
        if (a > l_max) return 0.0;
        cplx v = coeffs[std::size_t(a)];
        return (l < 0) ? std::conj(v) : v;
    }
    // Full coefficient including the modulation phase e^{i l omega_b t0_mod}.
    cplx B(int l) const {
        return B0(l) * std::exp(cplx(0.0, l * omega_b * t0_mod));
    }
};

inline BunchingSpectrum make_bunching_spectrum(const GaussianWavepacket& wp,
                                               const ModulationSpec& spec, double t_drift,
                                               double t0e = 0.0, int l_max = 8) {
    BunchingSpectrum bs;
    bs.l_max = l_max;
    bs.omega_b = spec.omega_b;
    bs.t_drift = t_drift;
    bs.sigma_t = wp.sigma_t(t_drift);
    bs.t0e = t0e;
    bs.t0_mod = spec.t0_mod;
    ModulationSpec zero_phase = spec;
    zero_phase.t0_mod = 0.0;
    bs.coeffs.resize(std::size_t(l_max) + 1);
    for (int l = 0; l <= l_max; ++l)
        bs.coeffs[std::size_t(l)] = fourier_coefficient_Bl(wp, zero_phase, l, t_drift);
    return bs;
}

// Composite spectral bunching factor: each harmonic line carries a Gaussian
// envelope of width 1/sigma_t around l omega_b, the arrival phase, and the
// modulation phase (through B).
inline cplx bunching_factor_spectrum(const BunchingSpectrum& bs, double omega) {
    cplx acc = 0.0;
    for (int l = -bs.l_max; l <= bs.l_max; ++l) {
        double d = omega - l * bs.omega_b;
        acc += bs.B(l) * std::exp(cplx(-0.5 * bs.sigma_t * bs.sigma_t * d * d,
                                       d * bs.t0e));
    }
    return acc;
}

inline double optimal_drift_estimate(const GaussianWavepacket& wp, const ModulationSpec& spec) {
    if (!(spec.g2 > 0.0))
        throw validation_error("optimal drift undefined for g2 = 0 (no bunching)");
    // Half a bunching period of relative slip at the maximal momentum
    // excursion g2 * delta_p.
    return 0.5 * spec.period() * wp.el.p0 / (spec.g2 * spec.delta_p(wp.el));
}

inline double optimal_drift_refined(const GaussianWavepacket& wp, const ModulationSpec& spec,
                                    double rel_tol = 1e-5) {
    double est = optimal_drift_estimate(wp, spec);
    auto neg_b1 = [&](double t) { return -std::abs(fourier_coefficient_Bl(wp, spec, 1, t)); };
    return golden_min(neg_b1, 0.25 * est, 3.0 * est, rel_tol * est);
}

// Full width of the central density spike, quoted as twice the
// Gaussian-equivalent sigma: 2 sigma_b = FWHM / sqrt(2 ln 2), with the FWHM
// read off the envelope-divided density by linear interpolation.
inline double micro_bunch_width(const GaussianWavepacket& wp, const ModulationSpec& spec,
                                double t_drift, int n_samples = 2049) {
    double Tb = spec.period();
    double h = Tb / (n_samples - 1);
    std::vector<double> f(static_cast<std::size_t>(n_samples));
    int i_pk = 0;
    for (int i = 0; i < n_samples; ++i) {
        double tau = -0.5 * Tb + i * h;
        f[std::size_t(i)] = temporal_density(wp, spec, tau, t_drift) /
                            wp.temporal_envelope(tau, t_drift);
        if (f[std::size_t(i)] > f[std::size_t(i_pk)]) i_pk = i;
    }
    double base = *std::min_element(f.begin(), f.end());
    double half = base + 0.5 * (f[std::size_t(i_pk)] - base);
    auto cross = [&](int from, int step) {
        for (int i = from; i + step >= 0 && i + step < n_samples; i += step) {
            double a = f[std::size_t(i)], b = f[std::size_t(i + step)];
            if ((a - half) * (b - half) <= 0.0 && a != b)
                return i + (half - a) / (b - a) * step;
        }
        return double(from);  // no crossing found; degenerate profile
    };
    double lo = cross(i_pk, -1), hi = cross(i_pk, +1);
    double fwhm = (hi - lo) * h;
    return fwhm / std::sqrt(2.0 * std::log(2.0));
}

// Largest harmonic the micro-bunch substructure can support, l < T_b/(2 pi w)
// with w the substructure width (sigma_b, not the envelope).
inline double harmonic_support_bound(double period, double width) {
    return period / (2.0 * pi * width);
}

} // namespace wprad
