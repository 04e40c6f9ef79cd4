#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "wprad/bessel.hpp"
#include "wprad/electron.hpp"

namespace wprad {

// Multiphoton near-field modulation applied as an instantaneous momentum-space
// kick at t = 0 of the drift clock. g2 is the full Bessel argument (twice the
// coupling magnitude), so the sideband weights are J_n(g2). The finite
// interaction length inside the near field is not resolved.
struct ModulationSpec {
    double g2      = 0.0;  // dimensionless
    double omega_b = 0.0;  // rad/s
    double t0_mod  = 0.0;  // s; modulation phase reference
    int    n_max   = 0;    // ladder truncation |n| <= n_max

    static ModulationSpec make(double g2, double omega_b, double t0_mod = 0.0,
                               int n_max = -1) {
        if (!(g2 >= 0.0)) throw validation_error("modulation: g2 must be >= 0");
        if (!(omega_b > 0.0)) throw validation_error("modulation: omega_b must be > 0");
        ModulationSpec s;
        s.g2 = g2;
        s.omega_b = omega_b;
        s.t0_mod = t0_mod;
        s.n_max = (n_max >= 0) ? n_max : int(std::ceil(g2)) + 20;
        if (s.n_max > bessel::order_limit)
            throw validation_error("modulation: n_max exceeds Bessel order limit");
        // Truncation adequacy: the retained ladder must carry all but 1e-10
        // of the norm, sum_n J_n^2 = 1.
        auto J = bessel::ladder(g2, s.n_max);
        double norm = J[0] * J[0];
        for (int n = 1; n <= s.n_max; ++n) norm += 2.0 * J[std::size_t(n)] * J[std::size_t(n)];
        if (norm < 1.0 - 1e-10)
            throw validation_error("modulation: n_max truncates the sideband ladder");
        return s;
    }

    double period() const { return 2.0 * pi / omega_b; }
    double phi_b() const { return omega_b * t0_mod; }

    // Photon momentum quantum delta_p = hbar omega_b / v0.
    double delta_p(const RelativisticElectron& el) const {
        return hbar * omega_b / el.v0;
    }

    // Per-sideband arrival-time walk-off rate delta = hbar omega_b/(m* v0^2);
    // sideband n arrives n*delta*t early/late after drift t.
    double walkoff(const RelativisticElectron& el) const {
        return hbar * omega_b / (el.m_star * el.v0 * el.v0);
    }
};

// One rung of the momentum ladder: a Gaussian of width sigma_p0 centered at
// p0 + n delta_p with complex weight J_n(g2) e^{i n phi_b}.
struct MomentumComponent {
    int n = 0;
    cplx weight;
    double center  = 0.0;  // kg m/s, absolute momentum
    double sigma_p = 0.0;  // kg m/s
};

inline std::vector<double> sideband_weights(const ModulationSpec& spec) {
    return bessel::ladder(spec.g2, spec.n_max);
}

inline double sideband_J(const std::vector<double>& J, int n) {
    int a = std::abs(n);
    double v = J[std::size_t(a)];
    return (n < 0 && (a % 2)) ? -v : v;
}

inline std::vector<MomentumComponent>
modulated_momentum_amplitudes(const GaussianWavepacket& wp, const ModulationSpec& spec) {
    auto J = sideband_weights(spec);
    double dp = spec.delta_p(wp.el);
    std::vector<MomentumComponent> out;
    out.reserve(2 * std::size_t(spec.n_max) + 1);
    for (int n = -spec.n_max; n <= spec.n_max; ++n) {
        MomentumComponent c;
        c.n = n;
        c.weight = sideband_J(J, n) * std::exp(cplx(0.0, n * spec.phi_b()));
        c.center = wp.el.p0 + n * dp;
        c.sigma_p = wp.sigma_p0();
        out.push_back(c);
    }
    return out;
}

// Momentum-space amplitude at p = p0 + pp, immediately after the kick. Each
// sideband keeps the chirp phase of the pre-kick state on its own offset
// (the kick convolves the chirped Gaussian, it does not re-center the phase).
inline cplx momentum_amplitude(const GaussianWavepacket& wp, const ModulationSpec& spec,
                               double pp) {
    auto J = sideband_weights(spec);
    double dp = spec.delta_p(wp.el);
    double s2 = wp.sigma_p0() * wp.sigma_p0();
    cplx acc = 0.0;
    for (int n = -spec.n_max; n <= spec.n_max; ++n) {
        double d = pp - n * dp;
        acc += sideband_J(J, n) *
               std::exp(cplx(-d * d / (4.0 * s2),
                             n * spec.phi_b() - wp.chirp_C * d * d));
    }
    return std::pow(2.0 * pi * wp.sigma_p0() * wp.sigma_p0(), -0.25) * acc;
}

// Modulated wavefunction after drift t, as a function of the comoving offset
// zeta = z - v0 t. Sideband n rides at the full group-velocity offset
// n delta_p/m* while its phase is referenced to the half offset; both follow
// from the exact Gaussian integral over the ladder.
inline cplx modulated_psi_comoving(const GaussianWavepacket& wp, const ModulationSpec& spec,
                                   double zeta, double t) {
    auto J = sideband_weights(spec);
    double dp = spec.delta_p(wp.el);
    cplx s2 = wp.sigma_z2_complex(t);
    double dz = dp * t / wp.el.m_star;                 // envelope displacement / n
    double phi_q = dp * dp * t / (2.0 * wp.el.m_star * hbar);
    cplx acc = 0.0;
    for (int n = -spec.n_max; n <= spec.n_max; ++n) {
        double shifted = zeta - n * dz;
        // Equivalently n dp (zeta - n dz/2)/hbar + n phi_b: the phase is
        // referenced to half the envelope offset.
        double phase = n * dp * zeta / hbar - double(n) * n * phi_q + n * spec.phi_b();
        acc += sideband_J(J, n) * std::exp(-shifted * shifted / (4.0 * s2) +
                                           cplx(0.0, phase));
    }
    cplx pref = std::pow(2.0 * pi * wp.sigma_z0 * wp.sigma_z0, -0.25) *
                std::sqrt(cplx(wp.sigma_z0 * wp.sigma_z0) / s2);
    return pref * acc;
}

// Same state in lab coordinates, carrier included.
inline cplx modulated_psi(const GaussianWavepacket& wp, const ModulationSpec& spec,
                          double z, double t) {
    cplx carrier = std::exp(cplx(0.0, (wp.el.p0 * z - wp.el.E0 * t) / hbar));
    return carrier * modulated_psi_comoving(wp, spec, z - wp.el.v0 * t, t);
}

// Closed-form |psi|^2: the same quantity as |modulated_psi_comoving|^2 but
// assembled directly from the (n,m) interference sum. Kept as an independent
// expansion and cross-checked against the amplitude route in the tests.
inline double density_probability(const GaussianWavepacket& wp, const ModulationSpec& spec,
                                  double zeta, double t) {
    auto J = sideband_weights(spec);
    double dp = spec.delta_p(wp.el);
    cplx s2 = wp.sigma_z2_complex(t);
    cplx s2c = std::conj(s2);
    double dz = dp * t / wp.el.m_star;
    double phi_q = dp * dp * t / (2.0 * wp.el.m_star * hbar);
    double pref = wp.sigma_z0 / (std::sqrt(2.0 * pi) * std::abs(s2));

    cplx acc = 0.0;
    for (int n = -spec.n_max; n <= spec.n_max; ++n) {
        double Jn = sideband_J(J, n);
        if (Jn == 0.0) continue;
        double zn = zeta - n * dz;
        cplx gn = -zn * zn / (4.0 * s2);
        // diagonal term
        acc += Jn * Jn * std::exp(gn - zn * zn / (4.0 * s2c));
        for (int m = n + 1; m <= spec.n_max; ++m) {
            double Jm = sideband_J(J, m);
            if (Jm == 0.0) continue;
            double zm = zeta - m * dz;
            double phase = (n - m) * (dp * zeta / hbar + spec.phi_b()) -
                           double(n * n - m * m) * phi_q;
            cplx term = Jn * Jm * std::exp(gn - zm * zm / (4.0 * s2c) +
                                           cplx(0.0, phase));
            acc += 2.0 * std::real(term);  // (n,m) + (m,n)
        }
    }
    return pref * std::real(acc);
}

// Arrival-time density at a plane after drift t; tau runs from the envelope
// center's arrival, early sidebands at negative tau.
inline double temporal_density(const GaussianWavepacket& wp, const ModulationSpec& spec,
                               double tau, double t) {
    cplx a = modulated_psi_comoving(wp, spec, -wp.el.v0 * tau, t);
    return wp.el.v0 * std::norm(a);
}

} // namespace wprad
