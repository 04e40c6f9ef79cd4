#pragma once

#include <cmath>
#include <complex>

#include "wprad/constants.hpp"
#include "wprad/numeric.hpp"

namespace wprad {

// Kinematics of the carrier momentum p0 = gamma0 m v0. m_star = gamma0^3 m is
// the longitudinal effective mass that appears in the quadratic dispersion.
struct RelativisticElectron {
    double beta0   = 0.0;
    double gamma0  = 0.0;
    double v0      = 0.0;  // m/s
    double p0      = 0.0;  // kg m/s
    double E0      = 0.0;  // J, total energy at p0
    double m_star  = 0.0;  // kg

    static RelativisticElectron from_beta(double beta0) {
        if (!(beta0 > 0.0 && beta0 < 1.0))
            throw validation_error("electron: beta0 must lie in (0,1)");
        RelativisticElectron e;
        e.beta0  = beta0;
        e.gamma0 = 1.0 / std::sqrt(1.0 - beta0 * beta0);
        e.v0     = beta0 * c0;
        e.p0     = e.gamma0 * m_e * e.v0;
        e.E0     = e.gamma0 * m_e * c0 * c0;
        e.m_star = e.gamma0 * e.gamma0 * e.gamma0 * m_e;
        return e;
    }

    double energy_exact(double p) const {
        return c0 * std::sqrt(m_e * m_e * c0 * c0 + p * p);
    }

    // Second-order expansion around p0; this is the dispersion used by the
    // whole analytic chain downstream.
    double energy_quadratic(double p) const {
        double dp = p - p0;
        return E0 + v0 * dp + dp * dp / (2.0 * m_star);
    }
};

// Longitudinal Gaussian wavepacket with fixed momentum width
// sigma_p0 = hbar/(2 sigma_z0). chirp_C adds a quadratic momentum-space phase
// exp(-i C (p-p0)^2); with this sign a negative C contracts the packet until
// it reaches the sigma_z0 waist at waist_time(), then it expands again.
struct GaussianWavepacket {
    RelativisticElectron el;
    double sigma_z0 = 0.0;  // waist, m
    double chirp_C  = 0.0;  // 1/(kg m/s)^2

    static GaussianWavepacket make(const RelativisticElectron& el, double sigma_z0,
                                   double chirp_C = 0.0) {
        if (!(sigma_z0 > 0.0))
            throw validation_error("wavepacket: sigma_z0 must be > 0");
        return GaussianWavepacket{el, sigma_z0, chirp_C};
    }

    double sigma_p0() const { return hbar / (2.0 * sigma_z0); }
    double sigma_t0() const { return sigma_z0 / el.v0; }

    // Dispersive spreading rate; sigma_z(t) = sigma_z0 sqrt(1 + (xi t)^2) for
    // an unchirped packet.
    double xi() const { return hbar / (2.0 * el.m_star * sigma_z0 * sigma_z0); }

    // Time at which a chirped packet passes through its waist.
    double waist_time() const { return -2.0 * el.m_star * hbar * chirp_C; }

    // Complex squared width sigma~_z^2(t) = sigma_z0^2 + i hbar (t - t_w)/(2 m*).
    cplx sigma_z2_complex(double t) const {
        return {sigma_z0 * sigma_z0,
                hbar * (t - waist_time()) / (2.0 * el.m_star)};
    }

    // Physical rms width of |psi|^2: |sigma~_z^2(t)| / sigma_z0.
    double sigma_z(double t) const {
        double u = xi() * (t - waist_time());
        return sigma_z0 * std::sqrt(1.0 + u * u);
    }

    double sigma_t(double t) const { return sigma_z(t) / el.v0; }
    double sigma_t_at_drift(double L_D) const { return sigma_t(L_D / el.v0); }

    // Free wavefunction at lab position z and time t (quadratic dispersion).
    cplx psi(double z, double t) const {
        double zeta = z - el.v0 * t;
        cplx s2 = sigma_z2_complex(t);
        cplx carrier = std::exp(cplx(0.0, (el.p0 * z - el.E0 * t) / hbar));
        cplx pref = std::pow(2.0 * pi * sigma_z0 * sigma_z0, -0.25) *
                    std::sqrt(cplx(sigma_z0 * sigma_z0) / s2);
        return carrier * pref * std::exp(-zeta * zeta / (4.0 * s2));
    }

    // |psi|^2 as a function of the comoving offset zeta = z - v0 t.
    double density_envelope(double zeta, double t) const {
        double s = sigma_z(t);
        return std::exp(-zeta * zeta / (2.0 * s * s)) / (std::sqrt(2.0 * pi) * s);
    }

    // Arrival-time density at a fixed plane, tau measured from the envelope
    // center's arrival.
    double temporal_envelope(double tau, double t) const {
        double s = sigma_t(t);
        return std::exp(-tau * tau / (2.0 * s * s)) / (std::sqrt(2.0 * pi) * s);
    }

    // Drift time at which sigma_z(t) first reaches `target` past the waist,
    // by bisection on the monotone branch.
    double drift_time_for_width(double target) const {
        if (!(target >= sigma_z0))
            throw validation_error("drift_time_for_width: target below waist width");
        double tw = waist_time();
        if (target == sigma_z0) return tw;
        double hi = tw + 1.0 / xi();
        while (sigma_z(hi) < target) hi = tw + 2.0 * (hi - tw);
        auto f = [&](double t) { return sigma_z(t) - target; };
        return bisect(f, tw, hi, (hi - tw) * 1e-14);
    }

    double drift_length_for_width(double target) const {
        return el.v0 * drift_time_for_width(target);
    }
};

// The wavepacket as seen at an interaction plane: temporal envelope width plus
// the envelope-center arrival time t0e.
struct PacketAtPlane {
    double sigma_t = 0.0;  // s
    double t0e     = 0.0;  // s
};

inline PacketAtPlane at_plane(const GaussianWavepacket& wp, double t_drift,
                              double t0e = 0.0) {
    return PacketAtPlane{wp.sigma_t(t_drift), t0e};
}

} // namespace wprad
