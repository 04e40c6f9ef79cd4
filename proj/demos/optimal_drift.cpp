// Library walkthrough: modulate a wavepacket, drift it to peak bunching,
// report the harmonic ladder and the micro-bunch width.

#include <cstdio>

#include "wprad/bunching.hpp"

using namespace wprad;

int main() {
    auto el = RelativisticElectron::from_beta(0.7);
    double lambda_b = 800e-9;
    double lambda_G = lambda_b / 0.6;
    auto wp = GaussianWavepacket::make(el, 0.22 * lambda_G);
    auto mod = ModulationSpec::make(11.4, 2.0 * pi * c0 / lambda_b);

    double t_est = optimal_drift_estimate(wp, mod);
    double t_opt = optimal_drift_refined(wp, mod);
    std::printf("drift estimate   %.6e s\n", t_est);
    std::printf("refined optimum  %.6e s  (%.3f x estimate)\n", t_opt, t_opt / t_est);
    std::printf("micro-bunch 2sigma_b  %.2f as\n",
                1e18 * micro_bunch_width(wp, mod, t_opt));

    std::printf("\n l   |B_l| at optimum\n");
    for (int l = 1; l <= 5; ++l)
        std::printf("%2d   %.4f\n", l, std::abs(fourier_coefficient_Bl(wp, mod, l, t_opt)));
    return 0;
}
