// Preset walkthrough: render the modulated emission map of a preset scenario
// and locate the revival spots where bunching harmonics meet grating ridges.

#include <cstdio>

#include "wprad/presets.hpp"

using namespace wprad;

int main() {
    Scenario sc = resolve_scenario(preset_config("fig5d"));
    BunchingSpectrum bs =
        make_bunching_spectrum(sc.wp, sc.mod, sc.t_drift, sc.t0e, sc.l_max);
    SpectralMap map = spectral_map(sc.grating, sc.el, sc.plane, &bs, sc.axes,
                                   MapChannel::revival);

    std::printf("map %zu x %zu, packet sigma_t at plane %.3e s\n", map.n_theta(),
                map.n_lambda(), sc.plane.sigma_t);
    std::printf("\n   theta      lambda/lambda_G   l  m\n");
    for (const auto& s : find_revival_spots(map, sc.plane.sigma_t))
        std::printf("%9.6f   %9.6f        %2d %2d\n", s.Theta,
                    s.lambda / sc.grating.lambda_G, s.l, s.m);

    auto predicted = revival_spots(sc.grating, sc.el.beta0, sc.mod.omega_b, sc.l_max,
                                   0.5 * micro_bunch_width(sc.wp, sc.mod, sc.t_drift));
    std::printf("\n%zu resonances predicted before windowing\n", predicted.size());
    return 0;
}
