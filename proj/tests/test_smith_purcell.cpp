#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "wprad/smith_purcell.hpp"

using Catch::Approx;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::MessageMatches;
using namespace wprad;

namespace {

const double lambda_G = 4.0 / 3.0 * 1e-6;
const double omega_b_800 = 2.0 * pi * c0 / 800e-9;

GratingSpec grating(std::vector<int> m = {1, 2, 3}) {
    return GratingSpec::make(lambda_G, 9, std::move(m));
}

RelativisticElectron el07() { return RelativisticElectron::from_beta(0.7); }

} // namespace

TEST_CASE("grating spec validation and derived scales") {
    REQUIRE_THROWS_AS(GratingSpec::make(0.0, 9, {1}), validation_error);
    REQUIRE_THROWS_AS(GratingSpec::make(lambda_G, 0, {1}), validation_error);
    REQUIRE_THROWS_AS(GratingSpec::make(lambda_G, 9, {}), validation_error);
    REQUIRE_THROWS_AS(GratingSpec::make(lambda_G, 9, {0}), validation_error);
    auto g = grating();
    REQUIRE(g.L_G() == Approx(9.0 * lambda_G).epsilon(1e-15));
    REQUIRE(g.k_G() == Approx(2.0 * pi / lambda_G).epsilon(1e-15));
    REQUIRE(g.m_max() == 3);
}

TEST_CASE("emission wavelength law") {
    auto g = grating();
    REQUIRE(spr_wavelength(g, 0.7, 0.5 * pi, 1) ==
            Approx(lambda_G / 0.7).epsilon(1e-14));
    REQUIRE(spr_wavelength(g, 0.7, 0.5 * pi, 2) ==
            Approx(0.5 * lambda_G / 0.7).epsilon(1e-14));
    // Backward emission is redder than forward.
    REQUIRE(spr_wavelength(g, 0.7, 0.75 * pi, 1) > spr_wavelength(g, 0.7, 0.25 * pi, 1));
    REQUIRE_THROWS_AS(spr_wavelength(g, 0.7, 0.0, 1), validation_error);
    REQUIRE_THROWS_AS(spr_wavelength(g, 0.7, pi, 1), validation_error);
}

TEST_CASE("emission wavelength sits exactly on the synchronism ridge") {
    auto g = grating();
    double v0 = el07().v0;
    for (double Theta : {0.3, 0.5 * pi, 2.5})
        for (int m : {1, 2, 3}) {
            double lam = spr_wavelength(g, 0.7, Theta, m);
            double omega = 2.0 * pi * c0 / lam;
            REQUIRE(std::abs(floquet_detuning(g, v0, Theta, omega, m)) <
                    1e-9 * omega / v0);
        }
}

TEST_CASE("cutoff windows and the backward-edge survival factor") {
    auto g = grating();
    double sigma_z = 0.22 * lambda_G;
    auto reports = cutoff_window(g, 0.7, sigma_z);
    REQUIRE(reports.size() == 3);

    REQUIRE(reports[0].window_low == Approx(0.3 * lambda_G / (2.0 * pi)).epsilon(1e-12));
    REQUIRE(reports[0].window_high == Approx(1.7 * lambda_G / (2.0 * pi)).epsilon(1e-12));
    REQUIRE(reports[0].cls == CutoffClass::partially_cut);
    REQUIRE(reports[0].edge_suppression == Approx(0.5162515964925579).epsilon(1e-10));

    REQUIRE(reports[1].cls == CutoffClass::barely_observable);
    REQUIRE(reports[1].edge_suppression == Approx(0.07103062414646598).epsilon(1e-10));

    REQUIRE(reports[2].cls == CutoffClass::extinct);
    REQUIRE(reports[2].edge_suppression == Approx(0.0026046697686391397).epsilon(1e-10));

    // A far smaller packet leaves every order untouched.
    for (const auto& r : cutoff_window(g, 0.7, 1e-9))
        REQUIRE(r.cls == CutoffClass::unaffected);
    REQUIRE(std::string(to_string(CutoffClass::extinct)) == "extinct");
}

TEST_CASE("revival spot geometry") {
    auto g = grating();
    auto spots = revival_spots(g, 0.7, omega_b_800, 8);
    // Inventory: l=1 m=1,2,3; l=2 m=2,3; l=3 m=3; l=4 m=3.
    REQUIRE(spots.size() == 7);
    int count_l1 = 0;
    for (const auto& s : spots) {
        if (s.l == 1) ++count_l1;
        REQUIRE(s.lambda == Approx(0.6 * lambda_G / s.l).epsilon(1e-12));
        double expect_cos = 1.0 / 0.7 - (double(s.m) / s.l) * 0.6;
        REQUIRE(std::cos(s.Theta) == Approx(expect_cos).epsilon(1e-12));
    }
    REQUIRE(count_l1 == 3);
    for (std::size_t i = 1; i < spots.size(); ++i)
        REQUIRE(spots[i].Theta >= spots[i - 1].Theta);

    // Fundamental-line angles, pinned.
    std::vector<double> l1;
    for (const auto& s : spots)
        if (s.l == 1) l1.push_back(s.Theta);
    REQUIRE(l1[0] == Approx(0.5942450326942045).epsilon(1e-10));
    REQUIRE(l1[1] == Approx(1.3401863155087832).epsilon(1e-10));
    REQUIRE(l1[2] == Approx(1.9513435184847160).epsilon(1e-10));
}

TEST_CASE("substructure width limits the revival harmonics") {
    auto g = grating();
    double Tb = 2.0 * pi / omega_b_800;
    // A ~37 as micro-bunch supports harmonics up to l ~ 11: nothing filtered.
    REQUIRE(revival_spots(g, 0.7, omega_b_800, 8, 3.7e-17).size() == 7);
    // Judged by the full envelope width instead, no harmonic survives.
    REQUIRE(revival_spots(g, 0.7, omega_b_800, 8, 1.4e-15).empty());
    REQUIRE(harmonic_support_bound(Tb, 3.7e-17) > 8.0);
    REQUIRE(harmonic_support_bound(Tb, 1.4e-15) < 1.0);
}

TEST_CASE("linewidth budget switches with the bunch train length") {
    auto g = grating();
    auto short_train = linewidths(g, 1, 1, 3.0);
    REQUIRE(short_train.sync_rel == Approx(1.0 / 9.0).epsilon(1e-14));
    REQUIRE(short_train.bunching_rel == Approx((2.0 / pi) / 3.0).epsilon(1e-14));
    REQUIRE(short_train.sync_dominates);
    auto long_train = linewidths(g, 1, 1, 25.0);
    REQUIRE_FALSE(long_train.sync_dominates);
    REQUIRE_THROWS_AS(linewidths(g, 0, 1, 3.0), validation_error);
}

TEST_CASE("map axis resolution rule") {
    auto g = grating();
    auto coarse = make_axes(0.2 * lambda_G, 2.6 * lambda_G, 40, 0.3, 2.8, 9);
    REQUIRE_THROWS_MATCHES(validate_map_axes(g, coarse), resolution_error,
                           MessageMatches(ContainsSubstring("under-resolved")));
    auto fine = make_axes(0.2 * lambda_G, 2.6 * lambda_G, 2600, 0.3, 2.8, 9);
    REQUIRE_NOTHROW(validate_map_axes(g, fine));
    auto bad_theta = make_axes(0.2 * lambda_G, 2.6 * lambda_G, 2600, 0.0, 2.8, 9);
    REQUIRE_THROWS_AS(validate_map_axes(g, bad_theta), validation_error);
}

TEST_CASE("classical map crests on the wavelength law") {
    auto g = grating();
    auto el = el07();
    // Well-resolved window covering the fundamental at all three angles.
    auto axes = make_axes(0.6 * lambda_G, 2.3 * lambda_G, 700, 0.25 * pi, 0.75 * pi, 3);
    auto map = spectral_map(g, el, {0.0, 0.0}, nullptr, axes, MapChannel::classical);
    for (std::size_t i = 0; i < 3; ++i) {
        double lam1 = spr_wavelength(g, 0.7, axes.theta[i], 1);
        std::size_t crest = ridge_crest_index(map, g, 0.7, i, 1);
        double d_lambda = axes.lambda[1] - axes.lambda[0];
        long expect = std::lround((lam1 - axes.lambda.front()) / d_lambda);
        REQUIRE(std::llabs(long(crest) - expect) <= 1);
        REQUIRE(map.label_m[i * map.n_lambda() + crest] == 1);
    }
}

TEST_CASE("quantum channel never exceeds the classical one") {
    auto g = grating();
    auto el = el07();
    auto axes = make_axes(1.2 * lambda_G, 2.2 * lambda_G, 600, 0.3, 2.8, 5);
    PacketAtPlane pk{0.22 * lambda_G / el.v0, 0.0};
    auto cls = spectral_map(g, el, pk, nullptr, axes, MapChannel::classical);
    auto qtm = spectral_map(g, el, pk, nullptr, axes, MapChannel::quantum);
    for (std::size_t c = 0; c < cls.values.size(); ++c) {
        REQUIRE(qtm.values[c] <= cls.values[c] * (1.0 + 1e-12));
        REQUIRE(qtm.values[c] >= 0.0);
    }
}

TEST_CASE("map channel preconditions") {
    auto g = grating();
    auto el = el07();
    auto axes = make_axes(1.2 * lambda_G, 2.2 * lambda_G, 600, 0.3, 2.8, 3);
    REQUIRE_THROWS_AS(
        spectral_map(g, el, {0.0, 0.0}, nullptr, axes, MapChannel::modulated),
        validation_error);
    REQUIRE_THROWS_AS(spectral_map(g, el, {0.0, 0.0}, nullptr, axes,
                                   MapChannel::classical, {1.0}),
                      validation_error);
}

TEST_CASE("maps are thread-count invariant") {
    auto g = grating();
    auto el = el07();
    auto axes = make_axes(1.2 * lambda_G, 2.2 * lambda_G, 600, 0.3, 2.8, 5);
    auto a = spectral_map(g, el, {0.0, 0.0}, nullptr, axes, MapChannel::classical, {}, 1);
    auto b = spectral_map(g, el, {0.0, 0.0}, nullptr, axes, MapChannel::classical, {}, 4);
    for (std::size_t c = 0; c < a.values.size(); ++c)
        REQUIRE(a.values[c] == b.values[c]);
}
