#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "cantorspec/amo.hpp"

using namespace cantorspec;

TEST_CASE("transfer matrix") {
    SECTION("free case") {
        auto T = transfer_matrix(1.25, AmoParams(0.0, Rational(1, 3)), 2);
        CHECK(T.a == 1.25);
        CHECK(T.b == -1.0);
        CHECK(T.c == 1.0);
        CHECK(T.d == 0.0);
    }
    SECTION("unimodularity") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int it = 0; it < 200; ++it) {
            AmoParams p(u(rng), Rational(static_cast<int>(rng() % 12), 13), u(rng) + 1.0);
            Matrix2 m = transfer_matrix(4.0 * u(rng), p, static_cast<int>(rng() % 100));
            CHECK(std::abs(m.det() - 1.0) <= 1e-12);
        }
    }
    SECTION("period-2 product at the hand-computed point") {
        AmoParams p(1.0, Rational(1, 2), 0.0);
        Matrix2 m = transfer_matrix(0.0, p, 2) * transfer_matrix(0.0, p, 1);
        CHECK(m.a == Catch::Approx(-5.0).margin(1e-14));
        CHECK(m.b == Catch::Approx(2.0).margin(1e-14));
        CHECK(m.c == Catch::Approx(2.0).margin(1e-14));
        CHECK(m.d == Catch::Approx(-1.0).margin(1e-14));
        CHECK(m.trace() == Catch::Approx(-6.0).margin(1e-14));
    }
}

TEST_CASE("trace model") {
    SECTION("free operator: no phase dependence, Delta(E) = E at q = 1") {
        auto m = fit_trace_model(0.0, Rational(0, 1));
        CHECK(m.amp <= 1e-12);
        REQUIRE(m.delta_coeffs.size() == 2);
        CHECK(m.delta_coeffs[0] == Catch::Approx(0.0).margin(1e-14));
        CHECK(m.delta_coeffs[1] == 1.0);
    }
    SECTION("q = 1: t = E - 2 lambda cos(2 pi omega)") {
        auto m = fit_trace_model(0.7, Rational(0, 1));
        CHECK(m.amp == Catch::Approx(1.4).epsilon(1e-12));
        CHECK(m.delta_coeffs[1] == 1.0);
        CHECK(m.delta_coeffs[0] == Catch::Approx(0.0).margin(1e-12));
    }
    SECTION("q = 2 at lambda = 1: amplitude 2 and explicit Delta") {
        auto m = fit_trace_model(1.0, Rational(1, 2));
        CHECK(m.amp == Catch::Approx(2.0).epsilon(1e-10));
        // Delta(E) = E^2 - 2 - 2 lambda^2
        REQUIRE(m.delta_coeffs.size() == 3);
        CHECK(m.delta_coeffs[2] == 1.0);
        CHECK(m.delta_coeffs[1] == Catch::Approx(0.0).margin(1e-12));
        CHECK(m.delta_coeffs[0] == Catch::Approx(-4.0).epsilon(1e-12));
    }
    SECTION("amplitude follows 2 |lambda|^q") {
        for (auto [lambda, p, q] : {std::tuple{0.6, 1, 3}, {0.9, 2, 5}, {0.5, 3, 8}}) {
            auto m = fit_trace_model(lambda, Rational(p, q));
            CHECK(m.amp ==
                  Catch::Approx(2.0 * std::pow(std::abs(lambda), q)).epsilon(1e-6));
        }
    }
    SECTION("model reproduces a dense omega sweep") {
        auto m = fit_trace_model(1.0, Rational(1, 2));
        for (int ei = 0; ei < 16; ++ei) {
            const double E = -4.0 + 8.0 * ei / 15.0;
            for (int wi = 0; wi < 64; ++wi) {
                const double w = static_cast<double>(wi) / 64.0;
                const PeriodTrace tr(1.0, Rational(1, 2), w);
                const double angle = 2.0 * std::numbers::pi * 2.0 * w;
                const double model =
                    m.delta_poly(E) + m.a_coeff * std::cos(angle) + m.b_coeff * std::sin(angle);
                CHECK(tr(E) == Catch::Approx(model).margin(1e-9));
            }
        }
    }
    SECTION("residual invariant holds on a parameter batch") {
        for (auto [lambda, p, q] :
             {std::tuple{0.0, 1, 5}, {0.3, 2, 7}, {0.5, 5, 13}, {0.9, 8, 21}, {1.0, 13, 34}}) {
            auto m = fit_trace_model(lambda, Rational(p, q));
            CHECK(m.fit_residual <= 1e-8 * std::pow(1.0 + std::abs(lambda), q));
            CHECK(m.delta_coeffs.size() == static_cast<std::size_t>(q) + 1);
            CHECK(m.delta_coeffs.back() == 1.0);
        }
    }
}

TEST_CASE("rational spectra") {
    SECTION("free spectrum is [-2, 2] for any frequency") {
        for (auto [p, q] : {std::pair{1, 5}, {1, 2}, {3, 7}, {8, 13}, {0, 1}}) {
            auto s = spectrum_rational(0.0, Rational(p, q));
            REQUIRE(s.spectrum.is_interval());
            CHECK(s.spectrum.inf() == Catch::Approx(-2.0).margin(1e-9));
            CHECK(s.spectrum.sup() == Catch::Approx(2.0).margin(1e-9));
        }
    }
    SECTION("q = 2: the phase union is one band with exact edges") {
        // |Delta| <= 2 + amp collapses to E^2 <= 4 (1 + lambda^2); the central
        // gap closes at the phase-union level (fixed phases keep it open)
        const double lambda = 0.5;
        auto s = spectrum_rational(lambda, Rational(1, 2));
        REQUIRE(s.spectrum.is_interval());
        const double edge = 2.0 * std::sqrt(1.0 + lambda * lambda);
        CHECK(s.spectrum.sup() == Catch::Approx(edge).margin(1e-9));
        CHECK(s.spectrum.inf() == Catch::Approx(-edge).margin(1e-9));
    }
    SECTION("operator norm bound and band count") {
        std::mt19937_64 rng(7331);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int it = 0; it < 12; ++it) {
            const int q = 2 + static_cast<int>(rng() % 12);
            int p = 1 + static_cast<int>(rng() % (q - 1));
            while (std::gcd(p, q) != 1) p = 1 + static_cast<int>(rng() % (q - 1));
            const double lambda = u(rng);
            auto s = spectrum_rational(lambda, Rational(p, q));
            CHECK(s.spectrum.size() <= static_cast<std::size_t>(q));
            CHECK(s.spectrum.inf() >= -2.0 - 2.0 * std::abs(lambda) - s.edge_tol);
            CHECK(s.spectrum.sup() <= 2.0 + 2.0 * std::abs(lambda) + s.edge_tol);
        }
    }
    SECTION("reflection symmetry and coupling sign symmetry") {
        for (auto [lambda, p, q] : {std::tuple{0.4, 1, 5}, {0.8, 3, 8}, {0.3, 2, 7}}) {
            auto s = spectrum_rational(lambda, Rational(p, q));
            std::vector<Interval> reflected;
            for (const Interval& iv : s.spectrum.parts())
                reflected.emplace_back(-iv.hi, -iv.lo);
            CHECK(hausdorff_distance(s.spectrum, IntervalUnion(reflected)) <= 2 * s.edge_tol);

            auto neg = spectrum_rational(-lambda, Rational(p, q));
            CHECK(hausdorff_distance(s.spectrum, neg.spectrum) <= 2 * s.edge_tol);
        }
    }
    SECTION("perturbation bound against the free interval") {
        IntervalUnion free_interval{{-2, 2}};
        for (auto [lambda, p, q] : {std::tuple{0.1, 1, 5}, {0.25, 5, 8}, {0.5, 8, 13}}) {
            auto s = spectrum_rational(lambda, Rational(p, q));
            CHECK(hausdorff_distance(s.spectrum, free_interval) <=
                  2.0 * std::abs(lambda) + 2.0 * s.edge_tol);
            CHECK(std::abs(s.spectrum.diameter() - 4.0) <=
                  4.0 * std::abs(lambda) + 4.0 * s.edge_tol);
        }
    }
    SECTION("edge_tol must be positive") {
        CHECK_THROWS_AS(spectrum_rational(0.5, Rational(1, 2), 0.0), ValidationError);
    }
}

TEST_CASE("fixed phase spectra") {
    SECTION("free case for several phases") {
        for (double w : {0.0, 0.17, 0.5, 0.99}) {
            auto s = spectrum_fixed_phase(0.0, Rational(1, 3), w);
            REQUIRE(s.spectrum.is_interval());
            CHECK(s.spectrum.inf() == Catch::Approx(-2.0).margin(1e-9));
            CHECK(s.spectrum.sup() == Catch::Approx(2.0).margin(1e-9));
            CHECK_FALSE(s.phase_union);
        }
    }
    SECTION("fixed-phase sets sit inside the phase union") {
        for (double w : {0.0, 0.11, 0.31, 0.73}) {
            auto fixed = spectrum_fixed_phase(0.6, Rational(2, 5), w);
            auto whole = spectrum_rational(0.6, Rational(2, 5));
            for (const Interval& part : fixed.spectrum.parts()) {
                bool contained = false;
                for (const Interval& host : whole.spectrum.parts())
                    if (host.lo <= part.lo + 2e-9 && part.hi <= host.hi + 2e-9) {
                        contained = true;
                        break;
                    }
                CHECK(contained);
            }
        }
    }
    SECTION("phase dependence is bounded through the trace model") {
        const double lambda = 0.3;
        const Rational freq(1, 3);
        auto m = fit_trace_model(lambda, freq);
        auto s1 = spectrum_fixed_phase(lambda, freq, 0.0);
        auto s2 = spectrum_fixed_phase(lambda, freq, 0.17);

        // each edge solves t(E, omega) = +-2; changing omega moves the level
        // by at most 2*amp, so edges move by at most 2*amp / |t'(edge)|
        const PeriodTrace tr(lambda, freq, 0.0);
        double worst_slope = std::numeric_limits<double>::infinity();
        for (const Interval& part : s1.spectrum.parts()) {
            for (double edge : {part.lo, part.hi}) {
                const double h = 1e-7;
                const double slope = std::abs((tr(edge + h) - tr(edge - h)) / (2.0 * h));
                worst_slope = std::min(worst_slope, slope);
            }
        }
        const double bound = 2.0 * m.amp / worst_slope + 4.0 * s1.edge_tol;
        CHECK(hausdorff_distance(s1.spectrum, s2.spectrum) <= bound);
    }
}

TEST_CASE("irrational spectra through convergents") {
    SECTION("golden mean at order 6 uses 8/13") {
        auto s = spectrum_irrational(0.0, golden_mean(), 6);
        CHECK(s.approx_order == 6);
        CHECK(s.params.freq == Rational(8, 13));
        REQUIRE(s.spectrum.is_interval());
        CHECK(s.spectrum.inf() == Catch::Approx(-2.0).margin(1e-9));
        CHECK(s.spectrum.sup() == Catch::Approx(2.0).margin(1e-9));
    }
    SECTION("successive approximants drift shrinks") {
        const double lambda = 0.2;
        auto s5 = spectrum_irrational(lambda, golden_mean(), 5);
        auto s6 = spectrum_irrational(lambda, golden_mean(), 6);
        auto s7 = spectrum_irrational(lambda, golden_mean(), 7);
        const double d56 = hausdorff_distance(s5.spectrum, s6.spectrum);
        const double d67 = hausdorff_distance(s6.spectrum, s7.spectrum);
        CHECK(d67 < d56);
        CHECK(std::abs(s7.spectrum.diameter() - 4.0) <= 4.0 * lambda + 4.0 * s7.edge_tol);
    }
    SECTION("rational input is rejected") {
        CHECK_THROWS_AS(spectrum_irrational(0.2, FrequencySpec::parse("3/5"), 4),
                        RationalInput);
    }
}

TEST_CASE("bloch oracle") {
    SECTION("free spectrum") {
        auto u = bloch_oracle(0.0, Rational(1, 5), 16, 16);
        REQUIRE(u.is_interval());
        CHECK(u.inf() == Catch::Approx(-2.0).margin(1e-6));
        CHECK(u.sup() == Catch::Approx(2.0).margin(1e-6));
    }
    SECTION("agreement with the trace route improves with the grid") {
        const double lambda = 0.5;
        const Rational freq(3, 8);
        auto s = spectrum_rational(lambda, freq);
        const double d64 = hausdorff_distance(s.spectrum, bloch_oracle(lambda, freq, 64, 64));
        const double d256 =
            hausdorff_distance(s.spectrum, bloch_oracle(lambda, freq, 256, 256));
        CHECK(d256 <= 5e-3);
        CHECK(d256 <= d64 + 1e-12);
    }
    SECTION("band count never exceeds q") {
        auto u = bloch_oracle(0.9, Rational(2, 7), 32, 32);
        CHECK(u.size() <= 7);
    }
    SECTION("grid validation") {
        CHECK_THROWS_AS(bloch_oracle(0.5, Rational(1, 2), 4, 16), ValidationError);
    }
}

TEST_CASE("butterfly dataset") {
    SECTION("free couplings give [-2,2] rows") {
        auto rows = butterfly(0.0, 2);
        REQUIRE(rows.size() == 2); // 0/1 and 1/2
        for (const auto& [freq, u] : rows) {
            REQUIRE(u.is_interval());
            CHECK(u.inf() == Catch::Approx(-2.0).margin(1e-9));
            CHECK(u.sup() == Catch::Approx(2.0).margin(1e-9));
        }
    }
    SECTION("band counts respect q") {
        for (const auto& [freq, u] : butterfly(0.7, 6))
            CHECK(u.size() <= static_cast<std::size_t>(freq.q));
    }
    SECTION("p/q and (q-p)/q rows coincide") {
        auto rows = butterfly(0.5, 8);
        auto find = [&](int p, int q) -> const IntervalUnion& {
            for (const auto& [freq, u] : rows)
                if (freq == Rational(p, q)) return u;
            FAIL("row not found");
            return rows.front().second;
        };
        for (auto [p, q] : {std::pair{1, 5}, {2, 7}, {3, 8}, {1, 6}})
            CHECK(hausdorff_distance(find(p, q), find(q - p, q)) <= 1e-9);
    }
}
