#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "snum/envelope.hpp"

using namespace snum;

namespace {

SeqSpec spec_of(ExtReal p1, ExtReal p2, Rational delta, Rational b = Rational(1),
                ExtReal q1 = ExtReal(1), ExtReal q2 = ExtReal(1)) {
    SeqSpec s;
    s.p1 = p1;
    s.q1 = q1;
    s.p2 = p2;
    s.q2 = q2;
    s.delta = delta;
    s.b = b;
    return s;
}

const ExtReal inf = ExtReal::infinity();

} // namespace

TEST_CASE("slope fitting on exact power laws") {
    std::vector<std::pair<long long, double>> pts;
    for (long long k = 4; k <= 1024; k *= 2) pts.emplace_back(k, std::pow((double)k, -2.0));
    SlopeFit f = fit_slope(pts, 2);
    CHECK(f.slope == Catch::Approx(-2.0).margin(1e-12));
    CHECK(f.residual < 1e-12);

    pts.clear();
    for (long long k = 4; k <= 1024; k *= 2) pts.emplace_back(k, 3.0 * std::pow((double)k, -0.5));
    f = fit_slope(pts, 2);
    CHECK(f.slope == Catch::Approx(-0.5).margin(1e-12));
    CHECK(f.intercept == Catch::Approx(std::log2(3.0)).margin(1e-12));

    std::vector<std::pair<long long, double>> few = {{4, 1.0}, {8, 0.5}, {16, 0.25}, {32, 0.125}};
    CHECK_THROWS_AS(fit_slope(few, 2), std::invalid_argument);
}

TEST_CASE("staircase spectrum fit stays near the ideal slope") {
    HilbertReport rep = verify_hilbert(Rational(1), Rational(1), 4096, 0.05, 16);
    CHECK(rep.gamma == Rational(1));
    CHECK(rep.slope == Catch::Approx(-1.0).margin(0.02)); // staircase quantization
    CHECK(rep.pass);
}

TEST_CASE("lower envelope witness points") {
    // factorization through level j: k = M_j/2, value = 2^{-j delta} k^{1/2-1/p1}
    auto pts = lower_envelope(spec_of(ExtReal(1), ExtReal(2), Rational(2)), SNumberKind::Weyl, 6, 6);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].first == 32);
    CHECK(pts[0].second == Catch::Approx(std::exp2(-12.0) * std::pow(32.0, -0.5)));

    // free-k Gelfand witness
    auto [k, v] = gelfand_lower_point(spec_of(inf, ExtReal(1), Rational(2)), 3, 1);
    CHECK(k == 1);
    CHECK(v == Catch::Approx(1.0 / 8.0));

    // tiny blocks fall back to the norm point
    auto base = lower_envelope(spec_of(ExtReal(1), ExtReal(2), Rational(2)), SNumberKind::Weyl, 0, 0);
    REQUIRE(base.size() == 1);
    CHECK(base[0].first == 1);
    CHECK(base[0].second == Catch::Approx(1.0)); // 2^0 * ||id: l_1^1 -> l_2^1||

    // gelfand needs p2 <= p1
    CHECK_THROWS_AS(lower_envelope(spec_of(ExtReal(1), ExtReal(2), Rational(2)), SNumberKind::Gelfand, 2, 5),
                    std::invalid_argument);
    // no finite-dimensional lower data for these kinds
    CHECK_THROWS_AS(lower_envelope(spec_of(ExtReal(1), ExtReal(2), Rational(2)), SNumberKind::Approximation, 2, 5),
                    std::invalid_argument);
}

TEST_CASE("upper envelope structure") {
    SeqSpec s = spec_of(ExtReal(1), ExtReal(2), Rational(2), Rational(1), ExtReal(1), ExtReal(2));
    // tail dominance: E_N is a rho-summand of the reported value
    for (int L : {2, 4, 6, 8}) {
        UpperPoint up = upper_envelope(s, SNumberKind::Weyl, L);
        CHECK(up.value >= up.tail);
        CHECK(up.k >= 1);
        CHECK(up.tail == Catch::Approx(tail_E(s, up.N)));
    }
    // degenerate cut: level 0 plus tail only
    UpperPoint up0 = upper_envelope(s, SNumberKind::Weyl, 0);
    double rho = rho_of(s).to_double();
    CHECK(up0.value <= std::pow(1.0 + std::pow(up0.tail, rho), 1.0 / rho) + 1e-12);
    // eps outside the admissible window is rejected
    CHECK_THROWS_AS(upper_envelope(s, SNumberKind::Weyl, 4, Rational(2)), std::invalid_argument);
    CHECK_THROWS_AS(upper_envelope(s, SNumberKind::Weyl, 4, Rational(0)), std::invalid_argument);
    // non-compact specs are rejected
    CHECK_THROWS_AS(upper_envelope(spec_of(ExtReal(2), ExtReal(1), Rational(1, 2)), SNumberKind::Weyl, 4),
                    std::invalid_argument);
}

TEST_CASE("envelope ordering at comparable indices") {
    SeqSpec s = spec_of(ExtReal(1), ExtReal(2), Rational(2), Rational(1), ExtReal(1), ExtReal(2));
    auto lows = lower_envelope(s, SNumberKind::Weyl, 4, 10);
    for (int L = 4; L <= 10; ++L) {
        UpperPoint up = upper_envelope(s, SNumberKind::Weyl, L);
        auto& lo = lows[(std::size_t)(L - 4)];
        // order-level: the lower witness cannot exceed the upper bound by
        // more than a bounded factor once indices are aligned by level
        CHECK(lo.second <= 64.0 * up.value * std::pow((double)up.k / (double)lo.first, 1.0));
    }
}

TEST_CASE("rho-power additivity against the diagonal oracle") {
    // two diagonal operators on the same Hilbert basis: s_{n+k-1}(D1+D2) <= s_k(D1)+s_n(D2)
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> w1(24), w2(24), sum(24);
        for (int i = 0; i < 24; ++i) {
            w1[(std::size_t)i] = unif(rng);
            w2[(std::size_t)i] = unif(rng);
        }
        std::sort(w1.begin(), w1.end(), std::greater<double>());
        std::sort(w2.begin(), w2.end(), std::greater<double>());
        for (int i = 0; i < 24; ++i) sum[(std::size_t)i] = w1[(std::size_t)i] + w2[(std::size_t)i];
        std::sort(sum.begin(), sum.end(), std::greater<double>());
        for (long long k = 1; k <= 8; ++k)
            for (long long n = 1; n <= 8; ++n) {
                double bound = diag_l2_snumbers(w1, k) + diag_l2_snumbers(w2, n);
                CHECK(diag_l2_snumbers(sum, n + k - 1) <= bound + 1e-12);
            }
    }
}

TEST_CASE("verification runs reproduce predicted exponents") {
    // hilbert diagonal
    SeqSpec h = spec_of(ExtReal(2), ExtReal(2), Rational(1), Rational(1), ExtReal(2), ExtReal(2));
    (void)h;
    HilbertReport hr = verify_hilbert(Rational(1), Rational(1), 4096, 0.05);
    CHECK(hr.pass);

    // weyl, p1 <= 2 <= p2
    SeqSpec w = spec_of(ExtReal(1), ExtReal(2), Rational(2), Rational(1), ExtReal(1), ExtReal(2));
    VerifyReport rep = verify_exponent(w, SNumberKind::Weyl, 4, 10, std::nullopt, 0.1);
    CHECK(rep.predicted.gamma == Rational(5, 2));
    CHECK(rep.pass);

    // gelfand with exact per-block values
    SeqSpec g = spec_of(inf, ExtReal(1), Rational(2));
    rep = verify_exponent(g, SNumberKind::Gelfand, 4, 10, std::nullopt, 0.1);
    CHECK(rep.predicted.gamma == Rational(1));
    CHECK(rep.pass);

    // limiting specs are untestable
    SeqSpec lim = spec_of(ExtReal(8), ExtReal(4), Rational(1, 6), Rational(1), ExtReal(1), ExtReal(2));
    CHECK_THROWS_AS(verify_exponent(lim, SNumberKind::Weyl, 4, 10, std::nullopt, 0.1),
                    untestable_error);

    // too short a level range to fit anything
    CHECK_THROWS_AS(verify_exponent(w, SNumberKind::Weyl, 4, 7, std::nullopt, 0.1),
                    std::invalid_argument);
    // free-k witness rejects indices beyond the rank
    CHECK_THROWS_AS(gelfand_lower_point(g, 3, 9), std::invalid_argument);
    CHECK_THROWS_AS(gelfand_lower_point(g, 3, 0), std::invalid_argument);
}

TEST_CASE("slope stability under a longer level range") {
    SeqSpec w = spec_of(ExtReal(1), ExtReal(2), Rational(2), Rational(1), ExtReal(1), ExtReal(2));
    VerifyReport short_run = verify_exponent(w, SNumberKind::Weyl, 4, 9, std::nullopt, 0.15);
    VerifyReport long_run = verify_exponent(w, SNumberKind::Weyl, 4, 14, std::nullopt, 0.15);
    CHECK(std::abs(short_run.upper_fit.slope - long_run.upper_fit.slope) < 0.075);
    CHECK(std::abs(short_run.lower_fit.slope - long_run.lower_fit.slope) < 0.075);
}
