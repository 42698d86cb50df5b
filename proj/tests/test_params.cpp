#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "snum/params.hpp"

using namespace snum;

namespace {

EmbeddingParams make_params(ExtReal p1, ExtReal p2, Rational s1, Rational s2, int d) {
    EmbeddingParams pr;
    pr.p1 = p1;
    pr.q1 = ExtReal(1);
    pr.p2 = p2;
    pr.q2 = ExtReal(1);
    pr.s1 = s1;
    pr.s2 = s2;
    pr.d = d;
    return pr;
}

SeqSpec make_spec(ExtReal p1, ExtReal p2, Rational delta, Rational b) {
    SeqSpec s;
    s.p1 = p1;
    s.q1 = ExtReal(1);
    s.p2 = p2;
    s.q2 = ExtReal(1);
    s.delta = delta;
    s.b = b;
    return s;
}

} // namespace

TEST_CASE("derive computes the parameter calculus exactly") {
    auto pr = make_params(ExtReal(1), ExtReal(2), Rational(3), Rational(1), 1);
    DerivedParams dp = derive(pr, Rational(1));
    CHECK(dp.delta == Rational(3, 2));

    auto sym = make_params(ExtReal(2), ExtReal(2), Rational(0), Rational(0), 1);
    DerivedParams ds = derive(sym, Rational(1));
    CHECK(ds.delta == Rational(0));
    CHECK(ds.pstar.is_inf()); // 1/p* = 0

    auto lam = make_params(ExtReal(8), ExtReal(4), Rational(0), Rational(0), 1);
    DerivedParams dl = derive(lam, Rational(1));
    REQUIRE(dl.lambda_.has_value());
    CHECK(*dl.lambda_ == Rational(1, 6));
    CHECK_FALSE(dl.theta.has_value()); // p1 > 2

    CHECK_THROWS_AS(derive(pr, Rational(1, 2)), std::invalid_argument); // b < d
}

TEST_CASE("conditionally defined derived fields") {
    auto pr = make_params(ExtReal::from_value(Rational(3, 2)), ExtReal(2), Rational(1), Rational(0), 1);
    DerivedParams dp = derive(pr, Rational(1));
    REQUIRE(dp.theta.has_value());
    CHECK(*dp.theta == Rational(1)); // (2/3-1/2)/(2/3-1/2)
    CHECK(dp.p1conj == ExtReal(3));
    CHECK(dp.p_aux == ExtReal(2)); // min(3, 2)
    CHECK_FALSE(dp.lambda_.has_value());
    CHECK_FALSE(dp.theta_prime.has_value()); // p2 = 2

    auto pr2 = make_params(ExtReal(4), ExtReal(8), Rational(1), Rational(0), 1);
    DerivedParams dp2 = derive(pr2, Rational(1));
    REQUIRE(dp2.theta_prime.has_value());
    CHECK(*dp2.theta_prime == Rational(1, 3));
}

TEST_CASE("qstar cases") {
    CHECK(qstar(ExtReal(1), ExtReal(2)).is_inf());
    CHECK(qstar(ExtReal(4), ExtReal(2)) == ExtReal(4));
    CHECK(qstar(ExtReal::infinity(), ExtReal(3)) == ExtReal(3));
    // for q2 < q1 < inf, 1/q* = 1/q2 - 1/q1 exactly
    ExtReal q1(5), q2(3);
    CHECK(qstar(q1, q2).recip() == q2.recip() - q1.recip());
    // equal indices always give infinity
    for (long long q : {1, 2, 3, 7}) CHECK(qstar(ExtReal(q), ExtReal(q)).is_inf());
}

TEST_CASE("conjugate exponent convention") {
    CHECK(conjugate(ExtReal(2)) == ExtReal(2));
    CHECK(conjugate(ExtReal(4)) == ExtReal::from_value(Rational(4, 3)));
    CHECK(conjugate(ExtReal::from_value(Rational(1, 2))).is_inf());
    CHECK(conjugate(ExtReal(1)).is_inf());
    CHECK(conjugate(ExtReal::infinity()) == ExtReal(1));
}

TEST_CASE("conjugate is an order-reversing involution on [1, inf]") {
    std::vector<ExtReal> ps;
    for (long long n = 1; n <= 12; ++n)
        for (long long d = 1; d <= n; ++d) ps.push_back(ExtReal::from_value(Rational(n, d)));
    ps.push_back(ExtReal::infinity());
    for (auto& p : ps) {
        CHECK(conjugate(conjugate(p)) == p);
        for (auto& r : ps)
            if (p <= r) CHECK(conjugate(r) <= conjugate(p));
    }
}

TEST_CASE("regime classification") {
    CHECK(regime_classify(ExtReal::from_value(Rational(1, 2)), ExtReal(1), Rational(2), 1, Scale::B) ==
          Regime::Tilde);
    CHECK(regime_classify(ExtReal(2), ExtReal(2), Rational(0), 3, Scale::B) == Regime::PlainZero);
    CHECK(regime_classify(ExtReal(2), ExtReal(2), Rational(-1), 2, Scale::B) == Regime::PlainNegative);
    // s in (0, sigma_p] matches no branch
    CHECK(regime_classify(ExtReal::from_value(Rational(1, 2)), ExtReal(1), Rational(1, 2), 1, Scale::B) ==
          Regime::Uncovered);
    // s = 0 needs 1 < p < inf and q >= 1
    CHECK(regime_classify(ExtReal(1), ExtReal(2), Rational(0), 1, Scale::B) == Regime::Uncovered);
    CHECK(regime_classify(ExtReal(2), ExtReal::from_value(Rational(1, 2)), Rational(0), 1, Scale::B) ==
          Regime::Uncovered);
    // F-scale uses sigma_{p,q}
    CHECK(regime_classify(ExtReal(2), ExtReal::from_value(Rational(1, 2)), Rational(1, 2), 1,
                          Scale::F) == Regime::Uncovered);
    CHECK(regime_classify(ExtReal(2), ExtReal::from_value(Rational(1, 2)), Rational(3, 2), 1,
                          Scale::F) == Regime::Tilde);
    CHECK_THROWS_AS(regime_classify(ExtReal::infinity(), ExtReal(1), Rational(1), 1, Scale::F),
                    std::invalid_argument);
}

TEST_CASE("sequence compactness criterion") {
    CHECK(seq_compact(make_spec(ExtReal(2), ExtReal(1), Rational(3, 5), Rational(1))));
    CHECK_FALSE(seq_compact(make_spec(ExtReal(2), ExtReal(1), Rational(1, 2), Rational(1))));
    CHECK(seq_compact(make_spec(ExtReal(1), ExtReal(2), Rational(1, 1000), Rational(5))));
    CHECK_FALSE(seq_compact(make_spec(ExtReal(1), ExtReal(2), Rational(0), Rational(5))));
}

TEST_CASE("function-space compactness and its boundary") {
    // 1/p* = 0 direction
    auto pr = make_params(ExtReal(1), ExtReal(2), Rational(2), Rational(0), 1);
    CHECK(func_compact(pr, Rational(1)) == Compactness::Compact);
    // strict failure of the necessary condition
    auto bad = make_params(ExtReal(2), ExtReal(1), Rational(1), Rational(0), 1);
    CHECK(func_compact(bad, Rational(4)) == Compactness::NotCompact);
    // exactly on delta = b/p*: only necessity is known
    auto edge = make_params(ExtReal::infinity(), ExtReal(1), Rational(1), Rational(0), 1);
    CHECK(func_compact(edge, Rational(2)) == Compactness::Indeterminate);
}

TEST_CASE("function and sequence compactness agree off the boundary") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> num(0, 6), den(1, 6), sv(-6, 6), dv(1, 3);
    int agreements = 0;
    for (int i = 0; i < 3000; ++i) {
        EmbeddingParams pr;
        pr.p1 = ExtReal::from_recip(Rational(num(rng), den(rng)));
        pr.q1 = ExtReal::from_recip(Rational(num(rng), den(rng)));
        pr.p2 = ExtReal::from_recip(Rational(num(rng), den(rng)));
        pr.q2 = ExtReal::from_recip(Rational(num(rng), den(rng)));
        pr.s1 = Rational(sv(rng), den(rng));
        pr.s2 = Rational(sv(rng), den(rng));
        pr.d = dv(rng);
        Rational b = Rational(pr.d) + Rational(num(rng), den(rng));
        Compactness fc = func_compact(pr, b);
        bool sc = seq_compact(seq_model(pr, b));
        if (fc == Compactness::Indeterminate) {
            CHECK_FALSE(sc); // boundary: the sequence criterion is strict
        } else {
            CHECK((fc == Compactness::Compact) == sc);
            ++agreements;
        }
    }
    CHECK(agreements > 2000);
}

TEST_CASE("delta via reciprocals equals direct rational arithmetic") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> num(1, 9), den(1, 9), sv(-9, 9);
    for (int i = 0; i < 500; ++i) {
        Rational p1(num(rng), den(rng)), p2(num(rng), den(rng));
        Rational s1(sv(rng), den(rng)), s2(sv(rng), den(rng));
        int d = 1 + (i % 3);
        EmbeddingParams pr = make_params(ExtReal::from_value(p1), ExtReal::from_value(p2), s1, s2, d);
        Rational via_recip = derive(pr, Rational(d)).delta;
        Rational direct = s1 - s2 - Rational(d) * (p2 - p1) / (p1 * p2);
        CHECK(via_recip == direct);
    }
}
