#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "snum/blockspace.hpp"
#include "snum/widths.hpp"

using namespace snum;

namespace {

SeqSpec geometric_spec(Rational delta, Rational b) {
    SeqSpec s;
    s.p1 = ExtReal(1);
    s.q1 = ExtReal(1);
    s.p2 = ExtReal(2);
    s.q2 = ExtReal(2);
    s.delta = delta;
    s.b = b;
    return s;
}

} // namespace

TEST_CASE("block sizes and rules") {
    SeqSpec s = geometric_spec(Rational(1), Rational(1));
    CHECK(s.block_size(0) == 1);
    CHECK(s.block_size(10) == 1024);
    s.b = Rational(3, 2);
    CHECK(s.block_size(2) == 8);      // 2^3
    CHECK(s.block_size(1) == 2);      // floor(2^1.5)
    CHECK(s.block_size(3) == 22);     // floor(2^4.5) = floor(22.627)
    s.rule = BlockRule::Scaled;
    s.scale_c = Rational(3, 2);
    s.b = Rational(1);
    CHECK(s.block_size(0) == 1);      // floor(3/2)
    CHECK(s.block_size(4) == 24);     // floor(1.5 * 16)
    s.scale_c = Rational(1, 100);
    CHECK(s.block_size(2) == 1);      // floored to the minimum block
    // sizes are nondecreasing
    s = geometric_spec(Rational(1), Rational(5, 3));
    long long prev = 0;
    for (int j = 0; j <= 20; ++j) {
        long long m = s.block_size(j);
        CHECK(m >= prev);
        prev = m;
    }
}

TEST_CASE("block quasi-norm agrees with hand-evaluated cases") {
    BlockVector one_level{{{3.0, 4.0}}};
    CHECK(block_norm(one_level, ExtReal(2), ExtReal(1), Rational(7)) == Catch::Approx(5.0));

    BlockVector two_levels{{{1.0}, {1.0, 0.0}}};
    CHECK(block_norm(two_levels, ExtReal::infinity(), ExtReal::infinity(), Rational(1)) ==
          Catch::Approx(2.0));

    BlockVector x{{{1.0}, {1.0, 1.0}}};
    CHECK(block_norm(x, ExtReal(1), ExtReal(2), Rational(1)) == Catch::Approx(std::sqrt(17.0)));
}

TEST_CASE("block norm properties") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const ExtReal pqs[] = {ExtReal::from_value(Rational(1, 2)), ExtReal(1), ExtReal(2),
                           ExtReal::infinity()};
    SeqSpec s = geometric_spec(Rational(1), Rational(1));
    for (const ExtReal& p : pqs)
        for (const ExtReal& q : pqs) {
            for (int trial = 0; trial < 25; ++trial) {
                BlockVector x, y;
                for (int j = 0; j <= 5; ++j) {
                    std::vector<double> a((std::size_t)s.block_size(j)), b(a.size());
                    for (std::size_t i = 0; i < a.size(); ++i) {
                        a[i] = unif(rng);
                        b[i] = unif(rng);
                    }
                    x.levels.push_back(a);
                    y.levels.push_back(b);
                }
                double nx = block_norm(x, p, q, Rational(1, 2));
                // absolute homogeneity
                BlockVector sx = x;
                for (auto& lvl : sx.levels)
                    for (double& v : lvl) v *= -2.5;
                CHECK(block_norm(sx, p, q, Rational(1, 2)) == Catch::Approx(2.5 * nx).epsilon(1e-10));
                // t-triangle inequality with t = min(1, p, q)
                double t = std::min({1.0, p.to_double(), q.to_double()});
                BlockVector xy = x;
                for (std::size_t j = 0; j < xy.levels.size(); ++j)
                    for (std::size_t i = 0; i < xy.levels[j].size(); ++i)
                        xy.levels[j][i] += y.levels[j][i];
                double lhs = std::pow(block_norm(xy, p, q, Rational(1, 2)), t);
                double rhs = std::pow(nx, t) + std::pow(block_norm(y, p, q, Rational(1, 2)), t);
                CHECK(lhs <= rhs * (1.0 + 1e-12));
            }
        }
}

TEST_CASE("flat norm recovered at p = q, delta = 0") {
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    SeqSpec s = geometric_spec(Rational(0), Rational(1));
    for (double pd : {1.0, 2.0, 3.0}) {
        ExtReal p = ExtReal::from_value(Rational((long long)pd));
        BlockVector x;
        std::vector<double> flat;
        for (int j = 0; j <= 4; ++j) {
            std::vector<double> lvl((std::size_t)s.block_size(j));
            for (double& v : lvl) {
                v = unif(rng);
                flat.push_back(v);
            }
            x.levels.push_back(lvl);
        }
        double direct = 0.0;
        for (double v : flat) direct += std::pow(std::abs(v), pd);
        direct = std::pow(direct, 1.0 / pd);
        CHECK(block_norm(x, p, p, Rational(0)) == Catch::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("tail values and the self-consistency oracle") {
    // q* = inf: geometric supremum
    SeqSpec s = geometric_spec(Rational(1), Rational(1));
    s.q1 = ExtReal(1);
    s.q2 = ExtReal(2); // q1 <= q2 -> q* = inf
    CHECK(tail_E(s, 3) == Catch::Approx(0.0625));
    // q* = 2 via q1 = inf, q2 = 2
    s.q1 = ExtReal::infinity();
    s.q2 = ExtReal(2);
    CHECK(tail_E(s, 0) == Catch::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-12));
    // closed form vs partial sums
    for (int N : {0, 2, 5}) {
        double cf = tail_E(s, N, TailMethod::ClosedForm);
        double ps = tail_E(s, N, TailMethod::PartialSum, 200);
        CHECK(cf == Catch::Approx(ps).epsilon(1e-10));
    }
    // non-compact data has no tail
    SeqSpec bad = geometric_spec(Rational(0), Rational(1));
    CHECK_THROWS_AS(tail_E(bad, 1), std::domain_error);
}

TEST_CASE("tail decreases strictly to zero") {
    SeqSpec s = geometric_spec(Rational(1, 3), Rational(1));
    double prev = tail_E(s, 0);
    for (int N = 1; N <= 40; ++N) {
        double cur = tail_E(s, N);
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK(prev < 1e-3);
}

TEST_CASE("projection remainder is controlled by the tail") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    SeqSpec s;
    s.p1 = ExtReal(2);
    s.q1 = ExtReal(2);
    s.p2 = ExtReal(1);
    s.q2 = ExtReal(1);
    s.b = Rational(1);
    s.delta = Rational(1) + Rational(1, 2); // threshold b(1/p2-1/p1) = 1/2
    const int N = 2, J = 7;
    double EN = tail_E(s, N);
    for (int trial = 0; trial < 200; ++trial) {
        BlockVector x, rem;
        for (int j = 0; j <= J; ++j) {
            std::vector<double> lvl((std::size_t)s.block_size(j));
            for (double& v : lvl) v = unif(rng);
            x.levels.push_back(lvl);
            rem.levels.push_back(j <= N ? std::vector<double>(lvl.size(), 0.0) : lvl);
        }
        REQUIRE(x.conforms(s));
        double lhs = block_norm(rem, s.p2, s.q2, Rational(0));
        double rhs = EN * block_norm(x, s.p1, s.q1, s.delta);
        CHECK(lhs <= rhs * (1.0 + 1e-12));
    }
    BlockVector mangled{{{1.0, 2.0}}};
    CHECK_FALSE(mangled.conforms(s));
}

TEST_CASE("truncation to a diagonal model") {
    SeqSpec s = geometric_spec(Rational(1), Rational(1));
    DiagonalModel m = truncate(s, 2);
    REQUIRE(m.levels.size() == 3);
    CHECK(m.levels[0].size == 1);
    CHECK(m.levels[1].size == 2);
    CHECK(m.levels[2].size == 4);
    CHECK(m.levels[1].weight == Catch::Approx(0.5));
    CHECK(m.dim == 7);

    SeqSpec s2 = geometric_spec(Rational(1), Rational(2));
    DiagonalModel m2 = truncate(s2, 1);
    CHECK(m2.dim == 5);

    // sorted spectrum matches the dyadic staircase 2^{-floor(log2 k)}
    DiagonalModel big = truncate(s, 9);
    std::vector<double> spec = big.spectrum();
    for (long long k = 1; k <= big.dim; ++k) {
        double expect = std::exp2(-std::floor(std::log2((double)k)));
        CHECK(diag_l2_snumbers(spec, k) == Catch::Approx(expect));
    }
}
