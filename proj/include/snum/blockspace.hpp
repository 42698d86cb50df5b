#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "snum/ext_real.hpp"
#include "snum/rational.hpp"

namespace snum {

// How the block length M_j is produced from the growth exponent b:
//   ExactPow2  M_j = 2^{jb} when jb is integral, else floor(2^{jb})
//   Scaled     M_j = max(1, floor(c * 2^{jb}))
enum class BlockRule { ExactPow2, Scaled };

// One weighted block embedding  l_{q1}(2^{j delta} l_{p1}^{M_j}) -> l_{q2}(l_{p2}^{M_j}).
struct SeqSpec {
    ExtReal p1, q1, p2, q2;
    Rational delta;              // weight beta_j = 2^{j*delta}
    Rational b;                  // block growth, M_j ~ 2^{jb}, 0 < b < inf
    BlockRule rule = BlockRule::ExactPow2;
    Rational scale_c = Rational(1);

    void validate() const {
        if (b.sign() <= 0) throw std::invalid_argument("SeqSpec: b must be positive");
        if (rule == BlockRule::Scaled && scale_c.sign() <= 0)
            throw std::invalid_argument("SeqSpec: scale factor must be positive");
    }

    // exact block length; throws if it would not fit into 62 bits
    long long block_size(int j) const {
        if (j < 0) throw std::invalid_argument("SeqSpec: negative level");
        Rational e = Rational(j) * b;
        if (rule == BlockRule::ExactPow2) return floor_pow2(e);
        if (e.is_integer()) {
            if (e.num() >= 62) throw std::overflow_error("SeqSpec: block size exceeds 2^62");
            Rational m = scale_c * Rational(1LL << e.num());
            return std::max(1LL, m.floor());
        }
        // floor(c * 2^{jb}): float estimate fixed up by exact comparison
        long long m = (long long)std::floor(scale_c.to_double() * std::exp2((long double)e.num() / e.den()));
        if (m < 1) m = 1;
        try {
            while (cmp_rat_pow2(Rational(m + 1) / scale_c, e) <= 0) ++m;
            while (m > 1 && cmp_rat_pow2(Rational(m) / scale_c, e) > 0) --m;
        } catch (const std::overflow_error&) {
        }
        return m;
    }

    // log2 M_j as a double; usable far beyond the 62-bit integer range
    double log2_block_size(int j) const {
        Rational e = Rational(j) * b;
        double le = (double)e.num() / (double)e.den();
        if (rule == BlockRule::ExactPow2 && e.is_integer()) return le;
        if (le < 60.0) return std::log2((double)block_size(j));
        // floor correction is below double precision at this magnitude
        return le + (rule == BlockRule::Scaled ? std::log2(scale_c.to_double()) : 0.0);
    }
};

// x = {x_{j,l}}, level j holding M_j scalars; levels consecutive from 0
struct BlockVector {
    std::vector<std::vector<double>> levels;

    bool conforms(const SeqSpec& spec) const {
        for (std::size_t j = 0; j < levels.size(); ++j)
            if ((long long)levels[j].size() != spec.block_size((int)j)) return false;
        return true;
    }
};

namespace detail {

// Neumaier compensated accumulation
struct KahanSum {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        double t = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    double total() const { return sum + comp; }
};

inline double lp_norm(std::span<const double> xs, const ExtReal& p) {
    if (p.is_inf()) {
        double m = 0.0;
        for (double v : xs) m = std::max(m, std::abs(v));
        return m;
    }
    double pd = p.to_double();
    KahanSum s;
    for (double v : xs)
        if (v != 0.0) s.add(std::pow(std::abs(v), pd));
    return std::pow(s.total(), 1.0 / pd);
}

} // namespace detail

// the weighted quasi-norm || x | l_q(2^{j delta} l_p^{M_j}) ||,
// with sup modifications at p = inf and/or q = inf
inline double block_norm(const BlockVector& x, const ExtReal& p, const ExtReal& q,
                         const Rational& delta) {
    double dd = delta.to_double();
    if (q.is_inf()) {
        double m = 0.0;
        for (std::size_t j = 0; j < x.levels.size(); ++j)
            m = std::max(m, std::exp2(dd * (double)j) * detail::lp_norm(x.levels[j], p));
        return m;
    }
    double qd = q.to_double();
    detail::KahanSum s;
    for (std::size_t j = 0; j < x.levels.size(); ++j) {
        double t = std::exp2(dd * (double)j) * detail::lp_norm(x.levels[j], p);
        if (t != 0.0) s.add(std::pow(t, qd));
    }
    return std::pow(s.total(), 1.0 / qd);
}

inline bool seq_is_compact(const SeqSpec& spec) {
    // geometric specialization of the membership criterion: one exact inequality
    return spec.delta > spec.b * pos(spec.p2.recip() - spec.p1.recip());
}

enum class TailMethod { ClosedForm, PartialSum };

// E_N = || {2^{-j delta} M_j^{(1/p2-1/p1)_+}}_{j>N} | l_{q*} ||  for the
// geometric data of `spec`. ClosedForm is exact when the block rule is
// exactly geometric; otherwise true terms are summed and the remainder is
// bounded geometrically. PartialSum truncates at J and adds the same
// certified remainder bound.
inline double tail_E(const SeqSpec& spec, int N, TailMethod method = TailMethod::ClosedForm,
                     int J = 200) {
    spec.validate();
    Rational e = pos(spec.p2.recip() - spec.p1.recip());
    Rational a = spec.delta - spec.b * e; // per-level decay exponent of the tail terms
    if (a.sign() <= 0) throw std::domain_error("tail_E: embedding is not compact");
    Rational qstar_recip = pos(spec.q2.recip() - spec.q1.recip());
    bool qstar_inf = qstar_recip.is_zero();
    double ad = a.to_double();

    bool geometric = spec.rule == BlockRule::ExactPow2 && spec.b.is_integer();
    if (method == TailMethod::ClosedForm && geometric) {
        if (qstar_inf) return std::exp2(-(double)(N + 1) * ad);
        double qs = 1.0 / qstar_recip.to_double();
        // (sum_{j>N} 2^{-j a q*})^{1/q*}
        return std::exp2(-(double)(N + 1) * ad) *
               std::pow(1.0 / (1.0 - std::exp2(-ad * qs)), 1.0 / qs);
    }

    if (method == TailMethod::ClosedForm) J = std::max(J, N + 64);
    if (J <= N) throw std::invalid_argument("tail_E: truncation level J must exceed N");
    double ed = e.to_double();
    auto log2_term = [&](int j) { return -spec.delta.to_double() * j + ed * spec.log2_block_size(j); };
    // certified bound: M_j <= max(1,c) 2^{jb}, so term_j <= C0 2^{-ja}
    double log2_C0 = ed * std::max(0.0, std::log2(spec.rule == BlockRule::Scaled ? spec.scale_c.to_double() : 1.0));
    if (qstar_inf) {
        double m = std::exp2(log2_C0 - (double)(J + 1) * ad);
        for (int j = N + 1; j <= J; ++j) m = std::max(m, std::exp2(log2_term(j)));
        return m;
    }
    double qs = 1.0 / qstar_recip.to_double();
    detail::KahanSum s;
    for (int j = N + 1; j <= J; ++j) s.add(std::exp2(qs * log2_term(j)));
    double rem = std::exp2(qs * (log2_C0 - (double)(J + 1) * ad)) / (1.0 - std::exp2(-ad * qs));
    s.add(rem);
    return std::pow(s.total(), 1.0 / qs);
}

// finite section of the identity: levels 0..J with their sizes and weights
struct DiagonalModel {
    struct Level {
        int j;
        long long size;
        double weight; // 2^{-j delta}
    };
    std::vector<Level> levels;
    long long dim = 0;

    // all diagonal entries, sorted nonincreasing
    std::vector<double> spectrum() const {
        std::vector<double> s;
        s.reserve((std::size_t)dim);
        for (const Level& l : levels)
            s.insert(s.end(), (std::size_t)l.size, l.weight);
        std::sort(s.begin(), s.end(), std::greater<double>());
        return s;
    }
};

inline DiagonalModel truncate(const SeqSpec& spec, int J) {
    if (J < 0) throw std::invalid_argument("truncate: J must be nonnegative");
    spec.validate();
    DiagonalModel m;
    for (int j = 0; j <= J; ++j) {
        long long sz = spec.block_size(j);
        m.levels.push_back({j, sz, std::exp2(-spec.delta.to_double() * j)});
        m.dim += sz;
    }
    return m;
}

} // namespace snum
