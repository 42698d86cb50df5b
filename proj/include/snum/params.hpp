#pragma once

#include <optional>
#include <stdexcept>

#include "snum/blockspace.hpp"
#include "snum/ext_real.hpp"
#include "snum/rational.hpp"

namespace snum {

// the seven-tuple describing a function-space embedding on a domain in R^d
struct EmbeddingParams {
    ExtReal p1, q1, p2, q2;
    Rational s1, s2; // smoothness
    int d = 1;       // ambient dimension

    void validate() const {
        if (d < 1) throw std::invalid_argument("EmbeddingParams: d must be >= 1");
    }
};

// q* : the Hoelder-gap exponent, 1/q* = (1/q2 - 1/q1)_+
inline ExtReal qstar(const ExtReal& q1, const ExtReal& q2) {
    return ExtReal::from_recip(pos(q2.recip() - q1.recip()));
}

// conjugate exponent, 1/p' = (1 - 1/p)_+ ; maps (0,1] to inf
inline ExtReal conjugate(const ExtReal& p) {
    return ExtReal::from_recip(pos(Rational(1) - p.recip()));
}

struct DerivedParams {
    Rational delta;               // s1 - s2 - d(1/p1 - 1/p2)
    ExtReal pstar;                // 1/p* = (1/p2 - 1/p1)_+
    ExtReal qstar;                // Hoelder gap of (q1, q2)
    ExtReal p1conj;               // conjugate of p1
    ExtReal p_aux;                // min(p1', p2)
    std::optional<Rational> lambda_;     // (1/p2 - 1/p1)/(1 - 2/p1), p1 > 2 only
    std::optional<Rational> theta;       // (1/p1 - 1/p2)/(1/p1 - 1/2), p1 < 2 only
    std::optional<Rational> theta_prime; // (1/p1 - 1/p2)/(1/2 - 1/p2), p2 > 2 only
    Rational sigma_p1;            // d(1/p1 - 1)_+
    Rational sigma_p1q1;          // d(1/min(p1,q1) - 1)_+
};

inline DerivedParams derive(const EmbeddingParams& p, const Rational& b) {
    p.validate();
    if (b < Rational(p.d)) throw std::invalid_argument("derive: b must be >= d");
    const Rational u1 = p.p1.recip(), u2 = p.p2.recip();
    const Rational half(1, 2);
    DerivedParams out;
    out.delta = p.s1 - p.s2 - Rational(p.d) * (u1 - u2);
    out.pstar = ExtReal::from_recip(pos(u2 - u1));
    out.qstar = qstar(p.q1, p.q2);
    out.p1conj = conjugate(p.p1);
    out.p_aux = min(out.p1conj, p.p2);
    if (u1 < half) out.lambda_ = (u2 - u1) / (Rational(1) - Rational(2) * u1);
    if (u1 > half) out.theta = (u1 - u2) / (u1 - half);
    if (u2 < half) out.theta_prime = (u1 - u2) / (half - u2);
    out.sigma_p1 = Rational(p.d) * pos(u1 - Rational(1));
    out.sigma_p1q1 = Rational(p.d) * pos(max(u1, p.q1.recip()) - Rational(1));
    return out;
}

enum class Scale { B, F };
enum class Regime { Tilde, PlainZero, PlainNegative, Uncovered };

// which branch of the unified-space definition the parameters select
inline Regime regime_classify(const ExtReal& p, const ExtReal& q, const Rational& s,
                              int d, Scale scale) {
    if (d < 1) throw std::invalid_argument("regime_classify: d must be >= 1");
    if (scale == Scale::F && p.is_inf())
        throw std::invalid_argument("regime_classify: F-scale requires p < inf");
    Rational sigma = scale == Scale::B
                         ? Rational(d) * pos(p.recip() - Rational(1))
                         : Rational(d) * pos(max(p.recip(), q.recip()) - Rational(1));
    if (s > sigma) return Regime::Tilde;
    const ExtReal one(1);
    if (s == Rational(0) && p > one && !p.is_inf() && q >= one) return Regime::PlainZero;
    if (s.sign() < 0 && !p.is_inf()) return Regime::PlainNegative;
    return Regime::Uncovered;
}

inline bool seq_compact(const SeqSpec& spec) { return seq_is_compact(spec); }

enum class Compactness { Compact, NotCompact, Indeterminate };

// Compact if delta > b/p*; at the boundary with 1/p* > 0 only necessity is
// known, reported as Indeterminate.
inline Compactness func_compact(const EmbeddingParams& p, const Rational& b) {
    p.validate();
    if (b < Rational(p.d)) throw std::invalid_argument("func_compact: b must be >= d");
    Rational delta = p.s1 - p.s2 - Rational(p.d) * (p.p1.recip() - p.p2.recip());
    Rational pstar_recip = pos(p.p2.recip() - p.p1.recip());
    Rational threshold = b * pstar_recip;
    if (pstar_recip.is_zero())
        return delta.sign() > 0 ? Compactness::Compact : Compactness::NotCompact;
    if (delta > threshold) return Compactness::Compact;
    if (delta < threshold) return Compactness::NotCompact;
    return Compactness::Indeterminate;
}

// the sequence-space model induced by function-space parameters
inline SeqSpec seq_model(const EmbeddingParams& p, const Rational& b) {
    SeqSpec s;
    s.p1 = p.p1;
    s.q1 = p.q1;
    s.p2 = p.p2;
    s.q2 = p.q2;
    s.delta = p.s1 - p.s2 - Rational(p.d) * (p.p1.recip() - p.p2.recip());
    s.b = b;
    return s;
}

} // namespace snum
