#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "snum/blockspace.hpp"
#include "snum/ext_real.hpp"
#include "snum/params.hpp"
#include "snum/rational.hpp"

namespace snum {

enum class SNumberKind { Approximation, Gelfand, Kolmogorov, Weyl };

inline const char* kind_name(SNumberKind k) {
    switch (k) {
        case SNumberKind::Approximation: return "approx";
        case SNumberKind::Gelfand: return "gelfand";
        case SNumberKind::Kolmogorov: return "kolmogorov";
        case SNumberKind::Weyl: return "weyl";
    }
    return "?";
}

// Outcome of a case-table lookup. Exact: s_k ~ k^{-gamma}. Sandwich:
// c k^{-lower_exp} <= s_k <= C k^{-upper_exp} with upper_exp <= lower_exp.
// Limiting: the tuple sits exactly on a threshold the tables leave open.
struct ExponentResult {
    enum class Status { Exact, Sandwich, Limiting, NotCompact, NotCovered };
    Status status = Status::NotCovered;
    Rational gamma;
    Rational lower_exp, upper_exp;
    std::string note;    // boundary hit or reason not covered
    std::string case_id; // table row identifier

    bool is_exact() const { return status == Status::Exact; }
    bool is_sandwich() const { return status == Status::Sandwich; }

    static ExponentResult exact(const Rational& g, std::string id) {
        ExponentResult r;
        r.status = Status::Exact;
        r.gamma = g;
        r.lower_exp = r.upper_exp = g;
        r.case_id = std::move(id);
        return r;
    }
    static ExponentResult sandwich(const Rational& lo, const Rational& hi, std::string id) {
        if (hi > lo) throw std::logic_error("ExponentResult: sandwich must satisfy upper_exp <= lower_exp");
        ExponentResult r;
        r.status = Status::Sandwich;
        r.lower_exp = lo;
        r.upper_exp = hi;
        r.case_id = std::move(id);
        return r;
    }
    static ExponentResult limiting(std::string boundary, std::string id) {
        ExponentResult r;
        r.status = Status::Limiting;
        r.note = std::move(boundary);
        r.case_id = std::move(id);
        return r;
    }
    static ExponentResult not_compact() {
        ExponentResult r;
        r.status = Status::NotCompact;
        return r;
    }
    static ExponentResult not_covered(std::string reason) {
        ExponentResult r;
        r.status = Status::NotCovered;
        r.note = std::move(reason);
        return r;
    }
};

inline const char* status_name(ExponentResult::Status s) {
    using St = ExponentResult::Status;
    switch (s) {
        case St::Exact: return "exact";
        case St::Sandwich: return "sandwich";
        case St::Limiting: return "limiting";
        case St::NotCompact: return "not_compact";
        case St::NotCovered: return "not_covered";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Weyl numbers: seven regions (a)-(g) keyed by the position of p1, p2
// relative to 2 and, in the p2 <= 2 < p1 / 2 < p2 < p1 regions, by the
// thresholds delta = b/p2 and delta = b*lambda.
inline ExponentResult weyl_seq_exponent(const SeqSpec& spec) {
    spec.validate();
    if (!seq_is_compact(spec)) return ExponentResult::not_compact();
    const Rational u1 = spec.p1.recip(), u2 = spec.p2.recip(), half(1, 2);
    const Rational v = spec.delta / spec.b;
    const ExtReal two(2);

    if (spec.p1 <= two && spec.p2 <= two) return ExponentResult::exact(v + u1 - u2, "x.a");
    if (two <= spec.p1 && spec.p1 <= spec.p2) return ExponentResult::exact(v, "x.b");
    if (spec.p1 <= two && two <= spec.p2) return ExponentResult::exact(v + u1 - half, "x.c");
    if (spec.p2 <= two) { // p2 <= 2 < p1
        if (v < u2) {
            if (spec.p1.is_inf())
                return ExponentResult::not_covered("p1 = inf with delta < b/p2 matches no stated row");
            return ExponentResult::exact((v + u1 - u2) / (Rational(2) * u1), "x.d");
        }
        if (v == u2) return ExponentResult::limiting("delta = b/p2", "x.de");
        return ExponentResult::exact(v + half - u2, "x.e");
    }
    // 2 < p2 < p1
    const Rational lambda = (u2 - u1) / (Rational(1) - Rational(2) * u1);
    if (v > lambda) return ExponentResult::exact(v, "x.f");
    if (v == lambda) return ExponentResult::limiting("delta = b*lambda", "x.fg");
    if (spec.p1.is_inf())
        return ExponentResult::not_covered("p1 = inf with delta < b*lambda matches no stated row");
    return ExponentResult::sandwich(v, (v + u1 - u2) / (Rational(2) * u1), "x.g");
}

// Approximation numbers: five rows with 1/p = 1/min(p1', p2) and the
// threshold delta = b/p in the p1 < 2 < p2 band.
inline ExponentResult approx_seq_exponent(const SeqSpec& spec) {
    spec.validate();
    if (!seq_is_compact(spec)) return ExponentResult::not_compact();
    const Rational u1 = spec.p1.recip(), u2 = spec.p2.recip(), half(1, 2);
    const Rational v = spec.delta / spec.b;
    const Rational w = max(pos(Rational(1) - u1), u2); // 1/p
    const ExtReal one(1), two(2);

    if (spec.p2 <= spec.p1) return ExponentResult::exact(v + u1 - u2, "a.4");
    // p1 < p2 from here on
    if (spec.p2 <= two || two <= spec.p1) return ExponentResult::exact(v, "a.1");
    // p1 < 2 < p2
    if (spec.p1 <= one && spec.p2.is_inf()) return ExponentResult::exact(v + half - u2, "a.5");
    if (v > w) return ExponentResult::exact(v + half - w, "a.3");
    if (v == w) return ExponentResult::limiting("delta = b/p", "a.23");
    if (!spec.p2.is_inf() || spec.p1 > one)
        return ExponentResult::exact(v / (Rational(2) * w), "a.2");
    return ExponentResult::not_covered("p1 <= 1, p2 = inf below delta = b/p matches no stated row");
}

// Gelfand numbers: rows keyed by theta/p1' and 1/p1'.
inline ExponentResult gelfand_seq_exponent(const SeqSpec& spec) {
    spec.validate();
    if (!seq_is_compact(spec)) return ExponentResult::not_compact();
    const Rational u1 = spec.p1.recip(), u2 = spec.p2.recip(), half(1, 2);
    const Rational v = spec.delta / spec.b;
    const Rational w1 = pos(Rational(1) - u1); // 1/p1'
    const ExtReal one(1), two(2);

    if (two <= spec.p1 && spec.p1 < spec.p2) return ExponentResult::exact(v, "c.1");
    if (spec.p2 <= spec.p1) return ExponentResult::exact(v + u1 - u2, "c.2");
    // p1 < p2 and p1 < 2
    if (spec.p2 <= two) {
        const Rational theta = (u1 - u2) / (u1 - half);
        const Rational thr = theta * w1;
        if (v > thr) return ExponentResult::exact(v + u1 - u2, "c.2");
        if (v == thr) return ExponentResult::limiting("delta = b*theta/p1'", "c.23");
        if (spec.p1 > one) return ExponentResult::exact(v / (Rational(2) * w1), "c.3");
        return ExponentResult::not_covered("p1 <= 1 below delta = b*theta/p1' matches no stated row");
    }
    // p1 < 2 < p2
    if (v > w1) return ExponentResult::exact(v + u1 - half, "c.4");
    if (v == w1) return ExponentResult::limiting("delta = b/p1'", "c.34");
    if (spec.p1 > one) return ExponentResult::exact(v / (Rational(2) * w1), "c.3");
    return ExponentResult::not_covered("p1 <= 1 below delta = b/p1' matches no stated row");
}

// Kolmogorov numbers: rows keyed by theta'/p2 and 1/p2. The stated table
// has no row for p1 = 2 < p2; this is reported, not interpolated.
inline ExponentResult kolmogorov_seq_exponent(const SeqSpec& spec) {
    spec.validate();
    if (!seq_is_compact(spec)) return ExponentResult::not_compact();
    const Rational u1 = spec.p1.recip(), u2 = spec.p2.recip(), half(1, 2);
    const Rational v = spec.delta / spec.b;
    const ExtReal two(2);

    if (spec.p2 <= spec.p1) return ExponentResult::exact(v + u1 - u2, "d.4");
    // p1 < p2 from here on
    if (spec.p2 <= two) return ExponentResult::exact(v, "d.1");
    if (spec.p1 < two) { // p1 < 2 < p2
        if (v > u2) return ExponentResult::exact(v + half - u2, "d.2");
        if (v == u2) return ExponentResult::limiting("delta = b/p2", "d.23");
        if (!spec.p2.is_inf()) return ExponentResult::exact(v / (Rational(2) * u2), "d.3");
        return ExponentResult::not_covered("p2 = inf below delta = b/p2 matches no stated row");
    }
    if (spec.p1 == two) return ExponentResult::not_covered("p1 = 2 < p2 matches no stated row");
    // 2 < p1 < p2
    const Rational theta_prime = (u1 - u2) / (half - u2);
    const Rational thr = theta_prime * u2;
    if (v > thr) return ExponentResult::exact(v + u1 - u2, "d.4");
    if (v == thr) return ExponentResult::limiting("delta = b*theta'/p2", "d.34");
    if (!spec.p2.is_inf()) return ExponentResult::exact(v / (Rational(2) * u2), "d.3");
    return ExponentResult::not_covered("p2 = inf below delta = b*theta'/p2 matches no stated row");
}

inline ExponentResult seq_exponent(const SeqSpec& spec, SNumberKind kind) {
    switch (kind) {
        case SNumberKind::Weyl: return weyl_seq_exponent(spec);
        case SNumberKind::Approximation: return approx_seq_exponent(spec);
        case SNumberKind::Gelfand: return gelfand_seq_exponent(spec);
        case SNumberKind::Kolmogorov: return kolmogorov_seq_exponent(spec);
    }
    throw std::logic_error("seq_exponent: bad kind");
}

// ---------------------------------------------------------------------------
// Function-space gamma formulas: algebraic rewrites of the sequence tables
// under delta = s1 - s2 - d(1/p1 - 1/p2). Evaluated directly and asserted
// equal to the dispatched result as a transcription cross-check.

namespace detail {

inline Rational func_gamma_formula(const EmbeddingParams& pr, const Rational& b,
                                   std::string_view id) {
    const Rational u1 = pr.p1.recip(), u2 = pr.p2.recip(), half(1, 2);
    const Rational S = pr.s1 - pr.s2, D(pr.d), B = b;
    const Rational dlt = u1 - u2;
    const Rational base_minus = S / B - (D / B) * dlt; // = delta/b
    const Rational base_plus = S / B + ((B - D) / B) * dlt;
    const Rational w = max(pos(Rational(1) - u1), u2);
    const Rational w1 = pos(Rational(1) - u1);

    if (id == "x.a") return base_plus;
    if (id == "x.b" || id == "x.f") return base_minus;
    if (id == "x.c") return S / B + (B * (u1 - half) - D * dlt) / B;
    if (id == "x.d") return base_plus / (Rational(2) * u1);
    if (id == "x.e") return S / B + (B * (half - u2) - D * dlt) / B;
    if (id == "a.1") return base_minus;
    if (id == "a.2") return base_minus / (Rational(2) * w);
    if (id == "a.3") return S / B + (B * (half - w) - D * dlt) / B;
    if (id == "a.4") return base_plus;
    if (id == "a.5") return S / B + (B * (half - u2) - D * dlt) / B;
    if (id == "c.1") return base_minus;
    if (id == "c.2") return base_plus;
    if (id == "c.3") return base_minus / (Rational(2) * w1);
    if (id == "c.4") return S / B + (B * (u1 - half) - D * dlt) / B;
    if (id == "d.1") return base_minus;
    if (id == "d.2") return S / B + (B * (half - u2) - D * dlt) / B;
    if (id == "d.3") return base_minus / (Rational(2) * u2);
    if (id == "d.4") return base_plus;
    throw std::logic_error("func_gamma_formula: unknown case id '" + std::string(id) + "'");
}

// the simplified formulas for domains of finite measure (b = d)
inline Rational finite_measure_gamma_formula(const EmbeddingParams& pr, std::string_view id) {
    const Rational u1 = pr.p1.recip(), u2 = pr.p2.recip(), half(1, 2);
    const Rational S = pr.s1 - pr.s2, D(pr.d);
    const Rational dlt = u1 - u2;
    const Rational sd = S / D;
    const Rational w = max(pos(Rational(1) - u1), u2);
    const Rational w1 = pos(Rational(1) - u1);

    if (id == "x.a") return sd;
    if (id == "x.b" || id == "x.f") return sd - dlt;
    if (id == "x.c") return sd - half + u2;
    if (id == "x.d") return sd / (Rational(2) * u1);
    if (id == "x.e") return sd + half - u1;
    if (id == "a.1") return sd - dlt;
    if (id == "a.2") return (sd - dlt) / (Rational(2) * w);
    if (id == "a.3") return sd + half - w - dlt;
    if (id == "a.4") return sd;
    if (id == "a.5") return sd + half - u1;
    if (id == "c.1") return sd - dlt;
    if (id == "c.2") return sd;
    if (id == "c.3") return (sd - dlt) / (Rational(2) * w1);
    if (id == "c.4") return sd - half + u2;
    if (id == "d.1") return sd - dlt;
    if (id == "d.2") return sd + half - u1;
    if (id == "d.3") return (sd - dlt) / (Rational(2) * u2);
    if (id == "d.4") return sd;
    throw std::logic_error("finite_measure_gamma_formula: unknown case id '" + std::string(id) + "'");
}

template <class Formula>
inline void cross_check(const ExponentResult& r, Formula&& gamma_of, const char* what) {
    using St = ExponentResult::Status;
    if (r.status == St::Exact) {
        if (gamma_of(r.case_id) != r.gamma)
            throw std::logic_error(std::string("exponent tables disagree (") + what + ", row " + r.case_id + ")");
    } else if (r.status == St::Sandwich) {
        if (gamma_of("x.f") != r.lower_exp || gamma_of("x.d") != r.upper_exp)
            throw std::logic_error(std::string("exponent tables disagree (") + what + ", sandwich)");
    }
}

} // namespace detail

// Exponent for the function-space embedding with box-packing growth b:
// dispatches through the sequence-space table at delta(params) and verifies
// the directly evaluated function-space formula agrees exactly.
inline ExponentResult func_exponent(const EmbeddingParams& pr, const Rational& b,
                                    SNumberKind kind) {
    pr.validate();
    if (b < Rational(pr.d)) throw std::invalid_argument("func_exponent: b must be >= d");
    ExponentResult r = seq_exponent(seq_model(pr, b), kind);
    detail::cross_check(r, [&](std::string_view id) { return detail::func_gamma_formula(pr, b, id); },
                        "function-space");
    return r;
}

// Finite-measure specialization (b = d), additionally checked against the
// simplified gamma formulas.
inline ExponentResult finite_measure_exponent(const EmbeddingParams& pr, SNumberKind kind) {
    ExponentResult r = func_exponent(pr, Rational(pr.d), kind);
    detail::cross_check(r, [&](std::string_view id) { return detail::finite_measure_gamma_formula(pr, id); },
                        "finite-measure");
    return r;
}

} // namespace snum
