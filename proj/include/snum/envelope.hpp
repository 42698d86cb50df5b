#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "snum/blockspace.hpp"
#include "snum/exponents.hpp"
#include "snum/rational.hpp"
#include "snum/widths.hpp"

namespace snum {

// thrown when a spec sits on a limiting boundary (or is otherwise outside
// the verifiable cases) and no slope check is meaningful
class untestable_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    long long k_min = 0, k_max = 0;
    double residual = 0.0; // RMS in log-log coordinates
    std::size_t points = 0;
};

// least-squares line through (log2 k, log2 value), k >= k_min, value > 0
inline SlopeFit fit_slope(const std::vector<std::pair<long long, double>>& pts, long long k_min) {
    if (k_min < 2) k_min = 2;
    std::vector<std::pair<double, double>> xy;
    SlopeFit f;
    f.k_min = -1;
    for (auto& [k, v] : pts) {
        if (k < k_min || v <= 0.0) continue;
        xy.emplace_back(std::log2((double)k), std::log2(v));
        if (f.k_min < 0 || k < f.k_min) f.k_min = k;
        if (k > f.k_max) f.k_max = k;
    }
    if (xy.size() < 5) throw std::invalid_argument("fit_slope: need at least 5 usable points");
    double sx = 0, sy = 0;
    for (auto& [x, y] : xy) { sx += x; sy += y; }
    double mx = sx / xy.size(), my = sy / xy.size();
    double sxx = 0, sxy = 0;
    for (auto& [x, y] : xy) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_slope: degenerate abscissae");
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double rss = 0;
    for (auto& [x, y] : xy) {
        double e = y - f.intercept - f.slope * x;
        rss += e * e;
    }
    f.residual = std::sqrt(rss / xy.size());
    f.points = xy.size();
    return f;
}

namespace detail {

enum class EnvCase { GenericT, DLow, DHigh, GLow, GHigh, GelfandDiag };

struct EnvSetup {
    EnvCase env_case;
    Rational t;           // per-level size exponent driving the N-selection
    bool alloc_two_over_p1; // allocation uses M_j^{2/p1} instead of M_j
};

inline EnvSetup classify_envelope(const SeqSpec& spec, SNumberKind kind) {
    const Rational u1 = spec.p1.recip(), u2 = spec.p2.recip(), half(1, 2);
    const Rational v = spec.delta / spec.b;
    const ExtReal two(2);
    if (kind == SNumberKind::Gelfand) {
        if (spec.p2 > spec.p1)
            throw std::invalid_argument("envelope: Gelfand machinery requires p2 <= p1");
        return {EnvCase::GelfandDiag, u2 - u1, false};
    }
    if (kind != SNumberKind::Weyl)
        throw std::invalid_argument("envelope: only Weyl and Gelfand have finite-dimensional inputs");
    if (spec.p1 <= max(two, spec.p2)) {
        Rational t(0);
        if (spec.p1 <= two && spec.p2 <= two) t = u2 - u1;
        else if (spec.p1 <= two && two <= spec.p2) t = half - u1;
        return {EnvCase::GenericT, t, false};
    }
    if (spec.p2 <= two) { // p2 <= 2 < p1
        if (v == u2) throw untestable_error("delta = b/p2: limiting case");
        if (v < u2) return {EnvCase::DLow, u2 - u1, true};
        return {EnvCase::DHigh, u2 - half, false};
    }
    // 2 < p2 < p1
    Rational lambda = (u2 - u1) / (Rational(1) - Rational(2) * u1);
    if (v == lambda) throw untestable_error("delta = b*lambda: limiting case");
    if (v < lambda) return {EnvCase::GLow, u2 - u1, true};
    return {EnvCase::GHigh, Rational(0), false};
}

// admissible window for the allocation parameter
inline std::pair<Rational, Rational> eps_window(const SeqSpec& spec, const EnvSetup& setup) {
    const Rational u1 = spec.p1.recip(), u2 = spec.p2.recip();
    const Rational v = spec.delta / spec.b;
    switch (setup.env_case) {
        case EnvCase::DLow:
            return {Rational(2) * spec.b * (v + u1 - u2), Rational(2) * spec.b * u1};
        case EnvCase::GLow: {
            Rational lambda = (u2 - u1) / (Rational(1) - Rational(2) * u1);
            return {spec.b * (v + u1 - u2) / lambda, Rational(2) * spec.b * u1};
        }
        default:
            return {Rational(0), spec.b};
    }
}

// [ M_j^{coeff} * 2^g ] with coeff in {1, 2/p1}; exact for exactly
// geometric block rules, float-assisted otherwise
inline long long alloc_floor(const SeqSpec& spec, int j, const Rational& coeff, const Rational& g) {
    Rational e = Rational(j) * spec.b;
    if (spec.rule == BlockRule::ExactPow2 && e.is_integer()) {
        Rational expo = coeff * e + g;
        if (expo.sign() < 0) return 0;
        return floor_pow2(expo);
    }
    long double v = exp2l((long double)coeff.to_double() * spec.log2_block_size(j) +
                          (long double)g.to_double());
    return (long long)floorl(v);
}

// is k <= M_j, decided exactly where the block size is representable
inline bool within_rank(const SeqSpec& spec, int j, long long k) {
    Rational e = Rational(j) * spec.b;
    if (e < Rational(62)) return k <= spec.block_size(j);
    return true; // k is far below 2^62 < M_j
}

// is k <= M_j^{2/p1}
inline bool below_weyl_knee(const SeqSpec& spec, int j, long long k) {
    Rational e = Rational(j) * spec.b * Rational(2) * spec.p1.recip();
    if (spec.rule == BlockRule::ExactPow2 && (Rational(j) * spec.b).is_integer()) {
        try {
            return cmp_rat_pow2(Rational(k), e) <= 0;
        } catch (const std::overflow_error&) {
        }
    }
    return std::log2((double)k) <=
           2.0 * spec.p1.recip().to_double() * spec.log2_block_size(j) + 1e-9;
}

// log2 of the per-level upper estimate x_k(id: l_{p1}^{M_j} -> l_{p2}^{M_j})
// (constants 1); nullopt when the index exhausts the rank
inline std::optional<double> level_upper_log2(const SeqSpec& spec, const EnvSetup& setup, int j,
                                              long long k) {
    if (k < 1) throw std::logic_error("level_upper_log2: k >= 1 required");
    if (!within_rank(spec, j, k)) return std::nullopt;
    const Rational u1 = spec.p1.recip(), u2 = spec.p2.recip(), half(1, 2);
    const double log2N = spec.log2_block_size(j);
    const double log2k = std::log2((double)k);
    const ExtReal two(2);
    switch (setup.env_case) {
        case EnvCase::GenericT: {
            if (spec.p1 <= spec.p2 && spec.p2 <= two) return (u2 - u1).to_double() * log2k;
            if (two <= spec.p1 && spec.p1 <= spec.p2) return 0.0;
            if (spec.p1 <= two && two <= spec.p2) return (half - u1).to_double() * log2k;
            return (u2 - u1).to_double() * log2N; // p2 <= p1 <= 2
        }
        case EnvCase::DLow: {
            if (below_weyl_knee(spec, j, k)) return (u2 - u1).to_double() * log2N;
            return u2.to_double() * log2N - 0.5 * log2k;
        }
        case EnvCase::DHigh:
            // the knee refinement is valid here too, but it migrates across
            // the fixed middle window as L grows; the uniform all-k estimate
            // N^{1/p2} k^{-1/2} is what this case's assembly runs on
            return u2.to_double() * log2N - 0.5 * log2k;
        case EnvCase::GLow: {
            Rational lambda = (u2 - u1) / (Rational(1) - Rational(2) * u1);
            if (below_weyl_knee(spec, j, k)) return (u2 - u1).to_double() * log2N;
            return lambda.to_double() * (log2N - log2k);
        }
        case EnvCase::GHigh: {
            Rational lambda = (u2 - u1) / (Rational(1) - Rational(2) * u1);
            return lambda.to_double() * (log2N - log2k);
        }
        case EnvCase::GelfandDiag: {
            // exact per-level Gelfand value (N - k + 1)^{1/p2 - 1/p1}
            double log2rank;
            Rational e = Rational(j) * spec.b;
            if (e < Rational(62)) log2rank = std::log2((double)(spec.block_size(j) - k + 1));
            else log2rank = log2N; // k is negligible at this magnitude
            return (u2 - u1).to_double() * log2rank;
        }
    }
    return std::nullopt;
}

} // namespace detail

// rho of the target space: it is a min(1,p2,q2)-Banach space
inline Rational rho_of(const SeqSpec& spec) {
    Rational r(1);
    const ExtReal one(1);
    if (spec.p2 < one) r = min(r, spec.p2.value());
    if (spec.q2 < one) r = min(r, spec.q2.value());
    return r;
}

// midpoint of the admissible window (interior choice; any interior value
// yields the same slope)
inline Rational default_eps(const SeqSpec& spec, SNumberKind kind) {
    auto setup = detail::classify_envelope(spec, kind);
    auto [lo, hi] = detail::eps_window(spec, setup);
    return (lo + hi) / Rational(2);
}

// One lower-envelope witness point per level: the factorization through a
// single block gives  x_k(id) >= 2^{-j delta} x_k(id: l_{p1}^{M_j} -> l_{p2}^{M_j}),
// evaluated at the k where the finite-dimensional estimate bites.
inline std::vector<std::pair<long long, double>> lower_envelope(const SeqSpec& spec,
                                                                SNumberKind kind, int j_lo,
                                                                int j_hi) {
    spec.validate();
    if (!seq_is_compact(spec)) throw std::invalid_argument("lower_envelope: spec not compact");
    auto setup = detail::classify_envelope(spec, kind);
    const Rational u1 = spec.p1.recip(), u2 = spec.p2.recip(), half(1, 2);
    std::vector<std::pair<long long, double>> pts;
    for (int j = j_lo; j <= j_hi; ++j) {
        long long M = spec.block_size(j);
        double w = std::exp2(-spec.delta.to_double() * j);
        if (M < 2) {
            pts.emplace_back(1, w * operator_norm(M, spec.p1, spec.p2));
            continue;
        }
        long long k = 0;
        double val = 0.0;
        switch (setup.env_case) {
            case detail::EnvCase::GenericT:
                k = M / 2;
                val = w * weyl_bounds(M, k, spec.p1, spec.p2).lower;
                break;
            case detail::EnvCase::DLow:
                k = detail::alloc_floor(spec, j, Rational(2) * u1, Rational(0));
                val = w * detail::ipow(M, u2 - u1);
                break;
            case detail::EnvCase::DHigh:
                k = M / 2;
                val = w * detail::ipow(M, u2 - half);
                break;
            case detail::EnvCase::GLow:
            case detail::EnvCase::GHigh:
                k = M / 4;
                val = w; // x_k >= c for k <= M/4
                break;
            case detail::EnvCase::GelfandDiag:
                k = M / 2;
                val = w * gelfand_exact(M, k, spec.p1, spec.p2);
                break;
        }
        if (k < 1) {
            k = 1;
            val = w * operator_norm(M, spec.p1, spec.p2);
        }
        pts.emplace_back(k, val);
    }
    return pts;
}

// single free-k Gelfand witness (k anywhere in [1, M_j])
inline std::pair<long long, double> gelfand_lower_point(const SeqSpec& spec, int j, long long k) {
    long long M = spec.block_size(j);
    if (k < 1 || k > M) throw std::invalid_argument("gelfand_lower_point: k out of [1, M_j]");
    return {k, std::exp2(-spec.delta.to_double() * j) * gelfand_exact(M, k, spec.p1, spec.p2)};
}

struct UpperPoint {
    long long k = 0;
    double value = 0.0;
    int N = 0;       // chosen truncation level
    double tail = 0; // E_N actually used (a rho-summand of value)
};

// Upper envelope at cut level L: allocate per-level indices, combine through
// rho-power additivity with the tail E_N, and report the global index
// k = sum k_j - (N+1).
inline UpperPoint upper_envelope(const SeqSpec& spec, SNumberKind kind, int L,
                                 std::optional<Rational> eps_opt = std::nullopt) {
    spec.validate();
    if (L < 0) throw std::invalid_argument("upper_envelope: L must be >= 0");
    if (!seq_is_compact(spec)) throw std::invalid_argument("upper_envelope: spec not compact");
    auto setup = detail::classify_envelope(spec, kind);
    auto [eps_lo, eps_hi] = detail::eps_window(spec, setup);
    Rational eps = eps_opt ? *eps_opt : (eps_lo + eps_hi) / Rational(2);
    if (!(eps > eps_lo && eps < eps_hi))
        throw std::invalid_argument("upper_envelope: eps outside the admissible window (" +
                                    eps_lo.str() + ", " + eps_hi.str() + ")");

    const Rational coeff = setup.alloc_two_over_p1 ? Rational(2) * spec.p1.recip() : Rational(1);

    // N: smallest level with E_N <= 2^{-L delta} M_L^t, capped at 8L; then
    // pushed out so the middle window spans at least 8 levels (E_N only
    // shrinks, and the fixed window keeps the partial sums' constants
    // stable across L)
    const double log2_target =
        -spec.delta.to_double() * L + setup.t.to_double() * spec.log2_block_size(L);
    const double target = std::exp2(log2_target);
    int N = L;
    const int N_cap = 8 * L;
    double tail = tail_E(spec, N);
    while (tail > target && N < N_cap) tail = tail_E(spec, ++N);
    if (N < std::min(L + 8, N_cap)) {
        N = std::min(L + 8, N_cap);
        tail = tail_E(spec, N);
    }

    const Rational rho = rho_of(spec);
    const double rho_d = rho.to_double();
    detail::KahanSum acc;
    acc.add(std::pow(tail, rho_d));
    long long k_sum = 0;
    for (int j = 0; j <= N; ++j) {
        long long kj;
        if (j <= L) {
            kj = detail::alloc_floor(spec, j, coeff, Rational(L - j) * eps);
            if (kj < 1) kj = 1;
            // where the bracket allocation exceeds the rank the level's
            // s-number is already 0, so index M_j + 1 certifies the same
            // zero term at a smaller composite index
            if (!detail::within_rank(spec, j, kj)) kj = spec.block_size(j) + 1;
        } else {
            long long gap = (long long)(j - L);
            kj = std::max(detail::alloc_floor(spec, L, coeff, Rational(0)) / (gap * gap), 1LL);
        }
        k_sum += kj;
        if (auto lg = detail::level_upper_log2(spec, setup, j, kj))
            acc.add(std::exp2(rho_d * (-spec.delta.to_double() * j + *lg)));
    }
    UpperPoint up;
    up.k = std::max(k_sum - (long long)(N + 1), 1LL);
    up.value = std::pow(acc.total(), 1.0 / rho_d);
    up.N = N;
    up.tail = tail;
    return up;
}

// Envelope data for one verification run
struct Envelope {
    SNumberKind kind = SNumberKind::Weyl;
    std::vector<std::pair<long long, double>> points_lower, points_upper;
    Rational rho;
};

struct VerifyReport {
    ExponentResult predicted;
    SlopeFit lower_fit, upper_fit;
    double tol = 0.0;
    bool pass = false;
    Envelope envelope;
};

// Empirical check of s_k ~ k^{-beta}: envelope slopes over L in
// [L_lo, L_hi] must reproduce the predicted exponent(s) within tol.
inline VerifyReport verify_exponent(const SeqSpec& spec, SNumberKind kind, int L_lo, int L_hi,
                                    std::optional<Rational> eps, double tol) {
    if (L_hi - L_lo + 1 < 5)
        throw std::invalid_argument("verify_exponent: need at least 5 levels");
    ExponentResult predicted = seq_exponent(spec, kind);
    using St = ExponentResult::Status;
    if (predicted.status == St::Limiting)
        throw untestable_error("limiting case: " + predicted.note);
    if (predicted.status == St::NotCovered)
        throw untestable_error("not covered: " + predicted.note);
    if (predicted.status == St::NotCompact)
        throw untestable_error("embedding is not compact");

    VerifyReport rep;
    rep.predicted = predicted;
    rep.tol = tol;
    rep.envelope.kind = kind;
    rep.envelope.rho = rho_of(spec);
    rep.envelope.points_lower = lower_envelope(spec, kind, L_lo, L_hi);
    for (int L = L_lo; L <= L_hi; ++L) {
        auto up = upper_envelope(spec, kind, L, eps);
        rep.envelope.points_upper.emplace_back(up.k, up.value);
    }
    rep.lower_fit = fit_slope(rep.envelope.points_lower, 2);
    rep.upper_fit = fit_slope(rep.envelope.points_upper, 2);

    if (predicted.status == St::Exact) {
        double beta = predicted.gamma.to_double();
        rep.pass = std::abs(rep.lower_fit.slope + beta) <= tol &&
                   std::abs(rep.upper_fit.slope + beta) <= tol;
    } else { // sandwich
        rep.pass = rep.lower_fit.slope >= -predicted.lower_exp.to_double() - tol &&
                   rep.upper_fit.slope <= -predicted.upper_exp.to_double() + tol;
    }
    return rep;
}

struct HilbertReport {
    double slope = 0.0;
    Rational gamma;
    bool pass = false;
    std::vector<std::pair<long long, double>> points;
};

// The diagonal oracle: with p = q = 2 all four s-numbers equal the sorted
// diagonal, so the exact spectrum slope must match every table at once.
inline HilbertReport verify_hilbert(const Rational& delta, const Rational& b, long long k_max,
                                    double tol, long long k_min = 16) {
    SeqSpec spec;
    spec.p1 = spec.q1 = spec.p2 = spec.q2 = ExtReal(2);
    spec.delta = delta;
    spec.b = b;
    spec.validate();
    if (!seq_is_compact(spec)) throw std::invalid_argument("verify_hilbert: spec not compact");

    HilbertReport rep;
    bool have_gamma = false;
    for (SNumberKind kind : {SNumberKind::Weyl, SNumberKind::Approximation, SNumberKind::Gelfand,
                             SNumberKind::Kolmogorov}) {
        ExponentResult r = seq_exponent(spec, kind);
        if (!r.is_exact()) throw untestable_error("hilbert spec not exact for some kind");
        if (have_gamma && r.gamma != rep.gamma)
            throw std::logic_error("hilbert case: tables disagree");
        rep.gamma = r.gamma;
        have_gamma = true;
    }

    int J = 0;
    SeqSpec probe = spec;
    while (truncate(probe, J).dim < k_max) {
        ++J;
        if (J > 62) throw std::overflow_error("verify_hilbert: k_max out of range");
    }
    std::vector<double> spectrum = truncate(spec, J).spectrum();

    // log2-uniform sample, 16 points per octave: density-neutral for the
    // staircase spectrum
    long long prev = 0;
    for (double x = std::log2((double)k_min); x <= std::log2((double)k_max) + 1e-12; x += 1.0 / 16.0) {
        long long k = (long long)std::llround(std::exp2(x));
        if (k <= prev || k > k_max) continue;
        prev = k;
        rep.points.emplace_back(k, diag_l2_snumbers(spectrum, k));
    }
    SlopeFit f = fit_slope(rep.points, k_min);
    rep.slope = f.slope;
    rep.pass = std::abs(f.slope + rep.gamma.to_double()) <= tol;
    return rep;
}

} // namespace snum
