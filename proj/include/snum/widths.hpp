#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

#include "snum/ext_real.hpp"
#include "snum/rational.hpp"

namespace snum {

// Finite-dimensional s-number data for id: l_{p1}^N -> l_{p2}^N.
// Bounds carry no constants (all normalized to 1); only the exact Gelfand
// formula and the Hilbert diagonal oracle are meant value-for-value.

struct WidthBound {
    double lower = 0.0;
    double upper = 0.0;
    enum class Mode { Exact, OrderLevel } mode = Mode::OrderLevel;
};

namespace detail {

inline double ipow(long long base, const Rational& e) {
    if (base <= 0) throw std::invalid_argument("ipow: base must be positive");
    if (e.is_integer()) return std::pow((double)base, (double)e.num());
    return std::exp2(e.to_double() * std::log2((double)base));
}

// k <= N^{e} for positive rational e, decided exactly
inline bool le_pow(long long k, long long N, const Rational& e) {
    return cmp_int_pow(k, e.den(), N, e.num()) <= 0;
}

} // namespace detail

// c_k(id: l_{p1}^N -> l_{p2}^N) = (N-k+1)^{1/p2-1/p1}, valid for p2 <= p1
inline double gelfand_exact(long long N, long long k, const ExtReal& p1, const ExtReal& p2) {
    if (N < 1 || k < 1) throw std::invalid_argument("gelfand_exact: need N,k >= 1");
    if (p2 > p1) throw std::invalid_argument("gelfand_exact: formula requires p2 <= p1");
    if (k > N) return 0.0;
    return detail::ipow(N - k + 1, p2.recip() - p1.recip());
}

// || id: l_{p1}^N -> l_{p2}^N ||
inline double operator_norm(long long N, const ExtReal& p1, const ExtReal& p2) {
    if (N < 1) throw std::invalid_argument("operator_norm: need N >= 1");
    if (p1 <= p2) return 1.0;
    return detail::ipow(N, p2.recip() - p1.recip());
}

// Order-level two-sided bounds on the Weyl numbers x_k(id: l_{p1}^N -> l_{p2}^N).
// Lower bounds are set to 0 outside their stated k-range; upper is +inf only
// never (each parameter region has an upper estimate valid for all k <= N).
inline WidthBound weyl_bounds(long long N, long long k, const ExtReal& p1, const ExtReal& p2) {
    if (N < 1 || k < 1) throw std::invalid_argument("weyl_bounds: need N,k >= 1");
    WidthBound wb;
    if (k > N) return wb; // rank exhausted
    const Rational u1 = p1.recip(), u2 = p2.recip(), half(1, 2);
    const ExtReal two(2);

    if (p1 <= max(two, p2)) {
        double v;
        if (p1 <= p2 && p2 <= two) v = detail::ipow(k, u2 - u1);
        else if (two <= p1 && p1 <= p2) v = 1.0;
        else if (p1 <= two && two <= p2) v = detail::ipow(k, half - u1);
        else v = detail::ipow(N, u2 - u1); // p2 <= p1 <= 2
        wb.upper = v;                      // valid for all k <= N
        wb.lower = 2 * k <= N ? v : 0.0;
        return wb;
    }
    if (p2 <= two) { // p2 <= 2 < p1
        bool small_k = detail::le_pow(k, N, Rational(2) * u1);
        wb.upper = small_k ? detail::ipow(N, u2 - u1)
                           : detail::ipow(N, u2) / std::sqrt((double)k);
        double lo = 0.0;
        if (2 * k <= N) lo = detail::ipow(N, u2 - half);
        if (small_k) lo = std::max(lo, detail::ipow(N, u2 - u1));
        wb.lower = lo;
        return wb;
    }
    // 2 < p2 < p1
    Rational lambda = (u2 - u1) / (Rational(1) - Rational(2) * u1);
    wb.upper = detail::le_pow(k, N, Rational(2) * u1)
                   ? detail::ipow(N, u2 - u1)
                   : std::exp2(lambda.to_double() * (std::log2((double)N) - std::log2((double)k)));
    wb.lower = 4 * k <= N ? 1.0 : 0.0;
    return wb;
}

// Exact oracle: on Hilbert space every s-number of a diagonal operator is
// its k-th largest singular value.
inline double diag_l2_snumbers(std::span<const double> weights, long long k) {
    if (k < 1) throw std::invalid_argument("diag_l2_snumbers: need k >= 1");
    for (std::size_t i = 0; i + 1 < weights.size(); ++i)
        if (weights[i] < weights[i + 1])
            throw std::invalid_argument("diag_l2_snumbers: weights must be nonincreasing");
    for (double w : weights)
        if (w < 0.0) throw std::invalid_argument("diag_l2_snumbers: weights must be nonnegative");
    if (k > (long long)weights.size()) return 0.0;
    return weights[(std::size_t)k - 1];
}

} // namespace snum
