#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace snum {

// Exact rational on 64-bit numerator/denominator, always reduced, den > 0.
// Intermediates run through __int128; anything that does not fit back into
// 64 bits after reduction throws std::overflow_error.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) { *this = make(n, d); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return (num_ > 0) - (num_ < 0); }

    double to_double() const { return double(num_) / double(den_); }

    // largest integer <= value
    long long floor() const {
        long long q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }

    Rational operator-() const { return make(-(__int128)num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make((__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_,
                    (__int128)a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make((__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_,
                    (__int128)a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational: division by zero");
        return make((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        __int128 l = (__int128)a.num_ * b.den_;
        __int128 r = (__int128)b.num_ * a.den_;
        return l < r ? std::strong_ordering::less
             : l > r ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    std::string str() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) s += "/" + std::to_string(den_);
        return s;
    }

    // accepts "n", "-n", "n/d"
    static Rational parse(std::string_view s) {
        auto bad = [&] { throw std::invalid_argument("rational: cannot parse '" + std::string(s) + "'"); };
        while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
        while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
        if (s.empty()) bad();
        std::size_t slash = s.find('/');
        auto to_ll = [&](std::string_view t) -> long long {
            if (t.empty()) bad();
            std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
            if (i == t.size()) bad();
            long long v = 0;
            for (; i < t.size(); ++i) {
                if (t[i] < '0' || t[i] > '9') bad();
                if (v > (INT64_MAX - 9) / 10) throw std::overflow_error("rational: parse overflow");
                v = v * 10 + (t[i] - '0');
            }
            return t[0] == '-' ? -v : v;
        };
        if (slash == std::string_view::npos) return Rational(to_ll(s));
        return Rational(to_ll(s.substr(0, slash)), to_ll(s.substr(slash + 1)));
    }

private:
    static Rational make(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n, b = d;
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        if (a > 1) { n /= a; d /= a; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("rational: value exceeds 64-bit range");
        Rational r;
        r.num_ = (long long)n;
        r.den_ = (long long)d;
        return r;
    }

    long long num_ = 0;
    long long den_ = 1;
};

// positive part (x)_+
inline Rational pos(const Rational& x) { return x.sign() > 0 ? x : Rational(0); }

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

namespace detail {

// base^e as unsigned __int128; sets `sat` instead of wrapping on overflow
inline unsigned __int128 pow_u128(unsigned long long base, long long e, bool& sat) {
    unsigned __int128 p = 1;
    const unsigned __int128 lim = ~(unsigned __int128)0;
    for (long long i = 0; i < e; ++i) {
        if (base != 0 && p > lim / base) { sat = true; return lim; }
        p *= base;
    }
    return p;
}

} // namespace detail

// exact three-way comparison of a positive rational r against 2^q
inline int cmp_rat_pow2(const Rational& r, const Rational& q) {
    if (r.sign() <= 0) return -1;
    long long a = q.num(), c = q.den();
    bool satl = false, satr = false;
    unsigned __int128 lhs = detail::pow_u128((unsigned long long)r.num(), c, satl);
    unsigned __int128 rhs = detail::pow_u128((unsigned long long)r.den(), c, satr);
    // fold the power of two into the smaller side to keep magnitudes down
    auto shift = [](unsigned __int128& v, long long e, bool& sat) {
        while (e > 0 && !sat) {
            if (v >> 127) { sat = true; break; }
            v <<= 1;
            --e;
        }
    };
    if (a >= 0) shift(rhs, a, satr); else shift(lhs, -a, satl);
    if (satl && satr) throw std::overflow_error("cmp_rat_pow2: exponents out of range");
    if (satl) return 1;
    if (satr) return -1;
    return lhs < rhs ? -1 : lhs > rhs ? 1 : 0;
}

// exact comparison k^kd <=> N^nd for positive integers (k^kd vs N^nd)
inline int cmp_int_pow(long long k, long long kd, long long N, long long nd) {
    bool satl = false, satr = false;
    unsigned __int128 lhs = detail::pow_u128((unsigned long long)k, kd, satl);
    unsigned __int128 rhs = detail::pow_u128((unsigned long long)N, nd, satr);
    if (satl && satr) throw std::overflow_error("cmp_int_pow: exponents out of range");
    if (satl) return 1;
    if (satr) return -1;
    return lhs < rhs ? -1 : lhs > rhs ? 1 : 0;
}

// floor of 2^q for q >= 0; result must stay below 2^62. Exact whenever the
// 128-bit power comparison is representable, long-double otherwise.
inline long long floor_pow2(const Rational& q) {
    if (q.sign() < 0) throw std::invalid_argument("floor_pow2: negative exponent");
    if (q >= Rational(62)) throw std::overflow_error("floor_pow2: result exceeds 2^62");
    if (q.is_integer()) return 1LL << q.num();
    long long m = (long long)std::floor(std::exp2((long double)q.num() / q.den()));
    if (m < 1) m = 1;
    try {
        while (cmp_rat_pow2(Rational(m + 1), q) <= 0) ++m;
        while (m > 1 && cmp_rat_pow2(Rational(m), q) > 0) --m;
    } catch (const std::overflow_error&) {
        // beyond 128-bit certification; the 64-bit-mantissa estimate stands
    }
    return m;
}

} // namespace snum
