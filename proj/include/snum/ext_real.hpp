#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include "snum/rational.hpp"

namespace snum {

// A positive extended real in (0, inf], stored by its exact reciprocal
// (recip = 0 encodes inf). All order queries and case-boundary checks are
// exact rational comparisons; nothing here touches floating point.
class ExtReal {
public:
    ExtReal() : recip_(1) {}
    explicit ExtReal(long long v) : recip_(from_value(Rational(v)).recip_) {}

    static ExtReal infinity() {
        ExtReal e;
        e.recip_ = Rational(0);
        return e;
    }
    static ExtReal from_value(const Rational& v) {
        if (v.sign() <= 0) throw std::invalid_argument("ExtReal: value must be positive");
        ExtReal e;
        e.recip_ = Rational(1) / v;
        return e;
    }
    static ExtReal from_recip(const Rational& r) {
        if (r.sign() < 0) throw std::invalid_argument("ExtReal: reciprocal must be nonnegative");
        ExtReal e;
        e.recip_ = r;
        return e;
    }
    // accepts "inf" or a positive rational literal
    static ExtReal parse(std::string_view s) {
        if (s == "inf" || s == "Inf" || s == "INF") return infinity();
        return from_value(Rational::parse(s));
    }

    const Rational& recip() const { return recip_; }
    bool is_inf() const { return recip_.is_zero(); }

    Rational value() const {
        if (is_inf()) throw std::domain_error("ExtReal: value() of inf");
        return Rational(1) / recip_;
    }
    double to_double() const {
        return is_inf() ? std::numeric_limits<double>::infinity()
                        : 1.0 / recip_.to_double();
    }

    // value order: larger value <=> smaller reciprocal
    friend bool operator==(const ExtReal&, const ExtReal&) = default;
    friend std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
        return b.recip_ <=> a.recip_;
    }

    std::string str() const { return is_inf() ? "inf" : value().str(); }

private:
    Rational recip_; // in [0, inf), 0 = infinity
};

inline ExtReal min(const ExtReal& a, const ExtReal& b) { return a < b ? a : b; }
inline ExtReal max(const ExtReal& a, const ExtReal& b) { return a < b ? b : a; }

} // namespace snum
