// Exact rational arithmetic used throughout the inference engine.
#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

namespace redip {

/// Arbitrary-precision rational, always kept in lowest terms.
using Rational = mpq_class;

/// Parses "a", "a/b" or a terminating decimal such as "0.25" exactly.
/// Throws InvalidWeight on malformed input.
Rational parse_rational(std::string_view text);

/// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& r);

/// Renders r in decimal with the given number of significant digits using
/// exact long division (no binary floating point involved).
std::string to_decimal(const Rational& r, int significant_digits = 6);

/// Element of the extended nonnegative rationals: a rational or infinity.
class ExtRational {
public:
    ExtRational() = default;
    ExtRational(Rational value) : value_(std::move(value)) {}
    ExtRational(long value) : value_(value) {}

    static ExtRational infinity() {
        ExtRational r;
        r.infinite_ = true;
        return r;
    }

    bool is_infinite() const { return infinite_; }
    bool is_finite() const { return !infinite_; }

    /// Precondition: is_finite().
    const Rational& value() const;

    friend ExtRational operator+(const ExtRational& a, const ExtRational& b);
    friend ExtRational operator*(const ExtRational& a, const ExtRational& b);
    friend bool operator==(const ExtRational& a, const ExtRational& b);
    friend std::partial_ordering operator<=>(const ExtRational& a, const ExtRational& b);

private:
    Rational value_{0};
    bool infinite_ = false;
};

std::string to_string(const ExtRational& r);
std::ostream& operator<<(std::ostream& os, const ExtRational& r);

}  // namespace redip
