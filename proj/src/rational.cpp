#include "redip/rational.hpp"

#include "redip/errors.hpp"

#include <algorithm>
#include <cctype>

namespace redip {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

[[noreturn]] void bad(std::string_view text, const char* why) {
    throw InvalidWeight("invalid rational \"" + std::string(text) + "\": " + why);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    Rational result;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto num = body.substr(0, slash);
        auto den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) bad(text, "expected digits around '/'");
        mpz_class d(std::string(den), 10);
        if (d == 0) bad(text, "zero denominator");
        result = Rational(mpz_class(std::string(num), 10), d);
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        auto whole = body.substr(0, dot);
        auto frac = body.substr(dot + 1);
        if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) bad(text, "malformed decimal");
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        mpz_class w = whole.empty() ? mpz_class(0) : mpz_class(std::string(whole), 10);
        result = Rational(w * scale + mpz_class(std::string(frac), 10), scale);
    } else {
        if (!all_digits(body)) bad(text, "expected digits");
        result = Rational(mpz_class(std::string(body), 10));
    }
    result.canonicalize();
    if (negative) result = -result;
    return result;
}

std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_decimal(const Rational& r, int significant_digits) {
    significant_digits = std::max(significant_digits, 1);
    if (r == 0) return "0";
    std::string sign = r < 0 ? "-" : "";
    mpz_class num = abs(r.get_num());
    const mpz_class& den = r.get_den();

    mpz_class int_part = num / den;
    mpz_class rem = num % den;
    std::string digits = int_part == 0 ? "" : int_part.get_str();
    int produced = static_cast<int>(digits.size());

    // Fraction digits, skipping leading zeros of a pure fraction.
    std::string frac;
    bool started = produced > 0;
    int budget = significant_digits - produced;
    // Extra digit for rounding.
    while (rem != 0 && (budget > 0 || !started)) {
        rem *= 10;
        mpz_class d = rem / den;
        rem %= den;
        frac.push_back(static_cast<char>('0' + d.get_ui()));
        if (d != 0) started = true;
        if (started) --budget;
    }
    // Round half up on the next digit.
    bool round_up = false;
    if (rem != 0) {
        mpz_class next = (rem * 10) / den;
        round_up = next >= 5;
    }
    std::string all = (digits.empty() ? std::string("0") : digits) + frac;
    std::size_t int_len = digits.empty() ? 1 : digits.size();
    if (round_up) {
        int i = static_cast<int>(all.size()) - 1;
        while (i >= 0) {
            if (all[i] == '9') {
                all[i] = '0';
                --i;
            } else {
                ++all[i];
                break;
            }
        }
        if (i < 0) {
            all.insert(all.begin(), '1');
            ++int_len;
        }
    }
    std::string out = all.substr(0, int_len);
    std::string tail = all.substr(int_len);
    while (!tail.empty() && tail.back() == '0') tail.pop_back();
    if (!tail.empty()) out += "." + tail;
    return sign + out;
}

const Rational& ExtRational::value() const {
    if (infinite_) throw InfiniteMass("value() called on infinity");
    return value_;
}

ExtRational operator+(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) return ExtRational::infinity();
    return ExtRational(Rational(a.value_ + b.value_));
}

ExtRational operator*(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) {
        // 0 * inf = 0 in the extended semiring.
        if ((!a.infinite_ && a.value_ == 0) || (!b.infinite_ && b.value_ == 0)) return ExtRational(0L);
        return ExtRational::infinity();
    }
    return ExtRational(Rational(a.value_ * b.value_));
}

bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
}

std::partial_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ && b.infinite_) return std::partial_ordering::equivalent;
    if (a.infinite_) return std::partial_ordering::greater;
    if (b.infinite_) return std::partial_ordering::less;
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::string to_string(const ExtRational& r) {
    return r.is_infinite() ? std::string("inf") : to_string(r.value());
}

std::ostream& operator<<(std::ostream& os, const ExtRational& r) { return os << to_string(r); }

}  // namespace redip
