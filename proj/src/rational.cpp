#include "gapcm/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <string>

#include "gapcm/core.hpp"

namespace gapcm {

namespace {

__extension__ using Wide = __int128;

std::int64_t parse_int(std::string_view text, std::string_view whole) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw InputError("malformed number: '" + std::string(whole) + "'");
    }
    return value;
}

std::int64_t checked_pow10(int exponent, std::string_view whole) {
    std::int64_t p = 1;
    for (int i = 0; i < exponent; ++i) {
        if (p > std::numeric_limits<std::int64_t>::max() / 10) {
            throw InputError("number out of range: '" + std::string(whole) + "'");
        }
        p *= 10;
    }
    return p;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw InputError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = g == 0 ? 0 : num / g;
    den_ = g == 0 ? 1 : den / g;
}

Rational Rational::parse(std::string_view text) {
    const std::string_view whole = text;
    if (text.empty()) throw InputError("empty number");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        return Rational(parse_int(text.substr(0, slash), whole), parse_int(text.substr(slash + 1), whole));
    }

    int exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        exponent = static_cast<int>(parse_int(text.substr(e + 1), whole));
        text = text.substr(0, e);
    }

    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }

    std::string digits;
    int fraction_digits = 0;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
        fraction_digits = static_cast<int>(text.size() - dot - 1);
    } else {
        digits = std::string(text);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
        throw InputError("malformed number: '" + std::string(whole) + "'");
    }

    std::int64_t num = parse_int(digits, whole);
    if (negative) num = -num;
    const int scale = fraction_digits - exponent;
    if (scale >= 0) return Rational(num, checked_pow10(scale, whole));
    const std::int64_t factor = checked_pow10(-scale, whole);
    if (num != 0 && std::abs(num) > std::numeric_limits<std::int64_t>::max() / factor) {
        throw InputError("number out of range: '" + std::string(whole) + "'");
    }
    return Rational(num * factor, 1);
}

Rational Rational::from_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw InputError("cannot represent number");
    return parse(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
}

std::int64_t Rational::floor_times(std::int64_t factor) const {
    const Wide product = static_cast<Wide>(num_) * factor;
    Wide q = product / den_;
    if (product % den_ != 0 && product < 0) --q;
    return static_cast<std::int64_t>(q);
}

std::string Rational::str() const {
    std::int64_t d = den_;
    while (d % 2 == 0) d /= 2;
    while (d % 5 == 0) d /= 5;
    if (d != 1) return std::to_string(num_) + "/" + std::to_string(den_);
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), to_double());
    return std::string(buf, ptr);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const Wide lhs = static_cast<Wide>(a.num_) * b.den_;
    const Wide rhs = static_cast<Wide>(b.num_) * a.den_;
    return lhs <=> rhs;
}

}  // namespace gapcm
