#ifndef GAPCM_RATIONAL_HPP
#define GAPCM_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace gapcm {

/**
 * @brief exact fraction num/den with den > 0, kept in lowest terms.
 *
 * Used for generator parameters (so that floor(n * f_dm) is exact) and for
 * barycenter sort keys (so that ties are detected exactly).
 */
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    /// Parses "3", "-2", "0.25", "1e-1" or "3/4". Throws InputError on malformed text.
    static Rational parse(std::string_view text);

    /// Exact conversion through the shortest round-trip decimal form of `value`.
    static Rational from_double(double value);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// floor(this * factor)
    std::int64_t floor_times(std::int64_t factor) const;

    /// Shortest decimal string when the value has one ("0.2"), otherwise "num/den".
    std::string str() const;

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }

}  // namespace gapcm

#endif  // GAPCM_RATIONAL_HPP
