#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace semunit {

// Exact decimal number parsed from a lexical form such as "204.56", "-3",
// "1.5e3". Comparison is exact (no binary floating point involved).
class Decimal {
public:
    static std::optional<Decimal> parse(std::string_view lexical);

    // Throws Error(validation) when the text is not a decimal number.
    static Decimal from_string(std::string_view lexical);

    double to_double() const;
    const std::string& lexical() const noexcept { return lexical_; }

    friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b);
    friend bool operator==(const Decimal& a, const Decimal& b) { return (a <=> b) == 0; }

private:
    bool negative_ = false;
    std::string digits_;  // no leading or trailing zeros; empty means zero
    long long exponent_ = 0;  // value = digits_ * 10^exponent_
    std::string lexical_;
};

struct NumericRange {
    Decimal min;
    Decimal max;

    bool contains(const Decimal& value) const { return min <= value && value <= max; }
};

}  // namespace semunit
