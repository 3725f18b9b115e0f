#include "semunit/numeric.hpp"

#include <cctype>
#include <cstdlib>

#include "semunit/error.hpp"

namespace semunit {

std::optional<Decimal> Decimal::parse(std::string_view text) {
    Decimal d;
    d.lexical_ = std::string(text);
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        d.negative_ = text[i] == '-';
        ++i;
    }
    std::string digits;
    long long frac_digits = 0;
    bool seen_digit = false;
    bool seen_point = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            seen_digit = true;
            if (seen_point) ++frac_digits;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) return std::nullopt;
    long long exp = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool exp_neg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            exp_neg = text[i] == '-';
            ++i;
        }
        if (i >= text.size()) return std::nullopt;
        for (; i < text.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
            exp = exp * 10 + (text[i] - '0');
            if (exp > 100000000) return std::nullopt;
        }
        if (exp_neg) exp = -exp;
    }
    if (i != text.size()) return std::nullopt;

    auto first = digits.find_first_not_of('0');
    if (first == std::string::npos) {
        d.digits_.clear();
        d.negative_ = false;
        d.exponent_ = 0;
        return d;
    }
    digits.erase(0, first);
    exp -= frac_digits;
    while (!digits.empty() && digits.back() == '0') {
        digits.pop_back();
        ++exp;
    }
    d.digits_ = std::move(digits);
    d.exponent_ = exp;
    return d;
}

Decimal Decimal::from_string(std::string_view lexical) {
    auto d = parse(lexical);
    if (!d) throw Error(ErrorCode::validation, "not a decimal number: '" + std::string(lexical) + "'");
    return *d;
}

double Decimal::to_double() const { return std::strtod(lexical_.c_str(), nullptr); }

namespace {

std::strong_ordering compare_magnitude(const std::string& da, long long ea, const std::string& db,
                                       long long eb) {
    // Position of the most significant digit.
    long long ma = static_cast<long long>(da.size()) + ea;
    long long mb = static_cast<long long>(db.size()) + eb;
    if (ma != mb) return ma <=> mb;
    std::size_t n = std::max(da.size(), db.size());
    for (std::size_t i = 0; i < n; ++i) {
        char ca = i < da.size() ? da[i] : '0';
        char cb = i < db.size() ? db[i] : '0';
        if (ca != cb) return ca <=> cb;
    }
    return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
    bool a_zero = a.digits_.empty();
    bool b_zero = b.digits_.empty();
    int sa = a_zero ? 0 : (a.negative_ ? -1 : 1);
    int sb = b_zero ? 0 : (b.negative_ ? -1 : 1);
    if (sa != sb) return sa <=> sb;
    if (sa == 0) return std::strong_ordering::equal;
    auto mag = compare_magnitude(a.digits_, a.exponent_, b.digits_, b.exponent_);
    if (sa < 0) return 0 <=> mag;
    return mag;
}

}  // namespace semunit
