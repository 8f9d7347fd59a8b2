#include "toolalign/rational.hpp"

#include "toolalign/error.hpp"

#include <cctype>

namespace toolalign {

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error("Rational: zero denominator");
    reduce();
}

void Rational::reduce() {
    if (den_.is_negative()) {
        num_ = num_.negated();
        den_ = den_.negated();
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    const BigInt g = BigInt::gcd(num_, den_);
    if (g != BigInt(1)) {
        BigInt q;
        BigInt r;
        BigInt::divmod(num_, g, q, r);
        num_ = q;
        BigInt::divmod(den_, g, q, r);
        den_ = q;
    }
}

std::string Rational::to_string() const {
    if (is_integer()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw Error("Rational: division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

Rational Rational::negated() const {
    Rational out = *this;
    out.num_ = out.num_.negated();
    return out;
}

namespace {

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// Matches one literal starting at `pos`; on success returns the value and
// advances `pos` past it.
std::optional<Rational> match_literal(std::string_view text, std::size_t& pos) {
    std::size_t i = pos;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        neg = text[i] == '-';
        ++i;
    }
    std::size_t int_begin = i;
    while (i < text.size() && is_digit(text[i])) ++i;
    const std::size_t int_len = i - int_begin;

    // Fraction form: digits '/' digits.
    if (int_len > 0 && i < text.size() && text[i] == '/' && i + 1 < text.size() && is_digit(text[i + 1])) {
        std::size_t den_begin = i + 1;
        std::size_t j = den_begin;
        while (j < text.size() && is_digit(text[j])) ++j;
        BigInt num = BigInt::from_string(text.substr(int_begin, int_len));
        const BigInt den = BigInt::from_string(text.substr(den_begin, j - den_begin));
        if (den.is_zero()) return std::nullopt;
        if (neg) num = num.negated();
        pos = j;
        return Rational(std::move(num), den);
    }

    // Decimal form: digits ['.' digits] or '.' digits.
    std::size_t frac_len = 0;
    std::size_t frac_begin = 0;
    if (i < text.size() && text[i] == '.') {
        frac_begin = i + 1;
        std::size_t j = frac_begin;
        while (j < text.size() && is_digit(text[j])) ++j;
        frac_len = j - frac_begin;
        if (int_len > 0 || frac_len > 0) i = j;
    }
    if (int_len == 0 && frac_len == 0) return std::nullopt;

    std::string digits;
    digits.reserve(int_len + frac_len);
    digits.append(text.substr(int_begin, int_len));
    digits.append(text.substr(frac_begin, frac_len));
    BigInt num = BigInt::from_string(digits.empty() ? "0" : digits);
    BigInt den(1);
    for (std::size_t k = 0; k < frac_len; ++k) den = den * BigInt(10);
    if (neg) num = num.negated();
    pos = i;
    return Rational(std::move(num), std::move(den));
}

} // namespace

std::optional<Rational> parse_rational_literal(std::string_view text) {
    std::size_t begin = 0;
    std::size_t end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    if (begin == end) return std::nullopt;
    std::size_t pos = begin;
    auto value = match_literal(text.substr(0, end), pos);
    if (!value || pos != end) return std::nullopt;
    return value;
}

std::optional<Rational> extract_last_rational(std::string_view text) {
    std::optional<Rational> last;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        const bool sign_start = (c == '+' || c == '-') && (i == 0 || !is_digit(text[i - 1]));
        if (is_digit(c) || c == '.' || sign_start) {
            std::size_t pos = i;
            if (auto value = match_literal(text, pos)) {
                last = std::move(value);
                i = pos;
                continue;
            }
        }
        ++i;
    }
    return last;
}

} // namespace toolalign
