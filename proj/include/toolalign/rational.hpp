#pragma once

// Exact rational number in lowest terms. Denominator is always positive;
// zero is canonically 0/1.

#include "toolalign/bigint.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace toolalign {

class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t v) : num_(v), den_(1) {}
    Rational(BigInt num, BigInt den);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_ == BigInt(1); }

    // "n" when integral, otherwise reduced "n/d" (sign on the numerator).
    std::string to_string() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    // Throws Error on division by zero.
    friend Rational operator/(const Rational& a, const Rational& b);

    Rational negated() const;

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

private:
    BigInt num_;
    BigInt den_;

    void reduce();
};

// Parses a standalone numeric literal: "42", "-042", "3.50", "5/10", "-7/2".
// Returns nullopt when the text is not exactly one such literal.
std::optional<Rational> parse_rational_literal(std::string_view text);

// Finds the last maximal numeric literal inside free-form text, e.g.
// "i think 5/10" -> 1/2. Returns nullopt when no literal occurs.
std::optional<Rational> extract_last_rational(std::string_view text);

} // namespace toolalign
