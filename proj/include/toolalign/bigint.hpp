#pragma once

// Arbitrary-precision signed integer, base 1e9 limbs, little-endian.
// Covers exactly what the calculator and answer canonicalization need:
// +, -, *, divmod, gcd, decimal I/O.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace toolalign {

class BigInt {
public:
    BigInt() = default;
    BigInt(std::int64_t v);

    // Decimal digits with optional sign. Throws Error on anything else.
    static BigInt from_string(std::string_view text);

    std::string to_string() const;

    bool is_zero() const { return limbs_.empty(); }
    bool is_negative() const { return negative_; }
    std::size_t digit_count() const; // decimal digits of |value|, 1 for zero

    BigInt abs() const;
    BigInt negated() const;

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);

    // Truncated quotient and remainder (remainder has the dividend's sign).
    // Throws Error on division by zero.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& quot, BigInt& rem);

    static BigInt gcd(const BigInt& a, const BigInt& b);

    // Three-way compare of signed values.
    static int compare(const BigInt& a, const BigInt& b);

    friend bool operator==(const BigInt& a, const BigInt& b) { return compare(a, b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return compare(a, b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return compare(a, b) < 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return compare(a, b) > 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return compare(a, b) <= 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return compare(a, b) >= 0; }

private:
    static constexpr std::uint32_t kBase = 1000000000u;

    // Invariant: no trailing zero limbs; zero is the empty vector with
    // negative_ == false.
    std::vector<std::uint32_t> limbs_;
    bool negative_ = false;

    void trim();
    static int compare_magnitude(const BigInt& a, const BigInt& b);
    static BigInt add_magnitude(const BigInt& a, const BigInt& b);
    // Requires |a| >= |b|.
    static BigInt sub_magnitude(const BigInt& a, const BigInt& b);
};

} // namespace toolalign
