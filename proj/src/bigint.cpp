#include "toolalign/bigint.hpp"

#include "toolalign/error.hpp"

#include <algorithm>
#include <cctype>

namespace toolalign {

BigInt::BigInt(std::int64_t v) {
    negative_ = v < 0;
    // Avoid overflow on INT64_MIN by working in unsigned space.
    std::uint64_t mag = negative_ ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
    while (mag != 0) {
        limbs_.push_back(static_cast<std::uint32_t>(mag % kBase));
        mag /= kBase;
    }
    if (limbs_.empty()) negative_ = false;
}

BigInt BigInt::from_string(std::string_view text) {
    if (text.empty()) throw Error("BigInt: empty string");
    std::size_t pos = 0;
    bool neg = false;
    if (text[0] == '+' || text[0] == '-') {
        neg = text[0] == '-';
        pos = 1;
    }
    if (pos == text.size()) throw Error("BigInt: sign without digits");
    for (std::size_t i = pos; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw Error("BigInt: invalid digit in '" + std::string(text) + "'");
    }
    BigInt out;
    // Consume 9 decimal digits per limb, most significant chunk first.
    std::size_t len = text.size() - pos;
    std::size_t head = len % 9;
    std::size_t i = pos;
    auto push_chunk = [&](std::size_t n) {
        std::uint32_t chunk = 0;
        for (std::size_t k = 0; k < n; ++k) chunk = chunk * 10 + static_cast<std::uint32_t>(text[i++] - '0');
        // out = out * 1e9 + chunk
        std::uint64_t carry = chunk;
        for (auto& limb : out.limbs_) {
            const std::uint64_t cur = static_cast<std::uint64_t>(limb) * kBase + carry;
            limb = static_cast<std::uint32_t>(cur % kBase);
            carry = cur / kBase;
        }
        while (carry != 0) {
            out.limbs_.push_back(static_cast<std::uint32_t>(carry % kBase));
            carry /= kBase;
        }
    };
    if (head != 0) push_chunk(head);
    while (i < text.size()) push_chunk(9);
    out.trim();
    out.negative_ = neg && !out.limbs_.empty();
    return out;
}

std::string BigInt::to_string() const {
    if (limbs_.empty()) return "0";
    std::string out;
    if (negative_) out.push_back('-');
    out += std::to_string(limbs_.back());
    char buf[16];
    for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
        std::snprintf(buf, sizeof(buf), "%09u", limbs_[i]);
        out += buf;
    }
    return out;
}

std::size_t BigInt::digit_count() const {
    if (limbs_.empty()) return 1;
    std::size_t n = (limbs_.size() - 1) * 9;
    std::uint32_t top = limbs_.back();
    while (top != 0) {
        ++n;
        top /= 10;
    }
    return n;
}

BigInt BigInt::abs() const {
    BigInt out = *this;
    out.negative_ = false;
    return out;
}

BigInt BigInt::negated() const {
    BigInt out = *this;
    if (!out.limbs_.empty()) out.negative_ = !out.negative_;
    return out;
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) negative_ = false;
}

int BigInt::compare_magnitude(const BigInt& a, const BigInt& b) {
    if (a.limbs_.size() != b.limbs_.size()) return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
    for (std::size_t i = a.limbs_.size(); i-- > 0;) {
        if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
    }
    return 0;
}

int BigInt::compare(const BigInt& a, const BigInt& b) {
    if (a.negative_ != b.negative_) return a.negative_ ? -1 : 1;
    const int mag = compare_magnitude(a, b);
    return a.negative_ ? -mag : mag;
}

BigInt BigInt::add_magnitude(const BigInt& a, const BigInt& b) {
    BigInt out;
    out.limbs_.resize(std::max(a.limbs_.size(), b.limbs_.size()) + 1, 0);
    std::uint32_t carry = 0;
    for (std::size_t i = 0; i < out.limbs_.size(); ++i) {
        std::uint32_t sum = carry;
        if (i < a.limbs_.size()) sum += a.limbs_[i];
        if (i < b.limbs_.size()) sum += b.limbs_[i];
        if (sum >= kBase) {
            sum -= kBase;
            carry = 1;
        } else {
            carry = 0;
        }
        out.limbs_[i] = sum;
    }
    out.trim();
    return out;
}

BigInt BigInt::sub_magnitude(const BigInt& a, const BigInt& b) {
    BigInt out;
    out.limbs_.resize(a.limbs_.size(), 0);
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
        std::int64_t cur = static_cast<std::int64_t>(a.limbs_[i]) - borrow -
                           (i < b.limbs_.size() ? static_cast<std::int64_t>(b.limbs_[i]) : 0);
        if (cur < 0) {
            cur += kBase;
            borrow = 1;
        } else {
            borrow = 0;
        }
        out.limbs_[i] = static_cast<std::uint32_t>(cur);
    }
    out.trim();
    return out;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.negative_ == b.negative_) {
        BigInt out = BigInt::add_magnitude(a, b);
        out.negative_ = a.negative_ && !out.limbs_.empty();
        return out;
    }
    const int mag = BigInt::compare_magnitude(a, b);
    if (mag == 0) return BigInt();
    BigInt out = mag > 0 ? BigInt::sub_magnitude(a, b) : BigInt::sub_magnitude(b, a);
    out.negative_ = (mag > 0 ? a.negative_ : b.negative_) && !out.limbs_.empty();
    return out;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + b.negated(); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.is_zero() || b.is_zero()) return BigInt();
    BigInt out;
    out.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
            const std::uint64_t cur = static_cast<std::uint64_t>(a.limbs_[i]) * b.limbs_[j] +
                                      out.limbs_[i + j] + carry;
            out.limbs_[i + j] = static_cast<std::uint32_t>(cur % BigInt::kBase);
            carry = cur / BigInt::kBase;
        }
        std::size_t k = i + b.limbs_.size();
        while (carry != 0) {
            const std::uint64_t cur = out.limbs_[k] + carry;
            out.limbs_[k] = static_cast<std::uint32_t>(cur % BigInt::kBase);
            carry = cur / BigInt::kBase;
            ++k;
        }
    }
    out.trim();
    out.negative_ = a.negative_ != b.negative_;
    return out;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& quot, BigInt& rem) {
    if (b.is_zero()) throw Error("BigInt: division by zero");
    const int mag = compare_magnitude(a, b);
    if (mag < 0) {
        quot = BigInt();
        rem = a;
        return;
    }
    const BigInt bm = b.abs();
    BigInt q;
    q.limbs_.assign(a.limbs_.size(), 0);
    BigInt r; // running remainder, always non-negative and < |b|
    for (std::size_t i = a.limbs_.size(); i-- > 0;) {
        // r = r * 1e9 + limb
        if (!r.limbs_.empty() || a.limbs_[i] != 0) {
            r.limbs_.insert(r.limbs_.begin(), a.limbs_[i]);
            r.trim();
        }
        if (compare_magnitude(r, bm) < 0) continue;
        // Binary-search the quotient limb in [1, 1e9).
        std::uint32_t lo = 1;
        std::uint32_t hi = kBase - 1;
        std::uint32_t digit = 1;
        while (lo <= hi) {
            const std::uint32_t mid = lo + (hi - lo) / 2;
            if (compare_magnitude(bm * BigInt(static_cast<std::int64_t>(mid)), r) <= 0) {
                digit = mid;
                lo = mid + 1;
            } else {
                hi = mid - 1;
            }
        }
        q.limbs_[i] = digit;
        r = sub_magnitude(r, bm * BigInt(static_cast<std::int64_t>(digit)));
    }
    q.trim();
    r.trim();
    q.negative_ = (a.negative_ != b.negative_) && !q.limbs_.empty();
    r.negative_ = a.negative_ && !r.limbs_.empty();
    quot = std::move(q);
    rem = std::move(r);
}

BigInt BigInt::gcd(const BigInt& a, const BigInt& b) {
    BigInt x = a.abs();
    BigInt y = b.abs();
    while (!y.is_zero()) {
        BigInt q;
        BigInt r;
        divmod(x, y, q, r);
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

} // namespace toolalign
