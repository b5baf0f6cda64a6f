// Copyright 2026 The ghzswap Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/** @file
 * Bitstring-plus-sign labels for Bell, GHZ and SGHZ states.
 *
 * A label (m, d, s) names the m-qubit state
 *   (|B(d)> + s |B(2^m - d - 1)>) / sqrt(2)
 * where B(d) is the m-bit expansion of d with particle 1 as the most
 * significant bit. Canonical labels always have a leading 0 bit, so
 * 0 <= d < 2^(m-1). Global phase is discarded at the label level.
 */

#include "ghzswap/error.hpp"

#include <cctype>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ghzswap {

inline constexpr int kMaxLabelQubits = 62;

/// Fixed-length bit sequence; position 0 is particle 1 (most significant).
class BitString {
public:
    BitString() = default;

    BitString(std::uint64_t value, int length) : value_(value), length_(length) {
        if (length < 1 || length > kMaxLabelQubits) {
            throw Error(ErrorCode::InvalidArity, "bitstring length " + std::to_string(length));
        }
        if (length < 64 && (value >> length) != 0) {
            throw Error(ErrorCode::InvalidArgument, "value does not fit in " + std::to_string(length) + " bits");
        }
    }

    static BitString parse(std::string_view text) {
        if (text.empty()) throw Error(ErrorCode::Parse, "empty bitstring");
        std::uint64_t v = 0;
        for (char c : text) {
            if (c != '0' && c != '1') throw Error(ErrorCode::Parse, "bad bit '" + std::string(1, c) + "'");
            v = (v << 1) | static_cast<std::uint64_t>(c - '0');
        }
        return BitString(v, static_cast<int>(text.size()));
    }

    int size() const noexcept { return length_; }
    std::uint64_t value() const noexcept { return value_; }
    std::uint64_t mask() const noexcept { return (std::uint64_t{1} << length_) - 1; }

    /// Bit at position `k` (0-based, particle k+1).
    bool operator[](int k) const noexcept { return (value_ >> (length_ - 1 - k)) & 1U; }
    bool leading() const noexcept { return (*this)[0]; }

    BitString negated() const { return BitString(~value_ & mask(), length_); }

    BitString slice(int begin, int count) const {
        const std::uint64_t shifted = value_ >> (length_ - begin - count);
        return BitString(shifted & ((std::uint64_t{1} << count) - 1), count);
    }

    BitString concat(const BitString& tail) const {
        return BitString((value_ << tail.length_) | tail.value_, length_ + tail.length_);
    }

    int popcount() const noexcept { return __builtin_popcountll(value_); }

    std::string str() const {
        std::string out(static_cast<std::size_t>(length_), '0');
        for (int k = 0; k < length_; ++k) out[static_cast<std::size_t>(k)] = (*this)[k] ? '1' : '0';
        return out;
    }

    friend bool operator==(const BitString&, const BitString&) = default;

private:
    std::uint64_t value_ = 0;
    int length_ = 1;
};

enum class Sign : int { Plus = 1, Minus = -1 };

inline int to_int(Sign s) noexcept { return static_cast<int>(s); }
inline Sign flip(Sign s) noexcept { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
inline Sign operator*(Sign a, Sign b) noexcept { return a == b ? Sign::Plus : Sign::Minus; }
inline char sign_char(Sign s) noexcept { return s == Sign::Plus ? '+' : '-'; }

struct GhzLabel {
    int m = 2;
    std::uint64_t d = 0;
    Sign sign = Sign::Plus;

    BitString bits() const { return BitString(d, m); }

    friend bool operator==(const GhzLabel&, const GhzLabel&) = default;

    // Enumeration order: qubit count, then d ascending, then + before -.
    friend std::strong_ordering operator<=>(const GhzLabel& a, const GhzLabel& b) {
        if (auto c = a.m <=> b.m; c != 0) return c;
        if (auto c = a.d <=> b.d; c != 0) return c;
        return (-to_int(a.sign)) <=> (-to_int(b.sign));
    }
};

/// Canonical label for (|bits> + sign |~bits>); a leading 1 selects the negated branch.
inline GhzLabel make_label(const BitString& bits, Sign sign) {
    if (bits.size() < 2) throw Error(ErrorCode::InvalidArity, "a GHZ label needs at least 2 qubits");
    // |1x> - |0~x> = -(|0~x> - |1x>): the -1 is a global phase and is dropped.
    const BitString canonical = bits.leading() ? bits.negated() : bits;
    return GhzLabel{bits.size(), canonical.value(), sign};
}

inline std::uint64_t ghz_index(const BitString& bits) {
    if (bits.leading()) throw Error(ErrorCode::NotCanonical, "leading bit of " + bits.str() + " is 1");
    return bits.value();
}

enum class HalfRelation { Equal, Negated };

inline const char* to_string(HalfRelation r) { return r == HalfRelation::Equal ? "equal" : "negated"; }

struct SghzLabel {
    GhzLabel inner;
    HalfRelation half_relation = HalfRelation::Equal;

    int half() const noexcept { return inner.m / 2; }
    friend bool operator==(const SghzLabel&, const SghzLabel&) = default;
};

/// Equal/Negated when the first half equals the second half (or its negation); nullopt otherwise.
inline std::optional<SghzLabel> classify_sghz(const GhzLabel& label) {
    if (label.m < 2 || label.m % 2 != 0) return std::nullopt;
    const int n = label.m / 2;
    const BitString bits = label.bits();
    const BitString first = bits.slice(0, n);
    const BitString second = bits.slice(n, n);
    if (first == second) return SghzLabel{label, HalfRelation::Equal};
    if (first == second.negated()) return SghzLabel{label, HalfRelation::Negated};
    return std::nullopt;
}

inline std::vector<GhzLabel> enumerate_basis(int m) {
    if (m < 2) throw Error(ErrorCode::InvalidArity, "basis needs m >= 2");
    if (m > kMaxLabelQubits) throw Error(ErrorCode::ResourceLimit, "basis too large");
    std::vector<GhzLabel> out;
    const std::uint64_t count = std::uint64_t{1} << (m - 1);
    out.reserve(static_cast<std::size_t>(2 * count));
    for (std::uint64_t d = 0; d < count; ++d) {
        out.push_back({m, d, Sign::Plus});
        out.push_back({m, d, Sign::Minus});
    }
    return out;
}

/// All SGHZ labels on m qubits (m even), in enumeration order.
inline std::vector<GhzLabel> enumerate_sghz(int m) {
    std::vector<GhzLabel> out;
    for (const auto& l : enumerate_basis(m)) {
        if (classify_sghz(l)) out.push_back(l);
    }
    return out;
}

// Text encoding: "m:d:s" on output; "GHZ(bits,s)" also accepted on input.

inline std::string format_label(const GhzLabel& l) {
    return std::to_string(l.m) + ":" + std::to_string(l.d) + ":" + sign_char(l.sign);
}

inline std::string format_bits(const GhzLabel& l) {
    return "GHZ(" + l.bits().str() + "," + sign_char(l.sign) + ")";
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline Sign parse_sign(std::string_view s) {
    s = trim(s);
    if (s == "+") return Sign::Plus;
    if (s == "-") return Sign::Minus;
    throw Error(ErrorCode::Parse, "bad sign '" + std::string(s) + "'");
}

inline std::uint64_t parse_uint(std::string_view s) {
    s = trim(s);
    if (s.empty() || s.size() > 19) throw Error(ErrorCode::Parse, "bad integer '" + std::string(s) + "'");
    std::uint64_t v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw Error(ErrorCode::Parse, "bad integer '" + std::string(s) + "'");
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return v;
}

}  // namespace detail

inline GhzLabel parse_label(std::string_view text) {
    text = detail::trim(text);
    if (text.starts_with("GHZ(")) {
        if (!text.ends_with(")")) throw Error(ErrorCode::Parse, "unterminated '" + std::string(text) + "'");
        const std::string_view body = text.substr(4, text.size() - 5);
        const auto comma = body.find(',');
        if (comma == std::string_view::npos) throw Error(ErrorCode::Parse, "missing sign in '" + std::string(text) + "'");
        const BitString bits = BitString::parse(detail::trim(body.substr(0, comma)));
        return make_label(bits, detail::parse_sign(body.substr(comma + 1)));
    }
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
    if (c2 == std::string_view::npos) throw Error(ErrorCode::Parse, "expected m:d:s, got '" + std::string(text) + "'");
    const std::uint64_t m = detail::parse_uint(text.substr(0, c1));
    const std::uint64_t d = detail::parse_uint(text.substr(c1 + 1, c2 - c1 - 1));
    const Sign s = detail::parse_sign(text.substr(c2 + 1));
    if (m < 2 || m > static_cast<std::uint64_t>(kMaxLabelQubits)) {
        throw Error(ErrorCode::Parse, "qubit count out of range in '" + std::string(text) + "'");
    }
    if (d >= (std::uint64_t{1} << (m - 1))) {
        throw Error(ErrorCode::Parse, "index out of range in '" + std::string(text) + "'");
    }
    return GhzLabel{static_cast<int>(m), d, s};
}

/// Ordered GHZ-class states with global particle numbering 1..M.
class CompositeSystem {
public:
    struct Slot {
        std::size_t state;
        int position;  // 0-based inside the state
        friend bool operator==(const Slot&, const Slot&) = default;
    };

    CompositeSystem() = default;

    explicit CompositeSystem(std::vector<GhzLabel> states) : states_(std::move(states)) {
        int offset = 0;
        for (std::size_t h = 0; h < states_.size(); ++h) {
            offsets_.push_back(offset);
            for (int k = 0; k < states_[h].m; ++k) particle_map_.push_back({h, k});
            offset += states_[h].m;
        }
    }

    const std::vector<GhzLabel>& states() const noexcept { return states_; }
    std::size_t size() const noexcept { return states_.size(); }
    int total_qubits() const noexcept { return static_cast<int>(particle_map_.size()); }

    /// 1-based global index of `position` (0-based) in state `h`.
    int global_index(std::size_t h, int position) const { return offsets_.at(h) + position + 1; }

    const Slot& slot(int global) const { return particle_map_.at(static_cast<std::size_t>(global - 1)); }

private:
    std::vector<GhzLabel> states_;
    std::vector<int> offsets_;
    std::vector<Slot> particle_map_;
};

}  // namespace ghzswap
