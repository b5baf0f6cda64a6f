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

#include "ghzswap/dense.hpp"
#include "ghzswap/label.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <string>

using namespace ghzswap;

namespace {

GhzLabel L(int m, std::uint64_t d, Sign s) { return GhzLabel{m, d, s}; }

// Independent re-implementation of the SGHZ test on character strings.
std::string sghz_by_strings(const GhzLabel& label) {
    if (label.m % 2) return "none";
    std::string bits;
    for (int k = label.m - 1; k >= 0; --k) bits.push_back(((label.d >> k) & 1U) ? '1' : '0');
    const std::string a = bits.substr(0, bits.size() / 2);
    const std::string b = bits.substr(bits.size() / 2);
    std::string nb = b;
    for (char& c : nb) c = c == '0' ? '1' : '0';
    if (a == b) return "equal";
    if (a == nb) return "negated";
    return "none";
}

}  // namespace

TEST(MakeLabel, bell_phi_plus) {
    EXPECT_EQ(make_label(BitString::parse("00"), Sign::Plus), L(2, 0, Sign::Plus));
}

TEST(MakeLabel, canonicalizes_leading_one) {
    EXPECT_EQ(make_label(BitString::parse("11"), Sign::Plus), L(2, 0, Sign::Plus));
    EXPECT_EQ(make_label(BitString::parse("110"), Sign::Minus), L(3, 1, Sign::Minus));
}

TEST(MakeLabel, rejects_single_qubit) {
    try {
        make_label(BitString::parse("0"), Sign::Plus);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidArity);
    }
}

TEST(MakeLabel, idempotent_and_involutive) {
    for (int m = 2; m <= 7; ++m) {
        for (const auto& l : enumerate_basis(m)) {
            EXPECT_EQ(make_label(l.bits(), l.sign), l);
            EXPECT_EQ(make_label(l.bits().negated(), l.sign), l);
        }
    }
}

TEST(GhzIndex, values) {
    EXPECT_EQ(ghz_index(BitString::parse("0110")), 6u);
    EXPECT_EQ(ghz_index(BitString::parse("00000")), 0u);
    EXPECT_EQ(ghz_index(BitString::parse("011")), 3u);
    EXPECT_THROW(ghz_index(BitString::parse("10")), Error);
}

TEST(ClassifySghz, examples) {
    EXPECT_EQ(classify_sghz(L(4, 3, Sign::Plus))->half_relation, HalfRelation::Negated);
    EXPECT_EQ(classify_sghz(L(4, 5, Sign::Plus))->half_relation, HalfRelation::Equal);
    EXPECT_FALSE(classify_sghz(L(4, 1, Sign::Plus)).has_value());
    EXPECT_FALSE(classify_sghz(L(3, 0, Sign::Plus)).has_value());
}

TEST(ClassifySghz, bell_states_always_classify) {
    for (const auto& l : enumerate_basis(2)) EXPECT_TRUE(classify_sghz(l).has_value());
}

TEST(ClassifySghz, agrees_with_string_oracle) {
    for (int m = 2; m <= 8; m += 2) {
        for (const auto& l : enumerate_basis(m)) {
            const auto got = classify_sghz(l);
            const std::string want = sghz_by_strings(l);
            if (want == "none") {
                EXPECT_FALSE(got.has_value()) << format_label(l);
            } else {
                ASSERT_TRUE(got.has_value()) << format_label(l);
                EXPECT_EQ(std::string(to_string(got->half_relation)), want);
            }
        }
    }
}

TEST(EnumerateBasis, bell_order) {
    const auto b = enumerate_basis(2);
    ASSERT_EQ(b.size(), 4u);
    EXPECT_EQ(b[0], L(2, 0, Sign::Plus));
    EXPECT_EQ(b[1], L(2, 0, Sign::Minus));
    EXPECT_EQ(b[2], L(2, 1, Sign::Plus));
    EXPECT_EQ(b[3], L(2, 1, Sign::Minus));
    EXPECT_THROW(enumerate_basis(1), Error);
}

TEST(EnumerateBasis, three_qubits_listing) {
    const auto b = enumerate_basis(3);
    ASSERT_EQ(b.size(), 8u);
    const auto s = embed(b[0]);
    EXPECT_NEAR(s[0].real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(s[7].real(), 1 / std::sqrt(2.0), 1e-15);
}

TEST(EnumerateBasis, orthonormal_under_dense_embedding) {
    for (int m = 2; m <= 6; ++m) {
        const auto basis = enumerate_basis(m);
        ASSERT_EQ(basis.size(), std::size_t{1} << m);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            const auto a = embed(basis[i]);
            for (std::size_t j = 0; j < basis.size(); ++j) {
                const double ov = std::abs(inner(a, embed(basis[j])));
                if (i == j) {
                    EXPECT_LT(std::abs(1.0 - ov), 1e-12);
                } else {
                    EXPECT_LT(ov, 1e-12);
                }
            }
        }
    }
}

TEST(LabelText, round_trip_and_bit_form) {
    for (int m = 2; m <= 5; ++m) {
        for (const auto& l : enumerate_basis(m)) {
            EXPECT_EQ(parse_label(format_label(l)), l);
            EXPECT_EQ(parse_label(format_bits(l)), l);
        }
    }
    EXPECT_EQ(parse_label("GHZ(0110,+)"), L(4, 6, Sign::Plus));
    EXPECT_EQ(parse_label("GHZ(1001,-)"), L(4, 6, Sign::Minus));
    EXPECT_EQ(format_label(L(4, 6, Sign::Plus)), "4:6:+");
}

TEST(LabelText, rejects_garbage) {
    for (const char* bad : {"", "4:6", "4:8:+", "1:0:+", "4:x:+", "4:1:*", "GHZ(0110+)", "GHZ(012,+)", "GHZ(0,+)"}) {
        EXPECT_THROW(parse_label(bad), Error) << bad;
    }
}

TEST(CompositeSystem, particle_map_is_contiguous_bijection) {
    const CompositeSystem sys({L(2, 0, Sign::Plus), L(4, 5, Sign::Minus), L(3, 1, Sign::Plus)});
    EXPECT_EQ(sys.total_qubits(), 9);
    int expected = 1;
    for (std::size_t h = 0; h < sys.size(); ++h) {
        for (int k = 0; k < sys.states()[h].m; ++k) {
            EXPECT_EQ(sys.global_index(h, k), expected);
            EXPECT_EQ(sys.slot(expected), (CompositeSystem::Slot{h, k}));
            ++expected;
        }
    }
}
