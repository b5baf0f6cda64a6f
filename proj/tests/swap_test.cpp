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

#include "ghzswap/rng.hpp"
#include "ghzswap/swap.hpp"

#include <gtest/gtest.h>

#include <map>
#include <tuple>
#include <vector>

using namespace ghzswap;

namespace {

const GhzLabel PhiP{2, 0, Sign::Plus};
const GhzLabel PhiM{2, 0, Sign::Minus};
const GhzLabel PsiP{2, 1, Sign::Plus};
const GhzLabel PsiM{2, 1, Sign::Minus};

GhzLabel L(int m, std::uint64_t d, Sign s) { return GhzLabel{m, d, s}; }
SghzLabel S(const GhzLabel& l) { return *classify_sghz(l); }

using Term = std::tuple<GhzLabel, GhzLabel, int>;  // measured (1,3), residual (2,4), coefficient sign

struct BellCase {
    GhzLabel a, b;
    std::vector<Term> terms;
};

// Signed four-term expansions of two Bell states after measuring (1,3),
// transcribed term by term for i = 0 and i = 1 with upper and lower signs.
std::vector<BellCase> expected_bell_tables() {
    return {
        // same states
        {PhiP, PhiP, {{PhiP, PhiP, +1}, {PhiM, PhiM, +1}, {PsiP, PsiP, +1}, {PsiM, PsiM, +1}}},
        {PhiM, PhiM, {{PhiP, PhiP, +1}, {PhiM, PhiM, +1}, {PsiP, PsiP, -1}, {PsiM, PsiM, -1}}},
        {PsiP, PsiP, {{PhiP, PhiP, +1}, {PhiM, PhiM, -1}, {PsiP, PsiP, +1}, {PsiM, PsiM, -1}}},
        {PsiM, PsiM, {{PhiP, PhiP, +1}, {PhiM, PhiM, -1}, {PsiP, PsiP, -1}, {PsiM, PsiM, +1}}},
        // opposite signs, same letter
        {PhiP, PhiM, {{PhiP, PhiM, +1}, {PhiM, PhiP, +1}, {PsiP, PsiM, -1}, {PsiM, PsiP, -1}}},
        {PhiM, PhiP, {{PhiP, PhiM, +1}, {PhiM, PhiP, +1}, {PsiP, PsiM, +1}, {PsiM, PsiP, +1}}},
        {PsiP, PsiM, {{PhiP, PhiM, -1}, {PhiM, PhiP, +1}, {PsiP, PsiM, +1}, {PsiM, PsiP, -1}}},
        {PsiM, PsiP, {{PhiP, PhiM, -1}, {PhiM, PhiP, +1}, {PsiP, PsiM, -1}, {PsiM, PsiP, +1}}},
        // same signs, different letter
        {PhiP, PsiP, {{PhiP, PsiP, +1}, {PhiM, PsiM, +1}, {PsiP, PhiP, +1}, {PsiM, PhiM, +1}}},
        {PhiM, PsiM, {{PhiP, PsiP, +1}, {PhiM, PsiM, +1}, {PsiP, PhiP, -1}, {PsiM, PhiM, -1}}},
        {PsiP, PhiP, {{PhiP, PsiP, +1}, {PhiM, PsiM, -1}, {PsiP, PhiP, +1}, {PsiM, PhiM, -1}}},
        {PsiM, PhiM, {{PhiP, PsiP, +1}, {PhiM, PsiM, -1}, {PsiP, PhiP, -1}, {PsiM, PhiM, +1}}},
        // different signs, different letter
        {PhiP, PsiM, {{PhiP, PsiM, +1}, {PhiM, PsiP, +1}, {PsiP, PhiM, -1}, {PsiM, PhiP, -1}}},
        {PhiM, PsiP, {{PhiP, PsiM, +1}, {PhiM, PsiP, +1}, {PsiP, PhiM, +1}, {PsiM, PhiP, +1}}},
        {PsiP, PhiM, {{PhiP, PsiM, -1}, {PhiM, PsiP, +1}, {PsiP, PhiM, +1}, {PsiM, PhiP, -1}}},
        {PsiM, PhiP, {{PhiP, PsiM, -1}, {PhiM, PsiP, +1}, {PsiP, PhiM, -1}, {PsiM, PhiP, +1}}},
    };
}

std::vector<Term> terms_of(const SwapPrediction& p) {
    std::vector<Term> out;
    for (const auto& pair : p.pairs) out.emplace_back(pair.measured, pair.residual, to_int(pair.coeff_sign));
    return out;
}

void expect_uniform(const SwapPrediction& p, std::size_t n_states) {
    ASSERT_EQ(p.pairs.size(), std::size_t{1} << n_states);
    double total = 0.0;
    for (const auto& pair : p.pairs) {
        EXPECT_EQ(pair.probability, p.pairs.front().probability);
        total += pair.probability;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
}

}  // namespace

TEST(PredictTwoBell, matches_signed_expansion_tables) {
    const auto tables = expected_bell_tables();
    ASSERT_EQ(tables.size(), 16u);
    for (const auto& c : tables) {
        const auto p = predict_two_bell(c.a, c.b);
        expect_uniform(p, 2);
        EXPECT_EQ(terms_of(p), c.terms) << format_label(c.a) << " x " << format_label(c.b);
        for (const auto& pair : p.pairs) EXPECT_DOUBLE_EQ(pair.probability, 0.25);
    }
}

TEST(PredictTwoBell, opposite_letters_pair_crosswise) {
    const auto p = predict_two_bell(PsiP, PhiP);
    for (const auto& pair : p.pairs) EXPECT_NE(pair.measured.d, pair.residual.d);
    const auto v = verify_against_oracle(SwapSpec::half_cut({PsiP, PhiP}));
    EXPECT_TRUE(v.ok());
}

TEST(PredictTwoBell, rejects_non_bell) {
    try {
        predict_two_bell(L(4, 5, Sign::Plus), PhiP);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidArity);
    }
}

TEST(VerifyAgainstOracle, all_bell_pairs_including_signs) {
    for (const auto& a : enumerate_basis(2)) {
        for (const auto& b : enumerate_basis(2)) {
            const auto r = verify_against_oracle(SwapSpec::half_cut({a, b}));
            EXPECT_TRUE(r.closed_form);
            EXPECT_TRUE(r.ok()) << r.spec << ": " << (r.mismatches.empty() ? "" : r.mismatches.front());
        }
    }
}

TEST(PredictTwoSghz, identical_states_give_identical_pairs) {
    const auto a = S(parse_label("GHZ(0101,+)"));
    const auto p = predict_two_sghz(a, a);
    expect_uniform(p, 2);
    EXPECT_TRUE(p.all_same());
}

TEST(PredictTwoSghz, opposite_signs_pair_plus_with_minus) {
    const auto p = predict_two_sghz(S(parse_label("GHZ(0101,+)")), S(parse_label("GHZ(0101,-)")));
    for (const auto& pair : p.pairs) {
        EXPECT_NE(pair.measured, pair.residual);
        EXPECT_EQ(pair.measured.d, pair.residual.d);
        EXPECT_NE(pair.measured.sign, pair.residual.sign);
    }
}

TEST(PredictTwoSghz, unequal_sizes_match_oracle) {
    const auto a = parse_label("GHZ(0101,+)");
    const auto b = parse_label("GHZ(010010,+)");
    const auto p = predict_two_sghz(S(a), S(b));
    ASSERT_EQ(p.pairs.size(), 4u);
    for (const auto& pair : p.pairs) {
        EXPECT_EQ(pair.measured.m, 5);
        EXPECT_EQ(pair.measured, pair.residual);
    }
    EXPECT_TRUE(theorem1_same(a, b));
    const auto r = verify_against_oracle(SwapSpec::half_cut({a, b}));
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.prediction->pairs, p.pairs);
}

TEST(PredictTwoSghz, non_sghz_is_unavailable) {
    try {
        predict_two_sghz(SghzLabel{L(4, 1, Sign::Plus), HalfRelation::Equal}, S(PhiP));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ClosedFormUnavailable);
    }
}

TEST(PredictMulti, three_phi_plus) {
    const auto p = predict_multi(SwapSpec::half_cut({PhiP, PhiP, PhiP}));
    expect_uniform(p, 3);
    std::vector<Term> want;
    for (std::uint64_t d = 0; d < 4; ++d) {
        want.emplace_back(L(3, d, Sign::Plus), L(3, d, Sign::Plus), +1);
        want.emplace_back(L(3, d, Sign::Minus), L(3, d, Sign::Minus), +1);
    }
    EXPECT_EQ(terms_of(p), want);
}

TEST(PredictMulti, three_psi_plus_signs) {
    const auto p = predict_multi(SwapSpec::half_cut({PsiP, PsiP, PsiP}));
    std::vector<Term> want;
    for (std::uint64_t d = 0; d < 4; ++d) {
        want.emplace_back(L(3, d, Sign::Plus), L(3, d, Sign::Plus), +1);
        want.emplace_back(L(3, d, Sign::Minus), L(3, d, Sign::Minus), -1);
    }
    EXPECT_EQ(terms_of(p), want);
}

TEST(PredictMulti, three_phi_minus_cross_superscripts) {
    // (G_d^+, G_d^-) and (G_d^-, G_d^+) with signs + + / - - / - - / + + for d = 0..3
    const int sign_i0[4] = {+1, -1, -1, +1};
    // i = 1: (-, +), (+, -), (+, -), (-, +)
    const int sign_i1_first[4] = {-1, +1, +1, -1};
    const auto p0 = predict_multi(SwapSpec::half_cut({PhiM, PhiM, PhiM}));
    const auto p1 = predict_multi(SwapSpec::half_cut({PsiM, PsiM, PsiM}));
    std::vector<Term> w0, w1;
    for (std::uint64_t d = 0; d < 4; ++d) {
        w0.emplace_back(L(3, d, Sign::Plus), L(3, d, Sign::Minus), sign_i0[d]);
        w0.emplace_back(L(3, d, Sign::Minus), L(3, d, Sign::Plus), sign_i0[d]);
        w1.emplace_back(L(3, d, Sign::Plus), L(3, d, Sign::Minus), sign_i1_first[d]);
        w1.emplace_back(L(3, d, Sign::Minus), L(3, d, Sign::Plus), -sign_i1_first[d]);
    }
    EXPECT_EQ(terms_of(p0), w0);
    EXPECT_EQ(terms_of(p1), w1);
    EXPECT_FALSE(p0.all_same());
}

TEST(PredictMulti, four_identical_bell_states_same_either_sign) {
    for (const auto& bell : enumerate_basis(2)) {
        const auto p = predict_multi(SwapSpec::half_cut({bell, bell, bell, bell}));
        expect_uniform(p, 4);
        EXPECT_TRUE(p.all_same()) << format_label(bell);
        for (const auto& pair : p.pairs) {
            // lower-sign coefficients follow the parity of d (i = 0); i = 1 adds a - on G^- terms
            int want = 1;
            if (bell.sign == Sign::Minus && BitString(pair.measured.d, 4).popcount() % 2) want = -want;
            if (bell.d == 1 && pair.measured.sign == Sign::Minus) want = -want;
            EXPECT_EQ(to_int(pair.coeff_sign), want) << format_label(pair.measured);
        }
    }
}

TEST(PredictMulti, preconditions) {
    EXPECT_NO_THROW(predict_multi(SwapSpec({PhiP, PhiP}, {1, 1})));
    try {
        predict_multi(SwapSpec({L(4, 5, Sign::Plus), PhiP}, {1, 1}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ClosedFormUnavailable);
    }
    try {
        predict_multi(SwapSpec::half_cut({L(4, 1, Sign::Plus), PhiP}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ClosedFormUnavailable);
    }
    EXPECT_THROW(SwapSpec({PhiP}, {0}), Error);
    EXPECT_THROW(SwapSpec({PhiP}, {1}), Error);
}

TEST(Theorem1, examples) {
    EXPECT_TRUE(theorem1_same(PhiP, PhiP));
    EXPECT_FALSE(theorem1_same(PhiP, PhiM));
    EXPECT_FALSE(theorem1_same(PhiP, PsiP));  // mixed half relations
    EXPECT_TRUE(theorem1_same(parse_label("GHZ(0101,+)"), parse_label("GHZ(010010,+)")));
    const auto v = theorem1_same(L(4, 1, Sign::Plus), PhiP);
    EXPECT_FALSE(v);
    EXPECT_FALSE(v.reason.empty());
}

TEST(Theorem1, agrees_with_oracle_on_sghz_pairs) {
    for (int ma : {2, 4, 6}) {
        for (int mb : {2, 4, 6}) {
            if (ma + mb > 12) continue;
            for (const auto& a : enumerate_sghz(ma)) {
                for (const auto& b : enumerate_sghz(mb)) {
                    const auto r = verify_against_oracle(SwapSpec::half_cut({a, b}));
                    ASSERT_TRUE(r.ok()) << r.spec << ": " << r.mismatches.front();
                    EXPECT_EQ(static_cast<bool>(theorem1_same(a, b)), oracle_all_same(r.oracle)) << r.spec;
                    EXPECT_EQ(static_cast<bool>(theorem1_same(a, b)), r.prediction->all_same()) << r.spec;
                }
            }
        }
    }
}

TEST(Theorem2, examples) {
    EXPECT_TRUE(theorem2_same({PhiP, PhiP, PhiP}));
    EXPECT_FALSE(theorem2_same({PhiM, PhiM, PhiM}));
    EXPECT_TRUE(theorem2_same({PhiM, PhiM, PhiM, PhiM}));
    EXPECT_FALSE(theorem2_same({PhiP, PhiP, PhiP, PhiM}));
    EXPECT_TRUE(theorem2_same({PhiP, PhiP, PhiM, PhiM}));
    EXPECT_FALSE(theorem2_same({PhiP}));
}

TEST(Theorem2, agrees_with_oracle_on_small_sweep) {
    std::vector<GhzLabel> pool = enumerate_sghz(2);
    for (const auto& l : enumerate_sghz(4)) pool.push_back(l);
    Rng rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + rng.below(3);
        std::vector<GhzLabel> states;
        int total = 0;
        for (std::size_t h = 0; h < n; ++h) {
            states.push_back(pool[rng.below(pool.size())]);
            total += states.back().m;
        }
        if (total > 12) continue;
        const auto r = verify_against_oracle(SwapSpec::half_cut(states));
        ASSERT_TRUE(r.ok()) << r.spec;
        EXPECT_EQ(static_cast<bool>(theorem2_same(states)), oracle_all_same(r.oracle)) << r.spec;
    }
}

TEST(VerifyAgainstOracle, random_three_state_sghz_specs) {
    const auto pool = enumerate_sghz(4);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(seed);
        std::vector<GhzLabel> states;
        for (int h = 0; h < 3; ++h) states.push_back(pool[rng.below(pool.size())]);
        const auto r = verify_against_oracle(SwapSpec::half_cut(states));
        EXPECT_TRUE(r.closed_form);
        EXPECT_TRUE(r.ok()) << r.spec;
    }
}

TEST(VerifyAgainstOracle, off_closed_form_routes_to_oracle) {
    // (1,4) cut of two Bell states, via a one-particle cut on a reversed second state
    const auto r = verify_against_oracle(SwapSpec({L(4, 1, Sign::Plus), PhiP}, {2, 1}));
    EXPECT_FALSE(r.closed_form);
    EXPECT_TRUE(r.ok());
    double total = 0.0;
    for (const auto& o : r.oracle) total += o.probability;
    EXPECT_NEAR(total, 1.0, 1e-10);
}

TEST(VerifyAgainstOracle, resource_cap) {
    const auto big = L(8, 0, Sign::Plus);
    try {
        verify_against_oracle(SwapSpec::half_cut({big, big, big, PhiP}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ResourceLimit);
    }
}
