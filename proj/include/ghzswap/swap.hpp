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
 * Closed-form entanglement swapping between SGHZ states (Bell states are the
 * m = 2 members) and the oracle cross-check that backs it.
 *
 * With every state cut in half, the composite expands over choice vectors
 * c in {0,1}^n (c_h = 1 picks the ~x_h branch of state h). Terms c and ~c share
 * the measured pair {A_c, ~A_c}, so fixing c_1 = 0 leaves 2^(n-1) measured
 * strings. Each contributes
 *
 *   S_c [ |G_A^+>|G_R^(+r)> + |G_A^->|G_R^(-r)> ]    (up to a sign on one term)
 *
 * where S_c is the product of the signs of the flipped states, r the product of
 * all signs, and R the canonical form of the concatenated second halves B_c.
 * When B_c starts with a 1 the residual term with superscript - picks up an
 * extra -1. Every pair therefore has probability 2^-n.
 */

#include "ghzswap/dense.hpp"
#include "ghzswap/error.hpp"
#include "ghzswap/label.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace ghzswap {

struct SwapPair {
    GhzLabel measured;
    GhzLabel residual;
    Sign coeff_sign = Sign::Plus;
    double probability = 0.0;

    friend bool operator==(const SwapPair&, const SwapPair&) = default;
};

struct SwapPrediction {
    std::vector<SwapPair> pairs;  // sorted by measured label

    /// True when every measured label equals its residual label.
    bool all_same() const {
        return std::all_of(pairs.begin(), pairs.end(), [](const SwapPair& p) { return p.measured == p.residual; });
    }
};

/// States plus the number of leading particles measured from each.
class SwapSpec {
public:
    SwapSpec(std::vector<GhzLabel> states, std::vector<int> cut) : composite_(std::move(states)), cut_(std::move(cut)) {
        if (cut_.size() != composite_.size()) {
            throw Error(ErrorCode::InvalidArgument, "cut needs one entry per state");
        }
        int total = 0;
        for (std::size_t h = 0; h < cut_.size(); ++h) {
            const int m = composite_.states()[h].m;
            if (cut_[h] < 1 || cut_[h] > m - 1) {
                throw Error(ErrorCode::InvalidArgument, "cut " + std::to_string(cut_[h]) + " invalid for a " +
                                                            std::to_string(m) + "-qubit state");
            }
            total += cut_[h];
        }
        if (total < 2) throw Error(ErrorCode::InvalidArgument, "a joint measurement needs at least 2 particles");
    }

    /// Default cut: the first half of every (even-sized) state.
    static SwapSpec half_cut(std::vector<GhzLabel> states) {
        std::vector<int> cut;
        for (const auto& s : states) {
            if (s.m % 2 != 0) {
                throw Error(ErrorCode::ClosedFormUnavailable, "odd-sized state " + format_label(s) + " has no half cut");
            }
            cut.push_back(s.m / 2);
        }
        return SwapSpec(std::move(states), std::move(cut));
    }

    const CompositeSystem& composite() const noexcept { return composite_; }
    const std::vector<GhzLabel>& states() const noexcept { return composite_.states(); }
    const std::vector<int>& cut() const noexcept { return cut_; }

    bool is_half_cut() const {
        for (std::size_t h = 0; h < cut_.size(); ++h) {
            if (2 * cut_[h] != states()[h].m) return false;
        }
        return true;
    }

    /// Measured particles in label bit order: the cut prefix of each state, state by state.
    std::vector<int> measured_particles() const {
        std::vector<int> out;
        for (std::size_t h = 0; h < cut_.size(); ++h) {
            for (int k = 0; k < cut_[h]; ++k) out.push_back(composite_.global_index(h, k));
        }
        return out;
    }

    /// The remaining particles, ascending.
    std::vector<int> residual_particles() const {
        std::vector<int> out;
        for (std::size_t h = 0; h < cut_.size(); ++h) {
            for (int k = cut_[h]; k < states()[h].m; ++k) out.push_back(composite_.global_index(h, k));
        }
        return out;
    }

    std::string describe() const {
        std::ostringstream os;
        for (std::size_t h = 0; h < cut_.size(); ++h) {
            if (h) os << ' ';
            os << format_label(states()[h]);
        }
        if (!is_half_cut()) {
            os << " cut=";
            for (std::size_t h = 0; h < cut_.size(); ++h) os << (h ? "," : "") << cut_[h];
        }
        return os.str();
    }

private:
    CompositeSystem composite_;
    std::vector<int> cut_;
};

namespace detail {

inline SwapPrediction expand_half_cut(const std::vector<GhzLabel>& states) {
    const std::size_t n = states.size();
    std::vector<BitString> first, second;
    Sign total = Sign::Plus;
    for (const auto& s : states) {
        const int half = s.m / 2;
        first.push_back(s.bits().slice(0, half));
        second.push_back(s.bits().slice(half, half));
        total = total * s.sign;
    }
    const double probability = std::ldexp(1.0, -static_cast<int>(n));

    SwapPrediction out;
    const std::uint64_t choices = std::uint64_t{1} << (n - 1);
    for (std::uint64_t c = 0; c < choices; ++c) {
        // bit (n-1-h) of c selects the negated branch of state h; state 0 never flips
        std::optional<BitString> a, b;
        Sign weight = Sign::Plus;
        for (std::size_t h = 0; h < n; ++h) {
            const bool flipped = (c >> (n - 1 - h)) & 1U;
            const BitString ah = flipped ? first[h].negated() : first[h];
            const BitString bh = flipped ? second[h].negated() : second[h];
            a = a ? a->concat(ah) : ah;
            b = b ? b->concat(bh) : bh;
            if (flipped) weight = weight * states[h].sign;
        }
        for (Sign measured : {Sign::Plus, Sign::Minus}) {
            const Sign residual = measured * total;
            Sign coeff = weight;
            if (b->leading() && residual == Sign::Minus) coeff = flip(coeff);
            out.pairs.push_back(SwapPair{GhzLabel{a->size(), ghz_index(*a), measured}, make_label(*b, residual), coeff,
                                         probability});
        }
    }
    std::sort(out.pairs.begin(), out.pairs.end(),
              [](const SwapPair& x, const SwapPair& y) { return x.measured < y.measured; });
    return out;
}

inline void require_sghz(const GhzLabel& label) {
    if (!classify_sghz(label)) {
        throw Error(ErrorCode::ClosedFormUnavailable, format_label(label) + " is not an SGHZ state");
    }
}

}  // namespace detail

inline SwapPrediction predict_two_bell(const GhzLabel& a, const GhzLabel& b) {
    if (a.m != 2 || b.m != 2) throw Error(ErrorCode::InvalidArity, "predict_two_bell takes two Bell labels");
    return detail::expand_half_cut({a, b});
}

inline SwapPrediction predict_two_sghz(const SghzLabel& a, const SghzLabel& b) {
    detail::require_sghz(a.inner);
    detail::require_sghz(b.inner);
    return detail::expand_half_cut({a.inner, b.inner});
}

inline SwapPrediction predict_multi(const SwapSpec& spec) {
    if (spec.states().size() < 2) throw Error(ErrorCode::ClosedFormUnavailable, "closed form needs at least 2 states");
    if (!spec.is_half_cut()) throw Error(ErrorCode::ClosedFormUnavailable, "closed form needs the half cut");
    for (const auto& s : spec.states()) detail::require_sghz(s);
    return detail::expand_half_cut(spec.states());
}

/// Verdict of a same-outcome predicate; `reason` is set when the answer is false.
struct Verdict {
    bool same = false;
    std::string reason;
    explicit operator bool() const noexcept { return same; }
};

/// Measured and residual labels coincide for every outcome iff all states are SGHZ,
/// all share one half relation, and an even number of them carry the - sign.
inline Verdict theorem2_same(const std::vector<GhzLabel>& states) {
    if (states.size() < 2) return {false, "needs at least two states"};
    std::optional<HalfRelation> relation;
    int negative = 0;
    for (const auto& s : states) {
        const auto cls = classify_sghz(s);
        if (!cls) return {false, format_label(s) + " is not SGHZ"};
        if (relation && *relation != cls->half_relation) {
            return {false, "states mix equal and negated half relations"};
        }
        relation = cls->half_relation;
        if (s.sign == Sign::Minus) ++negative;
    }
    if (negative % 2 != 0) return {false, std::to_string(negative) + " states carry the - sign (odd)"};
    return {true, {}};
}

inline Verdict theorem1_same(const GhzLabel& a, const GhzLabel& b) { return theorem2_same({a, b}); }

struct OracleOutcome {
    GhzLabel measured;
    std::optional<GhzLabel> residual;
    double probability = 0.0;
    amp_t relative_phase{1.0, 0.0};
};

/// Runs the swap on the dense register: measured particles are permuted to the
/// front (state by state), then the leading block is GHZ-measured.
inline std::vector<OracleOutcome> oracle_swap(const SwapSpec& spec) {
    std::vector<int> perm = spec.measured_particles();
    const int measured = static_cast<int>(perm.size());
    for (int p : spec.residual_particles()) perm.push_back(p);
    if (static_cast<int>(perm.size()) < measured + 1) {
        throw Error(ErrorCode::InvalidSubset, "nothing left unmeasured");
    }
    const DenseState regrouped = permute(embed_all(spec.states()), perm);
    std::vector<int> subset(static_cast<std::size_t>(measured));
    for (int k = 0; k < measured; ++k) subset[static_cast<std::size_t>(k)] = k + 1;

    std::vector<OracleOutcome> out;
    for (auto& o : measure_ghz(regrouped, subset)) {
        out.push_back({o.outcome, o.residual, o.probability, o.relative_phase});
    }
    return out;
}

inline bool oracle_all_same(const std::vector<OracleOutcome>& outcomes) {
    return std::all_of(outcomes.begin(), outcomes.end(),
                       [](const OracleOutcome& o) { return o.residual && *o.residual == o.measured; });
}

struct VerificationReport {
    std::string spec;
    bool closed_form = false;
    std::optional<SwapPrediction> prediction;
    std::vector<OracleOutcome> oracle;
    std::vector<std::string> mismatches;

    bool ok() const noexcept { return mismatches.empty(); }
};

/// Compares the closed form against the dense oracle. Specs outside the closed
/// form's reach are reported with closed_form = false and no mismatches.
inline VerificationReport verify_against_oracle(const SwapSpec& spec, double tol = 1e-10) {
    int total = 0;
    for (const auto& s : spec.states()) total += s.m;
    if (total > kMaxDenseQubits) {
        throw Error(ErrorCode::ResourceLimit, std::to_string(total) + " qubits exceeds the oracle cap");
    }
    VerificationReport report;
    report.spec = spec.describe();
    report.oracle = oracle_swap(spec);

    double sum = 0.0;
    for (const auto& o : report.oracle) sum += o.probability;
    if (std::abs(sum - 1.0) > tol) report.mismatches.push_back("oracle probabilities sum to " + std::to_string(sum));

    try {
        report.prediction = predict_multi(spec);
        report.closed_form = true;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::ClosedFormUnavailable) throw;
        return report;
    }

    const auto& pairs = report.prediction->pairs;
    if (pairs.size() != report.oracle.size()) {
        report.mismatches.push_back("support size: expected " + std::to_string(pairs.size()) + ", got " +
                                    std::to_string(report.oracle.size()));
        return report;
    }
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto& want = pairs[k];
        const auto& got = report.oracle[k];
        const std::string at = "outcome " + format_label(want.measured) + ": ";
        if (want.measured != got.measured) {
            report.mismatches.push_back(at + "oracle measured " + format_label(got.measured));
            continue;
        }
        if (std::abs(want.probability - got.probability) > tol) {
            report.mismatches.push_back(at + "probability expected " + std::to_string(want.probability) + ", got " +
                                        std::to_string(got.probability));
        }
        if (!got.residual || *got.residual != want.residual) {
            report.mismatches.push_back(at + "residual expected " + format_label(want.residual) + ", got " +
                                        (got.residual ? format_label(*got.residual) : std::string("non-GHZ")));
            continue;
        }
        const double phase = to_int(want.coeff_sign);
        if (std::abs(got.relative_phase - amp_t{phase, 0.0}) > 1e-9) {
            report.mismatches.push_back(at + "coefficient sign expected " + sign_char(want.coeff_sign));
        }
    }
    return report;
}

}  // namespace ghzswap
