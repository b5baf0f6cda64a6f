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
 * Brute-force state-vector oracle.
 *
 * Amplitude index b reads particle 1 as the most significant bit, so
 * particle q (1-based) of an N-qubit register lives at bit N - q.
 * Every closed-form prediction in the library is checked against the
 * projections computed here.
 */

#include "ghzswap/error.hpp"
#include "ghzswap/label.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ghzswap {

using amp_t = std::complex<double>;

inline constexpr int kMaxDenseQubits = 24;
inline constexpr double kDropProbability = 1e-14;

class DenseState {
public:
    DenseState() : DenseState(1) {}

    /// |0...0> on `num_qubits` qubits.
    explicit DenseState(int num_qubits) : num_qubits_(check_size(num_qubits)), amps_(dim_of(num_qubits)) {
        amps_[0] = 1.0;
    }

    DenseState(int num_qubits, std::vector<amp_t> amps)
        : num_qubits_(check_size(num_qubits)), amps_(std::move(amps)) {
        if (amps_.size() != dim_of(num_qubits_)) {
            throw Error(ErrorCode::InvalidArgument, "amplitude count does not match 2^" + std::to_string(num_qubits_));
        }
    }

    static DenseState basis(int num_qubits, std::uint64_t index) {
        DenseState s(num_qubits);
        s.amps_[0] = 0.0;
        s.amps_.at(index) = 1.0;
        return s;
    }

    int num_qubits() const noexcept { return num_qubits_; }
    std::size_t dim() const noexcept { return amps_.size(); }
    std::span<const amp_t> amps() const noexcept { return amps_; }
    std::span<amp_t> amps() noexcept { return amps_; }
    amp_t operator[](std::uint64_t i) const { return amps_[i]; }
    amp_t& operator[](std::uint64_t i) { return amps_[i]; }

    double norm2() const noexcept {
        double acc = 0.0;
        for (const auto& a : amps_) acc += std::norm(a);
        return acc;
    }

    void normalize() {
        const double n = std::sqrt(norm2());
        if (n == 0.0) throw Error(ErrorCode::InvalidArgument, "cannot normalize the zero vector");
        for (auto& a : amps_) a /= n;
    }

    static int check_size(int n) {
        if (n < 1) throw Error(ErrorCode::InvalidArity, "a register needs at least one qubit");
        if (n > kMaxDenseQubits) {
            throw Error(ErrorCode::ResourceLimit,
                        std::to_string(n) + " qubits exceeds the dense cap of " + std::to_string(kMaxDenseQubits));
        }
        return n;
    }

private:
    static std::size_t dim_of(int n) { return std::size_t{1} << n; }

    int num_qubits_;
    std::vector<amp_t> amps_;
};

inline amp_t inner(const DenseState& a, const DenseState& b) {
    if (a.num_qubits() != b.num_qubits()) throw Error(ErrorCode::InvalidArity, "inner product of mismatched registers");
    amp_t acc = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

inline DenseState embed(const GhzLabel& label) {
    DenseState s = DenseState::basis(DenseState::check_size(label.m), label.d);
    const std::uint64_t partner = label.bits().negated().value();
    const double h = std::numbers::sqrt2 / 2.0;
    s[label.d] = h;
    s[partner] = label.sign == Sign::Plus ? h : -h;
    return s;
}

inline DenseState tensor(std::span<const DenseState> states) {
    if (states.empty()) throw Error(ErrorCode::InvalidArity, "tensor of an empty list");
    int total = 0;
    for (const auto& s : states) total += s.num_qubits();
    DenseState::check_size(total);

    std::vector<amp_t> acc(states.front().amps().begin(), states.front().amps().end());
    for (std::size_t h = 1; h < states.size(); ++h) {
        const auto rhs = states[h].amps();
        std::vector<amp_t> next(acc.size() * rhs.size());
        for (std::size_t i = 0; i < acc.size(); ++i) {
            if (acc[i] == 0.0) continue;
            for (std::size_t j = 0; j < rhs.size(); ++j) next[i * rhs.size() + j] = acc[i] * rhs[j];
        }
        acc = std::move(next);
    }
    return DenseState(total, std::move(acc));
}

inline DenseState tensor(std::initializer_list<DenseState> states) {
    return tensor(std::span<const DenseState>(states.begin(), states.size()));
}

inline DenseState embed_all(std::span<const GhzLabel> labels) {
    std::vector<DenseState> parts;
    parts.reserve(labels.size());
    for (const auto& l : labels) parts.push_back(embed(l));
    return tensor(parts);
}

namespace detail {

/// Gathers the bits of the listed particles into a compact index (first listed = most significant).
/// Split lookup tables keep this at two loads per amplitude.
class BitGather {
public:
    BitGather(int num_qubits, std::span<const int> particles) {
        low_bits_ = num_qubits / 2;
        const int high_bits = num_qubits - low_bits_;
        low_.assign(std::size_t{1} << low_bits_, 0);
        high_.assign(std::size_t{1} << high_bits, 0);
        const int width = static_cast<int>(particles.size());
        for (int j = 0; j < width; ++j) {
            const int src = num_qubits - particles[static_cast<std::size_t>(j)];  // bit position in b
            const std::uint64_t dst = std::uint64_t{1} << (width - 1 - j);
            if (src < low_bits_) {
                for (std::size_t v = 0; v < low_.size(); ++v) {
                    if ((v >> src) & 1U) low_[v] |= dst;
                }
            } else {
                for (std::size_t v = 0; v < high_.size(); ++v) {
                    if ((v >> (src - low_bits_)) & 1U) high_[v] |= dst;
                }
            }
        }
        low_mask_ = (std::uint64_t{1} << low_bits_) - 1;
    }

    std::uint64_t operator()(std::uint64_t b) const noexcept {
        return high_[b >> low_bits_] | low_[b & low_mask_];
    }

private:
    int low_bits_ = 0;
    std::uint64_t low_mask_ = 0;
    std::vector<std::uint64_t> low_;
    std::vector<std::uint64_t> high_;
};

inline void check_particles(int num_qubits, std::span<const int> particles, ErrorCode code) {
    std::vector<bool> seen(static_cast<std::size_t>(num_qubits) + 1, false);
    for (int p : particles) {
        if (p < 1 || p > num_qubits) throw Error(code, "particle " + std::to_string(p) + " out of range");
        if (seen[static_cast<std::size_t>(p)]) throw Error(code, "particle " + std::to_string(p) + " repeated");
        seen[static_cast<std::size_t>(p)] = true;
    }
}

}  // namespace detail

/// Output particle k carries input particle perm[k-1] (1-based).
inline DenseState permute(const DenseState& state, std::span<const int> perm) {
    const int n = state.num_qubits();
    if (static_cast<int>(perm.size()) != n) {
        throw Error(ErrorCode::InvalidPermutation, "permutation size does not match register");
    }
    detail::check_particles(n, perm, ErrorCode::InvalidPermutation);
    const detail::BitGather gather(n, perm);
    std::vector<amp_t> out(state.dim());
    for (std::uint64_t b = 0; b < state.dim(); ++b) out[gather(b)] = state[b];
    return DenseState(n, std::move(out));
}

inline std::vector<int> invert_permutation(std::span<const int> perm) {
    std::vector<int> inv(perm.size());
    detail::check_particles(static_cast<int>(perm.size()), perm, ErrorCode::InvalidPermutation);
    for (std::size_t k = 0; k < perm.size(); ++k) inv[static_cast<std::size_t>(perm[k] - 1)] = static_cast<int>(k) + 1;
    return inv;
}

struct LabelMatch {
    GhzLabel label;
    amp_t phase;  // state == phase * embed(label)
};

/// Recognizes states of the form phase * embed(label); nullopt for anything else.
inline std::optional<LabelMatch> identify_label(const DenseState& state, double tol = 1e-9) {
    const int n = state.num_qubits();
    if (n < 2) return std::nullopt;
    std::uint64_t first = state.dim();
    for (std::uint64_t b = 0; b < state.dim(); ++b) {
        if (std::abs(state[b]) > tol) {
            first = b;
            break;
        }
    }
    if (first == state.dim()) return std::nullopt;
    const std::uint64_t mask = state.dim() - 1;
    const std::uint64_t lo = std::min(first, ~first & mask);
    const std::uint64_t hi = ~lo & mask;
    const amp_t a = state[lo];
    const amp_t b = state[hi];
    const double h = std::numbers::sqrt2 / 2.0;
    if (std::abs(std::abs(a) - h) > tol || std::abs(std::abs(b) - h) > tol) return std::nullopt;
    const amp_t ratio = b / a;
    Sign sign;
    if (std::abs(ratio - 1.0) < tol) {
        sign = Sign::Plus;
    } else if (std::abs(ratio + 1.0) < tol) {
        sign = Sign::Minus;
    } else {
        return std::nullopt;
    }
    double rest = 0.0;
    for (std::uint64_t k = 0; k < state.dim(); ++k) {
        if (k != lo && k != hi) rest += std::norm(state[k]);
    }
    if (rest > tol * tol) return std::nullopt;
    return LabelMatch{GhzLabel{n, lo, sign}, a / h};
}

struct MeasurementOutcome {
    GhzLabel outcome;
    double probability = 0.0;
    DenseState post_state;
    amp_t relative_phase{1.0, 0.0};
    std::optional<GhzLabel> residual;  // set when post_state is exactly a GHZ label
};

namespace detail {

/// amplitude table indexed [measured value][remaining value]
struct SplitAmplitudes {
    int measured_bits;
    int rest_bits;
    std::vector<amp_t> table;
};

inline SplitAmplitudes split(const DenseState& state, std::span<const int> subset, std::span<const int> rest) {
    const int n = state.num_qubits();
    const BitGather gx(n, subset);
    const BitGather gy(n, rest);
    const int rb = static_cast<int>(rest.size());
    SplitAmplitudes out{static_cast<int>(subset.size()), rb, std::vector<amp_t>(state.dim())};
    for (std::uint64_t b = 0; b < state.dim(); ++b) out.table[(gx(b) << rb) | gy(b)] = state[b];
    return out;
}

}  // namespace detail

/**
 * Projects `subset` (1-based particles, listed order = label bit order) onto
 * every GHZ basis label of |subset| qubits. Remaining particles keep ascending
 * original order in post_state. Outcomes below kDropProbability are omitted;
 * the rest come back in enumerate_basis order.
 */
inline std::vector<MeasurementOutcome> measure_ghz(const DenseState& state, std::span<const int> subset) {
    const int n = state.num_qubits();
    const int width = static_cast<int>(subset.size());
    if (width < 2 || width > n - 1) {
        throw Error(ErrorCode::InvalidSubset, "subset size " + std::to_string(width) + " not in [2, " +
                                                  std::to_string(n - 1) + "]");
    }
    detail::check_particles(n, subset, ErrorCode::InvalidSubset);

    std::vector<bool> in_subset(static_cast<std::size_t>(n) + 1, false);
    for (int p : subset) in_subset[static_cast<std::size_t>(p)] = true;
    std::vector<int> rest;
    for (int p = 1; p <= n; ++p) {
        if (!in_subset[static_cast<std::size_t>(p)]) rest.push_back(p);
    }

    const auto split = detail::split(state, subset, rest);
    const std::size_t rest_dim = std::size_t{1} << split.rest_bits;
    const std::uint64_t xmask = (std::uint64_t{1} << width) - 1;
    const double h = std::numbers::sqrt2 / 2.0;

    std::vector<MeasurementOutcome> out;
    for (const auto& label : enumerate_basis(width)) {
        const amp_t* row = split.table.data() + label.d * rest_dim;
        const amp_t* partner = split.table.data() + ((~label.d & xmask) * rest_dim);
        const double s = to_int(label.sign);
        std::vector<amp_t> post(rest_dim);
        double p = 0.0;
        for (std::size_t y = 0; y < rest_dim; ++y) {
            post[y] = h * (row[y] + s * partner[y]);
            p += std::norm(post[y]);
        }
        if (p < kDropProbability) continue;
        DenseState post_state(static_cast<int>(rest.size()), std::move(post));
        post_state.normalize();
        MeasurementOutcome o{label, p, std::move(post_state), amp_t{1.0, 0.0}, std::nullopt};
        if (auto match = identify_label(o.post_state)) {
            o.residual = match->label;
            o.relative_phase = match->phase;
        }
        out.push_back(std::move(o));
    }
    return out;
}

inline std::vector<MeasurementOutcome> measure_ghz(const DenseState& state, std::initializer_list<int> subset) {
    return measure_ghz(state, std::span<const int>(subset.begin(), subset.size()));
}

/// GHZ-basis measurement of the entire register: (label, probability) in enumeration order.
inline std::vector<std::pair<GhzLabel, double>> ghz_distribution(const DenseState& state) {
    const int n = state.num_qubits();
    if (n < 2) throw Error(ErrorCode::InvalidSubset, "a GHZ measurement needs at least 2 qubits");
    const std::uint64_t mask = state.dim() - 1;
    std::vector<std::pair<GhzLabel, double>> out;
    for (const auto& label : enumerate_basis(n)) {
        const amp_t a = (state[label.d] + static_cast<double>(to_int(label.sign)) * state[~label.d & mask]) *
                        (std::numbers::sqrt2 / 2.0);
        const double p = std::norm(a);
        if (p >= kDropProbability) out.emplace_back(label, p);
    }
    return out;
}

/// Probability of reading 1 on `particle` in the computational basis.
inline double probability_one(const DenseState& state, int particle) {
    const int bit = state.num_qubits() - particle;
    double p = 0.0;
    for (std::uint64_t b = 0; b < state.dim(); ++b) {
        if ((b >> bit) & 1U) p += std::norm(state[b]);
    }
    return p;
}

/// Projects `particle` onto |outcome> and renormalizes. Returns the branch probability.
inline double collapse_z(DenseState& state, int particle, bool outcome) {
    detail::check_particles(state.num_qubits(), std::span<const int>(&particle, 1), ErrorCode::InvalidSubset);
    const int bit = state.num_qubits() - particle;
    double p = 0.0;
    for (std::uint64_t b = 0; b < state.dim(); ++b) {
        if (static_cast<bool>((b >> bit) & 1U) != outcome) {
            state[b] = 0.0;
        } else {
            p += std::norm(state[b]);
        }
    }
    if (p > 0.0) state.normalize();
    return p;
}

/// Computational-basis measurement driven by a uniform draw `u` in [0,1).
inline bool measure_z(DenseState& state, int particle, double u) {
    const bool one = u < probability_one(state, particle);
    collapse_z(state, particle, one);
    return one;
}

inline void apply_hadamard(DenseState& state, int particle) {
    const int bit = state.num_qubits() - particle;
    const std::uint64_t stride = std::uint64_t{1} << bit;
    const double h = std::numbers::sqrt2 / 2.0;
    for (std::uint64_t b = 0; b < state.dim(); ++b) {
        if (b & stride) continue;
        const amp_t a0 = state[b];
        const amp_t a1 = state[b | stride];
        state[b] = h * (a0 + a1);
        state[b | stride] = h * (a0 - a1);
    }
}

}  // namespace ghzswap
