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
 * Seeded simulations of three entanglement-swapping protocols: key
 * distribution (QKD), private comparison through a third party (QPC) and
 * secret sharing (QSS).
 *
 * All measurement statistics come from the dense oracle; the closed-form
 * engine is never consulted, so a clean-channel run doubles as an end-to-end
 * check of the swapping rules. The eavesdropper measures intercepted particles
 * in the computational basis and forwards the collapsed particle. Decoy checks
 * are Bell pairs: the sender keeps one half, the other half crosses the channel,
 * and both ends measure in a shared random basis (Z or X).
 */

#include "ghzswap/dense.hpp"
#include "ghzswap/error.hpp"
#include "ghzswap/label.hpp"
#include "ghzswap/rng.hpp"

#include "json.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ghzswap {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kTranscriptSchema = "ghzswap.transcript/1";

struct InterceptMeasure {
    double probability = 1.0;
};

enum class DecoyBasis { Computational, Diagonal, Random };

inline const char* to_string(DecoyBasis b) {
    switch (b) {
        case DecoyBasis::Computational: return "z";
        case DecoyBasis::Diagonal: return "x";
        case DecoyBasis::Random: return "random";
    }
    return "random";
}

inline DecoyBasis parse_decoy_basis(std::string_view s) {
    if (s == "z") return DecoyBasis::Computational;
    if (s == "x") return DecoyBasis::Diagonal;
    if (s == "random") return DecoyBasis::Random;
    throw Error(ErrorCode::Parse, "decoy basis must be z, x or random");
}

struct DecoyConfig {
    int per_state = 0;  // decoy checks per data state
    DecoyBasis basis = DecoyBasis::Random;
};

struct Channel {
    std::optional<InterceptMeasure> eavesdropper;
    DecoyConfig decoy;

    void validate() const {
        if (eavesdropper && (eavesdropper->probability < 0.0 || eavesdropper->probability > 1.0)) {
            throw Error(ErrorCode::InvalidArgument, "intercept probability must lie in [0, 1]");
        }
        if (decoy.per_state < 0) throw Error(ErrorCode::InvalidArgument, "decoy count must be non-negative");
    }

    double intercept_probability() const noexcept { return eavesdropper ? eavesdropper->probability : 0.0; }
};

struct Party {
    std::string name;
    std::uint64_t rng_seed = 0;
    std::map<std::string, std::vector<int>> holdings;  // slot -> particles in that slot's register
};

/// Holdings of different parties never share a particle within one slot register.
inline bool holdings_disjoint(std::span<const Party> parties) {
    std::map<std::string, std::set<int>> seen;
    for (const auto& p : parties) {
        for (const auto& [slot, particles] : p.holdings) {
            for (int q : particles) {
                if (!seen[slot].insert(q).second) return false;
            }
        }
    }
    return true;
}

struct PreparedState {
    int slot = 0;
    std::string owner;
    GhzLabel label;
};

struct Transmission {
    int slot = 0;
    std::string from;
    std::string to;
    std::vector<int> particles;
    std::vector<bool> intercepted;
};

struct MeasurementRecord {
    int slot = 0;
    std::string party;
    std::string basis;  // "ghz" or "z"
    std::vector<int> particles;
    std::string result;
};

struct DecoyStats {
    int checks = 0;
    int failures = 0;

    bool passed() const noexcept { return failures == 0; }
    DecoyStats& operator+=(const DecoyStats& o) {
        checks += o.checks;
        failures += o.failures;
        return *this;
    }
};

struct CheckStats {
    DecoyStats decoy;
    int slot_checks = 0;
    int slot_failures = 0;
};

struct ProtocolTranscript {
    std::string protocol;
    std::uint64_t seed = 0;
    ordered_json params = ordered_json::object();
    Channel channel;
    std::vector<Party> parties;
    std::vector<PreparedState> prepared;
    std::vector<Transmission> transmissions;
    std::vector<MeasurementRecord> measurements;
    ordered_json derived = ordered_json::object();
    CheckStats checks;
    bool eavesdropping_detected = false;
    bool success = false;
};

inline ordered_json to_json(const Channel& c) {
    ordered_json eve = ordered_json::object();
    if (c.eavesdropper) {
        eve["model"] = "intercept-measure";
        eve["probability"] = c.eavesdropper->probability;
    } else {
        eve["model"] = "none";
    }
    return ordered_json{{"eavesdropper", eve},
                        {"decoy", {{"per_state", c.decoy.per_state}, {"basis", to_string(c.decoy.basis)}}}};
}

inline ordered_json to_json(const ProtocolTranscript& t) {
    ordered_json j;
    j["schema"] = kTranscriptSchema;
    j["protocol"] = t.protocol;
    j["seed"] = t.seed;
    j["params"] = t.params;
    j["channel"] = to_json(t.channel);
    j["parties"] = ordered_json::array();
    for (const auto& p : t.parties) {
        ordered_json holdings = ordered_json::object();
        for (const auto& [slot, particles] : p.holdings) holdings[slot] = particles;
        j["parties"].push_back({{"name", p.name}, {"rng_seed", p.rng_seed}, {"holdings", holdings}});
    }
    j["prepared"] = ordered_json::array();
    for (const auto& p : t.prepared) {
        j["prepared"].push_back({{"slot", p.slot}, {"owner", p.owner}, {"label", format_label(p.label)}});
    }
    j["transmissions"] = ordered_json::array();
    for (const auto& x : t.transmissions) {
        j["transmissions"].push_back({{"slot", x.slot},
                                      {"from", x.from},
                                      {"to", x.to},
                                      {"particles", x.particles},
                                      {"intercepted", x.intercepted}});
    }
    j["measurements"] = ordered_json::array();
    for (const auto& m : t.measurements) {
        j["measurements"].push_back({{"slot", m.slot},
                                     {"party", m.party},
                                     {"basis", m.basis},
                                     {"particles", m.particles},
                                     {"result", m.result}});
    }
    j["derived"] = t.derived;
    j["checks"] = {{"decoy_checks", t.checks.decoy.checks},
                   {"decoy_failures", t.checks.decoy.failures},
                   {"slot_checks", t.checks.slot_checks},
                   {"slot_failures", t.checks.slot_failures}};
    j["outcome"] = {{"eavesdropping_detected", t.eavesdropping_detected}, {"success", t.success}};
    return j;
}

/// Independent random streams of one session, all derived from its seed.
struct SessionStreams {
    explicit SessionStreams(std::uint64_t seed)
        : seed(seed), nature(derive_seed(seed, 0)), eve(derive_seed(seed, 99)) {}

    std::uint64_t party_seed(std::uint64_t index) const { return derive_seed(seed, index + 1); }

    std::uint64_t seed;
    Rng nature;  // measurement outcomes
    Rng eve;     // eavesdropper decisions and outcomes
};

namespace detail {

/// Intercept-resend on each listed particle; returns which ones Eve touched.
inline std::vector<bool> cross_channel(DenseState& state, std::span<const int> particles, const Channel& channel,
                                       Rng& eve) {
    std::vector<bool> touched;
    const double p = channel.intercept_probability();
    for (int q : particles) {
        const bool act = p > 0.0 && eve.bernoulli(p);
        if (act) measure_z(state, q, eve.uniform());
        touched.push_back(act);
    }
    return touched;
}

template <class Outcome, class ProbFn>
std::size_t sample_index(const std::vector<Outcome>& outcomes, ProbFn prob, double u) {
    double acc = 0.0;
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
        acc += prob(outcomes[k]);
        if (u < acc) return k;
    }
    return outcomes.size() - 1;
}

inline MeasurementOutcome sample_ghz(const DenseState& state, std::span<const int> subset, Rng& nature) {
    auto outcomes = measure_ghz(state, subset);
    const auto k = sample_index(outcomes, [](const MeasurementOutcome& o) { return o.probability; }, nature.uniform());
    return std::move(outcomes[k]);
}

inline GhzLabel sample_full_ghz(const DenseState& state, Rng& nature) {
    const auto dist = ghz_distribution(state);
    const auto k = sample_index(dist, [](const auto& e) { return e.second; }, nature.uniform());
    return dist[k].first;
}

inline std::vector<int> range(int first, int count) {
    std::vector<int> out;
    for (int k = 0; k < count; ++k) out.push_back(first + k);
    return out;
}

inline const std::vector<GhzLabel>& sghz_pool(int qubits) {
    static std::map<int, std::vector<GhzLabel>> cache;
    auto it = cache.find(qubits);
    if (it == cache.end()) it = cache.emplace(qubits, enumerate_sghz(qubits)).first;
    return it->second;
}

}  // namespace detail

/// One decoy check per call on a fresh Bell pair. The sender keeps particle 1.
inline bool decoy_round(const Channel& channel, Rng& sender, Rng& eve, Rng& nature) {
    DenseState pair = embed(GhzLabel{2, 0, Sign::Plus});
    const int sent = 2;
    detail::cross_channel(pair, std::span<const int>(&sent, 1), channel, eve);
    bool diagonal = channel.decoy.basis == DecoyBasis::Diagonal;
    if (channel.decoy.basis == DecoyBasis::Random) diagonal = sender.bit();
    if (diagonal) {
        apply_hadamard(pair, 1);
        apply_hadamard(pair, 2);
    }
    const bool kept = measure_z(pair, 1, nature.uniform());
    const bool received = measure_z(pair, 2, nature.uniform());
    return kept != received;
}

/// Runs `count` decoy checks over `channel`; any failure signals eavesdropping.
inline DecoyStats decoy_check(int count, const Channel& channel, Rng& sender, Rng& eve, Rng& nature) {
    if (count < 0) throw Error(ErrorCode::InvalidArgument, "decoy count must be non-negative");
    DecoyStats stats;
    for (int k = 0; k < count; ++k) {
        ++stats.checks;
        if (decoy_round(channel, sender, eve, nature)) ++stats.failures;
    }
    return stats;
}

// ---------------------------------------------------------------------------
// Key distribution

struct QkdKeys {
    int parity = 0;           // XOR of bits 2..2l of the measured label
    std::uint64_t value = 0;  // bits 2..2l read as an integer
};

inline QkdKeys qkd_keys(const GhzLabel& result) {
    return QkdKeys{result.bits().popcount() % 2, result.d};
}

/**
 * n slots; in each, Alice and Bob prepare random 2l-qubit SGHZ states (Bell
 * states when l = 1), swap half-sequences, and GHZ-measure: Alice the first
 * halves of both states, Bob the second halves. Slots whose published
 * preparations coincide yield keys; the others are compared against the
 * undisturbed outcome pairing as an eavesdropping check.
 */
inline ProtocolTranscript qkd_session(int n, int l, std::uint64_t seed, const Channel& channel) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "qkd needs n >= 1");
    if (l < 1) throw Error(ErrorCode::InvalidArgument, "qkd needs l >= 1");
    if (4 * l > kMaxDenseQubits) throw Error(ErrorCode::ResourceLimit, "qkd slot register exceeds the dense cap");
    channel.validate();

    SessionStreams streams(seed);
    Rng alice(streams.party_seed(0));
    Rng bob(streams.party_seed(1));

    ProtocolTranscript t;
    t.protocol = "qkd";
    t.seed = seed;
    t.params = {{"n", n}, {"l", l}};
    t.channel = channel;
    t.parties = {{"Alice", streams.party_seed(0), {}}, {"Bob", streams.party_seed(1), {}}};

    const int m = 2 * l;
    const auto& pool = detail::sghz_pool(m);
    const std::vector<int> alice_measures = [&] {
        auto v = detail::range(1, l);
        for (int q : detail::range(m + 1, l)) v.push_back(q);
        return v;
    }();
    const std::vector<int> bob_measures = [&] {
        auto v = detail::range(l + 1, l);
        for (int q : detail::range(m + l + 1, l)) v.push_back(q);
        return v;
    }();

    std::string parity_a, parity_b;
    ordered_json slots = ordered_json::array();
    ordered_json values_a = ordered_json::array();
    ordered_json values_b = ordered_json::array();
    bool keys_agree = true;
    int kept = 0;

    for (int h = 0; h < n; ++h) {
        const GhzLabel a = pool[alice.below(pool.size())];
        const GhzLabel b = pool[bob.below(pool.size())];
        t.prepared.push_back({h, "Alice", a});
        t.prepared.push_back({h, "Bob", b});

        if (channel.decoy.per_state > 0) {
            t.checks.decoy += decoy_check(channel.decoy.per_state, channel, alice, streams.eve, streams.nature);
            t.checks.decoy += decoy_check(channel.decoy.per_state, channel, bob, streams.eve, streams.nature);
        }

        const DenseState clean = tensor({embed(a), embed(b)});
        DenseState reg = clean;
        const auto s_a = detail::range(l + 1, l);
        const auto s_b = detail::range(m + 1, l);
        t.transmissions.push_back({h, "Alice", "Bob", s_a, detail::cross_channel(reg, s_a, channel, streams.eve)});
        t.transmissions.push_back({h, "Bob", "Alice", s_b, detail::cross_channel(reg, s_b, channel, streams.eve)});

        const std::string key = std::to_string(h);
        t.parties[0].holdings[key] = alice_measures;
        t.parties[1].holdings[key] = bob_measures;

        const auto alice_out = detail::sample_ghz(reg, alice_measures, streams.nature);
        const GhzLabel bob_out = detail::sample_full_ghz(alice_out.post_state, streams.nature);
        t.measurements.push_back({h, "Alice", "ghz", alice_measures, format_label(alice_out.outcome)});
        t.measurements.push_back({h, "Bob", "ghz", bob_measures, format_label(bob_out)});

        ordered_json slot = {{"slot", h}};
        if (a == b) {
            ++kept;
            const auto ka = qkd_keys(alice_out.outcome);
            const auto kb = qkd_keys(bob_out);
            slot["use"] = "key";
            slot["alice_parity"] = ka.parity;
            slot["bob_parity"] = kb.parity;
            slot["alice_value"] = ka.value;
            slot["bob_value"] = kb.value;
            parity_a.push_back(static_cast<char>('0' + ka.parity));
            parity_b.push_back(static_cast<char>('0' + kb.parity));
            values_a.push_back(ka.value);
            values_b.push_back(kb.value);
            if (ka.parity != kb.parity || ka.value != kb.value) keys_agree = false;
        } else {
            // Undisturbed, Alice's outcome fixes Bob's: compare against the clean register.
            ++t.checks.slot_checks;
            bool consistent = false;
            for (const auto& o : measure_ghz(clean, alice_measures)) {
                if (o.outcome == alice_out.outcome) consistent = o.residual && *o.residual == bob_out;
            }
            slot["use"] = "check";
            slot["consistent"] = consistent;
            if (!consistent) ++t.checks.slot_failures;
        }
        slots.push_back(slot);
    }

    t.eavesdropping_detected = t.checks.slot_failures > 0 || !t.checks.decoy.passed();
    t.derived = {{"slots", slots},
                 {"kept_slots", kept},
                 {"alice_parity_key", parity_a},
                 {"bob_parity_key", parity_b},
                 {"alice_value_key", values_a},
                 {"bob_value_key", values_b},
                 {"keys_agree", keys_agree}};
    t.success = keys_agree && !t.eavesdropping_detected;
    return t;
}

// ---------------------------------------------------------------------------
// Private comparison

struct QpcOptions {
    std::uint64_t multiplier = 1;  // optional X*M, Y*M pre-transform
};

/**
 * Alice and Bob encode each bit into |0 x_h> + |1 ~x_h> (resp. y_h) and send
 * both particles to TP, who Bell-measures the first particles of the two
 * states, then the second particles. Identical outcome pairs for every bit
 * mean X = Y. Decoy checks run before any data is sent; a failure aborts.
 */
inline ProtocolTranscript qpc_session(std::uint64_t x, std::uint64_t y, int n_bits, std::uint64_t seed,
                                      const Channel& channel, QpcOptions options = {}) {
    if (n_bits < 1 || n_bits > kMaxLabelQubits) throw Error(ErrorCode::InvalidArgument, "n_bits out of range");
    const std::uint64_t limit = std::uint64_t{1} << n_bits;
    if (x >= limit || y >= limit) {
        throw Error(ErrorCode::InvalidArgument, "inputs must be below 2^" + std::to_string(n_bits));
    }
    if (options.multiplier < 1) throw Error(ErrorCode::InvalidArgument, "multiplier must be >= 1");
    channel.validate();

    const int width = n_bits + static_cast<int>(std::bit_width(options.multiplier)) - (options.multiplier == 1 ? 1 : 0);
    if (width > kMaxLabelQubits) throw Error(ErrorCode::InvalidArgument, "amplified inputs too wide");
    const std::uint64_t ex = x * options.multiplier;
    const std::uint64_t ey = y * options.multiplier;

    SessionStreams streams(seed);
    Rng alice(streams.party_seed(0));
    Rng bob(streams.party_seed(1));

    ProtocolTranscript t;
    t.protocol = "qpc";
    t.seed = seed;
    t.params = {{"x", x}, {"y", y}, {"n_bits", n_bits}, {"multiplier", options.multiplier}, {"encoded_bits", width}};
    t.channel = channel;
    t.parties = {{"Alice", streams.party_seed(0), {}}, {"Bob", streams.party_seed(1), {}}, {"TP", streams.party_seed(2), {}}};

    const int decoys = channel.decoy.per_state * width;
    t.checks.decoy += decoy_check(decoys, channel, alice, streams.eve, streams.nature);
    t.checks.decoy += decoy_check(decoys, channel, bob, streams.eve, streams.nature);
    t.eavesdropping_detected = !t.checks.decoy.passed();

    const bool truth = x == y;
    if (t.eavesdropping_detected) {
        t.derived = {{"verdict", "aborted"}, {"mismatch_bits", ordered_json::array()}, {"truth_equal", truth}};
        t.success = false;
        return t;
    }

    ordered_json mismatches = ordered_json::array();
    for (int h = 0; h < width; ++h) {
        const std::uint64_t xh = (ex >> (width - 1 - h)) & 1U;
        const std::uint64_t yh = (ey >> (width - 1 - h)) & 1U;
        const GhzLabel a{2, xh, Sign::Plus};
        const GhzLabel b{2, yh, Sign::Plus};
        t.prepared.push_back({h, "Alice", a});
        t.prepared.push_back({h, "Bob", b});

        DenseState reg = tensor({embed(a), embed(b)});
        const std::vector<int> from_alice{1, 2};
        const std::vector<int> from_bob{3, 4};
        t.transmissions.push_back({h, "Alice", "TP", from_alice, detail::cross_channel(reg, from_alice, channel, streams.eve)});
        t.transmissions.push_back({h, "Bob", "TP", from_bob, detail::cross_channel(reg, from_bob, channel, streams.eve)});
        t.parties[2].holdings[std::to_string(h)] = {1, 2, 3, 4};

        const std::vector<int> firsts{1, 3};
        const auto first = detail::sample_ghz(reg, firsts, streams.nature);
        const GhzLabel second = detail::sample_full_ghz(first.post_state, streams.nature);
        t.measurements.push_back({h, "TP", "ghz", firsts, format_label(first.outcome)});
        t.measurements.push_back({h, "TP", "ghz", {2, 4}, format_label(second)});
        if (first.outcome != second) mismatches.push_back(h);
    }

    const bool equal = mismatches.empty();
    t.derived = {{"verdict", equal ? "equal" : "not-equal"}, {"mismatch_bits", mismatches}, {"truth_equal", truth}};
    t.success = equal == truth;
    return t;
}

// ---------------------------------------------------------------------------
// Secret sharing

/// Secret read from Alice's outcome: bits 2..n as an integer.
inline std::uint64_t qss_secret(const GhzLabel& alice_outcome) { return alice_outcome.d; }

/// Bobs' combined reading, flipped when it starts with 1.
inline std::uint64_t qss_reconstruct(const BitString& bob_bits) {
    return bob_bits.leading() ? bob_bits.negated().value() : bob_bits.value();
}

/**
 * Alice prepares one |phi+> per Bob, sends the first particle of pair h to
 * Bob_h, and GHZ-measures the particles she kept. The Bobs' particles collapse
 * into the same GHZ state; their computational-basis readings give the secret
 * up to a global bit flip.
 */
inline ProtocolTranscript qss_session(int n_parties, std::uint64_t seed, const Channel& channel, int decoy_m) {
    if (n_parties < 2) throw Error(ErrorCode::InvalidArgument, "secret sharing needs at least 2 Bobs");
    if (2 * n_parties > kMaxDenseQubits) throw Error(ErrorCode::ResourceLimit, "too many parties for the dense cap");
    if (decoy_m < 0) throw Error(ErrorCode::InvalidArgument, "decoy count must be non-negative");
    channel.validate();

    SessionStreams streams(seed);
    Rng alice(streams.party_seed(0));

    ProtocolTranscript t;
    t.protocol = "qss";
    t.seed = seed;
    t.params = {{"parties", n_parties}, {"decoy_m", decoy_m}};
    t.channel = channel;
    t.parties.push_back({"Alice", streams.party_seed(0), {}});
    for (int h = 1; h <= n_parties; ++h) {
        t.parties.push_back({"Bob" + std::to_string(h), streams.party_seed(static_cast<std::uint64_t>(h)), {}});
    }

    const GhzLabel phi_plus{2, 0, Sign::Plus};
    std::vector<DenseState> pairs;
    std::vector<int> kept, sent;
    for (int h = 1; h <= n_parties; ++h) {
        pairs.push_back(embed(phi_plus));
        t.prepared.push_back({0, "Alice", phi_plus});
        sent.push_back(2 * h - 1);
        kept.push_back(2 * h);
    }
    DenseState reg = tensor(pairs);
    t.parties[0].holdings["0"] = kept;

    for (int h = 1; h <= n_parties; ++h) {
        const auto& bob = t.parties[static_cast<std::size_t>(h)].name;
        t.checks.decoy += decoy_check(decoy_m, channel, alice, streams.eve, streams.nature);
        const std::vector<int> particle{2 * h - 1};
        t.transmissions.push_back({0, "Alice", bob, particle, detail::cross_channel(reg, particle, channel, streams.eve)});
        t.parties[static_cast<std::size_t>(h)].holdings["0"] = particle;
    }
    t.eavesdropping_detected = !t.checks.decoy.passed();

    const auto alice_out = detail::sample_ghz(reg, kept, streams.nature);
    t.measurements.push_back({0, "Alice", "ghz", kept, format_label(alice_out.outcome)});
    const std::uint64_t secret = qss_secret(alice_out.outcome);

    // post_state holds the Bobs' particles in order
    DenseState bobs = alice_out.post_state;
    std::uint64_t reading = 0;
    for (int h = 1; h <= n_parties; ++h) {
        const bool bit = measure_z(bobs, h, streams.nature.uniform());
        reading = (reading << 1) | static_cast<std::uint64_t>(bit);
        t.measurements.push_back({0, t.parties[static_cast<std::size_t>(h)].name, "z", {2 * h - 1}, bit ? "1" : "0"});
    }
    const BitString bob_bits(reading, n_parties);
    const std::uint64_t reconstructed = qss_reconstruct(bob_bits);

    t.derived = {{"alice_outcome", format_label(alice_out.outcome)},
                 {"secret", secret},
                 {"bob_bits", bob_bits.str()},
                 {"reconstructed", reconstructed},
                 {"recovered", reconstructed == secret}};
    t.success = reconstructed == secret && !t.eavesdropping_detected;
    return t;
}

}  // namespace ghzswap
