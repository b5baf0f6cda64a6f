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
 * The `ghzswap` command line: swap prediction, oracle verification sweeps and
 * protocol runs. Kept in a header so tests can drive it in-process.
 *
 * Exit codes: 0 ok, 1 verification mismatch, 2 usage or parse error,
 * 3 resource cap, 4 protocol-negative (eavesdropping detected or wrong result).
 */

#include "ghzswap/protocol.hpp"
#include "ghzswap/swap.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace ghzswap {

namespace cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitNegative = 4;

inline constexpr const char* kSeedEnv = "GHZSWAP_SEED";

enum class Format { Table, Json };

struct CliConfig {
    std::string subcommand;
    std::vector<std::string> labels;
    std::vector<int> cut;
    std::uint64_t seed = 1;
    Format format = Format::Table;
    int verbosity = 0;
};

inline std::string fmt_prob(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", p);
    return buf;
}

inline std::string fmt_phase(amp_t z) {
    if (std::abs(z.imag()) < 1e-9) return z.real() < 0 ? "-" : "+";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
    return buf;
}

inline std::vector<GhzLabel> parse_labels(const std::vector<std::string>& text) {
    std::vector<GhzLabel> out;
    for (const auto& t : text) out.push_back(parse_label(t));
    return out;
}

inline int cmd_swap(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    auto states = parse_labels(cfg.labels);
    if (states.size() < 2) throw Error(ErrorCode::InvalidArgument, "swap needs at least two labels");
    const SwapSpec spec = cfg.cut.empty()
                              ? [&] {
                                    std::vector<int> cut;
                                    for (const auto& s : states) cut.push_back(s.m / 2);
                                    return SwapSpec(states, cut);
                                }()
                              : SwapSpec(states, cfg.cut);

    std::optional<SwapPrediction> prediction;
    std::string notice;
    try {
        prediction = predict_multi(spec);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::ClosedFormUnavailable) throw;
        notice = std::string("closed form unavailable (") + e.what() + "); using the dense oracle";
    }

    if (cfg.format == Format::Json) {
        ordered_json j;
        j["spec"] = spec.describe();
        j["closed_form"] = prediction.has_value();
        if (!notice.empty()) j["notice"] = notice;
        j["outcomes"] = ordered_json::array();
        if (prediction) {
            for (const auto& p : prediction->pairs) {
                j["outcomes"].push_back({{"measured", format_label(p.measured)},
                                         {"residual", format_label(p.residual)},
                                         {"coeff_sign", std::string(1, sign_char(p.coeff_sign))},
                                         {"probability", p.probability}});
            }
        } else {
            for (const auto& o : oracle_swap(spec)) {
                j["outcomes"].push_back({{"measured", format_label(o.measured)},
                                         {"residual", o.residual ? ordered_json(format_label(*o.residual)) : ordered_json()},
                                         {"phase", {o.relative_phase.real(), o.relative_phase.imag()}},
                                         {"probability", o.probability}});
            }
        }
        out << j.dump(2) << '\n';
        return kExitOk;
    }

    if (!notice.empty()) err << "notice: " << notice << '\n';
    out << "# " << spec.describe() << (prediction ? "" : "  (oracle)") << '\n';
    out << std::left << std::setw(22) << "measured" << std::setw(22) << "residual" << std::setw(7) << "sign"
        << "probability\n";
    if (prediction) {
        for (const auto& p : prediction->pairs) {
            out << std::setw(22) << format_label(p.measured) << std::setw(22) << format_label(p.residual)
                << std::setw(7) << sign_char(p.coeff_sign) << fmt_prob(p.probability) << '\n';
        }
    } else {
        for (const auto& o : oracle_swap(spec)) {
            out << std::setw(22) << format_label(o.measured) << std::setw(22)
                << (o.residual ? format_label(*o.residual) : std::string("(not GHZ)")) << std::setw(7)
                << fmt_phase(o.relative_phase) << fmt_prob(o.probability) << '\n';
        }
    }
    return kExitOk;
}

struct VerifyScope {
    bool bell_exhaustive = false;
    int sghz = 0;
    std::vector<int> multi;
    int random = 0;
};

inline std::vector<std::vector<GhzLabel>> tuples_of(const std::vector<GhzLabel>& pool, int n) {
    std::vector<std::vector<GhzLabel>> out{{}};
    for (int k = 0; k < n; ++k) {
        std::vector<std::vector<GhzLabel>> next;
        for (const auto& prefix : out) {
            for (const auto& l : pool) {
                auto t = prefix;
                t.push_back(l);
                next.push_back(std::move(t));
            }
        }
        out = std::move(next);
    }
    return out;
}

inline std::vector<std::vector<GhzLabel>> verify_cases(const VerifyScope& scope, std::uint64_t seed) {
    if (scope.bell_exhaustive) return tuples_of(enumerate_basis(2), 2);
    if (scope.sghz > 0) {
        if (scope.sghz < 2 || scope.sghz % 2) throw Error(ErrorCode::InvalidArgument, "--sghz needs an even size >= 2");
        if (2 * scope.sghz > kMaxDenseQubits) throw Error(ErrorCode::ResourceLimit, "--sghz pairs exceed the oracle cap");
        std::vector<GhzLabel> pool;
        for (int m = 2; m <= scope.sghz; m += 2) {
            for (const auto& l : enumerate_sghz(m)) pool.push_back(l);
        }
        return tuples_of(pool, 2);
    }
    if (!scope.multi.empty()) {
        const int n = scope.multi[0], m = scope.multi[1];
        if (n < 2 || m < 2 || m % 2) throw Error(ErrorCode::InvalidArgument, "--multi needs n >= 2 and an even size m");
        if (n * m > kMaxDenseQubits) throw Error(ErrorCode::ResourceLimit, "--multi register exceeds the oracle cap");
        return tuples_of(enumerate_sghz(m), n);
    }
    if (scope.random < 0) throw Error(ErrorCode::InvalidArgument, "--random needs k >= 0");
    Rng rng(derive_seed(seed, 7));
    std::vector<std::vector<GhzLabel>> out;
    const int sizes[] = {2, 4, 6};
    while (static_cast<int>(out.size()) < scope.random) {
        const int n = 2 + static_cast<int>(rng.below(3));
        std::vector<GhzLabel> states;
        int total = 0;
        for (int h = 0; h < n; ++h) {
            const int m = sizes[rng.below(3)];
            const auto pool = enumerate_sghz(m);
            states.push_back(pool[rng.below(pool.size())]);
            total += m;
        }
        if (total <= 16) out.push_back(std::move(states));
    }
    return out;
}

inline int cmd_verify(const CliConfig& cfg, const VerifyScope& scope, std::ostream& out) {
    const auto cases = verify_cases(scope, cfg.seed);
    ordered_json results = ordered_json::array();
    std::ostringstream table;
    int passed = 0;
    for (const auto& states : cases) {
        auto report = verify_against_oracle(SwapSpec::half_cut(states));
        const bool predicted = static_cast<bool>(theorem2_same(states));
        const bool observed = oracle_all_same(report.oracle);
        if (predicted != observed) {
            report.mismatches.push_back(std::string("same-pairing predicate expected ") + (predicted ? "true" : "false") +
                                        ", got " + (observed ? "true" : "false"));
        }
        if (report.ok()) ++passed;
        table << (report.ok() ? "PASS " : "FAIL ") << report.spec << "  same=" << (observed ? "yes" : "no") << '\n';
        for (const auto& m : report.mismatches) table << "    " << m << '\n';
        results.push_back({{"spec", report.spec},
                           {"closed_form", report.closed_form},
                           {"same", observed},
                           {"ok", report.ok()},
                           {"mismatches", report.mismatches}});
    }
    const int total = static_cast<int>(cases.size());
    if (cfg.format == Format::Json) {
        ordered_json j{{"total", total}, {"passed", passed}, {"results", results}};
        out << j.dump(2) << '\n';
    } else {
        out << table.str() << passed << '/' << total << " pass\n";
    }
    return passed == total ? kExitOk : kExitMismatch;
}

struct ProtocolArgs {
    std::string name;
    int n = 8;
    int l = 1;
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    int bits = 8;
    std::uint64_t amplify = 1;
    int parties = 4;
    int decoys = 1;
    std::string decoy_basis = "random";
    double eve = 0.0;
    std::string out_path;
};

inline int cmd_protocol(const CliConfig& cfg, const ProtocolArgs& a, std::ostream& out, std::ostream& err) {
    Channel channel;
    if (a.eve > 0.0) channel.eavesdropper = InterceptMeasure{a.eve};
    channel.decoy = {a.decoys, parse_decoy_basis(a.decoy_basis)};
    channel.validate();

    ProtocolTranscript t;
    if (a.name == "qkd") {
        t = qkd_session(a.n, a.l, cfg.seed, channel);
    } else if (a.name == "qpc") {
        t = qpc_session(a.x, a.y, a.bits, cfg.seed, channel, QpcOptions{a.amplify});
    } else {
        t = qss_session(a.parties, cfg.seed, channel, a.decoys);
    }

    const std::string text = to_json(t).dump(2) + "\n";
    if (a.out_path.empty()) {
        out << text;
    } else {
        std::ofstream f(a.out_path, std::ios::binary);
        if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + a.out_path);
        f << text;
        out << a.name << ": success=" << (t.success ? "true" : "false")
            << " eavesdropping_detected=" << (t.eavesdropping_detected ? "true" : "false") << '\n';
    }
    if (cfg.verbosity > 0) err << "derived: " << t.derived.dump() << '\n';
    return t.success ? kExitOk : kExitNegative;
}

inline int exit_code_for(ErrorCode code) {
    return code == ErrorCode::ResourceLimit ? kExitResource : kExitUsage;
}

}  // namespace cli

/// Entry point; `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace cli;
    CLI::App app{"GHZ entanglement swapping: closed-form prediction, oracle checks, protocol runs", "ghzswap"};
    app.require_subcommand(1);

    CliConfig cfg;
    if (const char* env = std::getenv(kSeedEnv)) {
        try {
            std::size_t used = 0;
            cfg.seed = std::stoull(env, &used);
            if (used != std::string(env).size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            err << "error: " << kSeedEnv << " is not an unsigned integer\n";
            return kExitUsage;
        }
    }
    std::string format = "table";
    bool json = false;
    app.add_option("--seed", cfg.seed, "RNG seed (default from " + std::string(kSeedEnv) + ", else 1)");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "json"}));
    app.add_flag("--json", json, "Shorthand for --format json");
    app.add_flag("-v,--verbose", cfg.verbosity, "More diagnostics on stderr");

    auto* swap = app.add_subcommand("swap", "Predict the outcome pairs of a swap");
    swap->add_option("labels", cfg.labels, "State labels, m:d:s or GHZ(bits,s)")->required();
    swap->add_option("--cut", cfg.cut, "Leading particles measured per state")->delimiter(',');

    VerifyScope scope;
    auto* verify = app.add_subcommand("verify", "Check the closed form against the dense oracle");
    auto* o_bell = verify->add_flag("--bell-exhaustive", scope.bell_exhaustive, "All 16 ordered Bell pairs");
    auto* o_sghz = verify->add_option("--sghz", scope.sghz, "All ordered SGHZ pairs up to this size");
    auto* o_multi = verify->add_option("--multi", scope.multi, "All n-tuples of m-qubit SGHZ states")->expected(2);
    auto* o_rand = verify->add_option("--random", scope.random, "k random multi-state specs");
    for (auto* a : {o_bell, o_sghz, o_multi, o_rand}) {
        for (auto* b : {o_bell, o_sghz, o_multi, o_rand}) {
            if (a != b) a->excludes(b);
        }
    }

    ProtocolArgs pa;
    auto* protocol = app.add_subcommand("protocol", "Run a seeded protocol session, print its JSON transcript");
    protocol->add_option("name", pa.name, "qkd, qpc or qss")->required()->check(CLI::IsMember({"qkd", "qpc", "qss"}));
    protocol->add_option("--n", pa.n, "QKD slots");
    protocol->add_option("--l", pa.l, "QKD half size (1 = Bell states)");
    protocol->add_option("--x", pa.x, "QPC Alice's input");
    protocol->add_option("--y", pa.y, "QPC Bob's input");
    protocol->add_option("--bits", pa.bits, "QPC input width");
    protocol->add_option("--amplify", pa.amplify, "QPC multiplier applied to both inputs");
    protocol->add_option("--parties", pa.parties, "QSS number of Bobs");
    protocol->add_option("--decoys", pa.decoys, "Decoy checks per data state");
    protocol->add_option("--decoy-basis", pa.decoy_basis)->check(CLI::IsMember({"z", "x", "random"}));
    protocol->add_option("--eve", pa.eve, "Intercept probability per particle")->check(CLI::Range(0.0, 1.0));
    protocol->add_option("--out", pa.out_path, "Write the transcript here instead of stdout");
    for (auto* sub : {swap, verify, protocol}) {
        sub->add_option("--seed", cfg.seed, "RNG seed");
        sub->add_flag("--json", json, "Shorthand for --format json");
        sub->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));
    }

    std::vector<std::string> storage{"ghzswap"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    cfg.format = json || format == "json" ? Format::Json : Format::Table;

    try {
        if (swap->parsed()) {
            cfg.subcommand = "swap";
            return cmd_swap(cfg, out, err);
        }
        if (verify->parsed()) {
            cfg.subcommand = "verify";
            if (o_bell->count() + o_sghz->count() + o_multi->count() + o_rand->count() == 0) {
                err << "error: verify needs one of --bell-exhaustive, --sghz, --multi, --random\n";
                return kExitUsage;
            }
            return cmd_verify(cfg, scope, out);
        }
        cfg.subcommand = "protocol";
        return cmd_protocol(cfg, pa, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    }
}

}  // namespace ghzswap
