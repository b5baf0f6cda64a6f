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

// Swaps each ordered pair of Bell states, then checks one three-state case
// against the dense oracle.

#include "ghzswap/swap.hpp"

#include <cstdio>

using namespace ghzswap;

int main() {
    for (const auto& a : enumerate_basis(2)) {
        for (const auto& b : enumerate_basis(2)) {
            const auto pred = predict_two_bell(a, b);
            std::printf("%s x %s ->", format_label(a).c_str(), format_label(b).c_str());
            for (const auto& p : pred.pairs) {
                std::printf("  %c[%s|%s]", sign_char(p.coeff_sign), format_label(p.measured).c_str(),
                            format_label(p.residual).c_str());
            }
            std::printf("%s\n", pred.all_same() ? "  (same)" : "");
        }
    }

    const auto spec = SwapSpec::half_cut({parse_label("GHZ(0101,-)"), parse_label("GHZ(0101,-)"), parse_label("2:1:+")});
    const auto report = verify_against_oracle(spec);
    std::printf("\n%s: %zu outcomes, oracle %s, theorem says %s\n", report.spec.c_str(), report.oracle.size(),
                report.ok() ? "agrees" : "disagrees", theorem2_same(spec.states()) ? "same" : "different");
    return report.ok() ? 0 : 1;
}
