// Copyright 2026 The bellkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Sweeps the state parameter of cos(a)|0..0> + sin(a)|1..1> and prints the
// closed-form violation next to the explicit matrix expectation, plus the
// threshold visibilities of both inequality families.

#include <cstdio>
#include <numbers>

#include "bellkit/bellkit.hpp"

int main() {
    constexpr int kSteps = 9;
    std::printf("%2s  %10s  %12s  %12s\n", "n", "alpha", "closed", "matrix");
    for (int n = 3; n <= 5; ++n) {
        const bellkit::TermMap terms = bellkit::extended_mabk_terms(n);
        for (int i = 0; i < kSteps; ++i) {
            const double alpha =
                std::numbers::pi / 2.0 * i / (kSteps - 1);
            const auto settings = bellkit::canonical_gghz_settings(n, alpha);
            const double closed = bellkit::gghz_violation_closed(n, alpha);
            const double matrix = bellkit::quantum_value(
                bellkit::generalized_ghz(n, alpha), terms, settings);
            std::printf("%2d  %10.6f  %12.8f  %12.8f\n", n, alpha, closed,
                        matrix);
        }
    }
    std::printf("\n%2s  %12s  %12s\n", "n", "v_thr", "v_thr_mabk");
    for (int n = 3; n <= 10; ++n) {
        std::printf("%2d  %12.8f  %12.8f\n", n,
                    bellkit::threshold_visibility(n),
                    bellkit::mabk_threshold_visibility(n));
    }
    return 0;
}
