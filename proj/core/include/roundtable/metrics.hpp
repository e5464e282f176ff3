/*
 *   Copyright 2026 The Roundtable Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ROUNDTABLE_METRICS_HPP_
#define ROUNDTABLE_METRICS_HPP_

#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>

namespace roundtable {

/// Mean absolute error over (truth, predicted) pairs. Throws when empty.
inline double mae(std::span<const std::pair<double, double>> pairs) {
    if (pairs.empty()) throw std::invalid_argument("mae: empty pair collection");
    double sum = 0.0;
    for (const auto& [truth, predicted] : pairs) sum += std::fabs(truth - predicted);
    return sum / double(pairs.size());
}

/// Root mean squared error over (truth, predicted) pairs. Throws when
/// empty. Always >= mae on the same pairs.
inline double rmse(std::span<const std::pair<double, double>> pairs) {
    if (pairs.empty()) throw std::invalid_argument("rmse: empty pair collection");
    double sum = 0.0;
    for (const auto& [truth, predicted] : pairs) {
        const double err = truth - predicted;
        sum += err * err;
    }
    return std::sqrt(sum / double(pairs.size()));
}

}  // namespace roundtable

#endif  // ROUNDTABLE_METRICS_HPP_
