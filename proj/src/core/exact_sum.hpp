/*
 * Copyright 2026 the optionmc authors
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
#pragma once

#include <vector>

namespace omc {

/// Exact floating-point accumulator (Shewchuk partials, as in fsum).
///
/// The running total is kept as a list of non-overlapping doubles whose sum
/// is exact, so accumulation is associative: any grouping of the same values
/// rounds to the same double. This is what makes the engine's estimates
/// bit-identical no matter how paths are partitioned across workers.
class ExactSum {
public:
  void add(double value);
  void merge(const ExactSum& other);

  /// Correctly rounded total.
  double round() const;

  bool empty() const noexcept { return terms_.empty(); }

private:
  std::vector<double> terms_; // non-overlapping, increasing magnitude
};

} // namespace omc
