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
#include "core/exact_sum.hpp"

#include <cmath>
#include <utility>

namespace omc {

void ExactSum::add(double value) {
  // Cascade of exact two-sums; every partial keeps the rounding error of the
  // addition above it, so no information is lost.
  std::size_t used = 0;
  for (double term : terms_) {
    if (std::fabs(value) < std::fabs(term)) std::swap(value, term);
    const double hi = value + term;
    const double lo = term - (hi - value);
    if (lo != 0.0) terms_[used++] = lo;
    value = hi;
  }
  terms_.resize(used);
  terms_.push_back(value);
}

void ExactSum::merge(const ExactSum& other) {
  for (double term : other.terms_) add(term);
}

double ExactSum::round() const {
  if (terms_.empty()) return 0.0;
  std::size_t n = terms_.size();
  double hi = terms_[--n];
  double lo = 0.0;
  while (n > 0) {
    const double x = hi;
    const double y = terms_[--n];
    hi = x + y;
    const double yr = hi - x;
    lo = y - yr;
    if (lo != 0.0) break;
  }
  // nudge the result so that half-way cases round to even against the tail
  if (n > 0 && ((lo < 0.0 && terms_[n - 1] < 0.0) || (lo > 0.0 && terms_[n - 1] > 0.0))) {
    const double y = lo * 2.0;
    const double x = hi + y;
    if (y == x - hi) hi = x;
  }
  return hi;
}

} // namespace omc
