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
#include "core/rng.hpp"

#include <cmath>

namespace omc::sim {

namespace {

// Philox-4x32 round constants (Salmon et al., SC'11).
constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

inline void philox_round(std::uint32_t ctr[4], const std::uint32_t key[2]) noexcept {
  std::uint32_t hi0, lo0, hi1, lo1;
  mul_hi_lo(kPhiloxM0, ctr[0], hi0, lo0);
  mul_hi_lo(kPhiloxM1, ctr[2], hi1, lo1);
  const std::uint32_t out0 = hi1 ^ ctr[1] ^ key[0];
  const std::uint32_t out1 = lo1;
  const std::uint32_t out2 = hi0 ^ ctr[3] ^ key[1];
  const std::uint32_t out3 = lo0;
  ctr[0] = out0;
  ctr[1] = out1;
  ctr[2] = out2;
  ctr[3] = out3;
}

} // namespace

std::uint64_t random_bits(const RngKey& key) noexcept {
  std::uint32_t ctr[4] = {
      key.step,
      static_cast<std::uint32_t>(key.dim),
      static_cast<std::uint32_t>(key.path_id),
      static_cast<std::uint32_t>(key.path_id >> 32),
  };
  std::uint32_t k[2] = {
      static_cast<std::uint32_t>(key.global_seed),
      static_cast<std::uint32_t>(key.global_seed >> 32),
  };
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      k[0] += kPhiloxW0;
      k[1] += kPhiloxW1;
    }
    philox_round(ctr, k);
  }
  return (static_cast<std::uint64_t>(ctr[0]) << 32) | ctr[1];
}

double uniform(const RngKey& key) noexcept {
  // Top 53 bits scaled onto the unit grid; exact in double.
  return static_cast<double>(random_bits(key) >> 11) * 0x1.0p-53;
}

double gaussian(const RngKey& key) noexcept {
  double u = uniform(key);
  if (u == 0.0) u = 0x1.0p-53; // u = 0 would map to -inf; clamp to the smallest grid point
  return inverse_normal_cdf(u);
}

double inverse_normal_cdf(double p) noexcept {
  // PPND16 (Wichura, Applied Statistics 37, 1988, algorithm AS 241).
  const double q = p - 0.5;
  if (q > -0.425 && q < 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) * r +
                4.5921953931549871457e4) * r +
               1.3731693765509461125e4) * r +
              1.9715909503065514427e3) * r +
             1.3314166789178437745e2) * r +
            3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) * r +
                2.1213794301586595867e4) * r +
               5.3941960214247511077e3) * r +
              6.8718700749205790830e2) * r +
             4.2313330701600911252e1) * r +
            1.0);
  }

  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    x = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r +
             1.27045825245236838258e0) * r +
            3.64784832476320460504e0) * r +
           5.76949722146069140550e0) * r +
          4.63033784615654529590e0) * r +
         1.42343711074968357734e0) /
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r +
             1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r +
           1.67638483018380384940e0) * r +
          2.05319162663775882187e0) * r +
         1.0);
  } else {
    r -= 5.0;
    x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r +
             2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r +
           1.78482653991729133580e0) * r +
          5.46378491116411436990e0) * r +
         6.65790464350110377720e0) /
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r +
             7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r +
           1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r +
         1.0);
  }
  return (q < 0.0) ? -x : x;
}

} // namespace omc::sim
