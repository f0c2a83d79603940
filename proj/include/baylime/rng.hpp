/*
 * Copyright 2026 The BayLIME Toolkit Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef BAYLIME_RNG_HPP_
#define BAYLIME_RNG_HPP_

#include <cstdint>
#include <random>
#include <span>

namespace baylime {

// Seedable generator with portable output. The engine is mt19937_64, whose
// sequence is fixed by the C++ standard; every transform to a distribution
// is written out here instead of using <random> distributions, whose output
// is implementation-defined.
//
// Streams: for_stream(seed, s) seeds the engine with
// splitmix64(seed + 0x9E3779B97F4A7C15 * (s + 1)). Perturbation uses the
// feature index as the stream, so adding a feature leaves the draws of the
// other columns unchanged.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  static Rng for_stream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next() { return engine_(); }
  // [0, 1) with 53 bits.
  double uniform();
  // (0, 1].
  double uniform_open_low();
  // Box-Muller, cosine branch; one engine pair per draw.
  double normal();
  bool coin() { return (next() >> 63) != 0; }
  // Index drawn by inverse CDF over probs (which must sum to ~1).
  std::size_t categorical(std::span<const double> probs);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace baylime

#endif  // BAYLIME_RNG_HPP_
