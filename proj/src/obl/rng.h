// Copyright 2026 The obl-toolkit Authors
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

#ifndef OBL_RNG_H_
#define OBL_RNG_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "obl/util.h"

namespace obl {

// Seed-split scheme: every randomized stage derives its own child seed as
//   child = splitmix64(master ^ fnv1a64(label) [^ index])
// so runs are reproducible from one master seed and stage labels alone, and
// adding a stage never perturbs the streams of existing ones.
inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t ChildSeed(std::uint64_t master, const std::string& label) {
  return SplitMix64(master ^ Fnv1a64(label));
}

inline std::uint64_t ChildSeed(std::uint64_t master, const std::string& label,
                               std::uint64_t index) {
  return SplitMix64(SplitMix64(master ^ Fnv1a64(label)) ^ index);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(SplitMix64(seed)) {}

  // Uniform in [0, 1).
  double Uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen_); }
  double Uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }
  // Uniform integer in [0, n).
  int UniformInt(int n) { return std::uniform_int_distribution<int>(0, n - 1)(gen_); }

  template <typename T>
  const T& Choice(const std::vector<T>& v) {
    return v[UniformInt(static_cast<int>(v.size()))];
  }

  // Samples an index from unnormalized nonnegative weights.
  int SampleIndex(const std::vector<double>& weights);

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

inline int Rng::SampleIndex(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  double r = Uniform() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (r < acc) return static_cast<int>(i);
  }
  return static_cast<int>(weights.size()) - 1;
}

}  // namespace obl

#endif  // OBL_RNG_H_
