// Copyright 2026 The cliffxeb authors
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

#ifndef CLIFFXEB_BITS_HPP
#define CLIFFXEB_BITS_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace cliffxeb {

constexpr size_t words_for_bits(size_t bits) {
    return (bits + 63) >> 6;
}

inline bool get_bit(const std::vector<uint64_t> &w, size_t i) {
    return (w[i >> 6] >> (i & 63)) & 1;
}

inline void set_bit(std::vector<uint64_t> &w, size_t i, bool v) {
    uint64_t m = uint64_t{1} << (i & 63);
    if (v) {
        w[i >> 6] |= m;
    } else {
        w[i >> 6] &= ~m;
    }
}

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Keyed mix used everywhere a child seed is derived from (master, a, b, c).
// Every worker-visible stream gets its seed through this, so results do not
// depend on scheduling order.
inline uint64_t derive_seed(uint64_t master, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
    uint64_t h = splitmix64(master ^ 0x6a09e667f3bcc909ULL);
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ b);
    h = splitmix64(h ^ c);
    return h;
}

// Deterministic draw algorithms on top of std::mt19937_64. The <random>
// distribution adapters are implementation-defined, which would break the
// byte-identical-records contract across standard libraries; these are not.
class Rng {
  public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t raw() {
        return gen_();
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() {
        return (double)(gen_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound); multiply-shift (bias 2^-64 per draw).
    uint64_t below(uint64_t bound) {
        return (uint64_t)(((unsigned __int128)gen_() * bound) >> 64);
    }

    bool coin() {
        return gen_() >> 63;
    }

    bool bernoulli(double p) {
        return uniform() < p;
    }

  private:
    std::mt19937_64 gen_;
};

// FNV-1a, used for manifest hashing.
inline uint64_t fnv1a64(const void *data, size_t len, uint64_t h = 0xcbf29ce484222325ULL) {
    const unsigned char *p = (const unsigned char *)data;
    for (size_t i = 0; i < len; i++) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace cliffxeb

#endif
