#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace rrv {

// Neumaier's variant of Kahan summation; also correct when an addend is
// larger in magnitude than the running sum.
class CompensatedSum {
 public:
  void add(double value) noexcept {
    const double t = sum_ + value;
    if (std::fabs(sum_) >= std::fabs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double value) noexcept {
    add(value);
    return *this;
  }

  CompensatedSum& operator+=(const CompensatedSum& other) noexcept {
    add(other.sum_);
    add(other.compensation_);
    return *this;
  }

  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// Product of `factors` divided by the product of `divisors`, evaluated in a
// fixed order (ascending) so that the same multiset of inputs always yields
// the same double. Every cluster RR in the library goes through here, which
// makes threshold ties between an observed cluster and an enumerated
// combination exact.
inline double canonical_ratio(std::span<double> factors,
                              std::span<double> divisors) noexcept {
  std::sort(factors.begin(), factors.end());
  std::sort(divisors.begin(), divisors.end());
  double product = 1.0;
  for (double f : factors) product *= f;
  double denominator = 1.0;
  for (double d : divisors) denominator *= d;
  return product / denominator;
}

inline double canonical_ratio(std::vector<double> factors,
                              std::vector<double> divisors) noexcept {
  return canonical_ratio(std::span<double>(factors), std::span<double>(divisors));
}

// splitmix64 finaliser, used to derive independent per-block seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
inline double unit_interval(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// 64-bit FNV-1a; stable across platforms, used for content hashes in reports.
inline std::uint64_t fnv1a(std::span<const char> bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace rrv

namespace rrv {

// splitmix64 as a UniformRandomBitGenerator. Cheap to seed, so every
// simulated tomb can own a stream derived from (seed, tomb index).
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}
  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }
  result_type operator()() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

}  // namespace rrv
