#pragma once

#include <cstdint>
#include <random>

namespace sns {

/// Source of random deviates consumed by a chain. One stream per chain; not
/// thread-safe. Virtual so tests can script exact deviates.
class RandomStream {
 public:
  virtual ~RandomStream() = default;

  virtual double normal() = 0;
  /// Uniform on [0, 1).
  virtual double uniform() = 0;
  virtual std::int64_t poisson(double mean) = 0;
};

/// Default stream backed by a 64-bit Mersenne twister.
class Rng final : public RandomStream {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() override { return normal_(engine_); }
  double uniform() override { return uniform_(engine_); }
  std::int64_t poisson(double mean) override {
    std::poisson_distribution<std::int64_t> d(mean);
    return d(engine_);
  }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform_(engine_);
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace sns
