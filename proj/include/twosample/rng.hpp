#pragma once

#include <cstdint>
#include <random>

namespace twosample {

// Deterministic stream generator: identical (seed, stream) pairs always yield
// the identical sequence, on any platform and regardless of how many other
// streams exist. All variate samplers are implemented here rather than with
// std:: distributions, whose output is not specified portably.
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();
    double uniform();      // [0, 1)
    double uniform_pos();  // (0, 1)
    std::uint64_t uniform_int(std::uint64_t bound);  // [0, bound)

    double normal();
    double exponential();                  // rate 1
    double gamma(double shape);            // scale 1
    double chisq(double df);
    double beta(double a, double b);
    double positive_stable(double alpha);  // index in (0, 1)
    double sibuya(double alpha);           // alpha in (0, 1]; integer-valued, heavy tail
    std::uint64_t log_series(double p);    // p in (0, 1)

  private:
    std::mt19937_64 gen_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Stable 64-bit mix of (seed, a, b) used to derive per-task substream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace twosample
