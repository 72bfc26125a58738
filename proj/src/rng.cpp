#include "twosample/rng.hpp"

#include <cmath>
#include <stdexcept>

#include "twosample/numeric.hpp"

namespace twosample {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ (a + 0x9E3779B97F4A7C15ULL));
    h = splitmix64(h ^ (b + 0xD1B54A32D192ED03ULL));
    return h;
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : gen_(mix_seed(seed, stream)) {}

std::uint64_t Rng::next_u64() { return gen_(); }

double Rng::uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform_pos() {
    double u;
    do {
        u = uniform();
    } while (u == 0.0);
    return u;
}

std::uint64_t Rng::uniform_int(std::uint64_t bound) {
    // rejection to remove modulo bias
    std::uint64_t threshold = (0ULL - bound) % bound;
    for (;;) {
        std::uint64_t r = next_u64();
        if (r >= threshold) return r % bound;
    }
}

double Rng::normal() { return norm_quantile(uniform_pos()); }

double Rng::exponential() { return -std::log1p(-uniform()); }

double Rng::gamma(double shape) {
    if (shape <= 0.0) throw std::domain_error("gamma: shape must be positive");
    if (shape < 1.0) {
        // boost: G(a) = G(a+1) * U^(1/a)
        double g = gamma(shape + 1.0);
        return g * std::pow(uniform_pos(), 1.0 / shape);
    }
    // Marsaglia-Tsang squeeze
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        double u = uniform_pos();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double Rng::chisq(double df) { return 2.0 * gamma(df / 2.0); }

double Rng::beta(double a, double b) {
    double g1 = gamma(a);
    double g2 = gamma(b);
    return g1 / (g1 + g2);
}

double Rng::positive_stable(double alpha) {
    if (alpha <= 0.0 || alpha >= 1.0)
        throw std::domain_error("positive_stable: alpha must be in (0,1)");
    // Chambers-Mallows-Stuck for the one-sided stable law with Laplace
    // transform exp(-s^alpha)
    double u = uniform_pos() * M_PI;
    double w = exponential();
    double t1 = std::sin(alpha * u) / std::pow(std::sin(u), 1.0 / alpha);
    double t2 = std::pow(std::sin((1.0 - alpha) * u) / w, (1.0 - alpha) / alpha);
    return t1 * t2;
}

double Rng::sibuya(double alpha) {
    if (alpha <= 0.0 || alpha > 1.0) throw std::domain_error("sibuya: alpha must be in (0,1]");
    if (alpha == 1.0) return 1.0;
    // survival G(k) = Gamma(k+1-alpha) / (Gamma(k+1) Gamma(1-alpha)); the
    // variate is the smallest integer k with G(k) < u. The tail is so heavy
    // for small alpha that k must stay a double.
    double u = uniform_pos();
    double lg1ma = std::lgamma(1.0 - alpha);
    double lu = std::log(u);
    auto log_surv = [&](double k) {
        return std::lgamma(k + 1.0 - alpha) - std::lgamma(k + 1.0) - lg1ma;
    };
    if (log_surv(1.0) < lu) return 1.0;
    double lo = 1.0, hi = 2.0;
    while (log_surv(hi) >= lu) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) return hi;
    }
    while (hi - lo > 1.0) {
        double mid = std::floor(0.5 * (lo + hi));
        if (mid <= lo || mid >= hi) break;
        if (log_surv(mid) >= lu)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

std::uint64_t Rng::log_series(double p) {
    if (p <= 0.0 || p >= 1.0) throw std::domain_error("log_series: p must be in (0,1)");
    // Kemp's algorithm LK
    double u = uniform_pos();
    if (u >= p) return 1;
    double q = 1.0 - std::exp(uniform_pos() * std::log1p(-p));
    if (u <= q * q) {
        double k = std::floor(1.0 + std::log(u) / std::log(q));
        if (k < 1.0) k = 1.0;
        return static_cast<std::uint64_t>(k);
    }
    return u > q ? 1 : 2;
}

}  // namespace twosample
