#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twosample/common.hpp"
#include "twosample/rng.hpp"

namespace twosample {

enum class CopulaFamily { frank, clayton, gumbel, joe };

// Frailty construction: latent V per observation, U_k = psi(E_k / V) with
// E_k independent unit exponentials and psi the family generator inverse.
// The independence limits (frank/clayton theta = 0, gumbel/joe theta = 1)
// are accepted and produce independent uniforms. Frank with negative theta
// is available for dim = 2 only, via conditional inversion.
Sample archimedean_sample(CopulaFamily family, double theta, std::size_t dim, std::size_t size,
                          Rng& rng);

// Equicorrelated Gaussian copula with pairwise correlation rho in [0, 1).
Sample gaussian_copula_sample(double rho, std::size_t dim, std::size_t size, Rng& rng);

struct MarginalSpec {
    enum Kind { identity, exponential, trunc_exponential, linear, normal_tail, beta };
    Kind kind = identity;
    double a = 1.0;  // rate / slope / sigma / first beta shape
    double b = 0.0;  // truncation endpoint / second beta shape
};

double marginal_quantile(const MarginalSpec& spec, double u);
double marginal_cdf(const MarginalSpec& spec, double t);

// Coordinatewise quantile transform of copula uniforms; coordinates must lie
// in [0, 1].
void apply_marginals(Sample& s, const MarginalSpec& spec);

enum class WhichSample { x, y };

enum class XMarginal { uniform01, std_normal, student_t5, other };

struct CaseStudy {
    std::string name;
    std::size_t dim = 2;
    double default_theta = 0.0;
    double null_theta = 0.0;  // NaN when no parameter value makes the laws equal
    bool marginals_equal = false;
    XMarginal x_marginal = XMarginal::other;
};

const std::vector<CaseStudy>& case_catalog();
const CaseStudy& find_case(const std::string& name);

// Draws from the case's x or y distribution; x ignores theta (the fixed
// reference), y uses it as the alternative strength.
Sample sample_case(const CaseStudy& cs, WhichSample which, double theta, std::size_t size,
                   Rng& rng);
Sample sample_case(const std::string& name, WhichSample which, double theta, std::size_t size,
                   Rng& rng);

// The non-copula alternatives exposed under their own operation name.
Sample structured_alternatives(const std::string& name, double theta, std::size_t size, Rng& rng);

// Empirical Kendall rank correlation between two coordinates.
double kendall_tau(const Sample& s, std::size_t c1, std::size_t c2);

}  // namespace twosample
