#include "twosample/casestudies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "twosample/numeric.hpp"

namespace twosample {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void draw_iid_uniform(std::size_t dim, Rng& rng, double* out) {
    for (std::size_t k = 0; k < dim; ++k) out[k] = rng.uniform();
}

void draw_frank_frailty(double theta, std::size_t dim, Rng& rng, double* out) {
    double p = -std::expm1(-theta);  // 1 - e^-theta
    double v = static_cast<double>(rng.log_series(p));
    for (std::size_t k = 0; k < dim; ++k) {
        double s = rng.exponential() / v;
        out[k] = -std::log1p(-p * std::exp(-s)) / theta;
    }
}

void draw_frank_negative_2d(double theta, Rng& rng, double* out) {
    // conditional inversion supports theta < 0, but only pairwise
    double u = rng.uniform_pos();
    double t = rng.uniform_pos();
    double em1 = std::expm1(-theta);
    double denom = t + (1.0 - t) * std::exp(-theta * u);
    out[0] = u;
    out[1] = -std::log1p(t * em1 / denom) / theta;
}

void draw_clayton(double theta, std::size_t dim, Rng& rng, double* out) {
    double v = rng.gamma(1.0 / theta);
    for (std::size_t k = 0; k < dim; ++k) {
        double s = rng.exponential() / v;
        out[k] = std::pow(1.0 + s, -1.0 / theta);
    }
}

void draw_gumbel(double theta, std::size_t dim, Rng& rng, double* out) {
    double v = rng.positive_stable(1.0 / theta);
    for (std::size_t k = 0; k < dim; ++k) {
        double s = rng.exponential() / v;
        out[k] = std::exp(-std::pow(s, 1.0 / theta));
    }
}

void draw_joe(double theta, std::size_t dim, Rng& rng, double* out) {
    double v = rng.sibuya(1.0 / theta);
    for (std::size_t k = 0; k < dim; ++k) {
        double s = rng.exponential() / v;
        out[k] = 1.0 - std::pow(-std::expm1(-s), 1.0 / theta);
    }
}

void draw_archimedean(CopulaFamily family, double theta, std::size_t dim, Rng& rng, double* out) {
    switch (family) {
        case CopulaFamily::frank:
            if (theta == 0.0)
                draw_iid_uniform(dim, rng, out);
            else if (theta > 0.0)
                draw_frank_frailty(theta, dim, rng, out);
            else
                draw_frank_negative_2d(theta, rng, out);
            break;
        case CopulaFamily::clayton:
            if (theta == 0.0)
                draw_iid_uniform(dim, rng, out);
            else
                draw_clayton(theta, dim, rng, out);
            break;
        case CopulaFamily::gumbel:
            if (theta == 1.0)
                draw_iid_uniform(dim, rng, out);
            else
                draw_gumbel(theta, dim, rng, out);
            break;
        case CopulaFamily::joe:
            draw_joe(theta, dim, rng, out);
            break;
    }
}

void check_archimedean_params(CopulaFamily family, double theta, std::size_t dim) {
    switch (family) {
        case CopulaFamily::frank:
            if (theta < 0.0 && dim != 2)
                throw input_error("frank copula with negative theta is only available in 2-D");
            break;
        case CopulaFamily::clayton:
            if (theta < 0.0) throw input_error("clayton copula requires theta >= 0");
            break;
        case CopulaFamily::gumbel:
            if (theta < 1.0) throw input_error("gumbel copula requires theta >= 1");
            break;
        case CopulaFamily::joe:
            if (theta < 1.0) throw input_error("joe copula requires theta >= 1");
            break;
    }
}

// equicorrelated standard normal vector; dim = 2 allows any rho in (-1, 1)
void draw_equicorr_normal(double rho, std::size_t dim, Rng& rng, double* out) {
    if (dim == 2) {
        double z1 = rng.normal(), z2 = rng.normal();
        out[0] = z1;
        out[1] = rho * z1 + std::sqrt(1.0 - rho * rho) * z2;
        return;
    }
    if (rho == 0.0) {
        for (std::size_t k = 0; k < dim; ++k) out[k] = rng.normal();
        return;
    }
    double shared = rng.normal();
    double w0 = std::sqrt(rho), w1 = std::sqrt(1.0 - rho);
    for (std::size_t k = 0; k < dim; ++k) out[k] = w0 * shared + w1 * rng.normal();
}

void check_equicorr(double rho, std::size_t dim) {
    if (dim == 2) {
        if (rho <= -1.0 || rho >= 1.0) throw input_error("correlation must lie in (-1, 1)");
    } else if (rho < 0.0 || rho >= 1.0) {
        throw input_error("equicorrelation must lie in [0, 1) beyond two dimensions");
    }
}

void draw_equicorr_t5(double rho, std::size_t dim, Rng& rng, double* out) {
    draw_equicorr_normal(rho, dim, rng, out);
    double scale = std::sqrt(5.0 / rng.chisq(5.0));
    for (std::size_t k = 0; k < dim; ++k) out[k] *= scale;
}

enum class CaseId {
    normal_d,
    t_d,
    uniform_mixture,
    frank_d,
    clayton_d,
    gumbel_d,
    joe_d,
    mix_clayton_gumbel,
    mix_uniform_frank,
    mix_normal_uniform,
    mix_frank_clayton,
    mix_frank_joe,
    normal_shift,
    normal_stretch,
    uniform_rotate,
    uniform_beta,
    trunc_exponential,
    copula_exponential,
    copula_linear,
    copula_normal,
    indep_exponential,
};

struct CaseDef {
    CaseStudy info;
    CaseId id;
    CopulaFamily fixed_family = CopulaFamily::frank;  // copula shared by x and y
    double fixed_theta = 0.0;                         // its dependence parameter
    double mix_second_theta = 0.0;                    // second component of a mixture
    CopulaFamily mix_second_family = CopulaFamily::frank;
};

// fixed copula parameters for the marginal-change cases
constexpr double kFrankFixed = 5.0;
constexpr double kClaytonFixed = 2.0;

const std::vector<CaseDef>& defs() {
    auto mk = [](const char* name, std::size_t dim, double def_theta, double null_theta,
                 bool equal, XMarginal xm, CaseId id) {
        CaseDef cd;
        cd.info = CaseStudy{name, dim, def_theta, null_theta, equal, xm};
        cd.id = id;
        return cd;
    };
    static const std::vector<CaseDef> table = [&] {
        std::vector<CaseDef> t;
        // equal-marginal cases, 2-D
        t.push_back(mk("NormalD2", 2, 0.65, 0.0, true, XMarginal::std_normal, CaseId::normal_d));
        t.push_back(mk("tD2", 2, 0.7, 0.0, true, XMarginal::student_t5, CaseId::t_d));
        t.push_back(mk("UniformMixtureD2", 2, 0.45, 0.0, true, XMarginal::uniform01,
                       CaseId::uniform_mixture));
        t.push_back(mk("FrankD2", 2, 5.0, 0.0, true, XMarginal::uniform01, CaseId::frank_d));
        t.push_back(mk("ClaytonD2", 2, 1.4, 0.0, true, XMarginal::uniform01, CaseId::clayton_d));
        t.push_back(mk("GumbelD2", 2, 1.9, 1.0, true, XMarginal::uniform01, CaseId::gumbel_d));
        {
            CaseDef cd = mk("ClaytonGumbelD2", 2, 1.0, 0.5, true, XMarginal::uniform01,
                            CaseId::mix_clayton_gumbel);
            cd.fixed_family = CopulaFamily::clayton;
            cd.fixed_theta = 12.0;
            cd.mix_second_family = CopulaFamily::gumbel;
            cd.mix_second_theta = 1.05;
            t.push_back(cd);
        }
        {
            CaseDef cd = mk("UniformFrankD2", 2, 1.0, 0.5, true, XMarginal::uniform01,
                            CaseId::mix_uniform_frank);
            cd.fixed_family = CopulaFamily::frank;
            cd.fixed_theta = 20.0;
            t.push_back(cd);
        }
        {
            CaseDef cd = mk("NormalUniformD2", 2, 1.0, 0.5, true, XMarginal::uniform01,
                            CaseId::mix_normal_uniform);
            cd.fixed_theta = 0.95;  // gaussian copula correlation
            t.push_back(cd);
        }
        t.push_back(mk("JoeD2", 2, 2.2, 1.0, true, XMarginal::uniform01, CaseId::joe_d));
        // unequal-marginal cases, 2-D
        t.push_back(mk("NormalShiftM", 2, 0.62, 0.0, false, XMarginal::std_normal,
                       CaseId::normal_shift));
        t.push_back(mk("NormalStretchM", 2, 2.6, kNaN, false, XMarginal::std_normal,
                       CaseId::normal_stretch));
        t.push_back(mk("UniformRotateM", 2, 0.18, 0.0, false, XMarginal::uniform01,
                       CaseId::uniform_rotate));
        t.push_back(
            mk("UniformBetaM", 2, 2.0, 1.0, false, XMarginal::uniform01, CaseId::uniform_beta));
        t.push_back(mk("TruncExponentialM", 2, 1.7, 1.0, false, XMarginal::other,
                       CaseId::trunc_exponential));
        {
            CaseDef cd = mk("FrankExponentialM", 2, 1.55, 1.0, false, XMarginal::other,
                            CaseId::copula_exponential);
            cd.fixed_family = CopulaFamily::frank;
            cd.fixed_theta = kFrankFixed;
            t.push_back(cd);
        }
        {
            CaseDef cd = mk("FrankLinearM", 2, 0.78, 0.5, false, XMarginal::uniform01,
                            CaseId::copula_linear);
            cd.fixed_family = CopulaFamily::frank;
            cd.fixed_theta = kFrankFixed;
            t.push_back(cd);
        }
        {
            CaseDef cd = mk("FrankNormalM", 2, 1.45, 1.0, false, XMarginal::other,
                            CaseId::copula_normal);
            cd.fixed_family = CopulaFamily::frank;
            cd.fixed_theta = kFrankFixed;
            t.push_back(cd);
        }
        {
            CaseDef cd = mk("ClaytonExponentialM", 2, 1.55, 1.0, false, XMarginal::other,
                            CaseId::copula_exponential);
            cd.fixed_family = CopulaFamily::clayton;
            cd.fixed_theta = kClaytonFixed;
            t.push_back(cd);
        }
        {
            CaseDef cd = mk("ClaytonLinearM", 2, 0.78, 0.5, false, XMarginal::uniform01,
                            CaseId::copula_linear);
            cd.fixed_family = CopulaFamily::clayton;
            cd.fixed_theta = kClaytonFixed;
            t.push_back(cd);
        }
        {
            CaseDef cd = mk("ClaytonNormalM", 2, 1.45, 1.0, false, XMarginal::other,
                            CaseId::copula_normal);
            cd.fixed_family = CopulaFamily::clayton;
            cd.fixed_theta = kClaytonFixed;
            t.push_back(cd);
        }
        // equal-marginal cases, 5-D
        t.push_back(mk("NormalD5", 5, 0.45, 0.0, true, XMarginal::std_normal, CaseId::normal_d));
        t.push_back(mk("tD5", 5, 0.5, 0.0, true, XMarginal::student_t5, CaseId::t_d));
        t.push_back(mk("FrankD5", 5, 2.3, 0.0, true, XMarginal::uniform01, CaseId::frank_d));
        t.push_back(mk("ClaytonD5", 5, 0.7, 0.0, true, XMarginal::uniform01, CaseId::clayton_d));
        t.push_back(mk("GumbelD5", 5, 1.32, 1.0, true, XMarginal::uniform01, CaseId::gumbel_d));
        t.push_back(mk("JoeD5", 5, 1.6, 1.0, true, XMarginal::uniform01, CaseId::joe_d));
        {
            CaseDef cd = mk("UniformFrankD5", 5, 0.05, 0.5, true, XMarginal::uniform01,
                            CaseId::mix_uniform_frank);
            cd.fixed_family = CopulaFamily::frank;
            cd.fixed_theta = 10.0;
            t.push_back(cd);
        }
        {
            CaseDef cd = mk("FrankClaytonD5", 5, 0.0, 0.5, true, XMarginal::uniform01,
                            CaseId::mix_frank_clayton);
            cd.fixed_family = CopulaFamily::frank;
            cd.fixed_theta = 1.0;
            cd.mix_second_family = CopulaFamily::clayton;
            cd.mix_second_theta = 10.0;
            t.push_back(cd);
        }
        {
            CaseDef cd = mk("FrankJoeD5", 5, 0.0, 0.5, true, XMarginal::uniform01,
                            CaseId::mix_frank_joe);
            cd.fixed_family = CopulaFamily::frank;
            cd.fixed_theta = 1.0;
            cd.mix_second_family = CopulaFamily::joe;
            cd.mix_second_theta = 8.0;
            t.push_back(cd);
        }
        // unequal-marginal cases, 5-D
        t.push_back(mk("UniformExponentialM5", 5, 1.27, 1.0, false, XMarginal::other,
                       CaseId::indep_exponential));
        {
            CaseDef cd = mk("FrankExponentialM5", 5, 1.35, 1.0, false, XMarginal::other,
                            CaseId::copula_exponential);
            cd.fixed_family = CopulaFamily::frank;
            cd.fixed_theta = kFrankFixed;
            t.push_back(cd);
        }
        {
            CaseDef cd = mk("FrankLinearM5", 5, 0.72, 0.5, false, XMarginal::uniform01,
                            CaseId::copula_linear);
            cd.fixed_family = CopulaFamily::frank;
            cd.fixed_theta = kFrankFixed;
            t.push_back(cd);
        }
        {
            CaseDef cd = mk("FrankNormalM5", 5, 1.3, 1.0, false, XMarginal::other,
                            CaseId::copula_normal);
            cd.fixed_family = CopulaFamily::frank;
            cd.fixed_theta = kFrankFixed;
            t.push_back(cd);
        }
        {
            CaseDef cd = mk("ClaytonExponentialM5", 5, 1.35, 1.0, false, XMarginal::other,
                            CaseId::copula_exponential);
            cd.fixed_family = CopulaFamily::clayton;
            cd.fixed_theta = kClaytonFixed;
            t.push_back(cd);
        }
        {
            CaseDef cd = mk("ClaytonLinearM5", 5, 0.78, 0.5, false, XMarginal::uniform01,
                            CaseId::copula_linear);
            cd.fixed_family = CopulaFamily::clayton;
            cd.fixed_theta = kClaytonFixed;
            t.push_back(cd);
        }
        {
            CaseDef cd = mk("ClaytonNormalM5", 5, 1.3, 1.0, false, XMarginal::other,
                            CaseId::copula_normal);
            cd.fixed_family = CopulaFamily::clayton;
            cd.fixed_theta = kClaytonFixed;
            t.push_back(cd);
        }
        return t;
    }();
    return table;
}

const CaseDef& find_def(const std::string& name) {
    for (const CaseDef& cd : defs())
        if (cd.info.name == name) return cd;
    throw input_error("unknown case study: " + name);
}

Sample make_sample(std::size_t n, std::size_t d) {
    Sample s;
    s.n = n;
    s.d = d;
    s.data.assign(n * d, 0.0);
    return s;
}

Sample draw_case(const CaseDef& cd, WhichSample which, double theta, std::size_t size, Rng& rng) {
    const std::size_t d = cd.info.dim;
    const bool is_x = which == WhichSample::x;
    Sample s = make_sample(size, d);

    switch (cd.id) {
        case CaseId::normal_d: {
            double rho = is_x ? 0.0 : theta;
            check_equicorr(rho, d);
            for (std::size_t i = 0; i < size; ++i) draw_equicorr_normal(rho, d, rng, &s.at(i, 0));
            return s;
        }
        case CaseId::t_d: {
            double rho = is_x ? 0.0 : theta;
            check_equicorr(rho, d);
            for (std::size_t i = 0; i < size; ++i) draw_equicorr_t5(rho, d, rng, &s.at(i, 0));
            return s;
        }
        case CaseId::uniform_mixture: {
            double w = is_x ? 0.0 : theta;
            if (w < 0.0 || w > 1.0) throw input_error("mixture weight must lie in [0, 1]");
            for (std::size_t i = 0; i < size; ++i) {
                if (w > 0.0 && rng.uniform() < w) {
                    double u = rng.uniform();
                    s.at(i, 0) = u;
                    s.at(i, 1) = u;
                } else {
                    draw_iid_uniform(2, rng, &s.at(i, 0));
                }
            }
            return s;
        }
        case CaseId::frank_d:
        case CaseId::clayton_d:
        case CaseId::gumbel_d:
        case CaseId::joe_d: {
            CopulaFamily fam = cd.id == CaseId::frank_d     ? CopulaFamily::frank
                               : cd.id == CaseId::clayton_d ? CopulaFamily::clayton
                               : cd.id == CaseId::gumbel_d  ? CopulaFamily::gumbel
                                                            : CopulaFamily::joe;
            double th = is_x ? cd.info.null_theta : theta;
            check_archimedean_params(fam, th, d);
            for (std::size_t i = 0; i < size; ++i) draw_archimedean(fam, th, d, rng, &s.at(i, 0));
            return s;
        }
        case CaseId::mix_clayton_gumbel:
        case CaseId::mix_frank_clayton:
        case CaseId::mix_frank_joe: {
            double w = is_x ? 0.5 : theta;
            if (w < 0.0 || w > 1.0) throw input_error("mixture weight must lie in [0, 1]");
            check_archimedean_params(cd.fixed_family, cd.fixed_theta, d);
            check_archimedean_params(cd.mix_second_family, cd.mix_second_theta, d);
            for (std::size_t i = 0; i < size; ++i) {
                if (rng.uniform() < w)
                    draw_archimedean(cd.fixed_family, cd.fixed_theta, d, rng, &s.at(i, 0));
                else
                    draw_archimedean(cd.mix_second_family, cd.mix_second_theta, d, rng,
                                     &s.at(i, 0));
            }
            return s;
        }
        case CaseId::mix_uniform_frank: {
            double w = is_x ? 0.5 : theta;  // weight on the independence component
            if (w < 0.0 || w > 1.0) throw input_error("mixture weight must lie in [0, 1]");
            for (std::size_t i = 0; i < size; ++i) {
                if (rng.uniform() < w)
                    draw_iid_uniform(d, rng, &s.at(i, 0));
                else
                    draw_archimedean(CopulaFamily::frank, cd.fixed_theta, d, rng, &s.at(i, 0));
            }
            return s;
        }
        case CaseId::mix_normal_uniform: {
            double w = is_x ? 0.5 : theta;  // weight on the gaussian-copula component
            if (w < 0.0 || w > 1.0) throw input_error("mixture weight must lie in [0, 1]");
            check_equicorr(cd.fixed_theta, d);
            for (std::size_t i = 0; i < size; ++i) {
                if (rng.uniform() < w) {
                    draw_equicorr_normal(cd.fixed_theta, d, rng, &s.at(i, 0));
                    for (std::size_t k = 0; k < d; ++k) s.at(i, k) = norm_cdf(s.at(i, k));
                } else {
                    draw_iid_uniform(d, rng, &s.at(i, 0));
                }
            }
            return s;
        }
        case CaseId::normal_shift: {
            double mu = is_x ? 0.0 : theta;
            for (std::size_t i = 0; i < size; ++i) {
                s.at(i, 0) = rng.normal();
                s.at(i, 1) = rng.normal() + mu;
            }
            return s;
        }
        case CaseId::normal_stretch: {
            if (is_x) {
                for (std::size_t i = 0; i < size; ++i) {
                    s.at(i, 0) = rng.normal();
                    s.at(i, 1) = rng.normal();
                }
                return s;
            }
            if (!(theta > 1.0))
                throw input_error("stretch parameter must exceed 1 for a valid covariance");
            double c = std::sqrt(theta - 1.0);
            for (std::size_t i = 0; i < size; ++i) {
                double z1 = rng.normal();
                s.at(i, 0) = z1;
                s.at(i, 1) = z1 + c * rng.normal();
            }
            return s;
        }
        case CaseId::uniform_rotate: {
            double angle = is_x ? 0.0 : theta;
            double ca = std::cos(angle), sa = std::sin(angle);
            for (std::size_t i = 0; i < size; ++i) {
                double u1 = rng.uniform();
                double u2 = rng.uniform();
                s.at(i, 0) = ca * u1 - sa * u2;
                s.at(i, 1) = sa * u1 + ca * u2;
            }
            return s;
        }
        case CaseId::uniform_beta: {
            if (is_x) {
                for (std::size_t i = 0; i < size; ++i) draw_iid_uniform(d, rng, &s.at(i, 0));
                return s;
            }
            if (!(theta > 0.0)) throw input_error("beta shape must be positive");
            for (std::size_t i = 0; i < size; ++i)
                for (std::size_t k = 0; k < d; ++k) s.at(i, k) = rng.beta(theta, theta);
            return s;
        }
        case CaseId::trunc_exponential: {
            double rate = is_x ? 1.0 : theta;
            if (!(rate > 0.0)) throw input_error("exponential rate must be positive");
            MarginalSpec spec{MarginalSpec::trunc_exponential, rate, 2.0};
            for (std::size_t i = 0; i < size; ++i)
                for (std::size_t k = 0; k < d; ++k)
                    s.at(i, k) = marginal_quantile(spec, rng.uniform());
            return s;
        }
        case CaseId::copula_exponential:
        case CaseId::copula_linear:
        case CaseId::copula_normal: {
            check_archimedean_params(cd.fixed_family, cd.fixed_theta, d);
            for (std::size_t i = 0; i < size; ++i)
                draw_archimedean(cd.fixed_family, cd.fixed_theta, d, rng, &s.at(i, 0));
            MarginalSpec spec;
            if (cd.id == CaseId::copula_exponential) {
                double rate = is_x ? 1.0 : theta;
                if (!(rate > 0.0)) throw input_error("exponential rate must be positive");
                spec = MarginalSpec{MarginalSpec::exponential, rate, 0.0};
            } else if (cd.id == CaseId::copula_linear) {
                double slope = is_x ? 0.5 : theta;
                if (slope < 0.0 || slope > 1.0)
                    throw input_error("linear marginal slope must lie in [0, 1]");
                spec = MarginalSpec{MarginalSpec::linear, slope, 0.0};
            } else {
                double sigma = is_x ? 1.0 : theta;
                if (!(sigma > 0.0)) throw input_error("normal tail scale must be positive");
                spec = MarginalSpec{MarginalSpec::normal_tail, sigma, 0.0};
            }
            apply_marginals(s, spec);
            return s;
        }
        case CaseId::indep_exponential: {
            double rate = is_x ? 1.0 : theta;
            if (!(rate > 0.0)) throw input_error("exponential rate must be positive");
            MarginalSpec spec{MarginalSpec::exponential, rate, 0.0};
            for (std::size_t i = 0; i < size; ++i)
                for (std::size_t k = 0; k < d; ++k)
                    s.at(i, k) = marginal_quantile(spec, rng.uniform());
            return s;
        }
    }
    throw input_error("unhandled case study");
}

}  // namespace

Sample archimedean_sample(CopulaFamily family, double theta, std::size_t dim, std::size_t size,
                          Rng& rng) {
    if (dim < 2) throw input_error("copula dimension must be at least 2");
    check_archimedean_params(family, theta, dim);
    Sample s = make_sample(size, dim);
    for (std::size_t i = 0; i < size; ++i) draw_archimedean(family, theta, dim, rng, &s.at(i, 0));
    return s;
}

Sample gaussian_copula_sample(double rho, std::size_t dim, std::size_t size, Rng& rng) {
    if (dim < 2) throw input_error("copula dimension must be at least 2");
    check_equicorr(rho, dim);
    Sample s = make_sample(size, dim);
    for (std::size_t i = 0; i < size; ++i) {
        draw_equicorr_normal(rho, dim, rng, &s.at(i, 0));
        for (std::size_t k = 0; k < dim; ++k) s.at(i, k) = norm_cdf(s.at(i, k));
    }
    return s;
}

double marginal_quantile(const MarginalSpec& spec, double u) {
    switch (spec.kind) {
        case MarginalSpec::identity: return u;
        case MarginalSpec::exponential: return -std::log1p(-u) / spec.a;
        case MarginalSpec::trunc_exponential: {
            double scale = -std::expm1(-spec.a * spec.b);
            return -std::log1p(-u * scale) / spec.a;
        }
        case MarginalSpec::linear: {
            double slope = spec.a;
            double lin = 1.0 - 2.0 * slope;
            if (std::fabs(lin) < 1e-9) return u;
            double disc = slope * slope + lin * u;
            return (-slope + std::sqrt(disc)) / lin;
        }
        case MarginalSpec::normal_tail:
            if (u >= 1.0) return spec.a * norm_quantile(1.0 - 1e-16);
            return spec.a * norm_quantile(0.5 * (1.0 + u));
        case MarginalSpec::beta: {
            if (u <= 0.0) return 0.0;
            if (u >= 1.0) return 1.0;
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 80; ++it) {
                double mid = 0.5 * (lo + hi);
                if (reg_beta(spec.a, spec.b, mid) < u)
                    lo = mid;
                else
                    hi = mid;
            }
            return 0.5 * (lo + hi);
        }
    }
    return u;
}

double marginal_cdf(const MarginalSpec& spec, double t) {
    switch (spec.kind) {
        case MarginalSpec::identity:
            return t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
        case MarginalSpec::exponential: return t <= 0.0 ? 0.0 : -std::expm1(-spec.a * t);
        case MarginalSpec::trunc_exponential: {
            if (t <= 0.0) return 0.0;
            if (t >= spec.b) return 1.0;
            return std::expm1(-spec.a * t) / std::expm1(-spec.a * spec.b);
        }
        case MarginalSpec::linear: {
            if (t <= 0.0) return 0.0;
            if (t >= 1.0) return 1.0;
            return (1.0 - 2.0 * spec.a) * t * t + 2.0 * spec.a * t;
        }
        case MarginalSpec::normal_tail:
            return t <= 0.0 ? 0.0 : 2.0 * norm_cdf(t / spec.a) - 1.0;
        case MarginalSpec::beta:
            return reg_beta(spec.a, spec.b, t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t));
    }
    return t;
}

void apply_marginals(Sample& s, const MarginalSpec& spec) {
    for (double& v : s.data) {
        if (v < 0.0 || v > 1.0)
            throw input_error("marginal transform input must lie in [0, 1]");
        v = marginal_quantile(spec, v);
    }
}

const std::vector<CaseStudy>& case_catalog() {
    static const std::vector<CaseStudy> cat = [] {
        std::vector<CaseStudy> c;
        for (const CaseDef& cd : defs()) c.push_back(cd.info);
        return c;
    }();
    return cat;
}

const CaseStudy& find_case(const std::string& name) { return find_def(name).info; }

Sample sample_case(const CaseStudy& cs, WhichSample which, double theta, std::size_t size,
                   Rng& rng) {
    return draw_case(find_def(cs.name), which, theta, size, rng);
}

Sample sample_case(const std::string& name, WhichSample which, double theta, std::size_t size,
                   Rng& rng) {
    return draw_case(find_def(name), which, theta, size, rng);
}

Sample structured_alternatives(const std::string& name, double theta, std::size_t size, Rng& rng) {
    if (name != "UniformMixtureD2" && name != "NormalShiftM" && name != "NormalStretchM" &&
        name != "UniformRotateM")
        throw input_error("not a structured alternative: " + name);
    return draw_case(find_def(name), WhichSample::y, theta, size, rng);
}

double kendall_tau(const Sample& s, std::size_t c1, std::size_t c2) {
    if (s.n < 2) throw input_error("kendall tau needs at least two observations");
    std::int64_t concordant = 0, discordant = 0;
    for (std::size_t i = 0; i < s.n; ++i) {
        for (std::size_t j = i + 1; j < s.n; ++j) {
            double a = s.at(i, c1) - s.at(j, c1);
            double b = s.at(i, c2) - s.at(j, c2);
            double prod = a * b;
            if (prod > 0.0)
                ++concordant;
            else if (prod < 0.0)
                ++discordant;
        }
    }
    double pairs = 0.5 * static_cast<double>(s.n) * static_cast<double>(s.n - 1);
    return static_cast<double>(concordant - discordant) / pairs;
}

}  // namespace twosample
