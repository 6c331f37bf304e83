/*
 * Copyright (c) 2026, The fatiguefit Authors.
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

#include "fatiguefit/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fatiguefit {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;

void require_positive(double v, const char* what)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::domain_error(std::string(what) + " must be positive and finite");
}

void check(const NormalKernel& k) { require_positive(k.sigma, "normal sigma"); }
void check(const SinhNormalKernel& k) { require_positive(k.alpha, "sinh-normal alpha"); }
void check(const BirnbaumSaundersKernel& k)
{
    require_positive(k.alpha, "Birnbaum-Saunders alpha");
    require_positive(k.mu, "Birnbaum-Saunders mu");
}

void require_support(double y)
{
    if (!(y > 0.0)) throw std::domain_error("Birnbaum-Saunders support is y > 0");
}

double bs_argument(double y, const BirnbaumSaundersKernel& k)
{
    return (std::sqrt(y / k.mu) - std::sqrt(k.mu / y)) / k.alpha;
}

double sinh_normal_argument(double y, const SinhNormalKernel& k)
{
    return 2.0 / k.alpha * std::sinh(0.5 * (y - k.mu));
}

// Wichura, AS241 PPND16.
double ppnd16(double p)
{
    double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        double r = 0.180625 - q * q;
        return q *
               (((((((2509.0809287301226727 * r + 33430.575583588128105) * r +
                     67265.770927008700853) * r + 45921.953931549871457) * r +
                   13731.693765509461125) * r + 1971.5909503065514427) * r +
                 133.14166789178437745) * r + 3.387132872796366608) /
               (((((((5226.495278852545925 * r + 28729.085735721942674) * r +
                     39307.89580009271061) * r + 21213.794301586595867) * r +
                   5394.1960214247511077) * r + 687.1870074920579083) * r +
                 42.313330701600911252) * r + 1.0);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = (((((((7.7454501427834140764e-4 * r + 0.0227238449892691845833) * r +
                    0.24178072517745061177) * r + 1.27045825245236838258) * r +
                  3.64784832476320460504) * r + 5.7694972214606914055) * r +
                4.6303378461565452959) * r + 1.42343711074968357734) /
              (((((((1.05075007164441684324e-9 * r + 5.475938084995344946e-4) * r +
                    0.0151986665636164571966) * r + 0.14810397642748007459) * r +
                  0.68976733498510000455) * r + 1.6763848301838038494) * r +
                2.05319162663775882187) * r + 1.0);
    } else {
        r -= 5.0;
        val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                    0.0012426609473880784386) * r + 0.026532189526576123093) * r +
                  0.29656057182850489123) * r + 1.7848265399172913358) * r +
                5.4637849111641143699) * r + 6.6579046435011037772) /
              (((((((2.04426310338993978564e-15 * r + 1.4215117583164458887e-7) * r +
                    1.8463183175100546818e-5) * r + 7.868691311456132591e-4) * r +
                  0.0148753612908506148525) * r + 0.13692988092273580531) * r +
                0.59983220655588793769) * r + 1.0);
    }
    return q < 0.0 ? -val : val;
}

}  // namespace

double std_normal_pdf(double z) { return std::exp(-0.5 * z * z - kLogSqrt2Pi); }

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }

double std_normal_sf(double z) { return 0.5 * std::erfc(z * kInvSqrt2); }

double std_normal_log_sf(double z)
{
    if (z < 35.0) {
        if (z < -5.0) return std::log1p(-std_normal_cdf(z));
        return std::log(std_normal_sf(z));
    }
    // Mills-ratio asymptotic expansion; erfc underflows past z ~ 38.
    double z2 = z * z;
    double series = 1.0 - 1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2);
    return -0.5 * z2 - kLogSqrt2Pi - std::log(z) + std::log(series);
}

double std_normal_quantile(double p)
{
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("quantile probability must lie in (0, 1)");
    double z = ppnd16(p);
    // One Newton step on whichever tail keeps the residual well conditioned.
    double pdf = std_normal_pdf(z);
    if (pdf > 0.0) {
        double resid = p < 0.5 ? std_normal_cdf(z) - p : (1.0 - p) - std_normal_sf(z);
        z -= resid / pdf;
    }
    return z;
}

double normal_logpdf(double y, const NormalKernel& k)
{
    check(k);
    double d = (y - k.mu) / k.sigma;
    return -kLogSqrt2Pi - std::log(k.sigma) - 0.5 * d * d;
}

double normal_survival(double y, const NormalKernel& k)
{
    check(k);
    return std_normal_sf((y - k.mu) / k.sigma);
}

double normal_log_survival(double y, const NormalKernel& k)
{
    check(k);
    return std_normal_log_sf((y - k.mu) / k.sigma);
}

double normal_cdf(double y, const NormalKernel& k)
{
    check(k);
    return std_normal_cdf((y - k.mu) / k.sigma);
}

double sinh_normal_logpdf(double y, const SinhNormalKernel& k)
{
    check(k);
    double half = 0.5 * (y - k.mu);
    double s = std::sinh(half);
    // log cosh(x) = |x| + log1p(exp(-2|x|)) - log 2, stable for large |x|.
    double ax = std::fabs(half);
    double log_cosh = ax + std::log1p(std::exp(-2.0 * ax)) - std::numbers::ln2;
    return -std::log(k.alpha) - kLogSqrt2Pi + log_cosh - 2.0 / (k.alpha * k.alpha) * s * s;
}

double sinh_normal_survival(double y, const SinhNormalKernel& k)
{
    check(k);
    return std_normal_sf(sinh_normal_argument(y, k));
}

double sinh_normal_log_survival(double y, const SinhNormalKernel& k)
{
    check(k);
    return std_normal_log_sf(sinh_normal_argument(y, k));
}

double sinh_normal_cdf(double y, const SinhNormalKernel& k)
{
    check(k);
    return std_normal_cdf(sinh_normal_argument(y, k));
}

double bs_logpdf(double y, const BirnbaumSaundersKernel& k)
{
    check(k);
    require_support(y);
    double a = k.alpha;
    return -kLogSqrt2Pi + std::log(y + k.mu) - std::log(2.0 * a) - 0.5 * std::log(k.mu) -
           1.5 * std::log(y) - (y / k.mu + k.mu / y - 2.0) / (2.0 * a * a);
}

double bs_survival(double y, const BirnbaumSaundersKernel& k)
{
    check(k);
    require_support(y);
    return std_normal_sf(bs_argument(y, k));
}

double bs_log_survival(double y, const BirnbaumSaundersKernel& k)
{
    check(k);
    require_support(y);
    return std_normal_log_sf(bs_argument(y, k));
}

double bs_cdf(double y, const BirnbaumSaundersKernel& k)
{
    check(k);
    require_support(y);
    return std_normal_cdf(bs_argument(y, k));
}

namespace {
template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;
}  // namespace

double logpdf(double y, const Kernel& k)
{
    return std::visit(overloaded{[y](const NormalKernel& n) { return normal_logpdf(y, n); },
                                 [y](const SinhNormalKernel& s) { return sinh_normal_logpdf(y, s); },
                                 [y](const BirnbaumSaundersKernel& b) { return bs_logpdf(y, b); }},
                      k);
}

double survival(double y, const Kernel& k)
{
    return std::visit(
        overloaded{[y](const NormalKernel& n) { return normal_survival(y, n); },
                   [y](const SinhNormalKernel& s) { return sinh_normal_survival(y, s); },
                   [y](const BirnbaumSaundersKernel& b) { return bs_survival(y, b); }},
        k);
}

double log_survival(double y, const Kernel& k)
{
    return std::visit(
        overloaded{[y](const NormalKernel& n) { return normal_log_survival(y, n); },
                   [y](const SinhNormalKernel& s) { return sinh_normal_log_survival(y, s); },
                   [y](const BirnbaumSaundersKernel& b) { return bs_log_survival(y, b); }},
        k);
}

double cdf(double y, const Kernel& k)
{
    return std::visit(overloaded{[y](const NormalKernel& n) { return normal_cdf(y, n); },
                                 [y](const SinhNormalKernel& s) { return sinh_normal_cdf(y, s); },
                                 [y](const BirnbaumSaundersKernel& b) { return bs_cdf(y, b); }},
                      k);
}

double quantile(double p, const Kernel& k)
{
    double z = std_normal_quantile(p);
    return std::visit(overloaded{[z](const NormalKernel& n) {
                                     check(n);
                                     return n.mu + n.sigma * z;
                                 },
                                 [z](const SinhNormalKernel& s) {
                                     check(s);
                                     return s.mu + 2.0 * std::asinh(0.5 * s.alpha * z);
                                 },
                                 [z](const BirnbaumSaundersKernel& b) {
                                     check(b);
                                     double w = 0.5 * b.alpha * z;
                                     double h = std::hypot(w, 1.0);
                                     double root = w >= 0.0 ? w + h : 1.0 / (h - w);
                                     return b.mu * root * root;
                                 }},
                      k);
}

}  // namespace fatiguefit
