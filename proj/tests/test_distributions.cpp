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

#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "fatiguefit/distributions.hpp"
#include "support/quadrature.hpp"

using namespace fatiguefit;
using fatiguefit::testing::density_mass;

namespace {

// Composite trapezoid rule; the oracle for Phi.
double trapezoid(double (*f)(double), double a, double b, int n)
{
    double h = (b - a) / n;
    double s = 0.5 * (f(a) + f(b));
    for (int i = 1; i < n; ++i) s += f(a + i * h);
    return s * h;
}

double phi(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

}  // namespace

TEST_CASE("standard normal cdf")
{
    CHECK(std_normal_cdf(0.0) == 0.5);
    CHECK(std_normal_cdf(-40.0) == doctest::Approx(0.0));
    CHECK(std_normal_cdf(-std::numeric_limits<double>::infinity()) == 0.0);

    double oracle = 0.5 + trapezoid(phi, 0.0, 1.6449, 200000);
    CHECK(std::fabs(std_normal_cdf(1.6449) - oracle) < 1e-8);
    CHECK(std_normal_cdf(1.6449) == doctest::Approx(0.95).epsilon(1e-4));

    for (double z : {-3.0, -0.5, 0.3, 2.2}) CHECK(std_normal_cdf(-z) == doctest::Approx(1.0 - std_normal_cdf(z)));
}

TEST_CASE("log survival stays finite in the far tail")
{
    // log Phi_c(z) ~ -z^2/2 - log(z sqrt(2 pi)) for large z.
    for (double z : {30.0, 37.0, 40.0, 100.0}) {
        double asym = -0.5 * z * z - std::log(z) - 0.5 * std::log(2 * std::numbers::pi) +
                      std::log1p(-1 / (z * z) + 3 / std::pow(z, 4));
        CHECK(std::isfinite(std_normal_log_sf(z)));
        CHECK(std_normal_log_sf(z) == doctest::Approx(asym).epsilon(1e-9));
    }
    CHECK(std_normal_log_sf(10.0) == doctest::Approx(std::log(0.5 * std::erfc(10.0 / std::sqrt(2.0)))).epsilon(1e-13));
    CHECK(std_normal_log_sf(34.999) == doctest::Approx(std_normal_log_sf(35.001)).epsilon(1e-3));
    CHECK(std_normal_log_sf(-10.0) == doctest::Approx(-7.6198530241605e-24));
}

TEST_CASE("standard normal quantile")
{
    CHECK(std_normal_quantile(0.5) == 0.0);
    CHECK(std_normal_quantile(0.95) == doctest::Approx(1.6448536269514722).epsilon(1e-14));
    for (double p : {1e-12, 1e-6, 0.01, 0.05, 0.3, 0.7, 0.99, 1 - 1e-9})
        CHECK(std::fabs(std_normal_cdf(std_normal_quantile(p)) - p) < 1e-12 * std::max(1.0, p / (1 - p)));
    CHECK_THROWS_AS(std_normal_quantile(0.0), std::domain_error);
    CHECK_THROWS_AS(std_normal_quantile(1.0), std::domain_error);
}

TEST_CASE("normal kernel")
{
    NormalKernel k{2.0, 1.0};
    double peak = -std::log(std::sqrt(2 * std::numbers::pi));
    CHECK(normal_logpdf(2.0, k) == doctest::Approx(peak));
    CHECK(normal_logpdf(3.0, k) == doctest::Approx(peak - 0.5));
    CHECK(density_mass(NormalKernel{-1.3, 0.37}) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(normal_logpdf(0.0, NormalKernel{0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(normal_logpdf(0.0, NormalKernel{0.0, -1.0}), std::domain_error);
    CHECK(quantile(0.05, NormalKernel{1.0, 2.0}) ==
          doctest::Approx(1.0 - 2.0 * std_normal_quantile(0.95)));
}

TEST_CASE("sinh-normal kernel")
{
    SinhNormalKernel k{1.54, 3.0};
    CHECK(sinh_normal_logpdf(3.0, k) ==
          doctest::Approx(std::log(1.0 / (1.54 * std::sqrt(2 * std::numbers::pi)))));
    CHECK(sinh_normal_logpdf(3.7, k) == doctest::Approx(sinh_normal_logpdf(2.3, k)));
    CHECK(density_mass(k) == doctest::Approx(1.0).epsilon(1e-10));

    CHECK(sinh_normal_survival(3.0, k) == 0.5);
    CHECK(sinh_normal_survival(1e3, k) == 0.0);

    double y95 = k.mu + 2.0 * std::asinh(k.alpha * 1.6449 / 2.0);
    CHECK(std::fabs(sinh_normal_survival(y95, k) - 0.05) < 1e-5);
    // Tail mass by quadrature of the density.
    double tail = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [&](double y) { return std::exp(sinh_normal_logpdf(y, k)); }, y95,
        std::numeric_limits<double>::infinity(), 15, 1e-14);
    CHECK(std::fabs(sinh_normal_survival(y95, k) - tail) < 1e-10);
    CHECK_THROWS_AS(sinh_normal_survival(1.0, SinhNormalKernel{0.0, 0.0}), std::domain_error);

    // Large deviations keep the density finite in log space.
    CHECK(std::isfinite(sinh_normal_logpdf(3.0 + 100.0, k)));
    CHECK(sinh_normal_logpdf(3.0 + 100.0, k) < -1e40);
}

TEST_CASE("Birnbaum-Saunders kernel")
{
    BirnbaumSaundersKernel k{0.0933, 5.0};
    CHECK(bs_logpdf(5.0, k) ==
          doctest::Approx(std::log(1.0 / (std::sqrt(2 * std::numbers::pi) * 0.0933 * 5.0))));
    CHECK(std::exp(bs_logpdf(5.0, k)) ==
          doctest::Approx(1.0 / (std::sqrt(2 * std::numbers::pi) * 0.0933 * 5)).epsilon(1e-13));
    CHECK(density_mass(k) == doctest::Approx(1.0).epsilon(1e-10));

    CHECK(bs_survival(5.0, k) == 0.5);
    CHECK(bs_survival(1e-9, k) == doctest::Approx(1.0));

    BirnbaumSaundersKernel k2{0.1, 5.0};
    double head = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [&](double y) { return std::exp(bs_logpdf(y, k2)); }, 0.0, 6.0, 15, 1e-15);
    CHECK(std::fabs(bs_survival(6.0, k2) + head - 1.0) < 1e-8);

    CHECK_THROWS_AS(bs_logpdf(0.0, k), std::domain_error);
    CHECK_THROWS_AS(bs_survival(-1.0, k), std::domain_error);
    CHECK_THROWS_AS(bs_logpdf(1.0, BirnbaumSaundersKernel{0.1, -2.0}), std::domain_error);
}

TEST_CASE("quantile closed forms")
{
    for (const Kernel& k : std::vector<Kernel>{NormalKernel{4, 0.5}, SinhNormalKernel{0.8, 4},
                                               BirnbaumSaundersKernel{0.2, 4}})
        CHECK(quantile(0.5, k) == doctest::Approx(4.0).epsilon(1e-15));

    // Bisection on the survival function as the oracle.
    BirnbaumSaundersKernel k{0.0933, 5.0};
    double lo = 1e-6, hi = 50.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (bs_survival(mid, k) > 0.05 ? lo : hi) = mid;
    }
    CHECK(std::fabs(quantile(0.95, k) - 0.5 * (lo + hi)) < 1e-8);
    CHECK(std::fabs(bs_survival(quantile(0.95, k), k) - 0.05) < 1e-8);
    CHECK_THROWS_AS(quantile(1.5, k), std::domain_error);
    // Far lower tail stays positive.
    CHECK(quantile(1e-10, BirnbaumSaundersKernel{3.0, 1.0}) > 0.0);
}

TEST_CASE("derivative of the cdf is the density")
{
    std::vector<std::pair<Kernel, double>> cases{{NormalKernel{1.0, 0.7}, 1.4},
                                                 {SinhNormalKernel{1.2, 10.0}, 9.1},
                                                 {BirnbaumSaundersKernel{0.3, 2.0}, 2.6}};
    for (const auto& [k, y] : cases) {
        double h = 1e-5;
        double num = ((1 - survival(y + h, k)) - (1 - survival(y - h, k))) / (2 * h);
        CHECK(std::fabs(num - std::exp(logpdf(y, k))) < 1e-6);
    }
}

TEST_CASE("monotonicity of survival and quantile")
{
    std::vector<Kernel> ks{NormalKernel{0, 1}, SinhNormalKernel{2.0, 1.0}, BirnbaumSaundersKernel{0.5, 3.0}};
    for (const auto& k : ks) {
        double prev_s = 2.0, prev_q = -1e300;
        for (int i = 1; i < 100; ++i) {
            double p = i / 100.0;
            double q = quantile(p, k);
            CHECK(q > prev_q);
            prev_q = q;
            double s = survival(q, k);
            CHECK(s < prev_s);
            prev_s = s;
        }
    }
}
