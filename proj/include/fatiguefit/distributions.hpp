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

#pragma once

#include <variant>

namespace fatiguefit {

// Standard normal building blocks. The upper tail is evaluated through erfc
// so that survival probabilities keep full relative accuracy far out.
double std_normal_pdf(double z);
double std_normal_cdf(double z);
double std_normal_sf(double z);
double std_normal_log_sf(double z);
double std_normal_quantile(double p);

struct NormalKernel {
    double mu = 0.0;
    double sigma = 1.0;
};

/// Sinh-normal with the scale fixed at 2.
struct SinhNormalKernel {
    double alpha = 1.0;
    double mu = 0.0;
};

/// Birnbaum-Saunders on y > 0; mu is the median.
struct BirnbaumSaundersKernel {
    double alpha = 1.0;
    double mu = 1.0;
};

using Kernel = std::variant<NormalKernel, SinhNormalKernel, BirnbaumSaundersKernel>;

// All functions throw std::domain_error when the kernel parameters are
// invalid (sigma/alpha <= 0, BS mu <= 0). BS density and survival also
// reject y <= 0.

double normal_logpdf(double y, const NormalKernel& k);
double normal_survival(double y, const NormalKernel& k);
double normal_log_survival(double y, const NormalKernel& k);
double normal_cdf(double y, const NormalKernel& k);

double sinh_normal_logpdf(double y, const SinhNormalKernel& k);
double sinh_normal_survival(double y, const SinhNormalKernel& k);
double sinh_normal_log_survival(double y, const SinhNormalKernel& k);
double sinh_normal_cdf(double y, const SinhNormalKernel& k);

double bs_logpdf(double y, const BirnbaumSaundersKernel& k);
double bs_survival(double y, const BirnbaumSaundersKernel& k);
double bs_log_survival(double y, const BirnbaumSaundersKernel& k);
double bs_cdf(double y, const BirnbaumSaundersKernel& k);

double logpdf(double y, const Kernel& k);
double survival(double y, const Kernel& k);
double log_survival(double y, const Kernel& k);
double cdf(double y, const Kernel& k);

/// Closed-form quantile; p must lie in (0, 1).
double quantile(double p, const Kernel& k);

}  // namespace fatiguefit
