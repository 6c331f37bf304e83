# Copyright (c) 2026, The fatiguefit Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Fatigue-limit S-N model calibration with censored maximum likelihood."""

from ._core import (
    DataError,
    Dataset,
    FitError,
    FittedModel,
    Observation,
    bootstrap,
    fit,
    information_criteria,
    load_dataset,
    logpdf,
    plotting_positions,
    probability_plot,
    profile,
    quantile,
    quantile_curve,
    std_normal_cdf,
    std_normal_quantile,
    survival,
    survival_curve,
)

__version__ = "0.1.0"

__all__ = [
    "DataError",
    "Dataset",
    "FitError",
    "FittedModel",
    "Observation",
    "bootstrap",
    "fit",
    "information_criteria",
    "load_dataset",
    "logpdf",
    "plotting_positions",
    "probability_plot",
    "profile",
    "quantile",
    "quantile_curve",
    "std_normal_cdf",
    "std_normal_quantile",
    "survival",
    "survival_curve",
]
