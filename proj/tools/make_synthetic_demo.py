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

"""Writes data/synthetic_demo.csv: simulated lives from a Walker/normal
fatigue-limit model. Not a measured dataset."""

import csv
import math
import pathlib

import numpy as np

A1, A2, A3, Q, TAU = 7.0, -2.0, 30.0, 0.5, 0.3
CEILING = 1.0e7


def main() -> None:
    rng = np.random.default_rng(20260101)
    rows = []
    for g, r in enumerate((-1.0, 0.0, 0.5)):
        for s in (31.5, 33.0, 40.0, 45.0, 50.0, 60.0, 70.0, 85.0):
            smax = s / (1.0 - r) ** Q
            for _ in range(5):
                seq = smax * (1.0 - r) ** Q
                life = 10.0 ** (A1 + A2 * math.log10(seq - A3) + TAU * rng.standard_normal())
                runout = life >= CEILING
                rows.append((f"{smax:.2f}", r, f"{min(life, CEILING):.0f}", int(runout), f"R{g}"))
    out = pathlib.Path(__file__).resolve().parent.parent / "data" / "synthetic_demo.csv"
    with out.open("w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(("s_max", "stress_ratio", "cycles", "runout", "group"))
        w.writerows(rows)


if __name__ == "__main__":
    main()
