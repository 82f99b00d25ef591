#!/usr/bin/env python3
"""Occupation dynamics of the passage, all four methods side by side.

Runs the comparison grid for a few adiabaticities and initial states and
writes one CSV per case into ./out (same schema as `lzsm compare`).
"""
import math
import os

from lzsm import Method, Spinor
from lzsm.analysis import SweepConfig, compare_dynamics, compare_rows_to_csv

OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "out")

CASES = [
    # (delta, alpha_i) — ground state plus a few superpositions
    (0.1, 0.0),
    (0.3, 0.0),
    (1.0, 0.0),
    (0.1, 0.3),
    (0.1, 0.7),
    (0.1, 0.95),
]


def main():
    os.makedirs(OUT_DIR, exist_ok=True)
    for delta, a_i in CASES:
        init = Spinor(complex(a_i), complex(math.sqrt(1.0 - a_i * a_i)))
        cfg = SweepConfig(
            delta_values=(delta,),
            tau_start=-8.0,
            tau_end=8.0,
            tau_count=321,
            init=init,
            methods=(Method.ODE, Method.ZENER, Method.MAJORANA,
                     Method.ADIABATIC_IMPULSE),
        )
        rows = compare_dynamics(cfg)
        name = f"dynamics_delta{delta:g}_ai{a_i:g}.csv"
        path = os.path.join(OUT_DIR, name)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(compare_rows_to_csv(rows))
        print(f"wrote {path} ({len(rows)} rows)")


if __name__ == "__main__":
    main()
