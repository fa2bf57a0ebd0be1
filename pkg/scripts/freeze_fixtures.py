"""Recompute frozen point-count fixtures with a slow, independent oracle.

The oracle walks P^3(F_{2^i}) point by point with ``evaluate_at``; it shares
no code with the vectorised enumerator used by the library.

    python3 scripts/freeze_fixtures.py [--max-degree 6]
"""
import argparse
import json
import pathlib
import time

from discdet.algebra import build_extension
from discdet.forms import HomogeneousForm, evaluate_at, fermat_form, format_form, iter_points_projective

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data" / "fermat_cubic_surface_f2.json"


def slow_count(f: HomogeneousForm, i: int) -> int:
    E = build_extension(2, i)
    g = HomogeneousForm(f.nvars, f.degree, E, dict(f.coeffs))  # 0/1 coefficients embed verbatim
    return sum(1 for pt in iter_points_projective(E, f.nvars) if evaluate_at(g, pt) == 0)


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--max-degree", type=int, default=6)
    args = ap.parse_args()
    f = fermat_form(4, 3, build_extension(2, 1))
    counts = []
    for i in range(1, args.max_degree + 1):
        t = time.time()
        counts.append(slow_count(f, i))
        print(f"F_(2^{i}): {counts[-1]} points ({time.time() - t:.1f} s)")
    OUT.write_text(json.dumps({"form": format_form(f), "field": "fp:2", "n": 2, "d": 3,
                               "counts": counts, "oracle": "pointwise evaluate_at"}, indent=2) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
