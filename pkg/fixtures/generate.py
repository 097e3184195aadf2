"""Regenerate the JSON fixtures; the elliptic trace is recounted by enumeration.

Run with ``python3 fixtures/generate.py``.
"""

import json
from pathlib import Path

from weilform.exact.poly import Poly
from weilform.pointcount import elliptic_cohomology, frobenius_trace, projective_space_cohomology

HERE = Path(__file__).resolve().parent


def entries(polys):
    return [{"degree": n, "poly": p.to_json()} for n, p in sorted(polys.items())]


def fixtures():
    curve = (5, 1, 0)  # y^2 = x^3 + x over F_5
    ell = elliptic_cohomology(*curve)
    return {
        "p1_f5.json": {"q": 5, "kind": "intersection", "entries": entries(projective_space_cohomology(5, 1))},
        "p2_f5.json": {"q": 5, "kind": "intersection", "entries": entries(projective_space_cohomology(5, 2))},
        "elliptic_f5.json": {
            "q": 5,
            "kind": "intersection",
            "curve": {"p": 5, "a": 1, "b": 0, "trace": frobenius_trace(*curve)},
            "entries": entries(ell),
        },
        "elliptic_f5_ordinary.json": {"q": 5, "kind": "ordinary", "entries": entries(ell)},
        "doctored_mixed.json": {
            "q": 5,
            "kind": "intersection",
            "entries": entries({0: Poly([1, -1]), 1: Poly([1, -5]) * Poly([1, -1]), 2: Poly([1, -5])}),
        },
        "parity_violation.json": {"q": 9, "kind": "intersection", "entries": entries({1: Poly([1, -3])})},
        "doctored_odd_mixed.json": {"q": 9, "kind": "ordinary", "entries": entries({1: Poly([1, -3])})},
        "doctored_classify.json": {"matrix": [["3"]], "q": 9, "weight": 1, "sign": -1},
        "unipotent_classify.json": {"matrix": [["1", "1"], ["0", "1"]], "q": 5, "weight": 0},
        "nilpotent_2block.json": {"N": [["0", "1"], ["0", "0"]], "A": [["0", "-1"], ["1", "0"]], "sign": -1},
        "kring_program.json": {
            "q": 5,
            "classes": {"E": {"components": {"1": {"num": ["1", "-2", "5"]}}}},
            "expr": {"op": "lambda", "m": 2, "args": [{"op": "add", "args": ["E", "E"]}]},
            "sigma": 1,
        },
    }


def main():
    for name, obj in fixtures().items():
        (HERE / name).write_text(json.dumps(obj, indent=2) + "\n")


if __name__ == "__main__":
    main()
