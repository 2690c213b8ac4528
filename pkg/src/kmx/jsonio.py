"""JSON wire formats for exact matrices, loops, and algebra elements.

Scalars travel as integer quadruples ``[re_num, re_den, im_num, im_den]``
so every value round-trips exactly.  Matrices are row-major lists of
quadruples, loops are lists of ``{"deg": n, "matrix": ...}`` records, and
full elements carry ``"loop"``, ``"rc"``, ``"rd"`` keys.  ``dumps`` pins
key order and float precision so identical inputs give identical bytes.
"""

import json
from fractions import Fraction

from .base_lie import FiniteLieElement
from .kac_moody import KacMoodyElement
from .loop_algebra import LaurentLoop, laurent_loop
from .scalars import EC


def scalar_to_json(x: EC) -> list:
    return x.to_quad()


def scalar_from_json(q) -> EC:
    return EC.from_quad(q)


def matrix_to_json(entries) -> list:
    return [[x.to_quad() for x in row] for row in entries]


def matrix_from_json(rows) -> tuple:
    if not isinstance(rows, list) or not rows:
        raise ValueError("matrix must be a non-empty list of rows")
    out = tuple(tuple(EC.from_quad(q) for q in row) for row in rows)
    width = len(out[0])
    if any(len(row) != width for row in out):
        raise ValueError("matrix rows have unequal length")
    return out


def loop_to_json(f: LaurentLoop) -> list:
    return [
        {"deg": deg, "matrix": matrix_to_json(x.entries)}
        for deg, x in f.terms
    ]


def loop_from_json(data, tag: str = "sl", n=None) -> LaurentLoop:
    if not isinstance(data, list):
        raise ValueError("loop must be a list of degree records")
    coeffs = {}
    for record in data:
        deg = record["deg"]
        if not isinstance(deg, int):
            raise ValueError("loop degree must be an integer")
        entries = matrix_from_json(record["matrix"])
        coeffs[deg] = FiniteLieElement(entries, tag)
    return laurent_loop(coeffs, tag=tag, n=n)


def element_to_json(x: KacMoodyElement) -> dict:
    return {
        "loop": loop_to_json(x.loop),
        "rc": x.r_c.to_quad(),
        "rd": x.r_d.to_quad(),
    }


def element_from_json(data, tag: str = "sl", n=None) -> KacMoodyElement:
    loop = loop_from_json(data["loop"], tag=tag, n=n)
    return KacMoodyElement(
        loop, EC.from_quad(data.get("rc", [0, 1, 0, 1])),
        EC.from_quad(data.get("rd", [0, 1, 0, 1])))


def fixed_float(x) -> float:
    """Round to 12 significant digits so serialized bytes are stable."""
    return float("%.12e" % float(x))


def fraction_str(q) -> str:
    return str(Fraction(q))


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
