"""Hand transcription of the massless electroweak Lagrangian as printed.

Written independently of ``field_strength``/``lagrangian``: each printed
bracket is typed as a small sum of monomials and multiplied out here.
Monomial syntax: ``W-_m`` is a field with index m, ``dm(Z_n)`` a derivative.
A letter used twice in a product is a contraction.

Run ``python golden/transcribe_ew_massless.py`` to regenerate the JSON.
"""

from __future__ import annotations

import json
import re
import sys
from pathlib import Path

from liegauge.gauge import Factor, TensorPoly, TensorTerm
from liegauge.trigring import TrigScalar

_TOKEN = re.compile(r"^(?:d([a-z])\((\S+?)_([a-z])\)|(\S+?)_([a-z]))$")


def S(*pairs):
    """Sum of ``(coeff, "monomial")`` pairs, as a list of (scalar, tokens)."""
    return [(TrigScalar.coerce(c), m.split()) for c, m in pairs]


def times(*sums):
    out = [(TrigScalar.coerce(1), [])]
    for s in sums:
        out = [(c1 * c2, t1 + t2) for c1, t1 in out for c2, t2 in s]
    return out


def curl(field, i, j):
    """``d_i X_j - d_j X_i``."""
    return S((1, f"d{i}({field}_{j})"), (-1, f"d{j}({field}_{i})"))


def to_poly(sum_, coeff, g_power):
    coeff = TrigScalar.coerce(coeff)
    terms = []
    for c, tokens in sum_:
        ids: dict[str, int] = {}
        factors = []
        for tok in tokens:
            m = _TOKEN.match(tok)
            if m is None:
                raise ValueError(f"bad token {tok!r}")
            if m.group(1):
                d, field, idx = m.group(1), m.group(2), m.group(3)
                factors.append(Factor(field, ids.setdefault(idx, len(ids)), ids.setdefault(d, len(ids))))
            else:
                field, idx = m.group(4), m.group(5)
                factors.append(Factor(field, ids.setdefault(idx, len(ids))))
        terms.append(TensorTerm(coeff * c, g_power, factors))
    return TensorPoly(terms)


def pieces() -> dict[str, TensorPoly]:
    W_ = S((1, "W-_m W+_n"), (-1, "W-_n W+_m"))
    cubic_bracket = lambda V: (  # noqa: E731
        times(W_, S((1, f"dm({V}_n)")))
        + times(curl("W+", "m", "n"), S((1, f"W-_n {V}_m")))
        + times(curl("W-", "m", "n"), S((-1, f"W+_n {V}_m")))
    )
    return {
        "kinetic A": to_poly(times(curl("A", "m", "n"), curl("A", "m", "n")), "-1/4", 0),
        "kinetic Z": to_poly(times(curl("Z", "m", "n"), curl("Z", "m", "n")), "-1/4", 0),
        "kinetic W": to_poly(times(curl("W+", "m", "n"), curl("W-", "m", "n")), "-1/2", 0),
        "cubic cos": to_poly(cubic_bracket("Z"), "i*cos", 1),
        "cubic sin": to_poly(cubic_bracket("A"), "i*sin", 1),
        "quartic cos^2": to_poly(S((1, "W+_m W-_n Z_m Z_n"), (-1, "W+_m W-_m Z_n Z_n")), "cos^2", 2),
        "quartic sin^2": to_poly(S((1, "W+_m W-_n A_m A_n"), (-1, "W+_m W-_m A_n A_n")), "sin^2", 2),
        "quartic sin*cos": to_poly(
            S((1, "W+_m W-_n Z_m A_n"), (1, "W+_m W-_n A_m Z_n"), (-2, "W+_m W-_m A_n Z_n")),
            "sin*cos",
            2,
        ),
        "quartic W^4": to_poly(
            times(S((1, "W-_m W+_n")), S((1, "W-_m W+_n"), (-1, "W-_n W+_m"))), "1/2", 2
        ),
    }


def build() -> dict:
    total = TensorPoly()
    for p in pieces().values():
        total = total + p
    data = total.to_json()
    return {"description": "massless electroweak Lagrangian density, printed form", **data}


def dump(data: dict) -> str:
    # one term per line keeps diffs of the golden file readable
    rows = ",\n  ".join(json.dumps(t, sort_keys=True) for t in data["terms"])
    return f'{{\n "description": {json.dumps(data["description"])},\n "terms": [\n  {rows}\n ]\n}}\n'


def main(argv=None) -> int:
    out = Path(__file__).with_name("ew-massless.json")
    text = dump(build())
    if argv and argv[0] == "--check":
        return 0 if out.read_text() == text else 1
    out.write_text(text)
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
