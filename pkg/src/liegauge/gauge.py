"""Contracted field monomials, field strengths and trace Lagrangians.

A monomial is a product of commuting factors ``A_idx`` or ``d_deriv A_idx``.
Index ids are opaque: ``int`` ids are dummies and must occur exactly twice in
a term (the pair is the contraction), ``str`` ids are free and occur once.
No metric is expanded; a contraction is just a pairing of two slots.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .liealg import StructureConstants
from .matrix import DimensionError, TrigMatrix
from .trigring import ONE, TrigScalar, ts_format, ts_latex

__all__ = [
    "IndexStructureError",
    "NegativeCouplingPowerError",
    "MissingLabelError",
    "Factor",
    "TensorTerm",
    "TensorPoly",
    "FieldStrengthSet",
    "VertexGroup",
    "VertexTable",
    "PolyComparison",
    "canonicalize",
    "field_strength",
    "lagrangian",
    "rename_fields",
    "vertex_table",
    "poly_equal",
    "contract",
    "strength_square",
    "FREE_INDICES",
]

Index = Union[int, str]
FREE_INDICES = ("mu", "nu")


class IndexStructureError(ValueError):
    pass


class NegativeCouplingPowerError(ValueError):
    pass


class MissingLabelError(KeyError):
    pass


@dataclass(frozen=True)
class Factor:
    field: str
    index: Index
    deriv: Index | None = None

    def __post_init__(self):
        if self.deriv is not None and self.deriv == self.index:
            raise IndexStructureError(f"factor {self.field} has equal derivative and vector index")

    @property
    def has_derivative(self) -> bool:
        return self.deriv is not None


def _label_key(x: Index | None) -> tuple:
    if x is None:
        return (0, "")
    return (1, x) if isinstance(x, str) else (2, x)


def _factors_key(factors: Sequence[Factor]) -> tuple:
    return tuple(
        (f.field, f.deriv is not None, _label_key(f.deriv), _label_key(f.index)) for f in factors
    )


def _check_indices(factors: Sequence[Factor]) -> None:
    counts = Counter()
    for f in factors:
        if f.deriv is not None:
            counts[f.deriv] += 1
        counts[f.index] += 1
    for idx, k in counts.items():
        if isinstance(idx, str):
            if k != 1:
                raise IndexStructureError(f"free index {idx!r} occurs {k} times")
        elif isinstance(idx, int) and not isinstance(idx, bool):
            if k != 2:
                raise IndexStructureError(f"dummy index {idx} occurs {k} times, expected 2")
        else:
            raise IndexStructureError(f"index ids must be int or str, got {idx!r}")


@dataclass(frozen=True)
class TensorTerm:
    coeff: TrigScalar
    g_power: int
    factors: tuple[Factor, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeff", TrigScalar.coerce(self.coeff))
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.coeff:
            raise ValueError("tensor term with zero coefficient")
        if self.g_power < 0:
            raise NegativeCouplingPowerError(f"negative power of g: {self.g_power}")
        _check_indices(self.factors)

    @property
    def fields(self) -> tuple[str, ...]:
        return tuple(sorted(f.field for f in self.factors))

    @property
    def derivative_count(self) -> int:
        return sum(f.deriv is not None for f in self.factors)

    @property
    def free_indices(self) -> frozenset[str]:
        out = set()
        for f in self.factors:
            for x in (f.deriv, f.index):
                if isinstance(x, str):
                    out.add(x)
        return frozenset(out)

    @property
    def signature(self) -> tuple:
        return (self.g_power, self.factors)

    def with_coeff(self, coeff, g_power: int | None = None) -> TensorTerm:
        return TensorTerm(coeff, self.g_power if g_power is None else g_power, self.factors)


def _canonical_factors(factors: Sequence[Factor]) -> tuple[Factor, ...]:
    # Only orderings that sort factors by (field, has_derivative) can minimise
    # the key, so permute within those blocks; dummies are renumbered by first
    # appearance, which absorbs every relabelling.
    ordered = sorted(factors, key=lambda f: (f.field, f.deriv is not None))
    blocks: list[list[Factor]] = []
    for f in ordered:
        if blocks and (blocks[-1][0].field, blocks[-1][0].deriv is None) == (f.field, f.deriv is None):
            blocks[-1].append(f)
        else:
            blocks.append([f])
    best_key, best = None, None
    seen = set()
    for choice in product(*(permutations(b) for b in blocks)):
        perm = [f for block in choice for f in block]
        ident = tuple(perm)
        if ident in seen:
            continue
        seen.add(ident)
        mapping: dict[int, int] = {}
        out = []
        for f in perm:
            d = f.deriv
            if isinstance(d, int):
                d = mapping.setdefault(d, len(mapping))
            i = f.index
            if isinstance(i, int):
                i = mapping.setdefault(i, len(mapping))
            out.append((f.field, d, i))
        key = tuple(
            (fld, d is not None, _label_key(d), _label_key(i)) for fld, d, i in out
        )
        if best_key is None or key < best_key:
            best_key, best = key, out
    return tuple(Factor(fld, i, d) for fld, d, i in best)


def canonicalize(t: TensorTerm) -> TensorTerm:
    """Canonical representative under factor reordering and dummy relabelling.

    Factors commute, so the coefficient is unchanged.
    """
    _check_indices(t.factors)
    return TensorTerm(t.coeff, t.g_power, _canonical_factors(t.factors))


def _sig_key(sig: tuple) -> tuple:
    return (sig[0], _factors_key(sig[1]))


class TensorPoly:
    """Coefficient-merged set of canonical terms, keyed by ``(g_power, factors)``."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[TensorTerm] = ()):
        acc: dict[tuple, TrigScalar] = {}
        for t in terms:
            ct = canonicalize(t)
            sig = ct.signature
            prev = acc.get(sig)
            acc[sig] = ct.coeff if prev is None else prev + ct.coeff
        self._terms = {sig: TensorTerm(c, sig[0], sig[1]) for sig, c in acc.items() if c}

    @classmethod
    def _from_canonical(cls, terms: dict) -> TensorPoly:
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @property
    def terms(self) -> list[TensorTerm]:
        return [self._terms[s] for s in sorted(self._terms, key=_sig_key)]

    def __iter__(self) -> Iterator[TensorTerm]:
        return iter(self.terms)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, term_or_factors) -> TrigScalar:
        """Coefficient of a monomial (given as a term or a factor list)."""
        if isinstance(term_or_factors, TensorTerm):
            probe = term_or_factors
        else:
            probe = TensorTerm(ONE, 0, tuple(term_or_factors))
        ct = canonicalize(probe)
        hit = self._terms.get(ct.signature)
        return hit.coeff if hit else TrigScalar.coerce(0)

    def __add__(self, other: TensorPoly) -> TensorPoly:
        out = dict(self._terms)
        for sig, t in other._terms.items():
            prev = out.get(sig)
            if prev is None:
                out[sig] = t
            else:
                c = prev.coeff + t.coeff
                if c:
                    out[sig] = t.with_coeff(c)
                else:
                    del out[sig]
        return TensorPoly._from_canonical(out)

    def __neg__(self) -> TensorPoly:
        return TensorPoly._from_canonical({s: t.with_coeff(-t.coeff) for s, t in self._terms.items()})

    def __sub__(self, other: TensorPoly) -> TensorPoly:
        return self + (-other)

    def scale(self, factor=ONE, g_shift: int = 0) -> TensorPoly:
        factor = TrigScalar.coerce(factor)
        out = {}
        for (g, fs), t in self._terms.items():
            c = t.coeff * factor
            if not c:
                continue
            if g + g_shift < 0:
                raise NegativeCouplingPowerError(
                    f"rescaling by g^{g_shift} leaves a term with g^{g + g_shift}"
                )
            out[(g + g_shift, fs)] = TensorTerm(c, g + g_shift, fs)
        return TensorPoly._from_canonical(out)

    def map_coeffs(self, fn) -> TensorPoly:
        return TensorPoly(t.with_coeff(c) for t in self._terms.values() if (c := TrigScalar.coerce(fn(t.coeff))))

    def relabel_indices(self, mapping: Mapping[Index, Index]) -> TensorPoly:
        def sub(x):
            return mapping.get(x, x) if x is not None else None

        return TensorPoly(
            TensorTerm(t.coeff, t.g_power, [Factor(f.field, sub(f.index), sub(f.deriv)) for f in t.factors])
            for t in self._terms.values()
        )

    def swap_indices(self, x: str, y: str) -> TensorPoly:
        return self.relabel_indices({x: y, y: x})

    def free_indices(self) -> frozenset[str]:
        out: set[str] = set()
        for t in self._terms.values():
            out |= t.free_indices
        return frozenset(out)

    def fields(self) -> frozenset[str]:
        return frozenset(f.field for t in self._terms.values() for f in t.factors)

    def __eq__(self, other):
        if not isinstance(other, TensorPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"TensorPoly({len(self)} terms)"

    # serialisation

    def to_json(self) -> dict:
        out = []
        for t in self.terms:
            slots: dict[int, list[int]] = {}
            pos = 0
            factors = []
            for f in t.factors:
                if f.deriv is not None:
                    if isinstance(f.deriv, int):
                        slots.setdefault(f.deriv, []).append(pos)
                    pos += 1
                if isinstance(f.index, int):
                    slots.setdefault(f.index, []).append(pos)
                pos += 1
                factors.append({"field": f.field, "deriv": f.deriv, "index": f.index})
            out.append(
                {
                    "coeff": t.coeff.to_json(),
                    "g": t.g_power,
                    "factors": factors,
                    "pairs": [slots[k] for k in sorted(slots)],
                }
            )
        return {"terms": out}

    @classmethod
    def from_json(cls, data: Mapping) -> TensorPoly:
        terms = []
        for item in data["terms"]:
            coeff = item["coeff"]
            coeff = TrigScalar.coerce(coeff) if isinstance(coeff, str) else TrigScalar.from_json(coeff)
            factors = [Factor(f["field"], f["index"], f.get("deriv")) for f in item["factors"]]
            term = TensorTerm(coeff, int(item.get("g", 0)), factors)
            if "pairs" in item:
                _check_pairs(factors, item["pairs"])
            terms.append(term)
        return cls(terms)

    def to_text(self) -> str:
        return "\n".join(_term_text(t) for t in self.terms)

    def to_latex(self) -> str:
        if not self._terms:
            return "0"
        return "".join(_term_latex(t, first=(k == 0)) for k, t in enumerate(self.terms))


def _check_pairs(factors: Sequence[Factor], pairs) -> None:
    slot_ids = []
    for f in factors:
        if f.deriv is not None:
            slot_ids.append(f.deriv)
        slot_ids.append(f.index)
    expected = sorted(
        sorted(p for p, x in enumerate(slot_ids) if x == idx)
        for idx in {x for x in slot_ids if isinstance(x, int)}
    )
    if sorted(sorted(p) for p in pairs) != expected:
        raise IndexStructureError(f"'pairs' {pairs} disagree with the factor index ids")


_DUMMY_NAMES = "abcdefghjk"


def _index_text(x: Index) -> str:
    if isinstance(x, str):
        return x
    return _DUMMY_NAMES[x] if x < len(_DUMMY_NAMES) else f"i{x}"


def _factor_text(f: Factor) -> str:
    body = f"{f.field}_{_index_text(f.index)}"
    if f.deriv is None:
        return body
    return f"d_{_index_text(f.deriv)}({body})"


def _term_text(t: TensorTerm) -> str:
    return f"[{ts_format(t.coeff)}] g^{t.g_power} " + " ".join(_factor_text(f) for f in t.factors)


_GREEK = [r"\mu", r"\nu", r"\rho", r"\sigma", r"\alpha", r"\beta", r"\gamma", r"\delta", r"\kappa", r"\lambda"]


def _latex_field(label: str, idx: str, upper: bool) -> str:
    base, charge = (label[:-1], label[-1]) if label[-1:] in "+-" and len(label) > 1 else (label, "")
    if charge:
        return f"{base}^{{{charge}{idx}}}" if upper else f"{base}^{{{charge}}}_{{{idx}}}"
    return f"{base}^{{{idx}}}" if upper else f"{base}_{{{idx}}}"


def _monomial_latex(factors: Sequence[Factor]) -> str:
    free = [x for f in factors for x in (f.deriv, f.index) if isinstance(x, str)]
    pool = [g for g in _GREEK if g.strip("\\") not in free]
    seen: set[int] = set()

    def name(x):
        if isinstance(x, str):
            return "\\" + x if x in ("mu", "nu") else x, False
        upper = x in seen
        seen.add(x)
        return (pool[x] if x < len(pool) else f"i_{{{x}}}"), upper

    out = []
    for f in factors:
        if f.deriv is not None:
            d, up = name(f.deriv)
            out.append(f"\\partial^{{{d}}}" if up else f"\\partial_{{{d}}}")
        i, up = name(f.index)
        out.append(_latex_field(f.field, i, up))
    return "".join(out)


def _glue(left: str, right: str) -> str:
    # keep a control word such as \theta from swallowing the next letter
    if left and right and left[-1].isalpha() and right[0].isalpha():
        return f"{left} {right}"
    return left + right


def _coeff_latex(coeff: TrigScalar, g_power: int) -> tuple[str, str]:
    """Sign and magnitude for a coefficient times ``g^k``."""
    g = "" if g_power == 0 else ("g" if g_power == 1 else f"g^{{{g_power}}}")
    body = ts_latex(coeff)
    if len(coeff.terms) > 1:
        return "+", _glue(rf"\left({body}\right)", g)
    sign = "-" if body.startswith("-") else "+"
    body = body.lstrip("-")
    if body == "1":
        body = ""
    return sign, _glue(body, g)


def _term_latex(t: TensorTerm, first: bool) -> str:
    sign, mag = _coeff_latex(t.coeff, t.g_power)
    body = _glue(mag, _monomial_latex(t.factors))
    if first:
        return ("-" if sign == "-" else "") + body
    return f" {sign} {body}"


def rename_fields(p: TensorPoly, mapping: Mapping[str, str]) -> TensorPoly:
    missing = sorted(p.fields() - set(mapping))
    if missing:
        raise MissingLabelError(f"no new name given for field(s) {missing}")
    return TensorPoly(
        TensorTerm(t.coeff, t.g_power, [Factor(mapping[f.field], f.index, f.deriv) for f in t.factors])
        for t in p._terms.values()
    )


def _shift_dummies(t: TensorTerm, offset: int, free_map: Mapping[str, int]) -> list[Factor]:
    def sub(x):
        if x is None:
            return None
        if isinstance(x, str):
            return free_map.get(x, x)
        return x + offset

    return [Factor(f.field, sub(f.index), sub(f.deriv)) for f in t.factors]


def contract(p: TensorPoly, q: TensorPoly) -> TensorPoly:
    """Product ``p * q`` with every free index shared by both sides contracted."""
    shared = sorted(p.free_indices() & q.free_indices())
    out = []
    for tp in p._terms.values():
        np_ = _max_dummy(tp) + 1
        for tq in q._terms.values():
            nq = _max_dummy(tq) + 1
            base = np_ + nq
            free_map = {x: base + k for k, x in enumerate(shared)}
            fs = _shift_dummies(tp, 0, free_map) + _shift_dummies(tq, np_, free_map)
            out.append(TensorTerm(tp.coeff * tq.coeff, tp.g_power + tq.g_power, fs))
    return TensorPoly(out)


def _max_dummy(t: TensorTerm) -> int:
    ids = [x for f in t.factors for x in (f.deriv, f.index) if isinstance(x, int)]
    return max(ids, default=-1)


def strength(field: str, mu: Index = "mu", nu: Index = "nu") -> TensorPoly:
    """Abelian curl ``d_mu X_nu - d_nu X_mu``."""
    return TensorPoly(
        [
            TensorTerm(ONE, 0, [Factor(field, nu, mu)]),
            TensorTerm(-ONE, 0, [Factor(field, mu, nu)]),
        ]
    )


def strength_square(x: str, y: str) -> TensorPoly:
    """``X_{mu nu} Y^{mu nu}`` expanded into monomials."""
    return contract(strength(x), strength(y))


@dataclass(frozen=True)
class FieldStrengthSet:
    labels: tuple[str, ...]
    fields: tuple[str, ...]
    polys: tuple[TensorPoly, ...]

    def __post_init__(self):
        for name, p in zip(self.fields, self.polys):
            if p.swap_indices(*FREE_INDICES) != -p:
                raise IndexStructureError(f"field strength of {name} is not antisymmetric")

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, key: int | str) -> TensorPoly:
        if isinstance(key, int):
            return self.polys[key]
        if key in self.labels:
            return self.polys[self.labels.index(key)]
        if key in self.fields:
            return self.polys[self.fields.index(key)]
        raise KeyError(key)


def _resolve_names(sc: StructureConstants, names) -> tuple[str, ...]:
    if names is None:
        return sc.labels
    if isinstance(names, Mapping):
        missing = [lab for lab in sc.labels if lab not in names]
        if missing:
            raise MissingLabelError(f"no field name for generator(s) {missing}")
        return tuple(names[lab] for lab in sc.labels)
    names = tuple(names)
    if len(names) != sc.dim:
        raise DimensionError(f"{len(names)} field names for {sc.dim} generators")
    return names


def field_strength(sc: StructureConstants, names=None) -> FieldStrengthSet:
    """``F^a_{mu nu} = g[d_mu A^a_nu - d_nu A^a_mu + g f^a_{bc} A^b_mu A^c_nu]``."""
    fields = _resolve_names(sc, names)
    mu, nu = FREE_INDICES
    polys = []
    for a in range(sc.dim):
        terms = [
            TensorTerm(ONE, 1, [Factor(fields[a], nu, mu)]),
            TensorTerm(-ONE, 1, [Factor(fields[a], mu, nu)]),
        ]
        for b in range(sc.dim):
            for c in range(sc.dim):
                f = sc.lookup(b, c, a)
                if f:
                    terms.append(TensorTerm(f, 2, [Factor(fields[b], mu), Factor(fields[c], nu)]))
        polys.append(TensorPoly(terms))
    return FieldStrengthSet(sc.labels, fields, tuple(polys))


def lagrangian(
    fs: FieldStrengthSet,
    trace_matrix: TrigMatrix,
    scale=Fraction(1, 8),
    g_shift: int = -2,
) -> TensorPoly:
    """``scale * g^g_shift * sum_ab t_ab F^a_{mu nu} F^{b mu nu}``.

    The defaults give the ``1/(8 g^2)`` normalisation.
    """
    if trace_matrix.n != len(fs):
        raise DimensionError(f"trace matrix is {trace_matrix.n}x{trace_matrix.n} for {len(fs)} fields")
    if not trace_matrix.is_symmetric():
        raise ValueError("trace matrix must be symmetric")
    want = frozenset(FREE_INDICES)
    for name, p in zip(fs.fields, fs.polys):
        for t in p:
            if t.free_indices != want:
                raise IndexStructureError(
                    f"term of F[{name}] has free indices {sorted(t.free_indices)}, expected {sorted(want)}"
                )
    total = TensorPoly()
    for a in range(len(fs)):
        for b in range(len(fs)):
            t_ab = trace_matrix[a, b]
            if t_ab:
                total = total + contract(fs.polys[a], fs.polys[b]).scale(t_ab)
    return total.scale(scale, g_shift)


_KINDS = {(2, 2): "kinetic", (3, 1): "cubic", (4, 0): "quartic"}


@dataclass(frozen=True)
class VertexGroup:
    fields: tuple[str, ...]
    derivatives: int
    terms: tuple[TensorTerm, ...]

    @property
    def kind(self) -> str:
        return _KINDS.get((len(self.fields), self.derivatives), "other")

    @property
    def poly(self) -> TensorPoly:
        return TensorPoly(self.terms)


@dataclass(frozen=True)
class VertexTable:
    groups: tuple[VertexGroup, ...]

    def __len__(self):
        return len(self.groups)

    def __iter__(self):
        return iter(self.groups)

    def group(self, fields: Iterable[str], derivatives: int | None = None) -> VertexGroup | None:
        want = tuple(sorted(fields))
        for g in self.groups:
            if g.fields == want and (derivatives is None or g.derivatives == derivatives):
                return g
        return None

    def keys(self) -> list[tuple[tuple[str, ...], int]]:
        return [(g.fields, g.derivatives) for g in self.groups]

    def of_kind(self, kind: str) -> list[VertexGroup]:
        return [g for g in self.groups if g.kind == kind]

    def neutral_kinetic_mixing(self) -> list[VertexGroup]:
        """Kinetic groups between two distinct fields that each have a diagonal kinetic term."""
        diagonal = {g.fields[0] for g in self.of_kind("kinetic") if g.fields[0] == g.fields[1]}
        return [
            g
            for g in self.of_kind("kinetic")
            if g.fields[0] != g.fields[1] and set(g.fields) <= diagonal
        ]

    def to_text(self) -> str:
        lines = []
        for g in self.groups:
            lines.append(f"{g.kind} {' '.join(g.fields)} ({g.derivatives} derivatives, {len(g.terms)} terms)")
            lines.extend("    " + _term_text(t) for t in g.terms)
        return "\n".join(lines)

    def to_latex(self) -> str:
        rows = []
        for g in self.groups:
            rows.append(_group_latex(g))
        out = [r"\mathcal{L} &= " + rows[0]] if rows else [r"\mathcal{L} &= 0"]
        out += [r"&\quad " + (r if r.startswith("-") else "+ " + r) for r in rows[1:]]
        return " \\\\\n".join(out)

    def to_json(self) -> list[dict]:
        return [
            {
                "kind": g.kind,
                "fields": list(g.fields),
                "derivatives": g.derivatives,
                "terms": g.poly.to_json()["terms"],
            }
            for g in self.groups
        ]


_LATEX_STRENGTH = {"A": r"\mathcal{F}"}


def _strength_latex(field: str, upper: bool) -> str:
    base = _LATEX_STRENGTH.get(field, field)
    idx = r"\mu\nu"
    if field[-1:] in "+-" and len(field) > 1:
        base, charge = field[:-1], field[-1]
        return f"{base}^{{{charge}{idx}}}" if upper else f"{base}^{{{charge}}}_{{{idx}}}"
    return f"{base}^{{{idx}}}" if upper else f"{base}_{{{idx}}}"


def _constant_ratio(p: TensorPoly, q: TensorPoly) -> TrigScalar | None:
    """``k`` with ``p == k * q`` if one exists (``q`` nonzero)."""
    qt = q.terms
    if not qt:
        return None
    k = p.coefficient(qt[0]) / qt[0].coeff if qt[0].coeff.is_constant() else None
    if k is None or not k:
        return None
    return k if p == q.scale(k, p.terms[0].g_power - qt[0].g_power if p.terms else 0) else None


def _group_latex(g: VertexGroup) -> str:
    if g.kind == "kinetic":
        x, y = g.fields
        k = _constant_ratio(g.poly, strength_square(x, y))
        if k is not None:
            sign, mag = _coeff_latex(k, 0)
            body = _glue(mag, _strength_latex(x, False) + _strength_latex(y, True))
            return ("-" if sign == "-" else "") + body
    return g.poly.to_latex()


def vertex_table(p: TensorPoly) -> VertexTable:
    if p.free_indices():
        raise IndexStructureError(f"vertex table needs a fully contracted poly; free: {sorted(p.free_indices())}")
    buckets: dict[tuple, list[TensorTerm]] = {}
    for t in p.terms:
        buckets.setdefault((t.fields, t.derivative_count), []).append(t)
    order = {"kinetic": 0, "cubic": 1, "quartic": 2, "other": 3}
    groups = [VertexGroup(f, d, tuple(ts)) for (f, d), ts in buckets.items()]
    groups.sort(key=lambda g: (order[g.kind], g.fields, g.derivatives))
    return VertexTable(tuple(groups))


@dataclass(frozen=True)
class PolyComparison:
    equal: bool
    only_left: tuple[TensorTerm, ...]
    only_right: tuple[TensorTerm, ...]

    def __bool__(self):
        return self.equal

    @property
    def diff(self) -> tuple[TensorTerm, ...]:
        return self.only_left + self.only_right

    def to_text(self) -> str:
        lines = [f"- {_term_text(t)}" for t in self.only_left]
        lines += [f"+ {_term_text(t)}" for t in self.only_right]
        return "\n".join(lines)


def poly_equal(p: TensorPoly, q: TensorPoly) -> PolyComparison:
    """Compare term multisets; a coefficient mismatch shows up on both sides."""
    left = {(s, t.coeff) for s, t in p._terms.items()}
    right = {(s, t.coeff) for s, t in q._terms.items()}
    only_left = tuple(t for t in p.terms if (t.signature, t.coeff) not in right)
    only_right = tuple(t for t in q.terms if (t.signature, t.coeff) not in left)
    return PolyComparison(not only_left and not only_right, only_left, only_right)
