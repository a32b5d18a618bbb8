"""Lie algebras given by structure constants, and their matrix representations.

Conventions used throughout:

* ``[X_a, X_b] = f^c_{ab} X_c``; ``lookup(a, b, c)`` returns ``f^c_{ab}``.
* A basis change is ``X'_a = sum_d M[a, d] X_d``.
* Adjoint matrices are ``(rho_a)[b, c] = f^b_{ac}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .matrix import DimensionError, TrigMatrix, commutator
from .trigring import ONE, ZERO, TrigScalar, ts_format

__all__ = [
    "AntisymmetryError",
    "StructureConstants",
    "Representation",
    "BasisTransform",
    "KillingForm",
    "JacobiViolation",
    "JacobiReport",
    "RepFailure",
    "RepReport",
    "RepComparison",
    "jacobi_check",
    "killing_form",
    "adjoint_rep",
    "rep_check",
    "transform_constants",
    "transform_rep",
    "adjoint_action",
    "reps_equal",
    "compare_reps",
    "trace_table",
    "specialize",
    "specialize_rep",
]


class AntisymmetryError(ValueError):
    """Structure-constant input that is not antisymmetric in its lower pair."""


def _scaled_label(v: TrigScalar, label: str, first: bool) -> str:
    text = ts_format(v)
    if len(v.terms) > 1:
        text = f"({text})"
    neg = text.startswith("-")
    text = text.lstrip("-")
    body = label if text == "1" else f"{text}*{label}"
    if first:
        return ("-" if neg else "") + body
    return (" - " if neg else " + ") + body


class StructureConstants:
    """Sparse table of ``f^c_{ab}``; only ``a < b`` is stored."""

    __slots__ = ("labels", "_entries", "_brackets")

    def __init__(self, labels: Sequence[str], entries: Mapping[tuple[int, int, int], object] = ()):
        self.labels = tuple(labels)
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"duplicate generator labels in {self.labels}")
        dim = len(self.labels)
        stored: dict[tuple[int, int, int], TrigScalar] = {}
        for (a, b, c), v in dict(entries).items():
            if not all(0 <= x < dim for x in (a, b, c)):
                raise IndexError(f"index {(a, b, c)} out of range for dim {dim}")
            if a >= b:
                raise AntisymmetryError(f"stored entries need a < b, got {(a, b, c)}")
            v = TrigScalar.coerce(v)
            if v:
                stored[(a, b, c)] = v
        self._entries = stored
        self._brackets = None

    @classmethod
    def from_entries(
        cls, labels: Sequence[str], entries: Iterable[tuple[int, int, int, object]]
    ) -> StructureConstants:
        """Build from ``(a, b, c, f^c_ab)`` in any orientation, validating antisymmetry."""
        seen: dict[tuple[int, int, int], TrigScalar] = {}
        for a, b, c, v in entries:
            v = TrigScalar.coerce(v)
            if a == b:
                if v:
                    raise AntisymmetryError(
                        f"f^{labels[c]}_{{{labels[a]}{labels[a]}}} = {ts_format(v)} must vanish"
                    )
                continue
            key, val = ((a, b, c), v) if a < b else ((b, a, c), -v)
            if key in seen and seen[key] != val:
                raise AntisymmetryError(
                    f"inconsistent values for f^{labels[c]} on the pair "
                    f"({labels[key[0]]}, {labels[key[1]]}): {ts_format(seen[key])} vs {ts_format(val)}"
                )
            seen[key] = val
        return cls(labels, seen)

    @classmethod
    def abelian(cls, labels: Sequence[str]) -> StructureConstants:
        return cls(labels, {})

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def entries(self) -> Mapping[tuple[int, int, int], TrigScalar]:
        return MappingProxyType(self._entries)

    def index(self, label: str | int) -> int:
        if isinstance(label, int):
            return label
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown generator label {label!r}") from None

    def lookup(self, a: int, b: int, c: int) -> TrigScalar:
        if a == b:
            return ZERO
        if a < b:
            return self._entries.get((a, b, c), ZERO)
        return -self._entries.get((b, a, c), ZERO)

    def bracket(self, a: int, b: int) -> Mapping[int, TrigScalar]:
        """Nonzero ``{c: f^c_ab}`` for the ordered pair ``(a, b)``."""
        if self._brackets is None:
            full: dict[tuple[int, int], dict[int, TrigScalar]] = {}
            for (x, y, c), v in self._entries.items():
                full.setdefault((x, y), {})[c] = v
                full.setdefault((y, x), {})[c] = -v
            self._brackets = full
        return self._brackets.get((a, b), {})

    def is_abelian(self) -> bool:
        return not self._entries

    def map_scalars(self, fn) -> StructureConstants:
        return StructureConstants(self.labels, {k: fn(v) for k, v in self._entries.items()})

    def relabel(self, labels: Sequence[str]) -> StructureConstants:
        if len(labels) != self.dim:
            raise DimensionError("label count does not match dimension")
        return StructureConstants(labels, self._entries)

    def __eq__(self, other):
        if not isinstance(other, StructureConstants):
            return NotImplemented
        return self.labels == other.labels and self._entries == other._entries

    def __hash__(self):
        return hash((self.labels, frozenset(self._entries.items())))

    def __repr__(self):
        return f"StructureConstants(dim={self.dim}, nonzero={len(self._entries)})"

    def commutation_relations(self) -> list[str]:
        """Human-readable ``[Xa,Xb] = ...`` lines for every pair ``a < b``."""
        lines = []
        for a, b in combinations(range(self.dim), 2):
            rhs = ""
            for c in range(self.dim):
                v = self.lookup(a, b, c)
                if v:
                    rhs += _scaled_label(v, self.labels[c], first=not rhs)
            rhs = rhs or "0"
            lines.append(f"[{self.labels[a]},{self.labels[b]}] = {rhs}")
        return lines

    def to_json(self) -> dict:
        lab = self.labels
        return {
            "dim": self.dim,
            "labels": list(lab),
            "constants": [
                {"a": lab[a], "b": lab[b], "c": lab[c], "value": v.to_json()}
                for (a, b, c), v in sorted(self._entries.items())
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> StructureConstants:
        labels = list(data["labels"])
        if "dim" in data and data["dim"] != len(labels):
            raise DimensionError(f"dim={data['dim']} but {len(labels)} labels given")
        pos = {name: i for i, name in enumerate(labels)}

        def idx(name):
            if name not in pos:
                raise KeyError(f"constant refers to unknown label {name!r}")
            return pos[name]

        rows = []
        for item in data.get("constants", []):
            value = item["value"]
            value = TrigScalar.coerce(value) if isinstance(value, str) else TrigScalar.from_json(value)
            rows.append((idx(item["a"]), idx(item["b"]), idx(item["c"]), value))
        return cls.from_entries(labels, rows)


@dataclass(frozen=True)
class Representation:
    """One square matrix per generator, in the algebra's basis order."""

    labels: tuple[str, ...]
    matrices: tuple[TrigMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "matrices", tuple(self.matrices))
        if len(self.labels) != len(self.matrices):
            raise DimensionError(
                f"{len(self.matrices)} matrices for {len(self.labels)} generators"
            )
        sizes = {m.n for m in self.matrices}
        if len(sizes) > 1:
            raise DimensionError(f"matrices of unequal sizes {sorted(sizes)}")

    @property
    def algebra_dim(self) -> int:
        return len(self.matrices)

    @property
    def size(self) -> int:
        return self.matrices[0].n

    def __getitem__(self, a: int) -> TrigMatrix:
        return self.matrices[a]

    def map_scalars(self, fn) -> Representation:
        return Representation(self.labels, [m.map(fn) for m in self.matrices])

    def to_json(self) -> dict:
        return {"algebra": list(self.labels), "matrices": [m.to_json() for m in self.matrices]}

    @classmethod
    def from_json(cls, data: Mapping) -> Representation:
        return cls(tuple(data["algebra"]), [TrigMatrix.from_json(m) for m in data["matrices"]])


class BasisTransform:
    """Invertible change of basis ``X'_a = sum_d forward[a, d] X_d``."""

    __slots__ = ("forward", "inverse")

    def __init__(self, forward: TrigMatrix, inverse: TrigMatrix | None = None):
        self.forward = forward
        if inverse is None:
            inverse = forward.inverse()
        elif forward @ inverse != TrigMatrix.identity(forward.n):
            raise ValueError("supplied inverse does not invert the forward matrix")
        self.inverse = inverse

    @classmethod
    def identity(cls, n: int) -> BasisTransform:
        eye = TrigMatrix.identity(n)
        return cls(eye, eye)

    @property
    def n(self) -> int:
        return self.forward.n

    def inverted(self) -> BasisTransform:
        return BasisTransform(self.inverse, self.forward)

    def map_scalars(self, fn) -> BasisTransform:
        return BasisTransform(self.forward.map(fn))


@dataclass(frozen=True)
class KillingForm:
    matrix: TrigMatrix
    determinant: TrigScalar

    @property
    def is_semisimple(self) -> bool:
        return bool(self.determinant)


@dataclass(frozen=True)
class JacobiViolation:
    a: int
    b: int
    c: int
    l: int
    residual: TrigScalar


@dataclass(frozen=True)
class JacobiReport:
    violations: tuple[JacobiViolation, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.passed


@dataclass(frozen=True)
class RepFailure:
    a: int
    b: int
    residual: TrigMatrix


@dataclass(frozen=True)
class RepReport:
    failures: tuple[RepFailure, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.passed


@dataclass(frozen=True)
class RepComparison:
    equal: bool
    reason: str
    differing: tuple[int, ...] = field(default=())

    def __bool__(self):
        return self.equal


def jacobi_check(sc: StructureConstants) -> JacobiReport:
    """Exact Jacobi test.

    The cyclic sum is totally antisymmetric in ``(a, b, c)`` once ``f`` is
    antisymmetric, so triples ``a < b < c`` cover every case.
    """
    n = sc.dim
    violations = []
    for a, b, c in combinations(range(n), 3):
        acc: dict[int, TrigScalar] = {}
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            for m, f1 in sc.bracket(x, y).items():
                for l, f2 in sc.bracket(m, z).items():
                    acc[l] = acc.get(l, ZERO) + f1 * f2
        for l in range(n):
            r = acc.get(l, ZERO)
            if r:
                violations.append(JacobiViolation(a, b, c, l, r))
    return JacobiReport(tuple(violations))


def killing_form(sc: StructureConstants) -> KillingForm:
    """``g_ab = f^c_{ad} f^d_{bc}`` summed over ``c`` and ``d``."""
    n = sc.dim
    rows = [[ZERO] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            acc = ZERO
            for d in range(n):
                for c, f1 in sc.bracket(a, d).items():
                    f2 = sc.lookup(b, c, d)
                    if f2:
                        acc = acc + f1 * f2
            rows[a][b] = acc
    g = TrigMatrix(rows)
    return KillingForm(g, g.determinant())


def adjoint_rep(sc: StructureConstants) -> Representation:
    n = sc.dim
    mats = []
    for a in range(n):
        entries = {}
        for c in range(n):
            for b, v in sc.bracket(a, c).items():
                entries[(b, c)] = v
        mats.append(TrigMatrix.from_entries(n, entries))
    return Representation(sc.labels, mats)


def _linear_combination(coeffs: Sequence[TrigScalar], mats: Sequence[TrigMatrix]) -> TrigMatrix:
    n = mats[0].n
    out = TrigMatrix.zeros(n)
    for k, m in zip(coeffs, mats):
        if k:
            out = out + m.scale(k)
    return out


def rep_check(sc: StructureConstants, rep: Representation) -> RepReport:
    """Test ``[rho_a, rho_b] == f^c_ab rho_c`` for all ``a < b``."""
    if rep.algebra_dim != sc.dim:
        raise DimensionError(f"representation has {rep.algebra_dim} matrices, algebra dim {sc.dim}")
    failures = []
    for a, b in combinations(range(sc.dim), 2):
        lhs = commutator(rep[a], rep[b])
        rhs = _linear_combination([sc.lookup(a, b, c) for c in range(sc.dim)], rep.matrices)
        residual = lhs - rhs
        if not residual.is_zero():
            failures.append(RepFailure(a, b, residual))
    return RepReport(tuple(failures))


def transform_constants(sc: StructureConstants, t: BasisTransform) -> StructureConstants:
    """``f'^c_ab = M_ad M_be f^g_de (M^-1)_gc``."""
    if t.n != sc.dim:
        raise DimensionError(f"transform is {t.n}x{t.n}, algebra dim {sc.dim}")
    n = sc.dim
    M, Minv = t.forward, t.inverse
    out = {}
    for a, b in combinations(range(n), 2):
        old = [ZERO] * n
        for d in range(n):
            mad = M[a, d]
            if not mad:
                continue
            for e in range(n):
                mbe = M[b, e]
                if not mbe:
                    continue
                k = mad * mbe
                for g, f in sc.bracket(d, e).items():
                    old[g] = old[g] + k * f
        for c in range(n):
            acc = ZERO
            for g in range(n):
                if old[g]:
                    acc = acc + old[g] * Minv[g, c]
            if acc:
                out[(a, b, c)] = acc
    return StructureConstants(sc.labels, out)


def transform_rep(rep: Representation, t: BasisTransform) -> Representation:
    if t.n != rep.algebra_dim:
        raise DimensionError(f"transform is {t.n}x{t.n}, representation has {rep.algebra_dim}")
    mats = [
        _linear_combination([t.forward[a, d] for d in range(t.n)], rep.matrices)
        for a in range(t.n)
    ]
    return Representation(rep.labels, mats)


def adjoint_action(sc: StructureConstants, a: int | str, v: Sequence[object]) -> list[TrigScalar]:
    """Action of generator ``a`` on a component vector: ``out^b = f^b_{ac} v^c``."""
    if len(v) != sc.dim:
        raise DimensionError(f"vector has {len(v)} components, algebra dim {sc.dim}")
    a = sc.index(a)
    vec = [TrigScalar.coerce(x) for x in v]
    out = [ZERO] * sc.dim
    for c in range(sc.dim):
        if not vec[c]:
            continue
        for b, f in sc.bracket(a, c).items():
            out[b] = out[b] + f * vec[c]
    return out


def compare_reps(r1: Representation, r2: Representation) -> RepComparison:
    if r1.algebra_dim != r2.algebra_dim:
        return RepComparison(False, "different algebra dimensions")
    if r1.size != r2.size:
        return RepComparison(False, f"different carrier sizes ({r1.size} vs {r2.size})")
    diff = tuple(a for a in range(r1.algebra_dim) if r1[a] != r2[a])
    if diff:
        return RepComparison(False, "matrices differ entrywise", diff)
    return RepComparison(True, "identical")


def reps_equal(r1: Representation, r2: Representation) -> bool:
    return compare_reps(r1, r2).equal


def trace_table(rep: Representation) -> TrigMatrix:
    """``t_ab = tr(rho_a rho_b)``."""
    n = rep.algebra_dim
    return TrigMatrix([[(rep[a] @ rep[b]).trace() for b in range(n)] for a in range(n)])


def _specializer(c_value, s_value):
    cv, sv = TrigScalar.coerce(c_value), TrigScalar.coerce(s_value)
    if not (cv.is_constant() and sv.is_constant()):
        raise ValueError("specialisation values must be free of cos and sin")
    if cv * cv + sv * sv != ONE:
        raise ValueError(
            f"cos^2 + sin^2 != 1 for cos={ts_format(cv)}, sin={ts_format(sv)}"
        )
    return lambda x: x.substitute(cos=cv, sin=sv)


def specialize(sc: StructureConstants, c_value, s_value) -> StructureConstants:
    """Substitute fixed values for cos and sin (requires ``c^2 + s^2 = 1``)."""
    return sc.map_scalars(_specializer(c_value, s_value))


def specialize_rep(rep: Representation, c_value, s_value) -> Representation:
    return rep.map_scalars(_specializer(c_value, s_value))
