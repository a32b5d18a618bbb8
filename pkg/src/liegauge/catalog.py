"""Built-in algebras, representations and transforms, plus the neutral-field
mixing constraints and their three solution families.

Every fixture is transcribed entry by entry from its printed form; the
derived ones (``ga_fundamental_computed``) are computed, never typed in.
Generators are ordered ``X1, X2, X3, X0`` everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping, Sequence

from .liealg import BasisTransform, Representation, StructureConstants, transform_rep
from .matrix import TrigMatrix, matrix_from_strings
from .trigring import COS, ONE, SIN, SQRT2, TrigScalar, exact_angle, sqrt, ts_format

__all__ = [
    "LABELS",
    "STANDARD_NAMES",
    "MixingCandidate",
    "ConstraintResult",
    "MixingReport",
    "FamilyMember",
    "CaseFamily",
    "check_mixing_constraints",
    "case_families",
    "case_algebra",
    "CASE_ANGLES",
    "fixtures",
]

LABELS = ("X1", "X2", "X3", "X0")
STANDARD_NAMES = {"X1": "W-", "X2": "W+", "X3": "Z", "X0": "A"}

_INV_SQRT2 = SQRT2 * Fraction(1, 2)


def _su2xu1_constants() -> StructureConstants:
    # epsilon^c_ab on X1..X3; X0 central
    return StructureConstants.from_entries(
        LABELS, [(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1)]
    )


def _totally_antisymmetric(labels, table) -> StructureConstants:
    rows = []
    for (a, b, c), v in table.items():
        a, b, c = a - 1, b - 1, c - 1
        rows += [(a, b, c, v), (b, c, a, v), (c, a, b, v)]
    return StructureConstants.from_entries(labels, rows)


_SU3_LABELS = tuple(f"L{k}" for k in range(1, 9))
_HALF = Fraction(1, 2)
_HALF_SQRT3 = sqrt(3) * _HALF


def _su3_constants() -> StructureConstants:
    # Gell-Mann basis, f_abc totally antisymmetric
    return _totally_antisymmetric(
        _SU3_LABELS,
        {
            (1, 2, 3): 1,
            (1, 4, 7): _HALF,
            (1, 5, 6): -_HALF,
            (2, 4, 6): _HALF,
            (2, 5, 7): _HALF,
            (3, 4, 5): _HALF,
            (3, 6, 7): -_HALF,
            (4, 5, 8): _HALF_SQRT3,
            (6, 7, 8): _HALF_SQRT3,
        },
    )


def _su3_constants_printed() -> StructureConstants:
    # literal index order of the printed table: f^7_{41} and f^6_{37}
    return _totally_antisymmetric(
        _SU3_LABELS,
        {
            (1, 2, 3): 1,
            (4, 1, 7): _HALF,
            (1, 5, 6): -_HALF,
            (2, 4, 6): _HALF,
            (2, 5, 7): _HALF,
            (3, 4, 5): _HALF,
            (3, 7, 6): -_HALF,
            (4, 5, 8): _HALF_SQRT3,
            (6, 7, 8): _HALF_SQRT3,
        },
    )


def _ga_constants() -> StructureConstants:
    i = TrigScalar.coerce("i")
    return StructureConstants(
        LABELS,
        {
            (0, 1, 3): -i * SIN,
            (0, 1, 2): -i * COS,
            (0, 2, 0): i * COS,
            (0, 3, 0): i * SIN,
            (1, 2, 1): -i * COS,
            (1, 3, 1): -i * SIN,
        },
    )


def _su2xu1_fundamental() -> Representation:
    return Representation(
        LABELS,
        [
            matrix_from_strings([["0", "-(1/2)*i", "0"], ["-(1/2)*i", "0", "0"], ["0", "0", "0"]]),
            matrix_from_strings([["0", "-1/2", "0"], ["1/2", "0", "0"], ["0", "0", "0"]]),
            matrix_from_strings([["-(1/2)*i", "0", "0"], ["0", "(1/2)*i", "0"], ["0", "0", "0"]]),
            matrix_from_strings([["0", "0", "0"], ["0", "0", "0"], ["0", "0", "(1/2)*i*sqrt2"]]),
        ],
    )


def _su2xu1_paper_adjoint() -> Representation:
    z = ["0"] * 4
    return Representation(
        LABELS,
        [
            matrix_from_strings([z, ["0", "0", "-1", "0"], ["0", "1", "0", "0"], z]),
            matrix_from_strings([["0", "0", "1", "0"], z, ["-1", "0", "0", "0"], z]),
            matrix_from_strings([["0", "-1", "0", "0"], ["1", "0", "0", "0"], z, z]),
            matrix_from_strings([z, z, z, ["0", "0", "0", "i*sqrt2"]]),
        ],
    )


def _glashow_transform() -> BasisTransform:
    forward = matrix_from_strings(
        [
            ["(1/2)*sqrt2", "(1/2)*i*sqrt2", "0", "0"],
            ["(1/2)*sqrt2", "-(1/2)*i*sqrt2", "0", "0"],
            ["0", "0", "cos", "-sin"],
            ["0", "0", "sin", "cos"],
        ]
    )
    return BasisTransform(forward)


def _ga_adjoint() -> Representation:
    z = ["0"] * 4
    return Representation(
        LABELS,
        [
            matrix_from_strings(
                [["0", "0", "i*cos", "i*sin"], z, ["0", "-i*cos", "0", "0"], ["0", "-i*sin", "0", "0"]]
            ),
            matrix_from_strings(
                [z, ["0", "0", "-i*cos", "-i*sin"], ["i*cos", "0", "0", "0"], ["i*sin", "0", "0", "0"]]
            ),
            matrix_from_strings([["-i*cos", "0", "0", "0"], ["0", "i*cos", "0", "0"], z, z]),
            matrix_from_strings([["-i*sin", "0", "0", "0"], ["0", "i*sin", "0", "0"], z, z]),
        ],
    )


def _ga_transformed_adjoint() -> Representation:
    z = ["0"] * 4
    return Representation(
        LABELS,
        [
            matrix_from_strings(
                [["0", "0", "i", "0"], ["0", "0", "-1", "0"], ["-i", "1", "0", "0"], z]
            ).scale(_INV_SQRT2),
            matrix_from_strings(
                [["0", "0", "-i", "0"], ["0", "0", "-1", "0"], ["i", "1", "0", "0"], z]
            ).scale(_INV_SQRT2),
            matrix_from_strings(
                [["0", "-cos", "0", "0"], ["cos", "0", "0", "0"], z, ["0", "0", "0", "-i*sqrt2*sin"]]
            ),
            matrix_from_strings(
                [["0", "-sin", "0", "0"], ["sin", "0", "0", "0"], z, ["0", "0", "0", "i*sqrt2*cos"]]
            ),
        ],
    )


def _ga_fundamental_paper() -> Representation:
    # as printed, including the (2,1) entries of T3' and T0'
    minus_i_over_sqrt2 = TrigScalar.coerce("-i") * _INV_SQRT2
    half_i = TrigScalar.coerce("(1/2)*i")
    z = ["0"] * 3
    return Representation(
        LABELS,
        [
            matrix_from_strings([["0", "1", "0"], z, z]).scale(minus_i_over_sqrt2),
            matrix_from_strings([z, ["1", "0", "0"], z]).scale(minus_i_over_sqrt2),
            matrix_from_strings(
                [["-cos", "0", "0"], ["1", "cos", "0"], ["0", "0", "-sqrt2*sin"]]
            ).scale(half_i),
            matrix_from_strings(
                [["-sin", "0", "0"], ["1", "sin", "0"], ["0", "0", "sqrt2*cos"]]
            ).scale(half_i),
        ],
    )


@lru_cache(maxsize=None)
def _build_fixtures() -> Mapping[str, object]:
    su2xu1 = _su2xu1_constants()
    glashow = _glashow_transform()
    fundamental = _su2xu1_fundamental()
    table = {
        "su2xu1_constants": su2xu1,
        "su2xu1_fundamental": fundamental,
        "su2xu1_paper_adjoint": _su2xu1_paper_adjoint(),
        "su3_constants": _su3_constants(),
        "su3_constants_printed": _su3_constants_printed(),
        "u1_constants": StructureConstants.abelian(("X0",)),
        "glashow_transform": glashow,
        "ga_constants": _ga_constants(),
        "ga_adjoint": _ga_adjoint(),
        "ga_transformed_adjoint": _ga_transformed_adjoint(),
        "ga_fundamental_paper": _ga_fundamental_paper(),
        "ga_fundamental_computed": transform_rep(fundamental, glashow),
        "labels": LABELS,
        "standard_names": MappingProxyType(dict(STANDARD_NAMES)),
    }
    return MappingProxyType(table)


def fixtures() -> Mapping[str, object]:
    """Read-only table of every built-in object, keyed by name."""
    return _build_fixtures()


# mixing of the neutral fields


@dataclass(frozen=True)
class MixingCandidate:
    """Coefficients of ``A3 = alpha A'3 + beta A'0`` and ``A0 = gamma A'3 + delta A'0``."""

    alpha: TrigScalar
    beta: TrigScalar
    gamma: TrigScalar
    delta: TrigScalar

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta"):
            object.__setattr__(self, name, TrigScalar.coerce(getattr(self, name)))

    @classmethod
    def of(cls, alpha, beta, gamma, delta) -> MixingCandidate:
        return cls(alpha, beta, gamma, delta)

    def as_tuple(self) -> tuple[TrigScalar, ...]:
        return (self.alpha, self.beta, self.gamma, self.delta)

    def substitute(self, cos, sin) -> MixingCandidate:
        return MixingCandidate(*(x.substitute(cos=cos, sin=sin) for x in self.as_tuple()))

    def __str__(self):
        return "(" + ", ".join(ts_format(x) for x in self.as_tuple()) + ")"


@dataclass(frozen=True)
class ConstraintResult:
    name: str
    equation: str
    residual: TrigScalar

    @property
    def passed(self) -> bool:
        return not self.residual


@dataclass(frozen=True)
class MixingReport:
    candidate: MixingCandidate
    results: tuple[ConstraintResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failed(self) -> list[str]:
        return [r.name for r in self.results if not r.passed]


def check_mixing_constraints(m: MixingCandidate) -> MixingReport:
    a, b, g, d = m.as_tuple()
    results = (
        ConstraintResult("orthogonality", "alpha*beta + gamma*delta = 0", a * b + g * d),
        ConstraintResult("first-column norm", "alpha^2 + gamma^2 = 1", a * a + g * g - ONE),
        ConstraintResult("second-column norm", "beta^2 + delta^2 = 1", b * b + d * d - ONE),
        ConstraintResult("unit determinant", "alpha*delta - gamma*beta = 1", a * d - g * b - ONE),
    )
    return MixingReport(m, results)


@dataclass(frozen=True)
class FamilyMember:
    signs: str  # "symbolic", "upper" or "lower"
    theta: Fraction | None  # multiple of pi; None for the symbolic member
    candidate: MixingCandidate


@dataclass(frozen=True)
class CaseFamily:
    id: int
    description: str
    parametrization: str
    members: tuple[FamilyMember, ...]

    @property
    def theta_values(self) -> tuple[Fraction, ...]:
        return tuple(m.theta for m in self.members if m.theta is not None)

    def member(self, signs: str) -> FamilyMember:
        for m in self.members:
            if m.signs == signs:
                return m
        raise KeyError(signs)


def rotation_candidate() -> MixingCandidate:
    return MixingCandidate(COS, SIN, -SIN, COS)


@lru_cache(maxsize=None)
def case_families() -> tuple[CaseFamily, ...]:
    one, zero = ONE, TrigScalar.coerce(0)
    return (
        CaseFamily(
            1,
            "delta = alpha, beta = -gamma, alpha^2 + gamma^2 = 1",
            "alpha = delta = cos(theta), beta = -gamma = sin(theta)",
            (FamilyMember("symbolic", None, rotation_candidate()),),
        ),
        CaseFamily(
            2,
            "delta = alpha, beta = gamma = 0, alpha^2 = 1",
            "A3 = +-A'3, A0 = +-A'0",
            (
                FamilyMember("upper", Fraction(0), MixingCandidate(one, zero, zero, one)),
                FamilyMember("lower", Fraction(1), MixingCandidate(-one, zero, zero, -one)),
            ),
        ),
        CaseFamily(
            3,
            "delta = -alpha = 0, beta = -gamma, gamma^2 = 1",
            "A3 = -+A'0, A0 = +-A'3",
            (
                FamilyMember("upper", Fraction(3, 2), MixingCandidate(zero, -one, one, zero)),
                FamilyMember("lower", Fraction(1, 2), MixingCandidate(zero, one, -one, zero)),
            ),
        ),
    )


# commutator tables of the degenerate cases, keyed by theta / pi
CASE_ANGLES = {Fraction(0): 2, Fraction(1): 2, Fraction(1, 2): 3, Fraction(3, 2): 3}


def case_algebra(theta: Fraction) -> StructureConstants:
    """Case-2 (theta = 0, pi) or case-3 (theta = pi/2, 3pi/2) commutator table.

    Transcribed from the printed tables; the upper signs are theta = 0 and
    theta = pi/2.
    """
    theta = Fraction(theta)
    if theta not in CASE_ANGLES:
        raise ValueError(f"no degenerate case at theta = {theta}*pi")
    i = TrigScalar.coerce("i")
    sign = 1 if theta in (0, Fraction(1, 2)) else -1
    if CASE_ANGLES[theta] == 2:
        entries = {(0, 1, 2): -i * sign, (0, 2, 0): i * sign, (1, 2, 1): -i * sign}
    else:
        entries = {(0, 1, 3): -i * sign, (0, 3, 0): i * sign, (1, 3, 1): -i * sign}
    return StructureConstants(LABELS, entries)


def family_at(theta: Fraction) -> MixingCandidate:
    """The rotation family evaluated at ``theta * pi``."""
    c, s = exact_angle(theta)
    return rotation_candidate().substitute(c, s)


def named_candidate(values: Sequence[str]) -> MixingCandidate:
    if len(values) != 4:
        raise ValueError("a mixing candidate needs exactly four scalars")
    return MixingCandidate(*(TrigScalar.coerce(v) for v in values))


def identity_transform() -> BasisTransform:
    return BasisTransform(TrigMatrix.identity(4))
