from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from liegauge.catalog import LABELS, fixtures
from liegauge.liealg import (
    AntisymmetryError,
    BasisTransform,
    Representation,
    StructureConstants,
    adjoint_action,
    adjoint_rep,
    compare_reps,
    jacobi_check,
    killing_form,
    rep_check,
    reps_equal,
    specialize,
    specialize_rep,
    trace_table,
    transform_constants,
    transform_rep,
)
from liegauge.matrix import DimensionError, TrigMatrix
from liegauge.trigring import COS, I, ONE, ZERO, TrigScalar, exact_angle

FX = fixtures()


def brute_killing(sc: StructureConstants) -> TrigMatrix:
    n = sc.dim
    return TrigMatrix(
        [
            [
                sum((sc.lookup(a, d, c) * sc.lookup(b, c, d) for c in range(n) for d in range(n)), ZERO)
                for b in range(n)
            ]
            for a in range(n)
        ]
    )


def test_entries_orientation_and_conflicts():
    sc = StructureConstants.from_entries(["a", "b"], [(1, 0, 0, 2)])
    assert sc.lookup(0, 1, 0) == -2
    assert sc.lookup(1, 0, 0) == 2
    with pytest.raises(AntisymmetryError):
        StructureConstants.from_entries(["a", "b"], [(0, 0, 1, 1)])
    with pytest.raises(AntisymmetryError):
        StructureConstants.from_entries(["a", "b"], [(0, 1, 0, 1), (1, 0, 0, 1)])
    assert StructureConstants.from_entries(["a", "b"], [(0, 1, 0, 1), (1, 0, 0, -1)]).lookup(0, 1, 0) == 1


def test_bracket_and_relations():
    sc = FX["su2xu1_constants"]
    assert dict(sc.bracket(0, 1)) == {2: ONE}
    assert dict(sc.bracket(1, 0)) == {2: -ONE}
    assert sc.bracket(3, 0) == {}
    assert sc.commutation_relations()[:2] == ["[X1,X2] = X3", "[X1,X3] = -X2"]
    assert FX["ga_constants"].commutation_relations()[0] == "[X1,X2] = -i*cos*X3 - i*sin*X0"


@pytest.mark.parametrize("name", ["su2xu1_constants", "su3_constants", "ga_constants", "u1_constants"])
def test_jacobi_fixtures(name):
    assert jacobi_check(FX[name]).passed


def test_printed_su3_table_violates_jacobi():
    report = jacobi_check(FX["su3_constants_printed"])
    assert not report.passed
    assert report.violations


def test_jacobi_detects_broken_algebra():
    sc = StructureConstants(["a", "b", "c"], {(0, 1, 2): 1, (1, 2, 0): 1, (0, 2, 0): 1})
    assert not jacobi_check(sc).passed


@pytest.mark.parametrize("name", ["su2xu1_constants", "su3_constants", "ga_constants", "u1_constants"])
def test_killing_matches_double_sum(name):
    sc = FX[name]
    assert killing_form(sc).matrix == brute_killing(sc)


def test_killing_su3():
    kf = killing_form(FX["su3_constants"])
    assert kf.matrix == TrigMatrix.identity(8).scale(-3)
    assert kf.determinant == TrigScalar.coerce(6561)
    assert kf.is_semisimple


def test_killing_abelian_is_zero():
    kf = killing_form(StructureConstants.abelian(["x", "y"]))
    assert kf.matrix.is_zero() and not kf.is_semisimple


@pytest.mark.parametrize("name", ["su2xu1_constants", "su3_constants", "ga_constants"])
def test_adjoint_is_representation(name):
    sc = FX[name]
    assert rep_check(sc, adjoint_rep(sc)).passed


def test_adjoint_convention():
    # (rho_a)_{bc} = f^b_{ac}
    sc = FX["ga_constants"]
    rho = adjoint_rep(sc)
    for a in range(4):
        for b in range(4):
            for c in range(4):
                assert rho[a][b, c] == sc.lookup(a, c, b)


def test_ga_adjoint_fixture_is_computed_adjoint():
    assert adjoint_rep(FX["ga_constants"]) == FX["ga_adjoint"]


def test_transform_identity_and_round_trip():
    sc = FX["su2xu1_constants"]
    assert transform_constants(sc, BasisTransform.identity(4)) == sc
    g = FX["glashow_transform"]
    ga = transform_constants(sc, g)
    assert ga == FX["ga_constants"]
    assert transform_constants(ga, g.inverted()) == sc


def test_transform_rep_carries_representations():
    g = FX["glashow_transform"]
    ga = FX["ga_constants"]
    for name in ("su2xu1_fundamental", "su2xu1_paper_adjoint"):
        rep = transform_rep(FX[name], g)
        assert rep_check(ga, rep).passed, name


def test_transformed_killing_is_congruent():
    # with X' = M X the Killing form maps to M K M^T
    g = FX["glashow_transform"]
    k = killing_form(FX["su2xu1_constants"]).matrix
    assert killing_form(FX["ga_constants"]).matrix == g.forward @ k @ g.forward.transpose()


@st.composite
def rotations(draw):
    q = draw(st.sampled_from([Fraction(k, 6) for k in range(12)] + [Fraction(k, 4) for k in range(8)]))
    return exact_angle(q)


@given(rotations())
def test_transform_preserves_jacobi(cs):
    c, s = cs
    m = TrigMatrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, c, s], [0, 0, -s, c]])
    sc = transform_constants(FX["su2xu1_constants"], BasisTransform(m))
    assert jacobi_check(sc).passed
    assert rep_check(sc, adjoint_rep(sc)).passed


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        transform_constants(FX["su3_constants"], FX["glashow_transform"])
    with pytest.raises(DimensionError):
        rep_check(FX["su3_constants"], FX["ga_adjoint"])


def test_adjoint_action_examples():
    ga = FX["ga_constants"]
    e1 = [1, 0, 0, 0]
    assert adjoint_action(ga, "X3", e1) == [-I * COS, ZERO, ZERO, ZERO]
    assert adjoint_action(ga, "X0", [0, 0, 1, 0]) == [ZERO] * 4
    with pytest.raises(DimensionError):
        adjoint_action(ga, 0, [1, 0])


def test_compare_reps_reasons():
    cmp = compare_reps(FX["ga_adjoint"], FX["ga_transformed_adjoint"])
    assert not cmp.equal and cmp.differing
    cmp = compare_reps(FX["ga_adjoint"], FX["ga_fundamental_computed"])
    assert "carrier sizes" in cmp.reason
    assert reps_equal(FX["ga_adjoint"], FX["ga_adjoint"])


def test_trace_table_symmetric():
    t = trace_table(FX["ga_transformed_adjoint"])
    assert t.is_symmetric()
    assert t[0, 1] == t[1, 0] == TrigScalar.coerce(-2)


def test_specialize_checks_pythagoras():
    ga = FX["ga_constants"]
    with pytest.raises(ValueError, match="cos\\^2"):
        specialize(ga, 1, 1)
    with pytest.raises(ValueError):
        specialize(ga, COS, 0)
    sub = specialize_rep(FX["ga_adjoint"], 1, 0)
    assert all(m.map(lambda x: x) == m for m in sub.matrices)
    assert rep_check(specialize(ga, 0, -1), specialize_rep(FX["ga_adjoint"], 0, -1)).passed


def test_json_round_trips():
    for name in ("ga_constants", "su3_constants"):
        sc = FX[name]
        assert StructureConstants.from_json(sc.to_json()) == sc
    rep = FX["ga_transformed_adjoint"]
    assert Representation.from_json(rep.to_json()) == rep


def test_json_by_label():
    data = {"labels": ["a", "b", "c"], "constants": [{"a": "a", "b": "b", "c": "c", "value": "i"}]}
    sc = StructureConstants.from_json(data)
    assert sc.lookup(0, 1, 2) == I
    assert sc.relabel(LABELS[:3]).labels == LABELS[:3]
