import json
from dataclasses import replace

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from tropfrieze.abelian import FreeAbelianElement
from tropfrieze.catspec import (
    ZERO,
    Angle,
    CategorySpec,
    ExchangePairDecl,
    ObjectExpr,
    Resolution,
    SpecFormatError,
    SpecValidationError,
    UnknownIndecomposableError,
    candidate_exchange_pairs,
    emit_spec,
    load_spec,
    spec_to_dict,
    suspend_object,
    unsuspend_object,
    validate,
)


def codes(spec):
    return {v.code for v in validate(spec)}


def test_builtin_is_valid(spec):
    assert validate(spec) == []


def test_object_expr_is_a_multiset():
    assert ObjectExpr.of("A", "B") == ObjectExpr.of("B", "A")
    assert ObjectExpr.of("A", "A").as_dict() == {"A": 2}
    assert ObjectExpr.of().is_zero()
    with pytest.raises(ValueError):
        ObjectExpr((("A", -1),))


def test_suspend_object(spec):
    assert suspend_object(spec, ObjectExpr.of("P1")) == ObjectExpr.of("Sigma3P1")
    assert suspend_object(spec, ZERO) == ZERO
    assert suspend_object(spec, ObjectExpr.of("Sigma3P1")) == ObjectExpr.of("P2")
    assert suspend_object(spec, ObjectExpr.of("P4")) == ObjectExpr.of("Sigma3P4")
    assert suspend_object(spec, ObjectExpr.of("I4")) == ObjectExpr.of("P1")
    with pytest.raises(UnknownIndecomposableError):
        suspend_object(spec, ObjectExpr.of("nope"))


@given(st.dictionaries(st.sampled_from(oracles.NAMES), st.integers(0, 4)))
def test_suspend_is_invertible(counts):
    from tropfrieze.example import builtin_ot_a4
    s = builtin_ot_a4()
    o = ObjectExpr.from_mapping(counts)
    assert unsuspend_object(s, suspend_object(s, o)) == o
    assert suspend_object(s, unsuspend_object(s, o)) == o


def test_suspension_has_order_nine(spec):
    o = ObjectExpr.of("P1")
    seen = [o]
    for _ in range(9):
        o = suspend_object(spec, o)
        seen.append(o)
    assert seen[-1] == seen[0] and len(set(seen[:-1])) == 9


def test_candidate_pairs_match_scan(spec):
    expected = [(oracles.NAMES[a], oracles.NAMES[b]) for a, b in oracles.exchange_pairs_by_scan()]
    got = candidate_exchange_pairs(spec)
    assert sorted(got) == sorted(expected)
    assert len(got) == 18
    # all nine (s0, Sigma^3 s0) pairs are there
    for s in spec.indecs:
        assert (s, spec.suspension[s]) in got
    declared = {(p.s0, p.s_top) for p in spec.exchange_pairs}
    assert declared <= set(got)


def test_candidate_pairs_symmetric_under_calabi_yau(spec):
    got = set(candidate_exchange_pairs(spec))
    assert spec.calabi_yau_2d
    assert all((b, a) in got for a, b in got)


def test_no_candidates_without_hom():
    s = CategorySpec(1, ("A", "B", "C"), {"A": "B", "B": "C", "C": "A"}, {}, ("A",))
    assert candidate_exchange_pairs(s) == []


def test_identities_alone_pair_each_object_with_its_desuspension():
    # dim Hom(s, s) = 1, so (s, Sigma^-d s) always qualifies
    s = CategorySpec(1, ("A", "B", "C"), {"A": "B", "B": "C", "C": "A"},
                     {("A", "A"): 1, ("B", "B"): 1, ("C", "C"): 1}, ("A",))
    assert candidate_exchange_pairs(s) == [("A", "C"), ("B", "A"), ("C", "B")]


def test_round_trip(spec):
    text = emit_spec(spec)
    again = load_spec(text)
    assert again == spec
    assert emit_spec(again) == text


def test_loader_autofills_trivial_resolutions(spec):
    doc = spec_to_dict(spec)
    for p in ("P1", "P2", "P3", "P4"):
        del doc["resolutions"][p]
    loaded = load_spec(json.dumps(doc))
    assert loaded.resolutions["P1"] == (Resolution((ZERO, ZERO, ZERO, ObjectExpr.of("P1"), ObjectExpr.of("P1"))),)


def test_multiple_resolutions_in_file(spec):
    doc = spec_to_dict(spec)
    r = doc["resolutions"]["I4"]
    doc["resolutions"]["I4"] = [r, r]
    loaded = load_spec(json.dumps(doc))
    assert len(loaded.resolutions["I4"]) == 2
    assert load_spec(emit_spec(loaded)) == loaded


def test_missing_d_is_named(spec):
    doc = spec_to_dict(spec)
    del doc["d"]
    with pytest.raises(SpecFormatError, match="'d'"):
        load_spec(json.dumps(doc))


def test_bad_json_reports_position():
    with pytest.raises(SpecFormatError, match="line 2"):
        load_spec('{"d": 3,\n oops}')


def test_short_angle_rejected_on_load(spec):
    doc = spec_to_dict(spec)
    doc["angles"][0]["terms"] = doc["angles"][0]["terms"][:4]
    with pytest.raises(SpecValidationError) as info:
        load_spec(json.dumps(doc))
    assert "angle-arity" in {v.code for v in info.value.violations}
    assert "need d+2 = 5" in str(info.value)
    # lenient load hands the problem to validate instead
    assert "angle-arity" in codes(load_spec(json.dumps(doc), strict=False))


def test_image_class_keys_must_be_tilting(spec):
    doc = spec_to_dict(spec)
    doc["angles"][0]["image_class"] = {"I4": 1}
    with pytest.raises(SpecFormatError, match="not tilting"):
        load_spec(json.dumps(doc))


# --- one corruption per invariant -------------------------------------------

def _with_hom(spec, key, value):
    hom = dict(spec.hom)
    hom[key] = value
    return replace(spec, hom=hom)


def _with_angle(spec, k, angle):
    angles = list(spec.angles)
    angles[k] = angle
    return replace(spec, angles=tuple(angles))


def _with_pair(spec, k, pair):
    pairs = list(spec.exchange_pairs)
    pairs[k] = pair
    return replace(spec, exchange_pairs=tuple(pairs))


CORRUPTIONS = {
    "d-range": lambda s: replace(s, d=0),
    "duplicate-indecomposable": lambda s: replace(s, indecs=s.indecs + ("P1",)),
    "suspension-not-total": lambda s: replace(s, suspension={k: v for k, v in s.suspension.items() if k != "I4"}),
    "suspension-not-bijective": lambda s: replace(s, suspension={**s.suspension, "P1": "P2", "I4": "P2"}),
    "hom-negative": lambda s: _with_hom(s, ("P1", "P3"), -1),
    "hom-diagonal": lambda s: replace(s, hom={k: v for k, v in s.hom.items() if k != ("I4", "I4")}),
    "ot-condition": lambda s: _with_hom(s, ("P1", "Sigma3P1"), 1),
    "unknown-indecomposable": lambda s: replace(s, tilting=s.tilting + ("X",)),
    "missing-resolution": lambda s: replace(s, resolutions={k: v for k, v in s.resolutions.items() if k != "I4"}),
    "resolution-arity": lambda s: replace(s, resolutions={**s.resolutions, "I4": (
        Resolution(s.resolutions["I4"][0].terms[1:]),)}),
    "resolution-not-tilting": lambda s: replace(s, resolutions={**s.resolutions, "Sigma3P1": (
        Resolution((ObjectExpr.of("I4"), ZERO, ZERO, ZERO, ObjectExpr.of("Sigma3P1"))),)}),
    "resolution-target": lambda s: replace(s, resolutions={**s.resolutions, "Sigma3P1": (
        Resolution((ObjectExpr.of("P1"), ZERO, ZERO, ZERO, ObjectExpr.of("Sigma3P2"))),)}),
    "resolution-inconsistent": lambda s: replace(s, resolutions={**s.resolutions, "Sigma3P1": (
        s.resolutions["Sigma3P1"][0],
        Resolution((ObjectExpr.of("P2"), ZERO, ZERO, ZERO, ObjectExpr.of("Sigma3P1"))))}),
    "angle-arity": lambda s: _with_angle(s, 4, replace(s.angles[4], terms=s.angles[4].terms[:4])),
    "image-class-negative": lambda s: _with_angle(s, 0, replace(
        s.angles[0], image_class=FreeAbelianElement(s.simple_basis, (1, -1, 0, 0)))),
    "image-class-basis": lambda s: _with_angle(s, 0, replace(
        s.angles[0], image_class=FreeAbelianElement(("x",), (1,)))),
    "exchange-pair-ref": lambda s: _with_pair(s, 0, ExchangePairDecl("P1", "Sigma3P1", 0, 99)),
    "exchange-pair-gamma": lambda s: _with_angle(s, 9, replace(s.angles[9], gamma_nonzero=False)),
    "exchange-pair-endpoints": lambda s: _with_pair(s, 0, ExchangePairDecl("P1", "Sigma3P1", 1, 9)),
    "exchange-pair-hom": lambda s: _with_pair(s, 0, ExchangePairDecl("P1", "Sigma3P2", 0, 9)),
}


@pytest.mark.parametrize("code", sorted(CORRUPTIONS))
def test_corruption_is_named(spec, code):
    broken = CORRUPTIONS[code](spec)
    found = validate(broken)
    assert code in {v.code for v in found}, [str(v) for v in found]


def test_ot_violation_names_the_pair(spec):
    found = [v for v in validate(_with_hom(spec, ("P1", "Sigma3P1"), 1)) if v.code == "ot-condition"]
    assert [v.datum for v in found] == [("P1", "P1")]


def test_negative_image_class_rejected_from_file(spec):
    doc = spec_to_dict(spec)
    doc["angles"][0]["image_class"] = {"P1": -1}
    with pytest.raises(SpecValidationError, match="image-class-negative"):
        load_spec(json.dumps(doc))


def test_validate_tolerates_angle_objects(spec):
    # angles with zero objects in the middle are ordinary data
    a = Angle((ObjectExpr.of("P1"), ZERO, ZERO, ZERO, ObjectExpr.of("Sigma3P1")))
    assert validate(replace(spec, angles=spec.angles + (a,))) == []
