"""The 5-angulated cluster category of ``kQ/rad^2`` with ``Q = 4 -> 3 -> 2 -> 1``.

Its AR quiver is a directed 9-cycle

    P1 -> P2 -> P3 -> P4 -> I4 -> Sigma3P1 -> Sigma3P2 -> Sigma3P3 -> Sigma3P4 -> P1

with one-dimensional Hom spaces exactly along the arrows (plus identities),
and Sigma^3 moves five steps along the arrows.  The tilting object is
``t = P1 + P2 + P3 + P4``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catspec import (
    ZERO,
    Angle,
    CategorySpec,
    ExchangePairDecl,
    ObjectExpr,
    Resolution,
    with_trivial_resolutions,
)

D = 3
PROJECTIVES = ("P1", "P2", "P3", "P4")
CYCLE = PROJECTIVES + ("I4",) + tuple(f"Sigma3{p}" for p in PROJECTIVES)
SUSPENSION_STEP = 5

# composition factors of Im F(gamma), keyed by the s0 of the angle
WINDOW_LABELS = {"P1": {"P1": 1}, "P2": {"P2": 1}, "P3": {"P3": 1}, "P4": {"P4": 1}}
# for the trivial angle s0 -> 0 -> 0 -> 0 -> Sigma3 s0, gamma is an iso and
# Im F(gamma) = F(Sigma3 s0) = Hom(t, Sigma3 s0)
TRIVIAL_LABELS = {
    "I4": {"P1": 1},
    "Sigma3P1": {"P1": 1, "P2": 1},
    "Sigma3P2": {"P2": 1, "P3": 1},
    "Sigma3P3": {"P3": 1, "P4": 1},
    "Sigma3P4": {"P4": 1},
}


def _at(i: int) -> str:
    return CYCLE[i % len(CYCLE)]


def builtin_ot_a4() -> CategorySpec:
    n = len(CYCLE)
    suspension = {_at(i): _at(i + SUSPENSION_STEP) for i in range(n)}
    hom = {(s, s): 1 for s in CYCLE}
    hom.update({(_at(i), _at(i + 1)): 1 for i in range(n)})

    resolutions = {}
    for p in PROJECTIVES:
        resolutions[f"Sigma3{p}"] = (Resolution(
            (ObjectExpr.of(p), ZERO, ZERO, ZERO, ObjectExpr.of(f"Sigma3{p}")), radical_verified=True),)
    resolutions["I4"] = (Resolution(
        tuple(ObjectExpr.of(x) for x in ("P1", "P2", "P3", "P4", "I4")), radical_verified=True),)

    proto = CategorySpec(D, CYCLE, suspension, hom, PROJECTIVES)

    def label(mapping):
        return proto.simple_class(mapping)

    windows, trivials = [], []
    for q in range(n):
        s0 = _at(q)
        windows.append(Angle(
            tuple(ObjectExpr.of(_at(q - D - 1 + j)) for j in range(D + 2)),
            True, label(WINDOW_LABELS.get(s0, {}))))
        trivials.append(Angle(
            (ObjectExpr.of(s0),) + (ZERO,) * D + (ObjectExpr.of(suspension[s0]),),
            True, label(TRIVIAL_LABELS.get(s0, {}))))
    angles = tuple(windows + trivials)
    pairs = tuple(ExchangePairDecl(_at(q), suspension[_at(q)], q, n + q) for q in range(n))

    spec = CategorySpec(D, CYCLE, suspension, hom, PROJECTIVES, resolutions, angles, pairs,
                        calabi_yau_2d=True)
    return with_trivial_resolutions(spec)


@dataclass(frozen=True)
class BuiltinFixtures:
    index_table_expected: dict[str, dict[str, int]]
    theta_expected: dict[str, dict[str, int]]
    inequalities_expected: tuple[tuple[int, ...], ...]
    reference_phi: tuple[int, ...]
    figure3_values: tuple[int, ...]
    angle_labels: tuple[dict[str, int], ...]


def builtin_fixtures() -> BuiltinFixtures:
    index_rows = {p: {p: 1} for p in PROJECTIVES}
    index_rows["I4"] = {"P1": -1, "P2": 1, "P3": -1, "P4": 1}
    index_rows.update({f"Sigma3{p}": {p: -1} for p in PROJECTIVES})
    theta = {
        "S(P1)": {"P2": 1, "P3": -1, "P4": 1},
        "S(P2)": {"P1": -1, "P3": 1, "P4": -1},
        "S(P3)": {"P1": 1, "P2": -1, "P4": 1},
        "S(P4)": {"P1": -1, "P2": 1, "P3": -1},
    }
    inequalities = ((0, 1, -1, 1), (-1, 0, 1, -1), (1, -1, 0, 1), (-1, 1, -1, 0))
    labels = tuple(dict(WINDOW_LABELS.get(s, {})) for s in CYCLE) + tuple(
        dict(TRIVIAL_LABELS.get(s, {})) for s in CYCLE)
    return BuiltinFixtures(
        index_table_expected=dict(sorted(index_rows.items(), key=lambda kv: CYCLE.index(kv[0]))),
        theta_expected=theta,
        inequalities_expected=inequalities,
        reference_phi=(-17, -8, 2, 19),
        figure3_values=(-17, -8, 2, 19, 26, 17, 8, -2, -19),
        angle_labels=labels,
    )


BUILTINS = {"ot-a4": builtin_ot_a4}


def builtin(name: str) -> CategorySpec:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise KeyError(f"unknown builtin {name!r}; available: {sorted(BUILTINS)}") from None

