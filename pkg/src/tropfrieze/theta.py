"""The error term theta: K0(mod Gamma) -> K0^sp(add t).

The alternating sum of indices along a (d+2)-angle is not zero in general;
it equals theta applied to the class of ``Im F(gamma)``.  Since the simple
modules generate K0(mod Gamma), theta is pinned down by one *determining*
angle per simple, i.e. an angle whose image class is that simple.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import FreeAbelianElement, GroupHomomorphism, elem_zero, hom_apply, hom_from_columns
from .catspec import Angle, CategorySpec, simple_label
from .index import IndexTable, index_of_object, index_table
from .report import FAIL, PASS, SKIPPED, CheckItem


class MissingDeterminingAngleError(LookupError):
    pass


class InconsistentThetaError(ValueError):
    pass


@dataclass(frozen=True)
class ThetaMap:
    hom: GroupHomomorphism

    def __call__(self, x: FreeAbelianElement) -> FreeAbelianElement:
        return hom_apply(self.hom, x)

    def of_simple(self, tilting_name: str) -> FreeAbelianElement:
        return self.hom.column(simple_label(tilting_name))

    def to_json(self) -> dict[str, dict[str, int]]:
        return self.hom.to_json()


def angle_alternating_sum(spec: CategorySpec, angle: Angle,
                          table: IndexTable | None = None) -> FreeAbelianElement:
    """``sum_{i=0}^{d+1} (-1)^i index(s_i)`` where ``s_0`` is the last term."""
    if table is None:
        table = index_table(spec)
    n = len(angle.terms)
    total = elem_zero(spec.tilting_basis)
    for pos, term in enumerate(angle.terms):
        i = n - 1 - pos
        x = index_of_object(spec, term, table)
        total = total + x if i % 2 == 0 else total - x
    return total


def determining_angles(spec: CategorySpec) -> dict[str, list[int]]:
    """Indices of angles whose image class is exactly one simple, keyed by tilting name."""
    found: dict[str, list[int]] = {t: [] for t in spec.tilting}
    for k, a in enumerate(spec.angles):
        if a.image_class is None or a.image_class.basis != spec.simple_basis:
            continue
        if sorted(a.image_class.coeffs) == [0] * (len(spec.tilting) - 1) + [1]:
            t = spec.tilting[a.image_class.coeffs.index(1)]
            found[t].append(k)
    return found


def theta_from_spec(spec: CategorySpec, table: IndexTable | None = None) -> ThetaMap:
    if table is None:
        table = index_table(spec)
    found = determining_angles(spec)
    columns = []
    for t in spec.tilting:
        refs = found[t]
        if not refs:
            raise MissingDeterminingAngleError(
                f"no angle with image class [{simple_label(t)}]; theta is undetermined there")
        values = [angle_alternating_sum(spec, spec.angles[k], table) for k in refs]
        for k, v in zip(refs[1:], values[1:]):
            if v != values[0]:
                raise InconsistentThetaError(
                    f"angles {refs[0]} and {k} both determine theta([{simple_label(t)}]) "
                    f"but give {values[0]} and {v}")
        columns.append(values[0])
    return ThetaMap(hom_from_columns(spec.simple_basis, spec.tilting_basis, columns))


def verify_theorem_A(spec: CategorySpec, table: IndexTable, theta: ThetaMap) -> list[CheckItem]:
    """Compare both sides of the additivity formula on every labelled angle."""
    items = []
    for k, a in enumerate(spec.angles):
        name = f"angle {k}: {a}"
        if a.image_class is None:
            items.append(CheckItem(name, SKIPPED, "no image class"))
            continue
        lhs = angle_alternating_sum(spec, a, table)
        rhs = theta(a.image_class)
        status = PASS if lhs == rhs else FAIL
        items.append(CheckItem(name, status, f"sum = {lhs}; theta({a.image_class}) = {rhs}",
                               {"angle": k, "lhs": lhs.to_json(), "rhs": rhs.to_json()}))
    return items


def verify_dichotomy(spec: CategorySpec) -> list[CheckItem]:
    """At least one of the two angles of each exchange pair has zero image class."""
    items = []
    for k, p in enumerate(spec.exchange_pairs):
        name = f"pair {k}: ({p.s0}, {p.s_top})"
        if not spec.calabi_yau_2d:
            items.append(CheckItem(name, SKIPPED, "spec is not declared 2d-Calabi-Yau"))
            continue
        try:
            c1, c2 = spec.angles[p.angle01].image_class, spec.angles[p.angle02].image_class
        except IndexError:
            items.append(CheckItem(name, SKIPPED, "angle reference out of range"))
            continue
        if c1 is None or c2 is None:
            items.append(CheckItem(name, SKIPPED, "missing image class"))
            continue
        status = PASS if c1.is_zero() or c2.is_zero() else FAIL
        items.append(CheckItem(name, status, f"Im F(gamma_0) = {c1}; Im F(gamma_d+1) = {c2}"))
    return items
