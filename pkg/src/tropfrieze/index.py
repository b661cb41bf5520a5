"""The (d+2)-angulated index with respect to a cluster tilting object.

For a resolution angle ``t_d -> ... -> t_0 -> s`` the index of ``s`` is
``sum_i (-1)^i [t_i]`` in the split Grothendieck group of ``add(t)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

from .abelian import FreeAbelianElement, elem_zero
from .catspec import CategorySpec, ObjectExpr, Resolution, UnknownIndecomposableError


class MissingResolutionError(LookupError):
    pass


class InconsistentResolutionError(ValueError):
    pass


def resolution_sum(spec: CategorySpec, res: Resolution) -> FreeAbelianElement:
    basis = spec.tilting_basis
    total = elem_zero(basis)
    for pos, term in enumerate(res.terms[:-1]):
        i = spec.d - pos  # terms are [t_d, ..., t_0, s]
        for name, mult in term.counts:
            if name not in basis:
                raise ValueError(f"resolution term {name} is not a tilting summand")
            total = total + ((-1) ** i * mult) * FreeAbelianElement.unit(basis, name)
    return total


def index_of_indec(spec: CategorySpec, s: str) -> FreeAbelianElement:
    if s not in spec.indecs:
        raise UnknownIndecomposableError(s)
    alternatives = spec.resolutions.get(s)
    if not alternatives:
        raise MissingResolutionError(f"no resolution angle for {s}")
    values = [resolution_sum(spec, r) for r in alternatives]
    # the index does not depend on the choice of resolution
    for v in values[1:]:
        if v != values[0]:
            raise InconsistentResolutionError(
                f"resolutions of {s} disagree: {values[0]} vs {v}")
    return values[0]


@dataclass(frozen=True)
class IndexTable:
    entries: Mapping[str, FreeAbelianElement]

    def __getitem__(self, name: str) -> FreeAbelianElement:
        return self.entries[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def items(self):
        return self.entries.items()

    def to_json(self) -> dict[str, dict[str, int]]:
        return {name: x.to_json() for name, x in self.entries.items()}


def index_table(spec: CategorySpec) -> IndexTable:
    return IndexTable({s: index_of_indec(spec, s) for s in spec.indecs})


def index_of_object(spec: CategorySpec, o: ObjectExpr,
                    table: IndexTable | None = None) -> FreeAbelianElement:
    """Index of a direct sum, computed additively from the indecomposable summands."""
    total = elem_zero(spec.tilting_basis)
    for name, mult in o.counts:
        if name not in spec.indecs:
            raise UnknownIndecomposableError(name)
        x = table[name] if table is not None else index_of_indec(spec, name)
        total = total + mult * x
    return total
