"""Exact arithmetic in finitely generated free abelian groups.

Elements carry their ordered basis with them; two elements can only be
combined when their bases agree label for label.  Coefficients are Python
ints, so nothing ever overflows or rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

Basis = tuple[str, ...]


class BasisMismatchError(ValueError):
    pass


class DimensionError(ValueError):
    pass


def make_basis(labels: Iterable[str]) -> Basis:
    basis = tuple(labels)
    if len(set(basis)) != len(basis):
        raise ValueError(f"duplicate labels in basis {basis!r}")
    return basis


@dataclass(frozen=True)
class FreeAbelianElement:
    basis: Basis
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) != len(self.basis):
            raise DimensionError(
                f"{len(self.coeffs)} coefficients for a basis of size {len(self.basis)}")

    @classmethod
    def from_mapping(cls, basis: Sequence[str], mapping: Mapping[str, int]) -> FreeAbelianElement:
        basis = tuple(basis)
        unknown = set(mapping) - set(basis)
        if unknown:
            raise BasisMismatchError(f"labels {sorted(unknown)} not in basis {basis!r}")
        return cls(basis, tuple(int(mapping.get(b, 0)) for b in basis))

    @classmethod
    def unit(cls, basis: Sequence[str], label: str) -> FreeAbelianElement:
        return cls.from_mapping(basis, {label: 1})

    def __getitem__(self, label: str) -> int:
        return self.coeffs[self.basis.index(label)]

    def _check(self, other: FreeAbelianElement) -> None:
        if not isinstance(other, FreeAbelianElement):
            raise TypeError(f"expected FreeAbelianElement, got {type(other).__name__}")
        if self.basis != other.basis:
            raise BasisMismatchError(f"bases differ: {self.basis!r} vs {other.basis!r}")

    def __add__(self, other: FreeAbelianElement) -> FreeAbelianElement:
        self._check(other)
        return FreeAbelianElement(self.basis, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: FreeAbelianElement) -> FreeAbelianElement:
        return self + (-other)

    def __neg__(self) -> FreeAbelianElement:
        return FreeAbelianElement(self.basis, tuple(-a for a in self.coeffs))

    def __rmul__(self, k: int) -> FreeAbelianElement:
        return FreeAbelianElement(self.basis, tuple(int(k) * a for a in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def support(self) -> dict[str, int]:
        return {b: c for b, c in zip(self.basis, self.coeffs) if c}

    def to_json(self) -> dict[str, int]:
        """Sparse form: label -> coefficient, zero coefficients omitted."""
        return self.support()

    def __str__(self) -> str:
        return format_element(self)


def format_element(x: FreeAbelianElement) -> str:
    """Render as e.g. ``-P1 + P2 - 2 P3``; the zero element is ``0``."""
    parts = []
    for label, c in x.support().items():
        mag = "" if abs(c) == 1 else f"{abs(c)} "
        sign = "-" if c < 0 else "+"
        parts.append((sign, f"{mag}{label}"))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out


def elem_zero(basis: Sequence[str]) -> FreeAbelianElement:
    basis = tuple(basis)
    return FreeAbelianElement(basis, (0,) * len(basis))


def elem_add(a: FreeAbelianElement, b: FreeAbelianElement) -> FreeAbelianElement:
    return a + b


def elem_negate(a: FreeAbelianElement) -> FreeAbelianElement:
    return -a


def elem_scale(k: int, a: FreeAbelianElement) -> FreeAbelianElement:
    return k * a


def elem_eq(a: FreeAbelianElement, b: FreeAbelianElement) -> bool:
    # unlike ==, comparing across bases is an error rather than False
    a._check(b)
    return a.coeffs == b.coeffs


def elem_sum(basis: Sequence[str], items: Iterable[FreeAbelianElement]) -> FreeAbelianElement:
    total = elem_zero(basis)
    for x in items:
        total = total + x
    return total


@dataclass(frozen=True)
class GroupHomomorphism:
    """Integer matrix with one column per domain label, one row per codomain label."""

    domain_basis: Basis
    codomain_basis: Basis
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "domain_basis", tuple(self.domain_basis))
        object.__setattr__(self, "codomain_basis", tuple(self.codomain_basis))
        rows = tuple(tuple(int(v) for v in row) for row in self.matrix)
        object.__setattr__(self, "matrix", rows)
        if len(rows) != len(self.codomain_basis):
            raise DimensionError(
                f"matrix has {len(rows)} rows, codomain has {len(self.codomain_basis)} labels")
        for row in rows:
            if len(row) != len(self.domain_basis):
                raise DimensionError(
                    f"matrix row of length {len(row)}, domain has {len(self.domain_basis)} labels")

    def column(self, label: str) -> FreeAbelianElement:
        j = self.domain_basis.index(label)
        return FreeAbelianElement(self.codomain_basis, tuple(row[j] for row in self.matrix))

    def columns(self) -> list[FreeAbelianElement]:
        return [self.column(b) for b in self.domain_basis]

    def __call__(self, a: FreeAbelianElement) -> FreeAbelianElement:
        return hom_apply(self, a)

    def to_json(self) -> dict[str, dict[str, int]]:
        return {b: self.column(b).to_json() for b in self.domain_basis}

    @classmethod
    def from_json(cls, domain_basis: Sequence[str], codomain_basis: Sequence[str],
                  data: Mapping[str, Mapping[str, int]]) -> GroupHomomorphism:
        unknown = set(data) - set(domain_basis)
        if unknown:
            raise BasisMismatchError(f"labels {sorted(unknown)} not in domain basis")
        cols = [FreeAbelianElement.from_mapping(codomain_basis, data.get(b, {})) for b in domain_basis]
        return hom_from_columns(domain_basis, codomain_basis, cols)


def hom_apply(h: GroupHomomorphism, a: FreeAbelianElement) -> FreeAbelianElement:
    if a.basis != h.domain_basis:
        raise BasisMismatchError(f"element over {a.basis!r}, homomorphism expects {h.domain_basis!r}")
    return FreeAbelianElement(
        h.codomain_basis,
        tuple(sum(m * x for m, x in zip(row, a.coeffs)) for row in h.matrix),
    )


def hom_from_columns(domain_basis: Sequence[str], codomain_basis: Sequence[str],
                     columns: Sequence[FreeAbelianElement | Sequence[int]]) -> GroupHomomorphism:
    domain_basis, codomain_basis = tuple(domain_basis), tuple(codomain_basis)
    if len(columns) != len(domain_basis):
        raise DimensionError(f"{len(columns)} columns for a domain of size {len(domain_basis)}")
    cols = []
    for c in columns:
        if isinstance(c, FreeAbelianElement):
            if c.basis != codomain_basis:
                raise BasisMismatchError(f"column over {c.basis!r}, codomain is {codomain_basis!r}")
            c = c.coeffs
        if len(c) != len(codomain_basis):
            raise DimensionError(f"column of length {len(c)}, codomain has {len(codomain_basis)} labels")
        cols.append(tuple(c))
    matrix = tuple(tuple(col[i] for col in cols) for i in range(len(codomain_basis)))
    return GroupHomomorphism(domain_basis, codomain_basis, matrix)


def hom_identity(basis: Sequence[str]) -> GroupHomomorphism:
    basis = tuple(basis)
    return hom_from_columns(basis, basis, [FreeAbelianElement.unit(basis, b) for b in basis])


def hom_compose(g: GroupHomomorphism, h: GroupHomomorphism) -> GroupHomomorphism:
    """``g`` after ``h``."""
    if h.codomain_basis != g.domain_basis:
        raise DimensionError(
            f"cannot compose: {h.codomain_basis!r} is not the domain {g.domain_basis!r}")
    n = len(h.domain_basis)
    matrix = tuple(
        tuple(sum(grow[k] * h.matrix[k][j] for k in range(len(grow))) for j in range(n))
        for grow in g.matrix
    )
    return GroupHomomorphism(h.domain_basis, g.codomain_basis, matrix)
