"""Tropical friezes built as ``phi o index``.

A functional ``phi`` on K0^sp(add t) is given by its values on the tilting
summands.  When d is odd, the category is 2d-Calabi-Yau and ``phi o theta``
is nonnegative on module classes, ``phi o index`` satisfies the max-plus
exchange relation on every exchange pair.  Nonnegativity only needs
checking on the simples, which turns it into the finite system of linear
inequalities held by :class:`ConeMatrix`.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .abelian import DimensionError, FreeAbelianElement
from .catspec import CategorySpec, ObjectExpr
from .index import IndexTable
from .report import FAIL, PASS, CheckItem
from .theta import MissingDeterminingAngleError, ThetaMap, theta_from_spec

PhiVector = tuple[int, ...]

DEFAULT_WORK_LIMIT = 50_000_000
_CHUNK = 1 << 16


class TheoremHypothesisError(ValueError):
    pass


class WorkLimitError(ValueError):
    pass


class NotCyclicWindowError(ValueError):
    pass


class ClosureError(ArithmeticError):
    """The window recursion came back around to a seeded position with a different value."""

    def __init__(self, position: str, seeded: int, computed: int):
        self.position = position
        self.seeded = seeded
        self.computed = computed
        super().__init__(f"recursion does not close at {position}: seeded {seeded}, computed {computed}")


@dataclass(frozen=True)
class FriezeValues:
    values: Mapping[str, int]

    def __getitem__(self, name: str) -> int:
        return self.values[name]

    def of(self, o: ObjectExpr) -> int:
        return sum(m * self.values[n] for n, m in o.counts)

    def as_tuple(self, order: Sequence[str]) -> tuple[int, ...]:
        return tuple(self.values[n] for n in order)

    def to_json(self) -> dict[str, int]:
        return dict(self.values)


@dataclass(frozen=True)
class ConeMatrix:
    """One row per tilting summand ``t'``: the coordinates of ``theta([S(t')])``."""

    basis: tuple[str, ...]
    rows: tuple[FreeAbelianElement, ...]

    def as_lists(self) -> list[list[int]]:
        return [list(r.coeffs) for r in self.rows]

    def as_array(self) -> np.ndarray:
        return np.array(self.as_lists(), dtype=np.int64).reshape(len(self.rows), len(self.basis))

    def inequalities(self) -> list[str]:
        out = []
        for r in self.rows:
            lhs = []
            for label, c in r.support().items():
                term = f"phi({label})" if abs(c) == 1 else f"{abs(c)} phi({label})"
                if not lhs:
                    lhs.append(("-" if c < 0 else "") + term)
                else:
                    lhs.append(("- " if c < 0 else "+ ") + term)
            out.append(f"{' '.join(lhs) if lhs else '0'} >= 0")
        return out


def cone_matrix(spec: CategorySpec, theta: ThetaMap) -> ConeMatrix:
    return ConeMatrix(spec.tilting_basis, tuple(theta.of_simple(t) for t in spec.tilting))


def _dot(row: FreeAbelianElement, phi: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(row.coeffs, phi))


def phi_admissible(cone: ConeMatrix, phi: Sequence[int]) -> bool:
    if len(phi) != len(cone.basis):
        raise DimensionError(f"phi has {len(phi)} coordinates, cone has {len(cone.basis)}")
    return all(_dot(r, phi) >= 0 for r in cone.rows)


def frieze_from_phi(spec: CategorySpec, table: IndexTable, phi: Sequence[int],
                    cone: ConeMatrix | None = None) -> FriezeValues:
    if spec.d % 2 == 0:
        raise TheoremHypothesisError(
            f"d = {spec.d} is even; phi o index is only guaranteed to be a frieze for odd d")
    if not spec.calabi_yau_2d:
        raise TheoremHypothesisError("the spec is not declared 2d-Calabi-Yau")
    if len(phi) != len(spec.tilting):
        raise DimensionError(f"phi has {len(phi)} coordinates, there are {len(spec.tilting)} tilting summands")
    if cone is None:
        try:
            cone = cone_matrix(spec, theta_from_spec(spec, table))
        except MissingDeterminingAngleError:
            cone = None
    if cone is not None and not phi_admissible(cone, phi):
        warnings.warn(f"phi = {tuple(phi)} violates the cone inequalities; "
                      "the result need not be a tropical frieze", stacklevel=2)
    return FriezeValues({s: _dot(table[s], phi) for s in spec.indecs})


def check_frieze(spec: CategorySpec, f: FriezeValues) -> list[CheckItem]:
    """Evaluate the exchange relation on every declared exchange pair."""
    d = spec.d
    items = []
    for k, p in enumerate(spec.exchange_pairs):
        a1, a2 = spec.angles[p.angle01], spec.angles[p.angle02]
        lhs = f[p.s0] + (-1) ** (d + 1) * f[p.s_top]
        # angle01 = [s_top, x_d, ..., x_1, s0]; angle02 = [s0, y_1, ..., y_d, s_top]
        x = sum((-1) ** (i + 1) * f.of(a1.terms[d + 1 - i]) for i in range(1, d + 1))
        y = sum((-1) ** (i + 1) * f.of(a2.terms[i]) for i in range(1, d + 1))
        status = PASS if lhs == max(x, y) else FAIL
        items.append(CheckItem(f"pair {k}: ({p.s0}, {p.s_top})", status,
                               f"L = {lhs}, X = {x}, Y = {y}", {"L": lhs, "X": x, "Y": y}))
    return items


def box_size(rank: int, bound: int) -> int:
    return (2 * bound + 1) ** rank


def enumerate_admissible(cone: ConeMatrix, bound: int, work_limit: int = DEFAULT_WORK_LIMIT,
                         threads: int = 1) -> list[PhiVector]:
    """All integer points of the cone in ``[-bound, bound]^r``, lexicographically ordered."""
    if bound < 0:
        raise ValueError(f"bound must be nonnegative, got {bound}")
    r = len(cone.basis)
    # same as r * log(2B+1) > log(limit), without rounding
    if box_size(r, bound) > work_limit:
        raise WorkLimitError(
            f"box [-{bound}, {bound}]^{r} has {box_size(r, bound)} points, "
            f"over the work limit of {work_limit}")
    total = box_size(r, bound)
    mat = cone.as_array()
    blocks = [(lo, min(lo + _CHUNK, total)) for lo in range(0, total, _CHUNK)]

    def scan(block: tuple[int, int]) -> np.ndarray:
        lo, hi = block
        idx = np.arange(lo, hi, dtype=np.int64)
        # mixed-radix digits, most significant first, give lexicographic order
        pts = np.empty((hi - lo, r), dtype=np.int64)
        for j in range(r - 1, -1, -1):
            pts[:, j] = idx % (2 * bound + 1) - bound
            idx //= 2 * bound + 1
        if mat.shape[0] == 0:
            return pts
        ok = np.all(pts @ mat.T >= 0, axis=1)
        return pts[ok]

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(scan, blocks))
    else:
        parts = [scan(b) for b in blocks]
    return [tuple(int(v) for v in row) for part in parts for row in part]


def arrow_cycle(spec: CategorySpec, start: str) -> list[str]:
    """Follow off-diagonal Hom entries from ``start``; they must form one directed cycle."""
    succ: dict[str, list[str]] = {n: [] for n in spec.indecs}
    for (a, b), dim in spec.hom.items():
        if a != b and dim > 0:
            succ[a].append(b)
    if any(len(v) != 1 for v in succ.values()):
        raise NotCyclicWindowError("every indecomposable needs exactly one outgoing arrow")
    if start not in succ:
        raise NotCyclicWindowError(f"unknown start {start}")
    cycle = [start]
    while True:
        nxt = succ[cycle[-1]][0]
        if nxt == start:
            break
        if nxt in cycle:
            raise NotCyclicWindowError("arrows do not close up into a cycle through the start")
        cycle.append(nxt)
    if len(cycle) != len(spec.indecs):
        raise NotCyclicWindowError(
            f"arrow cycle through {start} has {len(cycle)} of {len(spec.indecs)} indecomposables")
    return cycle


def propagate_window(spec: CategorySpec, seed: Sequence[int], start: str) -> FriezeValues:
    """Solve the exchange relations window by window around the AR cycle.

    ``seed`` fixes the values on ``d+1`` consecutive objects beginning at
    ``start``; each further value follows from the window ending there.
    Raises :class:`ClosureError` if a full revolution does not reproduce
    the seed.
    """
    d = spec.d
    if d % 2 == 0:
        raise TheoremHypothesisError(f"d = {d} is even")
    if len(seed) != d + 1:
        raise ValueError(f"seed needs d+1 = {d + 1} values, got {len(seed)}")
    cycle = arrow_cycle(spec, start)
    n = len(cycle)
    if n < d + 2:
        raise NotCyclicWindowError(f"cycle of length {n} is shorter than a window of {d + 2}")
    pos = {name: i for i, name in enumerate(cycle)}
    shift = pos[spec.suspension[cycle[0]]]
    if any(pos[spec.suspension[c]] != (i + shift) % n for i, c in enumerate(cycle)):
        raise NotCyclicWindowError("suspension is not a rotation of the arrow cycle")

    # window ending at position q: angle01 terms sit at q-d-1, ..., q
    window_at: dict[int, int] = {}
    for k, p in enumerate(spec.exchange_pairs):
        a1, a2 = spec.angles[p.angle01], spec.angles[p.angle02]
        q = pos[p.s0]
        expected = [cycle[(q - d - 1 + j) % n] for j in range(d + 2)]
        if not all(t.is_indecomposable(e) for t, e in zip(a1.terms, expected)):
            raise NotCyclicWindowError(f"exchange pair {k} is not a consecutive window")
        if not all(t.is_zero() for t in a2.terms[1:-1]):
            raise NotCyclicWindowError(f"exchange pair {k}: second angle is not trivial")
        window_at.setdefault(q, k)
    missing = [cycle[q] for q in range(n) if q not in window_at]
    if missing:
        raise NotCyclicWindowError(f"no window exchange pair ends at {missing}")

    vals: dict[int, int] = {i: int(v) for i, v in enumerate(seed)}
    sign_top = (-1) ** (d + 1)
    for q in range(d + 1, n + d + 1):
        top = q - d - 1
        # x_i sits at q - i
        x = sum((-1) ** (i + 1) * vals[(q - i) % n] for i in range(1, d + 1))
        value = max(x, 0) - sign_top * vals[top % n]
        if q >= n:
            if value != vals[q - n]:
                raise ClosureError(cycle[q - n], vals[q - n], value)
        else:
            vals[q] = value
    return FriezeValues({name: vals[pos[name]] for name in spec.indecs})

