"""Combinatorial presentation of a finite (d+2)-angulated category.

A :class:`CategorySpec` records only dimension data: the indecomposables,
how the d-suspension permutes them, dim Hom between them, the summands of
a cluster tilting object, resolution angles, and a list of angles that may
carry the class of ``Im F(gamma)`` in K0(mod Gamma).  Nothing at the level
of morphisms is represented.

Specs are exchanged as JSON documents; see :func:`load_spec`.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Any, Iterable, Mapping, Sequence

from .abelian import FreeAbelianElement


class SpecFormatError(ValueError):
    """The document is not a well-formed spec (bad JSON, missing or mistyped field)."""


class SpecValidationError(ValueError):
    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        lines = "\n".join(f"  {v}" for v in self.violations)
        super().__init__(f"spec has {len(self.violations)} violation(s):\n{lines}")


class UnknownIndecomposableError(KeyError):
    pass


@dataclass(frozen=True)
class ObjectExpr:
    """A finite multiset of indecomposables; the empty multiset is the zero object."""

    counts: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        merged: Counter[str] = Counter()
        for name, mult in self.counts:
            if mult < 0:
                raise ValueError(f"negative multiplicity {mult} for {name!r}")
            merged[name] += mult
        object.__setattr__(self, "counts", tuple(sorted((n, m) for n, m in merged.items() if m)))

    @classmethod
    def of(cls, *names: str) -> ObjectExpr:
        return cls(tuple((n, 1) for n in names))

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, int]) -> ObjectExpr:
        return cls(tuple(mapping.items()))

    def as_dict(self) -> dict[str, int]:
        return dict(self.counts)

    def names(self) -> list[str]:
        """Names with repetition; the JSON encoding of the object."""
        return [n for n, m in self.counts for _ in range(m)]

    def is_zero(self) -> bool:
        return not self.counts

    def is_indecomposable(self, name: str | None = None) -> bool:
        if len(self.counts) != 1 or self.counts[0][1] != 1:
            return False
        return name is None or self.counts[0][0] == name

    def __add__(self, other: ObjectExpr) -> ObjectExpr:
        return ObjectExpr(self.counts + other.counts)

    def __str__(self) -> str:
        if not self.counts:
            return "0"
        return " + ".join(n if m == 1 else f"{m} {n}" for n, m in self.counts)


ZERO = ObjectExpr()


@dataclass(frozen=True)
class Resolution:
    """Resolution angle ``t_d -> ... -> t_0 -> s -> Sigma^d t_d`` stored as ``[t_d, ..., t_0, s]``."""

    terms: tuple[ObjectExpr, ...]
    radical_verified: bool = False


@dataclass(frozen=True)
class Angle:
    """A (d+2)-angle ``s_{d+1} -> ... -> s_0 -(gamma)-> Sigma^d s_{d+1}``.

    ``terms`` are stored left to right, ``[s_{d+1}, ..., s_0]``.  The
    ``image_class`` is the class of ``Im F(gamma)`` in the simple-module
    basis, when known.
    """

    terms: tuple[ObjectExpr, ...]
    gamma_nonzero: bool = True
    image_class: FreeAbelianElement | None = None

    def __str__(self) -> str:
        return " -> ".join(str(t) for t in self.terms)


@dataclass(frozen=True)
class ExchangePairDecl:
    s0: str
    s_top: str
    angle01: int
    angle02: int


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    datum: Any = None

    def __str__(self) -> str:
        return f"[{self.code}] {self.message}"


def simple_label(name: str) -> str:
    """Basis label of the simple Gamma-module belonging to tilting summand ``name``."""
    return f"S({name})"


@dataclass(frozen=True)
class CategorySpec:
    d: int
    indecs: tuple[str, ...]
    suspension: Mapping[str, str]
    hom: Mapping[tuple[str, str], int]
    tilting: tuple[str, ...]
    resolutions: Mapping[str, tuple[Resolution, ...]] = field(default_factory=dict)
    angles: tuple[Angle, ...] = ()
    exchange_pairs: tuple[ExchangePairDecl, ...] = ()
    calabi_yau_2d: bool = False

    def __post_init__(self):
        object.__setattr__(self, "indecs", tuple(self.indecs))
        object.__setattr__(self, "tilting", tuple(self.tilting))
        object.__setattr__(self, "angles", tuple(self.angles))
        object.__setattr__(self, "exchange_pairs", tuple(self.exchange_pairs))
        object.__setattr__(self, "suspension", dict(self.suspension))
        # sparse: zero entries are dropped so equality is structural
        object.__setattr__(self, "hom", {k: v for k, v in dict(self.hom).items() if v != 0})
        object.__setattr__(self, "resolutions", {k: tuple(v) for k, v in dict(self.resolutions).items()})

    def hom_dim(self, src: str, dst: str) -> int:
        return self.hom.get((src, dst), 0)

    @property
    def tilting_basis(self) -> tuple[str, ...]:
        return self.tilting

    @property
    def simple_basis(self) -> tuple[str, ...]:
        return tuple(simple_label(t) for t in self.tilting)

    @property
    def angle_length(self) -> int:
        return self.d + 2

    def simple_class(self, mapping: Mapping[str, int]) -> FreeAbelianElement:
        """Module class from composition-factor multiplicities keyed by tilting name."""
        return FreeAbelianElement.from_mapping(
            self.simple_basis, {simple_label(k): v for k, v in mapping.items()})


def _check_known(spec: CategorySpec, names: Iterable[str]) -> None:
    known = set(spec.indecs)
    for n in names:
        if n not in known:
            raise UnknownIndecomposableError(n)


def suspend_object(spec: CategorySpec, o: ObjectExpr) -> ObjectExpr:
    _check_known(spec, o.as_dict())
    return ObjectExpr(tuple((spec.suspension[n], m) for n, m in o.counts))


def unsuspend_object(spec: CategorySpec, o: ObjectExpr) -> ObjectExpr:
    _check_known(spec, o.as_dict())
    inverse = {v: k for k, v in spec.suspension.items()}
    return ObjectExpr(tuple((inverse[n], m) for n, m in o.counts))


def candidate_exchange_pairs(spec: CategorySpec) -> list[tuple[str, str]]:
    """All ordered ``(s0, s_top)`` with dim Hom(s0, Sigma^d s_top) = 1, in indec order."""
    return [(a, b) for a in spec.indecs for b in spec.indecs
            if spec.hom_dim(a, spec.suspension[b]) == 1]


def with_trivial_resolutions(spec: CategorySpec) -> CategorySpec:
    """Give every tilting summand without a resolution the angle ``[0, ..., 0, t, t]``."""
    missing = [t for t in spec.tilting if t not in spec.resolutions and t in spec.indecs]
    if not missing:
        return spec
    res = dict(spec.resolutions)
    for t in missing:
        res[t] = (Resolution((ZERO,) * spec.d + (ObjectExpr.of(t), ObjectExpr.of(t))),)
    return replace(spec, resolutions=res)


def validate(spec: CategorySpec) -> list[Violation]:
    """Check every structural invariant; an empty list means the spec is valid."""
    out: list[Violation] = []

    def bad(code: str, message: str, datum: Any = None) -> None:
        out.append(Violation(code, message, datum))

    if not isinstance(spec.d, int) or spec.d < 1:
        bad("d-range", f"d must be a positive integer, got {spec.d!r}", spec.d)
    n_terms = spec.d + 2 if isinstance(spec.d, int) else None

    dupes = sorted(n for n, c in Counter(spec.indecs).items() if c > 1)
    if dupes:
        bad("duplicate-indecomposable", f"indecomposables listed twice: {dupes}", dupes)
    known = set(spec.indecs)

    def check_object(o: ObjectExpr, where: str) -> bool:
        unknown = sorted(set(o.as_dict()) - known)
        if unknown:
            bad("unknown-indecomposable", f"{where}: unknown indecomposables {unknown}", unknown)
            return False
        return True

    # suspension
    susp_ok = True
    for n in spec.indecs:
        if n not in spec.suspension:
            bad("suspension-not-total", f"suspension undefined on {n}", n)
            susp_ok = False
    for k, v in spec.suspension.items():
        if k not in known or v not in known:
            bad("unknown-indecomposable", f"suspension entry {k} -> {v} mentions an unknown object", (k, v))
            susp_ok = False
    images = Counter(spec.suspension.values())
    collided = sorted(v for v, c in images.items() if c > 1)
    if collided:
        bad("suspension-not-bijective",
            f"suspension sends several indecomposables to {collided}", collided)
        susp_ok = False

    # hom table
    for (a, b), dim in spec.hom.items():
        if a not in known or b not in known:
            bad("unknown-indecomposable", f"hom entry ({a}, {b}) mentions an unknown object", (a, b))
        if not isinstance(dim, int) or dim < 0:
            bad("hom-negative", f"dim Hom({a}, {b}) = {dim!r} is not a nonnegative integer", (a, b))
    for n in spec.indecs:
        if spec.hom_dim(n, n) < 1:
            bad("hom-diagonal", f"dim Hom({n}, {n}) must be at least 1", n)

    # tilting object
    for t in spec.tilting:
        if t not in known:
            bad("unknown-indecomposable", f"tilting summand {t} is not an indecomposable", t)
    if len(set(spec.tilting)) != len(spec.tilting):
        bad("duplicate-tilting", "tilting summands listed twice", list(spec.tilting))
    tilting = set(spec.tilting) & known
    if susp_ok:
        for a in sorted(tilting):
            for b in sorted(tilting):
                dim = spec.hom_dim(a, spec.suspension[b])
                if dim != 0:
                    bad("ot-condition",
                        f"dim Hom({a}, Sigma^d {b}) = dim Hom({a}, {spec.suspension[b]}) = {dim}, must be 0",
                        (a, b))

    # resolutions
    for n in spec.resolutions:
        if n not in known:
            bad("unknown-indecomposable", f"resolution given for unknown object {n}", n)
    for n in spec.indecs:
        alternatives = spec.resolutions.get(n, ())
        if not alternatives:
            bad("missing-resolution", f"{n} has no resolution by the tilting object", n)
            continue
        sums = set()
        for r in alternatives:
            where = f"resolution of {n}"
            if n_terms is not None and len(r.terms) != n_terms:
                bad("resolution-arity", f"{where} has {len(r.terms)} terms, need d+2 = {n_terms}", n)
                continue
            if not all(check_object(t, where) for t in r.terms):
                continue
            off = sorted({m for t in r.terms[:-1] for m in t.as_dict()} - tilting)
            if off:
                bad("resolution-not-tilting", f"{where} uses non-tilting objects {off}", n)
                continue
            if not r.terms[-1].is_indecomposable(n):
                bad("resolution-target", f"{where} ends in {r.terms[-1]}, not {n}", n)
                continue
            sums.add(_resolution_signature(r, spec.d))
        if len(sums) > 1:
            bad("resolution-inconsistent",
                f"{n} has resolutions with different alternating sums", n)

    # angles
    simple_basis = spec.simple_basis
    for i, a in enumerate(spec.angles):
        if n_terms is not None and len(a.terms) != n_terms:
            bad("angle-arity", f"angle {i} has {len(a.terms)} terms, need d+2 = {n_terms}", i)
        for t in a.terms:
            check_object(t, f"angle {i}")
        if a.image_class is not None:
            if a.image_class.basis != simple_basis:
                bad("image-class-basis",
                    f"angle {i}: image class over {a.image_class.basis}, expected {simple_basis}", i)
            if not a.image_class.is_nonnegative():
                bad("image-class-negative",
                    f"angle {i}: image class {a.image_class} has a negative coefficient", i)

    # exchange pairs
    for k, p in enumerate(spec.exchange_pairs):
        tag = f"exchange pair {k} ({p.s0}, {p.s_top})"
        if p.s0 not in known or p.s_top not in known:
            bad("unknown-indecomposable", f"{tag} mentions an unknown object", k)
            continue
        refs_ok = True
        for ref in (p.angle01, p.angle02):
            if not 0 <= ref < len(spec.angles):
                bad("exchange-pair-ref", f"{tag}: angle index {ref} out of range", k)
                refs_ok = False
        if refs_ok:
            a1, a2 = spec.angles[p.angle01], spec.angles[p.angle02]
            if not (a1.gamma_nonzero and a2.gamma_nonzero):
                bad("exchange-pair-gamma", f"{tag}: both angles need a nonzero connecting morphism", k)
            if a1.terms and a2.terms and not (
                    a1.terms[0].is_indecomposable(p.s_top) and a1.terms[-1].is_indecomposable(p.s0)
                    and a2.terms[0].is_indecomposable(p.s0) and a2.terms[-1].is_indecomposable(p.s_top)):
                bad("exchange-pair-endpoints",
                    f"{tag}: angle {p.angle01} must run {p.s_top} .. {p.s0} and "
                    f"angle {p.angle02} must run {p.s0} .. {p.s_top}", k)
        if susp_ok:
            h1 = spec.hom_dim(p.s0, spec.suspension[p.s_top])
            h2 = spec.hom_dim(p.s_top, spec.suspension[p.s0])
            if h1 != 1 or h2 != 1:
                bad("exchange-pair-hom",
                    f"{tag}: dim Hom(s0, Sigma^d s_top) = {h1} and dim Hom(s_top, Sigma^d s0) = {h2}, "
                    "both must be 1", k)
    return out


def _resolution_signature(r: Resolution, d: int) -> tuple[tuple[str, int], ...]:
    # alternating sum of the tilting terms, t_0 positive
    acc: Counter[str] = Counter()
    for pos, term in enumerate(r.terms[:-1]):
        sign = -1 if (d - pos) % 2 else 1
        for name, m in term.counts:
            acc[name] += sign * m
    return tuple(sorted((k, v) for k, v in acc.items() if v))


# --- JSON I/O -------------------------------------------------------------

def _require(doc: Mapping, key: str, kind: type | tuple[type, ...], where: str = "spec") -> Any:
    if key not in doc:
        raise SpecFormatError(f"{where}: missing required field {key!r}")
    value = doc[key]
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        names = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise SpecFormatError(f"{where}: field {key!r} must be {names}, got {type(value).__name__}")
    return value


def _parse_object(value: Any, where: str) -> ObjectExpr:
    if not isinstance(value, list) or not all(isinstance(n, str) for n in value):
        raise SpecFormatError(f"{where}: an object is a list of indecomposable names, got {value!r}")
    return ObjectExpr(tuple(Counter(value).items()))


def _parse_terms(value: Any, where: str) -> tuple[ObjectExpr, ...]:
    if not isinstance(value, list):
        raise SpecFormatError(f"{where}: 'terms' must be a list of objects")
    return tuple(_parse_object(t, f"{where}, term {i}") for i, t in enumerate(value))


def spec_from_dict(doc: Mapping[str, Any]) -> CategorySpec:
    if not isinstance(doc, Mapping):
        raise SpecFormatError("spec: top level must be a JSON object")
    d = _require(doc, "d", int)
    indecs = _require(doc, "indecomposables", list)
    if not all(isinstance(n, str) for n in indecs):
        raise SpecFormatError("spec: 'indecomposables' must be a list of strings")
    suspension = _require(doc, "suspension", dict)
    hom_rows = _require(doc, "hom_dim", list)
    hom: dict[tuple[str, str], int] = {}
    for i, row in enumerate(hom_rows):
        if (not isinstance(row, list) or len(row) != 3 or not isinstance(row[0], str)
                or not isinstance(row[1], str) or not isinstance(row[2], int) or isinstance(row[2], bool)):
            raise SpecFormatError(f"hom_dim[{i}]: expected [src, dst, dim], got {row!r}")
        if (row[0], row[1]) in hom:
            raise SpecFormatError(f"hom_dim[{i}]: duplicate entry for ({row[0]}, {row[1]})")
        hom[(row[0], row[1])] = row[2]
    tilting = _require(doc, "tilting", list)
    if not all(isinstance(n, str) for n in tilting):
        raise SpecFormatError("spec: 'tilting' must be a list of strings")
    simple_basis = tuple(simple_label(t) for t in tilting)

    resolutions: dict[str, tuple[Resolution, ...]] = {}
    for name, entry in _require(doc, "resolutions", dict).items():
        entries = entry if isinstance(entry, list) else [entry]
        parsed = []
        for j, e in enumerate(entries):
            where = f"resolutions[{name!r}]" + (f"[{j}]" if isinstance(entry, list) else "")
            if not isinstance(e, dict):
                raise SpecFormatError(f"{where}: expected an object with 'terms'")
            terms = _parse_terms(_require(e, "terms", list, where), where)
            parsed.append(Resolution(terms, bool(e.get("radical_verified", False))))
        resolutions[name] = tuple(parsed)

    angles = []
    for i, a in enumerate(_require(doc, "angles", list)):
        where = f"angles[{i}]"
        if not isinstance(a, dict):
            raise SpecFormatError(f"{where}: expected an object")
        terms = _parse_terms(_require(a, "terms", list, where), where)
        gamma = _require(a, "gamma_nonzero", bool, where)
        raw = a.get("image_class")
        image = None
        if raw is not None:
            if not isinstance(raw, dict) or not all(
                    isinstance(v, int) and not isinstance(v, bool) for v in raw.values()):
                raise SpecFormatError(f"{where}: image_class must map tilting names to integers")
            unknown = sorted(set(raw) - set(tilting))
            if unknown:
                raise SpecFormatError(f"{where}: image_class keys {unknown} are not tilting summands")
            image = FreeAbelianElement.from_mapping(
                simple_basis, {simple_label(k): v for k, v in raw.items()})
        angles.append(Angle(terms, gamma, image))

    pairs = []
    for i, p in enumerate(_require(doc, "exchange_pairs", list)):
        where = f"exchange_pairs[{i}]"
        if not isinstance(p, dict):
            raise SpecFormatError(f"{where}: expected an object")
        pairs.append(ExchangePairDecl(
            _require(p, "s0", str, where), _require(p, "s_top", str, where),
            _require(p, "angle01", int, where), _require(p, "angle02", int, where)))

    cy = _require(doc, "calabi_yau_2d", bool)
    spec = CategorySpec(d, tuple(indecs), suspension, hom, tuple(tilting), resolutions,
                        tuple(angles), tuple(pairs), cy)
    return with_trivial_resolutions(spec)


def load_spec(text: str, strict: bool = True) -> CategorySpec:
    """Parse a JSON spec document.

    With ``strict`` the result is also validated and any violation raises
    :class:`SpecValidationError`.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecFormatError(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from e
    spec = spec_from_dict(doc)
    if strict:
        problems = validate(spec)
        if problems:
            raise SpecValidationError(problems)
    return spec


def spec_to_dict(spec: CategorySpec) -> dict[str, Any]:
    order = {n: i for i, n in enumerate(spec.indecs)}
    key = lambda n: (order.get(n, len(order)), n)  # noqa: E731

    def obj(o: ObjectExpr) -> list[str]:
        return sorted(o.names(), key=key)

    def res(r: Resolution) -> dict[str, Any]:
        out: dict[str, Any] = {"terms": [obj(t) for t in r.terms]}
        if r.radical_verified:
            out["radical_verified"] = True
        return out

    resolutions = {}
    for n in sorted(spec.resolutions, key=key):
        rs = spec.resolutions[n]
        resolutions[n] = res(rs[0]) if len(rs) == 1 else [res(r) for r in rs]

    def image(a: Angle) -> dict[str, int] | None:
        if a.image_class is None:
            return None
        # basis labels are S(<tilting name>); the file is keyed by the tilting name
        return {t: c for t, c in zip(spec.tilting, a.image_class.coeffs) if c}

    return {
        "d": spec.d,
        "indecomposables": list(spec.indecs),
        "suspension": {n: spec.suspension[n] for n in sorted(spec.suspension, key=key)},
        "hom_dim": [[a, b, dim] for (a, b), dim in sorted(spec.hom.items(),
                                                         key=lambda kv: (key(kv[0][0]), key(kv[0][1])))],
        "tilting": list(spec.tilting),
        "resolutions": resolutions,
        "angles": [{"terms": [obj(t) for t in a.terms], "gamma_nonzero": a.gamma_nonzero,
                    "image_class": image(a)} for a in spec.angles],
        "exchange_pairs": [{"s0": p.s0, "s_top": p.s_top, "angle01": p.angle01, "angle02": p.angle02}
                           for p in spec.exchange_pairs],
        "calabi_yau_2d": spec.calabi_yau_2d,
    }


def emit_spec(spec: CategorySpec) -> str:
    return json.dumps(spec_to_dict(spec), indent=2, ensure_ascii=False) + "\n"
