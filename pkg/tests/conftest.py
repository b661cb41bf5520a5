import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tropfrieze.catspec import (  # noqa: E402
    Angle,
    CategorySpec,
    ExchangePairDecl,
    ObjectExpr,
    Resolution,
)
from tropfrieze.example import builtin_ot_a4  # noqa: E402
from tropfrieze.frieze import cone_matrix  # noqa: E402
from tropfrieze.index import index_table  # noqa: E402
from tropfrieze.theta import theta_from_spec  # noqa: E402


@pytest.fixture(scope="session")
def spec():
    return builtin_ot_a4()


@pytest.fixture(scope="session")
def table(spec):
    return index_table(spec)


@pytest.fixture(scope="session")
def theta(spec, table):
    return theta_from_spec(spec, table)


@pytest.fixture(scope="session")
def cone(spec, theta):
    return cone_matrix(spec, theta)


def rename_spec(spec: CategorySpec, new: dict) -> CategorySpec:
    """Relabel every indecomposable; the mathematics must not notice."""
    def obj(o):
        return ObjectExpr(tuple((new[n], m) for n, m in o.counts))

    tilting = tuple(new[t] for t in spec.tilting)
    simple_basis = tuple(f"S({t})" for t in tilting)

    def angle(a):
        image = None
        if a.image_class is not None:
            image = type(a.image_class)(simple_basis, a.image_class.coeffs)
        return Angle(tuple(obj(t) for t in a.terms), a.gamma_nonzero, image)

    return CategorySpec(
        spec.d,
        tuple(new[n] for n in spec.indecs),
        {new[a]: new[b] for a, b in spec.suspension.items()},
        {(new[a], new[b]): v for (a, b), v in spec.hom.items()},
        tilting,
        {new[n]: tuple(Resolution(tuple(obj(t) for t in r.terms), r.radical_verified) for r in rs)
         for n, rs in spec.resolutions.items()},
        tuple(angle(a) for a in spec.angles),
        tuple(ExchangePairDecl(new[p.s0], new[p.s_top], p.angle01, p.angle02) for p in spec.exchange_pairs),
        spec.calabi_yau_2d,
    )


# --- acceptance summary -----------------------------------------------------

_ACCEPTANCE: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    n, text = marker.args
    entry = _ACCEPTANCE.setdefault(n, [text, True])
    entry[1] = entry[1] and call.excinfo is None


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        text, ok = _ACCEPTANCE[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {n:>2}: {text}")
