from __future__ import annotations

import functools

import pytest
from hypothesis import settings

from softtop.cli import bundled_corpus
from softtop.documents import parse_document
from softtop.explorer import corpus

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def example(name: str):
    """Parsed bundled document ``name`` (closed if the printed family is not)."""
    text = (bundled_corpus() / f"{name}.json").read_text(encoding="utf-8")
    return parse_document(text, generate=True)


@functools.lru_cache(maxsize=None)
def small_corpus(max_cells: int = 4) -> tuple:
    return tuple(corpus(max_cells))


@pytest.fixture(scope="session")
def spaces4():
    return small_corpus(4)


@pytest.fixture(scope="session")
def spaces3():
    return small_corpus(3)


def relabel(sp, rng):
    """Image of ``sp`` under a random bijective soft mapping onto fresh
    labels, together with that mapping."""
    from softtop.soft_core import SoftMapping, Universe
    from softtop.topology import SoftSpace

    u = sp.universe
    pts = list(range(u.n_points))
    prm = list(range(u.n_params))
    rng.shuffle(pts)
    rng.shuffle(prm)
    target = Universe(
        tuple(f"q{rng.randrange(10**6)}_{i}" for i in range(u.n_points)),
        tuple(f"b{rng.randrange(10**6)}_{i}" for i in range(u.n_params)),
    )
    m = SoftMapping(u, target, tuple(pts), tuple(prm))
    return SoftSpace.from_codes(target, {m.image_bits(c) for c in sp.codes}), m


# One line per acceptance criterion, echoed after the test summary so the
# verdicts are visible without ``-s``.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
