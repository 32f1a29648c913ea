import functools

import pytest
from hypothesis import HealthCheck, settings

from leala import constructions as C
from leala.roots import build_root_datum, scale_form
from leala.scalars import T

settings.register_profile("leala", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("leala")


@functools.lru_cache(maxsize=None)
def factory(name: str):
    """Named factory instances shared across test modules."""
    table = {
        "A1": lambda: C.build_split_simple("A1"),
        "A2": lambda: C.build_split_simple("A2"),
        "B2": lambda: C.build_split_simple("B2"),
        "C2": lambda: C.build_split_simple("C2"),
        "A3": lambda: C.build_split_simple("A3"),
        "B3": lambda: C.build_split_simple("B3"),
        "D4": lambda: C.build_split_simple("D4"),
        "loop": lambda: C.build_loop_eala("A1", C.GroupDatum((1,), 3)),
        "loop-w2": lambda: C.build_loop_eala("A1", C.GroupDatum((1,), 2)),
        "loop-Qt": lambda: C.build_loop_eala("A1", C.GroupDatum((1, T), 1)),
        "loop-B2": lambda: C.build_loop_eala("B2", C.GroupDatum((1,), 1)),
        "heis": lambda: C.build_heisenberg_null((0, 1, -1), 1),
        "heis2": lambda: C.build_heisenberg_null((0, 1, -1, 2, -2), 2),
        "witt": lambda: C.build_witt_null(2, 2),
        "witt-mr": lambda: C.build_witt_null(2, 2, "moody_rao"),
        "not-tame": lambda: C.build_indecomposable_not_tame(),
        "level3": lambda: C.build_nullity_zero("A", [3], [C.EX_6_2_1]).levels[0].algebra,
    }
    return table[name]()


@functools.lru_cache(maxsize=None)
def datum(name: str):
    return build_root_datum(factory(name))


@functools.lru_cache(maxsize=None)
def scaled(name: str):
    return scale_form(datum(name))[1]


FACTORY = ["A1", "A2", "B2", "C2", "A3", "B3", "D4", "loop", "loop-Qt", "loop-B2",
           "heis", "heis2", "witt", "witt-mr", "not-tame", "level3"]


@pytest.fixture(params=FACTORY)
def factory_name(request):
    return request.param


# acceptance criteria outcomes, filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for n in sorted(ACCEPTANCE):
        verdict, title = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {verdict}  {title}")
