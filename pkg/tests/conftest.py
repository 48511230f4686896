import os
import random

import pytest

from ratweyl.roots import build_root_system


def pytest_collection_modifyitems(config, items):
    if os.environ.get("RATWEYL_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="opt-in long run; set RATWEYL_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def rs_factory():
    return build_root_system


SMALL_TYPES = [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("C", 2), ("C", 3),
               ("D", 4), ("G", 2), ("F", 4)]
