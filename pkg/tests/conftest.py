import os
import pathlib

import pytest

# Slice enumeration is disk-cached; give the suite a persistent default so
# repeated runs only pay the elimination, not the enumeration.
if not os.environ.get("HAIRY_CACHE_DIR"):
    _cache = pathlib.Path(__file__).resolve().parent.parent / ".hairy-cache"
    os.environ["HAIRY_CACHE_DIR"] = str(_cache)
    from hairygraph import slices as _slices
    _slices.set_cache_dir(str(_cache))


def pytest_addoption(parser):
    parser.addoption("--run-slow", action="store_true", default=False,
                     help="run slow tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip = pytest.mark.skip(reason="slow; use --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)
