import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)),
                                os.pardir))


def pytest_configure(config):
    config.addinivalue_line("markers",
                            "slow: desk-scale simulation, run with "
                            "TORICCA_SLOW=1")


def pytest_collection_modifyitems(config, items):
    if os.environ.get("TORICCA_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="set TORICCA_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)
