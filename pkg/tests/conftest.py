import pytest


def pytest_addoption(parser):
    parser.addoption("--optional-heavy", action="store_true", default=False,
                     help="run enumerations of ~4e8 points (cubic surfaces over F_3)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--optional-heavy"):
        return
    skip = pytest.mark.skip(reason="needs --optional-heavy")
    for item in items:
        if "heavy" in item.keywords:
            item.add_marker(skip)
