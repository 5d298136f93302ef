import os
import pathlib

import goldilocks


def pytest_configure(config):
    # under ctest the freshly built extension must be the one imported
    expected = os.environ.get("GOLDILOCKS_EXPECT_PACKAGE")
    if expected:
        got = pathlib.Path(goldilocks.__file__).resolve().parent
        if got != pathlib.Path(expected).resolve():
            raise RuntimeError(f"imported goldilocks from {got}, expected {expected}")
