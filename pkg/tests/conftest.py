import pytest

from blowupchow.presentation import build_presentation
from blowupchow.surface import load_surface

# the preset grid exercised by the verification-style tests
PRESET_SELECTORS = ("p2", "p1xp1", "fa:2", "p2+blowups:1")


@pytest.fixture(scope="session")
def surfaces():
    return {sel: load_surface(sel) for sel in PRESET_SELECTORS}


@pytest.fixture(scope="session")
def rings():
    """Session cache of presented rings; Groebner bases cache inside them."""
    cache = {}

    def get(selector, n):
        key = (selector, n)
        if key not in cache:
            cache[key] = build_presentation(load_surface(selector), n)
        return cache[key]

    return get
