from __future__ import annotations

import numpy as np
from hypothesis import strategies as st

from discspaces.series import CoeffSeries


@st.composite
def small_series(draw, max_degree: int = 12, min_degree: int = 1):
    """Random complex polynomial with a nonzero top-end coefficient somewhere past 0."""
    d = draw(st.integers(min_degree, max_degree))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    c = rng.normal(size=d + 1) + 1j * rng.normal(size=d + 1)
    return CoeffSeries(c)


def random_series(seed: int, degree: int) -> CoeffSeries:
    rng = np.random.default_rng(seed)
    return CoeffSeries(rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1))
