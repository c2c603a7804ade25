"""Hypothesis strategies shared by the property tests."""
from hypothesis import strategies as st

from supersym.linear import GradedSuperSpace, Slot
from supersym.qmatrix import QMatrix

small_ints = st.integers(min_value=-4, max_value=4)
slots = st.builds(Slot, st.integers(0, 3), st.integers(0, 2))


@st.composite
def spaces(draw, max_slots=3, max_dim=2, min_total=0):
    chosen = draw(st.lists(slots, max_size=max_slots, unique=True))
    dims = {s: draw(st.integers(1, max_dim)) for s in chosen}
    V = GradedSuperSpace(dims)
    if V.total_dim < min_total:
        V = GradedSuperSpace({**dims, Slot(1, 0): dims.get(Slot(1, 0), 0) + min_total})
    return V


@st.composite
def super_spaces(draw, max_odd=2, max_even=2):
    """Spaces with one odd and one even slot (either may be absent)."""
    o = draw(st.integers(0, max_odd))
    e = draw(st.integers(0, max_even))
    return GradedSuperSpace({Slot(1, 0): o, Slot(0, 0): e})


@st.composite
def qmatrices(draw, max_rows=5, max_cols=5, rows=None, cols=None):
    n = rows if rows is not None else draw(st.integers(0, max_rows))
    m = cols if cols is not None else draw(st.integers(0, max_cols))
    num = draw(st.lists(st.lists(small_ints, min_size=m, max_size=m), min_size=n, max_size=n))
    den = draw(st.integers(1, 3))
    from fractions import Fraction

    return QMatrix.from_rows([[Fraction(x, den) for x in row] for row in num], ncols=m)
