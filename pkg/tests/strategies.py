"""Hypothesis strategies for random representations and morphisms."""

from hypothesis import strategies as st

from torsionlab.exactla import Field, Matrix
from torsionlab.quiver import Quiver
from torsionlab.reps import Representation, hom_basis, linear_combination

A3 = Quiver.linear_a(3)


@st.composite
def representations(draw, quiver=A3, p=2, max_dim=2):
    field = Field(p)
    dims = draw(st.lists(st.integers(0, max_dim), min_size=quiver.vertex_count, max_size=quiver.vertex_count))
    elem = st.integers(0, p - 1) if p else st.integers(-2, 2)
    maps = []
    for s, t in quiver.arrows:
        maps.append(draw(st.lists(st.lists(elem, min_size=dims[s], max_size=dims[s]),
                                  min_size=dims[t], max_size=dims[t])))
    return Representation.from_lists(quiver, field, dims, maps)


@st.composite
def morphisms(draw, quiver=A3, p=2):
    m = draw(representations(quiver, p))
    n = draw(representations(quiver, p))
    basis = hom_basis(m, n)
    coeffs = draw(st.lists(st.integers(0, max(p - 1, 2)), min_size=len(basis), max_size=len(basis)))
    return linear_combination(basis, [Field(p)(c) for c in coeffs], m, n)


@st.composite
def invertible(draw, field, n):
    while True:
        rows = draw(st.lists(st.lists(st.integers(0, 2), min_size=n, max_size=n), min_size=n, max_size=n))
        m = Matrix.from_rows(field, rows, n)
        if m.rank == n:
            return m
