from hypothesis import strategies as st

from qtnabla.ring import QtPoly


@st.composite
def polys(draw, max_terms=4, lo=-2, hi=3):
    exps = st.tuples(st.integers(lo, hi), st.integers(lo, hi), st.integers(0, 2))
    terms = draw(st.dictionaries(exps, st.integers(-5, 5), max_size=max_terms))
    return QtPoly(terms)


@st.composite
def partitions_of(draw, max_size=12):
    parts = draw(st.lists(st.integers(1, max_size), max_size=max_size))
    parts = sorted(parts, reverse=True)
    out, total = [], 0
    for p in parts:
        if total + p > max_size:
            break
        out.append(p)
        total += p
    return tuple(sorted(out, reverse=True))
