from fractions import Fraction

from hypothesis import strategies as st

from spraylab.core.vectors import QVector

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=8)
positive_rationals = st.fractions(
    min_value=Fraction(1, 8), max_value=20, max_denominator=8
)
small_ints = st.integers(min_value=-6, max_value=6)


def vectors(d: int, elements=rationals) -> st.SearchStrategy[QVector]:
    return st.tuples(*([elements] * d)).map(QVector)


def nonzero_vectors(d: int) -> st.SearchStrategy[QVector]:
    return vectors(d).filter(lambda v: not v.is_zero())


def distinct_points(
    d: int, min_size: int = 1, max_size: int = 8
) -> st.SearchStrategy[list]:
    return st.lists(
        vectors(d, small_ints.map(Fraction)),
        min_size=min_size,
        max_size=max_size,
        unique=True,
    )


dimensions = st.integers(min_value=2, max_value=4)
rational_texts = rationals.map(lambda q: f"{q.numerator}/{q.denominator}")


def v(*values) -> QVector:
    return QVector.of(*values)
