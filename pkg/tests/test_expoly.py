import math

import pytest
from hypothesis import given, strategies as st

from alcove_walks.errors import ConsistencyError, PreconditionError
from alcove_walks.expoly import ExpPoly, expoly_det

cosh = ExpPoly([(1, 0.5), (-1, 0.5)])
sinh = ExpPoly([(1, 0.5), (-1, -0.5)])


def test_extract_examples():
    one = ExpPoly.constant(1)
    assert one.extract(0) == 1
    assert one.extract(3) == 0
    assert cosh.extract(2) == 1
    assert sinh.extract(1) == 1
    with pytest.raises(PreconditionError):
        cosh.extract(-1)


def test_coalesce_and_cancel():
    f = ExpPoly([(2.0, 1.0), (2.0 + 1e-12, 1.0), (3.0, 0.0)])
    assert f.terms == ((2.0, 2.0),)
    assert len(cosh - cosh) == 0


def test_product_rule_cosh_sinh():
    # cosh^2 - sinh^2 = 1
    assert (cosh * cosh - sinh * sinh).chop().isclose(ExpPoly.constant(1))


def test_real_rejects_imaginary():
    with pytest.raises(ConsistencyError):
        ExpPoly([(0, 1j)]).real()
    assert ExpPoly([(0, 1 + 1e-13j)]).real().terms == ((0.0, 1.0),)


def test_det_small():
    m = [[cosh, sinh], [sinh, cosh]]
    assert expoly_det(m).chop().isclose(ExpPoly.constant(1))
    with pytest.raises(PreconditionError):
        expoly_det([[cosh] * 9] * 9)


_terms = st.lists(
    st.tuples(st.integers(-3, 3).map(float), st.floats(-2, 2, allow_nan=False)), min_size=0, max_size=4
)


@given(_terms, _terms, st.floats(-1, 1))
def test_ring_operations_match_evaluation(a, b, x):
    f, g = ExpPoly(a), ExpPoly(b)
    assert (f * g)(x) == pytest.approx(f(x) * g(x), abs=1e-9)
    assert (f + g)(x) == pytest.approx(f(x) + g(x), abs=1e-9)
    assert (f - g)(x) == pytest.approx(f(x) - g(x), abs=1e-9)


@given(_terms, st.integers(0, 6))
def test_extract_is_taylor_coefficient(a, k):
    # k! [x^k] sum c e^{fx} = sum c f^k
    f = ExpPoly(a)
    direct = sum(c * fr**k for fr, c in a)
    assert f.extract(k) == pytest.approx(direct, abs=1e-9)
    assert f(0.0) == pytest.approx(f.extract(0), abs=1e-12)
    assert math.isfinite(f.extract(k))
