from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy import GF
from sympy.polys.matrices import DomainMatrix

from aomotocurves.field_linalg import (
    FieldElement,
    FieldMatrix,
    divisors,
    gcd_list,
    is_prime,
    lcm_list,
    nullspace_basis,
    prime_power_base,
    rank_gf2,
    rational_reduce,
    require_prime,
    row_space_basis,
)

PRIMES = [2, 3, 5, 7, 11]


def sympy_rank(rows, p, cols):
    if not rows:
        return 0
    dom = GF(p)
    return DomainMatrix([[dom(x) for x in r] for r in rows], (len(rows), cols), dom).rank()


@st.composite
def matrices(draw):
    p = draw(st.sampled_from(PRIMES))
    n = draw(st.integers(0, 7))
    m = draw(st.integers(1, 7))
    rows = [[draw(st.integers(0, p - 1)) for _ in range(m)] for _ in range(n)]
    return p, rows, m


def test_is_prime_matches_sympy():
    assert [n for n in range(200) if is_prime(n)] == list(sympy.primerange(0, 200))
    assert is_prime(2**61 - 1)
    assert not is_prime(2**61 + 1)


def test_require_prime_rejects_composites():
    with pytest.raises(ValueError):
        require_prime(9)
    assert require_prime(13) == 13


def test_field_element_arithmetic():
    a = FieldElement(3, 5)
    b = FieldElement(4, 5)
    assert int(a + b) == 2
    assert int(a * b) == 2
    assert int(a - b) == 4
    assert int(a / b) == int(a * b.inverse())
    assert int(-a) == 2
    with pytest.raises(ZeroDivisionError):
        FieldElement(0, 5).inverse()
    with pytest.raises(TypeError):
        a + 1.5


@given(matrices())
def test_rank_matches_independent_oracle(case):
    p, rows, cols = case
    m = FieldMatrix.from_rows(p, rows, cols=cols)
    assert m.rank() == sympy_rank(rows, p, cols)


@given(matrices())
def test_rank_nullity_and_nullspace(case):
    p, rows, cols = case
    m = FieldMatrix.from_rows(p, rows, cols=cols)
    basis = nullspace_basis(m)
    assert m.rank() + len(basis) == cols
    for v in basis:
        assert not any(m.apply(v))
    # basis vectors are independent
    assert sympy_rank([list(v) for v in basis], p, cols) == len(basis)


@given(st.lists(st.integers(0, 2**8 - 1), max_size=10))
def test_rank_gf2_bitmask(columns):
    rows = [[(c >> i) & 1 for c in columns] for i in range(8)]
    expected = sympy_rank(rows, 2, len(columns)) if columns else 0
    assert rank_gf2(columns) == expected


@given(matrices())
def test_row_space_basis_spans_rows(case):
    p, rows, cols = case
    basis = row_space_basis(p, rows)
    assert len(basis) == sympy_rank(rows, p, cols)
    if rows:
        assert sympy_rank(rows + [list(b) for b in basis], p, cols) == len(basis)


def test_nullspace_is_deterministic():
    m = FieldMatrix.from_rows(3, [[1, 1, 1]])
    assert nullspace_basis(m) == [(2, 1, 0), (2, 0, 1)]


def test_from_rows_rejects_ragged_and_foreign_entries():
    with pytest.raises(ValueError):
        FieldMatrix.from_rows(3, [[1, 2], [1]])
    with pytest.raises(ValueError):
        FieldMatrix.from_rows(3, [[FieldElement(1, 5)]])


def test_integer_helpers():
    assert gcd_list([0, 6, 0, 9]) == 3
    assert gcd_list([0, 0]) == 0
    assert lcm_list([4, 6]) == 12
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert [prime_power_base(n) for n in (1, 2, 8, 9, 12, 16, 21, 49)] == [None, 2, 2, 3, None, 2, None, 7]
    assert rational_reduce(6, -4) == Fraction(-3, 2)
    with pytest.raises(ZeroDivisionError):
        rational_reduce(1, 0)
