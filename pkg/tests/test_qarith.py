import random
from fractions import Fraction

import pytest

from planalg.qarith import (
    LaurentPoly,
    RatFunc,
    lp_eval,
    quantum_binom,
    quantum_int,
    rf_solve,
    rf_sum,
    verify_cor_q,
    verify_lemma_q,
)


def qint_numeric(n, q0):
    # independent oracle: (q^n - q^-n) / (q - q^-1)
    q0 = Fraction(q0)
    if n == 0:
        return Fraction(0)
    return (q0**n - q0**-n) / (q0 - 1 / q0)


def qbinom_numeric(n, k, q0):
    num = Fraction(1)
    den = Fraction(1)
    for i in range(1, k + 1):
        num *= qint_numeric(n - k + i, q0)
        den *= qint_numeric(i, q0)
    return num / den


POINTS = [Fraction(2), Fraction(3, 2), Fraction(-5, 3)]


def test_quantum_int_against_numeric_oracle():
    for n in range(0, 12):
        p = quantum_int(n)
        for q0 in POINTS:
            assert lp_eval(p, q0) == qint_numeric(n, q0)


def test_quantum_int_rendering():
    assert str(quantum_int(1)) == "1"
    assert str(quantum_int(3)) == "q^2 + 1 + q^-2"


def test_quantum_binom_against_numeric_oracle():
    for n in range(0, 9):
        for k in range(0, n + 1):
            p = quantum_binom(n, k)
            assert isinstance(p, LaurentPoly)  # a polynomial, not a fraction
            for q0 in POINTS:
                assert lp_eval(p, q0) == qbinom_numeric(n, k, q0)


def test_quantum_binom_symmetry():
    for n in range(0, 9):
        for k in range(0, n + 1):
            assert quantum_binom(n, k) == quantum_binom(n, n - k)


def test_laurent_arithmetic_against_evaluation():
    rng = random.Random(11)
    for _ in range(50):
        a = LaurentPoly(
            {rng.randint(-5, 5): rng.randint(-9, 9) for _ in range(4)}
        )
        b = LaurentPoly(
            {rng.randint(-5, 5): rng.randint(-9, 9) for _ in range(4)}
        )
        for q0 in POINTS:
            assert lp_eval(a + b, q0) == lp_eval(a, q0) + lp_eval(b, q0)
            assert lp_eval(a - b, q0) == lp_eval(a, q0) - lp_eval(b, q0)
            assert lp_eval(a * b, q0) == lp_eval(a, q0) * lp_eval(b, q0)


def test_ratfunc_normalization():
    two = LaurentPoly({0: 2})
    q = LaurentPoly({1: 1})
    assert RatFunc(quantum_int(4), quantum_int(2)) == RatFunc(
        quantum_int(4) * two, quantum_int(2) * two
    )
    a = RatFunc(q * quantum_int(3), q * quantum_int(2))
    b = RatFunc(quantum_int(3), quantum_int(2))
    assert a == b


def test_ratfunc_field_ops():
    rng = random.Random(5)
    for _ in range(30):
        a = RatFunc(rng.randint(-8, 8), rng.randint(1, 8))
        b = RatFunc(quantum_int(rng.randint(1, 5)), quantum_int(rng.randint(1, 5)))
        q0 = Fraction(3, 2)
        assert (a + b).eval(q0) == a.eval(q0) + b.eval(q0)
        assert (a * b).eval(q0) == a.eval(q0) * b.eval(q0)
        if b:
            assert (a / b).eval(q0) == a.eval(q0) / b.eval(q0)
            assert b * b.inverse() == RatFunc.one()


def test_lemma_q_sample_grid():
    for k in range(1, 8):
        for l in range(1, 8):
            assert verify_lemma_q(k, l)


def test_cor_q_sample_grid():
    for k in range(1, 6):
        for l in range(1, 6):
            assert verify_cor_q(k, l)


def test_lemma_q_numeric_cross_check():
    # the identity also holds pointwise at generic rational points
    for k in range(1, 6):
        for l in range(1, 6):
            for q0 in POINTS:
                lhs = qint_numeric(k + l, q0)
                rhs = qint_numeric(k, q0) * qint_numeric(l + 1, q0) - qint_numeric(
                    k - 1, q0
                ) * qint_numeric(l, q0)
                assert lhs == rhs


def test_rf_solve_known_solution():
    rng = random.Random(99)
    for _ in range(10):
        n = rng.randint(1, 4)
        sol = [RatFunc(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)]
        rows = []
        rhs = []
        for _ in range(n + 1):
            row = [RatFunc(quantum_int(rng.randint(0, 3))) for _ in range(n)]
            rows.append(row)
            rhs.append(rf_sum((c * x, 1) for c, x in zip(row, sol)))
        out = rf_solve(rows, rhs)
        assert out.status == "ok"
        for row, b in zip(rows, rhs):
            assert rf_sum((c * x, 1) for c, x in zip(row, out.solution)) == b


def test_rf_solve_inconsistent():
    one = RatFunc.one()
    out = rf_solve([[one], [one]], [one, one + one])
    assert out.status == "inconsistent"


def test_rf_solve_numeric_precheck_agrees():
    one = RatFunc.one()
    out = rf_solve([[one], [one]], [one, one + one], precheck_q0=Fraction(2))
    assert out.status == "inconsistent"


def test_domain_errors():
    with pytest.raises(ValueError):
        quantum_int(-1)
    with pytest.raises(ValueError):
        quantum_binom(3, 4)
    with pytest.raises(ValueError):
        verify_lemma_q(0, 1)
