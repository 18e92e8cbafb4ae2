import pytest

from planalg.qarith import RatFunc, quantum_int
from planalg.tldiag import (
    Element,
    cap_matching,
    close_trace,
    compose,
    cup_matching,
    e_matching,
)
from planalg.jw import (
    check_jw_properties,
    clear_jw_cache,
    jones_wenzl,
    jw_solve_by_uniqueness,
)


def test_p1_is_identity():
    assert jones_wenzl(1).element == Element.identity(1)


def test_p2_closed_form():
    # p_2 = id - e_1 / [2], the first step of the recursion done by hand
    want = Element.identity(2) - Element.from_matching(e_matching(2, 0)).scale(
        RatFunc(1, quantum_int(2))
    )
    assert jones_wenzl(2).element == want


def test_defining_properties_small():
    for n in range(1, 6):
        r = jones_wenzl(n).report
        assert r.all_ok, str(r)


def test_annihilated_by_every_cap_and_cup():
    for n in range(2, 5):
        p = jones_wenzl(n).element
        for k in range(n - 1):
            assert compose(Element.from_matching(cap_matching(n, k)), p).is_zero()
            assert compose(p, Element.from_matching(cup_matching(n, k))).is_zero()


def test_idempotent_small():
    for n in range(1, 6):
        p = jones_wenzl(n).element
        assert compose(p, p) == p


def test_absorbs_smaller_projector():
    # p_n p_{n-1}(x)id = p_n, a consequence of uncappability
    from planalg.tldiag import tensor

    for n in range(2, 5):
        pn = jones_wenzl(n).element
        wide = tensor(jones_wenzl(n - 1).element, Element.identity(1))
        assert compose(pn, wide) == pn


def test_uniqueness_oracle_agreement():
    for n in range(1, 5):
        assert jones_wenzl(n).element == jw_solve_by_uniqueness(n)


def test_trace_is_quantum_integer():
    for n in range(1, 6):
        assert close_trace(jones_wenzl(n).element) == RatFunc(quantum_int(n + 1))


def test_checker_rejects_non_projector():
    r = check_jw_properties(Element.from_matching(e_matching(2, 0)))
    assert not r.all_ok
    assert not r.idempotent  # e_1^2 = delta e_1 != e_1


def test_cache_clear_recomputes():
    clear_jw_cache()
    a = jones_wenzl(3).element
    clear_jw_cache()
    assert jones_wenzl(3).element == a


def test_domain_errors():
    with pytest.raises(ValueError):
        jones_wenzl(0)
    with pytest.raises(ValueError):
        jw_solve_by_uniqueness(7)
