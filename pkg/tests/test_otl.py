import random
from itertools import product

import pytest

from planalg.qarith import LaurentPoly, RatFunc, quantum_int
from planalg.tldiag import Element, compose, e_matching, enumerate_basis, tensor
from planalg.jw import jones_wenzl
from planalg.otl import (
    DOWN,
    UP,
    OrElement,
    OrMatching,
    alpha,
    beta,
    canonical_diagram,
    iota,
    lift,
    normalize,
    or_close_trace,
    or_compose,
    or_tensor,
    oriented_cap,
    oriented_cup,
    turning_exponent2,
    verify_arc_move,
    verify_ia,
    verify_oio,
    verify_teleport,
)

Q = RatFunc(LaurentPoly({1: 1}))
QINV = RatFunc(LaurentPoly({-1: 1}))
DELTA = Q + QINV
EMPTY = OrMatching.make(enumerate_basis(0, 0)[0], ())


def all_oriented(i, j):
    return [
        OrMatching.make(m, d)
        for m in enumerate_basis(i, j)
        for d in product((False, True), repeat=len(m.pairs))
    ]


def rand_tl(rng, i, j):
    basis = enumerate_basis(i, j)
    x = Element.zero(i, j)
    for m in rng.sample(basis, k=min(3, len(basis))):
        x = x + Element.from_matching(m, RatFunc(rng.randint(-3, 3)))
    return x


def rand_or(rng, i, j):
    pool = all_oriented(i, j)
    x = OrElement.zero(i, j)
    for m in rng.sample(pool, k=min(4, len(pool))):
        x = x + OrElement.from_matching(m, RatFunc(rng.randint(-3, 3)))
    return x


def test_signatures_derived_from_directions():
    i = iota("^v")
    (m,) = i.combo
    assert m.bottom_sig == "^v" and m.top_sig == "^v"
    assert m.reversed().bottom_sig == "v^"


def test_loop_scalars_both_chiralities():
    # one closed loop: counterclockwise gives q, clockwise q^-1
    ccw = or_compose(oriented_cap(2, 0, False), oriented_cup(2, 0, True))
    cw = or_compose(oriented_cap(2, 0, True), oriented_cup(2, 0, False))
    assert ccw.coeff(EMPTY) == Q
    assert cw.coeff(EMPTY) == QINV
    # both orientations together burst into q + q^-1
    assert ccw.coeff(EMPTY) + cw.coeff(EMPTY) == DELTA


def test_orientation_mismatch_composes_to_zero():
    up = iota("^")
    down = iota("v")
    assert or_compose(up, down).is_zero()


def test_lift_functorial_random():
    rng = random.Random(2024)
    done = 0
    while done < 60:
        i, j, k = (rng.randint(0, 3) for _ in range(3))
        if (i + j) % 2 or (j + k) % 2:
            continue
        f = rand_tl(rng, j, k)
        g = rand_tl(rng, i, j)
        assert lift(compose(f, g)) == or_compose(lift(f), lift(g))
        assert lift(tensor(f, g)) == or_tensor(lift(f), lift(g))
        done += 1


def test_lift_of_loop_bursts():
    cap = Element.from_matching(
        enumerate_basis(2, 0)[0]
    )
    cup = Element.from_matching(enumerate_basis(0, 2)[0])
    closed = or_compose(lift(cap), lift(cup))
    assert closed == OrElement.from_matching(EMPTY, DELTA)


def test_iota_partition_of_lifted_identity():
    for n in range(1, 5):
        sigs = ["".join(t) for t in product((UP, DOWN), repeat=n)]
        total = OrElement.zero(n, n)
        for s in sigs:
            total = total + iota(s)
        assert total == lift(Element.identity(n))
        for a in sigs:
            for b in sigs:
                prod = or_compose(iota(a), iota(b))
                assert prod == (iota(a) if a == b else OrElement.zero(n, n))


def test_bubble_scalars():
    assert beta(1) == Q
    assert beta(-1) == QINV
    assert beta(2) == Q * Q
    assert alpha(3) == RatFunc.one()
    assert beta(1, mirror=True) == QINV


def test_lift_of_projector_idempotent():
    for n in range(1, 4):
        p = lift(jones_wenzl(n).element)
        assert or_compose(p, p) == p


def test_oriented_closure_of_projector():
    for n in range(1, 5):
        p = lift(jones_wenzl(n).element)
        assert or_close_trace(p) == RatFunc(quantum_int(n + 1))
        assert or_close_trace(p, mirror=True) == RatFunc(quantum_int(n + 1))


def test_iota_closure_counts_orientations():
    for s in ("^", "v", "^v", "^^", "vvv", "^vv"):
        e = s.count(UP) - s.count(DOWN)
        assert or_close_trace(iota(s)) == RatFunc(LaurentPoly({e: 1}))


def test_teleport():
    for s in ("", "^v", "v^", "^^vv"):
        assert verify_teleport(DELTA, s)
    with pytest.raises(ValueError):
        verify_teleport(DELTA, "^^")


def test_ia_and_oio():
    for k in range(0, 7):
        for n in range(0, k + 1):
            assert verify_ia(k, n)
    for n in range(0, 7):
        assert verify_oio(n)


def test_arc_move_small():
    for n in range(0, 3):
        r = verify_arc_move(n)
        assert r, str(r)
        assert r.convention == "default"
        # each validating combo comes with its all-arrows-reversed mirror
        for v, d, es in r.combos:
            assert (DOWN if v == UP else UP, -d, -es) in r.combos


# -- the pop-switch quotient ------------------------------------------


def test_zigzag_pops_to_loop_scalar():
    m = e_matching(2, 0)
    pops = {
        (True, False): QINV,  # boundary signs ^v on both edges
        (False, True): Q,  # boundary signs v^ on both edges
    }
    for dirs, scalar in pops.items():
        om = OrMatching.make(m, dirs)
        nf = normalize(OrElement.from_matching(om))
        want = iota(om.bottom_sig).scale(scalar)
        assert nf == normalize(want) == want
    # mixed boundary signatures have no vertical diagram to pop to
    for dirs in ((True, True), (False, False)):
        om = OrMatching.make(m, dirs)
        x = OrElement.from_matching(om)
        assert normalize(x) == x


def test_normalize_is_an_algebra_map():
    rng = random.Random(7)
    done = 0
    while done < 40:
        i, j, k = (rng.randint(0, 3) for _ in range(3))
        if (i + j) % 2 or (j + k) % 2:
            continue
        f = rand_or(rng, j, k)
        g = rand_or(rng, i, j)
        lhs = normalize(or_compose(f, g))
        rhs = normalize(or_compose(normalize(f), normalize(g)))
        assert lhs == rhs
        done += 1


def test_normalize_idempotent_and_trace_compatible():
    rng = random.Random(3)
    for n in (1, 2, 3):
        for _ in range(10):
            x = rand_or(rng, n, n)
            assert normalize(normalize(x)) == normalize(x)
            assert or_close_trace(normalize(x)) == or_close_trace(x)


def test_canonical_diagram_prefers_vertical_strands():
    c = canonical_diagram("^v", "^v")
    assert all(p1[0] != p2[0] for p1, p2 in c.matching.pairs)
    assert canonical_diagram("^", "v") is None  # no flow-conserving diagram


def test_turning_exponent_of_loops():
    # a counterclockwise loop's two turnbacks together turn once
    ccw_cup = oriented_cup(2, 0, True)
    (m,) = ccw_cup.combo
    assert turning_exponent2(m) == 1
