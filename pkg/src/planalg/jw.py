"""Jones-Wenzl idempotents: construction, property checking, oracle.

The projector on n strands is built by the strand-adding recursion
p_{k+1} = p_k (x) id - ([k]/[k+1]) (p_k (x) id) E_k (p_k (x) id)
and is accepted only after passing the defining-property checker:
nonzero, idempotent, and annihilated by every adjacent cap and cup.
"""

from __future__ import annotations

from dataclasses import dataclass

from .qarith import RatFunc, quantum_int, rf_solve
from .tldiag import (
    Element,
    cap_matching,
    compose,
    cup_matching,
    delta_power,
    enumerate_basis,
    identity_matching,
    tensor,
)


@dataclass
class PropertyReport:
    """The four defining properties, each checked exactly."""

    n: int
    nonzero: bool
    idempotent: bool
    left_uncappable: bool  # every cap annihilates from above
    right_uncappable: bool  # every cup annihilates from below

    @property
    def all_ok(self):
        return (
            self.nonzero
            and self.idempotent
            and self.left_uncappable
            and self.right_uncappable
        )

    def __str__(self):
        def yn(b):
            return "yes" if b else "no"

        return (
            "nonzero=%s idempotent=%s left-uncappable=%s right-uncappable=%s"
            % (
                yn(self.nonzero),
                yn(self.idempotent),
                yn(self.left_uncappable),
                yn(self.right_uncappable),
            )
        )


@dataclass
class JonesWenzl:
    n: int
    element: Element
    report: PropertyReport


def check_jw_properties(x):
    """Exact check of the four defining properties for an endomorphism."""
    if x.bottom != x.top:
        raise ValueError("check_jw_properties: endomorphisms only")
    n = x.bottom
    nonzero = bool(x)
    idempotent = compose(x, x) == x
    left = all(
        compose(Element.from_matching(cap_matching(n, k)), x).is_zero()
        for k in range(n - 1)
    )
    right = all(
        compose(x, Element.from_matching(cup_matching(n, k))).is_zero()
        for k in range(n - 1)
    )
    return PropertyReport(n, nonzero, idempotent, left, right)


_JW_CACHE = {}


def clear_jw_cache():
    _JW_CACHE.clear()


def jones_wenzl(n):
    """The Jones-Wenzl idempotent on n strands, with its property report."""
    if n < 1:
        raise ValueError("jones_wenzl: n must be >= 1")
    cached = _JW_CACHE.get(n)
    if cached is not None:
        return cached
    elem = Element.identity(1)
    for k in range(1, n):
        known = _JW_CACHE.get(k + 1)
        if known is not None:
            elem = known.element
            continue
        prev = elem
        wide = tensor(prev, Element.identity(1))
        cap = Element.from_matching(cap_matching(k + 1, k - 1))
        cup = Element.from_matching(cup_matching(k + 1, k - 1))
        upper = compose(wide, cup)
        lower = compose(cap, wide)
        coeff = RatFunc(quantum_int(k), quantum_int(k + 1))
        elem = wide - compose(upper, lower).scale(coeff)
    report = check_jw_properties(elem)
    if not report.all_ok:
        raise ArithmeticError(
            "jones_wenzl(%d) failed its property check: %s" % (n, report)
        )
    jw = JonesWenzl(n, elem, report)
    _JW_CACHE[n] = jw
    return jw


def jw_solve_by_uniqueness(n):
    """Independent oracle: solve the uncappability linear system.

    Over the diagram basis of End(n), impose coefficient 1 on the
    identity and cap_k . x = 0 for every position; the solution must be
    unique and idempotent.  Desk scale only.
    """
    if not 1 <= n <= 6:
        raise ValueError("jw_solve_by_uniqueness: 1 <= n <= 6 only")
    basis = enumerate_basis(n, n)
    index = {m: i for i, m in enumerate(basis)}
    rows = []
    rhs = []
    zero = RatFunc.zero()
    one = RatFunc.one()
    for k in range(n - 1):
        cap = cap_matching(n, k)
        # cap_k . d is a single diagram times delta^loops, so the
        # equations group the unknowns by image diagram
        images = {}
        for d in basis:
            m, loops = _compose_single(cap, d)
            images.setdefault(m, []).append((index[d], delta_power(len(loops))))
        for contribs in images.values():
            row = [zero] * len(basis)
            for i, c in contribs:
                row[i] = c
            rows.append(row)
            rhs.append(zero)
    norm = [zero] * len(basis)
    norm[index[identity_matching(n)]] = one
    rows.append(norm)
    rhs.append(one)
    sol = rf_solve(rows, rhs)
    if sol.status != "ok":
        raise ArithmeticError("uncappability system inconsistent (bug)")
    if sol.rank != len(basis):
        raise ArithmeticError("uncappability system not uniquely solvable (bug)")
    combo = {m: sol.solution[i] for m, i in index.items() if sol.solution[i]}
    elem = Element(n, n, combo)
    if compose(elem, elem) != elem:
        raise ArithmeticError("uniqueness-system solution is not idempotent")
    return elem


def _compose_single(mf, mg):
    from .tldiag import compose_matchings

    return compose_matchings(mf, mg)
