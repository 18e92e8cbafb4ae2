"""Oriented Temperley-Lieb diagrams with scalar oriented loops.

Every strand of a diagram carries a direction, and a closed oriented
loop evaluates to the scalar q (counterclockwise) or q^-1 (clockwise),
so that the two orientations of a loop together burst into q + q^-1.
Unoriented elements embed by summing over all strand orientations
(lift), and the vertical all-up diagrams iota_n together with the
bubble scalars beta_n / alpha_n act as in the oriented planar algebra
they model.

Validation in this model is evidence for, not proof of, statements in
the oriented planar algebra presented by generators and relations: the
model is the quotient where every closed diagram is already a scalar.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .qarith import LaurentPoly, RatFunc, lp_gcd_cached
from .tldiag import (
    BOT,
    TOP,
    Element,
    Matching,
    cap_matching,
    compose_matchings,
    cup_matching,
    enumerate_basis,
    flip_matching,
    identity_matching,
    tensor_matchings,
)

UP = "^"
DOWN = "v"

_RF_ONE = RatFunc.one()


def check_signature(s):
    if any(c not in (UP, DOWN) for c in s):
        raise ValueError("signature must be a string over '^' and 'v'")
    return s


class OrMatching:
    """A crossingless matching with a direction on every strand.

    dirs is aligned with the underlying matching's pairs: dirs[i] True
    means pairs[i] is oriented from its first point to its second.
    Boundary signs are derived: a point reads '^' when the strand flows
    upward through it (source on the bottom boundary, target on the
    top), 'v' otherwise.
    """

    __slots__ = ("matching", "dirs", "bottom_sig", "top_sig", "_hash")

    _POOL = {}

    def __init__(self, matching, dirs, _key=None):
        self.matching = matching
        self.dirs = dirs
        bot = [None] * matching.bottom
        top = [None] * matching.top
        for (p1, p2), fwd in zip(matching.pairs, dirs):
            src, tgt = (p1, p2) if fwd else (p2, p1)
            for pt, is_src in ((src, True), (tgt, False)):
                side, idx = pt
                up = is_src if side == BOT else not is_src
                (bot if side == BOT else top)[idx] = UP if up else DOWN
        self.bottom_sig = "".join(bot)
        self.top_sig = "".join(top)
        self._hash = hash(_key if _key is not None else (matching, dirs))

    @staticmethod
    def make(matching, dirs):
        dirs = tuple(bool(d) for d in dirs)
        if len(dirs) != len(matching.pairs):
            raise ValueError("one direction per strand required")
        key = (matching, dirs)
        cached = OrMatching._POOL.get(key)
        if cached is None:
            cached = OrMatching(matching, dirs, _key=key)
            OrMatching._POOL[key] = cached
        return cached

    @staticmethod
    def from_directed_pairs(bottom, top, directed):
        """Build from (source point, target point) pairs."""
        pairs = []
        for s, t in directed:
            a, b = sorted((s, t))
            pairs.append(((a, b), a == s))
        pairs.sort(key=lambda it: it[0])
        m = Matching.make(bottom, top, [p for p, _ in pairs])
        # Matching.make sorts canonically; realign the directions
        order = {p: fwd for p, fwd in pairs}
        return OrMatching.make(m, tuple(order[p] for p in m.pairs))

    @property
    def bottom(self):
        return self.matching.bottom

    @property
    def top(self):
        return self.matching.top

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, OrMatching):
            return NotImplemented
        return self.matching == other.matching and self.dirs == other.dirs

    def __hash__(self):
        return self._hash

    def reversed(self):
        """The same matching with every arrow reversed."""
        return OrMatching.make(self.matching, tuple(not d for d in self.dirs))

    def __str__(self):
        body = []
        for (p1, p2), fwd in zip(self.matching.pairs, self.dirs):
            s, t = (p1, p2) if fwd else (p2, p1)
            body.append("(%s>%s)" % (_pt(s), _pt(t)))
        return "OTL(%d,%d){%s}" % (self.bottom, self.top, ",".join(body))

    def __repr__(self):
        return str(self)


def _pt(p):
    return ("b%d" if p[0] == BOT else "t%d") % p[1]


class OrElement:
    """Finite linear combination of oriented matchings with fixed arity."""

    __slots__ = ("bottom", "top", "combo", "_scaled")

    def __init__(self, bottom, top, combo=None):
        self.bottom = bottom
        self.top = top
        c = {}
        if combo:
            for m, rf in combo.items():
                if m.bottom != bottom or m.top != top:
                    raise ValueError("OrElement: arity mismatch")
                if rf:
                    c[m] = rf
        self.combo = c

    @staticmethod
    def from_matching(m, coeff=_RF_ONE):
        e = OrElement.__new__(OrElement)
        e.bottom, e.top = m.bottom, m.top
        e.combo = {m: coeff} if coeff else {}
        return e

    @staticmethod
    def zero(bottom, top):
        e = OrElement.__new__(OrElement)
        e.bottom, e.top = bottom, top
        e.combo = {}
        return e

    def is_zero(self):
        return not self.combo

    def __bool__(self):
        return bool(self.combo)

    def coeff(self, m):
        return self.combo.get(m, RatFunc.zero())

    def __add__(self, other):
        if self.bottom != other.bottom or self.top != other.top:
            raise ValueError("OrElement addition: arity mismatch")
        combo = dict(self.combo)
        for m, rf in other.combo.items():
            s = combo.get(m)
            s = rf if s is None else s + rf
            if s:
                combo[m] = s
            elif m in combo:
                del combo[m]
        e = OrElement.__new__(OrElement)
        e.bottom, e.top = self.bottom, self.top
        e.combo = combo
        return e

    def __sub__(self, other):
        return self + other.scale(RatFunc(-1))

    def __neg__(self):
        return self.scale(RatFunc(-1))

    def scale(self, rf):
        e = OrElement.__new__(OrElement)
        e.bottom, e.top = self.bottom, self.top
        e.combo = {} if not rf else {m: c * rf for m, c in self.combo.items()}
        return e

    def reversed(self):
        combo = {m.reversed(): c for m, c in self.combo.items()}
        e = OrElement.__new__(OrElement)
        e.bottom, e.top = self.bottom, self.top
        e.combo = combo
        return e

    def __eq__(self, other):
        if not isinstance(other, OrElement):
            return NotImplemented
        return (
            self.bottom == other.bottom
            and self.top == other.top
            and self.combo == other.combo
        )

    def __hash__(self):
        return hash((self.bottom, self.top, frozenset(self.combo.items())))

    def __str__(self):
        if not self.combo:
            return "0"
        from .tldiag import _coeff_str

        parts = []
        for m in sorted(self.combo, key=str):
            parts.append("%s * %s" % (_coeff_str(self.combo[m]), m))
        return " + ".join(parts)

    def __repr__(self):
        return "OrElement(%s)" % str(self)


# -- constructions -----------------------------------------------------

def lift(x):
    """Sum over all strand orientations, coefficients unchanged."""
    combo = {}
    for m, c in x.combo.items():
        for dirs in product((False, True), repeat=len(m.pairs)):
            om = OrMatching.make(m, dirs)
            prev = combo.get(om)
            combo[om] = c if prev is None else prev + c
    e = OrElement.__new__(OrElement)
    e.bottom, e.top = x.bottom, x.top
    e.combo = {m: c for m, c in combo.items() if c}
    return e


def iota(s):
    """Vertical strands directed by the signature ('^' up, 'v' down)."""
    check_signature(s)
    n = len(s)
    m = identity_matching(n)
    # identity pairs are ((BOT,k),(TOP,k)); forward = upward flow
    dirs = tuple(c == UP for c in s)
    return OrElement.from_matching(OrMatching.make(m, dirs))


def beta(n, mirror=False):
    """n nested bubbles, counterclockwise for n > 0: the scalar q^n."""
    e = -n if mirror else n
    return RatFunc(LaurentPoly({e: 1}))


def alpha(n, mirror=False):
    """A beta(-n) nested inside a beta(n); always the scalar 1."""
    return beta(n, mirror) * beta(-n, mirror)


def oriented_cap(n, k, forward):
    """Cap joining bottom points k, k+1 with a fixed direction, all
    orientations of the n-2 through strands summed.

    forward True directs the cap from b_k to b_{k+1}.
    """
    m = cap_matching(n, k)
    # canonical pair order puts the cap pair ((BOT,k),(BOT,k+1)) at a
    # known slot; fix its direction and sum the rest
    cap_slot = m.pairs.index(((BOT, k), (BOT, k + 1)))
    combo = {}
    for dirs in product((False, True), repeat=len(m.pairs) - 1):
        full = dirs[:cap_slot] + (bool(forward),) + dirs[cap_slot:]
        combo[OrMatching.make(m, full)] = _RF_ONE
    return OrElement(n, n - 2, combo)


def oriented_cup(n, k, forward):
    """Cup creating strands k, k+1 (a morphism n-2 -> n), cup direction
    fixed, through strands summed; forward True directs t_k to t_{k+1}."""
    m = cup_matching(n, k)
    cup_slot = m.pairs.index(((TOP, k), (TOP, k + 1)))
    combo = {}
    for dirs in product((False, True), repeat=len(m.pairs) - 1):
        full = dirs[:cup_slot] + (bool(forward),) + dirs[cup_slot:]
        combo[OrMatching.make(m, full)] = _RF_ONE
    return OrElement(n - 2, n, combo)


# -- composition -------------------------------------------------------

def _compose_or_matchings(mf, mg, mirror):
    """Stack oriented mf on oriented mg; interface signatures must
    already agree.  Returns (OrMatching, loop exponent)."""
    m, loop_mins = compose_matchings(mf.matching, mg.matching)
    e = 0
    if loop_mins:
        isig = mg.top_sig
        for pos in loop_mins:
            # downward flow at the loop's leftmost point reads as a
            # counterclockwise loop, worth q under the default split
            e += 1 if isig[pos] == DOWN else -1
        if mirror:
            e = -e
    bsig = mg.bottom_sig
    tsig = mf.top_sig
    dirs = []
    for p1, _ in m.pairs:
        side, idx = p1
        sign = bsig[idx] if side == BOT else tsig[idx]
        dirs.append(sign == UP if side == BOT else sign == DOWN)
    return OrMatching.make(m, tuple(dirs)), e


def _or_scaled_form(x):
    cached = getattr(x, "_scaled", None)
    if cached is not None:
        return cached
    den = LaurentPoly.one()
    for d in {c.den for c in x.combo.values()}:
        g = lp_gcd_cached(den, d)
        den = den * (d if g.terms == {0: 1} else d.divexact(g))
    nums = {}
    for m, c in x.combo.items():
        scale = den if c.den.terms == {0: 1} else den.divexact(c.den)
        nums[m] = c.num * scale
    x._scaled = (den, nums)
    return x._scaled


def or_compose(f, g, mirror=False):
    """Bilinear stacking of f on top of g.

    Diagram pairs whose interface orientations disagree contribute
    zero; each closed loop is deleted for a factor q^(+-1) read from
    its chirality (mirror swaps the two factors).
    """
    if f.bottom != g.top:
        raise ValueError("or_compose: arity mismatch")
    den_f, nums_f = _or_scaled_form(f)
    den_g, nums_g = _or_scaled_form(g)
    buckets = {}
    for mg, ng in nums_g.items():
        buckets.setdefault(mg.top_sig, []).append((mg, ng))
    acc = {}
    for mf, nf in nums_f.items():
        for mg, ng in buckets.get(mf.bottom_sig, ()):
            m, e = _compose_or_matchings(mf, mg, mirror)
            key = (nf, ng, e)
            d = acc.get(m)
            if d is None:
                acc[m] = {key: 1}
            else:
                d[key] = d.get(key, 0) + 1
    den = den_f * den_g
    products = {}
    combo = {}
    for m, d in acc.items():
        total = None
        for key, cnt in d.items():
            prod = products.get(key)
            if prod is None:
                nf, ng, e = key
                prod = nf * ng
                if e:
                    prod = prod.shift(e)
                products[key] = prod
            term = prod if cnt == 1 else prod * cnt
            total = term if total is None else total + term
        if total:
            rf = RatFunc(total, den)
            if rf:
                combo[m] = rf
    out = OrElement.__new__(OrElement)
    out.bottom, out.top = g.bottom, f.top
    out.combo = combo
    return out


def or_tensor(x, y):
    """Horizontal juxtaposition, x to the left of y."""
    combo = {}
    for mx, cx in x.combo.items():
        for my, cy in y.combo.items():
            directed = []
            for (p1, p2), fwd in zip(mx.matching.pairs, mx.dirs):
                directed.append((p1, p2) if fwd else (p2, p1))
            for (p1, p2), fwd in zip(my.matching.pairs, my.dirs):
                q1 = (p1[0], p1[1] + (mx.bottom if p1[0] == BOT else mx.top))
                q2 = (p2[0], p2[1] + (mx.bottom if p2[0] == BOT else mx.top))
                directed.append((q1, q2) if fwd else (q2, q1))
            m = OrMatching.from_directed_pairs(
                mx.bottom + my.bottom, mx.top + my.top, directed
            )
            c = cx * cy
            prev = combo.get(m)
            combo[m] = c if prev is None else prev + c
    return OrElement(x.bottom + y.bottom, x.top + y.top, combo)


def or_close_trace(x, mirror=False):
    """Close t_k to b_k around the left for every k; a scalar.

    Per closed loop the factor is q^(+-1): the outermost closure arc of
    a loop belongs to its largest position j, and the loop runs
    counterclockwise exactly when the strand flows up out of t_j.
    """
    if x.bottom != x.top:
        raise ValueError("or_close_trace: endomorphisms only")
    n = x.bottom
    total = RatFunc.zero()
    for m, c in x.combo.items():
        # flow continuity along the closure arc t_k -- b_k needs the
        # same sign at both ends; mismatched terms close to nothing
        if m.bottom_sig != m.top_sig:
            continue
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for (s1, i1), (s2, i2) in m.matching.pairs:
            r1, r2 = find(i1), find(i2)
            if r1 != r2:
                parent[r1] = r2
        reps = {}
        for a in range(n):
            reps.setdefault(find(a), []).append(a)
        e = 0
        tsig = m.top_sig
        for members in reps.values():
            j = members[-1]
            e += 1 if tsig[j] == UP else -1
        if mirror:
            e = -e
        total = total + c * RatFunc(LaurentPoly({e: 1}))
    return total


# -- the pop-switch quotient ------------------------------------------

def turning_exponent2(m):
    """Twice the total turning of a diagram's turnbacks.

    Each cap or cup contributes +1/2 when the strand points down at
    its left end and -1/2 when it points up, so a closed loop totals
    +-1, matching the loop scalars.  The doubled value stays integral.
    """
    c = 0
    for p1, p2 in m.matching.pairs:
        side = p1[0]
        if side != p2[0]:
            continue
        sig = m.bottom_sig if side == BOT else m.top_sig
        c += 1 if sig[p1[1]] == DOWN else -1
    return c


def _orient_for(matching, bsig, tsig):
    """Directions giving the matching these boundary signs, or None."""
    dirs = []
    for p1, p2 in matching.pairs:
        src1 = _is_source(p1, bsig, tsig)
        src2 = _is_source(p2, bsig, tsig)
        if src1 == src2:
            return None
        dirs.append(src1)
    return tuple(dirs)


def _is_source(p, bsig, tsig):
    side, idx = p
    return bsig[idx] == UP if side == BOT else tsig[idx] == DOWN


_CANON_CACHE = {}


def canonical_diagram(bsig, tsig):
    """The representative diagram for a pair of boundary signatures.

    Among basis diagrams admitting these boundary signs, the one with
    the fewest turnbacks (ties broken textually), so vertical-strand
    diagrams represent their own signature class.
    """
    key = (bsig, tsig)
    if key not in _CANON_CACHE:
        best = None
        for m in enumerate_basis(len(bsig), len(tsig)):
            dirs = _orient_for(m, bsig, tsig)
            if dirs is None:
                continue
            tb = sum(1 for p1, p2 in m.pairs if p1[0] == p2[0])
            rank = (tb, str(m))
            if best is None or rank < best[0]:
                best = (rank, OrMatching.make(m, dirs))
        _CANON_CACHE[key] = None if best is None else best[1]
    return _CANON_CACHE[key]


def normalize(x, mirror=False):
    """Image of an element in the pop-switch quotient.

    Diagrams sharing both boundary signatures become proportional: a
    facing cap-cup pair pops into vertical strands at the cost of the
    loop scalar its turning would close into.  Concretely every
    diagram equals q^(turning difference) times the canonical diagram
    with its signatures, which realizes each diagram as a weighted
    matrix unit indexed by the signature pair.
    """
    combo = {}
    for m, cf in x.combo.items():
        canon = canonical_diagram(m.bottom_sig, m.top_sig)
        d2 = turning_exponent2(m) - turning_exponent2(canon)
        if d2 % 2:
            raise ArithmeticError("normalize: fractional turning (bug)")
        e = -d2 // 2 if mirror else d2 // 2
        c = cf if not e else cf * RatFunc(LaurentPoly({e: 1}))
        prev = combo.get(canon)
        c = c if prev is None else prev + c
        if c:
            combo[canon] = c
        elif canon in combo:
            del combo[canon]
    out = OrElement.__new__(OrElement)
    out.bottom, out.top = x.bottom, x.top
    out.combo = combo
    return out


# -- verifiers ---------------------------------------------------------

def verify_teleport(x, s, mirror=False):
    """A closed diagram commutes across vertical strands: x (x) iota_s
    equals iota_s (x) x, computed through the tensor product with x as
    a scalar-valued closed element."""
    check_signature(s)
    if s.count(UP) != s.count(DOWN):
        raise ValueError("verify_teleport: signature must be balanced")
    empty = OrMatching.make(identity_matching(0), ())
    closed = OrElement(0, 0, {empty: x})
    i = iota(s)
    return or_tensor(closed, i) == or_tensor(i, closed)


def verify_ia(k, n, mirror=False):
    """iota_k absorbs an alpha bubble: iota_k . alpha_n = iota_k."""
    if not k >= n >= 0:
        raise ValueError("verify_ia: need k >= n >= 0")
    i = iota(UP * k)
    return i.scale(alpha(n, mirror)) == i


def verify_oio(n, mirror=False):
    """beta_{-n} iota_n beta_n = iota_n."""
    if n < 0:
        raise ValueError("verify_oio: need n >= 0")
    i = iota(UP * n)
    return i.scale(beta(-n, mirror) * beta(n, mirror)) == i


@dataclass
class ArcMoveReport:
    """Outcome of the arc-move check at one size.

    The relation compares a directed return arc on the two rightmost
    legs of the lifted projector against (-1)^(n+1) q^(en) times the
    arc on the two leftmost legs; the scan records which direction and
    exponent combination validates, together with its all-arrows
    reversed mirror, under which loop-scalar convention.
    """

    n: int
    ok: bool
    convention: str | None  # "default" or "mirrored"
    combos: tuple  # validating (strand variant, arc direction, exponent sign)

    def __bool__(self):
        return self.ok

    def __str__(self):
        if not self.ok:
            return "arc-move n=%d: ENCODING-FAIL" % self.n
        return "arc-move n=%d: ok convention=%s combos=%s" % (
            self.n,
            self.convention,
            ",".join("(%s,%+d,%+d)" % c for c in self.combos),
        )


def verify_arc_move(n):
    """Check the arc-move relation on the lifted projector p_{n+2}.

    Both sides put a fixed-direction return arc (an oriented cup) under
    a pair of adjacent legs of p_{n+2} between vertical-strand objects:
    the rightmost pair on the left-hand side, the leftmost pair on the
    right-hand side scaled by (-1)^(n+1) q^(en).  The n through strands
    are the vertical-strand object with all strands parallel, and the
    strand feeding the arc turns the adjacent top leg around.  A
    direction and exponent combination validates only together with its
    all-arrows-reversed, exponent-negated mirror.
    """
    if not 0 <= n <= 5:
        raise ValueError("verify_arc_move: 0 <= n <= 5 only")
    from .jw import jones_wenzl

    m = n + 2
    P = lift(jones_wenzl(m).element)
    sign = RatFunc(-1) if (n + 1) % 2 else RatFunc(1)
    variants = {
        UP: (iota(UP * (m - 1) + DOWN), iota(UP * n)),
        DOWN: (iota(DOWN * (m - 1) + UP), iota(DOWN * n)),
    }
    for convention, mirror in (("default", False), ("mirrored", True)):
        sides = {}
        for v, (top, bot) in variants.items():
            tp = or_compose(top, P, mirror)
            for d in (1, -1):
                right = or_compose(
                    or_compose(tp, oriented_cup(m, m - 2, d > 0), mirror),
                    bot,
                    mirror,
                )
                left = or_compose(
                    or_compose(tp, oriented_cup(m, 0, d > 0), mirror),
                    bot,
                    mirror,
                )
                sides[(v, d)] = (right, left)
        combos = []
        for v, d, es in product((UP, DOWN), (1, -1), (1, -1)):
            right, _ = sides[(v, d)]
            _, left = sides[(v, -d)]
            factor = sign * RatFunc(LaurentPoly({es * n: 1}))
            if right and right == left.scale(factor):
                combos.append((v, d, es))
        good = tuple(
            c
            for c in combos
            if (DOWN if c[0] == UP else UP, -c[1], -c[2]) in combos
        )
        if good:
            return ArcMoveReport(n, True, convention, good)
    return ArcMoveReport(n, False, None, ())
