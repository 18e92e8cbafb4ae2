"""Temperley-Lieb diagrams as morphisms of the rectangular category.

A Matching is a crossingless perfect pairing of i bottom and j top
boundary points; an Element is a finite linear combination of matchings
with rational-function coefficients.  Composition stacks diagrams and
bursts each closed loop into a factor of delta = q + q^-1.
"""

from __future__ import annotations

import math

from .qarith import DELTA, LaurentPoly, RatFunc, lp_gcd_cached, rf_sum

BOT = 0
TOP = 1

_RF_ONE = RatFunc.one()


def catalan(n):
    return math.comb(2 * n, n) // (n + 1)


class Matching:
    """A crossingless perfect matching of boundary points.

    Points are (side, index) with side BOT or TOP, indices 0-based left
    to right.  Instances are interned: construct through Matching.make
    and compare by identity.
    """

    __slots__ = ("bottom", "top", "pairs", "_hash", "_partners")

    _POOL = {}

    def __init__(self, bottom, top, pairs, _key=None):
        self.bottom = bottom
        self.top = top
        self.pairs = pairs
        self._hash = hash(_key if _key is not None else (bottom, top, pairs))
        self._partners = None

    @staticmethod
    def _make_canonical(bottom, top, pairs):
        """Pool lookup for pairs already in canonical sorted order."""
        key = (bottom, top, pairs)
        cached = Matching._POOL.get(key)
        if cached is None:
            cached = Matching(bottom, top, pairs, _key=key)
            Matching._POOL[key] = cached
        return cached

    @staticmethod
    def make(bottom, top, pairs, validate=True):
        pairs = tuple(sorted(tuple(sorted(p)) for p in pairs))
        key = (bottom, top, pairs)
        cached = Matching._POOL.get(key)
        if cached is not None:
            return cached
        if validate:
            _validate_matching(bottom, top, pairs)
        m = Matching(bottom, top, pairs, _key=key)
        Matching._POOL[key] = m
        return m

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Matching):
            return NotImplemented
        return (
            self.bottom == other.bottom
            and self.top == other.top
            and self.pairs == other.pairs
        )

    def __hash__(self):
        return self._hash

    def partner_array(self):
        """Partner indices with bottom k -> k and top k -> bottom + k."""
        arr = self._partners
        if arr is None:
            arr = [0] * (self.bottom + self.top)
            for (s1, i1), (s2, i2) in self.pairs:
                a = i1 if s1 == BOT else self.bottom + i1
                b = i2 if s2 == BOT else self.bottom + i2
                arr[a] = b
                arr[b] = a
            self._partners = arr
        return arr

    def __str__(self):
        body = ",".join(
            "(%s,%s)" % (_point_str(p), _point_str(q)) for p, q in self.pairs
        )
        return "TL(%d,%d){%s}" % (self.bottom, self.top, body)

    def __repr__(self):
        return str(self)


def _point_str(p):
    return ("b%d" if p[0] == BOT else "t%d") % p[1]


def _cyclic_pos(point, bottom, top):
    # boundary order b0..b_{i-1}, t_{j-1}..t0
    side, idx = point
    return idx if side == BOT else bottom + top - 1 - idx


def _validate_matching(bottom, top, pairs):
    seen = set()
    for p in pairs:
        for pt in p:
            side, idx = pt
            if side not in (BOT, TOP):
                raise ValueError("bad point side: %r" % (pt,))
            limit = bottom if side == BOT else top
            if not 0 <= idx < limit:
                raise ValueError("point out of range: %r" % (pt,))
            if pt in seen:
                raise ValueError("point used twice: %r" % (pt,))
            seen.add(pt)
    if len(seen) != bottom + top:
        raise ValueError("not a perfect matching")
    pos = [
        tuple(sorted(_cyclic_pos(pt, bottom, top) for pt in p)) for p in pairs
    ]
    for i, (a, c) in enumerate(pos):
        for b, d in pos[i + 1 :]:
            if a < b < c < d or b < a < d < c:
                raise ValueError("matching is not planar")


# -- basis enumeration -------------------------------------------------

_BASIS_CACHE = {}


def enumerate_basis(i, j):
    """All loop-free crossingless matchings with i bottom and j top points.

    Empty when i + j is odd; otherwise the count is the Catalan number
    C_{(i+j)/2}.  Order is deterministic (sorted canonical form).
    """
    if i < 0 or j < 0:
        raise ValueError("enumerate_basis: arities must be >= 0")
    key = (i, j)
    cached = _BASIS_CACHE.get(key)
    if cached is not None:
        return list(cached)
    if (i + j) % 2:
        _BASIS_CACHE[key] = ()
        return []
    total = i + j

    def point_of(pos):
        return (BOT, pos) if pos < i else (TOP, total - 1 - pos)

    def rec(points):
        if not points:
            yield []
            return
        first = points[0]
        for t in range(1, len(points), 2):
            left = points[1:t]
            right = points[t + 1 :]
            for lp in rec(left):
                for rp in rec(right):
                    yield [(first, points[t])] + lp + rp

    out = []
    for pairing in rec(list(range(total))):
        pairs = [(point_of(a), point_of(b)) for a, b in pairing]
        out.append(Matching.make(i, j, pairs, validate=False))
    out.sort(key=lambda m: m.pairs)
    _BASIS_CACHE[key] = tuple(out)
    return out


def identity_matching(n):
    return Matching.make(n, n, [((BOT, k), (TOP, k)) for k in range(n)], False)


def cap_matching(n, k):
    """The cap joining bottom points k, k+1: a morphism n -> n-2."""
    if not 0 <= k <= n - 2:
        raise ValueError("cap position out of range")
    pairs = [((BOT, k), (BOT, k + 1))]
    t = 0
    for b in range(n):
        if b in (k, k + 1):
            continue
        pairs.append(((BOT, b), (TOP, t)))
        t += 1
    return Matching.make(n, n - 2, pairs, False)


def cup_matching(n, k):
    """The cup creating strands k, k+1: a morphism n-2 -> n."""
    return flip_matching(cap_matching(n, k))


def e_matching(n, k):
    """The cup-cap generator at position k in End(n)."""
    if not 0 <= k <= n - 2:
        raise ValueError("generator position out of range")
    pairs = [((BOT, k), (BOT, k + 1)), ((TOP, k), (TOP, k + 1))]
    for b in range(n):
        if b not in (k, k + 1):
            pairs.append(((BOT, b), (TOP, b)))
    return Matching.make(n, n, pairs, False)


def flip_matching(m):
    swap = {BOT: TOP, TOP: BOT}
    pairs = [((swap[s1], i1), (swap[s2], i2)) for (s1, i1), (s2, i2) in m.pairs]
    return Matching.make(m.top, m.bottom, pairs, False)


# -- diagram composition ----------------------------------------------

_NO_LOOPS = ()


def compose_matchings(f, g):
    """Stack matching f on top of matching g; returns (Matching, loops).

    Interface points (g's top = f's bottom) are glued; loops is a tuple
    holding the leftmost interface position of each closed circle
    formed.  Unoriented callers only need len(loops); the oriented
    model reads the positions to decide loop chirality.
    """
    mid = f.bottom
    if g.top != mid:
        raise ValueError(
            "compose: arity mismatch (%d on top of %d)" % (f.bottom, g.top)
        )
    k, j = g.bottom, f.top
    gp = g.partner_array()  # g nodes: 0..k-1 bottom, k..k+mid-1 top
    fp = f.partner_array()  # f nodes: 0..mid-1 bottom, mid..mid+j-1 top
    seen_mid = [False] * mid
    visited_b = [False] * k
    visited_t = [False] * j
    pairs = []
    # the walks emit pairs in canonical sorted order, so the result can
    # skip re-canonicalization on the interning fast path
    for b in range(k):
        if visited_b[b]:
            continue
        node = gp[b]
        while True:
            if node < k:
                end = (BOT, node)
                visited_b[node] = True
                break
            m = node - k
            seen_mid[m] = True
            node = fp[m]
            if node >= mid:
                end = (TOP, node - mid)
                visited_t[end[1]] = True
                break
            seen_mid[node] = True
            node = gp[k + node]
        visited_b[b] = True
        pairs.append(((BOT, b), end))
    for t in range(j):
        if visited_t[t]:
            continue
        node = fp[mid + t]
        if node >= mid:
            end = (TOP, node - mid)
        else:
            while True:
                seen_mid[node] = True
                node = gp[k + node]
                m = node - k
                seen_mid[m] = True
                node = fp[m]
                if node >= mid:
                    end = (TOP, node - mid)
                    break
        visited_t[t] = True
        visited_t[end[1]] = True
        pairs.append(((TOP, t), end))
    # anything left on the interface sits on a closed loop; scanning
    # left to right makes each starting point the loop's leftmost one
    loops = _NO_LOOPS
    for m0 in range(mid):
        if seen_mid[m0]:
            continue
        if loops is _NO_LOOPS:
            loops = []
        loops.append(m0)
        node = m0
        while True:
            seen_mid[node] = True
            n2 = fp[node]
            seen_mid[n2] = True
            node = gp[k + n2] - k
            if node == m0:
                break
    return Matching._make_canonical(k, j, tuple(pairs)), loops


def tensor_matchings(x, y):
    """Place x to the left of y."""
    pairs = list(x.pairs)
    for (s1, i1), (s2, i2) in y.pairs:
        off1 = x.bottom if s1 == BOT else x.top
        off2 = x.bottom if s2 == BOT else x.top
        pairs.append(((s1, i1 + off1), (s2, i2 + off2)))
    return Matching.make(x.bottom + y.bottom, x.top + y.top, pairs, False)


# -- linear combinations ----------------------------------------------

_DELTA_POWERS = [RatFunc.one()]


def delta_power(n):
    while len(_DELTA_POWERS) <= n:
        _DELTA_POWERS.append(
            RatFunc.from_poly(_DELTA_POWERS[-1].num * DELTA)
        )
    return _DELTA_POWERS[n]


class Element:
    """Finite RatFunc-linear combination of matchings with fixed arity."""

    __slots__ = ("bottom", "top", "combo", "_scaled")

    def __init__(self, bottom, top, combo=None):
        self.bottom = bottom
        self.top = top
        c = {}
        if combo:
            for m, rf in combo.items():
                if m.bottom != bottom or m.top != top:
                    raise ValueError("Element: matching arity mismatch")
                if rf:
                    c[m] = rf
        self.combo = c

    @staticmethod
    def from_matching(m, coeff=_RF_ONE):
        e = Element.__new__(Element)
        e.bottom, e.top = m.bottom, m.top
        e.combo = {m: coeff} if coeff else {}
        return e

    @staticmethod
    def zero(bottom, top):
        e = Element.__new__(Element)
        e.bottom, e.top = bottom, top
        e.combo = {}
        return e

    @staticmethod
    def identity(n):
        return Element.from_matching(identity_matching(n))

    def is_zero(self):
        return not self.combo

    def __bool__(self):
        return bool(self.combo)

    def coeff(self, m):
        return self.combo.get(m, RatFunc.zero())

    def __add__(self, other):
        if self.bottom != other.bottom or self.top != other.top:
            raise ValueError("Element addition: arity mismatch")
        combo = dict(self.combo)
        for m, rf in other.combo.items():
            s = combo.get(m)
            s = rf if s is None else s + rf
            if s:
                combo[m] = s
            elif m in combo:
                del combo[m]
        e = Element.__new__(Element)
        e.bottom, e.top = self.bottom, self.top
        e.combo = combo
        return e

    def __sub__(self, other):
        return self + other.scale(RatFunc(-1))

    def __neg__(self):
        return self.scale(RatFunc(-1))

    def scale(self, rf):
        e = Element.__new__(Element)
        e.bottom, e.top = self.bottom, self.top
        if not rf:
            e.combo = {}
        else:
            e.combo = {m: c * rf for m, c in self.combo.items()}
        return e

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return (
            self.bottom == other.bottom
            and self.top == other.top
            and self.combo == other.combo
        )

    def __hash__(self):
        return hash(
            (self.bottom, self.top, frozenset(self.combo.items()))
        )

    def __str__(self):
        if not self.combo:
            return "0"
        parts = []
        for m in sorted(self.combo, key=str):
            parts.append("%s * %s" % (_coeff_str(self.combo[m]), m))
        return " + ".join(parts)

    def __repr__(self):
        return "Element(%s)" % str(self)


def _coeff_str(rf):
    s = str(rf)
    if rf.den == RatFunc.one().den and len(rf.num.terms) == 1:
        e, c = next(iter(rf.num.terms.items()))
        if c > 0:
            return s
    return "(%s)" % s if not s.startswith("(") else s


_DELTA_LP_POWERS = [None]


def _delta_lp(n):
    while len(_DELTA_LP_POWERS) <= n:
        prev = _DELTA_LP_POWERS[-1]
        _DELTA_LP_POWERS.append(DELTA if prev is None else prev * DELTA)
    return _DELTA_LP_POWERS[n]


def _scaled_form(x):
    """(common denominator, numerator map) for an Element.

    Puts every coefficient over one denominator so that composition can
    run on integer Laurent polynomials and reduce each result
    coefficient exactly once.
    """
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


def compose(f, g):
    """Bilinear extension of diagram stacking, f on top of g."""
    if f.bottom != g.top:
        raise ValueError("compose: arity mismatch")
    den_f, nums_f = _scaled_form(f)
    den_g, nums_g = _scaled_form(g)
    # group contributions per result diagram by (numerator pair, loops)
    # so each distinct polynomial product is computed once
    acc = {}
    for mf, nf in nums_f.items():
        for mg, ng in nums_g.items():
            m, loops = compose_matchings(mf, mg)
            key = (nf, ng, len(loops))
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
                nf, ng, loops = key
                prod = nf * ng
                if loops:
                    prod = prod * _delta_lp(loops)
                products[key] = prod
            term = prod if cnt == 1 else prod * cnt
            total = term if total is None else total + term
        if total:
            rf = RatFunc(total, den)
            if rf:
                combo[m] = rf
    e = Element.__new__(Element)
    e.bottom, e.top = g.bottom, f.top
    e.combo = combo
    return e


def tensor(x, y):
    """Bilinear extension of horizontal juxtaposition."""
    combo = {}
    for mx, cx in x.combo.items():
        for my, cy in y.combo.items():
            m = tensor_matchings(mx, my)
            c = cx * cy
            prev = combo.get(m)
            combo[m] = c if prev is None else prev + c
    return Element(x.bottom + y.bottom, x.top + y.top, combo)


def close_trace(x):
    """Connect top point t_k to bottom point b_k for every k; a scalar."""
    if x.bottom != x.top:
        raise ValueError("close_trace: endomorphisms only")
    n = x.bottom
    contribs = []
    for m, c in x.combo.items():
        # closure glues t_k to b_k, so positions 0..n-1 become nodes of a
        # 2-regular multigraph whose components are the closed loops
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for (s1, i1), (s2, i2) in m.pairs:
            r1, r2 = find(i1), find(i2)
            if r1 != r2:
                parent[r1] = r2
        loops = len({find(a) for a in range(n)})
        contribs.append((c * delta_power(loops), 1))
    return rf_sum(contribs)


def vertical_flip(x):
    """Reflect across a horizontal axis; an involution and
    anti-homomorphism for composition."""
    combo = {}
    for m, c in x.combo.items():
        combo[flip_matching(m)] = c
    return Element(x.top, x.bottom, combo)
