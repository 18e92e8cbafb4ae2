"""Exact arithmetic in the quantum parameter q.

Sparse Laurent polynomials with arbitrary-precision integer coefficients,
the rational-function field built on them, quantum integers and binomials,
and small exact linear algebra over that field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class LaurentPoly:
    """Sparse Laurent polynomial in q with integer coefficients.

    Stored as a map exponent -> coefficient with no zero entries.
    Instances are immutable by convention; all operations return new
    objects.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        t = {}
        if terms:
            for e, c in terms.items():
                if c:
                    t[e] = c
        self.terms = t
        self._hash = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero():
        return _LP_ZERO

    @staticmethod
    def one():
        return _LP_ONE

    @staticmethod
    def const(c):
        return LaurentPoly({0: c})

    @staticmethod
    def q_power(e, c=1):
        return LaurentPoly({e: c})

    # -- basic queries ------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def min_exp(self):
        return min(self.terms)

    def max_exp(self):
        return max(self.terms)

    def leading_coeff(self):
        return self.terms[self.max_exp()]

    def content(self):
        """gcd of the coefficients (0 for the zero polynomial)."""
        return math.gcd(*self.terms.values()) if self.terms else 0

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            elif e in t:
                del t[e]
        r = LaurentPoly.__new__(LaurentPoly)
        r.terms = t
        r._hash = None
        return r

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        r = LaurentPoly.__new__(LaurentPoly)
        r.terms = {e: -c for e, c in self.terms.items()}
        r._hash = None
        return r

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return _LP_ZERO
            r = LaurentPoly.__new__(LaurentPoly)
            r.terms = {e: c * other for e, c in self.terms.items()}
            r._hash = None
            return r
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        t = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = e1 + e2
                s = t.get(e, 0) + c1 * c2
                if s:
                    t[e] = s
                elif e in t:
                    del t[e]
        r = LaurentPoly.__new__(LaurentPoly)
        r.terms = t
        r._hash = None
        return r

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a LaurentPoly")
        result = _LP_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k):
        """Multiply by q^k."""
        if k == 0 or not self.terms:
            return self
        r = LaurentPoly.__new__(LaurentPoly)
        r.terms = {e + k: c for e, c in self.terms.items()}
        r._hash = None
        return r

    def mirror(self):
        """The substitution q -> q^-1."""
        r = LaurentPoly.__new__(LaurentPoly)
        r.terms = {-e: c for e, c in self.terms.items()}
        r._hash = None
        return r

    def divexact(self, other):
        """Exact division; raises ArithmeticError on a nonzero remainder."""
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self:
            return _LP_ZERO
        smin, omin = self.min_exp(), other.min_exp()
        a = _dense(self.terms, smin, self.max_exp())
        b = _dense(other.terms, omin, other.max_exp())
        if len(a) < len(b):
            raise ArithmeticError("inexact polynomial division")
        lead = b[-1]
        quot = [0] * (len(a) - len(b) + 1)
        for i in range(len(quot) - 1, -1, -1):
            c = a[i + len(b) - 1]
            if c == 0:
                continue
            if c % lead:
                raise ArithmeticError("inexact polynomial division")
            f = c // lead
            quot[i] = f
            for j, bc in enumerate(b):
                a[i + j] -= f * bc
        if any(a):
            raise ArithmeticError("inexact polynomial division")
        base = smin - omin
        r = LaurentPoly.__new__(LaurentPoly)
        r.terms = {base + i: c for i, c in enumerate(quot) if c}
        r._hash = None
        return r

    # -- comparison ---------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            if other == 0:
                return not self.terms
            return self.terms == {0: other}
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(frozenset(self.terms.items()))
            self._hash = h
        return h

    # -- rendering ----------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            sign = "-" if c < 0 else "+"
            c = abs(c)
            if e == 0:
                body = str(c)
            else:
                base = "q" if e == 1 else "q^%d" % e
                body = base if c == 1 else "%d*%s" % (c, base)
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += " %s %s" % (sign, body)
        return out

    def __repr__(self):
        return "LaurentPoly(%s)" % str(self)


_LP_ZERO = LaurentPoly()
_LP_ONE = LaurentPoly({0: 1})

Q = LaurentPoly({1: 1})
QINV = LaurentPoly({-1: 1})
DELTA = LaurentPoly({1: 1, -1: 1})  # the loop scalar q + q^-1


def _dense(terms, lo, hi):
    out = [0] * (hi - lo + 1)
    for e, c in terms.items():
        out[e - lo] = c
    return out


def _prim_positive(p):
    """Primitive part with positive leading coefficient."""
    c = p.content()
    if p.leading_coeff() < 0:
        c = -c
    if c == 1:
        return p
    r = LaurentPoly.__new__(LaurentPoly)
    r.terms = {e: k // c for e, k in p.terms.items()}
    r._hash = None
    return r


_GCD_CACHE = {}


def lp_gcd_cached(a, b):
    """lp_gcd with memoization; denominators repeat heavily in practice."""
    key = (a, b)
    g = _GCD_CACHE.get(key)
    if g is None:
        g = lp_gcd(a, b)
        if len(_GCD_CACHE) > 200000:
            _GCD_CACHE.clear()
        _GCD_CACHE[key] = g
        _GCD_CACHE[(b, a)] = g
    return g


def lp_gcd(a, b):
    """Primitive positive gcd of two Laurent polynomials.

    The gcd is taken over Q[q] after shifting both arguments to minimal
    exponent zero; monomial factors q^k are not part of the result.
    Runs a primitive PRS on dense integer coefficient lists.
    """
    if not a:
        return _prim_positive(b.shift(-b.min_exp())) if b else _LP_ZERO
    if not b:
        return _prim_positive(a.shift(-a.min_exp()))
    A = _dense_prim(a)
    B = _dense_prim(b)
    if len(A) < len(B):
        A, B = B, A
    while True:
        if len(B) == 1:  # nonzero constant: coprime up to content
            return _LP_ONE
        R = _prem_dense(A, B)
        while R and R[-1] == 0:
            R.pop()
        if not R:
            break
        lo = next(i for i, c in enumerate(R) if c)
        R = R[lo:]
        g = math.gcd(*R)
        if g > 1:
            R = [c // g for c in R]
        A, B = B, R
    if B[-1] < 0:
        B = [-c for c in B]
    return LaurentPoly({i: c for i, c in enumerate(B) if c})


def _dense_prim(p):
    lo, hi = p.min_exp(), p.max_exp()
    out = [0] * (hi - lo + 1)
    for e, c in p.terms.items():
        out[e - lo] = c
    g = math.gcd(*out)
    if g > 1:
        out = [c // g for c in out]
    return out


def _prem_dense(A, B):
    """Scaled remainder of A by B over Z (result is a Q-multiple of A mod B)."""
    A = A[:]
    db = len(B) - 1
    lb = B[-1]
    while True:
        while A and A[-1] == 0:
            A.pop()
        if not A or len(A) - 1 < db:
            return A
        la = A[-1]
        g = math.gcd(la, lb)
        mul_a = lb // g
        mul_b = la // g
        if mul_a != 1:
            A = [c * mul_a for c in A]
        shift = len(A) - 1 - db
        for i in range(db):
            A[shift + i] -= mul_b * B[i]
        A.pop()


def lp_eval(p, q0):
    """Exact rational value of p at q = q0.

    q0 must be nonzero with |q0| != 1 (identities degenerate on the unit
    circle, mirroring the root-of-unity restriction).
    """
    q0 = Fraction(q0)
    if q0 == 0:
        raise ValueError("lp_eval: q0 must be nonzero")
    if abs(q0) == 1:
        raise ValueError("lp_eval: |q0| must not be 1")
    acc = Fraction(0)
    for e, c in p.terms.items():
        acc += c * q0 ** e
    return acc


# -- quantum integers and binomials -----------------------------------

_QINT_CACHE = {}


def quantum_int(n):
    """The nth quantum number (q^n - q^-n)/(q - q^-1), exactly."""
    if n < 0:
        raise ValueError("quantum_int: n must be >= 0")
    p = _QINT_CACHE.get(n)
    if p is None:
        numer = LaurentPoly({n: 1}) - LaurentPoly({-n: 1})
        p = numer.divexact(Q - QINV) if numer else _LP_ZERO
        _QINT_CACHE[n] = p
    return p


_QBINOM_CACHE = {}


def _stride2(p):
    """(offset, coeff list) view of a polynomial supported on e = offset + 2i."""
    lo, hi = p.min_exp(), p.max_exp()
    out = [0] * ((hi - lo) // 2 + 1)
    for e, c in p.terms.items():
        out[(e - lo) // 2] = c
    return lo, out


def _stride2_mul(a, b):
    la, ca = a
    lb, cb = b
    out = [0] * (len(ca) + len(cb) - 1)
    for i, x in enumerate(ca):
        if x:
            for j, y in enumerate(cb):
                if y:
                    out[i + j] += x * y
    return la + lb, out


def _stride2_divexact(a, b):
    la, ca = a
    lb, cb = b
    ca = list(ca)
    lead = cb[-1]
    quot = [0] * (len(ca) - len(cb) + 1)
    for i in range(len(quot) - 1, -1, -1):
        c = ca[i + len(cb) - 1]
        if c == 0:
            continue
        if c % lead:
            raise ArithmeticError("inexact quantum-binomial division")
        f = c // lead
        quot[i] = f
        for j, bc in enumerate(cb):
            ca[i + j] -= f * bc
    if any(ca):
        raise ArithmeticError("inexact quantum-binomial division")
    return la - lb, quot


def quantum_binom(n, k):
    """Quantum binomial [n][n-1]...[n-k+1] / ([k][k-1]...[1]).

    Built by incremental exact division; quantum polynomials live on
    every other exponent, so the arithmetic runs on stride-2 dense
    coefficient lists.
    """
    if k < 0 or k > n:
        raise ValueError("quantum_binom: need 0 <= k <= n")
    p = _QBINOM_CACHE.get((n, k))
    if p is None:
        if k == 0:
            p = _LP_ONE
        else:
            prev = quantum_binom(n, k - 1)
            if not prev or not quantum_int(n - k + 1):
                p = _LP_ZERO
            else:
                num = _stride2_mul(_stride2(prev), _stride2(quantum_int(n - k + 1)))
                lo, coeffs = _stride2_divexact(num, _stride2(quantum_int(k)))
                p = LaurentPoly(
                    {lo + 2 * i: c for i, c in enumerate(coeffs) if c}
                )
        _QBINOM_CACHE[(n, k)] = p
    return p


def _stride2_prod(a, b):
    """a * b as a LaurentPoly, for polynomials on every-other exponents."""
    if not a or not b:
        return _LP_ZERO
    lo, coeffs = _stride2_mul(_stride2(a), _stride2(b))
    return LaurentPoly({lo + 2 * i: c for i, c in enumerate(coeffs) if c})


def verify_lemma_q(k, l):
    """Check [k+l] = [k][l+1] - [k-1][l] exactly."""
    if k < 1 or l < 0:
        raise ValueError("verify_lemma_q: need k >= 1, l >= 0")
    lhs = quantum_int(k + l)
    rhs = _stride2_prod(quantum_int(k), quantum_int(l + 1)) - _stride2_prod(
        quantum_int(k - 1), quantum_int(l)
    )
    return lhs == rhs


def verify_cor_q(k, l):
    """Check the binomial recurrence built on the same identity."""
    if k < 1 or l < 1:
        raise ValueError("verify_cor_q: need k >= 1, l >= 1")
    lhs = quantum_binom(k + l, l)
    rhs = _stride2_prod(
        quantum_int(l + 1), quantum_binom(k + l - 1, l)
    ) - _stride2_prod(quantum_int(k - 1), quantum_binom(k + l - 1, l - 1))
    return lhs == rhs


# -- the rational-function field --------------------------------------

class RatFunc:
    """Normalized quotient of two Laurent polynomials.

    Canonical form: the denominator has minimal exponent 0 and positive
    leading coefficient, the polynomial gcd of numerator and denominator
    is trivial, and the integer contents share no common factor.  Field
    equality is therefore structural equality.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=_LP_ONE):
        if isinstance(num, int):
            num = LaurentPoly.const(num)
        if isinstance(den, int):
            den = LaurentPoly.const(den)
        if not den:
            raise ZeroDivisionError("RatFunc: zero denominator")
        if not num:
            self.num, self.den = _LP_ZERO, _LP_ONE
            self._hash = None
            return
        nshift = num.min_exp()
        dshift = den.min_exp()
        n0 = num.shift(-nshift)
        d0 = den.shift(-dshift)
        g = lp_gcd(n0, d0)
        if g.terms != {0: 1}:
            n0 = n0.divexact(g)
            d0 = d0.divexact(g)
        c = math.gcd(n0.content(), d0.content())
        if d0.leading_coeff() < 0:
            c = -c
        if c != 1:
            n0 = LaurentPoly({e: k // c for e, k in n0.terms.items()})
            d0 = LaurentPoly({e: k // c for e, k in d0.terms.items()})
        self.num = n0.shift(nshift - dshift)
        self.den = d0
        self._hash = None

    @staticmethod
    def zero():
        return _RF_ZERO

    @staticmethod
    def one():
        return _RF_ONE

    @staticmethod
    def from_poly(p):
        r = RatFunc.__new__(RatFunc)
        r.num = p
        r.den = _LP_ONE
        r._hash = None
        return r

    @staticmethod
    def _reduced(num, den):
        """Build from a fraction already free of polynomial common factors."""
        if not num:
            return _RF_ZERO
        dshift = den.min_exp()
        if dshift:
            den = den.shift(-dshift)
            num = num.shift(-dshift)
        c = math.gcd(num.content(), den.content())
        if den.leading_coeff() < 0:
            c = -c
        if c != 1:
            num = LaurentPoly({e: k // c for e, k in num.terms.items()})
            den = LaurentPoly({e: k // c for e, k in den.terms.items()})
        r = RatFunc.__new__(RatFunc)
        r.num = num
        r.den = den
        r._hash = None
        return r

    def __bool__(self):
        return bool(self.num)

    def is_zero(self):
        return not self.num

    def __add__(self, other):
        if not other.num:
            return self
        if not self.num:
            return other
        d1, d2 = self.den, other.den
        if d1 is d2 or d1 == d2:
            t = self.num + other.num
            if not t:
                return _RF_ZERO
            g2 = lp_gcd_cached(t, d1)
            if g2.terms == {0: 1}:
                return RatFunc._reduced(t, d1)
            return RatFunc._reduced(t.divexact(g2), d1.divexact(g2))
        # classic reduced addition: only small gcds are taken
        g = lp_gcd_cached(d1, d2)
        if g.terms == {0: 1}:
            return RatFunc._reduced(self.num * d2 + other.num * d1, d1 * d2)
        d2g = d2.divexact(g)
        t = self.num * d2g + other.num * d1.divexact(g)
        if not t:
            return _RF_ZERO
        g2 = lp_gcd_cached(t, g)
        if g2.terms == {0: 1}:
            return RatFunc._reduced(t, d1 * d2g)
        return RatFunc._reduced(t.divexact(g2), d1.divexact(g2) * d2g)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        r = RatFunc.__new__(RatFunc)
        r.num = -self.num
        r.den = self.den
        r._hash = None
        return r

    def __mul__(self, other):
        if isinstance(other, int):
            return RatFunc(self.num * other, self.den)
        if not self.num or not other.num:
            return _RF_ZERO
        # cross-cancel so both gcds see small, already-reduced operands
        n1, d1 = self.num, self.den
        n2, d2 = other.num, other.den
        g1 = lp_gcd_cached(n1, d2)
        if g1.terms != {0: 1}:
            n1 = n1.divexact(g1)
            d2 = d2.divexact(g1)
        g2 = lp_gcd_cached(n2, d1)
        if g2.terms != {0: 1}:
            n2 = n2.divexact(g2)
            d1 = d1.divexact(g2)
        return RatFunc._reduced(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            other = RatFunc(other)
        if not other.num:
            raise ZeroDivisionError("RatFunc division by zero")
        return RatFunc(self.num * other.den, self.den * other.num)

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("RatFunc: zero has no inverse")
        return RatFunc(self.den, self.num)

    def mirror(self):
        return RatFunc(self.num.mirror(), self.den.mirror())

    def eval(self, q0):
        """Exact rational value at q = q0 (denominator must not vanish)."""
        d = lp_eval(self.den, q0)
        if d == 0:
            raise ZeroDivisionError("RatFunc.eval: denominator vanishes at q0")
        return lp_eval(self.num, q0) / d

    def __eq__(self, other):
        if isinstance(other, int):
            return self.den == _LP_ONE and self.num == other
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.num, self.den))
            self._hash = h
        return h

    def __str__(self):
        if self.den == _LP_ONE:
            return str(self.num)
        return "(%s)/(%s)" % (self.num, self.den)

    def __repr__(self):
        return "RatFunc(%s)" % str(self)


_RF_ZERO = RatFunc.from_poly(_LP_ZERO)
_RF_ONE = RatFunc.from_poly(_LP_ONE)


def rf_sum(pairs):
    """Sum of count * value contributions, grouped by denominator.

    pairs: iterable of (RatFunc, int multiplier).  Grouping keeps the
    number of polynomial gcds proportional to the number of distinct
    denominators rather than the number of contributions.
    """
    by_den = {}
    for rf, mult in pairs:
        if not rf.num or not mult:
            continue
        acc = by_den.get(rf.den)
        if acc is None:
            by_den[rf.den] = rf.num * mult
        else:
            by_den[rf.den] = acc + rf.num * mult
    total = _RF_ZERO
    for den, num in by_den.items():
        total = total + RatFunc(num, den)
    return total


# -- linear algebra over the field ------------------------------------

@dataclass
class LinearSolution:
    """Outcome of an exact linear solve over the rational-function field."""

    status: str  # "ok" or "inconsistent"
    solution: list | None
    rank: int | None
    nullspace: list | None

    @property
    def consistent(self):
        return self.status == "ok"


def rf_solve(matrix, rhs, precheck_q0=None):
    """Solve matrix * x = rhs exactly by Gaussian elimination.

    Returns a LinearSolution carrying one particular solution (free
    variables set to zero), the rank, and a nullspace basis.  With
    precheck_q0 set, a fast evaluation at that rational point may refute
    consistency before any exact elimination; a refutation is returned
    with rank and nullspace unset, and success is always confirmed
    exactly.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    if len(rhs) != m:
        raise ValueError("rf_solve: rhs length must equal the row count")
    for row in matrix:
        if len(row) != n:
            raise ValueError("rf_solve: ragged matrix")

    if precheck_q0 is not None and _numeric_refutes(matrix, rhs, precheck_q0):
        return LinearSolution("inconsistent", None, None, None)

    rows = [[matrix[i][j] for j in range(n)] + [rhs[i]] for i in range(m)]
    pivot_cols = []
    r = 0
    for col in range(n):
        pivot = None
        for i in range(r, m):
            if rows[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [x * inv if x else x for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [
                    a - f * b if b else a for a, b in zip(rows[i], rows[r])
                ]
        pivot_cols.append(col)
        r += 1
        if r == m:
            break
    rank = len(pivot_cols)
    for i in range(rank, m):
        if rows[i][n]:
            return LinearSolution("inconsistent", None, rank, None)
    solution = [_RF_ZERO] * n
    for i, col in enumerate(pivot_cols):
        solution[col] = rows[i][n]
    free_cols = [c for c in range(n) if c not in set(pivot_cols)]
    nullspace = []
    for fc in free_cols:
        vec = [_RF_ZERO] * n
        vec[fc] = _RF_ONE
        for i, col in enumerate(pivot_cols):
            vec[col] = -rows[i][fc]
        nullspace.append(vec)
    return LinearSolution("ok", solution, rank, nullspace)


def _numeric_refutes(matrix, rhs, q0):
    """True only if evaluation at q0 proves the system inconsistent."""
    try:
        num = [[x.eval(q0) for x in row] for row in matrix]
        nrhs = [x.eval(q0) for x in rhs]
    except ZeroDivisionError:
        return False
    m = len(num)
    n = len(num[0]) if m else 0
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, m) if num[i][col] != 0), None)
        if pivot is None:
            continue
        num[r], num[pivot] = num[pivot], num[r]
        nrhs[r], nrhs[pivot] = nrhs[pivot], nrhs[r]
        inv = 1 / num[r][col]
        num[r] = [x * inv for x in num[r]]
        nrhs[r] *= inv
        for i in range(m):
            if i != r and num[i][col] != 0:
                f = num[i][col]
                num[i] = [a - f * b for a, b in zip(num[i], num[r])]
                nrhs[i] -= f * nrhs[r]
        r += 1
        if r == m:
            break
    return any(nrhs[i] != 0 for i in range(r, m))
