"""Command-line front end.

Subcommands: qnum prints quantum integers and binomials, verify runs
the invariant suites, decompose emits a direct-sum certificate, jw
prints a Jones-Wenzl idempotent with its property report.  Exit codes:
0 success, 1 verified-false or not-found, 2 usage error.  Output is
deterministic: per-check timings are collected in the SuiteReport but
never rendered.
"""

from __future__ import annotations

import argparse
import math
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .qarith import (
    LaurentPoly,
    RatFunc,
    lp_eval,
    quantum_binom,
    quantum_int,
    rf_sum,
    verify_cor_q,
    verify_lemma_q,
)
from .tldiag import (
    Element,
    close_trace,
    compose,
    e_matching,
    enumerate_basis,
    tensor,
)
from . import otl
from .otl import (
    OrElement,
    OrMatching,
    iota,
    lift,
    or_close_trace,
    or_compose,
    or_tensor,
    oriented_cap,
    oriented_cup,
    verify_arc_move,
    verify_ia,
    verify_oio,
    verify_teleport,
)
from .jw import jones_wenzl, jw_solve_by_uniqueness
from . import karoubi
from .karoubi import (
    IdempotentObject,
    NO_CERTIFICATE,
    decompose_jw,
    find_isomorphism,
)

SUITES = ("qidentities", "tl", "jw", "otl", "karoubi", "all")


@dataclass
class SuiteReport:
    suite: str
    checks: list = field(default_factory=list)  # (check id, ok, elapsed ms)

    def run(self, check_id, fn):
        t0 = time.perf_counter()
        ok, detail = fn()
        ms = (time.perf_counter() - t0) * 1000.0
        self.checks.append((check_id, ok, ms, detail))

    @property
    def overall(self):
        return all(ok for _, ok, _, _ in self.checks)

    def render(self):
        lines = ["suite %s" % self.suite]
        for cid, ok, _, detail in self.checks:
            line = "%-4s %s" % ("pass" if ok else "FAIL", cid)
            if detail:
                line += "  %s" % detail
            lines.append(line)
        lines.append(
            "overall %s (%d checks)"
            % ("pass" if self.overall else "FAIL", len(self.checks))
        )
        return "\n".join(lines)


def _suite_qidentities(max_n, q0):
    rep = SuiteReport("qidentities")

    def lemma_row(k):
        def check():
            for l in range(1, max_n + 1):
                lhs = quantum_int(k + l)
                if q0 is not None and lp_eval(lhs, q0) != lp_eval(
                    quantum_int(k), q0
                ) * lp_eval(quantum_int(l + 1), q0) - lp_eval(
                    quantum_int(k - 1), q0
                ) * lp_eval(quantum_int(l), q0):
                    return False, "counterexample k=%d l=%d (numeric)" % (k, l)
                if not verify_lemma_q(k, l):
                    return False, "counterexample k=%d l=%d" % (k, l)
            return True, ""

        return check

    def cor_row(k):
        def check():
            for l in range(1, max_n + 1):
                if not verify_cor_q(k, l):
                    return False, "counterexample k=%d l=%d" % (k, l)
            return True, ""

        return check

    for k in range(1, max_n + 1):
        rep.run("lemma-q[k=%d]" % k, lemma_row(k))
    for k in range(1, max_n + 1):
        rep.run("cor-q[k=%d]" % k, cor_row(k))
    return rep


_CATALAN_EXPECT = [math.comb(2 * n, n) // (n + 1) for n in range(0, 13)]


def _suite_tl(max_n, q0):
    rep = SuiteReport("tl")
    top = min(max_n, 8)

    def catalan(n):
        def check():
            got = len(enumerate_basis(n, n))
            want = _CATALAN_EXPECT[n]
            if got != want:
                return False, "counterexample n=%d got=%d want=%d" % (n, got, want)
            return True, ""

        return check

    for n in range(1, top + 1):
        rep.run("catalan[%d]" % n, catalan(n))

    def e1_square():
        e1 = Element.from_matching(e_matching(2, 0))
        want = e1.scale(RatFunc(LaurentPoly({1: 1, -1: 1})))
        ok = compose(e1, e1) == want
        return ok, "" if ok else "counterexample e1.e1 != (q+q^-1) e1"

    rep.run("e1-bubble", e1_square)

    def loop_closure():
        ok = close_trace(Element.identity(1)) == RatFunc(
            LaurentPoly({1: 1, -1: 1})
        )
        return ok, "" if ok else "counterexample closure(id_1) != q+q^-1"

    rep.run("loop-closure", loop_closure)
    return rep


def _suite_jw(max_n, q0):
    rep = SuiteReport("jw")
    top = min(max_n, 8)

    def props(n):
        def check():
            r = jones_wenzl(n).report
            ok = r.all_ok
            return ok, "" if ok else "counterexample n=%d: %s" % (n, r)

        return check

    def oracle(n):
        def check():
            ok = jones_wenzl(n).element == jw_solve_by_uniqueness(n)
            return ok, "" if ok else "counterexample n=%d oracle mismatch" % n

        return check

    def trace(n):
        def check():
            ok = close_trace(jones_wenzl(n).element) == RatFunc(quantum_int(n + 1))
            return ok, "" if ok else "counterexample n=%d trace != [%d]" % (n, n + 1)

        return check

    for n in range(1, top + 1):
        rep.run("properties[%d]" % n, props(n))
    for n in range(1, min(top, 6) + 1):
        rep.run("oracle[%d]" % n, oracle(n))
    for n in range(1, top + 1):
        rep.run("trace[%d]" % n, trace(n))
    return rep


def _random_tl_element(rng, i, j):
    basis = enumerate_basis(i, j)
    x = Element.zero(i, j)
    for m in rng.sample(basis, k=min(3, len(basis))):
        x = x + Element.from_matching(m, RatFunc(rng.randint(-3, 3)))
    return x


def _suite_otl(max_n, q0):
    rep = SuiteReport("otl")
    top = min(max_n, 8)

    def functorial():
        rng = random.Random(46171)
        for trial in range(200):
            i = rng.randint(0, 3)
            j = rng.randint(0, 3)
            k = rng.randint(0, 3)
            if (i + j) % 2 or (j + k) % 2:
                continue
            f = _random_tl_element(rng, j, k)
            g = _random_tl_element(rng, i, j)
            if lift(compose(f, g)) != or_compose(lift(f), lift(g)):
                return False, "counterexample compose trial=%d" % trial
            if lift(tensor(f, g)) != or_tensor(lift(f), lift(g)):
                return False, "counterexample tensor trial=%d" % trial
        return True, ""

    rep.run("lift-functorial", functorial)

    def loop_sum():
        total = RatFunc.zero()
        for d in (True, False):
            closed = or_compose(oriented_cap(2, 0, d), oriented_cup(2, 0, not d))
            total = total + closed.coeff(OrMatching.make(enumerate_basis(0, 0)[0], ()))
        ok = total == RatFunc(LaurentPoly({1: 1, -1: 1}))
        return ok, "" if ok else "counterexample loop orientation sum"

    rep.run("loop-sum", loop_sum)

    def partition(n):
        def check():
            total = OrElement.zero(n, n)
            sigs = karoubi.all_signatures(n)
            for s in sigs:
                total = total + iota(s)
            if total != lift(Element.identity(n)):
                return False, "counterexample n=%d sum != lift(id)" % n
            for a in sigs:
                for b in sigs:
                    prod = or_compose(iota(a), iota(b))
                    want = iota(a) if a == b else OrElement.zero(n, n)
                    if prod != want:
                        return False, "counterexample n=%d %s.%s" % (n, a, b)
            return True, ""

        return check

    for n in range(1, min(top, 6) + 1):
        rep.run("iota-partition[%d]" % n, partition(n))

    def teleport():
        loop = RatFunc(LaurentPoly({1: 1, -1: 1}))
        for s in ("", "^v", "v^", "^^vv"):
            if not verify_teleport(loop, s):
                return False, "counterexample s=%r" % s
        return True, ""

    rep.run("teleport", teleport)

    def ia(k):
        def check():
            for n in range(0, k + 1):
                if not verify_ia(k, n):
                    return False, "counterexample k=%d n=%d" % (k, n)
            return True, ""

        return check

    for k in range(0, top + 1):
        rep.run("ia[%d]" % k, ia(k))

    def oio(n):
        def check():
            ok = verify_oio(n)
            return ok, "" if ok else "counterexample n=%d" % n

        return check

    for n in range(0, top + 1):
        rep.run("oio[%d]" % n, oio(n))

    def arc_move(n):
        def check():
            r = verify_arc_move(n)
            return bool(r), str(r)

        return check

    for n in range(0, min(top, 5) + 1):
        rep.run("arc-move[%d]" % n, arc_move(n))
    return rep


def _suite_karoubi(max_n, q0):
    rep = SuiteReport("karoubi")
    top = min(max_n, 4)

    def id2_split():
        id2 = IdempotentObject.make(lift(Element.identity(2)))
        p2 = IdempotentObject.make(lift(jones_wenzl(2).element))
        e1 = IdempotentObject.make(
            lift(
                Element.from_matching(e_matching(2, 0)).scale(
                    RatFunc(1, quantum_int(2))
                )
            )
        )
        cert = find_isomorphism(id2, [p2, e1])
        if cert is NO_CERTIFICATE:
            return False, "counterexample id_2 vs p_2 + e_1/[2]"
        ok = cert.validate()
        return ok, "" if ok else "counterexample id_2 certificate invalid"

    rep.run("id2-split", id2_split)

    def decomp(n):
        def check():
            try:
                sigs, cert = decompose_jw(n)
            except LookupError as exc:
                return False, str(exc)
            if not cert.validate():
                return False, "counterexample n=%d certificate invalid" % n
            total = rf_sum(
                (karoubi.closure_value(s), 1) for s in sigs
            )
            if total != RatFunc(quantum_int(n + 1)):
                return False, "counterexample n=%d closure sum" % n
            return True, "signatures=%s" % ",".join(sigs)

        return check

    for n in range(1, top + 1):
        rep.run("decompose[%d]" % n, decomp(n))
    return rep


_SUITE_FN = {
    "qidentities": _suite_qidentities,
    "tl": _suite_tl,
    "jw": _suite_jw,
    "otl": _suite_otl,
    "karoubi": _suite_karoubi,
}

_SUITE_DEFAULT_MAX = {
    "qidentities": 30,
    "tl": 8,
    "jw": 8,
    "otl": 8,
    "karoubi": 4,
}


def cmd_qnum(args, out):
    if args.n < 0:
        print("qnum: n must be >= 0", file=sys.stderr)
        return 2
    if args.choose is not None:
        if not 0 <= args.choose <= args.n:
            print("qnum: need 0 <= k <= n", file=sys.stderr)
            return 2
        print(quantum_binom(args.n, args.choose), file=out)
    else:
        print(quantum_int(args.n), file=out)
    return 0


def cmd_verify(args, out):
    q0 = None
    if args.q0 is not None:
        try:
            q0 = Fraction(args.q0)
            lp_eval(LaurentPoly({0: 1}), q0)
        except (ValueError, ZeroDivisionError) as exc:
            print("verify: bad --q0: %s" % exc, file=sys.stderr)
            return 2
    names = list(_SUITE_FN) if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        max_n = args.max if args.max is not None else _SUITE_DEFAULT_MAX[name]
        if max_n < 1:
            print("verify: --max must be >= 1", file=sys.stderr)
            return 2
        reports.append(_SUITE_FN[name](max_n, q0))
    text = "\n".join(r.render() for r in reports)
    print(text, file=out)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    return 0 if all(r.overall for r in reports) else 1


def cmd_decompose(args, out):
    if not 1 <= args.n <= 4:
        print("decompose: need 1 <= n <= 4", file=sys.stderr)
        return 2
    try:
        sigs, cert = decompose_jw(args.n)
    except LookupError as exc:
        print(str(exc), file=out)
        return 1
    print(cert.serialize(signatures=sigs), file=out)
    return 0


def cmd_jw(args, out):
    if args.n < 1:
        print("jw: n must be >= 1", file=sys.stderr)
        return 2
    jw = jones_wenzl(args.n)
    print("p_%d = %s" % (args.n, jw.element), file=out)
    print(jw.report, file=out)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="planalg",
        description="exact Temperley-Lieb / oriented-diagram calculator",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qnum", help="print a quantum integer or binomial")
    p.add_argument("n", type=int)
    p.add_argument("--choose", type=int, default=None, metavar="K")
    p.set_defaults(fn=cmd_qnum)

    p = sub.add_parser("verify", help="run an invariant suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--max", type=int, default=None, metavar="N")
    p.add_argument("--q0", default=None, metavar="RATIONAL")
    p.add_argument("--out", default=None, metavar="PATH")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("decompose", help="emit a direct-sum certificate")
    p.add_argument("n", type=int)
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("jw", help="print a Jones-Wenzl idempotent")
    p.add_argument("n", type=int)
    p.set_defaults(fn=cmd_jw)

    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.fn(args, sys.stdout)


if __name__ == "__main__":
    sys.exit(main())
