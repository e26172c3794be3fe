"""Acceptance gate: the ten end-to-end criteria, one test and one printed
PASS/FAIL line each.  Everything is exact arithmetic; the runtime-bounded
sweeps are seeded and deterministic."""

import json
import random
import sys
import time

import pytest

from cuspdiff.classify import classify_bbA, is_normal, normalize
from cuspdiff.cli import main as cli_main
from cuspdiff.cuspops import (CuspShape, bbA_presentation, calA_presentation,
                              decompose, delta_op, generating_set, membership,
                              phi, structure_constant, w_minus)
from cuspdiff.exactpoly import BasePoly, NotDivisible
from cuspdiff.exprparse import parse_expression
from cuspdiff.gwa import GwaElement, gwa_multiply
from cuspdiff.modactions import (WeightSupport, cusp_mask, quotient_mask,
                                 restriction_blocks, simplicity_probe,
                                 stability_check, support)
from cuspdiff.skewlaurent import LaurentOp, commutator, render_op

H = BasePoly.variable(1, 0)


def _report(n, ok, detail, cap):
    """One line per criterion, printed past the capture layer."""
    verdict = "PASS" if ok else "FAIL"
    line = "CRITERION %d: %s" % (n, verdict)
    if detail:
        line += " (%s)" % detail
    with cap.disabled():
        print(line, flush=True)
    return line


def test_criterion_01_defining_relations_exact(capfd):
    start = time.monotonic()
    failures = []
    pairs = 0
    for m in range(2, 7):
        shape = CuspShape((m,))
        indices = [k for k in range(-2 * m + 1, 2 * m) if k != 0]
        for i in indices:
            for j in indices:
                pairs += 1
                try:
                    rel = structure_constant(shape, i, j)
                except NotDivisible:
                    failures.append((m, i, j, "division"))
                    continue
                lhs = delta_op(shape, (i,)) * delta_op(shape, (j,))
                if lhs != rel.rhs_op(shape):
                    failures.append((m, i, j, rel.case))
    elapsed = time.monotonic() - start
    ok = not failures and elapsed < 10.0
    line = _report(1, ok, "%d pairs, m=2..6, %.2f s" % (pairs, elapsed), capfd)
    assert ok, line + " failures=%r" % failures[:5]


def test_criterion_02_semigroup_identities(capfd):
    failures = []
    for m in range(2, 7):
        shape = CuspShape((m,))
        for i in range(m, 3 * m + 1):
            for j in range(m, 3 * m + 1):
                if delta_op(shape, (-i,)) * delta_op(shape, (-j,)) != \
                        delta_op(shape, (-i - j,)):
                    failures.append((m, -i, -j))
                if delta_op(shape, (i,)) * delta_op(shape, (j,)) != \
                        delta_op(shape, (i + j,)):
                    failures.append((m, i, j))
    ok = not failures
    line = _report(2, ok, "m=2..6, m <= i,j <= 3m both signs", capfd)
    assert ok, line + " failures=%r" % failures[:5]


def _random_gwa_element(pres, rng):
    """Coordinate degrees <= 4, coefficient degrees <= 3."""
    coords = {}
    for _ in range(rng.randint(1, 3)):
        deg = rng.randint(-4, 4)
        terms = {}
        for _ in range(rng.randint(1, 3)):
            terms[(rng.randint(0, 3),)] = rng.randint(-9, 9)
        poly = BasePoly(1, terms)
        if not poly.is_zero():
            coords[(deg,)] = poly
    return GwaElement(pres, coords)


def test_criterion_03_gwa_laurent_oracle(capfd):
    start = time.monotonic()
    rng = random.Random(20240308)
    configs = [calA_presentation(2), calA_presentation(3),
               calA_presentation(4), bbA_presentation(2)]
    checked = 0
    failures = []
    for pres, emb in configs:
        for _ in range(250):
            u = _random_gwa_element(pres, rng)
            v = _random_gwa_element(pres, rng)
            left = emb.apply(gwa_multiply(u, v))
            right = emb.apply(u) * emb.apply(v)
            checked += 1
            if left != right:
                failures.append((pres.a, u.coords, v.coords))
    elapsed = time.monotonic() - start
    ok = not failures and elapsed < 30.0
    line = _report(3, ok, "%d seeded pairs, %.2f s" % (checked, elapsed), capfd)
    assert ok, line + " failures=%d" % len(failures)


def test_criterion_04_weyl_intersection_identities(capfd):
    # the full identity list (a)-(f), taken literally, for m = 2..6; the
    # universally quantified family (a) is swept over i = m..m+4
    failures = []
    for m in range(2, 7):
        shape = CuspShape((m,))
        w1 = w_minus(shape, 1)
        hop = LaurentOp.from_poly(H)
        d1 = delta_op(shape, (1,))
        # (a) w_{-i} w_{-1} = h w_{-i-1}, w_{-1} w_{-i} = (h-1) w_{-1-i},
        #     [w_{-i}, w_{-1}] = w_{-m-1}, for all i >= m
        for i in range(m, m + 5):
            wi = w_minus(shape, i)
            wnext = w_minus(shape, i + 1)
            if wi * w1 != hop * wnext:
                failures.append((m, "a", "w(-%d)w(-1) = h w(-%d)" % (i, i + 1)))
            if w1 * wi != LaurentOp.from_poly(H - 1) * wnext:
                failures.append((m, "a", "w(-1)w(-%d) = (h-1) w(-%d)" % (i, i + 1)))
            if commutator(wi, w1) != w_minus(shape, m + 1):
                failures.append((m, "a", "[w(-%d), w(-1)] = w(-%d)" % (i, m + 1)))
        # (b) (w_{-1})^i = w_{-i} below the width
        for i in range(1, m):
            if w1 ** i != w_minus(shape, i):
                failures.append((m, "b", "w(-1)^%d = w(-%d)" % (i, i)))
        # (c) (w_{-1})^m = h w_{-m}
        if w1 ** m != hop * w_minus(shape, m):
            failures.append((m, "c", "w(-1)^%d = h w(-%d)" % (m, m)))
        # (d) [delta_1, x^i] = i x^{i+1}
        for i in range(1, 2 * m):
            xi = LaurentOp.x(1, 0, i)
            if commutator(d1, xi) != i * LaurentOp.x(1, 0, i + 1):
                failures.append((m, "d", "[delta(1), x^%d]" % i))
        # (e) w_{-1} delta_1 = h(h-1)(h-m), delta_1 w_{-1} = (h-1)(h-2)(h-m-1)
        if w1 * d1 != LaurentOp.from_poly(H * (H - 1) * (H - m)):
            failures.append((m, "e", "w(-1)delta(1)"))
        if d1 * w1 != LaurentOp.from_poly((H - 1) * (H - 2) * (H - m - 1)):
            failures.append((m, "e", "delta(1)w(-1)"))
        # (f) w_{-1} delta_i = h(h-m) delta_{i-1},
        #     delta_i w_{-1} = (h-i-1)(h-i-m) delta_{i-1}, for 2 <= i <= m-1
        for i in range(2, m):
            di = delta_op(shape, (i,))
            dprev = delta_op(shape, (i - 1,))
            if w1 * di != LaurentOp.from_poly(H * (H - m)) * dprev:
                failures.append((m, "f", "w(-1)delta(%d)" % i))
            if di * w1 != LaurentOp.from_poly((H - i - 1) * (H - i - m)) * dprev:
                failures.append((m, "f", "delta(%d)w(-1)" % i))
    ok = not failures
    detail = "all printed identities m=2..6"
    if failures:
        parts = sorted({p for _, p, _ in failures})
        detail += "; %d instances fail in parts %s" % (len(failures),
                                                       ",".join(parts))
    line = _report(4, ok, detail, capfd)
    assert ok, line + " first failures: %r" % failures[:6]


def test_criterion_05_degree_pair_values(capfd):
    failures = []
    for m in range(3, 7):
        shape = CuspShape((m,))
        d1, dm1 = delta_op(shape, (1,)), delta_op(shape, (-1,))
        d2, dm2 = delta_op(shape, (2,)), delta_op(shape, (-2,))
        checks = [
            ("delta(-1)delta(1)", dm1 * d1, H * (H - 1) * (H - m)),
            ("delta(1)delta(-1)", d1 * dm1, (H - 1) * (H - 2) * (H - m - 1)),
            ("delta(-2)delta(2)", dm2 * d2,
             (H + 1) * (H - m + 1) * (H - m) * (H - 1)),
            ("delta(2)delta(-2)", d2 * dm2,
             (H - 3) * (H - 1) * (H - m - 1) * (H - m - 2)),
        ]
        for name, got, expected in checks:
            if got != LaurentOp.from_poly(expected):
                failures.append((m, name))
    # degenerate width two: delta_2 = x^2 since phi_2 = 1
    shape = CuspShape((2,))
    d1, dm1 = delta_op(shape, (1,)), delta_op(shape, (-1,))
    d2, dm2 = delta_op(shape, (2,)), delta_op(shape, (-2,))
    checks = [
        ("delta(2) = x^2", d2, LaurentOp.x(1, 0, 2)),
        ("delta(-1)delta(1)", dm1 * d1,
         LaurentOp.from_poly(H * (H - 1) * (H - 2))),
        ("delta(1)delta(-1)", d1 * dm1,
         LaurentOp.from_poly((H - 1) * (H - 2) * (H - 3))),
        ("delta(-2)delta(2)", dm2 * d2,
         LaurentOp.from_poly((H + 1) * (H - 2))),
        ("delta(2)delta(-2)", d2 * dm2,
         LaurentOp.from_poly((H - 1) * (H - 4))),
    ]
    for name, got, expected in checks:
        if got != expected:
            failures.append((2, name))
    ok = not failures
    line = _report(5, ok, "m=3..6 plus the degenerate m=2 reading", capfd)
    assert ok, line + " failures=%r" % failures


def test_criterion_06_stability_and_gap_transitions(capfd):
    failures = []
    for m in range(2, 7):
        shape = CuspShape((m,))
        if not stability_check(generating_set(shape), cusp_mask(shape), 4 * m):
            failures.append((m, "stability"))
        if not simplicity_probe("A", shape, 4 * m):
            failures.append((m, "gap transitions A"))
        if not simplicity_probe("Aprime", shape, 4 * m):
            failures.append((m, "gap transitions Aprime"))
        sup_a = support(cusp_mask(shape))
        sup_q = support(quotient_mask(shape))
        for r in range(-20, 21):
            if sup_a.contains_root(r) == sup_q.contains_root(r):
                failures.append((m, "support partition at root %d" % r))
                break
    ok = not failures
    line = _report(6, ok, "window 4m, supports on [-20, 20], m=2..6", capfd)
    assert ok, line + " failures=%r" % failures


def test_criterion_07_classification_dimensions(capfd):
    failures = []
    for m in range(2, 9):
        entries = classify_bbA(m)
        finite = [e for e in entries[:4] if e.module is not None
                  and e.module.finite]
        dims = sorted(e.dimension for e in finite)
        if dims != sorted([1, m - 1]):
            failures.append((m, "dims %r" % dims))
        blocks_a, blocks_q = restriction_blocks(m, window=12)
        independent = {WeightSupport(b.translate(1))
                       for b in blocks_a + blocks_q}
        classified = {e.support for e in entries[:4]}
        if independent != classified:
            failures.append((m, "support mismatch"))
    ok = not failures
    line = _report(7, ok, "two finite simples of dimensions {1, m-1}, m=2..8", capfd)
    assert ok, line + " failures=%r" % failures


def _random_normal_candidate(pres, rng):
    """Shape sum v_{-k} beta_{-k}: split coefficients, degree <= 3, m' <= 3."""
    mprime = rng.randint(0, 3)
    coords = {}
    for k in range(0, mprime + 1):
        if k not in (0, mprime) and rng.random() < 0.3:
            continue
        c = BasePoly.constant(1, rng.choice([1, 2, 3, -1, -2]))
        for _ in range(rng.randint(0, 3)):
            root = rng.choice([-3, -2, -1, 0, 1, 2, 3, 4])
            c = c * (H - root)
        coords[(-k,)] = c
    return GwaElement(pres, coords)


def _minimality_witness(b, s):
    """True when shift count s satisfies the three orbit-order conditions."""
    from cuspdiff.classify import (_nonpositive_coords, _right_coeff,
                                   _roots_less, _split_roots)
    mprime, left = _nonpositive_coords(b)
    pres = b.presentation
    step = pres.steps[0]
    roots0 = _split_roots(_right_coeff(pres, 0, left[0]))
    rootsm = _split_roots(_right_coeff(pres, mprime, left[mprime]))
    shifted = [r - s * step for r in roots0]
    return (_roots_less(shifted, rootsm) and _roots_less(shifted, roots0)
            and _roots_less(shifted, _split_roots(pres.a[0])))


def test_criterion_08_normalization(capfd):
    rng = random.Random(20240570)
    presentations = [bbA_presentation(2)[0], bbA_presentation(3)[0],
                     bbA_presentation(4)[0]]
    failures = []
    for trial in range(500):
        pres = presentations[trial % 3]
        b = _random_normal_candidate(pres, rng)
        result = normalize(b)
        if not is_normal(result.normalized):
            failures.append((trial, "not normal"))
        if result.s > 0 and _minimality_witness(b, result.s - 1):
            failures.append((trial, "s not minimal"))
    ok = not failures
    line = _report(8, ok, "500 seeded elements, m' <= 3, coefficients split", capfd)
    assert ok, line + " failures=%r" % failures[:5]


def test_criterion_09_rank_two_consistency(capfd):
    shape = CuspShape((2, 3))
    failures = []
    # generators of distinct factors commute
    factor_gens = []
    for idx, mi in enumerate(shape.m):
        gens = [LaurentOp.h(2, idx)]
        for k in range(1, 2 * mi):
            for signed in (k, -k):
                alpha = tuple(signed if j == idx else 0 for j in range(2))
                gens.append(delta_op(shape, alpha))
        factor_gens.append(gens)
    for g1 in factor_gens[0]:
        for g2 in factor_gens[1]:
            if g1 * g2 != g2 * g1:
                failures.append(("commutation", render_op(g1), render_op(g2)))
    # membership and decompose factor through the tensor decomposition
    rng = random.Random(20249)
    for trial in range(200):
        u1 = _random_factor_op(2, rng)
        u2 = _random_factor_op(3, rng)
        u = _tensor(u1, u2)
        member = membership(u, shape)
        expected = membership(u1, 2) and membership(u2, 3)
        if member != expected:
            failures.append(("membership", trial))
            continue
        if member:
            coords = decompose(u, shape)
            c1 = decompose(u1, 2)
            c2 = decompose(u2, 3)
            product = {}
            for (a1,), p1 in c1.items():
                for (a2,), p2 in c2.items():
                    product[(a1, a2)] = p1.inject(2, 0) * p2.inject(2, 1)
            if coords != product:
                failures.append(("decompose", trial))
    ok = not failures
    line = _report(9, ok, "m=(2,3), cross-factor pairs and 200 random elements", capfd)
    assert ok, line + " failures=%r" % failures[:5]


def _random_factor_op(m, rng):
    """Nonzero rank-one operator; half the time a member by construction."""
    shape = CuspShape((m,))
    u = LaurentOp.zero(1)
    as_member = rng.random() < 0.5
    for _ in range(rng.randint(1, 2)):
        deg = rng.randint(-3, 3)
        coeff = BasePoly(1, {(rng.randint(0, 2),): rng.randint(-5, 5)})
        if coeff.is_zero():
            coeff = BasePoly.one(1)
        if as_member:
            u = u + LaurentOp.from_poly(coeff) * delta_op(shape, (deg,))
        else:
            u = u + LaurentOp.monomial(1, (deg,), coeff)
    if u.is_zero():
        u = LaurentOp.one(1)
    return u


def _tensor(u1, u2):
    out = LaurentOp.zero(2)
    for d1, c1 in u1.components.items():
        for d2, c2 in u2.components.items():
            out = out + LaurentOp.monomial(
                2, (d1[0], d2[0]), c1.inject(2, 0) * c2.inject(2, 1))
    return out


def test_criterion_10_cli_determinism(capsys):
    failures = []
    outputs = []
    for _ in range(2):
        code = cli_main(["relations-check", "--m", "2", "--json"])
        outputs.append(capsys.readouterr().out)
        if code != 0:
            failures.append("relations-check exit %d" % code)
    if outputs[0] != outputs[1]:
        failures.append("output differs between runs")
    if json.loads(outputs[0]).get("schema") != 1:
        failures.append("missing schema tag")
    # golden corpus round trip
    rng = random.Random(2024)
    for n in range(100):
        u = LaurentOp.zero(1)
        for _ in range(rng.randint(1, 3)):
            deg = rng.randint(-4, 4)
            coeff = BasePoly(1, {(rng.randint(0, 3),): rng.randint(-9, 9)})
            u = u + LaurentOp.monomial(1, (deg,), coeff)
        if parse_expression(render_op(u), 2) != u:
            failures.append("round trip %d" % n)
            break
    ok = not failures
    line = _report(10, ok, "byte-identical JSON, 100-string corpus", capsys)
    assert ok, line + " failures=%r" % failures
