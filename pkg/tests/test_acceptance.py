"""Acceptance suite: seven criteria, each checked exactly and against its
runtime ceiling.  One PASS/FAIL line per criterion is printed in the pytest
terminal summary (and when this file is run as a script)."""
import math
import random
import sys
import time
from collections import defaultdict

import pytest

from localshtuka import (BoundSpec, Coweight, LocalShtuka, LoopElement, adlv_points,
                         canonical_lattice, check_decency, enumerate_lattices,
                         finite_field, metric_dtilde, newton_slopes, relative_position,
                         smith_form, tate_module, transport)
from localshtuka.adlv import membership
from localshtuka.errors import ShtukaError
from localshtuka.newton import kottwitz_gl
from localshtuka.oracle import brute_force_adlv
from localshtuka.rings import DualNumbers
from localshtuka.fields import FieldSpec
from localshtuka.sampling import (random_dual_instance, random_etale_shtuka,
                                  random_integral_invertible, random_loop_element)
from localshtuka.semilinear import bounded_by, relative_position_from_minors
from localshtuka.shtuka import (is_quasi_isogeny, lang_trivialize,
                                lift_qisog_dual_numbers, lift_uniqueness_dimension,
                                restrict)
from localshtuka.torus import (closed_form_norm, closed_form_ratio, embedding_ratio,
                               norm_of_mu, torus_mul, torus_ring)

pytestmark = pytest.mark.acceptance


def _report(acceptance, name, failures, elapsed, limit, extra=""):
    ok = not failures and elapsed < limit
    detail = f"{elapsed:.2f}s (limit {limit}s)"
    if extra:
        detail += f"; {extra}"
    if failures:
        detail += "; failed: " + ", ".join(failures)
    acceptance[name] = (ok, detail)
    print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    assert not failures, failures
    assert elapsed < limit, f"runtime {elapsed:.2f}s exceeds {limit}s"


def _zz(ring, prec):
    return LoopElement.from_terms(ring, [[{}, {1: 1}], [{0: 1}, {}]], prec)


def test_1_torus_norm_example(acceptance):
    t0 = time.perf_counter()
    failures = []
    for p in (3, 5):
        R = torus_ring(p, 1, 8)
        g = norm_of_mu(R, R.gen(), 16)
        closed = closed_form_norm(R, 16)
        if not (g.agrees(closed) and g.prec == closed.prec == 16):
            failures.append(f"p={p} norm vs closed form")
        ratio = embedding_ratio(p, 1, 8, 16)
        if not ratio.agrees(torus_mul(g, g)):
            failures.append(f"p={p} ratio vs g^2")
        if not ratio.agrees(closed_form_ratio(R, 16)):
            failures.append(f"p={p} ratio vs closed form")
        if not g.satisfies_equation():
            failures.append(f"p={p} a^2 - b^2 z = 1")
    elapsed = time.perf_counter() - t0
    _report(acceptance, "1 torus norm example", failures, elapsed, 1.0)


def _hodge_sample(rng):
    q, r = rng.choice([2, 3]), rng.choice([2, 3])
    return random_loop_element(finite_field(q), r, 12, rng, -3, 3, 0.2, None)


def _candidate_bounds(mu, rng):
    """mu itself, its neighbours in dominance order and random coweights of
    the same total."""
    out = {mu}
    parts = list(mu.parts)
    r = len(parts)
    for i in range(r):
        for j in range(r):
            if i != j:
                v = parts[:]
                v[i] += 1
                v[j] -= 1
                out.add(Coweight.sorted(v))
    for _ in range(3):
        v = [rng.randint(-4, 4) for _ in range(r - 1)]
        v.append(mu.total - sum(v))
        out.add(Coweight.sorted(v))
    return out


def test_2_hodge_oracle_equivalence(acceptance):
    rng = random.Random(2)
    t0 = time.perf_counter()
    disagree, recon, compared = 0, 0, 0
    for _ in range(500):
        g = _hodge_sample(rng)
        U, mu, V = smith_form(g)
        D = LoopElement.diagonal(g.ring, mu.parts, g.prec + 64)
        if not (U * D * V).agrees(g):
            recon += 1
        if relative_position_from_minors(g) != mu:
            disagree += 1
        for lam in _candidate_bounds(mu, rng):
            for rel in ("leq", "eq"):
                smith = mu.dominated_by(lam) if rel == "leq" else mu == lam
                compared += 1
                if bounded_by(g, BoundSpec(lam, rel)) != smith:
                    disagree += 1
    elapsed = time.perf_counter() - t0
    failures = []
    if disagree:
        failures.append(f"{disagree} minors/Smith disagreements")
    if recon:
        failures.append(f"{recon} reconstructions")
    _report(acceptance, "2 Hodge oracle equivalence", failures, elapsed, 10.0,
            f"{compared} bound comparisons")


NEWTON_BUDGET = 48


def _newton_sample(rng):
    """Random b whose precision just clears the up-front rule."""
    q, r = rng.choice([2, 3]), rng.choice([2, 3])
    b = random_loop_element(finite_field(q), r, 1000, rng, -1, 2, 0.3, 3)
    vmin, vdet = b.min_valuation(), kottwitz_gl(b)
    need = NEWTON_BUDGET * (vdet - (r - 1) * vmin) - NEWTON_BUDGET * min(vmin, 0)
    return b.truncate(need + 4)


def test_3_newton_suite(acceptance):
    rng = random.Random(3)
    t0 = time.perf_counter()
    failures = []
    bad_sum, bad_mazur, bad_conj, errors = 0, 0, 0, 0
    for _ in range(100):
        b = _newton_sample(rng)
        try:
            s = newton_slopes(b, NEWTON_BUDGET)
            c = random_integral_invertible(b.ring, b.rank, b.prec, rng, 3)
            s2 = newton_slopes(transport(LocalShtuka(b), c).b, NEWTON_BUDGET)
        except ShtukaError:
            errors += 1
            continue
        bad_sum += s.total != kottwitz_gl(b)
        bad_mazur += not s.dominated_by(relative_position(b))
        bad_conj += s2 != s
    for label, n in (("slope sum", bad_sum), ("Mazur", bad_mazur),
                     ("conjugation invariance", bad_conj), ("errors", errors)):
        if n:
            failures.append(f"{n} {label}")
    b = _zz(finite_field(2), 64)
    if tuple(newton_slopes(b)) != (0.5, 0.5):
        failures.append("[[0,z],[1,0]] slopes")
    if check_decency(b, 2) is not True or check_decency(b, 1) is not False:
        failures.append("[[0,z],[1,0]] decency")
    elapsed = time.perf_counter() - t0
    _report(acceptance, "3 Newton suite", failures, elapsed, 10.0)


def test_4_lang_tate_suite(acceptance):
    rng = random.Random(4)
    t0 = time.perf_counter()
    lang_fail, ident, free, galois = 0, 0, 0, 0
    for _ in range(50):
        q, r = rng.choice([2, 3]), rng.choice([1, 2, 3])
        L = random_etale_shtuka(finite_field(q), r, 12, rng)
        try:
            d, c = lang_trivialize(L, 24)
        except ShtukaError:
            lang_fail += 1
            continue
        b = L.b.change_ring(c.ring)
        ident += not c.agrees(b * c.frobenius())
        T = tate_module(L, 24, degree=d)
        free += not T.is_free()
        galois += not T.galois_is_integral()
    elapsed = time.perf_counter() - t0
    failures = [f"{n} {label}" for label, n in
                (("without a trivialization at d <= 24", lang_fail),
                 ("c = b sigma(c) violations", ident), ("non-free Tate bases", free),
                 ("non-integral Galois matrices", galois)) if n]
    _report(acceptance, "4 Lang/Tate suite", failures, elapsed, 30.0,
            f"{50 - lang_fail}/50 trivialized")


def test_5_adlv_oracle_equivalence(acceptance):
    rng = random.Random(5)
    t0 = time.perf_counter()
    failures = []
    F2 = finite_field(2)
    b = _zz(F2, 24)
    bound = BoundSpec(Coweight((1, 0)))
    for R in (F2, finite_field(2, 2)):
        res = adlv_points(b, bound, R, 2)
        oracle = brute_force_adlv(b, bound, R, 2)
        if res.count != len(oracle):
            failures.append(f"F_{R.field.order}: {res.count} vs oracle {len(oracle)}")
        elif {canonical_lattice(g, 2) for g in oracle} != set(res.points):
            failures.append(f"F_{R.field.order}: point sets differ")
    cands = enumerate_lattices(2, F2, 2)
    bad = 0
    for _ in range(100):
        g = rng.choice(cands).matrix(48)
        k = random_integral_invertible(F2, 2, 48, rng, 4)
        bad += membership(g, b, bound) != membership(g * k, b, bound)
    if bad:
        failures.append(f"{bad} representative changes alter membership")
    for k in (-2, 0, 1, 3):
        for a in (0, 1, 2, 3):
            b1 = LoopElement.diagonal(F2, (k,), 24)
            n = adlv_points(b1, BoundSpec(Coweight((k,)), "eq"), F2, a).count
            if n != 2 * a + 1:
                failures.append(f"rank 1, k={k}, a={a}: {n} points")
    ident = LoopElement.identity(F2, 2, 24)
    if adlv_points(ident, bound, F2).count != 0:
        failures.append("identity b has points")
    elapsed = time.perf_counter() - t0
    _report(acceptance, "5 ADLV oracle equivalence", failures, elapsed, 60.0)


def test_6_rigidity_round_trip(acceptance):
    rng = random.Random(6)
    rings = [DualNumbers(FieldSpec(2, 1)), DualNumbers(FieldSpec(3, 1)),
             DualNumbers(FieldSpec(2, 2))]
    t0 = time.perf_counter()
    bad = defaultdict(int)
    for _ in range(100):
        R = rng.choice(rings)
        L, L2, f = random_dual_instance(R, rng.choice([1, 2, 3]), 8, rng)
        fbar = restrict(f)
        lifted = lift_qisog_dual_numbers(fbar, L, L2)
        bad["intertwining"] += not is_quasi_isogeny(lifted, L, L2)
        bad["reduction"] += not restrict(lifted).agrees(fbar)
        bad["uniqueness"] += lift_uniqueness_dimension(L) != 0
        bad["recovers f"] += not lifted.agrees(f)
    elapsed = time.perf_counter() - t0
    failures = [f"{n} {label}" for label, n in bad.items() if n]
    _report(acceptance, "6 rigidity round trip", failures, elapsed, 5.0)


def test_7_metric_axioms(acceptance):
    rng = random.Random(7)
    t0 = time.perf_counter()
    classes = defaultdict(list)
    for q in (2, 3):
        for L in enumerate_lattices(2, finite_field(q), 2):
            classes[(q, L.det_valuation())].append(L.matrix(32))
    keys = sorted(classes)
    weights = [len(classes[k]) for k in keys]
    bad = defaultdict(int)
    finite = 0
    for _ in range(200):
        pool = classes[rng.choices(keys, weights)[0]]
        x, y, w = (rng.choice(pool) for _ in range(3))
        dxy, dyx = metric_dtilde(x, y), metric_dtilde(y, x)
        dyw, dxw = metric_dtilde(y, w), metric_dtilde(x, w)
        bad["identity"] += metric_dtilde(x, x) != 0
        bad["symmetry"] += dxy != dyx
        bad["triangle"] += dxw > dxy + dyw
        finite += not math.isinf(dxy)
    F2 = finite_field(2)
    translate = LoopElement.diagonal(F2, (2, -2), 32)
    bad["d(id, diag(z^2, z^-2)) = 2"] += metric_dtilde(LoopElement.identity(F2, 2, 32),
                                                       translate) != 2
    elapsed = time.perf_counter() - t0
    failures = [f"{n} {label}" for label, n in bad.items() if n]
    if finite < 200:
        failures.append(f"only {finite} finite distances")
    _report(acceptance, "7 metric axioms", failures, elapsed, 10.0)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
