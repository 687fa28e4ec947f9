"""One test per acceptance criterion, each printing a single PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the summary lines.
"""

import math
import random
import time

from palette_lab import cli
from palette_lab.bounds import bound_report, crossover, eval_rates, rate_convergence
from palette_lab.choosability import (
    complete_bipartite,
    decide_choosable,
    decide_kl_choosable,
    find_l_colouring,
    is_proper_l_colouring,
    Status as CStatus,
)
from palette_lab.extremal import (
    INFINITE,
    Status,
    compute_M,
    compute_R,
    lower_bound_R,
    naive_R_oracle,
    upper_bound_R,
)
from palette_lab.gadgets import (
    hard_bipartite_assignment,
    hitting_set_used,
    kmm_assignment,
    property_k_colouring,
)
from palette_lab.graphgen import graphs_up_to
from palette_lab.setfam import GroundParams, SetFamily, elems_of, has_property_b

from test_gadgets import random_instance


def report(name: str, ok: bool, detail: str):
    print(f"\n[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, detail


def test_table_r3():
    t0 = time.monotonic()
    rows = cli.table_r3(budget=60, verify=True)
    elapsed = time.monotonic() - t0
    got = tuple(INFINITE if r.status is Status.INFINITE else r.value for _, r in rows)
    expected = (INFINITE, 10, 8, 5, 4, 3)
    ok = got == expected and elapsed < 120
    shown = tuple("inf" if v is INFINITE else v for v in got)
    report("1 R(3,4..9) table", ok, f"computed {shown}, expected (inf, 10, 8, 5, 4, 3), {elapsed:.1f}s")


def test_binomial_identities():
    got = {
        "R(2,3)": compute_R(GroundParams(2, 3)).value,
        "R(3,5)": compute_R(GroundParams(3, 5)).value,
        "R(4,7)": compute_R(GroundParams(4, 7)).value,
        "M(2,3)": compute_M(GroundParams(2, 3)).value,
        "M(3,5)": compute_M(GroundParams(3, 5)).value,
    }
    want = {"R(2,3)": math.comb(3, 2), "R(3,5)": math.comb(5, 3), "R(4,7)": math.comb(7, 4),
            "M(2,3)": math.comb(3, 2), "M(3,5)": math.comb(5, 3)}
    report("2 binomial identities", got == want, str(got))


def test_m37():
    res = compute_M(GroundParams(3, 7), budget=300)
    ok = res.value == 7 and res.status is Status.EXACT and has_property_b(res.witness) is None
    report("3 M(3,7)=7", ok, f"value {res.value}, witness {res.witness.sets()}, {res.stats.seconds:.2f}s")


def test_factorial_bracket():
    failures, checked = [], 0
    for k in range(2, 5):
        for ell in range(2 * k - 1, 10):
            p = GroundParams(k, ell)
            res = compute_R(p, budget=120, enumerate_witnesses=False)
            if res.status is not Status.EXACT:
                failures.append(f"R({k},{ell}) inconclusive")
                continue
            lo = lower_bound_R(p).exact
            # the upper bound carries a logarithm; demand a margin far above rounding error
            hi = upper_bound_R(p).approx
            rep = bound_report(p, 2)
            checked += 1
            if not (lo <= res.value and hi - res.value > 1e-9 * hi):
                failures.append(f"R({k},{ell})={res.value} outside [{lo}, {hi})")
            if not rep.exp_lower <= lo:
                failures.append(f"exp bound above factorial bound at ({k},{ell})")
    eq = lower_bound_R(GroundParams(3, 5)).exact == compute_R(GroundParams(3, 5)).value == 10
    ok = not failures and eq
    report("4 factorial bracket", ok, f"{checked} cases checked, equality at (3,5): {eq} {failures}")


def test_crossover_and_limits():
    b = crossover()
    big, near = eval_rates(1e6), eval_rates(2 + 1e-6)
    checks = {
        "crossover": abs(b - 2.747655083) < 1e-6,
        "krsg->16": abs(near.krsg - 16) < 1e-3,
        "krsg->4": abs(big.krsg - 4) < 1e-3,
        "f->4": abs(near.f - 4) < 1e-3,
        "f->2": abs(big.f - 2) < 1e-3,
        "containers->2": abs(big.containers - 2) < 1e-3,
    }
    report("5 crossover and limits", all(checks.values()), f"crossover {b!r}, {checks}")


def test_gadget_soundness():
    results = {}
    for m in (1, 2, 3):
        out = kmm_assignment(m)
        results[f"kmm({m})"] = find_l_colouring(out.graph, out.assignment) is None
    for name, fam in (("triangle", SetFamily.from_sets(2, 3, [[1, 2], [1, 3], [2, 3]])),
                      ("triples of [5]", SetFamily.complete(3, 5))):
        out = hard_bipartite_assignment(fam)
        results[name] = find_l_colouring(out.graph, out.assignment) is None
    t0 = time.monotonic()
    v = decide_kl_choosable(complete_bipartite(3, 3), GroundParams(2, 3), budget=60)
    results["K33 (2,3)"] = v.status is CStatus.NOT_CHOOSABLE and v.seconds < 60
    v = decide_choosable(complete_bipartite(2, 4), 2, budget=60)
    results["K24 2-choice"] = v.status is CStatus.NOT_CHOOSABLE and v.seconds < 60
    report("6 gadget soundness", all(results.values()), f"{results} in {time.monotonic() - t0:.2f}s")


def test_hitting_set_round_trip():
    bad = []
    for k, ell in ((3, 7), (3, 8), (3, 9)):
        r = compute_R(GroundParams(k, ell)).value
        rng = random.Random(97 * ell)
        for i in range(100):
            g, la = random_instance(rng, k, ell, r - 1)
            c = property_k_colouring(g, la)
            kset = set(hitting_set_used(g, la))
            side_a, side_b = g.bipartition
            ok = (is_proper_l_colouring(g, la, c)
                  and all(c.colour[u] in kset for u in side_a)
                  and all(c.colour[v] not in kset for v in side_b)
                  and all(set(elems_of(la.lists[u])) & kset for u in side_a))
            if not ok:
                bad.append((k, ell, i))
    report("7 hitting-set colouring", not bad, f"300 instances, failures {bad}")


def test_23_choosable_scan():
    t0 = time.monotonic()
    rep5 = cli.scan_23(5, budget=60)
    rep6 = cli.scan_23(6, budget=60)
    ok = not rep5["violations"] and not rep5["skipped"]
    stretch = not rep6["violations"] and not rep6["skipped"] and time.monotonic() - t0 < 1800
    report("8 (2,3) implies 3-choosable", ok and stretch,
           f"n<=5: {rep5['graphs']} graphs, {rep5['choosable_23']} (2,3)-choosable, "
           f"0 violations; n<=6 stretch: {rep6['graphs']} graphs, {len(rep6['violations'])} violations")


def test_property_suite():
    checks = {}
    # oracle equivalence on the whole supported range
    agree = True
    for k in (2, 3):
        for ell in range(2 * k - 1, 12):
            if math.comb(ell, k) > 20:
                continue
            agree &= naive_R_oracle(GroundParams(k, ell)).value == compute_R(GroundParams(k, ell)).value
    checks["oracle"] = agree

    mono = True
    for k in (2, 3, 4):
        for solver, top in ((compute_R, 9), (compute_M, 8 if k == 3 else 7)):
            vals = [solver(GroundParams(k, ell), enumerate_witnesses=False).value
                    for ell in range(2 * k - 1, top + 1)]
            mono &= all(b <= a for a, b in zip(vals, vals[1:]))
    checks["monotone in ell"] = mono

    palette = True
    for g in graphs_up_to(5):
        prev = None
        for ell in (3, 4, 5):
            ok = decide_kl_choosable(g, GroundParams(2, ell)).status is CStatus.CHOOSABLE
            if prev is True and not ok:
                palette = False
            prev = ok
    checks["palette monotone"] = palette

    lim = math.log(eval_rates(3).r_rate)
    gaps = [abs(x - lim) for x in rate_convergence(3, 200)]
    tail = gaps[20 - 2:]
    checks["rate convergence"] = all(b < a for a, b in zip(tail, tail[1:]))

    d = bound_report(GroundParams(2, 3), 3).min_degree_d
    checks["D(2,3) finite"] = math.isfinite(d) and abs(d - 377) < 1
    report("9 property suite", all(checks.values()), str(checks))
