"""Run every invariant suite over the objects of a config.

Each check yields one record ``{"claim", "subject", "status", "detail"}``
with status ``pass``, ``fail`` or ``skip``.  A check is skipped, not failed,
when its enumeration would exceed the budget.
"""

from __future__ import annotations

import numpy as np

from .actions import GAction, fixed_points
from .errors import BudgetError
from .filtrations import verify_presentation
from .h1 import (
    enumerate_z1_backtracking,
    enumerate_z1_bruteforce,
    h1,
    stabilizer,
    trivial_cocycle,
)
from .hn import Cochain, all_cochains, b_n, differential_batch, h_n, orbit_n, stab_n, z_n
from .limits import check_budget, resolve_budget
from .systems import (
    exact_sequence_check,
    lim1_tower,
    theta_1,
    theta_n,
)
from .torsors import classify_torsors

__all__ = ["verify_all", "CLAIMS"]

CLAIMS = {
    "complex_law": "d_{n+1} d_n = 0 on cochains",
    "enumerator_equivalence": "generator-propagation Z^1 equals brute-force Z^1",
    "orbit_stabilizer": "|orbit| * |stabilizer| = |A| on Z^1",
    "fixed_points_stabilizer": "stabilizer of the trivial cocycle equals A^G",
    "h0_fixed_points": "H^0 equals A^G",
    "degree_n_orbit_stabilizer": "|a + B^n| * |Z^(n-1)| = |C^(n-1)|, stabilizer = Z^(n-1)",
    "torsor_correspondence": "torsor isomorphism classes match H^1 classes",
    "abelian_agreement": "orbit partition of H^1 equals the coset partition of Z^1 / B^1",
    "theta1_bijective": "H^1(G, lim A_r) -> lim H^1(G, A_r) is well defined and bijective",
    "thetan_isomorphism": "H^n(G, lim A_r) -> lim H^n(G, A_r) is a bijective homomorphism",
    "lim1_vanishing": "lim^1 of a finite abelian tower is trivial",
    "exactness": "lim^1 H^(i-1) trivial and degree-i comparison bijective",
    "presentation": "A -> lim A/N_r is an equivariant isomorphism, cohomology consistent",
}

# enumeration sizes above this are left to the dedicated commands
VERIFY_CAP = 200_000
RANDOM_SAMPLES = 1000


def _record(claim, subject, ok, detail=""):
    status = "pass" if ok else "fail"
    return {"claim": claim, "subject": subject, "status": status, "detail": detail}


def _skip(claim, subject, detail):
    return {"claim": claim, "subject": subject, "status": "skip", "detail": detail}


def _run(out, claim, subject, fn):
    try:
        ok, detail = fn()
    except BudgetError as e:
        out.append(_skip(claim, subject, str(e)))
        return
    out.append(_record(claim, subject, ok, detail))


def complex_law_check(act: GAction, n: int, budget, rng=None, samples=RANDOM_SAMPLES):
    """d_{n+2} d_{n+1} f = 0 for every n-cochain, or for random ones.

    Exhaustive when the cochain count fits the budget; otherwise ``samples``
    random cochains drawn from ``rng``.
    """
    zero_width = act.g.order ** (n + 2)
    try:
        blocks = all_cochains(act, n, budget)
        mode = "exhaustive"
        first = next(blocks)
        blocks = [first, *blocks]
    except BudgetError:
        if rng is None:
            raise
        mode = f"random {samples}"
        width = act.g.order ** n
        blocks = [rng.integers(0, act.a.order, size=(samples, width))]
    checked = 0
    for block in blocks:
        dd = differential_batch(act, differential_batch(act, block, n + 1), n + 2)
        if dd.shape[1] != zero_width or (dd != 0).any():
            return False, f"{mode}: nonzero d d at degree {n}"
        checked += block.shape[0]
    return True, f"{mode}: {checked} cochains of degree {n}"


def _action_checks(name, act, budget, rng, out):
    cap = min(budget, VERIFY_CAP)
    abelian = act.a.is_abelian()
    holder = {}

    def enum():
        back = enumerate_z1_backtracking(act, budget=cap)
        brute = enumerate_z1_bruteforce(act, budget=cap)
        holder["z1"] = back
        return back == brute, f"|Z1| = {len(back)}"

    _run(out, "enumerator_equivalence", name, enum)
    if "z1" not in holder:
        try:
            holder["z1"] = enumerate_z1_backtracking(act, budget=cap)
        except BudgetError as e:
            for claim in ("orbit_stabilizer", "fixed_points_stabilizer", "torsor_correspondence"):
                out.append(_skip(claim, name, str(e)))
            return
    z1 = holder["z1"]
    h = h1(act, z1=z1)

    def orb_stab():
        for cls, st in zip(h.classes, h.stab_sizes):
            if len(cls) * st != act.a.order:
                return False, f"class of size {len(cls)} with stabilizer {st}"
        for c in sorted(z1, key=lambda c: c.values):
            if len(stabilizer(c)) * len(h.classes[h.classify(c)]) != act.a.order:
                return False, f"cocycle {c.values}"
        return True, f"{len(h)} classes over {len(z1)} cocycles"

    _run(out, "orbit_stabilizer", name, orb_stab)

    def cor2():
        ok = stabilizer(trivial_cocycle(act)).members == fixed_points(act).members
        return ok, f"|A^G| = {len(fixed_points(act))}"

    _run(out, "fixed_points_stabilizer", name, cor2)

    def torsors():
        if len(z1) > 1000:
            raise BudgetError(f"|Z1| = {len(z1)} > 1000")
        res = classify_torsors(act, z1, h)
        ok = res["agrees_with_h1"] and len(res["classes"]) == len(h)
        return ok, f"{len(res['classes'])} torsor classes, |H1| = {len(h)}"

    _run(out, "torsor_correspondence", name, torsors)

    if not abelian:
        return

    def h0():
        c = h_n(act, 0, cap)
        fixed = {(x,) for x in fixed_points(act).members}
        return set(c.class_of) == fixed and c.h_size == len(fixed), f"|H0| = {c.h_size}"

    _run(out, "h0_fixed_points", name, h0)

    def agree():
        c = h_n(act, 1, cap)
        orbit_part = {frozenset(x.values for x in cls) for cls in h.classes}
        coset_part = {frozenset(s) for s in c.classes()}
        return orbit_part == coset_part, f"|H1| = {c.h_size}"

    _run(out, "abelian_agreement", name, agree)

    for n in (1, 2):
        def deg(n=n):
            check_budget(act.a.order ** (act.g.order ** n), cap)
            zs = z_n(act, n, cap)
            zprev = z_n(act, n - 1, cap)
            bs = b_n(act, n, cap)
            total = act.a.order ** (act.g.order ** (n - 1))
            reps = sorted(zs, key=lambda c: c.values)
            if len(reps) * total > cap:
                reps = reps[:16]
            for a in reps:
                orb, st = orbit_n(a, cap), stab_n(a, cap)
                if len(orb) * len(st) != total or st != zprev or len(orb) != len(bs):
                    return False, f"degree {n}, cochain {a.values}"
            zero = Cochain(act, n, (0,) * act.g.order ** n)
            if orbit_n(zero, cap) != bs:
                return False, f"degree {n}: orbit of 0 is not B^n"
            return True, f"degree {n}: {len(reps)} cocycles, |B| = {len(bs)}, |Z^(n-1)| = {len(zprev)}"

        _run(out, "degree_n_orbit_stabilizer", f"{name} n={n}", deg)

    for n in (0, 1, 2):
        _run(out, "complex_law", f"{name} n={n}", lambda n=n: complex_law_check(act, n, cap, rng))


def _system_checks(name, sys, budget, out):
    cap = min(budget, VERIFY_CAP)

    def th1():
        r = theta_1(sys, cap)
        return r.bijective and r.natural, f"|left| = {r.left_size}, |right| = {r.right_size}"

    _run(out, "theta1_bijective", name, th1)
    abelian = all(o.a.is_abelian() for o in sys.objects)
    if abelian:
        for n in (1, 2):
            def thn(n=n):
                r = theta_n(sys, n, cap)
                return r.ok, f"n={n}: |left| = {r.left_size}, |right| = {r.right_size}"

            _run(out, "thetan_isomorphism", f"{name} n={n}", thn)
    if sys.poset.is_chain() and abelian:
        def l1():
            r = lim1_tower(sys, cap)
            return r.trivial, f"|lim1| = {r.size}"

        _run(out, "lim1_vanishing", name, l1)
        for i in (1, 2):
            def ex(i=i):
                r = exact_sequence_check(sys, i, cap)
                return r["exact"], f"i={i}"

            _run(out, "exactness", f"{name} i={i}", ex)
    if sys.cone is not None and sys.source is not None:
        def pres():
            r = verify_presentation(sys.source, sys, budget=cap)
            return r["ok"], f"levels {r['levels']}"

        _run(out, "presentation", name, pres)


def verify_all(cfg, seed=0, budget=None) -> dict:
    """Run every suite and summarise pass/fail per claim."""
    budget = resolve_budget(budget if budget is not None else cfg.budget)
    rng = np.random.default_rng(seed)
    records = []
    warnings = []
    if cfg.is_empty():
        warnings.append("empty config: nothing to verify")
    for name in sorted(cfg.actions):
        _action_checks(name, cfg.actions[name], budget, rng, records)
    for name in sorted(cfg.systems):
        _system_checks(name, cfg.systems[name], budget, records)
    for name in sorted(cfg.filtrations):
        act_name, _, tower = cfg.filtrations[name]

        def pres(tower=tower, act=cfg.actions[act_name]):
            r = verify_presentation(act, tower, budget=min(budget, VERIFY_CAP))
            return r["ok"], f"levels {r['levels']}"

        _run(records, "presentation", f"filtration {name}", pres)
    summary = {}
    for claim in CLAIMS:
        rs = [r for r in records if r["claim"] == claim]
        summary[claim] = {
            "description": CLAIMS[claim],
            "pass": sum(r["status"] == "pass" for r in rs),
            "fail": sum(r["status"] == "fail" for r in rs),
            "skip": sum(r["status"] == "skip" for r in rs),
        }
    failed = [r for r in records if r["status"] == "fail"]
    return {
        "ok": not failed,
        "summary": summary,
        "checks": records,
        "warnings": warnings,
        "first_failure": failed[0] if failed else None,
    }
