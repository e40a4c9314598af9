"""The acceptance suite behind ``coble run-all``."""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Iterable

from . import classifier, lattice, weyl
from .experiments import (
    ExperimentSpec,
    Report,
    coble_sanity_report,
    eighth_point_experiment,
    injectivity_experiment,
    q_identity_report,
    tr_test_experiment,
    vr_invariance_experiment,
)
from .intersection import triple
from .lattice import Isometry, canonical, h


@dataclass
class Criterion:
    id: str
    title: str
    check: Callable[[], tuple[bool, dict]]
    mandatory: bool = True


def _relations(corrupt: bool) -> tuple[bool, dict]:
    overrides = None
    if corrupt:
        rows = [list(row) for row in weyl.generator_matrix(weyl.S, 8).rows]
        rows[0][0] += 1
        overrides = {weyl.S: Isometry(tuple(tuple(row) for row in rows))}
    results = {}
    for r in range(5, 13):
        results[str(r)] = weyl.verify_relations(r, overrides if r == 8 else None)
    return all(results.values()), {"by_rank": results}


def _finite_types(include_e7: bool) -> tuple[bool, dict]:
    expected_order = {5: 720, 6: 23040, 7: 2903040}
    expected_roots = {5: 30, 6: 60, 7: 126}
    detail = {"order": {}, "roots": {}}
    ok = True
    for r in (5, 6, 7):
        n = len(lattice.enumerate_roots(r))
        detail["roots"][str(r)] = n
        ok &= n == expected_roots[r]
        if r < 7 or include_e7:
            order = weyl.enumerate_group(r, cap=4_000_000, mem_gb=4.0)
            detail["order"][str(r)] = order
            ok &= order == expected_order[r]
    if not include_e7:
        detail["order"]["7"] = "skipped (pass --with-e7)"
    return ok, detail


def _q_identity(trials: int) -> tuple[bool, dict]:
    reports = {r: q_identity_report(r, trials=trials, seed=r) for r in range(5, 13)}
    return all(rep.ok for rep in reports.values()), {
        "ranks": list(range(5, 13)), "random_per_rank": trials,
        "shadow": "lattice-level shadow: pseudoautomorphisms preserve q"}


def _classify() -> tuple[bool, dict]:
    ok = True
    detail = {}
    for r in range(8, 13):
        sols = classifier.classify(r)
        accepted = [s for s in sols if s.verdict == classifier.Verdict.ACCEPTED]
        ok &= (len(accepted) == 1 and accepted[0].sigma == 1 and accepted[0].alpha == 0
               and not any(accepted[0].L) and classifier.filter_order_independent(r))
        detail[str(r)] = [s.to_json() for s in sols]
    r9 = next(s for s in classifier.classify(9) if s.sigma == -1)
    kh2 = triple(canonical(9), h(9, 0), h(9, 0))
    ok &= r9.alpha == -2 and r9.verdict == classifier.Verdict.MOVABLE_CURVE and kh2 == -4
    detail["r9_rejected"] = {"alpha": str(r9.alpha), "verdict": r9.verdict.value, "K.H^2": kh2}
    detail["shadow"] = "lattice-level shadow: constrained pseudoautomorphisms are trivial"
    return ok, detail


def _report_check(make: Callable[[], Report]) -> Callable[[], tuple[bool, dict]]:
    def run() -> tuple[bool, dict]:
        rep = make()
        return rep.ok, rep.summary
    return run


def _both(*makers: Callable[[], Report]) -> Callable[[], tuple[bool, dict]]:
    def run() -> tuple[bool, dict]:
        reps = [m() for m in makers]
        return all(r.ok for r in reps), {"runs": [r.summary for r in reps]}
    return run


def _not_reproducible() -> tuple[bool, dict]:
    return True, {
        "status": "not reproducible at desk scale",
        "statements": ["trivial pseudoautomorphism group of X_8 for very general points",
                       "failure of the movable cone conjecture for X_8"],
        "lattice_shadows": ["criterion 3 (q-identity)", "criterion 4 (constrained isometry classification)"],
    }


def default_criteria(quick: bool = False, include_e7: bool = False, corrupt: bool = False,
                     seed: int = 0) -> list[Criterion]:
    trials = 30 if quick else 200
    return [
        Criterion("1", "Coxeter relations, r = 5..12", lambda: _relations(corrupt)),
        Criterion("2", "finite Weyl types: orders and root counts", lambda: _finite_types(include_e7)),
        Criterion("3", "q(D) = D^2.k and (-K)^3 = 64 - 8r", lambda: _q_identity(200 if quick else 1000)),
        Criterion("4", "constrained isometries: only the identity survives", _classify),
        Criterion("5", "Coble relations and homomorphism mod PGL", _report_check(
            lambda: coble_sanity_report(8, 10007, seed, pairs=20 if quick else 100))),
        Criterion("6", "Coble injectivity desk check, r = 8 and r = 9", _both(
            lambda: injectivity_experiment(ExperimentSpec("coble injectivity", r=8, prime=10007, seed=seed,
                                                          trials=trials, max_len=8)),
            lambda: injectivity_experiment(ExperimentSpec("coble injectivity", r=9, prime=10007, seed=seed,
                                                          trials=trials, max_len=8)))),
        Criterion("7", "tr injectivity on the box B = 1, p > 1e9, planted control", _report_check(
            lambda: tr_test_experiment(ExperimentSpec("curve tr-test", r=8, prime=1_000_000_007, seed=seed,
                                                      bound=1, configs=2 if quick else 5)))),
        Criterion("8", "eighth base point: 2H - seven points - q8 is principal", _report_check(
            lambda: eighth_point_experiment(ExperimentSpec("curve eighth-point", r=8, prime=10007, seed=seed,
                                                           configs=3 if quick else 10)))),
        Criterion("9", "V_r invariance under every generator, r = 9, 10", _both(
            lambda: vr_invariance_experiment(ExperimentSpec("curve vr-invariance", r=9, prime=10007, seed=seed,
                                                            trials=5 if quick else 50)),
            lambda: vr_invariance_experiment(ExperimentSpec("curve vr-invariance", r=10, prime=10007, seed=seed,
                                                            trials=5 if quick else 50)))),
        Criterion("10", "pseudoautomorphism statements (not reproducible)", _not_reproducible, mandatory=False),
    ]


def run_all(criteria: Iterable[Criterion], timing: bool = True) -> Report:
    rep = Report(ExperimentSpec("run-all"))
    failed = []
    for crit in criteria:
        start = time.perf_counter()
        try:
            ok, detail = crit.check()
        except Exception as exc:  # a crashing criterion is a failing criterion
            ok, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
        rec = {"kind": "criterion", "id": crit.id, "title": crit.title, "pass": ok,
               "mandatory": crit.mandatory, "detail": detail}
        if timing:
            rec["elapsed_s"] = round(time.perf_counter() - start, 3)
        rep.records.append(rec)
        if crit.mandatory and not ok:
            failed.append(crit.id)
    rep.summary = {"pass": not failed, "failed": failed, "criteria": len(rep.records)}
    return rep
