"""Seeded experiment drivers and JSON-lines reports.

Every randomised experiment derives an independent stream per trial from
(seed, label, index), so reports are reproducible and order-stable.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import asdict, dataclass, field
from typing import Iterator

import numpy as np

from . import classifier, intersection, lattice, weyl
from .config import (
    Config,
    DegenerateFrame,
    Indeterminacy,
    apply_generator,
    apply_word,
    pgl_equivalent,
    random_config,
)
from .curve import NonGeneric, RetryBudgetExhausted, eighth_base_point, quadrics_through, sample_vr_config
from .cubic import DegenerateProjection, SingularPoint
from .fields import PrimeField
from .lattice import LatticeVector
from .restriction import build_restriction, plant_collision, scan_box
from .weyl import S, Tau, format_word, generators, parse_word, word_matrix

RESAMPLE_LIMIT = 20
SAMPLING_ERRORS = (NonGeneric, RetryBudgetExhausted, DegenerateProjection, SingularPoint, DegenerateFrame)


def derive_rng(seed: int, *keys) -> random.Random:
    words = [seed & 0xFFFFFFFFFFFFFFFF]
    for k in keys:
        words.append(k if isinstance(k, int) else int.from_bytes(str(k).encode(), "little") % 2**63)
    state = np.random.SeedSequence(words).generate_state(4, dtype=np.uint64)
    return random.Random(int.from_bytes(state.tobytes(), "little"))


@dataclass
class ExperimentSpec:
    command: str
    r: int | None = None
    prime: int | None = None
    seed: int = 0
    trials: int | None = None
    max_len: int | None = None
    bound: int | None = None
    configs: int | None = None


@dataclass
class Report:
    spec: ExperimentSpec
    records: list[dict] = field(default_factory=list)
    violations: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return bool(self.summary.get("pass", False))

    def lines(self) -> Iterator[str]:
        yield json.dumps({"kind": "spec", **asdict(self.spec)}, sort_keys=True)
        for rec in self.records:
            yield json.dumps(rec, sort_keys=True)
        for v in self.violations:
            yield json.dumps({"kind": "violation", **v}, sort_keys=True)
        yield json.dumps({"kind": "summary", **self.summary}, sort_keys=True)


def _field(prime: int) -> PrimeField:
    return PrimeField(prime)


# -- lattice and Weyl group ---------------------------------------------------


def relations_report(r: int) -> Report:
    rep = Report(ExperimentSpec("weyl relations", r=r))
    ok = weyl.verify_relations(r)
    for g, h in itertools.combinations(generators(r), 2):
        rep.records.append({"kind": "pair", "g": str(g), "h": str(h), "order": weyl.coxeter_order(g, h, r)})
    rep.summary = {"pass": ok, "r": r, "generators": len(generators(r))}
    return rep


def order_report(r: int, cap: int = 5_000_000, mem_gb: float = 2.0) -> Report:
    rep = Report(ExperimentSpec("weyl order", r=r))
    try:
        order = weyl.enumerate_group(r, cap=cap, mem_gb=mem_gb)
        rep.summary = {"pass": True, "r": r, "order": order}
    except (weyl.CapExceeded, ValueError) as exc:
        rep.summary = {"pass": False, "r": r, "error": str(exc)}
    return rep


def roots_report(r: int, bound: int = 6) -> Report:
    rep = Report(ExperimentSpec("weyl roots", r=r, bound=bound))
    try:
        roots = sorted(lattice.enumerate_roots(r, bound), key=lambda v: v.coeffs)
    except (lattice.InfiniteRootSystem, RuntimeError) as exc:
        rep.summary = {"pass": False, "r": r, "error": str(exc)}
        return rep
    for v in roots:
        rep.records.append({"kind": "root", "root": v.to_json()})
    rep.summary = {"pass": True, "r": r, "bound": bound, "saturated": True, "count": len(roots)}
    return rep


def classify_report(r: int) -> Report:
    rep = Report(ExperimentSpec("lattice classify", r=r))
    sols = classifier.classify(r)
    rep.records = [{"kind": "candidate", **s.to_json()} for s in sols]
    accepted = [s for s in sols if s.verdict == classifier.Verdict.ACCEPTED]
    identity = len(accepted) == 1 and accepted[0].sigma == 1 and accepted[0].alpha == 0 and not any(accepted[0].L)
    rep.summary = {
        "pass": identity and classifier.filter_order_independent(r),
        "r": r,
        "accepted": [s.to_json() for s in accepted],
        "lattice_shadow_of": "triviality of constrained pseudoautomorphisms",
    }
    return rep


def q_identity_report(r: int, trials: int = 1000, seed: int = 0) -> Report:
    rep = Report(ExperimentSpec("verify q-identity", r=r, trials=trials, seed=seed))
    basis = [lattice.h(r, i) for i in range(r + 1)]
    spanning = list(basis)
    spanning += [a + b for a, b in itertools.combinations_with_replacement(basis, 2)]
    spanning += [a + b + c for a, b, c in itertools.combinations_with_replacement(basis, 3)]
    span_fail = [d.to_json() for d in spanning if not intersection.q_equals_triple(d)]
    rng = derive_rng(seed, "q-identity", r)
    randoms = [LatticeVector(tuple(rng.randint(-20, 20) for _ in range(r + 1))) for _ in range(trials)]
    rand_fail = [d.to_json() for d in randoms if not intersection.q_equals_triple(d)]
    cubes = {n: intersection.anticanonical_cube(n) for n in range(0, 13)}
    cube_fail = [n for n, v in cubes.items() if v != 64 - 8 * n]
    rep.records.append({"kind": "spanning-set", "checked": len(spanning), "failures": span_fail})
    rep.records.append({"kind": "random", "checked": len(randoms), "failures": rand_fail})
    rep.records.append({"kind": "anticanonical-cube", "values": {str(n): v for n, v in cubes.items()},
                        "failures": cube_fail})
    for d in span_fail + rand_fail:
        rep.violations.append({"experiment": "q-identity", "divisor": d})
    rep.summary = {"pass": not (span_fail or rand_fail or cube_fail), "r": r,
                   "lattice_shadow_of": "pseudoautomorphisms preserve q"}
    return rep


# -- Coble action ---------------------------------------------------------------


def sample_config(r: int, field: PrimeField, rng: random.Random) -> Config:
    """V_r configuration for r >= 9, a random general one otherwise."""
    if r >= 9:
        return sample_vr_config(r, field, rng)
    return random_config(r, field, rng)


def random_word(rng: random.Random, r: int, max_len: int) -> tuple:
    gens = generators(r)
    return tuple(rng.choice(gens) for _ in range(rng.randint(1, max_len)))


def coble_apply_report(r: int, word: str, prime: int, seed: int, config: Config | None = None) -> Report:
    rep = Report(ExperimentSpec("coble apply", r=r, prime=prime, seed=seed))
    w = parse_word(word)
    for g in w:
        g.check(r)
    c = config if config is not None else sample_config(r, _field(prime), derive_rng(seed, "apply"))
    try:
        out = apply_word(w, c)
    except Indeterminacy as exc:
        rep.summary = {"pass": False, "word": format_word(w), "error": str(exc), "letter": exc.letter_index}
        return rep
    rep.records.append({"kind": "input", "config": c.to_json()})
    rep.records.append({"kind": "output", "config": out.to_json()})
    try:
        fixed = pgl_equivalent(out, c)
    except DegenerateFrame:
        fixed = None
    rep.summary = {"pass": True, "word": format_word(w), "pgl_equivalent_to_input": fixed}
    return rep


def coble_sanity_report(r: int = 8, prime: int = 10007, seed: int = 0, pairs: int = 100,
                        max_len: int = 6) -> Report:
    """Relations of W_{3,r} hold for the Coble action mod PGL, and words compose."""
    rep = Report(ExperimentSpec("coble sanity", r=r, prime=prime, seed=seed, trials=pairs, max_len=max_len))
    f = _field(prime)
    checks: list[tuple[str, tuple, tuple]] = [("s^2", (S, S), ())]
    checks.append(("(s t4)^3", (S, Tau(4)) * 3, ()))
    for i in (1, 2, 3):
        checks.append((f"s t{i} = t{i} s", (S, Tau(i)), (Tau(i), S)))
    for i in range(5, r):
        checks.append((f"s t{i} = t{i} s", (S, Tau(i)), (Tau(i), S)))
    failures = 0
    rng = derive_rng(seed, "relations")
    for name, lhs, rhs in checks:
        ok, tries = False, 0
        for tries in range(1, RESAMPLE_LIMIT + 1):
            c = sample_config(r, f, rng)
            try:
                ok = pgl_equivalent(apply_word(lhs, c), apply_word(rhs, c))
            except (Indeterminacy, DegenerateFrame):
                continue
            break
        failures += not ok
        rep.records.append({"kind": "relation", "relation": name, "pass": ok, "samples": tries})
        if not ok:
            rep.violations.append({"experiment": "coble-relation", "relation": name, "config": c.to_json()})
    hom_fail = hom_indet = 0
    for t in range(pairs):
        trng = derive_rng(seed, "homomorphism", t)
        u, v = random_word(trng, r, max_len), random_word(trng, r, max_len)
        for _ in range(RESAMPLE_LIMIT):
            c = sample_config(r, f, trng)
            try:
                ok = pgl_equivalent(apply_word(u + v, c), apply_word(u, apply_word(v, c)))
            except (Indeterminacy, DegenerateFrame):
                continue
            break
        else:
            hom_indet += 1
            continue
        if not ok:
            hom_fail += 1
            rep.violations.append({"experiment": "coble-homomorphism", "u": format_word(u), "v": format_word(v),
                                   "config": c.to_json()})
    rep.records.append({"kind": "homomorphism", "pairs": pairs, "failures": hom_fail, "indeterminate": hom_indet})
    rep.summary = {"pass": failures == 0 and hom_fail == 0, "r": r, "relation_failures": failures,
                   "homomorphism_failures": hom_fail}
    return rep


def injectivity_experiment(spec: ExperimentSpec) -> Report:
    """Nonidentity words must move sampled configurations (mod PGL)."""
    r, prime, seed = spec.r, spec.prime, spec.seed
    if r is None or r < 8:
        raise ValueError("injectivity experiment needs r >= 8")
    f = _field(prime)
    rep = Report(spec)
    word_rng = derive_rng(seed, "words")
    seen: set = set()
    skipped_identity = skipped_duplicate = indeterminate = trial = 0
    while trial < spec.trials:
        w = random_word(word_rng, r, spec.max_len)
        m = word_matrix(w, r)
        if m.is_identity():
            skipped_identity += 1
            continue
        if m.rows in seen:
            skipped_duplicate += 1
            if skipped_duplicate > 100 * spec.trials:
                break
            continue
        seen.add(m.rows)
        rng = derive_rng(seed, "trial", trial)
        record = {"kind": "trial", "trial": trial, "word": format_word(w)}
        for attempt in range(1, RESAMPLE_LIMIT + 1):
            try:
                c = sample_config(r, f, rng)
                moved = not pgl_equivalent(apply_word(w, c), c)
            except (Indeterminacy, DegenerateFrame, NonGeneric, RetryBudgetExhausted):
                continue
            record.update(status="moved" if moved else "violation", samples=attempt)
            if not moved:
                rep.violations.append({"experiment": "coble-injectivity", "trial": trial,
                                       "word": format_word(w), "config": c.to_json()})
            break
        else:
            indeterminate += 1
            record.update(status="indeterminate", samples=RESAMPLE_LIMIT)
        rep.records.append(record)
        trial += 1
    frac = indeterminate / max(trial, 1)
    rep.summary = {
        "pass": not rep.violations and frac <= 0.05 and trial == spec.trials,
        "r": r,
        "trials": trial,
        "violations": len(rep.violations),
        "indeterminate": indeterminate,
        "skipped_identity_words": skipped_identity,
        "skipped_duplicate_words": skipped_duplicate,
    }
    return rep


# -- curve experiments ----------------------------------------------------------


def _collision_note(r: int, bound: int, prime: int) -> str:
    box = (2 * bound + 1) ** (r + 1)
    return (f"Pic^0(C)(F_p) has about p = {prime} elements; a fixed nonzero D is principal with probability "
            f"~1/p, so the chance of any collision in a box of {box} divisors is at most ~{box / prime:.2e} "
            f"(pairwise bound (#box)^2/p = {box * box / prime:.2e}). Injectivity of tr for very general points is "
            f"not reproducible over a finite field; this is a property-based substitute.")


def tr_test_experiment(spec: ExperimentSpec, plant: bool = True) -> Report:
    """tr(D) != 0 for every nonzero D in the box, on several V_r configurations."""
    r, prime, seed, bound = spec.r, spec.prime, spec.seed, spec.bound
    if r is None or r < 8:
        raise ValueError("tr test needs r >= 8")
    f = _field(prime)
    rep = Report(spec)
    totals = {"checked": 0, "even": 0, "odd": 0}
    first = None
    for i in range(spec.configs):
        rng = derive_rng(seed, "tr-config", i)
        for attempt in range(1, RESAMPLE_LIMIT + 1):
            try:
                c = sample_vr_config(r, f, rng)
                res = build_restriction(c, rng)
            except SAMPLING_ERRORS:
                continue
            break
        else:
            rep.records.append({"kind": "config", "index": i, "status": "indeterminate"})
            continue
        first = first or (res, i)
        scan = scan_box(res, bound)
        totals["checked"] += scan.checked
        totals["even"] += scan.checked_even
        totals["odd"] += scan.checked_odd
        rep.records.append({"kind": "config", "index": i, "samples": attempt, "checked": scan.checked,
                            "checked_even_h0": scan.checked_even, "checked_odd_h0": scan.checked_odd,
                            "violations": len(scan.violations)})
        for d in scan.violations:
            rep.violations.append({"experiment": "curve-tr-test", "config_index": i, "divisor": d.to_json(),
                                   "config": c.to_json()})
    control = None
    if plant and first is not None:
        res, i = first
        crng = derive_rng(seed, "tr-planted")
        try:
            planted, d = plant_collision(res)
            scan = scan_box(build_restriction(planted, crng), bound)
            detected = d in scan.violations
            control = {"kind": "planted-control", "divisor": d.to_json(), "detected": detected,
                       "violations_found": len(scan.violations), "config": planted.to_json()}
        except SAMPLING_ERRORS as exc:
            control = {"kind": "planted-control", "detected": False, "error": str(exc)}
        rep.records.append(control)
    rep.summary = {
        "pass": not rep.violations and (control is None or control["detected"]),
        "r": r,
        "prime": prime,
        "configs": spec.configs,
        "divisors_checked": totals["checked"],
        "checked_even_h0": totals["even"],
        "checked_odd_h0": totals["odd"],
        "violations": len(rep.violations),
        "planted_collision_detected": None if control is None else control["detected"],
        "rationale": _collision_note(r, bound, prime),
    }
    return rep


def eighth_point_experiment(spec: ExperimentSpec) -> Report:
    """2H - (seven points) - (eighth base point of their net) is principal on C."""
    prime, seed = spec.prime, spec.seed
    f = _field(prime)
    rep = Report(spec)
    failures = 0
    for i in range(spec.configs):
        rng = derive_rng(seed, "eighth", i)
        for attempt in range(1, RESAMPLE_LIMIT + 1):
            try:
                c = sample_vr_config(8, f, rng)
                res = build_restriction(c, rng, screen_points=50)
                q8 = eighth_base_point(c.points[:7], f, res.model.pencil)
                q8_alt = eighth_base_point(c.points[:7], f, res.model.pencil, rng=rng)
            except SAMPLING_ERRORS:
                continue
            break
        else:
            rep.records.append({"kind": "config", "index": i, "status": "indeterminate"})
            failures += 1
            continue
        d = LatticeVector((2,) + (-1,) * 7 + (0,))
        cls = res.tr_class(d)
        m = res.model
        total = m.add(cls.point, m.neg(m.forward(q8)))
        ok = cls.degree - 1 == 0 and total == m.origin and q8 == q8_alt
        failures += not ok
        rep.records.append({"kind": "config", "index": i, "samples": attempt, "pass": ok,
                            "eighth_point": [str(int(x)) for x in q8.coords], "basis_independent": q8 == q8_alt})
        if not ok:
            rep.violations.append({"experiment": "eighth-point", "config": c.to_json()})
    rep.summary = {"pass": failures == 0, "configs": spec.configs, "failures": failures, "prime": prime}
    return rep


def vr_invariance_experiment(spec: ExperimentSpec) -> Report:
    """Each generator keeps V_r configurations on a pencil of quadrics."""
    r, prime, seed = spec.r, spec.prime, spec.seed
    if r is None or r < 9:
        raise ValueError("V_r invariance needs r >= 9")
    f = _field(prime)
    rep = Report(spec)
    bad = indeterminate = 0
    for g in generators(r):
        dims = []
        for t in range(spec.trials):
            rng = derive_rng(seed, "vr", str(g), t)
            for _ in range(RESAMPLE_LIMIT):
                c = sample_vr_config(r, f, rng)
                try:
                    img = apply_generator(g, c)
                except (Indeterminacy, DegenerateFrame):
                    continue
                break
            else:
                indeterminate += 1
                continue
            dim = len(quadrics_through(img.points, f))
            dims.append(dim)
            if dim < 2:
                bad += 1
                rep.violations.append({"experiment": "vr-invariance", "generator": str(g), "trial": t,
                                       "config": c.to_json(), "dimension": dim})
        rep.records.append({"kind": "generator", "generator": str(g), "trials": len(dims),
                            "min_dimension": min(dims) if dims else None})
    control = random_config(r, f, derive_rng(seed, "vr-control"))
    control_dim = len(quadrics_through(control.points, f))
    rep.records.append({"kind": "negative-control", "dimension": control_dim, "config": control.to_json()})
    # r general points impose independent conditions on the 10 quadric coefficients
    rep.summary = {"pass": bad == 0 and control_dim == max(10 - r, 0) and control_dim < 2,
                   "r": r, "violations": bad, "indeterminate": indeterminate,
                   "negative_control_dimension": control_dim}
    return rep


# -- replay -----------------------------------------------------------------------


def replay(violation: dict, r: int | None = None) -> bool:
    """Re-check a recorded violation from its witness alone; True if it still holds."""
    kind = violation.get("experiment")
    if kind == "coble-injectivity":
        c = Config.from_json(violation["config"])
        w = parse_word(violation["word"])
        return not word_matrix(w, c.r).is_identity() and pgl_equivalent(apply_word(w, c), c)
    if kind == "curve-tr-test":
        c = Config.from_json(violation["config"])
        res = build_restriction(c, derive_rng(0, "replay"), screen_points=20)
        return res.is_principal(LatticeVector.from_json(violation["divisor"]))
    if kind == "vr-invariance":
        c = Config.from_json(violation["config"])
        img = apply_generator(weyl.Generator.parse(violation["generator"]), c)
        return len(quadrics_through(img.points, c.field)) < 2
    if kind == "coble-homomorphism":
        c = Config.from_json(violation["config"])
        u, v = parse_word(violation["u"]), parse_word(violation["v"])
        return not pgl_equivalent(apply_word(u + v, c), apply_word(u, apply_word(v, c)))
    raise ValueError(f"no replay for experiment {kind!r}")
