import json
import random

from coble import experiments as ex
from coble.curve import sample_vr_config
from coble.fields import PrimeField
from coble.restriction import build_restriction, plant_collision
from coble.suite import Criterion, default_criteria, run_all
from coble.weyl import parse_word, word_matrix


def spec(command, **kw):
    return ex.ExperimentSpec(command, **kw)


def test_derived_streams():
    a = ex.derive_rng(1, "trial", 3).random()
    assert a == ex.derive_rng(1, "trial", 3).random()
    assert a != ex.derive_rng(1, "trial", 4).random()
    assert a != ex.derive_rng(2, "trial", 3).random()


def test_report_lines_end_with_summary():
    rep = ex.relations_report(6)
    lines = list(rep.lines())
    assert json.loads(lines[0])["kind"] == "spec"
    last = json.loads(lines[-1])
    assert last["kind"] == "summary" and last["pass"] is True


def test_injectivity_is_deterministic_and_skips_identity():
    s = spec("coble injectivity", r=8, prime=10007, seed=3, trials=15, max_len=4)
    first, second = ex.injectivity_experiment(s), ex.injectivity_experiment(s)
    assert list(first.lines()) == list(second.lines())
    assert first.ok and first.summary["trials"] == 15
    for rec in first.records:
        assert not word_matrix(parse_word(rec["word"]), 8).is_identity()


def test_injectivity_r9():
    rep = ex.injectivity_experiment(spec("coble injectivity", r=9, prime=10007, seed=0, trials=5, max_len=5))
    assert rep.ok


def test_cremona_moves_configurations():
    rep = ex.coble_apply_report(8, "s", 10007, 0)
    assert rep.ok and rep.summary["pgl_equivalent_to_input"] is False
    rep = ex.coble_apply_report(8, "s s", 10007, 0)
    assert rep.summary["pgl_equivalent_to_input"] is True


def test_sanity_report():
    rep = ex.coble_sanity_report(8, 10007, seed=1, pairs=10)
    assert rep.ok and rep.summary["relation_failures"] == 0


def test_order_report_cap():
    assert ex.order_report(5).summary["order"] == 720
    rep = ex.order_report(6, cap=100)
    assert not rep.ok and "error" in rep.summary


def test_roots_report_refuses_r8():
    assert ex.roots_report(7).summary["count"] == 126
    assert not ex.roots_report(8).ok


def test_classify_and_q_reports():
    assert ex.classify_report(9).ok
    rep = ex.q_identity_report(7, trials=50, seed=0)
    assert rep.ok and rep.records[2]["failures"] == []


def test_vr_invariance_small():
    rep = ex.vr_invariance_experiment(spec("curve vr-invariance", r=9, prime=10007, seed=0, trials=2))
    assert rep.ok
    assert rep.summary["negative_control_dimension"] == 1


def test_eighth_point_small():
    rep = ex.eighth_point_experiment(spec("curve eighth-point", r=8, prime=10007, seed=5, configs=2))
    assert rep.ok


def test_tr_test_small_prime_reports_rationale():
    rep = ex.tr_test_experiment(spec("curve tr-test", r=8, prime=1_000_000_007, seed=1, bound=1, configs=1))
    assert rep.ok
    assert rep.summary["planted_collision_detected"] is True
    assert "probability" in rep.summary["rationale"]


def test_replay_planted_witness():
    f = PrimeField(1_000_000_007)
    rng = random.Random(30)
    res = build_restriction(sample_vr_config(8, f, rng), rng)
    planted, d = plant_collision(res)
    witness = {"experiment": "curve-tr-test", "config": planted.to_json(), "divisor": d.to_json()}
    assert ex.replay(json.loads(json.dumps(witness)))
    fake = dict(witness, config=res.config.to_json())
    assert not ex.replay(fake)


def test_replay_fake_injectivity_witness():
    c = ex.sample_config(8, PrimeField(10007), random.Random(0))
    assert not ex.replay({"experiment": "coble-injectivity", "word": "s", "config": c.to_json()})
    # the identity word is never a violation
    assert not ex.replay({"experiment": "coble-injectivity", "word": "s s", "config": c.to_json()})


def test_run_all_empty():
    rep = run_all([])
    assert rep.ok and rep.records == []


def test_run_all_negative_control():
    crits = [c for c in default_criteria(corrupt=True) if c.id == "1"]
    rep = run_all(crits)
    assert not rep.ok and rep.summary["failed"] == ["1"]
    assert rep.records[0]["detail"]["by_rank"]["8"] is False


def test_run_all_crash_is_a_failure():
    def boom():
        raise RuntimeError("broken")

    rep = run_all([Criterion("x", "crash", boom), Criterion("y", "fine", lambda: (True, {}))])
    assert rep.summary["failed"] == ["x"]
    assert "broken" in rep.records[0]["detail"]["error"]


def test_optional_criterion_does_not_fail_the_suite():
    rep = run_all([Criterion("z", "optional", lambda: (False, {}), mandatory=False)])
    assert rep.ok
