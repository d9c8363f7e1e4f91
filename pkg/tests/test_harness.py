import json
import math

import pytest

from qexpand.errors import ConfigError, ExhaustedRejections, NotFound
from qexpand.harness import (
    FAIL,
    NO_CONVERGENCE,
    PASS,
    REJECTED,
    RunConfig,
    inversion_stress,
    rel_err,
    run,
    sample_params,
    sample_rng,
    sweep_identity,
    verify_identity,
)
from qexpand.harness.cli import main
from qexpand.harness.runner import resolve_ids
from qexpand.identities import EvalContext, Identity, ParamDomain, lookup
from qexpand.identities.domain import below
from qexpand.series import SumCtrl, exact


def _toy(constraint=None, rhs_offset=0.0):
    dom = ParamDomain({"x": "complex"}, constraints=(constraint,) if constraint else ())
    return Identity(
        "toy",
        "toy identity",
        dom,
        lambda p, ctx: (exact(p["x"] + 1), exact(p["x"] + 1 + rhs_offset)),
        dict(x=0.3, q=0.5),
    )


def test_rng_is_counter_based():
    a = sample_rng(7, "rogers_fine", 3).random(4)
    b = sample_rng(7, "rogers_fine", 3).random(4)
    assert (a == b).all()
    assert (sample_rng(7, "rogers_fine", 4).random(4) != a).all()
    assert (sample_rng(7, "q_gauss", 3).random(4) != a).all()
    assert (sample_rng(8, "rogers_fine", 3).random(4) != a).all()


def test_sample_independent_of_order():
    ident = lookup("gen_rogers_fine")
    later = sample_params(ident, 5, 9)
    for i in range(9):
        sample_params(ident, 5, i)
    assert sample_params(ident, 5, 9).assignment == later.assignment


def test_samples_satisfy_domain():
    ident = lookup("h_reciprocal")
    for i in range(30):
        s = sample_params(ident, 0, i)
        assert ident.domain.rejection(s.assignment) is None
        assert 0.2 <= abs(s.assignment["q"]) <= 0.8


def test_derived_parameters_filled():
    s = sample_params(lookup("pfaff_saalschutz_S"), 0, 0)
    assert s.assignment["n"] == s.assignment["N"] + s.assignment["i"]


def test_exhausted_rejections():
    ident = _toy(below(0, lambda p: 1, "never"))
    with pytest.raises(ExhaustedRejections):
        sample_params(ident, 0, 0, max_rejections=20)


def test_rel_err():
    assert rel_err(1.0, 1.0) == 0
    assert rel_err(0.0, 1e-3) == pytest.approx(1e-3)
    assert rel_err(100.0, 101.0) == pytest.approx(1 / 101)


def test_verify_statuses():
    assert verify_identity(_toy(), dict(x=0.2, q=0.5)).status == PASS
    bad = verify_identity(_toy(rhs_offset=1e-3), dict(x=0.2, q=0.5))
    assert bad.status == FAIL and bad.rel_err > 1e-4
    ctx = EvalContext(ctrl=SumCtrl(max_terms=300))
    slow = verify_identity(lookup("rogers_fine"), dict(a=0.3, c=0.2, x=0.999, q=0.999), ctx)
    assert slow.status == NO_CONVERGENCE and math.isnan(slow.rel_err)
    pole = verify_identity(lookup("rogers_fine"), dict(a=2.0, c=0.2, x=0.4, q=0.5))
    assert pole.status == REJECTED


def test_verify_explicit_tolerance():
    r = verify_identity(_toy(rhs_offset=1e-6), dict(x=0.2, q=0.5), tol=1e-4)
    assert r.status == PASS


@pytest.mark.parametrize(
    "kwargs",
    [dict(samples=0), dict(tol=0.0), dict(seed=-1), dict(max_terms=0), dict(precision="quad"), dict(workers=0)],
)
def test_config_validation(kwargs):
    with pytest.raises(ConfigError):
        RunConfig(**kwargs)


def test_effective_tolerance():
    assert RunConfig().effective_tol == 1e-8
    assert RunConfig(precision="extended").effective_tol == 1e-20
    assert RunConfig(tol=1e-5).effective_tol == 1e-5


def test_unknown_id_fails_before_work():
    with pytest.raises(NotFound):
        resolve_ids(RunConfig(identity_ids=("rogers_fine", "nope")))
    with pytest.raises(NotFound):
        run(RunConfig(identity_ids=("nope",)))


def test_sweep_identity_counts():
    rep = sweep_identity("q_gauss", RunConfig(samples=5))
    assert rep.accepted == 5
    assert rep.passed(5)
    assert rep.counts()[PASS] == 5
    assert [i for i, _ in rep.results] == sorted(i for i, _ in rep.results)


def test_report_structure(tmp_path):
    path = tmp_path / "r.json"
    report = run(RunConfig(identity_ids=("q_gauss", "rogers_fine"), samples=3, report_path=str(path)))
    data = json.loads(path.read_text())
    assert set(data) == {"config", "results", "summary"}
    assert data["config"]["samples"] == 3 and data["config"]["tol"] == 1e-8
    assert [r["id"] for r in data["results"]] == ["q_gauss", "rogers_fine"]
    first = data["results"][0]
    assert first["passed"] and first["accepted_samples"] == 3
    assert set(first["samples"][0]["assignment"]) == {"c", "d", "x", "q"}
    assert data["summary"]["all_passed"] is True
    assert report.all_passed


def test_report_deterministic_across_workers(tmp_path):
    ids = ("rogers_fine", "q_gauss", "carlitz_gen")
    one = run(RunConfig(identity_ids=ids, samples=4, seed=11, workers=1)).to_json()
    two = run(RunConfig(identity_ids=ids, samples=4, seed=11, workers=3)).to_json()
    assert one == two
    assert run(RunConfig(identity_ids=ids, samples=4, seed=12)).to_json() != one


def test_extended_report_keeps_digits():
    data = run(RunConfig(identity_ids=("q_gauss",), samples=1, precision="extended")).to_dict()
    lhs = data["results"][0]["samples"][0]["lhs"]["re"]
    assert len(lhs.lstrip("-").replace(".", "").lstrip("0")) > 30


def test_inversion_stress():
    rep = inversion_stress("linear", 8, 3, seed=1)
    assert rep.passed and len(rep.deviations) == 3
    assert inversion_stress("linear", 8, 3, seed=1).deviations == rep.deviations


def test_cli_list(capsys):
    assert main(["list", "--json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert any(r["id"] == "aw_gf" for r in rows)


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["verify", "--id", "q_gauss", "--samples", "2", "--quiet"]) == 0
    assert main(["verify", "--id", "q_gauss", "--samples", "2", "--tol", "1e-300", "--quiet"]) == 1
    assert main(["verify", "--id", "unknown", "--samples", "2"]) == 2
    assert main(["sweep", "--samples", "0"]) == 2
    assert main(["verify", "--id", "q_gauss", "--report", str(tmp_path / "no" / "dir.json")]) == 2
    assert main(["inversion", "--size", "6", "--trials", "2"]) == 0
    assert main(["inversion", "--trials", "0"]) == 2
    capsys.readouterr()


def test_cli_rejects_bad_choice():
    with pytest.raises(SystemExit):
        main(["sweep", "--precision", "quad"])
