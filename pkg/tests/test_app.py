import json
from fractions import Fraction

import pytest

from holodense import app
from holodense.app import EXIT_ERROR, EXIT_GUARD, EXIT_OK, main
from holodense.config import GUARD_ENV_VAR


@pytest.fixture(autouse=True)
def no_guard_override(monkeypatch):
    monkeypatch.delenv(GUARD_ENV_VAR, raising=False)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_density_rational(capsys):
    code, out = run(capsys, "density", "--space", "rational", "--q", "2", "--m", "2")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data['exact'] == "1/2"
    assert set(data) >= {'exact', 'decimal', 'truncated_t', 'interval'}


def test_density_elliptic_and_generic(capsys):
    code, out = run(capsys, "density", "--space", "elliptic", "--curve", "5,1,1", "--m", "2", "--t", "4")
    assert code == EXIT_OK and json.loads(out)['exact'] == "100/141"
    code, out = run(capsys, "density", "--space", "generic", "--q", "2", "--lpoly", "1",
                    "--removed", "1,1", "--m", "2")
    assert code == EXIT_OK and json.loads(out)['exact'] == "2/3"
    code, out = run(capsys, "density", "--space", "finite", "--q", "3", "--degrees", "2", "--m", "2")
    assert code == EXIT_OK and json.loads(out)['exact'] == "80/81"


def test_exhaustive_experiment_csv(capsys):
    code, out = run(capsys, "experiment", "--space", "rational", "--q", "2", "--n", "2", "--m", "2")
    assert code == EXIT_OK
    assert out.splitlines() == [
        "space,q,n,m,mode,total,coprime,empirical,theoretical,abs_err,ci_low,ci_high,seed",
        "rational,2,2,2,exhaustive,64,33,33/64,1/2,1/64,,,",
    ]


def test_truncated_experiment_json(capsys):
    code, out = run(capsys, "experiment", "--space", "elliptic", "--curve", "5,1,1", "--n", "2",
                    "--m", "2", "--mode", "truncated", "--t", "1", "--out", "json")
    assert code == EXIT_OK
    report, = json.loads(out)
    assert report['empirical'] == report['theoretical'] == "24/25"


def test_monte_carlo_output_ignores_worker_count(capsys):
    args = ["experiment", "--space", "rational", "--q", "2", "--n", "6", "--m", "2",
            "--mode", "mc", "--trials", "2500", "--seed", "11"]
    code, serial = run(capsys, *args, "--workers", "1")
    assert code == EXIT_OK
    code, parallel = run(capsys, *args, "--workers", "4")
    assert code == EXIT_OK
    assert serial == parallel
    assert serial.splitlines()[1].startswith("rational,2,6,2,monte_carlo,2500,")


def test_scan_json_carries_a_summary(capsys):
    code, out = run(capsys, "scan", "--space", "rational", "--q", "2", "--n-min", "0", "--n-max", "3",
                    "--m", "2", "--out", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert [r['n'] for r in data['reports']] == [0, 1, 2, 3]
    assert set(data['summary']) == {'sup', 'inf', 'final_deviation', 'initial_deviation'}


def test_count_and_places(capsys):
    code, out = run(capsys, "count", "--curve", "5,1,1", "--dmax", "3")
    assert code == EXIT_OK
    assert out.splitlines()[1:] == ["1,9,-3,8,9", "2,27,-1,9,27", "3,108,18,33,108"]
    code, out = run(capsys, "places", "--curve", "5,1,1", "--dmax", "1")
    assert code == EXIT_OK
    assert len(out.splitlines()) == 9


def test_crosscheck(capsys):
    code, out = run(capsys, "crosscheck", "--space", "rational", "--q", "3", "--n", "3", "--m", "2",
                    "--trials", "200")
    assert code == EXIT_OK and json.loads(out)['agree'] is True
    code, out = run(capsys, "crosscheck", "--space", "elliptic", "--curve", "5,1,1", "--n", "3",
                    "--m", "2", "--trials", "50")
    assert code == EXIT_OK and json.loads(out)['trials'] == 50


def test_guard_refusal_exits_with_two(capsys, monkeypatch):
    monkeypatch.setenv(GUARD_ENV_VAR, "10")
    code, out = run(capsys, "experiment", "--space", "rational", "--q", "2", "--n", "2", "--m", "2")
    assert code == EXIT_GUARD
    assert out == ""


@pytest.mark.parametrize("argv", [
    ["density", "--space", "elliptic", "--curve", "5,0,0", "--m", "2"],
    ["density", "--space", "rational", "--q", "6", "--m", "2"],
    ["density", "--space", "rational", "--q", "2", "--m", "1"],
    ["density", "--space", "elliptic", "--m", "2"],
    ["experiment", "--space", "rational", "--q", "2", "--n", "2", "--m", "2", "--workers", "0"],
    ["density", "--m", "2", "--space", "hyperbolic"],
    ["density"],
    [],
])
def test_errors_exit_with_one(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == EXIT_ERROR
    assert out == ""


def test_density_at_the_configured_truncation(capsys):
    code, out = run(capsys, "density", "--space", "elliptic", "--curve", "5,1,1", "--m", "2")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data['exact'] == "100/141"
    assert data['truncated_t'] == 6
    lower, upper = (Fraction(v) for v in data['interval'])
    assert lower <= Fraction(100, 141) <= upper


def test_unexpected_errors_exit_with_one(capsys, monkeypatch):
    def broken(args, config, log_capture):
        raise RuntimeError("boom")

    monkeypatch.setitem(app._COMMANDS, 'density', broken)
    code, out = run(capsys, "density", "--space", "rational", "--q", "2", "--m", "2")
    assert code == EXIT_ERROR
    assert out == ""


def test_monte_carlo_beyond_the_enumeration_guard(capsys):
    code, out = run(capsys, "experiment", "--space", "elliptic", "--curve", "5,1,1", "--n", "10", "--m", "2",
                    "--mode", "mc", "--trials", "300", "--seed", "42")
    assert code == EXIT_OK
    assert out.splitlines()[1].startswith("elliptic,5,10,2,monte_carlo,300,")


def test_crosscheck_scan_is_opt_in(capsys):
    args = ["crosscheck", "--space", "elliptic", "--curve", "5,1,1", "--n", "3", "--m", "2", "--trials", "30"]
    code, out = run(capsys, *args)
    assert code == EXIT_OK and json.loads(out)['oracles'] == ['place_norm', 'module']
    code, out = run(capsys, *args, "--scan")
    assert code == EXIT_OK and json.loads(out)['oracles'] == ['place_norm', 'place_scan', 'module']


def test_coprime_polynomials(capsys):
    code, out = run(capsys, "coprime", "--q", "2", "--polys", "0,1,1", "1,0,1")
    assert code == EXIT_OK
    assert json.loads(out) == {'q': 2, 'polys': ["0,1,1", "1,0,1"], 'gcd': "1,1", 'coprime': False}
    code, out = run(capsys, "coprime", "--q", "5", "--polys", "1,1,0,1", "0,1")
    assert code == EXIT_OK
    assert json.loads(out)['gcd'] == "1" and json.loads(out)['coprime'] is True


@pytest.mark.parametrize("argv", [
    ["coprime", "--q", "4", "--polys", "1,1", "0,1"],
    ["coprime", "--q", "5", "--polys", "1,1"],
    ["coprime", "--q", "5", "--polys", "1;1", "0,1"],
])
def test_coprime_rejects_bad_input(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == EXIT_ERROR and out == ""
