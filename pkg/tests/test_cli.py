import json
import subprocess
import sys

import pytest

from kslab.cli import main


def run(argv, capsys):
    status = main(argv)
    out = capsys.readouterr()
    return status, out.out, out.err


def test_verify_json(capsys):
    status, out, _ = run(["verify", "--model", "mv:r=2", "--order", "20", "--jmax", "4"], capsys)
    assert status == 0
    reports = json.loads(out)
    assert {r["check"] for r in reports} == {"annihilation", "commutator", "ladder", "recursion"}
    assert all(r["status"] == "pass" for r in reports)


def test_verify_with_w_constraints_tsv(capsys):
    status, out, _ = run(["verify", "--model", "conii:a=1", "--order", "12", "--jmax", "3", "--w-constraints",
                          "--kmax", "1", "--lmax", "1", "--format", "tsv"], capsys)
    assert status == 0
    assert out.splitlines()[0].startswith("check\tmodel\tstatus")
    assert any(line.startswith("w_constraints") for line in out.splitlines())


def test_output_is_deterministic(capsys):
    a = run(["verify", "--model", "coni:a=0", "--order", "10", "--jmax", "3"], capsys)[1]
    b = run(["verify", "--model", "coni:a=0", "--order", "10", "--jmax", "3"], capsys)[1]
    assert a == b


def test_tau_tsv(capsys):
    status, out, _ = run(["tau", "--model", "hurwitz", "--dmax", "5", "--format", "tsv"], capsys)
    assert status == 0
    rows = out.splitlines()
    assert rows[0] == "grade\tpartition\tcoefficient"
    # header plus one row per partition of size <= 5
    assert len(rows) == 1 + (1 + 1 + 2 + 3 + 5 + 7)


def test_tau_json_other_model(capsys):
    status, out, _ = run(["tau", "--model", "mv:r=0", "--dmax", "3"], capsys)
    assert status == 0
    assert json.loads(out)["terms"][0] == {"grade": 0, "partition": [], "coefficient": "1"}


def test_oracle_table(capsys):
    status, out, _ = run(["oracle", "--dmax", "3", "--bmax", "4"], capsys)
    assert status == 0
    assert out.rstrip().splitlines()[-1] == "ALL MATCH"


def test_wave_and_identities_and_bf(capsys):
    assert run(["wave", "--model", "hurwitz", "--order", "6"], capsys)[0] == 0
    assert run(["identities", "--xmax", "4", "--qmax", "10", "--xmax-a", "3", "--qmax-a", "8"], capsys)[0] == 0
    assert run(["bf-check", "--dmax", "3"], capsys)[0] == 0


@pytest.mark.parametrize(
    "argv",
    [["verify", "--model", "nope"], ["verify", "--order", "0"], ["bogus"], ["oracle", "--dmax", "7"], []],
)
def test_usage_errors(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_internal_error_maps_to_3(monkeypatch, capsys):
    from kslab import cli
    from kslab.boson import InconsistencyError

    def boom(cfg):
        raise InconsistencyError("forced")

    monkeypatch.setitem(cli.COMMANDS, "tau", boom)
    assert run(["tau"], capsys)[0] == 3


def test_failing_check_exits_1(monkeypatch, capsys):
    from kslab import cli
    from kslab.kacschwarz import CheckReport

    monkeypatch.setitem(cli.COMMANDS, "verify", lambda cfg: ([CheckReport("x", "m", {}, [(0, "1")])], ""))
    assert run(["verify"], capsys)[0] == 1


def test_module_entry_point(tmp_path):
    dest = tmp_path / "out.json"
    proc = subprocess.run(
        [sys.executable, "-m", "kslab", "verify", "--order", "8", "--jmax", "2", "-o", str(dest)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(dest.read_text())[0]["status"] == "pass"
