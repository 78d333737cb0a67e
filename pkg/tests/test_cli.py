import csv
import json
import math
import re

import pytest

from openrel.cli import (
    CHECK_CSV_HEADER,
    EXIT_CLAIM_FAILED,
    EXIT_CONFIG,
    EXIT_OK,
    FIGURE_CSV_HEADER,
    cmd_figures,
    main,
    simulate_log,
)
from openrel.config import ScenarioConfig, dumps_config, parse_config

E0, EP, EM = 5.0, math.sqrt(73.0), 3.0


def write_config(tmp_path, **sections):
    config = parse_config(sections) if sections else ScenarioConfig()
    path = tmp_path / "scenario.toml"
    path.write_text(dumps_config(config))
    return path


def dots(svg_text):
    return [(float(m[0]), float(m[1]), float(m[2])) for m in
            re.findall(r'data-e1="([^"]+)" data-e2="([^"]+)" data-weight="([^"]+)"', svg_text)]


class TestFigures:
    def test_default_dot_counts(self, tmp_path):
        assert main(["--out", str(tmp_path), "figures"]) == EXIT_OK
        alice = dots((tmp_path / "support_00_alice.svg").read_text())
        assert sorted((round(e1, 9), e2) for e1, e2, _ in alice) == [(EM, E0), (round(EP, 9), E0)]
        assert len(dots((tmp_path / "support_01_bob.svg").read_text())) == 2
        assert dots((tmp_path / "support_02_magician.svg").read_text()) == [(E0, E0, 1.0)]
        assert len(dots((tmp_path / "support_03_magician.svg").read_text())) == 4

    def test_svg_numbers_are_in_json(self, tmp_path):
        main(["--out", str(tmp_path), "figures"])
        data = json.loads((tmp_path / "figures.json").read_text())
        numbers = set()
        for rec in data["supports"]:
            numbers.update((rec["rapidity"], rec["tau"]))
            for p in rec["support"]:
                numbers.update((p["e1"], p["e2"], p["weight"]))
        for path in tmp_path.glob("support_*.svg"):
            for e1, e2, w in dots(path.read_text()):
                for value in (e1, e2, w):
                    assert any(abs(value - n) <= 1e-11 * max(1, abs(n)) for n in numbers)
        diagram = (tmp_path / "worldlines.svg").read_text()
        event_numbers = {c for coords in data["events"].values() for c in coords}
        for t, x in re.findall(r'data-t="([^"]+)" data-x="([^"]+)"', diagram):
            assert float(t) in event_numbers and float(x) in event_numbers
        rapidities = {o["rapidity"] for o in data["observers"]} | {
            s["rapidity"] for s in data["diagram_slices"]}
        for chi in re.findall(r'data-rapidity="([^"]+)"', diagram):
            assert float(chi) in rapidities

    def test_diagram_contents(self, tmp_path):
        main(["--out", str(tmp_path), "figures"])
        diagram = (tmp_path / "worldlines.svg").read_text()
        assert diagram.count('class="worldline"') == 3
        assert diagram.count('class="slice"') == 2
        assert diagram.count('class="cone"') == 4
        assert diagram.count('class="event"') == 2

    def test_csv(self, tmp_path):
        main(["--out", str(tmp_path), "--format", "csv", "figures"])
        rows = list(csv.reader((tmp_path / "figures.csv").open()))
        assert rows[0] == FIGURE_CSV_HEADER
        assert len(rows) == 1 + 2 + 2 + 1 + 4

    def test_artifacts(self, tmp_path):
        config = ScenarioConfig(output_dir=str(tmp_path))
        artifacts = cmd_figures(config)
        kinds = [a.kind for a in artifacts]
        assert kinds.count("worldline-diagram") == 1
        assert all(a.path.exists() for a in artifacts)

    def test_unwritable(self, tmp_path, caplog):
        blocker = tmp_path / "file"
        blocker.write_text("")
        assert main(["--out", str(blocker / "sub"), "figures"]) == EXIT_CONFIG
        assert str(blocker) in caplog.text


class TestCheck:
    def test_default(self, tmp_path, capsys):
        assert main(["--out", str(tmp_path), "check"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["quantum"]["function_exists"] is False
        assert report["classical"]["function_exists"] is False
        assert report["quantum"]["best_linear_residual"] > 0.5
        assert json.loads((tmp_path / "check.json").read_text()) == report

    def test_zero_kick(self, tmp_path, capsys, caplog):
        path = write_config(tmp_path, classical={"k": 0.0})
        assert main(["--config", str(path), "--out", str(tmp_path), "check"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["classical"]["function_exists"] is True
        assert report["classical"]["degenerate"] is True
        assert "degenerate" in caplog.text

    def test_timelike_measurements(self, tmp_path, caplog):
        path = write_config(tmp_path, quantum={"event_a": [0, 0, 0, 0], "event_b": [3, 1, 0, 0]})
        assert main(["--config", str(path), "--out", str(tmp_path), "check"]) == EXIT_CONFIG
        assert "spacelike" in caplog.text

    def test_same_side_observers(self, tmp_path):
        # both observers boosted the same way: orderings agree, geometry rejected
        path = write_config(tmp_path, observers=[{"name": "alice", "rapidity": 0.5},
                                                 {"name": "bob", "rapidity": 0.5}], slices=[])
        assert main(["--config", str(path), "--out", str(tmp_path), "check"]) == EXIT_CONFIG

    def test_claim_failed_status(self, tmp_path, monkeypatch):
        import openrel.cli as cli
        monkeypatch.setattr(cli, "RESIDUAL_THRESHOLD", 10.0)
        assert main(["--out", str(tmp_path), "check"]) == EXIT_CLAIM_FAILED

    def test_csv(self, tmp_path):
        main(["--out", str(tmp_path), "--format", "csv", "check"])
        rows = list(csv.reader((tmp_path / "check.csv").open()))
        assert rows[0] == CHECK_CSV_HEADER and len(rows) == 9


class TestChsh:
    def test_default(self, tmp_path):
        path = write_config(tmp_path, bell={"n_samples": 20_000, "scan_quadruples": 500})
        assert main(["--config", str(path), "--out", str(tmp_path), "chsh"]) == EXIT_OK
        report = json.loads((tmp_path / "chsh.json").read_text())
        by_model = {r["model"]: r for r in report["results"]}
        assert abs(by_model["quantum"]["S"]) == pytest.approx(2 * math.sqrt(2), abs=1e-12)
        assert abs(by_model["classical-analytic"]["S"]) == pytest.approx(2.0, abs=1e-12)
        assert by_model["classical-mc"]["seed"] == report["seed"]
        assert by_model["classical-mc"]["n_samples"] == 20_000
        assert report["bound_scan"]["max_abs_S"] <= 2 + 1e-9

    def test_seed_flag_changes_mc(self, tmp_path):
        path = write_config(tmp_path, bell={"n_samples": 1000, "scan_quadruples": 10})
        main(["--config", str(path), "--out", str(tmp_path / "a"), "--seed", "1", "chsh"])
        main(["--config", str(path), "--out", str(tmp_path / "b"), "chsh", "--seed", "2"])
        a = json.loads((tmp_path / "a" / "chsh.json").read_text())
        b = json.loads((tmp_path / "b" / "chsh.json").read_text())
        assert (a["seed"], b["seed"]) == (1, 2)
        assert a["results"][1]["S"] != b["results"][1]["S"]


class TestSimulate:
    staggered = {
        "classical": {"kick_event_1": [-0.5, -1.0, 0.0, 0.0], "kick_event_2": [0.5, 1.0, 0.0, 0.0]},
        "observers": [{"name": "alice", "rapidity": -0.5}, {"name": "bob", "rapidity": 0.5},
                      {"name": "magician", "rapidity": 0.0}],
        "slices": [{"observer": "magician", "tau": t} for t in (1.0, -1.0, 0.0)],
    }

    def test_cardinality_walk(self):
        log = simulate_log(parse_config(self.staggered))
        magician = next(o for o in log["observers"] if o["name"] == "magician")
        assert [s["tau"] for s in magician["slices"]] == [-1.0, 0.0, 1.0]
        assert [len(s["support_unmeasured"]) for s in magician["slices"]] == [1, 2, 4]
        assert all(len(s["support_measured"]) == 1 for s in magician["slices"])

    def test_measured_support_uses_sampled_signs(self):
        log = simulate_log(parse_config(self.staggered))
        last = next(o for o in log["observers"] if o["name"] == "magician")["slices"][-1]
        s1, s2 = log["classical_signs"]
        (point,) = last["support_measured"]
        assert point["e1"] == pytest.approx(math.hypot(3, 4 + 4 * s1))
        assert point["e2"] == pytest.approx(math.hypot(3, 4 + 4 * s2))

    def test_observer_order_irrelevant(self):
        reordered = dict(self.staggered, observers=self.staggered["observers"][::-1])
        a = simulate_log(parse_config(self.staggered))
        b = simulate_log(parse_config(reordered))
        for key in ("classical_signs", "quantum_outcomes", "quantum_probabilities"):
            assert a[key] == b[key]

    def test_quantum_states_follow_outcomes(self):
        log = simulate_log(parse_config(self.staggered))
        a, _ = log["quantum_outcomes"]
        alice = next(o for o in log["observers"] if o["name"] == "alice")
        assert alice["slices"] == []  # no alice slices configured here
        config = parse_config(dict(self.staggered, slices=[{"observer": "alice", "tau": 0.0}]))
        state = simulate_log(config)["observers"][0]["slices"][0]["state"]
        # |y±> ⊗ |x+>: amplitudes (1, 1, ±i, ±i)/2
        assert state[2] == pytest.approx([0.0, 0.5 * a], abs=1e-12)

    def test_csv(self, tmp_path):
        path = write_config(tmp_path, **self.staggered)
        assert main(["--config", str(path), "--out", str(tmp_path), "--format", "csv", "simulate"]) == 0
        rows = list(csv.reader((tmp_path / "simulate.csv").open()))
        assert len(rows) == 1 + 3


@pytest.mark.parametrize("command", ["figures", "check", "chsh", "simulate"])
@pytest.mark.parametrize("fmt", ["json", "csv"])
def test_byte_identical_reruns(tmp_path, command, fmt, capsys):
    path = write_config(tmp_path, bell={"n_samples": 5000, "scan_quadruples": 50})
    outputs = []
    for run in ("r1", "r2"):
        out = tmp_path / run
        main(["--config", str(path), "--out", str(out), "--format", fmt, command])
        outputs.append({p.name: p.read_bytes() for p in sorted(out.iterdir())})
    assert outputs[0] == outputs[1] and outputs[0]
