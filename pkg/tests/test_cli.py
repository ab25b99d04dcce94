import json
import math

import pytest

from drsbound.cli import main
from drsbound.spectrum import load_table_data, audit_table


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSolve:
    def test_ring_dressed_spin_kratzer_rows(self, capsys):
        code, out, _ = run(
            capsys,
            "solve", "--symmetry", "spin", "--potential", "kratzer",
            "--n", "0", "--nprime", "0", "--m", "0", "--a", "1", "--b", "1",
            "--mode", "paper-compat",
        )
        assert code == 0
        assert "2.072188142" in out
        assert "9.060994524" in out or "9.060994522" in out
        rows = [l for l in out.splitlines() if l and not l.startswith("energy_re")]
        classes = {r.split(",")[2] for r in rows}
        assert {"A", "B"} <= classes

    def test_pseudospin_oscillator_paper_compat(self, capsys):
        code, out, _ = run(
            capsys,
            "solve", "--symmetry", "pseudospin", "--potential", "oscillator",
            "--n", "0", "--nprime", "0", "--m", "0", "--a", "0", "--b", "0",
            "--mode", "paper-compat",
        )
        assert code == 0
        assert "-0.665243" in out

    def test_strict_spin_oscillator_single_root(self, capsys):
        code, out, _ = run(
            capsys,
            "solve", "--symmetry", "spin", "--potential", "oscillator",
            "--n", "0", "--nprime", "0", "--m", "0", "--a", "0", "--b", "0",
            "--mode", "strict",
        )
        assert code == 0
        rows = [l for l in out.splitlines() if l and not l.startswith("energy_re")]
        assert len(rows) == 1
        assert rows[0].startswith("-0.424764518")

    def test_json_format(self, capsys):
        code, out, _ = run(
            capsys,
            "solve", "--symmetry", "spin", "--potential", "oscillator",
            "--n", "0", "--nprime", "0", "--m", "0",
            "--format", "json",
        )
        assert code == 0
        data = json.loads(out)
        assert any(abs(r["energy_re"] + 0.424764518) < 1e-6 for r in data)

    def test_no_roots_exits_one(self, capsys):
        code, out, _ = run(
            capsys,
            "solve", "--symmetry", "pseudospin", "--potential", "oscillator",
            "--n", "2", "--nprime", "2", "--m", "1", "--mode", "strict",
        )
        assert code == 1

    def test_invalid_enum_exits_two(self, capsys):
        code, _, _ = run(
            capsys,
            "solve", "--symmetry", "sideways", "--potential", "kratzer",
            "--n", "0", "--nprime", "0", "--m", "0",
        )
        assert code == 2

    def test_negative_quantum_number_exits_two(self, capsys):
        code, _, err = run(
            capsys,
            "solve", "--symmetry", "spin", "--potential", "kratzer",
            "--n", "-1", "--nprime", "0", "--m", "0",
        )
        assert code == 2
        assert "nonnegative" in err


class TestConfigPrecedence:
    def test_flags_env_config_defaults(self, capsys, tmp_path, monkeypatch):
        cfg = tmp_path / "params.cfg"
        cfg.write_text("mass = 6.0\nk = 1.0\n")
        # config only: cubic (6+E)^2 E + 2*(2.5)^2 = 0
        code, out, _ = run(
            capsys,
            "solve", "--symmetry", "pseudospin", "--potential", "oscillator",
            "--n", "0", "--nprime", "0", "--m", "0",
            "--mode", "paper-compat", "--format", "json", "--config", str(cfg),
        )
        assert code == 0
        import numpy as np

        def cubic_roots(mass):
            # (M+E)^2 (E - M - C_ps) + 2 k d^2 with C_ps = -5, d = 5/2
            poly = np.polyadd(
                np.polymul(np.polymul([1.0, mass], [1.0, mass]), [1.0, -mass + 5.0]),
                [12.5],
            )
            return np.roots(poly)

        def matches(data, mass):
            roots = cubic_roots(mass)
            return all(
                min(abs(r["energy_re"] - z.real) for z in roots) < 1e-6 for r in data
            ) and len(data) > 0

        data = json.loads(out)
        assert matches(data, 6.0)
        assert not matches(data, 5.0)
        # env overrides config
        monkeypatch.setenv("DRSBOUND_MASS", "7.0")
        code, out, _ = run(
            capsys,
            "solve", "--symmetry", "pseudospin", "--potential", "oscillator",
            "--n", "0", "--nprime", "0", "--m", "0",
            "--mode", "paper-compat", "--format", "json", "--config", str(cfg),
        )
        data = json.loads(out)
        assert matches(data, 7.0)
        # flag overrides env
        code, out, _ = run(
            capsys,
            "solve", "--symmetry", "pseudospin", "--potential", "oscillator",
            "--n", "0", "--nprime", "0", "--m", "0",
            "--mode", "paper-compat", "--format", "json", "--config", str(cfg),
            "--mass", "5.0",
        )
        data = json.loads(out)
        assert any(abs(r["energy_re"] + 0.6652434115) < 1e-6 for r in data)

    def test_bad_config_exits_two(self, capsys, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("nonsense_key = 3\n")
        code, _, err = run(
            capsys,
            "solve", "--symmetry", "spin", "--potential", "kratzer",
            "--n", "0", "--nprime", "0", "--m", "0", "--config", str(cfg),
        )
        assert code == 2
        assert "unknown config key" in err


class TestTable:
    def test_table4_rows_and_determinism(self, capsys, tmp_path):
        out1 = tmp_path / "t4a.csv"
        out2 = tmp_path / "t4b.csv"
        assert run(capsys, "table", "4", "--output", str(out1))[0] == 0
        assert run(capsys, "table", "4", "--output", str(out2))[0] == 0
        assert out1.read_bytes() == out2.read_bytes()
        rows = [
            line.split(",")
            for line in out1.read_text().splitlines()[1:]
        ]
        cell = [
            r for r in rows if r[:5] == ["0", "0", "0", "0", "0"]
        ]
        got = {(float(r[7]), r[9]) for r in cell}
        assert any(abs(e + 0.424764518) < 1e-6 and c == "A" for e, c in got)
        assert any(abs(e - 5.212382260) < 1e-6 and c == "C" for e, c in got)

    def test_table2_degenerate_rows_identical(self, capsys, tmp_path):
        out = tmp_path / "t2.csv"
        assert run(capsys, "table", "2", "--output", str(out))[0] == 0
        rows = [line.split(",") for line in out.read_text().splitlines()[1:]]

        def energies(n, npr):
            return sorted(
                (float(r[7]), float(r[8]))
                for r in rows
                if r[:5] == [str(n), str(npr), "0", "0", "0"]
            )

        e_a, e_b = energies(1, 1), energies(2, 0)
        assert len(e_a) == len(e_b) > 0
        for u, v in zip(e_a, e_b):
            assert u == pytest.approx(v, abs=1e-9)

    def test_table1_ground_row(self, capsys, tmp_path):
        out = tmp_path / "t1.csv"
        assert run(capsys, "table", "1", "--output", str(out))[0] == 0
        rows = [line.split(",") for line in out.read_text().splitlines()[1:]]
        cell = {
            (float(r[7]), r[9]) for r in rows if r[:5] == ["0", "0", "0", "0", "0"]
        }
        assert any(abs(e + 0.361711704) < 1e-6 and c == "A" for e, c in cell)
        assert any(abs(e - 1.666666667) < 1e-6 and c == "B" for e, c in cell)

    def test_unwritable_output_exits_two(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "table", "4", "--output", str(tmp_path / "no" / "dir" / "x.csv")
        )
        assert code == 2

    def test_round_trip_audit(self, capsys, tmp_path):
        out = tmp_path / "t4.csv"
        assert run(capsys, "table", "4", "--output", str(out))[0] == 0
        rows = [line.split(",") for line in out.read_text().splitlines()[1:]]
        by_cell = {}
        expected = {}
        for r in rows:
            key = (int(r[0]), int(r[1]), int(r[2]), float(r[3]), float(r[4]))
            by_cell.setdefault(key, []).append(float(r[7]))
            expected[(key, round(float(r[7]), 9))] = r[9]
        published = [(*key, vals) for key, vals in by_cell.items()]
        report = audit_table(4, published=published)
        for entry in report.entries:
            key = (entry.n, entry.n_prime, entry.m, entry.a, entry.b)
            assert entry.root_class.value == expected[(key, round(entry.value, 9))]
            assert entry.deviation is not None and entry.deviation < 1e-9


class TestAudit:
    def test_audit_all_tables_exit_zero(self, capsys, tmp_path):
        for table in ("3", "4"):
            report_path = tmp_path / f"audit{table}.json"
            code, out, _ = run(capsys, "audit", table, "--output", str(report_path))
            assert code == 0
            assert "summary" in out
            data = json.loads(report_path.read_text())
            assert data["table"] == int(table)
            assert len(data["entries"]) == sum(
                len(vals) for *_k, vals in load_table_data(int(table))
            )

    def test_audit_exits_zero_with_class_d(self, capsys):
        code, out, _ = run(capsys, "audit", "1")
        assert code == 0
        assert "D=" in out

    def test_missing_data_file_exits_two(self, capsys, tmp_path):
        code, _, err = run(capsys, "audit", "1", "--data", str(tmp_path / "nope.txt"))
        assert code == 2

    def test_audit_honors_parameter_overrides(self, capsys, tmp_path):
        # auditing the bundled values against a different mass must fail to
        # match them (classes drift toward D / away from tight deviations)
        data = tmp_path / "one.txt"
        data.write_text("0 0 0 0 0 -0.6652434115\n")
        code, out_default, _ = run(capsys, "audit", "2", "--data", str(data))
        assert code == 0
        assert "class=A" in out_default
        code, out_shifted, _ = run(
            capsys, "audit", "2", "--data", str(data), "--mass", "4.0"
        )
        assert code == 0
        assert "class=A" not in out_shifted


class TestWavefunction:
    def test_spin_kratzer_sampling(self, capsys, tmp_path):
        out = tmp_path / "wf.txt"
        code, _, _ = run(
            capsys,
            "wavefunction", "--symmetry", "spin", "--potential", "kratzer",
            "--n", "0", "--nprime", "0", "--m", "0", "--a", "1", "--b", "1",
            "--r-samples", "6", "--theta-samples", "4", "--phi-samples", "2",
            "--output", str(out),
        )
        assert code == 0
        lines = [l for l in out.read_text().splitlines() if not l.startswith("#")]
        assert lines
        assert all(len(l.split()) == 5 for l in lines)

    def test_complex_sector_exits_one(self, capsys, tmp_path):
        code, _, err = run(
            capsys,
            "wavefunction", "--symmetry", "pseudospin", "--potential", "kratzer",
            "--n", "0", "--nprime", "0", "--m", "0", "--a", "1", "--b", "1",
            "--output", str(tmp_path / "wf.txt"),
        )
        assert code == 1
        assert "complex angular sector" in err or "no class-A root" in err


class TestPotentialGrid:
    def test_kratzer_point_value(self, capsys, tmp_path):
        out = tmp_path / "grid.txt"
        code, _, _ = run(
            capsys,
            "potential-grid", "--potential", "kratzer",
            "--r-min", "1", "--r-max", "1", "--r-samples", "1",
            "--theta-min", str(math.pi / 4), "--theta-max", str(math.pi / 4),
            "--theta-samples", "1", "--output", str(out),
        )
        assert code == 0
        line = [l for l in out.read_text().splitlines() if not l.startswith("#")][0]
        assert float(line.split()[2]) == pytest.approx(-3.68, abs=1e-9)

    def test_oscillator_point_value(self, capsys, tmp_path):
        out = tmp_path / "grid.txt"
        code, _, _ = run(
            capsys,
            "potential-grid", "--potential", "oscillator",
            "--r-min", "2", "--r-max", "2", "--r-samples", "1",
            "--theta-min", str(math.pi / 4), "--theta-max", str(math.pi / 4),
            "--theta-samples", "1", "--output", str(out),
        )
        assert code == 0
        line = [l for l in out.read_text().splitlines() if not l.startswith("#")][0]
        assert float(line.split()[2]) == pytest.approx(3.0, abs=1e-12)

    def test_reflection_symmetry(self, capsys, tmp_path):
        out = tmp_path / "grid.txt"
        code, _, _ = run(
            capsys,
            "potential-grid", "--potential", "oscillator",
            "--r-min", "0.5", "--r-max", "2", "--r-samples", "4",
            "--theta-samples", "8", "--output", str(out),
        )
        assert code == 0
        lines = [l.split() for l in out.read_text().splitlines() if not l.startswith("#")]
        by_r = {}
        for r, t, v in lines:
            by_r.setdefault(float(r), []).append((float(t), float(v)))
        for r, samples in by_r.items():
            samples.sort()
            for j in range(len(samples)):
                t, v = samples[j]
                t_mirror, v_mirror = samples[len(samples) - 1 - j]
                assert t_mirror == pytest.approx(math.pi - t, abs=1e-8)
                assert v_mirror == pytest.approx(v, rel=1e-9)

    def test_singular_ray_exits_two(self, capsys, tmp_path):
        code, _, err = run(
            capsys,
            "potential-grid", "--potential", "kratzer",
            "--theta-min", "0.0", "--theta-max", "1.0", "--theta-samples", "3",
            "--output", str(tmp_path / "g.txt"),
        )
        assert code == 2
        assert "singular" in err
