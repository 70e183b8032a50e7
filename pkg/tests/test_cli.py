import csv
import math
from pathlib import Path

import pytest

from lhmcavity.cli import main

CONFIG_DIR = Path(__file__).resolve().parents[1] / "src" / "lhmcavity" / "configs"
CANONICAL = str(CONFIG_DIR / "paper_fig1.cfg")
DIELECTRIC = str(CONFIG_DIR / "paper_dielectric.cfg")


def write_vacuum_config(tmp_path: Path) -> str:
    path = tmp_path / "vacuum.cfg"
    path.write_text(
        "[electric]\nomega_p = 0\nomega_t = 1\ngamma = 0\n"
        "[magnetic]\nomega_p = 0\nomega_t = 1\ngamma = 0\n"
    )
    return str(path)


def read_rows(path):
    with open(path, newline="") as handle:
        return list(csv.DictReader(handle))


class TestIndexCommand:
    def test_bundled_config_window(self, tmp_path):
        out = tmp_path / "index.csv"
        code = main([
            "index", "--config", CANONICAL, "--out", str(out),
            "--omega-min", "0.8", "--omega-max", "1.4", "--steps", "600",
        ])
        assert code == 0
        rows = read_rows(out)
        assert len(rows) == 601
        header = out.read_text().splitlines()[0]
        assert header == "omega,re_eps,im_eps,re_mu,im_mu,re_n,im_n,left_handed"
        # all samples deep inside the overlap window are flagged, edges are not
        for row in rows:
            w = float(row["omega"])
            if 1.035 <= w <= 1.085:
                assert row["left_handed"] == "1"
            if w <= 1.0 or w >= 1.15:
                assert row["left_handed"] == "0"

    def test_deterministic_output(self, tmp_path):
        outs = []
        for name in ("a.csv", "b.csv"):
            out = tmp_path / name
            main([
                "index", "--config", CANONICAL, "--out", str(out),
                "--omega-min", "0.9", "--omega-max", "1.1", "--steps", "50",
            ])
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_vacuum_rows(self, tmp_path):
        out = tmp_path / "vac.csv"
        code = main([
            "index", "--config", write_vacuum_config(tmp_path), "--out", str(out),
            "--omega-min", "0.5", "--omega-max", "1.5", "--steps", "20",
        ])
        assert code == 0
        for row in read_rows(out):
            assert float(row["re_n"]) == 1.0
            assert float(row["im_n"]) == 0.0
            assert row["left_handed"] == "0"

    def test_round_trip_precision(self, tmp_path):
        out = tmp_path / "prec.csv"
        main([
            "index", "--config", CANONICAL, "--out", str(out),
            "--omega-min", "0.9", "--omega-max", "1.1", "--steps", "7",
        ])
        from lhmcavity.materials import optical_response
        from conftest import overlap_params

        rows = read_rows(out)
        for row in rows:
            w = float(row["omega"])
            resp = optical_response(overlap_params(), w)
            assert float(row["re_n"]) == resp.n.real  # bit-exact round trip
            assert float(row["im_eps"]) == resp.eps.imag

    def test_smoothing_trend_across_gammas(self, tmp_path):
        minima = {}
        for name in ("paper_fig1.cfg", "paper_fig1_gamma050.cfg"):
            out = tmp_path / f"{name}.csv"
            main([
                "index", "--config", str(CONFIG_DIR / name), "--out", str(out),
                "--omega-min", "0.8", "--omega-max", "1.4", "--steps", "600",
            ])
            minima[name] = min(float(r["re_n"]) for r in read_rows(out))
        assert minima["paper_fig1_gamma050.cfg"] > minima["paper_fig1.cfg"]

    def test_invalid_range_exits_2_without_output(self, tmp_path):
        out = tmp_path / "never.csv"
        code = main([
            "index", "--config", CANONICAL, "--out", str(out),
            "--omega-min", "1.4", "--omega-max", "0.8", "--steps", "10",
        ])
        assert code == 2
        assert not out.exists()

    def test_bad_config_exits_2(self, tmp_path):
        bad = tmp_path / "bad.cfg"
        bad.write_text("[electric]\nomega_p = 0.75\nomega_t = 1.03\ngamma = 0.001\n"
                       "[magnetic]\nomega_p = 0.43\nomega_t = 1.0\ngamma = 0.001\n"
                       "speed = 9\n")
        out = tmp_path / "never.csv"
        code = main([
            "index", "--config", str(bad), "--out", str(out),
            "--omega-min", "0.8", "--omega-max", "1.4", "--steps", "10",
        ])
        assert code == 2
        assert not out.exists()

    def test_missing_config_exits_2(self, tmp_path):
        code = main([
            "index", "--config", str(tmp_path / "absent.cfg"),
            "--out", str(tmp_path / "x.csv"),
            "--omega-min", "0.8", "--omega-max", "1.4", "--steps", "10",
        ])
        assert code == 2


class TestCavityCommand:
    def test_vacuum_is_flat(self, tmp_path):
        out = tmp_path / "cav.csv"
        code = main([
            "cavity", "--config", write_vacuum_config(tmp_path), "--out", str(out),
            "--omega-min", "0.8", "--omega-max", "1.2", "--steps", "20",
            "--radius", "10",
        ])
        assert code == 0
        rows = read_rows(out)
        assert out.read_text().splitlines()[0] == "omega,gamma_ratio,terms_used,truncation_estimate"
        for row in rows:
            assert abs(float(row["gamma_ratio"]) - 1.0) <= 1e-10

    def test_large_cavity_enhancement_alternates_with_inhibition(self, tmp_path):
        out = tmp_path / "large.csv"
        code = main([
            "cavity", "--config", DIELECTRIC, "--out", str(out),
            "--omega-min", "1.035", "--omega-max", "1.27", "--steps", "600",
            "--radius", "10",
        ])
        assert code == 0
        rows = read_rows(out)
        ratios = [float(r["gamma_ratio"]) for r in rows]
        peaks = [i for i in range(1, len(ratios) - 1)
                 if ratios[i] > ratios[i - 1] and ratios[i] > ratios[i + 1] and ratios[i] > 1.0]
        assert len(peaks) >= 3
        # between consecutive enhancement peaks the decay is inhibited
        for a, b in zip(peaks, peaks[1:]):
            assert min(ratios[a:b]) < 1.0

    def test_small_cavity_peak_location(self, tmp_path):
        out = tmp_path / "small.csv"
        code = main([
            "cavity", "--config", DIELECTRIC, "--out", str(out),
            "--omega-min", "1.1", "--omega-max", "1.3", "--steps", "400",
            "--radius", "0.05",
        ])
        assert code == 0
        rows = read_rows(out)
        best = max(rows, key=lambda r: float(r["gamma_ratio"]))
        assert float(best["omega"]) == pytest.approx(1.198, abs=0.01)

    def test_position_outside_exits_2(self, tmp_path):
        code = main([
            "cavity", "--config", CANONICAL, "--out", str(tmp_path / "x.csv"),
            "--omega-min", "0.8", "--omega-max", "1.2", "--steps", "5",
            "--radius", "1.0", "--position", "2.0",
        ])
        assert code == 2


class TestExpansionCommand:
    def test_vacuum_identity(self, tmp_path):
        out = tmp_path / "exp.csv"
        code = main([
            "expansion", "--config", write_vacuum_config(tmp_path), "--out", str(out),
            "--omega-min", "1.0", "--omega-max", "1.3", "--steps", "10",
            "--radius", "0.01",
        ])
        assert code == 0
        for row in read_rows(out):
            assert float(row["exact"]) == pytest.approx(1.0, abs=1e-12)
            assert float(row["sum3"]) == pytest.approx(1.0, abs=1e-12)

    def test_remainder_scales_linearly(self, tmp_path):
        # inside the overlap region absorption keeps the O(R) remainder
        # coefficient alive, so halving R halves the median error; in nearly
        # lossless bands the coefficient collapses and the remainder is
        # effectively O(R^2)
        medians = []
        for radius in ("0.01", "0.005"):
            out = tmp_path / f"exp{radius}.csv"
            main([
                "expansion", "--config", CANONICAL, "--out", str(out),
                "--omega-min", "1.15", "--omega-max", "1.25", "--steps", "40",
                "--radius", radius,
            ])
            errs = sorted(float(r["abs_err"]) for r in read_rows(out))
            medians.append(errs[len(errs) // 2])
        assert 1.6 <= medians[0] / medians[1] <= 2.4

    def test_expansion_struggles_near_resonances(self, tmp_path):
        out = tmp_path / "res.csv"
        main([
            "expansion", "--config", CANONICAL, "--out", str(out),
            "--omega-min", "0.95", "--omega-max", "1.10", "--steps", "300",
            "--radius", "0.01",
        ])
        rows = read_rows(out)
        near = [float(r["abs_err"]) for r in rows
                if abs(float(r["omega"]) - 1.0) < 0.01 and not math.isnan(float(r["abs_err"]))]
        far = [float(r["abs_err"]) for r in rows if 1.05 < float(r["omega"]) < 1.07]
        assert max(near) > 100.0 * max(far)

    def test_domain_violation_exits_2(self, tmp_path):
        code = main([
            "expansion", "--config", CANONICAL, "--out", str(tmp_path / "x.csv"),
            "--omega-min", "1.0", "--omega-max", "1.3", "--steps", "10",
            "--radius", "0.5",
        ])
        assert code == 2


class TestDynamicsCommand:
    def test_markov_decay(self, tmp_path):
        out = tmp_path / "dyn.csv"
        code = main([
            "dynamics", "--config", write_vacuum_config(tmp_path), "--out", str(out),
            "--radius", "1.0", "--omega-a", "1.0",
            "--band-lo", "0.8", "--band-hi", "1.2", "--band-steps", "2001",
            "--tmax", "3.0", "--dt", "0.004",
        ])
        assert code == 0
        rows = read_rows(out)
        header = out.read_text().splitlines()[0]
        assert header == "t,re_cu,im_cu,prob,gamma_markov,delta_omega"
        gamma = float(rows[0]["gamma_markov"])
        assert float(rows[0]["prob"]) == 1.0
        for row in rows:
            expected = math.exp(-gamma * float(row["t"]))
            assert float(row["prob"]) == pytest.approx(expected, rel=0.01, abs=1e-12)

    def test_dt_refinement_is_second_order(self, tmp_path):
        finals = []
        for dt in ("0.02", "0.01", "0.005"):
            out = tmp_path / f"dyn{dt}.csv"
            main([
                "dynamics", "--config", write_vacuum_config(tmp_path), "--out", str(out),
                "--radius", "1.0", "--omega-a", "1.0",
                "--band-lo", "0.8", "--band-hi", "1.2", "--band-steps", "1201",
                "--tmax", "2.0", "--dt", dt,
            ])
            finals.append(float(read_rows(out)[-1]["prob"]))
        change_coarse = abs(finals[0] - finals[1])
        change_fine = abs(finals[1] - finals[2])
        assert change_coarse / change_fine > 3.0  # ~4 for quadratic convergence

    def test_numerical_failure_exits_3(self, tmp_path):
        out = tmp_path / "never.csv"
        code = main([
            "dynamics", "--config", write_vacuum_config(tmp_path), "--out", str(out),
            "--radius", "1.0", "--omega-a", "1.0",
            "--band-lo", "0.8", "--band-hi", "1.2", "--band-steps", "101",
            "--tmax", "50.0", "--dt", "0.5", "--gamma0", "10.0",
        ])
        assert code == 3
        assert not out.exists()
