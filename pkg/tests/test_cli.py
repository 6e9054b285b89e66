import json
import subprocess
import sys
import xml.etree.ElementTree as ET
from pathlib import Path


def run_cli(*args, **kwargs):
    return subprocess.run(
        [sys.executable, "-m", "fencepatrol.cli", *args],
        capture_output=True,
        text=True,
        **kwargs,
    )


class TestVerifyCommand:
    def test_fig1_fixture_patrols(self, fixtures_dir):
        result = run_cli("verify", str(fixtures_dir / "fig1.json"))
        assert result.returncode == 0
        assert "PATROLS l=7/2 ratio=21/41" in result.stdout

    def test_lengthened_fence_fails(self, fixtures_dir, tmp_path):
        data = json.loads((fixtures_dir / "fig1.json").read_text())
        data["fence_length"] = "18/5"
        path = tmp_path / "longer.json"
        path.write_text(json.dumps(data))
        result = run_cli("verify", str(path))
        assert result.returncode == 1
        assert "FAILS" in result.stdout
        assert "witness=" in result.stdout

    def test_malformed_rational_is_input_error(self, fixtures_dir, tmp_path):
        data = json.loads((fixtures_dir / "fig1.json").read_text())
        data["period"] = "7/0"
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(data))
        result = run_cli("verify", str(path))
        assert result.returncode == 2
        assert "period" in result.stderr

    def test_missing_file_is_input_error(self):
        result = run_cli("verify", "no/such/file.json")
        assert result.returncode == 2

    def test_speed_violation_is_input_error(self, fixtures_dir, tmp_path):
        data = json.loads((fixtures_dir / "fig1.json").read_text())
        data["agents"][0]["speed"] = "1/2"
        path = tmp_path / "slow.json"
        path.write_text(json.dumps(data))
        result = run_cli("verify", str(path))
        assert result.returncode == 2
        assert "invalid" in result.stderr


class TestBuildCommand:
    def test_partition_six_agents(self):
        result = run_cli("build", "partition", "--speeds", "1,1,1,1,7/3,1/2")
        assert result.returncode == 0
        doc = json.loads(result.stdout)
        assert doc["fence_length"] == "41/12"

    def test_fig2_document(self):
        result = run_cli("build", "fig2")
        assert result.returncode == 0
        doc = json.loads(result.stdout)
        assert doc["fence_length"] == "50/3"
        assert doc["period"] == "10/3"

    def test_overlong_partition_rejected(self):
        result = run_cli("build", "partition", "--speeds", "1", "--length", "3/4")
        assert result.returncode == 2

    def test_weighted3_document(self):
        result = run_cli("build", "weighted3")
        doc = json.loads(result.stdout)
        assert doc["agents"][0]["weight"] == "4"

    def test_build_output_verifies(self, tmp_path):
        result = run_cli("build", "partition", "--speeds", "2,3/2", "--weights", "1,2")
        path = tmp_path / "p.json"
        path.write_text(result.stdout)
        check = run_cli("verify", str(path))
        assert check.returncode == 0


class TestSearchCommand:
    def test_partition_target_certifies(self):
        result = run_cli(
            "search", "--speeds", "1,1", "--length", "1", "--seed", "7", "--budget", "10000"
        )
        assert result.returncode == 0
        doc = json.loads(result.stdout)
        assert doc["fence_length"] == "1"
        assert "seed=7" in doc["metadata"]["provenance"]

    def test_above_two_agent_bound_exhausts(self):
        result = run_cli(
            "search", "--speeds", "1,1", "--length", "101/100", "--seed", "7", "--budget", "600"
        )
        assert result.returncode == 1
        assert "EXHAUSTED" in result.stdout

    def test_fig1_warm_start_regression(self, fixtures_dir):
        # Recorded when the fixture was first generated: seed 11, budget 64.
        result = run_cli(
            "search",
            "--speeds",
            "1,1,1,1,7/3,1/2",
            "--length",
            "7/2",
            "--seed",
            "11",
            "--budget",
            "64",
            "--warm-start",
            str(fixtures_dir / "fig1.json"),
        )
        assert result.returncode == 0
        doc = json.loads(result.stdout)
        assert doc["fence_length"] == "7/2"


class TestRenderCommand:
    def test_writes_svg(self, fixtures_dir, tmp_path):
        out = tmp_path / "fig1.svg"
        result = run_cli("render", str(fixtures_dir / "fig1.json"), "--out", str(out))
        assert result.returncode == 0
        root = ET.fromstring(out.read_text())
        groups = [g for g in root.iter("{http://www.w3.org/2000/svg}g")]
        assert len([g for g in groups if g.get("id", "").startswith("agent-")]) == 6

    def test_height_scales_with_periods(self, fixtures_dir, tmp_path):
        one = tmp_path / "one.svg"
        two = tmp_path / "two.svg"
        run_cli("render", str(fixtures_dir / "fig1.json"), "--out", str(one), "--periods", "1")
        run_cli("render", str(fixtures_dir / "fig1.json"), "--out", str(two), "--periods", "2")
        h1 = float(ET.fromstring(one.read_text()).get("height")) - 20
        h2 = float(ET.fromstring(two.read_text()).get("height")) - 20
        assert abs(h2 - 2 * h1) < 1e-6

    def test_byte_determinism(self, fixtures_dir, tmp_path):
        a = tmp_path / "a.svg"
        b = tmp_path / "b.svg"
        run_cli("render", str(fixtures_dir / "fig2.json"), "--out", str(a))
        run_cli("render", str(fixtures_dir / "fig2.json"), "--out", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_unwritable_output_is_error(self, fixtures_dir, tmp_path):
        result = run_cli(
            "render", str(fixtures_dir / "fig1.json"), "--out", str(tmp_path / "no" / "dir.svg")
        )
        assert result.returncode == 2


class TestBoundsCommand:
    def test_six_agents(self):
        result = run_cli("bounds", "--speeds", "1,1,1,1,7/3,1/2")
        assert result.returncode == 0
        assert "partition_length=41/12" in result.stdout
        assert "trivial_upper=41/6" in result.stdout

    def test_nine_agents(self):
        result = run_cli("bounds", "--speeds", "5,5,5,5,5,5,1,1,1")
        assert "partition_length=33/2" in result.stdout
        assert "trivial_upper=33" in result.stdout

    def test_weighted(self):
        result = run_cli("bounds", "--speeds", "2", "--weights", "3")
        assert "partition_length=3" in result.stdout
        assert "trivial_upper=6" in result.stdout

    def test_nonpositive_speed_rejected(self):
        result = run_cli("bounds", "--speeds", "0")
        assert result.returncode == 2


class TestRoundTrip:
    def test_emit_parse_emit_is_stable(self, fixtures_dir, tmp_path):
        for name in ("fig1", "fig2", "weighted3"):
            original = (fixtures_dir / f"{name}.json").read_text()
            result = run_cli("build", name)
            assert result.stdout.replace('"provenance"', "@") != ""  # sanity: non-empty
            # The fixture on disk carries provenance metadata; the emitted
            # document carries only its name.  Compare the schedule payloads.
            disk = json.loads(original)
            emitted = json.loads(result.stdout)
            for key in ("format_version", "fence_length", "period", "agents"):
                assert disk[key] == emitted[key]
