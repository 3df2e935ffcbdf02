import json
import subprocess
import sys

import pytest

from gbjsfusion import Frame
from gbjsfusion import reference as ref
from gbjsfusion.cli import main
from gbjsfusion.documents import document_from_masses, serialize_evidence


@pytest.fixture
def write(tmp_path):
    def write(labels, rows, name="evidence.json"):
        path = tmp_path / name
        ms = ref.mass_functions(labels, rows)
        path.write_bytes(serialize_evidence(document_from_masses(Frame(labels), ms)))
        return str(path)

    return write


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


class TestFuse:
    def test_sensor_reports_2x(self, write, capsys):
        code, out, _ = run(["fuse", write(ref.FAULTS, ref.SENSOR_REPORTS["2X"])], capsys)
        assert code == 0
        assert "0.9874" in out
        assert out.rstrip().endswith("diagnosis: F2")

    def test_json_report(self, write, tmp_path, capsys):
        target = tmp_path / "report.json"
        code, _, _ = run(["fuse", write(ref.FAULTS, ref.SENSOR_REPORTS["1X"]), "--out", str(target)], capsys)
        assert code == 0
        data = json.loads(target.read_text())
        assert data["diagnosis"] == ["F2"]
        assert len(data["per_step"]) == 2
        assert sum(data["final_weights"]) == pytest.approx(1.0)

    def test_full_precision(self, write, capsys):
        code, out, _ = run(["fuse", write(ref.FAULTS, ref.SENSOR_REPORTS["2X"]), "--precision", "full"], capsys)
        assert code == 0
        assert "0.98744378" in out

    def test_two_sources(self, write, capsys):
        code, _, err = run(["fuse", write(ref.FAULTS, ref.SENSOR_REPORTS["2X"][:2])], capsys)
        assert code == 10
        assert "TooFewEvidences" in err
        assert "stage: input" in err

    def test_agreeing_sources_use_uniform_weights(self, write, capsys):
        code, out, _ = run(["fuse", write(ref.ABC, ref.EXAMPLE_IDENTICAL)], capsys)
        assert code == 0
        assert "uniform" in out


class TestDivergence:
    def test_weighted_example(self, write, capsys):
        path = write(ref.ABC, ref.EXAMPLE_WEIGHTED)
        code, out, _ = run(["divergence", path, "--weights", "0.5,0.4,0.1"], capsys)
        assert code == 0
        assert "(0.0428)" in out

    def test_identical_example(self, write, capsys):
        code, out, _ = run(["divergence", write(ref.ABC, ref.EXAMPLE_IDENTICAL), "--equal"], capsys)
        assert code == 0
        value = float(out.split()[2])
        assert abs(value) <= 1e-9

    @pytest.mark.parametrize("triple, shown", [((0, 1, 2), "0.0188"), ((0, 1, 3), "0.8148"), ((1, 2, 3), "0.7617")])
    def test_outlier_triples(self, write, capsys, triple, shown):
        rows = [ref.EXAMPLE_OUTLIER[i] for i in triple]
        code, out, _ = run(["divergence", write(ref.AB, rows), "--equal"], capsys)
        assert code == 0
        assert f"({shown})" in out

    def test_bad_weights(self, write, capsys):
        path = write(ref.ABC, ref.EXAMPLE_WEIGHTED)
        assert run(["divergence", path, "--weights", "0.5,0.6,0.1"], capsys)[0] == 13
        assert run(["divergence", path, "--weights", "0.5,0.5"], capsys)[0] == 13

    def test_weights_or_equal_required(self, write, capsys):
        with pytest.raises(SystemExit) as info:
            main(["divergence", write(ref.ABC, ref.EXAMPLE_WEIGHTED)])
        assert info.value.code == 2


class TestCombine:
    def test_plain_dempster(self, write, tmp_path, capsys):
        target = tmp_path / "combined.json"
        code, out, _ = run(["combine", write(ref.FAULTS, ref.SENSOR_REPORTS["1X"]), "--out", str(target)], capsys)
        assert code == 0
        assert "diagnosis: F2" in out
        data = json.loads(target.read_text())
        assert sum(e["mass"] for e in data["combined"]) == pytest.approx(1.0)

    def test_total_conflict(self, write, capsys):
        code, _, err = run(["combine", write(["A", "B"], [{("A",): 1.0}, {("B",): 1.0}])], capsys)
        assert code == 11
        assert "step: 1" in err


class TestInputErrors:
    def test_missing_file(self, tmp_path, capsys):
        assert run(["fuse", str(tmp_path / "nope.json")], capsys)[0] == 3

    def test_syntax(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        code, _, err = run(["fuse", str(path)], capsys)
        assert code == 4
        assert "line 1" in err

    def test_schema(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"version": 1, "frame": ["A"], "sources": [], "extra": 0}))
        assert run(["fuse", str(path)], capsys)[0] == 5

    def test_validation(self, write, capsys):
        path = write(ref.FAULTS, ref.SENSOR_REPORTS["1X"])
        with open(path) as fh:
            data = json.load(fh)
        data["sources"][0]["assignments"][0]["mass"] = -0.1
        with open(path, "w") as fh:
            json.dump(data, fh)
        code, _, err = run(["fuse", path], capsys)
        assert code == 6
        assert "NegativeMass" in err

    def test_bad_precision(self, write, capsys):
        with pytest.raises(SystemExit) as info:
            main(["fuse", write(ref.FAULTS, ref.SENSOR_REPORTS["1X"]), "--precision", "many"])
        assert info.value.code == 2


def test_module_entry_point(write):
    result = subprocess.run(
        [sys.executable, "-m", "gbjsfusion", "fuse", write(ref.FAULTS, ref.SENSOR_REPORTS["3X"])],
        capture_output=True, text=True,
    )
    assert result.returncode == 0
    assert "diagnosis: F2" in result.stdout
