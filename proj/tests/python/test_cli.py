import json
import os
import pathlib
import subprocess
import sys

import pytest

CLI = os.environ.get("FRAMEFORGE_CLI", str(pathlib.Path(__file__).resolve().parents[2] / "build" / "frameforge"))
FIXTURES = pathlib.Path(os.environ.get("FRAMEFORGE_FIXTURES", pathlib.Path(__file__).resolve().parent.parent / "fixtures"))
FRAME = FIXTURES / "frame_3-2-3.txt"


def cli(*args, cwd=None):
    return subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, cwd=cwd, timeout=300)


def test_validate_ok():
    p = cli("validate", FRAME)
    assert p.returncode == 0, p.stderr
    assert json.loads(p.stdout) == {"valid": True, "total_bays": 3, "total_stories": 8}


def test_validate_reports_story_count_mismatch(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text(FRAME.read_text().replace("Total stories: 8", "Total stories: 9"))
    p = cli("validate", bad)
    assert p.returncode != 0
    err = json.loads(p.stderr)
    assert err["error"] == "InvariantViolation"
    assert err["details"]["violations"][0]["code"] == "StoryCountMismatch"


def test_missing_section(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text(FRAME.read_text().split("Material properties")[0])
    p = cli("validate", bad)
    assert p.returncode == 1
    assert json.loads(p.stderr)["error"] == "MissingSection"


def test_plan():
    p = cli("plan", FRAME)
    assert p.returncode == 0, p.stderr
    doc = json.loads(p.stdout)
    assert len(doc["Construction_steps"]) == 8
    assert doc["checkpoint"]["passed"]


def test_run_writes_outputs(tmp_path):
    p = cli("run", FRAME, "--out", tmp_path)
    assert p.returncode == 0, p.stderr
    summary = json.loads(p.stdout)
    assert summary["nodes"] == 16 and summary["elements"] == 20
    names = sorted(pathlib.Path(f).name for f in summary["files"])
    expected = sorted(
        f"frame_3-2-3.{s}"
        for s in ("model.json", "ops.py", "result.json", "geometry.svg", "loads.svg", "deformed.svg",
                  "axial.svg", "shear.svg", "moment.svg")
    )
    assert names == expected
    for f in summary["files"]:
        assert pathlib.Path(f).stat().st_size > 0
    result = json.loads((tmp_path / "frame_3-2-3.result.json").read_text())
    assert len(result["displacements"]) == 16


def test_codegen_solve_render_chain(tmp_path):
    model = tmp_path / "m.json"
    p = cli("run", FRAME, "--out", tmp_path)
    assert p.returncode == 0, p.stderr
    (tmp_path / "frame_3-2-3.model.json").rename(model)
    script = tmp_path / "s.py"
    assert cli("codegen", model, "--out", script).returncode == 0
    assert script.read_text() == (tmp_path / "frame_3-2-3.ops.py").read_text()
    res = tmp_path / "r.json"
    assert cli("solve", model, "--out", res).returncode == 0
    assert json.loads(res.read_text()) == json.loads((tmp_path / "frame_3-2-3.result.json").read_text())
    p = cli("render", model, "--result", res, "--out", tmp_path / "svg")
    assert p.returncode == 0, p.stderr
    assert len(json.loads(p.stdout)["files"]) == 6


def test_run_with_fake_runner(tmp_path):
    # a runner that answers with the internal result passes the cross-check
    canned = tmp_path / "canned.json"
    assert cli("solve", FRAME, "--out", canned).returncode == 0
    runner = tmp_path / "runner.sh"
    runner.write_text(f'cp "{canned}" "$2"\n')
    p = cli("run", FRAME, "--out", tmp_path / "out", "--runner", f"sh {runner}")
    assert p.returncode == 0, p.stderr
    assert json.loads(p.stdout)["engine"]["pass"] is True

    # one perturbed displacement: exit 3
    doc = json.loads(canned.read_text())
    doc["displacements"][5]["ux"] *= 1.05
    canned.write_text(json.dumps(doc))
    p = cli("run", FRAME, "--out", tmp_path / "out", "--runner", f"sh {runner}")
    assert p.returncode == 3
    assert json.loads(p.stdout)["engine"]["pass"] is False


def test_free_text_is_refused_without_remote(tmp_path):
    t = tmp_path / "free.txt"
    t.write_text("A three bay frame with stepped roofs.")
    p = cli("run", t, "--out", tmp_path)
    assert p.returncode == 1
    assert json.loads(p.stderr)["error"] == "ConfigError"


def test_bench_is_reproducible(tmp_path):
    for d in ("a", "b"):
        p = cli("bench", "--preset", "smoke", "--trials", "3", "--seed", "7", "--out", tmp_path / d)
        assert p.returncode == 0, p.stderr
        assert json.loads(p.stdout)["passes"] == 3
    for name in ("bench.csv", "bench.md", "scripts/3-2-3.ops.py"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_bench_fixture_failures_exit_4(tmp_path):
    fx = tmp_path / "fx"
    fx.mkdir()
    (fx / "construction_planning.json").write_text(json.dumps({"error": "auth"}))
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"roles": {"construction_planning": {"backend": "remote", "profile": "gpt-oss-120b"}}}))
    p = cli("bench", "--preset", "smoke", "--backend", "mixed", "--config", cfg, "--fixtures", fx, "--out", tmp_path / "o")
    assert p.returncode == 4
    assert json.loads(p.stdout)["passes"] == 0


@pytest.mark.parametrize("args", [["bench", "--trials", "0"], ["run"], ["nosuch"]])
def test_usage_errors(args):
    assert cli(*args).returncode != 0
