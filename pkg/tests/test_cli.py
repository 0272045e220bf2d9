import io
import json
import subprocess
import sys

import pytest

from omegawords.cli import main

BRIDGE = {"carrier": "integers-add", "y": {"rule": "power", "base": 4},
          "coloring": {"kind": "mod", "m": 3}, "lambda_cap": 2}
K3 = '{"kind":"table","values":[1,2,3]}'


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), stdout=out)
    text = out.getvalue()
    assert text.count("\n") == 1
    return code, json.loads(text), text


def test_schreier_member():
    code, data, _ = run("schreier", "member", "--xi", "w", "--set", "3,5,7")
    assert code == 0 and data == {"schema": "omega-words/1", "member": True}
    assert run("schreier", "member", "--xi", "w", "--set", "[3,5]")[1]["member"] is False


def test_schreier_decompose_and_audit():
    _, data, _ = run("schreier", "decompose", "--xi", "w", "--seq", "2,3,5,6,7,8,9,10")
    assert data["blocks"] == [[2, 3], [5, 6, 7, 8, 9]] and data["remainder"] == [10]
    code, data, _ = run("schreier", "audit", "--xi", "w+1", "--bound", "8")
    assert code == 0 and data["violations"] == []


def test_word_commands():
    w = '{"entries":[[2,0]]}'
    _, data, _ = run("word", "tp", "--p", "0", "--word", w)
    assert data["word"] == {"entries": [[2, 0]]}
    _, data, _ = run("word", "tp", "--p", "3", "--word", '{"entries":[[2,0],[5,0]]}', "--dom", '{"kind":"affine","a":1,"b":0}')
    assert data["word"] == {"entries": [[2, 2], [5, 3]]}
    _, data, _ = run("word", "concat", "--w", '{"entries":[[1,1]]}', "--u", '{"entries":[[3,0]]}')
    assert data["word"] == {"entries": [[1, 1], [3, 0]]}
    _, data, _ = run("word", "unlocate", "--word", '{"entries":[[2,1],[4,0]]}')
    assert data["word"] == [1, 1, 1, 0]


def test_extract_commands():
    _, data, _ = run("extract", "ev", "--tuple", '[{"entries":[[1,0]]},{"entries":[[2,0]]}]')
    assert len(data["words"]) == 5
    _, data, _ = run("extract", "e", "--tuple", '[{"entries":[[1,0]]}]', "--dom", '{"kind":"constant","c":2}')
    assert data["words"] == [{"entries": [[1, 1]]}, {"entries": [[1, 2]]}]


def test_family_commands():
    code, data, _ = run("family", "cb-index", "--spec", '{"SchreierHered":"w"}')
    assert code == 0 and data["index"] == "w+1"
    _, data, _ = run("family", "closure", "--star", "--spec", '{"ExplicitFinite":[[{"entries":[[1,0]]}]]}')
    assert data["family"] == {"ExplicitFinite": [[], [{"entries": [[1, 0]]}]]}
    _, data, _ = run("family", "canon", "--xi", "2", "--tuple",
                     '[{"entries":[[1,0]]},{"entries":[[2,0]]},{"entries":[[3,0]]}]')
    assert len(data["blocks"]) == 1 and len(data["remainder"]) == 1


def test_semigroup_commands():
    sg = '{"carrier":"integers-add","y":{"rule":"power","base":3}}'
    _, data, _ = run("semigroup", "g", "--word", '{"entries":[[1,2],[3,1]]}', "--sg", sg, "--dom", '{"kind":"constant","c":2}')
    assert data["value"] == 33
    _, data, _ = run("semigroup", "fs", "--xs", "[1,2,4]", "--sg", sg)
    assert data["values"] == [1, 2, 3, 4, 5, 6, 7]


def test_search_homogeneous():
    code, data, _ = run("search", "homogeneous", "--m", "2", "--N", "4",
                        "--color-var", "dom-size-parity", "--color-const", "dom-size-parity")
    assert code == 0 and data["found"] and data["verified"]
    assert "elapsed" not in data["stats"]
    _, timed, _ = run("search", "homogeneous", "--m", "2", "--N", "4", "--timing",
                      "--color-var", "dom-size-parity", "--color-const", "dom-size-parity")
    assert "elapsed" in timed["stats"]


def test_search_bridge(tmp_path):
    path = tmp_path / "sg.json"
    path.write_text(json.dumps(BRIDGE))
    code, data, _ = run("search", "homogeneous", "--m", "2", "--N", "16", "--dom", K3, "--vdw-bridge", str(path))
    assert code == 0 and data["verified"] and data["bridge"] == {"lambda_cap": 2, "passed": True}


def test_stdout_is_identical_across_worker_counts():
    outs = {
        run("search", "homogeneous", "--m", "3", "--N", "12", "--workers", str(w),
            "--color-var", "dom-size-parity", "--color-const", "min-dom-mod:2")[2]
        for w in (1, 2, 4)
    }
    assert len(outs) == 1


@pytest.mark.parametrize("argv,code,error", [
    (["nope"], 64, "usage"),
    (["schreier", "member", "--xi", "w"], 64, "usage"),
    (["schreier", "member", "--xi", "w+", "--set", "1"], 2, "OrdinalSyntaxError"),
    (["schreier", "member", "--xi", "w", "--set", "a,b"], 2, "ValueError"),
    (["word", "concat", "--w", '{"entries":[[3,1]]}', "--u", '{"entries":[[1,1]]}'], 2, "OrderError"),
    (["family", "cb-index", "--spec", '{"SchreierHered":"w^w"}', "--budget", "w"], 3, "budget"),
    (["family", "cb-index", "--spec", '{"AllTuples":null}'], 2, "OmegaWordsError"),
    (["search", "homogeneous", "--m", "2", "--N", "4"], 64, "usage"),
    (["search", "homogeneous", "--m", "2", "--N", "9", "--cap", "10",
      "--color-var", "dom-size-parity", "--color-const", "dom-size-parity"], 3, "budget"),
])
def test_error_paths(argv, code, error):
    got, data, _ = run(*argv)
    assert got == code
    assert data["schema"] == "omega-words/1" and data["error"] == error and data["detail"]


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"domination": {"kind": "constant", "c": 2}, "budget": "w"}))
    w = '{"entries":[[1,0]]}'
    _, data, _ = run("word", "tp", "--p", "2", "--word", w, "--config", str(cfg))
    assert data["word"] == {"entries": [[1, 2]]}
    _, data, _ = run("word", "tp", "--p", "2", "--word", w, "--config", str(cfg), "--dom", '{"kind":"constant","c":1}')
    assert data["word"] == {"entries": [[1, 1]]}
    code, _, _ = run("family", "cb-index", "--spec", '{"SchreierHered":"w"}', "--config", str(cfg))
    assert code == 3
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"colour": 1}))
    assert run("word", "unlocate", "--word", w, "--config", str(bad))[0] == 2


def test_output_file(tmp_path):
    target = tmp_path / "out.json"
    _, data, text = run("schreier", "member", "--xi", "2", "--set", "4,9", "--output", str(target))
    assert target.read_text() == text


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "omegawords", "schreier", "member", "--xi", "w", "--set", "3,5,7"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["member"] is True
