import json
from pathlib import Path

import pytest

from cstar.cli import main
from cstar.degeneration import hirzebruch_diagram
from cstar.toric_core import canonical_form

GOLDEN = Path(__file__).parent / "golden"
M11 = {
    "slices": [{"point": "0", "vertices": ["-1/2", "0"]}, {"point": "inf", "vertices": ["0", "1"]}],
    "minus": "circ",
    "plus": "circ",
}


def run(capsys, *args):
    with pytest.raises(SystemExit) as exc:
        main([str(a) for a in args])
    out, err = capsys.readouterr()
    return exc.value.code, out, err


def put(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return p


def test_validate_ok_and_failure(tmp_path, capsys):
    code, out, _ = run(capsys, "validate", "--in", put(tmp_path, "m.json", M11))
    assert code == 0 and json.loads(out)["ok"]
    bad = {"slices": [{"point": "0", "vertices": ["0", "1"]}], "minus": "circ", "plus": "bullet"}
    code, out, err = run(capsys, "validate", "--in", put(tmp_path, "bad.json", bad))
    assert code == 1
    assert "degree condition" in out + err


def test_malformed_input_exits_2(tmp_path, capsys):
    code, _, err = run(capsys, "validate", "--in", put(tmp_path, "x.json", "{not json"))
    assert code == 2 and json.loads(err)["error"] == "parse_error"
    code, _, _ = run(capsys, "validate", "--in", put(tmp_path, "y.json", {"toric": [1, "a"]}))
    assert code == 2
    code, _, _ = run(capsys, "validate", "--in", put(tmp_path, "z.json", [1, 2]))
    assert code == 2
    code, _, _ = run(capsys, "connect", "--a", put(tmp_path, "a.json", {"toric": [0, 0, 0, 0]}))
    assert code == 2


def test_domain_error_exits_1(tmp_path, capsys):
    a = put(tmp_path, "a.json", {"toric": [0, 0, 0, 0]})
    b = put(tmp_path, "b.json", {"toric": [0, 1, 0, -1]})
    code, _, err = run(capsys, "connect", "--a", a, "--b", b)
    assert code == 1 and json.loads(err)["error"] == "rank_too_small"
    code, _, err = run(capsys, "fan", "--in", put(tmp_path, "n.json", {"toric": [1, 1, 1]}))
    assert code == 1 and json.loads(err)["error"] == "not_a_surface"


def test_smooth_and_fan(tmp_path, capsys):
    m = put(tmp_path, "m.json", M11)
    code, out, _ = run(capsys, "smooth", "--in", m)
    assert code == 0 and json.loads(out)["smooth"] is True
    code, out, _ = run(capsys, "fan", "--in", m)
    assert code == 0 and canonical_form(json.loads(out)["b"]) == canonical_form((0, 1, 0, -1))


def test_degenerate_diagram_reaches_f3(tmp_path, capsys):
    d = put(tmp_path, "d.json", hirzebruch_diagram(1, 1).to_dict())
    code, out, _ = run(capsys, "degenerate", "--in", d)
    data = json.loads(out)
    assert code == 0 and canonical_form(data["toric"]) == canonical_form((0, 3, 0, -3))


def test_connect_with_target_system(tmp_path, capsys):
    a = put(tmp_path, "a.json", {"toric": [1, 1, 1, 0, 0]})
    b = put(tmp_path, "b.json", {"toric": [-1, 0, 2, 1, 1]})
    code, out, _ = run(capsys, "system", "target", "--a", a, "--b", b)
    assert code == 0
    sysdata = json.loads(out)
    assert sysdata["tv"] == [-1, 0, 2, 1, 1]
    s = put(tmp_path, "s.json", {"surface": sysdata["surface"], "entries": sysdata["entries"]})
    code, out, _ = run(capsys, "connect", "--a", a, "--b", b, "--system", s, "--shorten")
    data = json.loads(out)
    assert code == 0 and data["tv_constant"] is True
    assert all(x["tv"] == [-1, 0, 2, 1, 1] for x in data["systems"])


def test_transport_catalog(tmp_path, capsys):
    d = put(tmp_path, "d.json", hirzebruch_diagram(1, 1).to_dict())
    s = put(tmp_path, "s.json", {"catalog": {"r": 1, "i": 2}})
    code, out, _ = run(capsys, "transport", "--in", d, "--system", s)
    data = json.loads(out)
    assert code == 0
    assert len(data["matrix"]) == 2


def test_system_commands(tmp_path, capsys):
    s = put(tmp_path, "s.json", {"catalog": {"r": 1, "i": 0}})
    code, out, _ = run(capsys, "system", "tv", "--system", s)
    assert code == 0 and json.loads(out)["tv"] == [0, -1, 0, 1]
    code, out, _ = run(capsys, "system", "mutate", "--system", s, "--power", 1)
    assert code == 0
    code, out, _ = run(capsys, "system", "tame", "--system", s)
    assert code == 0
    code, out, _ = run(capsys, "system", "augment", "--system", s, "--ray", 0, "--position", 1)
    assert code == 0 and len(json.loads(out)["tv"]) == 5
    code, out, _ = run(capsys, "system", "catalog", "--r", 1, "--bound", 3)
    assert code == 0
    d = put(tmp_path, "d.json", hirzebruch_diagram(1, 1).to_dict())
    code, out, _ = run(capsys, "system", "compat", "--system", s, "--diagram", d)
    assert code == 0


def test_quiver_commands(capsys):
    code, out, _ = run(capsys, "quiver", "--r", 1, "--alpha", 1, "--i", 2)
    data = json.loads(out)
    assert code == 0 and data["general"]["hop_dims"] == [2, 7, 2]
    code, out, _ = run(capsys, "quiver", "--r", 1, "--alpha", 1, "--i", 2, "--format", "dot")
    assert code == 0 and out.startswith("digraph")
    code, _, _ = run(capsys, "quiver", "--r", 1, "--alpha", 3, "--i", 2)
    assert code == 1


def test_render_is_deterministic_and_matches_golden(tmp_path, capsys):
    d = put(tmp_path, "d.json", hirzebruch_diagram(1, 1).to_dict())
    _, first, _ = run(capsys, "render", "--in", d)
    _, second, _ = run(capsys, "render", "--in", d)
    assert first == second
    assert first == (GOLDEN / "m11_diagram.svg").read_text()
    m = put(tmp_path, "m.json", M11)
    _, svg, _ = run(capsys, "render", "--in", m)
    assert svg == (GOLDEN / "m11.svg").read_text()


def test_render_writes_file(tmp_path, capsys):
    m = put(tmp_path, "m.json", M11)
    out = tmp_path / "m.svg"
    code, _, _ = run(capsys, "render", "--in", m, "--out", out)
    assert code == 0 and out.read_text().startswith("<svg")


def test_corpus_is_seeded(capsys):
    _, a, _ = run(capsys, "corpus", "--seed", 3, "--count", 5)
    _, b, _ = run(capsys, "corpus", "--seed", 3, "--count", 5)
    assert a == b and len(json.loads(a)) >= 5
