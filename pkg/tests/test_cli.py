"""Command-line surface: outputs, exit codes and determinism."""
import json

import pytest

from data.documents import hitting_instance_to_text, parse_family, serialize_family
from data.models.schemas import Halfplane
import main
from main import run_cli
from conftest import family_of


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def _run(capsys, *argv):
    code = run_cli(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def five_path(tmp_path, five_segments):
    return _write(tmp_path, "five.json", serialize_family(five_segments.family))


@pytest.fixture
def quad_path(tmp_path, convex_quad):
    return _write(tmp_path, "quad.json", serialize_family(convex_quad))


def test_gen_prints_certified_family(capsys):
    code, out, _ = _run(capsys, "gen", "--name", "five-segments")
    assert code == 0
    document = json.loads(out)
    assert document["certificate"]["shattered"] == "11111"
    assert document["certificate"]["vc_dimension"] == 5
    assert document["certificate"]["provenance"]["name"] == "five-segments"
    assert parse_family(out).n == 5


def test_gen_lift(capsys):
    code, out, _ = _run(capsys, "gen", "--name", "unbounded", "--n", "3", "--lift")
    assert code == 0
    document = json.loads(out)
    assert document["ambient"] == "lifted-3d"
    assert [b["level"] for b in document["bodies"]] == [0, 1, 2]
    assert document["certificate"]["lift"]["shattered"] == "111"


def test_gen_cap(capsys):
    code, _, err = _run(capsys, "gen", "--name", "unbounded", "--n", "9")
    assert code == 2
    assert '"error": "cap_exceeded"' in err


def test_enumerate(capsys, quad_path):
    code, out, _ = _run(capsys, "enumerate", "--input", quad_path)
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 14
    assert lines[0] == "0000" and lines[-1] == "1111"
    assert "0101" not in lines


def test_enumerate_with_configurations(capsys, quad_path):
    code, out, _ = _run(capsys, "enumerate", "--input", quad_path, "--configurations")
    assert code == 0
    document = json.loads(out)
    assert document["command"] == "enumerate"
    records = document["result"]["edges"]
    assert len(records) == 14
    assert records[0] == {"subset": "0000", "configuration": None}
    assert records[-1] == {"subset": "1111", "configuration": None}
    for record in records[1:-1]:
        assert record["configuration"]["case"].startswith("head-")
        assert len(record["configuration"]["tail"]) == 2


def test_vc(capsys, five_path):
    code, out, _ = _run(capsys, "vc", "--input", five_path)
    assert code == 0
    result = json.loads(out)
    assert result["command"] == "vc"
    assert result["result"] == {"dim": 5, "witness": "11111"}
    assert len(result["input_digest"]) == 64


def test_shatter(capsys, quad_path):
    code, out, _ = _run(capsys, "shatter", "--input", quad_path)
    assert json.loads(out)["result"] == {"shattered": False, "missing": "0101"}
    code, out, _ = _run(capsys, "shatter", "--input", quad_path, "--subset", "0111")
    assert json.loads(out)["result"]["shattered"] is True


def test_bad_subset(capsys, quad_path):
    code, _, err = _run(capsys, "shatter", "--input", quad_path, "--subset", "012")
    assert code == 2
    assert '"error": "invalid_parameter"' in err


def test_collinear_input(capsys, tmp_path, collinear_points):
    path = _write(tmp_path, "line.json", serialize_family(collinear_points))
    code, out, err = _run(capsys, "enumerate", "--input", path)
    assert code == 2
    assert out == ""
    assert '"error": "general_position_violation"' in err

    code, out, _ = _run(capsys, "enumerate", "--input", path, "--perturb")
    assert code == 0
    assert len(out.splitlines()) == 8


def test_malformed_document(capsys, tmp_path):
    code, _, err = _run(capsys, "vc", "--input", _write(tmp_path, "bad.json", "{"))
    assert code == 2
    assert '"error": "document_syntax_error"' in err


def test_missing_file(capsys, tmp_path):
    code, _, _ = _run(capsys, "vc", "--input", str(tmp_path / "absent.json"))
    assert code == 2


def test_net_is_deterministic(capsys, five_path):
    first = _run(capsys, "net", "--input", five_path, "--eps", "1/2", "--seed", "3")
    second = _run(capsys, "net", "--input", five_path, "--eps", "1/2", "--seed", "3")
    assert first[0] == 0
    assert first[1] == second[1]
    assert json.loads(first[1])["result"]["d"] == 5


def test_net_invalid_eps(capsys, five_path):
    code, _, err = _run(capsys, "net", "--input", five_path, "--eps", "3/2")
    assert code == 2
    assert '"error": "invalid_eps"' in err
    code, _, _ = _run(capsys, "net", "--input", five_path)
    assert code == 2


def test_approx(capsys, five_path):
    code, out, _ = _run(capsys, "approx", "--input", five_path, "--eps", "1/10")
    assert code == 0
    assert json.loads(out)["result"]["discrepancy"] == "0"


def test_hitset_exit_codes(capsys, tmp_path):
    segments = family_of([(0, 0), (1, 0)], [(10, 0), (11, 0)], [(0, 10), (1, 10)])
    halfplanes = [Halfplane(1, 1, 2), Halfplane(-1, 0, -9), Halfplane(0, -1, -9)]
    path = _write(tmp_path, "hit.json", hitting_instance_to_text(segments, halfplanes))

    code, out, _ = _run(capsys, "hitset", "--input", path, "--exact-cap", "3")
    assert code == 0
    result = json.loads(out)["result"]
    assert result["solution"] == "111"
    assert result["optimum"] == 3

    code, _, _ = _run(capsys, "hitset", "--input", path, "--exact-cap", "2")
    assert code == 3


def test_hitset_exact_cap_from_settings(monkeypatch, capsys, tmp_path):
    segments = family_of([(0, 0), (1, 0)], [(10, 0), (11, 0)])
    halfplanes = [Halfplane(1, 1, 2), Halfplane(-1, 0, -9)]
    path = _write(tmp_path, "hit.json", hitting_instance_to_text(segments, halfplanes))

    code, out, _ = _run(capsys, "hitset", "--input", path)
    assert code == 0
    assert json.loads(out)["result"]["optimum"] is None

    monkeypatch.setattr(main.settings, "exact_cap_default", 2)
    code, out, _ = _run(capsys, "hitset", "--input", path)
    assert code == 0
    assert json.loads(out)["result"]["optimum"] == 2


def test_hitset_infeasible(capsys, tmp_path):
    path = _write(tmp_path, "hit.json",
                  hitting_instance_to_text(family_of([(0, 0), (1, 0)]), [Halfplane(0, 1, -5)]))
    code, _, err = _run(capsys, "hitset", "--input", path)
    assert code == 2
    assert '"error": "infeasible_instance"' in err


def test_search_absent(capsys):
    code, out, _ = _run(capsys, "search", "--n", "4", "--kind", "disjoint-convex", "--budget", "10")
    assert code == 3
    assert json.loads(out)["result"]["found"] is False


def test_render_to_file(capsys, tmp_path, quad_path):
    target = tmp_path / "quad.svg"
    code, out, _ = _run(capsys, "render", "--input", quad_path, "--witnesses",
                        "--output", str(target))
    assert code == 0
    assert out == ""
    assert target.read_text(encoding="utf-8").startswith("<svg")


def test_check_bounds_reads_certificate(capsys, tmp_path):
    _, generated, _ = _run(capsys, "gen", "--name", "four-one-intersection")
    path = _write(tmp_path, "four.json", generated)
    code, out, _ = _run(capsys, "check-bounds", "--input", path)
    assert code == 0
    result = json.loads(out)["result"]
    assert result["ok"] is True
    assert result["shattered"] is True
    assert result["intersections"] == 1


def test_battery(capsys):
    code, out, _ = _run(capsys, "battery", "--kind", "tangent-bound", "--trials", "3")
    assert code == 0
    payload = json.loads(out)["result"]
    assert payload["rows"] == 3
    assert payload["kind"] == "tangent-bound"
