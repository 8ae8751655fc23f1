import json

import pytest

from dptree import io as dio
from dptree.cli import main
from dptree.curves import j_curve

from conftest import make_j, make_two_roots


@pytest.fixture
def j_file(tmp_path):
    path = tmp_path / "j.json"
    path.write_text(json.dumps(dio.tree_to_dict(make_j())))
    return str(path)


@pytest.fixture
def e_file(tmp_path):
    path = tmp_path / "e.json"
    path.write_text(
        json.dumps({"vertices": [{"id": "v", "delta": 1}], "edges": [], "pairing": []})
    )
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_invariant_j(capsys, j_file):
    code, out, _ = run(capsys, "invariant", j_file)
    assert code == 0
    assert json.loads(out) == {"coefficients": {"3": 1}}


def test_validate_ok(capsys, j_file):
    code, out, _ = run(capsys, "validate", j_file)
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_validate_two_vertex_exit_2(capsys, tmp_path):
    path = tmp_path / "two.json"
    path.write_text(
        json.dumps(
            {
                "vertices": [{"id": "a", "delta": 1}, {"id": "b", "delta": 3}],
                "edges": [{"id": "e", "tail": "b", "head": "a"}],
                "pairing": [],
            }
        )
    )
    code, out, _ = run(capsys, "validate", str(path))
    assert code == 2
    payload = json.loads(out)
    assert any(v["rule"] == "pairing_covers" for v in payload["violations"])


def test_bad_json_exit_1(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{nope")
    code, _, err = run(capsys, "validate", str(path))
    assert code == 1
    assert "error" in err


def test_unknown_subcommand_exit_1(capsys):
    assert main(["frobnicate"]) == 1


def test_negate_roundtrip(capsys, j_file):
    code, out, _ = run(capsys, "negate", j_file)
    assert code == 0
    tree = dio.tree_from_dict(json.loads(out))
    assert sorted(tree.deltas) == [-3, -1, -1]


def test_emitted_tree_reparses_isomorphic(capsys, j_file):
    from dptree import isomorphic

    code, out, _ = run(capsys, "apply", j_file, _moves_file(capsys, j_file))
    assert code == 0
    tree = dio.tree_from_dict(json.loads(out))
    again = dio.tree_from_dict(json.loads(json.dumps(dio.tree_to_dict(tree))))
    assert isomorphic(tree, again)


def _moves_file(capsys, j_file):
    import tempfile, os

    payload = {
        "type": "h_move",
        "pair": ["a", "b"],
        "side1": {"kind": "parallel", "reattach": []},
        "side2": {"kind": "parallel", "reattach": []},
    }
    fd, path = tempfile.mkstemp(suffix=".json")
    with os.fdopen(fd, "w") as fh:
        json.dump(payload, fh)
    return path


def test_moves_and_apply_cycle(capsys, j_file, tmp_path):
    code, out, _ = run(capsys, "moves", j_file)
    assert code == 0
    moves = json.loads(out)
    assert any(m["type"] == "h_move" for m in moves)
    mv = tmp_path / "m.json"
    mv.write_text(json.dumps(moves[0]))
    code, out, _ = run(capsys, "apply", j_file, str(mv))
    assert code == 0


def test_apply_inapplicable_exit_2(capsys, e_file, tmp_path):
    mv = tmp_path / "m.json"
    mv.write_text(
        json.dumps({"type": "e_birth", "v1": "v", "v2": "v", "d1": 3, "d2": -1})
    )
    code, _, err = run(capsys, "apply", e_file, str(mv))
    assert code == 2


def test_reach_certified(capsys, e_file, j_file):
    code, out, _ = run(capsys, "reach", e_file, j_file)
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "certified_unreachable"
    assert payload["source_invariant"] == {"coefficients": {"1": 1}}
    assert payload["target_invariant"] == {"coefficients": {"3": 1}}


def test_enum_output(capsys):
    code, out, _ = run(capsys, "enum", "1", "1")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 2
    for line in lines:
        hexcode, payload = line.split("\t")
        int(hexcode, 16)
        dio.tree_from_dict(json.loads(payload))


def test_realize_cli(capsys):
    code, out, err = run(capsys, "realize", "--coeff", "3:1")
    assert code == 0
    tree = dio.tree_from_dict(json.loads(out))
    assert sorted(tree.deltas) == [1, 1, 3]
    assert "3:1" in err


def test_realize_rejects_bad_vector(capsys):
    code, _, _ = run(capsys, "realize", "--coeff", "2:1")
    assert code == 2


def test_from_curve(capsys, tmp_path):
    path = tmp_path / "curve.json"
    path.write_text(json.dumps(dio.curve_to_dict(j_curve())))
    code, out, _ = run(capsys, "from-curve", str(path))
    assert code == 0
    tree = dio.tree_from_dict(json.loads(out))
    assert sorted(tree.deltas) == [1, 1, 3]
    code, out, _ = run(capsys, "from-curve", str(path), "--flip-orientation")
    tree = dio.tree_from_dict(json.loads(out))
    assert sorted(tree.deltas) == [-3, -1, -1]


def test_dot_pair_colors(capsys, tmp_path):
    tree = make_two_roots(3, 1)
    path = tmp_path / "t.json"
    path.write_text(json.dumps(dio.tree_to_dict(tree)))
    code, out, _ = run(capsys, "dot", str(path))
    assert code == 0
    colors = [
        line.split('color="')[1].split('"')[0]
        for line in out.splitlines()
        if 'color="' in line
    ]
    assert len(colors) == tree.edge_count
    assert len(set(colors)) == tree.edge_count // 2


def test_sum_cli(capsys, j_file, tmp_path):
    code, out, err = run(capsys, "sum", j_file, "w1", j_file, "w2")
    assert code == 0
    tree = dio.tree_from_dict(json.loads(out))
    assert tree.vertex_count == 5
    relabel = json.loads(err.strip().splitlines()[-1])
    assert "vertices" in relabel


def test_code_subcommand(capsys, j_file):
    code, out, _ = run(capsys, "code", j_file)
    assert code == 0
    int(out.strip(), 16)
