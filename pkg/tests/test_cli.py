import io
import subprocess
import sys
from pathlib import Path

import pytest

from symdyn import fischer_cover, graphs_isomorphic, krieger_cover
from symdyn.catalog import BUNDLED, even_shift, golden_mean
from symdyn.cli import main
from symdyn.formats import (
    SpecFileError,
    format_block_map,
    format_graph,
    format_spec,
    parse_block_maps,
    parse_spec,
    read_dot,
    to_dot,
)
from symdyn.shannon import LabelledGraph
from symdyn.subshift import Sofic

SPECS = Path(__file__).resolve().parent.parent / "specs"


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


# spec files

def test_parse_even_shift_spec():
    spec = parse_spec((SPECS / "even_shift.spec").read_text())
    assert spec == even_shift()


def test_bundled_spec_files_match_catalog():
    for name, make in BUNDLED.items():
        path = SPECS / f"{name}.spec"
        assert parse_spec(path.read_text()) == make(), name


def test_format_spec_round_trip():
    for make in BUNDLED.values():
        spec = make()
        assert parse_spec(format_spec(spec)) == spec


def test_unknown_key_reports_line():
    text = "type = sft\nalphabet = 0 1\ncolour = red\n"
    with pytest.raises(SpecFileError, match="line 3: unknown key 'colour'"):
        parse_spec(text)


def test_duplicate_key_rejected():
    with pytest.raises(SpecFileError, match="line 2"):
        parse_spec("type = full\ntype = sft\nalphabet = 0 1\n")


def test_bad_edge_reports_line():
    text = "type = sofic\nalphabet = 0 1\nvertices = A\nedge = A 2 A\n"
    with pytest.raises(SpecFileError, match="line 4"):
        parse_spec(text)


def test_key_for_wrong_type_rejected():
    with pytest.raises(SpecFileError, match="not valid for type sft"):
        parse_spec("type = sft\nalphabet = 0 1\nvertices = A\n")


def test_comments_and_blank_lines_ignored():
    spec = parse_spec("# header\n\ntype = sft   # trailing\nalphabet = 0 1\nforbidden = 11\n")
    assert spec == golden_mean()


def test_block_map_file_round_trip():
    text = (SPECS / "golden_mean_2block.map").read_text()
    forward, backward = parse_block_maps(text, golden_mean().alphabet)
    assert forward.radius == 1 and backward.radius == 0
    again, _ = parse_block_maps(format_block_map(forward), golden_mean().alphabet)
    assert again.table == forward.table


def test_block_map_duplicate_block():
    with pytest.raises(SpecFileError, match="line 3"):
        parse_block_maps("radius = 0\n0 -> 0\n0 -> 1\n", golden_mean().alphabet)


# graph emitters

def test_dot_round_trip_is_isomorphic():
    g = fischer_cover(even_shift()).graph
    back = read_dot(to_dot(g))
    assert (back.vertices, back.edges) == (g.vertices, g.edges)
    assert graphs_isomorphic(g, back).yes


def test_dot_edges_sorted():
    g = krieger_cover(even_shift()).graph
    edge_lines = [ln for ln in to_dot(g).splitlines() if "->" in ln]
    assert edge_lines == [f'  "{s}" -> "{d}" [label="{a}"];' for s, a, d in g.sorted_edges()]


def test_dot_quotes_odd_names():
    g = LabelledGraph(golden_mean().alphabet, ('a"b', "c"), {('a"b', "0", "c"), ("c", "1", 'a"b')})
    assert read_dot(to_dot(g)) == g


def test_text_graph_round_trip():
    g = krieger_cover(even_shift()).graph
    spec = parse_spec(format_graph(g))
    assert isinstance(spec, Sofic)
    assert spec.graph.edges == g.edges


# commands

def test_check_even_shift_shannon():
    code, out = run("check", SPECS / "even_shift.spec", "--shannon")
    assert code == 0
    assert out == "right-resolving: yes\n"


def test_check_duplicate_label_strict():
    code, out = run("check", SPECS / "duplicate_label.spec", "--shannon", "--strict")
    assert out == "right-resolving: no, witness (A,0)\n"
    assert code == 1


def test_check_chain_trims_to_empty():
    code, out = run("check", SPECS / "chain.spec", "--trim")
    assert out == "trim: trimmed to empty\n"
    assert code == 0


def test_check_all_by_default():
    code, out = run("check", SPECS / "even_shift.spec")
    assert out.splitlines() == ["right-resolving: yes", "trim: kept 2 of 2 vertices", "irreducible: yes"]


def test_cover_even_shift_krieger_and_fischer(tmp_path):
    code, out = run("cover", SPECS / "even_shift.spec", "--kind", "krieger")
    assert code == 0
    assert len(read_dot(out)) == 3
    code, out = run("cover", SPECS / "even_shift.spec", "--kind", "fischer")
    assert len(read_dot(out)) == 2


def test_cover_full_shift_one_state():
    _, out = run("cover", SPECS / "full_shift.spec")
    assert len(read_dot(out)) == 1


def test_cover_writes_files(tmp_path):
    prefix = tmp_path / "even"
    code, out = run("cover", SPECS / "even_shift.spec", "--kind", "fischer", "--output", prefix)
    assert code == 0
    assert out.startswith("states: 2\n")
    dot = (tmp_path / "even.dot").read_text()
    meta = (tmp_path / "even.states.csv").read_text().splitlines()
    assert len(read_dot(dot)) == 2
    assert meta[0] == "state,meta"
    assert len(meta) == 3


def test_cover_text_output_reparses():
    _, out = run("cover", SPECS / "golden_mean.spec", "--kind", "higher-block", "--k", "2", "--out", "text")
    assert parse_spec(out).graph.vertices == ("00", "01", "10")


def test_cover_determinize():
    code, out = run("cover", SPECS / "duplicate_label.spec", "--kind", "determinize")
    assert code == 0
    assert any("{A,B}" in ln for ln in out.splitlines())


def test_sync_even_shift():
    code, out = run("sync", SPECS / "even_shift.spec", "--max-len", "2")
    rows = out.splitlines()
    assert rows[0] == "word,kind,verdict,depths,witness"
    assert [r.split(",")[0] for r in rows[1:]] == ["0", "1", "00", "01", "10", "11"]
    assert rows[1] == "0,synchro,no,6,1 1"


def test_sync_full_shift_all_yes():
    _, out = run("sync", SPECS / "full_shift.spec", "--max-len", "3")
    assert all(",yes" in r for r in out.splitlines()[1:])


def test_sync_golden_mean_one_symbol():
    _, out = run("sync", SPECS / "golden_mean.spec", "--max-len", "1")
    assert out.splitlines()[1:] == ["0,synchro,yes(exact),6,", "1,synchro,yes(exact),6,"]


def test_sync_s_kind_with_depths():
    _, out = run("sync", SPECS / "even_shift.spec", "--max-len", "1", "--kind", "s", "--depths", "3,3,3")
    assert out.splitlines()[1:] == ["0,s_synchro,no,3/3/3,1", "1,s_synchro,yes(depth=3),3/3/3,"]


def test_sync_bad_depths_is_usage_error():
    code, _ = run("sync", SPECS / "even_shift.spec", "--depths", "a,b")
    assert code == 2


def test_growth_curves():
    _, out = run("growth", SPECS / "golden_mean.spec", "--m-max", "4")
    assert out.splitlines() == ["m,count", "1,2", "2,2", "3,2", "4,2"]
    _, out = run("growth", SPECS / "even_shift.spec", "--m-max", "10")
    assert [ln.split(",")[1] for ln in out.splitlines()[2:]] == ["3"] * 9


def test_growth_coded_has_caveat():
    _, out = run("growth", SPECS / "coded_pairs.spec", "--m-max", "4")
    lines = out.splitlines()
    assert lines[0].startswith("# coded system")
    assert "m,count" in lines


def test_code_identity_apply():
    code, out = run("code", SPECS / "golden_mean.spec", "apply", "--word", "0101")
    assert (code, out) == (0, "0101\n")


def test_code_map_file_apply():
    _, out = run("code", SPECS / "golden_mean.spec", "apply",
                 "--map", SPECS / "golden_mean_2block.map", "--word", "0100")
    assert out == "01.10\n"


def test_code_isomorphism_check():
    code, out = run("code", SPECS / "golden_mean.spec", "theorem1", "--higher-block", "2")
    assert (code, out) == (0, "isomorphic: yes\n")


def test_code_isomorphism_check_with_map_file():
    _, out = run("code", SPECS / "golden_mean.spec", "theorem1",
                 "--map", SPECS / "golden_mean_2block.map")
    assert out == "isomorphic: yes\n"


def test_code_s_transport_even_shift():
    code, out = run("code", SPECS / "even_shift.spec", "transport-l4",
                    "--higher-block", "2", "--word", "1", "--d", "1")
    assert code == 0
    assert "image verdict: yes(depth=4)" in out.splitlines()


def test_code_a_transport_finds_return_word():
    _, out = run("code", SPECS / "even_shift.spec", "transport-l6", "--higher-block", "2", "--word", "1")
    assert "construction: 111111111" in out


def test_code_missing_word_is_usage_error():
    code, _ = run("code", SPECS / "even_shift.spec", "apply")
    assert code == 2


def test_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.spec"
    bad.write_text("type = sft\nalphabet = 0 1\nbogus = 1\n")
    code, _ = run("check", bad)
    assert code == 2


def test_missing_file_exit_code(tmp_path):
    code, _ = run("growth", tmp_path / "nope.spec")
    assert code == 2


def test_unknown_strict_exit_code():
    code, _ = run("cover", SPECS / "even_sft9.spec", "--kind", "krieger", "--strict")
    assert code == 3


def test_output_is_deterministic():
    first = run("cover", SPECS / "even_shift.spec", "--kind", "krieger")
    second = run("cover", SPECS / "even_shift.spec", "--kind", "krieger")
    assert first == second


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "symdyn.cli", "growth",
                           str(SPECS / "full_shift.spec"), "--m-max", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "m,count\n1,1\n2,1\n"


def test_cover_output_creates_missing_directory(tmp_path):
    prefix = tmp_path / "build" / "even"
    code, out = run("cover", SPECS / "even_shift.spec", "--kind", "fischer", "--output", prefix)
    assert code == 0
    assert out.splitlines()[0] == "states: 2"
    assert len(read_dot((tmp_path / "build" / "even.dot").read_text())) == 2
    assert (tmp_path / "build" / "even.states.csv").exists()
