import pytest

from app.main import run
from core.algebra.scalars import RATIONALS, BaseField
from infrastructure.formats.presentation import format_presentation
from services.skeletal import product_presentation
from tests.corpus import cyclic_presentation

TREFOIL = "strands=2; word=s1 s1 s1; name=trefoil"
HOPF = "strands=2; word=s1 s1; name=hopf"


@pytest.fixture
def z2_f2_file(tmp_path):
    path = tmp_path / "z2.txt"
    path.write_text(format_presentation(cyclic_presentation(2, BaseField(2))), encoding="utf-8")
    return str(path)


@pytest.fixture
def z2_q_file(tmp_path):
    path = tmp_path / "z2q.txt"
    path.write_text(format_presentation(cyclic_presentation(2, RATIONALS)), encoding="utf-8")
    return str(path)


def _lines(capsys):
    return capsys.readouterr().out.strip().splitlines()


def test_eval_unknot(capsys):
    assert run(["eval", "--data", "kauffman:2", "--braid", "strands=1"]) == 0
    lines = _lines(capsys)
    assert lines[0] == "# field=Q order=2"
    assert lines[1].endswith("[-2, 0, -4]")


def test_eval_in_machine_mode(capsys):
    assert run(["--output", "machine", "eval", "--data", "kauffman:2", "--braid", "strands=1; name=unknot"]) == 0
    assert _lines(capsys)[1:] == ["unknot 0 -2", "unknot 1 0", "unknot 2 -4"]


def test_eval_normalized(capsys):
    assert run(["eval", "--data", "kauffman:2", "--braid", "strands=1", "--normalize"]) == 0
    assert _lines(capsys)[1].endswith("[1, 0, 0]")


def test_eval_open_morse_diagram_prints_a_matrix(tmp_path, capsys):
    path = tmp_path / "cup.txt"
    path.write_text("CupL 0\n", encoding="utf-8")
    assert run(["eval", "--data", "kauffman:1", "--morse", str(path)]) == 0
    lines = _lines(capsys)
    assert lines[1] == "4 1"
    assert len(lines) == 6


def test_coeffs_table(capsys):
    assert run(["--output", "machine", "coeffs", "--data", "kauffman:1", "--braid", HOPF]) == 0
    lines = _lines(capsys)
    assert [line.split()[:2] for line in lines[1:]] == [["hopf", "0"], ["hopf", "1"]]


def test_axioms_pass_for_builtin_data(capsys):
    assert run(["axioms", "--data", "kauffman:1"]) == 0
    assert "ybe" in capsys.readouterr().out
    assert run(["--order", "1", "axioms", "--data", "symmetric:2"]) == 0
    assert _lines(capsys)[0] == "# field=Q order=1"


def test_verify_type_sweep(capsys):
    assert run(["--output", "machine", "verify-type", "--data", "kauffman:1", "--braid", TREFOIL,
                "--max-singular", "2"]) == 0
    rows = _lines(capsys)[1:]
    assert len(rows) == 6
    assert all(row.split()[3] == "True" for row in rows)


def test_check_disjoint(capsys):
    assert run(["check-disjoint", "--data", "kauffman:2", "--left", TREFOIL, "--right", HOPF]) == 0
    assert "components: 1 + 2 -> 3" in capsys.readouterr().out


def test_cohomology_of_z2_over_f2(z2_f2_file, capsys):
    assert run(["--output", "machine", "cohomology", "--presentation", z2_f2_file, "1", "2", "3"]) == 0
    lines = _lines(capsys)
    assert lines[0].startswith("# field=Fp:2")
    assert [(row.split()[0], row.split()[-1]) for row in lines[1:]] == [("1", "1"), ("2", "1"), ("3", "1")]


def test_cohomology_rejects_unsupported_degrees(z2_f2_file, capsys):
    assert run(["cohomology", "--presentation", z2_f2_file, "5"]) == 2
    assert "error:" in capsys.readouterr().err


def test_missing_file_is_an_input_error(tmp_path, capsys):
    assert run(["cohomology", "--presentation", str(tmp_path / "absent.txt"), "1"]) == 2
    assert "File not found" in capsys.readouterr().err


def test_configured_order_must_match_the_data(capsys):
    assert run(["--order", "3", "eval", "--data", "kauffman:2", "--braid", "strands=1"]) == 2
    assert run(["--field", "Fp:3", "eval", "--data", "kauffman:2", "--braid", "strands=1"]) == 2


def test_bad_arguments_exit_with_usage_error():
    assert run([]) == 2
    assert run(["eval", "--data", "kauffman:2"]) == 2


def test_extend_writes_the_series(tmp_path, z2_q_file, capsys):
    deformation = tmp_path / "def.txt"
    deformation.write_text("field Q\norder 1\nterm 1\ng g -> 1\n", encoding="utf-8")
    out = tmp_path / "out" / "extended.txt"
    assert run(["extend", "--presentation", z2_q_file, "--deformation", str(deformation),
                "--target", "3", "--write", str(out)]) == 0
    assert _lines(capsys) == ["# field=Q order=3", f"wrote {out}"]
    assert out.read_text(encoding="utf-8").startswith("field Q\norder 3\n")


def test_extend_reports_an_obstruction(tmp_path, capsys):
    z2 = cyclic_presentation(2, BaseField(2))
    presentation = tmp_path / "klein.txt"
    presentation.write_text(format_presentation(product_presentation(z2, z2)), encoding="utf-8")
    entries = [f"{a} {b} -> 1" for a in ("(g,e)", "(g,g)") for b in ("(e,g)", "(g,g)")]
    deformation = tmp_path / "cross.txt"
    deformation.write_text("field Fp:2\norder 1\nterm 1\n" + "\n".join(entries) + "\n", encoding="utf-8")
    assert run(["extend", "--presentation", str(presentation), "--deformation", str(deformation),
                "--target", "2"]) == 1
    assert "obstructed at order 2" in capsys.readouterr().out


def test_braiding_roundtrip_enumerates(tmp_path, capsys):
    path = tmp_path / "z3.txt"
    path.write_text(format_presentation(cyclic_presentation(3, BaseField(7))), encoding="utf-8")
    assert run(["--output", "machine", "braiding-roundtrip", "--presentation", str(path)]) == 0
    rows = _lines(capsys)[1:]
    assert len(rows) == 27
    assert all(row.endswith("True") for row in rows)
