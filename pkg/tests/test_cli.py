"""Command-line tests."""

from pathlib import Path

import orjson
import pytest

from hyperbisect.cli import build_parser, run
from hyperbisect.data import FamilyDocument, write_json
from hyperbisect.measures import DiscreteMeasure, MeasureFamily, lower_bound_family


@pytest.fixture
def square_file(tmp_path: Path, square_corners: MeasureFamily) -> Path:
    return write_json(FamilyDocument.from_family(square_corners), tmp_path / "square.json")


def _read(path: Path) -> dict:
    return orjson.loads(path.read_bytes())


def test_count_prints_partitions_and_parity(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["count", "--n", "2", "--d", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["partitions: 3", "parity: odd (2-adic valuation 0)", "max_measures: 3"]


def test_count_even_case(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["count", "--n", "3", "--d", "2"]) == 0
    assert "parity: even (2-adic valuation 1)" in capsys.readouterr().out


def test_solve_then_verify(
    tmp_path: Path, square_file: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    certificate = tmp_path / "cert.json"
    code = run(
        [
            "solve",
            "--input",
            str(square_file),
            "--hyperplanes",
            "2",
            "--mode",
            "separated",
            "--out",
            str(certificate),
        ]
    )
    assert code == 0
    document = _read(certificate)
    assert document["verified"] is True
    assert document["mode"] == "separated"
    assert len(document["arrangement"]) == 2
    assert "verified=true" in capsys.readouterr().err

    assert run(["verify", "--input", str(square_file), "--arrangement", str(certificate)]) == 0
    out = capsys.readouterr().out
    assert out.count("measure ") == 4
    assert out.strip().endswith("verified=true")


def test_verify_rejects_a_single_line(tmp_path: Path, square_file: Path) -> None:
    arrangement = write_json([[-1.0, 0.0, 1.0]], tmp_path / "line.json")
    assert run(["verify", "--input", str(square_file), "--arrangement", str(arrangement)]) == 1


def test_verify_dimension_mismatch_is_usage_error(tmp_path: Path, square_file: Path) -> None:
    arrangement = write_json([[0.0, 0.0, 0.0, 1.0]], tmp_path / "plane.json")
    assert run(["verify", "--input", str(square_file), "--arrangement", str(arrangement)]) == 2


def test_malformed_input_is_usage_error(tmp_path: Path) -> None:
    broken = tmp_path / "broken.json"
    broken.write_text("[1, 2", encoding="utf-8")
    assert run(["solve", "--input", str(broken), "--hyperplanes", "1"]) == 2


def test_wrong_hyperplane_count_is_usage_error(square_file: Path) -> None:
    args = ["solve", "--input", str(square_file), "--hyperplanes", "3", "--mode", "separated"]
    assert run(args) == 2


def test_brute_failure_still_writes_certificate(tmp_path: Path) -> None:
    document = FamilyDocument.from_family(lower_bound_family(2, 2))
    family = write_json(document, tmp_path / "bound.json")
    certificate = tmp_path / "cert.json"
    code = run(
        [
            "solve",
            "--input",
            str(family),
            "--hyperplanes",
            "2",
            "--mode",
            "brute",
            "--out",
            str(certificate),
        ]
    )
    assert code == 1
    document = _read(certificate)
    assert document["verified"] is False
    assert document["status"] == "failed"
    assert document["arrangement"] == []


def test_enumerate_square(tmp_path: Path, square_file: Path) -> None:
    out = tmp_path / "all.json"
    args = ["enumerate", "--input", str(square_file), "--hyperplanes", "2", "--out", str(out)]
    assert run(args) == 0
    document = _read(out)
    assert document["mode"] == "separated"
    assert len(document["arrangements"]) == 3


def test_sample_writes_odd_supports(tmp_path: Path) -> None:
    source = MeasureFamily(
        (DiscreteMeasure([[0.0, 0.0], [4.0, 1.0]]), DiscreteMeasure([[2.0, 2.0]]))
    )
    family = write_json(FamilyDocument.from_family(source), tmp_path / "source.json")
    out = tmp_path / "sampled.json"
    args = ["sample", "--input", str(family), "--n-points", "5", "--seed", "3", "--out", str(out)]
    assert run(args) == 0
    document = _read(out)
    assert [len(measure["points"]) for measure in document["measures"]] == [5, 5]
    assert run(["sample", "--input", str(family), "--n-points", "4"]) == 2


def test_render_writes_svg(tmp_path: Path, square_file: Path) -> None:
    arrangement = write_json([[0.0, 1.0, 0.0]], tmp_path / "line.json")
    out = tmp_path / "figure.svg"
    args = [
        "render",
        "--input",
        str(square_file),
        "--arrangement",
        str(arrangement),
        "--out",
        str(out),
    ]
    assert run(args) == 0
    assert out.read_text(encoding="utf-8").count("<line ") == 1


def test_parser_rejects_unknown_mode() -> None:
    assert run(["solve", "--input", "x.json", "--hyperplanes", "1", "--mode", "magic"]) == 2
    assert run([]) == 2
    args = build_parser().parse_args(["count", "--n", "4", "--d", "3"])
    assert (args.n, args.d) == (4, 3)


def test_solve_to_stdout_prints_only_the_certificate(
    square_file: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    args = ["solve", "--input", str(square_file), "--hyperplanes", "2", "--mode", "separated"]
    assert run(args) == 0
    captured = capsys.readouterr()
    document = orjson.loads(captured.out)
    assert document["verified"] is True
    assert "mode=separated status=verified verified=true" in captured.err
    assert "status=" not in captured.out


def test_cover_mode_uses_one_more_hyperplane(tmp_path: Path) -> None:
    family = write_json(
        FamilyDocument.from_family(lower_bound_family(2, 2)), tmp_path / "bound.json"
    )
    certificate = tmp_path / "cover.json"
    args = ["solve", "--input", str(family), "--hyperplanes", "3", "--mode", "cover"]
    assert run([*args, "--out", str(certificate)]) == 0
    document = _read(certificate)
    assert document["verified"] is True
    assert len(document["arrangement"]) == 3
    assert run(["solve", "--input", str(family), "--hyperplanes", "2", "--mode", "cover"]) == 2
