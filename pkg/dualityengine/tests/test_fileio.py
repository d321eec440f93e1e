import pytest

from dualityengine.chain_algebra import cohomology
from dualityengine.complex_core import Ring, f_vector
from dualityengine.fileio import (
    CocycleFormatError,
    ComplexFormatError,
    FileFormatError,
    format_cocycle,
    format_complex,
    load_cocycle_file,
    load_complex_file,
    parse_cocycle,
    parse_complex,
    write_complex_file,
)

from .conftest import load


class TestComplexFiles:
    def test_comments_and_blank_lines(self):
        K = parse_complex("# a triangle boundary\n\n0 1\n1 2\n  # indented comment\n0 2\n")
        assert f_vector(K) == (3, 3)

    def test_labels_survive(self):
        K = parse_complex("10 20 30\n20 30 40\n")
        assert K.labels == (10, 20, 30, 40)
        assert format_complex(K).splitlines() == ["10 20 30", "20 30 40"]

    @pytest.mark.parametrize(
        "text,line",
        [
            ("0 1 2\n0 1 x\n", 2),
            ("0 1 2\n\n0 1\n", 3),
            ("# header\n0 0 1\n", 2),
            ("0 1 -2\n", 1),
        ],
    )
    def test_errors_carry_line_numbers(self, text, line):
        with pytest.raises(ComplexFormatError) as info:
            parse_complex(text, "bad.txt")
        assert info.value.line == line
        assert info.value.path == "bad.txt"
        assert str(info.value).startswith(f"bad.txt:{line}:")

    def test_empty_file(self):
        with pytest.raises(ComplexFormatError):
            parse_complex("# only a comment\n")

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileFormatError):
            load_complex_file(tmp_path / "absent.txt")

    def test_write_then_load(self, tmp_path):
        K, _ = load("projective_plane6")
        path = tmp_path / "rp2.txt"
        write_complex_file(K, path, header=["projective plane"])
        assert path.read_text(encoding="utf-8").startswith("# projective plane\n")
        assert load_complex_file(path).simplices == K.simplices


class TestCocycleFiles:
    def test_labels_and_reversed_edges(self):
        K = parse_complex("10 20 30\n10 20 40\n10 30 40\n20 30 40\n")
        phi = parse_cocycle("20 10 1\n30 10 1\n40 10 1\n", K)
        assert phi.value_on(K, (0, 1)) == -1
        assert phi.value_on(K, (0, 3)) == -1
        assert phi.value_on(K, (1, 2)) == 0

    def test_not_a_cocycle(self):
        K, _ = load("torus7")
        with pytest.raises(CocycleFormatError) as info:
            parse_cocycle("0 1 1\n", K, path="phi.txt")
        assert "not a cocycle" in str(info.value)

    @pytest.mark.parametrize(
        "text,line",
        [
            ("0 1\n", 1),
            ("0 1 1\n0 1 a\n", 2),
            ("# c\n0 9 1\n", 2),
            ("0 1 1\n1 0 1\n", 2),
            ("3 3 1\n", 1),
        ],
    )
    def test_errors_carry_line_numbers(self, text, line):
        K, _ = load("torus7")
        with pytest.raises(CocycleFormatError) as info:
            parse_cocycle(text, K, path="phi.txt")
        assert info.value.line == line

    def test_mod_two_values(self):
        K, _ = load("klein_bottle8")
        phi = cohomology(K, 1, "Z2").generator_cochain(0)
        again = parse_cocycle(format_cocycle(K, phi), K, Ring.MOD2)
        assert again == phi

    def test_file_against_generator(self, tmp_path):
        K, _ = load("torus7")
        phi = cohomology(K, 1, "Z").generator_cochain(0)
        path = tmp_path / "phi.txt"
        path.write_text(format_cocycle(K, phi), encoding="utf-8")
        assert load_cocycle_file(path, K) == phi
