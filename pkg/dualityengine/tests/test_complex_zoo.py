import shutil

import pytest

from dualityengine.complex_core import f_vector
from dualityengine.complex_zoo import (
    ChecksumMismatch,
    FileMissing,
    UnknownName,
    get_complex,
    is_available,
    list_complexes,
    zoo_entry,
)
from dualityengine.config import PACKAGE_DATA_DIR

from .conftest import ZOO


def test_listing():
    names = list_complexes()
    assert names == [
        "sphere2",
        "sphere3",
        "torus7",
        "projective_plane6",
        "klein_bottle8",
        "genus2_surface",
        "projective_space11",
    ]
    assert sorted(names) == sorted(ZOO)
    assert "torus3" not in names
    assert "torus3" in list_complexes(include_optional=True)


def test_unknown_name():
    with pytest.raises(UnknownName):
        get_complex("mobius_band")


@pytest.mark.parametrize("name", ["genus2_surface", "projective_space11"])
def test_shipped_files_are_available(name):
    assert is_available(name)
    assert f_vector(get_complex(name)) == zoo_entry(name).expected.f_vector


def test_built_in_entries_need_no_files(tmp_path):
    assert is_available("sphere2", tmp_path)
    assert f_vector(get_complex("sphere2", tmp_path)) == (4, 6, 4)


def test_missing_file(tmp_path):
    assert not is_available("genus2_surface", tmp_path)
    with pytest.raises(FileMissing):
        get_complex("genus2_surface", tmp_path)


def test_altered_file_is_refused(tmp_path):
    shutil.copy(PACKAGE_DATA_DIR / "genus2_surface.txt", tmp_path / "genus2_surface.txt")
    with open(tmp_path / "genus2_surface.txt", "a", encoding="utf-8") as fh:
        fh.write("# edited\n")
    with pytest.raises(ChecksumMismatch):
        get_complex("genus2_surface", tmp_path)


def test_optional_three_torus_is_skipped_without_its_file():
    if not is_available("torus3"):
        with pytest.raises(FileMissing):
            get_complex("torus3")
        pytest.skip("torus3.txt is not shipped")
    get_complex("torus3")


def test_records_are_serializable():
    record = zoo_entry("projective_plane6").as_record()
    assert record["orientable"] is False
    assert record["betti"] == {"Z": [1, 0, 0], "Z2": [1, 1, 1]}
    assert record["torsion"] == [[], [2], []]
    assert record["source"] == "built in"
    assert zoo_entry("projective_space11").as_record()["source"] == "projective_space11.txt"
