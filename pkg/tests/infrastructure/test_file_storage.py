import pytest

from core.errors import NotFoundError, ValidationError
from infrastructure.storage.file_storage import FileStorage


def test_write_then_read_relative_to_base(tmp_path):
    storage = FileStorage(str(tmp_path))
    path = storage.write_text("table.txt", "# field=Q order=2\n", directory="results")
    assert path == str(tmp_path / "results" / "table.txt")
    assert storage.read_text("results/table.txt") == "# field=Q order=2\n"


def test_absolute_paths_ignore_the_base(tmp_path):
    target = tmp_path / "abs.txt"
    target.write_text("x", encoding="utf-8")
    assert FileStorage("/nonexistent").read_text(str(target)) == "x"


def test_missing_file_names_the_path(tmp_path):
    storage = FileStorage(str(tmp_path))
    with pytest.raises(NotFoundError) as info:
        storage.read_text("absent.txt")
    assert info.value.path == "absent.txt"
    assert info.value.exit_code == 2


def test_empty_path_is_invalid(tmp_path):
    storage = FileStorage(str(tmp_path))
    with pytest.raises(ValidationError):
        storage.read_text("")
    with pytest.raises(ValidationError):
        storage.write_text("", "content")
