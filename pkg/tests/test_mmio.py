import numpy as np
import pytest

from structdiag import ParseError, read_matrix, write_matrix

from conftest import gaussian_matrix


def test_round_trip_values(tmp_path):
    a = gaussian_matrix(4, 3, 3)
    path = tmp_path / "a.mtx"
    write_matrix(path, a)
    assert np.array_equal(read_matrix(path), a)


def test_round_trip_bytes_identical(tmp_path):
    a = gaussian_matrix(5, 5, 5)
    first = tmp_path / "a.mtx"
    second = tmp_path / "b.mtx"
    write_matrix(first, a)
    write_matrix(second, read_matrix(first))
    assert first.read_bytes() == second.read_bytes()


def test_exact_small_integers_stay_compact(tmp_path):
    a = np.array([[1.0, 0.0], [-1.0, 0.5]], dtype=complex)
    path = tmp_path / "a.mtx"
    write_matrix(path, a)
    text = path.read_text()
    assert "1 0" in text
    assert "-1 0" in text
    assert np.array_equal(read_matrix(path), a)


def test_column_major_order(tmp_path):
    a = np.array([[1.0, 3.0], [2.0, 4.0]], dtype=complex)
    path = tmp_path / "a.mtx"
    write_matrix(path, a)
    entries = [line.split()[0] for line in path.read_text().splitlines()[2:]]
    assert entries == ["1", "2", "3", "4"]


def test_real_field_accepted(tmp_path):
    path = tmp_path / "r.mtx"
    path.write_text("%%MatrixMarket matrix array real general\n"
                    "2 2\n1\n2\n3\n4\n")
    a = read_matrix(path)
    assert np.array_equal(a, np.array([[1, 3], [2, 4]], dtype=complex))


def test_comments_and_blank_lines_skipped(tmp_path):
    path = tmp_path / "c.mtx"
    path.write_text("%%MatrixMarket matrix array complex general\n"
                    "% a comment\n\n1 1\n% another\n2 -1\n")
    a = read_matrix(path)
    assert a[0, 0] == 2 - 1j


@pytest.mark.parametrize("content", [
    "garbage\n",
    "%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 0\n",
    "%%MatrixMarket matrix array complex general\n2 2\n1 0\n",
    "%%MatrixMarket matrix array complex general\n1 1\nnot numbers\n",
    "%%MatrixMarket matrix array complex general\n1 1\nnan 0\n",
])
def test_malformed_inputs_rejected(tmp_path, content):
    path = tmp_path / "bad.mtx"
    path.write_text(content)
    with pytest.raises(ParseError):
        read_matrix(path)


def test_missing_file_rejected(tmp_path):
    with pytest.raises(ParseError):
        read_matrix(tmp_path / "absent.mtx")
