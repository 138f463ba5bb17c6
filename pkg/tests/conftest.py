import numpy as np
import pytest

from structdiag import PortableRng


def gaussian_matrix(rows: int, cols: int, seed: int) -> np.ndarray:
    return PortableRng(seed).complex_matrix(rows, cols)


def random_unitary(m: int, seed: int) -> np.ndarray:
    q, r = np.linalg.qr(gaussian_matrix(m, m, seed))
    d = np.diag(r).copy()
    d[np.abs(d) == 0] = 1.0
    return q * (d / np.abs(d))


def random_hermitian(m: int, seed: int) -> np.ndarray:
    g = gaussian_matrix(m, m, seed)
    return (g + g.conj().T) / 2.0


def random_skew_hermitian(m: int, seed: int) -> np.ndarray:
    g = gaussian_matrix(m, m, seed)
    return (g - g.conj().T) / 2.0


def skew_block_instance(n: int, seed: int, min_sv: float = 1e-6) -> np.ndarray:
    """[[A, B], [B, -A]] with skew-Hermitian A, B, retried until the
    smallest singular value clears min_sv.
    """
    for attempt in range(64):
        a = random_skew_hermitian(n, seed * 1000 + 2 * attempt)
        b = random_skew_hermitian(n, seed * 1000 + 2 * attempt + 1)
        m = np.block([[a, b], [b, -a]])
        s = np.linalg.svd(m, compute_uv=False)
        if s[-1] > min_sv * s[0]:
            return m
    raise AssertionError("could not draw a well-conditioned instance")


@pytest.fixture
def rng():
    return PortableRng(12345)
