import numpy as np
import pytest

from cayleygroups import DenseMatrix, GroupElement, RingTag, haar_sample, tangent_project

RINGS = [RingTag.R, RingTag.C, RingTag.H]


def random_matrix(ring: RingTag, rows: int, cols: int, rng) -> DenseMatrix:
    """Dense matrix with standard-gaussian real coordinates."""
    if ring is RingTag.R:
        return DenseMatrix(ring, rng.standard_normal((rows, cols)))
    if ring is RingTag.C:
        g = rng.standard_normal((rows, cols, 2))
        return DenseMatrix(ring, g[..., 0] + 1j * g[..., 1])
    return DenseMatrix(ring, rng.standard_normal((rows, cols, 4)))


def random_tangent(A: GroupElement, rng) -> DenseMatrix:
    """Random tangent vector at A via projection of a gaussian matrix."""
    return tangent_project(A, random_matrix(A.group, A.n, A.n, rng)).vec


def random_group(ring: RingTag, n: int, seed) -> GroupElement:
    return haar_sample(ring, n, seed)


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
