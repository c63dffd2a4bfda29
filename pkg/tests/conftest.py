import os

import numpy as np
import pytest

from ballmapper.pointcloud import PointCloud

# Prepared replication dataset (see README "Replication data"); the heavy
# spot-check tests skip when it is absent.
DATASET_ENV = "BALLMAPPER_DATASET"


def make_cloud(values, row_ids=None, axis_names=None, attributes=None) -> PointCloud:
    values = np.asarray(values, dtype=np.float64)
    if values.ndim == 1:
        values = values[:, None]
    n, d = values.shape
    return PointCloud(
        row_ids=tuple(row_ids or (f"r{i}" for i in range(n))),
        axis_names=tuple(axis_names or (f"a{j}" for j in range(d))),
        values=values,
        attributes=attributes or {},
    )


def random_cloud(rng: np.random.Generator, n: int, d: int, scale=10.0) -> PointCloud:
    return make_cloud(rng.uniform(0.0, scale, size=(n, d)))


@pytest.fixture
def dataset_path():
    path = os.environ.get(DATASET_ENV)
    if not path or not os.path.exists(path):
        pytest.skip(f"replication dataset not available (set {DATASET_ENV})")
    return path
