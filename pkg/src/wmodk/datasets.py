"""Bundled real-world networks and their reference community counts.

Edge lists live in ``wmodk/data``.  Networks that cannot be redistributed
with the package are looked up in the directory named by the
``WMODK_DATA_DIR`` environment variable; ``scripts/convert_datasets.py``
turns the original downloads into the expected edge-list files.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .netio import read_edge_list

DATA_DIR_ENV = "WMODK_DATA_DIR"


@dataclass(frozen=True)
class DatasetInfo:
    name: str
    filename: str
    n: int
    k_true: tuple[int, ...]
    k_reported: int
    signed: bool = False
    weighted: bool = False


DATASETS = {
    d.name: d
    for d in (
        DatasetInfo("karate_weighted", "karate_weighted.txt", 34, (2,), 2, weighted=True),
        DatasetInfo("gahuku_gama", "gahuku_gama.txt", 16, (3,), 3, signed=True, weighted=True),
        DatasetInfo("slovene", "slovene.txt", 10, (2,), 2, signed=True, weighted=True),
        DatasetInfo("dolphins", "dolphins.txt", 62, (2, 4), 4),
        DatasetInfo("football", "football.txt", 110, (11,), 11),
        DatasetInfo("karate", "karate.txt", 34, (2,), 2),
        DatasetInfo("polbooks", "polbooks.txt", 105, (3,), 4),
        DatasetInfo("polblogs", "polblogs.txt", 1222, (2,), 2),
    )
}


def dataset_path(name: str) -> Path | None:
    """Location of a dataset's edge list, or ``None`` if it is not available."""
    info = DATASETS[name]
    extra = os.environ.get(DATA_DIR_ENV)
    if extra:
        candidate = Path(extra) / info.filename
        if candidate.is_file():
            return candidate
    bundled = resources.files("wmodk") / "data" / info.filename
    if bundled.is_file():
        return Path(str(bundled))
    return None


def available() -> list[str]:
    return [name for name in DATASETS if dataset_path(name) is not None]


def load(name: str) -> np.ndarray:
    if name not in DATASETS:
        raise KeyError(f"unknown dataset {name!r}; known: {', '.join(DATASETS)}")
    path = dataset_path(name)
    if path is None:
        raise FileNotFoundError(
            f"dataset {name!r} is not bundled; put {DATASETS[name].filename} in ${DATA_DIR_ENV}"
        )
    return read_edge_list(path).adjacency
