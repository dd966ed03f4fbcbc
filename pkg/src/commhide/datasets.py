"""Bundled benchmark graphs, loadable by name.

`karate` (34 nodes / 78 links) and `lesmis` (77 / 254) ship with the
package as edge-list files; `dolphins` (62 / 159) is honored as a drop-in:
place a `dolphins.edgelist` file next to the bundled data (or pass the
path directly to the loader) and it becomes available by name.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .graph import Graph, load_edge_list_path

_BUNDLED = ("karate", "lesmis", "dolphins")


def data_dir() -> Path:
    return Path(resources.files("commhide").joinpath("data"))


def available() -> list[str]:
    return [name for name in _BUNDLED if (data_dir() / f"{name}.edgelist").exists()]


def dataset_path(name: str) -> Path:
    path = data_dir() / f"{name}.edgelist"
    if not path.exists():
        raise FileNotFoundError(
            f"dataset {name!r} not available; bundled: {available()}"
        )
    return path


def load_dataset(name: str) -> Graph:
    return load_edge_list_path(dataset_path(name))
