"""The standard test groupoids, shipped as JSON files under ``data/corpus``.

``build(name)`` reconstructs a member from the builders and is used to
regenerate the files; ``load(name)`` reads the shipped file.
"""
from __future__ import annotations

from importlib import resources
from pathlib import Path

from .groupoid import (FiniteGroupoid, action_groupoid, band_groupoid, cyclic_group, disjoint_union,
                       pair_groupoid, symmetric_group, unit_groupoid)
from .io import groupoid_from_json, groupoid_to_json, load_json, save_json

CORPUS = ("unit_3", "pair_2", "pair_3", "band_2_z2", "band_2_s3", "action_z3_translation", "union_pair2_z2")
GROUPS = ("z1", "z2", "z3", "s3")
TRANSITIVE = ("pair_2", "pair_3", "band_2_z2", "band_2_s3", "action_z3_translation")


def _builders():
    z2, z3 = cyclic_group(2), cyclic_group(3)
    return {
        "unit_3": lambda: unit_groupoid(3),
        "pair_2": lambda: pair_groupoid(2),
        "pair_3": lambda: pair_groupoid(3),
        "band_2_z2": lambda: band_groupoid(2, z2),
        "band_2_s3": lambda: band_groupoid(2, symmetric_group(3)),
        "action_z3_translation": lambda: action_groupoid(z3, lambda a, x: (a + x) % 3, 3),
        "union_pair2_z2": lambda: disjoint_union(pair_groupoid(2), z2),
        "z1": lambda: cyclic_group(1),
        "z2": lambda: z2,
        "z3": lambda: z3,
        "s3": lambda: symmetric_group(3),
    }


def names() -> tuple[str, ...]:
    return CORPUS + GROUPS


def build(name: str) -> FiniteGroupoid:
    b = _builders()
    if name not in b:
        raise KeyError(f"unknown corpus member {name!r}; known: {', '.join(names())}")
    return b[name]()


def data_dir() -> Path:
    return Path(str(resources.files("grpdhopf") / "data" / "corpus"))


def path(name: str) -> Path:
    return data_dir() / f"{name}.json"


def load(name: str) -> FiniteGroupoid:
    if name not in names():
        raise KeyError(f"unknown corpus member {name!r}; known: {', '.join(names())}")
    return groupoid_from_json(load_json(path(name)))


def write_all(directory: Path | None = None):
    d = directory or data_dir()
    d.mkdir(parents=True, exist_ok=True)
    for n in names():
        save_json(groupoid_to_json(build(n)), d / f"{n}.json")
