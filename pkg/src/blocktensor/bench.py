"""Timing sweep of the three contraction methods.

The sweep is configured by a JSON file, for example::

    {"f": 2, "g": 2, "l": 2, "extents": [2, 3, 4], "block": 2,
     "methods": ["naive", "unfolded", "blocked"], "repeats": 1, "seed": 0}

Every mode of ``F`` and ``G`` gets the same extent; each mode is cut into
chunks of ``block`` (the last chunk may be shorter).
"""

from __future__ import annotations

import csv
import json
import time
from typing import Iterable, TextIO

import numpy as np

from .blocking import Blocking
from .contraction import (
    BlockedContractionPlan,
    ContractionPlan,
    contract_blocked,
    contract_naive,
    contract_unfolded,
)
from .sampling import random_tensor

DEFAULTS = {
    "f": 2,
    "g": 2,
    "l": 2,
    "extents": [2, 3, 4],
    "block": 2,
    "methods": ["naive", "unfolded", "blocked"],
    "repeats": 1,
    "seed": 0,
}

METHODS = ("naive", "unfolded", "blocked")


def load_config(path) -> dict:
    with open(path) as fh:
        cfg = json.load(fh)
    unknown = set(cfg) - set(DEFAULTS)
    if unknown:
        raise ValueError(f"unknown bench keys: {sorted(unknown)}")
    merged = {**DEFAULTS, **cfg}
    bad = set(merged["methods"]) - set(METHODS)
    if bad:
        raise ValueError(f"unknown methods: {sorted(bad)}")
    return merged


def _chunks(n: int, size: int) -> list[int]:
    full, rest = divmod(n, size)
    return [size] * full + ([rest] if rest else [])


def run(cfg: dict) -> Iterable[dict]:
    rng = np.random.default_rng(cfg["seed"])
    f, g, l = cfg["f"], cfg["g"], cfg["l"]
    plan = ContractionPlan(tuple(range(1, f + l + 1)), tuple(range(1, g + l + 1)), f)
    for n in cfg["extents"]:
        F = random_tensor(rng, (n,) * (f + l))
        G = random_tensor(rng, (n,) * (g + l))
        part = _chunks(n, cfg["block"])
        bplan = BlockedContractionPlan(plan, Blocking([part] * (f + l)), Blocking([part] * (g + l)))
        calls = {
            "naive": lambda: contract_naive(F, G, plan),
            "unfolded": lambda: contract_unfolded(F, G, plan),
            "blocked": lambda: contract_blocked(F, G, bplan),
        }
        for method in cfg["methods"]:
            best = float("inf")
            for _ in range(cfg["repeats"]):
                t0 = time.perf_counter()
                calls[method]()
                best = min(best, time.perf_counter() - t0)
            yield {"extent": n, "method": method, "seconds": f"{best:.6f}"}


def write_csv(rows: Iterable[dict], out: TextIO) -> None:
    writer = csv.DictWriter(out, fieldnames=["extent", "method", "seconds"], lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
