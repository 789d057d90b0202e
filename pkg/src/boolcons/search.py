"""Seeded search for bent, plateaued and resilient functions built by the
general construction.

Candidates are screened with the character-sum Walsh formula evaluated from
precomputed block spectra; every survivor is rebuilt and re-checked with a
full FWHT before it is reported.  Hits are deduplicated by exact truth-table
equality only.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .analysis import (
    PropertyReport,
    analyze,
    spectrum_amplitude,
    spectrum_is_bent,
    spectrum_resiliency,
)
from .constructions import GeneralInstance, general_construct
from .core import FunctionFamily, TruthTable, VectorialMap, random_table
from .errors import DimensionError
from .transforms import algebraic_degree, fwht, walsh_matrix
from .walsh_theory import predict_spectrum

TARGETS = ("bent", "plateaued", "resilient")
POOL_NAMES = ("bent", "quadratic-bent", "affine", "constant", "all", "random")
MAX_SEARCH_VARS = 24
MAX_EXHAUSTIVE = 10_000_000


@lru_cache(maxsize=None)
def _all_tables(m: int) -> np.ndarray:
    if m > 4:
        raise DimensionError(f"cannot enumerate all functions on {m} > 4 variables")
    size = 1 << m
    codes = np.arange(1 << size, dtype=np.int64)
    return ((codes[:, None] >> (size - 1 - np.arange(size))) & 1).astype(np.uint8)


@lru_cache(maxsize=None)
def named_pool(name: str, m: int) -> tuple[TruthTable, ...]:
    """Building blocks on m variables; the "random" pool has no fixed members."""
    if name == "constant":
        return (TruthTable.zeros(m), TruthTable.ones(m))
    if name == "affine":
        lin = [TruthTable.linear(a, m) for a in range(1 << m)]
        return tuple(lin + [~f for f in lin])
    if name == "all":
        return tuple(TruthTable.from_bits(row) for row in _all_tables(m))
    if name in ("bent", "quadratic-bent"):
        if m % 2:
            return ()
        rows = _all_tables(m)
        spectra = walsh_matrix(rows)
        found = [TruthTable.from_bits(r) for r in rows[np.all(np.abs(spectra) == (1 << (m // 2)), axis=1)]]
        if name == "quadratic-bent":
            found = [f for f in found if algebraic_degree(f) == 2]
        return tuple(found)
    if name == "random":
        return ()
    raise ValueError(f"unknown pool {name!r}; choose from {', '.join(POOL_NAMES)} or give hex tables")


@dataclass(frozen=True)
class Pool:
    """Either a fixed list of tables or uniform random tables on m variables."""

    m: int
    members: tuple[TruthTable, ...]
    random: bool = False
    label: str = ""

    @classmethod
    def resolve(cls, source, m: int) -> Pool:
        if isinstance(source, str):
            members = named_pool(source, m)
            if source != "random" and not members:
                raise ValueError(f"pool {source!r} is empty on {m} variables")
            return cls(m, members, random=source == "random", label=source)
        members = tuple(TruthTable.from_hex(h, m) for h in source)
        if not members:
            raise ValueError("explicit pool is empty")
        return cls(m, members, label="explicit")

    def draw(self, rng: np.random.Generator) -> TruthTable:
        if self.random:
            return random_table(self.m, rng)
        return self.members[int(rng.integers(len(self.members)))]


@dataclass(frozen=True)
class SearchConfig:
    s: int
    t: int
    k: int
    target: str = "bent"
    # amplitude for plateaued (None = any), minimum order for resilient
    target_param: int | None = None
    policy: str = "random"
    seed: int = 0
    trials: int = 1000
    g_pool: str | tuple = "random"
    f_pool: str | tuple = "random"
    h_pool: str | tuple = "random"
    max_hits: int | None = None

    def __post_init__(self):
        if min(self.s, self.t, self.k) < 1:
            raise DimensionError("s, t and k must all be at least 1")
        if self.s + self.t > MAX_SEARCH_VARS:
            raise DimensionError(f"s + t = {self.s + self.t} exceeds {MAX_SEARCH_VARS}")
        if self.target not in TARGETS:
            raise ValueError(f"target must be one of {TARGETS}, got {self.target!r}")
        if self.policy not in ("random", "exhaustive"):
            raise ValueError(f"policy must be 'random' or 'exhaustive', got {self.policy!r}")
        for name in ("g_pool", "f_pool", "h_pool"):
            value = getattr(self, name)
            if not isinstance(value, str):
                object.__setattr__(self, name, tuple(value))

    @classmethod
    def from_mapping(cls, data: dict) -> SearchConfig:
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def pools(self) -> tuple[Pool, Pool, Pool]:
        return (
            Pool.resolve(self.g_pool, self.s),
            Pool.resolve(self.f_pool, self.s),
            Pool.resolve(self.h_pool, self.t),
        )


def target_met(spectrum: np.ndarray, target: str, param: int | None = None) -> bool:
    if target == "bent":
        return spectrum_is_bent(spectrum)
    if target == "plateaued":
        amp = spectrum_amplitude(spectrum)
        return amp is not None and (param is None or amp == param)
    if target == "resilient":
        return spectrum_resiliency(spectrum) >= (0 if param is None else param)
    raise ValueError(f"unknown target {target!r}")


def fast_filter(inst: GeneralInstance, target: str, param: int | None = None,
                spectra: dict | None = None) -> bool:
    """Screen an instance with the character-sum formula over block spectra."""
    predicted = predict_spectrum("charsum", inst, cache=spectra)
    return target_met(predicted.values, target, param)


@dataclass(frozen=True)
class SearchHit:
    trial: int
    instance: GeneralInstance
    function: TruthTable
    report: PropertyReport
    provenance: str = "charsum"

    def as_record(self) -> dict:
        inst = self.instance
        return {
            "trial": self.trial,
            "s": inst.s,
            "t": inst.t,
            "k": inst.k,
            "g": inst.g.to_hex(),
            "F": [c.to_hex() for c in inst.F.coords],
            "H": [h.to_hex() for h in inst.H.members],
            "function": self.function.to_hex(),
            "report": self.report.as_record(),
            "provenance": self.provenance,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_record(), sort_keys=True)


def _instance(cfg: SearchConfig, g: TruthTable, coords, members) -> GeneralInstance:
    return GeneralInstance(g, VectorialMap(cfg.s, cfg.k, tuple(coords)), FunctionFamily(cfg.t, cfg.k, tuple(members)))


def _random_instance(cfg: SearchConfig, pools, trial: int) -> GeneralInstance:
    rng = np.random.default_rng([cfg.seed, trial])
    gp, fp, hp = pools
    g = gp.draw(rng)
    coords = [fp.draw(rng) for _ in range(cfg.k)]
    members = [hp.draw(rng) for _ in range(1 << cfg.k)]
    return _instance(cfg, g, coords, members)


def _exhaustive_instances(cfg: SearchConfig, pools) -> Iterator[GeneralInstance]:
    gp, fp, hp = pools
    if any(p.random for p in pools):
        raise ValueError("exhaustive search needs finite pools, not 'random'")
    count = len(gp.members) * len(fp.members) ** cfg.k * len(hp.members) ** (1 << cfg.k)
    if count > MAX_EXHAUSTIVE:
        raise DimensionError(f"exhaustive search would visit {count} instances (limit {MAX_EXHAUSTIVE})")
    for g in gp.members:
        for coords in itertools.product(fp.members, repeat=cfg.k):
            for members in itertools.product(hp.members, repeat=1 << cfg.k):
                yield _instance(cfg, g, coords, members)


def _block_spectra(pools) -> dict:
    spectra = {}
    for p in pools:
        if p.members:
            for f, w in zip(p.members, walsh_matrix(np.stack([f.bits for f in p.members]))):
                spectra[f] = w
    return spectra


def _examine(cfg: SearchConfig, inst: GeneralInstance, trial: int, spectra: dict) -> SearchHit | None:
    if not fast_filter(inst, cfg.target, cfg.target_param, spectra):
        return None
    f = general_construct(inst)
    spectrum = fwht(f)
    report = analyze(f, spectrum)
    if not target_met(spectrum.values, cfg.target, cfg.target_param):
        raise AssertionError(f"trial {trial}: formula screen accepted an instance the FWHT rejects")
    return SearchHit(trial, inst, f, report)


def _run_chunk(cfg: SearchConfig, start: int, stop: int) -> list[SearchHit]:
    pools = cfg.pools()
    spectra = _block_spectra(pools)
    hits = []
    for trial in range(start, stop):
        hit = _examine(cfg, _random_instance(cfg, pools, trial), trial, spectra)
        if hit is not None:
            hits.append(hit)
        if len(spectra) > 4096:
            spectra = _block_spectra(pools)
    return hits


def run_search(cfg: SearchConfig, jobs: int = 1, chunk: int = 256) -> Iterator[SearchHit]:
    """Yield verified hits in trial order.

    The random stream of trial i is seeded by (seed, i), so the output does
    not depend on ``jobs`` or ``chunk``.
    """
    pools = cfg.pools()
    seen = set()
    emitted = 0

    def accept(hit):
        nonlocal emitted
        if hit is None or hit.function in seen:
            return False
        seen.add(hit.function)
        emitted += 1
        return True

    def done():
        return cfg.max_hits is not None and emitted >= cfg.max_hits

    if cfg.policy == "exhaustive":
        spectra = _block_spectra(pools)
        for trial, inst in enumerate(_exhaustive_instances(cfg, pools)):
            hit = _examine(cfg, inst, trial, spectra)
            if accept(hit):
                yield hit
                if done():
                    return
        return

    bounds = [(a, min(a + chunk, cfg.trials)) for a in range(0, cfg.trials, chunk)]
    if jobs <= 1:
        batches = (_run_chunk(cfg, a, b) for a, b in bounds)
        for batch in batches:
            for hit in batch:
                if accept(hit):
                    yield hit
                    if done():
                        return
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for batch in pool.map(_run_chunk, [cfg] * len(bounds), *zip(*bounds)):
            for hit in batch:
                if accept(hit):
                    yield hit
                    if done():
                        return
