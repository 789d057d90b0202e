import itertools
import time

import numpy as np
import pytest

from boolcons.analysis import analyze, is_bent
from boolcons.anf_parser import table_from_anf_string as anf
from boolcons.constructions import GeneralInstance, direct_instance, general_construct
from boolcons.core import FunctionFamily, TruthTable, VectorialMap, random_family, random_map, random_table
from boolcons.errors import DimensionError
from boolcons.search import (
    Pool,
    SearchConfig,
    SearchHit,
    fast_filter,
    named_pool,
    run_search,
    target_met,
)
from boolcons.transforms import fwht

from oracles import walsh_by_definition


def test_named_pools():
    assert len(named_pool("bent", 2)) == 8
    assert len(named_pool("bent", 4)) == 896
    assert len(named_pool("quadratic-bent", 4)) == 896
    assert len(named_pool("affine", 3)) == 16
    assert len(named_pool("all", 2)) == 16
    assert named_pool("bent", 3) == ()
    with pytest.raises(ValueError):
        named_pool("nope", 2)
    with pytest.raises(DimensionError):
        named_pool("all", 5)


def test_pool_resolution():
    with pytest.raises(ValueError, match="empty"):
        Pool.resolve("bent", 3)
    with pytest.raises(ValueError):
        Pool.resolve([], 2)
    p = Pool.resolve(["1", "e"], 2)
    assert [f.to_hex() for f in p.members] == ["1", "e"]
    assert Pool.resolve("random", 3).random


def test_config_validation():
    with pytest.raises(DimensionError):
        SearchConfig(s=12, t=13, k=1)
    with pytest.raises(DimensionError):
        SearchConfig(s=0, t=2, k=1)
    with pytest.raises(ValueError):
        SearchConfig(s=2, t=2, k=1, target="balanced")
    with pytest.raises(ValueError):
        SearchConfig.from_mapping({"s": 2, "t": 2, "k": 1, "bogus": 1})
    cfg = SearchConfig.from_mapping({"s": 2, "t": 2, "k": 1, "g_pool": ["1"]})
    assert cfg.g_pool == ("1",)


def test_bent_search_n8():
    cfg = SearchConfig(s=4, t=4, k=2, target="bent", seed=3, trials=1000,
                       g_pool="quadratic-bent", f_pool="affine", h_pool="quadratic-bent")
    hits = list(run_search(cfg))
    assert hits
    for hit in hits:
        w = fwht(hit.function).values
        assert set(np.abs(w).tolist()) == {16}
        assert hit.report.nonlinearity == 120 == 2**7 - 2**3
        assert general_construct(hit.instance) == hit.function
    assert len({h.function for h in hits}) == len(hits)


def test_exhaustive_n2_matches_brute_force():
    cfg = SearchConfig(s=1, t=1, k=1, target="bent", policy="exhaustive",
                       g_pool="all", f_pool="all", h_pool="all")
    found = {h.function for h in run_search(cfg)}
    brute = {TruthTable.from_bits(b) for b in itertools.product((0, 1), repeat=4)
             if set(np.abs(walsh_by_definition(b)).tolist()) == {2}}
    assert len(brute) == 8
    assert found == brute


def test_exhaustive_limits():
    with pytest.raises(ValueError):
        list(run_search(SearchConfig(s=1, t=1, k=1, policy="exhaustive")))
    with pytest.raises(DimensionError):
        list(run_search(SearchConfig(s=4, t=4, k=2, policy="exhaustive",
                                     g_pool="all", f_pool="all", h_pool="all")))


def test_determinism_and_jobs():
    cfg = SearchConfig(s=2, t=3, k=2, target="plateaued", seed=11, trials=300)
    a = [h.to_json() for h in run_search(cfg)]
    b = [h.to_json() for h in run_search(cfg)]
    c = [h.to_json() for h in run_search(cfg, jobs=2, chunk=64)]
    d = [h.to_json() for h in run_search(cfg, chunk=7)]
    assert a and a == b == c == d
    other = [h.to_json() for h in run_search(SearchConfig(s=2, t=3, k=2, target="plateaued", seed=12, trials=300))]
    assert other != a


def test_max_hits():
    cfg = SearchConfig(s=2, t=3, k=2, target="plateaued", seed=1, trials=300, max_hits=2)
    assert len(list(run_search(cfg))) == 2


def test_resilient_search_targets():
    cfg = SearchConfig(s=3, t=3, k=1, target="resilient", target_param=1, seed=2, trials=400)
    hits = list(run_search(cfg))
    assert hits
    assert all(h.report.resiliency_order >= 1 for h in hits)


def test_fast_filter_examples(rng):
    bent = anf("x1*x2 + x3*x4", 4)
    assert fast_filter(direct_instance(bent, bent), "bent")
    # a constant member on an attained fiber spikes the spectrum
    F = VectorialMap.from_values(4, 1, [0] * 8 + [1] * 8)
    inst = GeneralInstance(bent, F, FunctionFamily(4, 1, (bent, TruthTable.zeros(4))))
    assert not fast_filter(inst, "bent")
    assert not is_bent(general_construct(inst))


def test_fast_filter_agrees_with_fwht(rng):
    targets = [("bent", None), ("plateaued", None), ("plateaued", 8), ("resilient", 0), ("resilient", 1)]
    bent2 = named_pool("bent", 2)
    agree = 0
    for i in range(10_000):
        s, t, k = 2, 2, int(rng.integers(1, 4))
        if i % 2:
            g = bent2[int(rng.integers(8))]
            H = FunctionFamily(t, k, tuple(bent2[j] for j in rng.integers(8, size=1 << k)))
            F = random_map(s, k, rng)
        else:
            g, F, H = random_table(s, rng), random_map(s, k, rng), random_family(t, k, rng)
        inst = GeneralInstance(g, F, H)
        w = fwht(general_construct(inst)).values
        target, param = targets[i % len(targets)]
        assert fast_filter(inst, target, param) == target_met(w, target, param)
        agree += 1
    assert agree == 10_000


def test_hit_record_reproduces_report():
    cfg = SearchConfig(s=2, t=2, k=1, target="bent", seed=0, trials=200, g_pool="bent", h_pool="bent")
    hits = list(run_search(cfg))
    assert hits
    for hit in hits:
        rec = hit.as_record()
        f = TruthTable.from_hex(rec["function"], 4)
        assert analyze(f).as_record() == rec["report"]
        assert rec["provenance"] == "charsum"
        F = VectorialMap(2, 1, tuple(TruthTable.from_hex(c, 2) for c in rec["F"]))
        H = FunctionFamily(2, 1, tuple(TruthTable.from_hex(h, 2) for h in rec["H"]))
        assert general_construct(GeneralInstance(TruthTable.from_hex(rec["g"], 2), F, H)) == f


def test_zero_trials():
    assert list(run_search(SearchConfig(s=2, t=2, k=1, trials=0))) == []
