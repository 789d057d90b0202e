"""Closed-form Walsh spectra of the constructed functions.

Each formula is written once against two evaluators: ``_Point`` sums the
Walsh definition directly at a single a = (a', a''), while ``_Full`` uses
FWHT spectra of the building blocks and broadcasting to produce the whole
2^s x 2^t spectrum at once.  Neither path transforms the constructed
function itself, so both can be checked against ``fwht`` of it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .analysis import is_annihilator_pair
from .constructions import GeneralInstance, check_disjoint, general_construct, _same_size
from .core import (
    FunctionFamily,
    TruthTable,
    component_select,
    concat_family,
    parity,
    preimage_indicator,
    random_map,
    random_family,
    random_table,
    to_index,
)
from .errors import DimensionError, DivisibilityError, PreconditionError
from .transforms import WalshSpectrum, _butterfly, fwht


def _exact_div(num, d: int):
    if np.any(np.asarray(num) % d):
        raise DivisibilityError(f"Walsh formula sum is not divisible by {d}")
    return num // d


class _Point:
    def __init__(self, a, s: int, t: int):
        if not isinstance(a, (int, np.integer)):
            if len(a) != s + t:
                raise DimensionError(f"point a needs {s + t} bits, got {len(a)}")
            a = to_index(a)
        a = int(a)
        if not 0 <= a < (1 << (s + t)):
            raise DimensionError(f"point a={a} out of range for n={s + t}")
        self.ax, self.ay = a >> t, a & ((1 << t) - 1)
        self.s, self.t = s, t

    def x_sum(self, weights):
        chi = 1 - 2 * parity(np.arange(1 << self.s, dtype=np.int64) & self.ax)
        return int(np.dot(weights, chi))

    def y_sum(self, weights):
        chi = 1 - 2 * parity(np.arange(1 << self.t, dtype=np.int64) & self.ay)
        return int(np.dot(weights, chi))

    def wx(self, f: TruthTable):
        return self.x_sum(f.signs())

    def wy(self, h: TruthTable):
        return self.y_sum(h.signs())

    def wy_concat(self, hcat: TruthTable, k: int, v: int):
        # W_h(a'', v) for h(y, u) on t + k variables
        a = (self.ay << k) | v
        chi = 1 - 2 * parity(np.arange(hcat.size, dtype=np.int64) & a)
        return int(np.dot(hcat.signs(), chi))

    def result(self, value):
        return int(value)


class _Full:
    def __init__(self, s: int, t: int, cache: dict | None = None):
        self.s, self.t = s, t
        self._concat = {}
        # TruthTable -> precomputed Walsh values of a building block
        self._cache = {} if cache is None else cache

    def x_sum(self, weights):
        return _butterfly(np.array(weights, dtype=np.int64))[:, None]

    def y_sum(self, weights):
        return _butterfly(np.array(weights, dtype=np.int64))[None, :]

    def _spectrum(self, f: TruthTable):
        w = self._cache.get(f)
        if w is None:
            w = self._cache[f] = fwht(f).values
        return w

    def wx(self, f: TruthTable):
        return self._spectrum(f)[:, None]

    def wy(self, h: TruthTable):
        return self._spectrum(h)[None, :]

    def wy_concat(self, hcat: TruthTable, k: int, v: int):
        if hcat not in self._concat:
            self._concat[hcat] = fwht(hcat).values.reshape(1 << self.t, 1 << k)
        return self._concat[hcat][:, v][None, :]

    def result(self, value):
        return np.broadcast_to(value, (1 << self.s, 1 << self.t)).ravel()


# -- the formulas -------------------------------------------------------------

def _preimage(ev, inst: GeneralInstance):
    sg = inst.g.signs()
    total = 0
    for u in range(1 << inst.k):
        ind = preimage_indicator(inst.F, u).bits.astype(np.int64)
        total = total + ev.x_sum(ind * sg) * ev.wy(inst.H[u])
    return total


def _charsum(ev, inst: GeneralInstance):
    k = inst.k
    wg = [ev.wx(inst.g ^ component_select(inst.F, v)) for v in range(1 << k)]
    wh = [ev.wy(h) for h in inst.H.members]
    total = 0
    for u in range(1 << k):
        for v in range(1 << k):
            sign = -1 if bin(u & v).count("1") & 1 else 1
            total = total + sign * wg[v] * wh[u]
    return _exact_div(total, 1 << k)


def _concat(ev, inst: GeneralInstance):
    k = inst.k
    hcat = concat_family(inst.H)
    total = 0
    for v in range(1 << k):
        total = total + ev.wx(inst.g ^ component_select(inst.F, v)) * ev.wy_concat(hcat, k, v)
    return _exact_div(total, 1 << k)


def _k2(ev, inst: GeneralInstance):
    if inst.k != 2:
        raise DimensionError(f"the four-term k=2 formula needs k=2, got k={inst.k}")
    g, (f1, f2) = inst.g, inst.F.coords
    hcat = concat_family(inst.H)
    return _exact_div(
        ev.wy_concat(hcat, 2, 0b00) * ev.wx(g)
        + ev.wy_concat(hcat, 2, 0b01) * ev.wx(g ^ f2)
        + ev.wy_concat(hcat, 2, 0b10) * ev.wx(g ^ f1)
        + ev.wy_concat(hcat, 2, 0b11) * ev.wx(g ^ f1 ^ f2),
        4,
    )


def _product(ev, g, h):
    return ev.wx(g) * ev.wy(h)


def _indirect(ev, g, g1, h0, h1):
    wg, wg1, wh0, wh1 = ev.wx(g), ev.wx(g1), ev.wy(h0), ev.wy(h1)
    return _exact_div(wg * (wh0 + wh1) + wg1 * (wh0 - wh1), 2)


def _size3_simple(ev, g, g1, g2, h0, h1, h2):
    wg, wg1, wg2, wg3 = ev.wx(g), ev.wx(g1), ev.wx(g2), ev.wx(g ^ g1 ^ g2)
    wh0, wh1, wh2 = ev.wy(h0), ev.wy(h1), ev.wy(h2)
    return _exact_div(wh0 * (wg + wg3) + wh1 * (wg - wg1) + wh2 * (wg - wg2), 2)


def _size3_fourterm(ev, g, g1, g2, h0, h1, h2, h3):
    wg, wg1, wg2, wg3 = ev.wx(g), ev.wx(g1), ev.wx(g2), ev.wx(g ^ g1 ^ g2)
    wh0, wh1, wh2, wh3 = ev.wy(h0), ev.wy(h1), ev.wy(h2), ev.wy(h3)
    return _exact_div(
        wg * (wh0 + wh1 + wh2 + wh3)
        + wg2 * (wh0 + wh1 - wh2 - wh3)
        + wg1 * (wh0 - wh1 + wh2 - wh3)
        + wg3 * (wh0 - wh1 - wh2 + wh3),
        4,
    )


def _size3_final(ev, g, g1, g2, h0, h1, h2):
    wg, wg1, wg2 = ev.wx(g), ev.wx(g1), ev.wx(g2)
    wh0, wh1, wh2 = ev.wy(h0), ev.wy(h1), ev.wy(h2)
    return _exact_div(wh0 * (wg1 + wg2) + wh1 * (wg - wg1) + wh2 * (wg - wg2), 2)


def _gen1(ev, g, g1, g2, h, h1, h2):
    wg, wg1, wg2, wg3 = ev.wx(g), ev.wx(g1), ev.wx(g2), ev.wx(g ^ g1 ^ g2)
    return _exact_div(
        ev.wy(h) * (wg + wg1 + wg2 + wg3)
        + ev.wy(h1) * (wg - wg1 - wg2 + wg3)
        + ev.wy(h2) * (wg - wg1 + wg2 - wg3)
        + ev.wy(h ^ h1 ^ h2) * (wg + wg1 - wg2 - wg3),
        4,
    )


def _gen1_regrouped(ev, g, g1, g2, h, h1, h2):
    tilde = concat_family(FunctionFamily(h.n_vars, 2, (h, h ^ h1 ^ h2, h2, h1)))
    return _exact_div(
        ev.wy_concat(tilde, 2, 0b00) * ev.wx(g)
        + ev.wy_concat(tilde, 2, 0b01) * ev.wx(g2)
        + ev.wy_concat(tilde, 2, 0b10) * ev.wx(g1)
        + ev.wy_concat(tilde, 2, 0b11) * ev.wx(g ^ g1 ^ g2),
        4,
    )


def _instance_dims(inst):
    return inst.s, inst.t


def _pair_dims(n_x):
    def dims(*args):
        xs, ys = args[:n_x], args[n_x:]
        return _same_size(*xs), _same_size(*ys)
    return dims


def _disjoint_first(*args):
    check_disjoint(*args[:3])


# name -> (formula, dimension reader, precondition)
FORMULAS = {
    "preimage": (_preimage, _instance_dims, None),
    "charsum": (_charsum, _instance_dims, None),
    "concat": (_concat, _instance_dims, None),
    "k2": (_k2, _instance_dims, None),
    "product": (_product, _pair_dims(1), None),
    "indirect": (_indirect, _pair_dims(2), None),
    "size3_simple": (_size3_simple, _pair_dims(3), _disjoint_first),
    "size3_fourterm": (_size3_fourterm, _pair_dims(3), _disjoint_first),
    "size3_final": (_size3_final, _pair_dims(3), _disjoint_first),
    "gen1": (_gen1, _pair_dims(3), None),
    "gen1_regrouped": (_gen1_regrouped, _pair_dims(3), None),
}


@dataclass(frozen=True, eq=False)
class PredictedSpectrum:
    """A spectrum computed by one of the closed-form formulas."""

    n_vars: int
    values: np.ndarray
    formula: str = field(default="")

    def __getitem__(self, a):
        return int(self.values[a])

    def __eq__(self, other):
        if isinstance(other, (PredictedSpectrum, WalshSpectrum)):
            return self.n_vars == other.n_vars and np.array_equal(self.values, other.values)
        return NotImplemented

    def tolist(self) -> list[int]:
        return self.values.tolist()


def predict_spectrum(formula: str, *args, cache: dict | None = None) -> PredictedSpectrum:
    """Full spectrum from the named formula, e.g. ``predict_spectrum("charsum", inst)``.

    ``cache`` may map building-block tables to their Walsh values; it is
    consulted before transforming and filled with anything computed.
    """
    func, dims, pre = FORMULAS[formula]
    s, t = dims(*args)
    if pre:
        pre(*args)
    ev = _Full(s, t, cache)
    values = ev.result(func(ev, *args))
    return PredictedSpectrum(s + t, np.ascontiguousarray(values, dtype=np.int64), formula)


def predict_at(formula: str, a, *args) -> int:
    func, dims, pre = FORMULAS[formula]
    s, t = dims(*args)
    if pre:
        pre(*args)
    return int(func(_Point(a, s, t), *args))


def predict_preimage(inst: GeneralInstance, a) -> int:
    """Sum over fibers u of [sum_x 1_{F^-1(u)}(x) (-1)^(g(x)+a'.x)] W_{h_u}(a'')."""
    return predict_at("preimage", a, inst)


def predict_charsum(inst: GeneralInstance, a) -> int:
    """2^-k sum_{u,v} (-1)^(v.u) W_{g+v.F}(a') W_{h_u}(a'')."""
    return predict_at("charsum", a, inst)


def predict_concat(inst: GeneralInstance, a) -> int:
    """2^-k sum_v W_{g+v.F}(a') W_h(a'', v) with h(y, u) = h_u(y)."""
    return predict_at("concat", a, inst)


def predict_k2(inst: GeneralInstance, a) -> int:
    return predict_at("k2", a, inst)


def direct_walsh(g, h, a) -> int:
    return predict_at("product", a, g, h)


def indirect_walsh(g, g1, h0, h1, a) -> int:
    return predict_at("indirect", a, g, g1, h0, h1)


def size3_walsh_simple(g, g1, g2, h0, h1, h2, a) -> int:
    return predict_at("size3_simple", a, g, g1, g2, h0, h1, h2)


def size3_walsh_fourterm(g, g1, g2, h0, h1, h2, h3, a) -> int:
    """Four-term version; h3 stands for the unattained word u0+u1+u2 and drops out."""
    return predict_at("size3_fourterm", a, g, g1, g2, h0, h1, h2, h3)


def size3_walsh_final(g, g1, g2, h0, h1, h2, a) -> int:
    return predict_at("size3_final", a, g, g1, g2, h0, h1, h2)


def gen1_walsh(g, g1, g2, h, h1, h2, a) -> int:
    return predict_at("gen1", a, g, g1, g2, h, h1, h2)


def gen1_walsh_regrouped(g, g1, g2, h, h1, h2, a) -> int:
    return predict_at("gen1_regrouped", a, g, g1, g2, h, h1, h2)


# -- the disjoint-support lemma ----------------------------------------------

def lemma1_pointwise(g: TruthTable, g1: TruthTable, g2: TruthTable) -> bool:
    """g - g' - g'' + (g + g' + g'') vanishes over the integers."""
    check_disjoint(g, g1, g2)
    combo = (g.bits.astype(np.int64) - g1.bits - g2.bits + (g ^ g1 ^ g2).bits)
    return not combo.any()


def lemma1_spectral(g: TruthTable, g1: TruthTable, g2: TruthTable) -> bool:
    check_disjoint(g, g1, g2)
    combo = fwht(g).values - fwht(g1).values - fwht(g2).values + fwht(g ^ g1 ^ g2).values
    return not combo.any()


def annihilator_identity(g: TruthTable, f: TruthTable, h: TruthTable) -> bool:
    """W_g - W_{g+f} - W_{g+h} + W_{g+f+h} vanishes whenever f h = 0."""
    if not is_annihilator_pair(f, h):
        x = int(np.flatnonzero((f & h).bits)[0])
        raise PreconditionError(f"h does not annihilate f (f h = 1 at x={x})", witness=x)
    combo = fwht(g).values - fwht(g ^ f).values - fwht(g ^ h).values + fwht(g ^ f ^ h).values
    return not combo.any()


# -- randomized verification harnesses ----------------------------------------

@dataclass
class FormulaCheck:
    name: str
    checked: int = 0
    witness: dict | None = None

    @property
    def passed(self) -> bool:
        return self.witness is None

    def as_record(self) -> dict:
        rec = {"formula": self.name, "passed": self.passed, "checked": self.checked}
        if self.witness is not None:
            rec["witness"] = self.witness
        return rec


THEOREM_PREDICTORS = {
    "preimage": lambda inst: predict_spectrum("preimage", inst).values,
    "charsum": lambda inst: predict_spectrum("charsum", inst).values,
    "concat": lambda inst: predict_spectrum("concat", inst).values,
}


def _first_mismatch(trial, expected, got):
    bad = np.flatnonzero(np.asarray(expected) != np.asarray(got))
    if len(bad) == 0:
        return None
    a = int(bad[0])
    return {"trial": trial, "a": a, "expected": int(expected[a]), "got": int(got[a])}


def verify_theorem(s: int, t: int, k: int, trials: int, seed: int, predictors=None) -> list[FormulaCheck]:
    """Compare every predictor with the FWHT of random constructed functions."""
    if min(s, t, k) < 1 or s + t > 24:
        raise DimensionError(f"need s, t, k >= 1 and s + t <= 24, got s={s} t={t} k={k}")
    predictors = THEOREM_PREDICTORS if predictors is None else predictors
    names = list(predictors) + (["k2"] if k == 2 and "k2" not in predictors else [])
    checks = {name: FormulaCheck(name) for name in names}
    rng = np.random.default_rng(seed)
    for trial in range(trials):
        inst = GeneralInstance(random_table(s, rng), random_map(s, k, rng), random_family(t, k, rng))
        expected = fwht(general_construct(inst)).values
        for name, check in checks.items():
            if check.witness is not None:
                continue
            got = predictors[name](inst) if name in predictors else predict_spectrum(name, inst).values
            check.checked += 1
            check.witness = _first_mismatch(trial, expected, got)
    return list(checks.values())


def random_disjoint_pair(n: int, rng: np.random.Generator) -> tuple[TruthTable, TruthTable]:
    """Random (f, h) with f h = 0."""
    f = random_table(n, rng)
    return f, random_table(n, rng) & ~f


def verify_lemma(n: int, trials: int, seed: int) -> list[FormulaCheck]:
    """Check the disjoint-support lemma and its annihilator form on random triples."""
    if not 1 <= n <= 16:
        raise DimensionError(f"n must be in [1, 16], got {n}")
    checks = [FormulaCheck("lemma1_pointwise"), FormulaCheck("lemma1_spectral"), FormulaCheck("annihilator")]
    rng = np.random.default_rng(seed)
    for trial in range(trials):
        g = random_table(n, rng)
        f, h = random_disjoint_pair(n, rng)
        results = (
            lemma1_pointwise(g, g ^ f, g ^ h),
            lemma1_spectral(g, g ^ f, g ^ h),
            annihilator_identity(g, f, h),
        )
        for check, ok in zip(checks, results):
            if check.witness is None:
                check.checked += 1
                if not ok:
                    check.witness = {"trial": trial, "g": g.to_hex(), "f": f.to_hex(), "h": h.to_hex()}
    return checks
