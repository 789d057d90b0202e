"""Truth-table builders for the secondary constructions.

Every output is a function of (x, y) with x first, stored at index
``idx(x) * 2**t + idx(y)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .core import FunctionFamily, TruthTable, VectorialMap, component_select
from .errors import DimensionError, PreconditionError


@dataclass(frozen=True)
class GeneralInstance:
    """Inputs of f(x, y) = g(x) + h_{F(x)}(y)."""

    g: TruthTable
    F: VectorialMap
    H: FunctionFamily

    def __post_init__(self):
        if self.g.n_vars != self.F.s:
            raise DimensionError(f"g has {self.g.n_vars} variables but F is defined on {self.F.s}")
        if self.H.k != self.F.k:
            raise DimensionError(f"F has {self.F.k} outputs but the family is indexed by {self.H.k} bits")

    @property
    def s(self) -> int:
        return self.F.s

    @property
    def t(self) -> int:
        return self.H.t

    @property
    def k(self) -> int:
        return self.F.k

    @property
    def n(self) -> int:
        return self.s + self.t


def _same_size(*tables: TruthTable) -> int:
    sizes = {f.n_vars for f in tables}
    if len(sizes) != 1:
        raise DimensionError(f"tables have mismatched variable counts {sorted(sizes)}")
    return sizes.pop()


def _bilinear(g, h, products=()):
    """g(x) + h(y) + sum of a(x) b(y) over the given (a, b) pairs."""
    m = g.bits[:, None] ^ h.bits[None, :]
    for a, b in products:
        m ^= np.outer(a.bits, b.bits)
    return TruthTable.from_bits(m)


def swap_halves(f: TruthTable, s: int) -> TruthTable:
    """Reorder the inputs of f(x, y), x on s variables, into f'(y, x)."""
    t = f.n_vars - s
    if t < 0:
        raise DimensionError(f"cannot split {f.n_vars} variables at s={s}")
    return TruthTable.from_bits(f.bits.reshape(1 << s, 1 << t).T)


def check_disjoint(g: TruthTable, g1: TruthTable, g2: TruthTable) -> None:
    """Raise PreconditionError unless (g + g1)(g + g2) is the zero function."""
    _same_size(g, g1, g2)
    overlap = (g ^ g1) & (g ^ g2)
    if not overlap.is_zero():
        x = int(np.flatnonzero(overlap.bits)[0])
        raise PreconditionError(f"(g+g')(g+g'') is nonzero at x={x}", witness=x)


def direct_sum(g: TruthTable, h: TruthTable) -> TruthTable:
    return _bilinear(g, h)


def indirect_sum(g, g1, h, h1) -> TruthTable:
    """g(x) + h(y) + (g + g')(x) (h + h')(y)."""
    _same_size(g, g1)
    _same_size(h, h1)
    return _bilinear(g, h, [(g ^ g1, h ^ h1)])


def gen1(g, g1, g2, h, h1, h2) -> TruthTable:
    _same_size(g, g1, g2)
    _same_size(h, h1, h2)
    return _bilinear(g, h, [(g ^ g1, h ^ h1), (g1 ^ g2, h1 ^ h2)])


def gen2(g, g1, g2, g3, h, h1, h2, h3) -> TruthTable:
    _same_size(g, g1, g2, g3)
    _same_size(h, h1, h2, h3)
    return _bilinear(g, h, [(g ^ g1, h ^ h1), (g1 ^ g2, h1 ^ h2), (g2 ^ g3, h2 ^ h3)])


def size3_sum(g, g1, g2, h0, h1, h2, check: bool = True) -> TruthTable:
    """The three-fiber form g + h0 + (g + g')(h1 + h2) + (g' + g'')(h2 + h0).

    The fibers are supp(g + g') for h1, supp(g + g'') for h2 and the rest
    for h0, so the two supports must be disjoint.  ``check=False`` skips
    that validation and evaluates the expression as written.
    """
    _same_size(g, g1, g2)
    _same_size(h0, h1, h2)
    if check:
        check_disjoint(g, g1, g2)
    return _bilinear(g, h0, [(g ^ g1, h1 ^ h2), (g1 ^ g2, h2 ^ h0)])


def general_construct(inst: GeneralInstance) -> TruthTable:
    """f(x, y) = g(x) + h_{F(x)}(y)."""
    m = inst.H.matrix[inst.F.values] ^ inst.g.bits[:, None]
    return TruthTable.from_bits(m)


def _monomial(F: VectorialMap, subset) -> TruthTable:
    out = TruthTable.ones(F.s)
    for i in subset:
        out = out & F.coords[i]
    return out


def expand_anf(inst: GeneralInstance) -> TruthTable:
    """Build f from the expansion over u in F_2^k and subsets I of {1..k}:

        f = g + sum_u sum_I prod_{i in I} f_i(x) prod_{i not in I} (u_i + 1) h_u(y)
    """
    k = inst.k
    terms = []
    for u in range(1 << k):
        ubits = [(u >> (k - 1 - i)) & 1 for i in range(k)]
        for size in range(k + 1):
            for subset in combinations(range(k), size):
                if all(ubits[i] == 0 for i in range(k) if i not in subset):
                    terms.append((_monomial(inst.F, subset), inst.H[u]))
    return _bilinear(inst.g, TruthTable.zeros(inst.t), terms)


def expand_k2(inst: GeneralInstance) -> TruthTable:
    if inst.k != 2:
        raise DimensionError(f"expand_k2 needs k=2, got k={inst.k}")
    f1, f2 = inst.F.coords
    h00, h01, h10, h11 = inst.H.members
    return _bilinear(inst.g, h00, [
        (f1 & f2, h00 ^ h01 ^ h10 ^ h11),
        (f1, h00 ^ h10),
        (f2, h00 ^ h01),
    ])


def expand_k3(inst: GeneralInstance) -> TruthTable:
    if inst.k != 3:
        raise DimensionError(f"expand_k3 needs k=3, got k={inst.k}")
    f1, f2, f3 = inst.F.coords
    h000, h001, h010, h011, h100, h101, h110, h111 = inst.H.members
    return _bilinear(inst.g, h000, [
        (f1 & f2 & f3, h000 ^ h001 ^ h010 ^ h011 ^ h100 ^ h101 ^ h110 ^ h111),
        (f1 & f2, h000 ^ h010 ^ h100 ^ h110),
        (f1 & f3, h000 ^ h100 ^ h001 ^ h101),
        (f2 & f3, h000 ^ h001 ^ h010 ^ h011),
        (f1, h000 ^ h100),
        (f2, h000 ^ h010),
        (f3, h000 ^ h001),
    ])


def absorb_outer(inst: GeneralInstance) -> GeneralInstance:
    """Fold g into the family when F is a permutation: h'_z = h_z + g(F^-1(z))."""
    if not inst.F.is_permutation():
        raise PreconditionError("F is not a permutation of F_2^s")
    inverse = np.empty(1 << inst.s, dtype=np.int64)
    inverse[inst.F.values] = np.arange(1 << inst.s)
    ones = TruthTable.ones(inst.t)
    members = tuple(h ^ ones if inst.g[int(inverse[z])] else h for z, h in enumerate(inst.H.members))
    return GeneralInstance(TruthTable.zeros(inst.s), inst.F, FunctionFamily(inst.t, inst.k, members))


# Instances of the general construction that reproduce the classic ones.

def direct_instance(g, h, k: int = 1, u0: int = 0) -> GeneralInstance:
    F = VectorialMap.constant(g.n_vars, k, u0)
    return GeneralInstance(g, F, FunctionFamily.from_partial(h.n_vars, k, {u0: h}))


def indirect_instance(g, g1, h0, h1, k: int = 1, words=(0, 1)) -> GeneralInstance:
    """Two fibers: supp(g + g') is mapped to words[1], the rest to words[0]."""
    _same_size(g, g1)
    _same_size(h0, h1)
    u0, u1 = words
    values = np.where((g ^ g1).bits, u1, u0)
    F = VectorialMap.from_values(g.n_vars, k, values)
    return GeneralInstance(g, F, FunctionFamily.from_partial(h0.n_vars, k, {u0: h0, u1: h1}))


def size3_instance(g, g1, g2, h0, h1, h2, k: int = 2, words=(0, 1, 2)) -> GeneralInstance:
    check_disjoint(g, g1, g2)
    _same_size(h0, h1, h2)
    u0, u1, u2 = words
    values = np.full(1 << g.n_vars, u0, dtype=np.int64)
    values[(g ^ g1).bits.astype(bool)] = u1
    values[(g ^ g2).bits.astype(bool)] = u2
    F = VectorialMap.from_values(g.n_vars, k, values)
    return GeneralInstance(g, F, FunctionFamily.from_partial(h0.n_vars, k, {u0: h0, u1: h1, u2: h2}))


def gen1_family(h, h1, h2) -> FunctionFamily:
    """h_(0,0) = h, h_(0,1) = h + h' + h'', h_(1,0) = h'', h_(1,1) = h'."""
    _same_size(h, h1, h2)
    return FunctionFamily(h.n_vars, 2, (h, h ^ h1 ^ h2, h2, h1))


def gen1_instance(g, g1, g2, h, h1, h2) -> GeneralInstance:
    _same_size(g, g1, g2)
    return GeneralInstance(g, VectorialMap(g.n_vars, 2, (g ^ g1, g ^ g2)), gen1_family(h, h1, h2))


def gen2_family(h, h1, h2, h3) -> FunctionFamily:
    _same_size(h, h1, h2, h3)
    return FunctionFamily(h.n_vars, 3, (
        h,               # (0,0,0)
        h ^ h2 ^ h3,     # (0,0,1)
        h ^ h1 ^ h3,     # (0,1,0)
        h ^ h1 ^ h2,     # (0,1,1)
        h2,              # (1,0,0)
        h3,              # (1,0,1)
        h1 ^ h2 ^ h3,    # (1,1,0)
        h1,              # (1,1,1)
    ))


def gen2_instance(g, g1, g2, g3, h, h1, h2, h3) -> GeneralInstance:
    _same_size(g, g1, g2, g3)
    F = VectorialMap(g.n_vars, 3, (g ^ g1, g ^ g2, g ^ g3))
    return GeneralInstance(g, F, gen2_family(h, h1, h2, h3))


def component(inst: GeneralInstance, v) -> TruthTable:
    """g + v.F, the outer function shifted by a component of F."""
    return inst.g ^ component_select(inst.F, v)
