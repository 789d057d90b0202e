"""Truth tables, vectorial maps and function families.

Index convention used everywhere in the package: the input
``x = (x1, ..., xn)`` is stored at position ``sum(xi * 2**(n - i))``, so
``x1`` is the most significant bit.  A pair ``(x, y)`` with ``x`` on ``s``
variables and ``y`` on ``t`` variables lives at ``idx(x) * 2**t + idx(y)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import DimensionError, HexFormatError

MAX_VARS = 30


def _check_n(n: int) -> int:
    if not isinstance(n, (int, np.integer)) or not 0 <= n <= MAX_VARS:
        raise DimensionError(f"number of variables must be in [0, {MAX_VARS}], got {n!r}")
    return int(n)


def to_index(x: Sequence[int]) -> int:
    idx = 0
    for bit in x:
        idx = (idx << 1) | (int(bit) & 1)
    return idx


def to_bits(index: int, n: int) -> tuple[int, ...]:
    return tuple((index >> (n - 1 - i)) & 1 for i in range(n))


def support(x: Sequence[int]) -> set[int]:
    """1-based positions of the nonzero coordinates of ``x``."""
    return {i + 1 for i, bit in enumerate(x) if bit}


def hamming_weight(a: Sequence[int]) -> int:
    return len(support(a))


def _same_length(x, y):
    if len(x) != len(y):
        raise DimensionError(f"vectors have lengths {len(x)} and {len(y)}")


def covers(x: Sequence[int], y: Sequence[int]) -> bool:
    """True iff ``y`` covers ``x``, i.e. supp(x) is a subset of supp(y)."""
    _same_length(x, y)
    return support(x) <= support(y)


def inner_product(a: Sequence[int], x: Sequence[int]) -> int:
    _same_length(a, x)
    return sum(int(ai) & int(xi) for ai, xi in zip(a, x)) & 1


def parity(values):
    """Parity of the popcount, elementwise for arrays (as int64)."""
    return (np.bitwise_count(values) & 1).astype(np.int64)


def _word(u, k: int) -> int:
    if isinstance(u, (int, np.integer)):
        u = int(u)
    else:
        if len(u) != k:
            raise DimensionError(f"expected a {k}-bit word, got {len(u)} bits")
        u = to_index(u)
    if not 0 <= u < (1 << k):
        raise DimensionError(f"word {u} does not fit in {k} bits")
    return u


class TruthTable:
    """Bit-packed value table of an n-variable Boolean function.

    Values are packed eight per byte, index 0 in the most significant bit
    of the first byte.  Instances are immutable.
    """

    def __init__(self, n_vars: int, packed: np.ndarray):
        n_vars = _check_n(n_vars)
        packed = np.asarray(packed, dtype=np.uint8)
        if packed.shape != (max(1, (1 << n_vars) // 8),):
            raise DimensionError(f"packed buffer has wrong shape {packed.shape} for n={n_vars}")
        packed.flags.writeable = False
        self.n_vars = n_vars
        self._packed = packed

    @classmethod
    def from_bits(cls, bits, n_vars: int | None = None) -> TruthTable:
        bits = np.asarray(bits, dtype=np.uint8).ravel()
        size = bits.size
        if size == 0 or size & (size - 1):
            raise DimensionError(f"table length must be a power of two, got {size}")
        n = size.bit_length() - 1
        if n_vars is not None and n_vars != n:
            raise DimensionError(f"table of length {size} does not have {n_vars} variables")
        _check_n(n)
        return cls(n, np.packbits(bits & 1, bitorder="big"))

    @classmethod
    def zeros(cls, n: int) -> TruthTable:
        return cls(n, np.zeros(max(1, (1 << _check_n(n)) // 8), dtype=np.uint8))

    @classmethod
    def ones(cls, n: int) -> TruthTable:
        return ~cls.zeros(n)

    @classmethod
    def variable(cls, i: int, n: int) -> TruthTable:
        """The coordinate function x_i (1-based)."""
        if not 1 <= i <= n:
            raise DimensionError(f"variable x{i} out of range for n={n}")
        idx = np.arange(1 << _check_n(n), dtype=np.int64)
        return cls.from_bits((idx >> (n - i)) & 1)

    @classmethod
    def linear(cls, a, n: int) -> TruthTable:
        """The linear function x -> a.x."""
        a = _word(a, n)
        idx = np.arange(1 << _check_n(n), dtype=np.int64)
        return cls.from_bits(parity(idx & a))

    @classmethod
    def from_function(cls, n: int, func: Callable[[tuple[int, ...]], int]) -> TruthTable:
        return cls.from_bits([func(to_bits(i, n)) & 1 for i in range(1 << _check_n(n))])

    @classmethod
    def from_hex(cls, text: str, n: int | None = None) -> TruthTable:
        text = text.strip().lower()
        if not text or any(c not in "0123456789abcdef" for c in text):
            raise HexFormatError(f"not a hexadecimal truth table: {text!r}")
        if n is None:
            size = 4 * len(text)
            if size & (size - 1):
                raise HexFormatError(f"{len(text)} hex digits do not encode a truth table")
            n = size.bit_length() - 1
        _check_n(n)
        digits = max(1, (1 << n) // 4)
        if len(text) != digits:
            raise HexFormatError(f"n={n} needs {digits} hex digits, got {len(text)}")
        raw = np.frombuffer(bytes.fromhex(text if len(text) % 2 == 0 else text + "0"), dtype=np.uint8)
        bits = np.unpackbits(raw, bitorder="big")[: 1 << n]
        if n < 2 and int(text, 16) & ((1 << (4 - (1 << n))) - 1):
            raise HexFormatError(f"padding bits set in {text!r} for n={n}")
        return cls.from_bits(bits)

    def to_hex(self) -> str:
        return self._packed.tobytes().hex()[: max(1, (1 << self.n_vars) // 4)]

    @property
    def size(self) -> int:
        return 1 << self.n_vars

    @property
    def packed(self) -> np.ndarray:
        return self._packed

    @cached_property
    def bits(self) -> np.ndarray:
        """Unpacked values as a read-only uint8 array in index order."""
        out = np.unpackbits(self._packed, bitorder="big")[: self.size]
        out.flags.writeable = False
        return out

    def signs(self) -> np.ndarray:
        """(-1)^f(x) as int64."""
        return 1 - 2 * self.bits.astype(np.int64)

    def weight(self) -> int:
        return int(np.bitwise_count(self._packed).sum())

    def is_zero(self) -> bool:
        return not self._packed.any()

    def __len__(self):
        return self.size

    def __getitem__(self, index: int) -> int:
        return int(self.bits[index])

    def __call__(self, x: Sequence[int]) -> int:
        if len(x) != self.n_vars:
            raise DimensionError(f"point has {len(x)} coordinates, table has {self.n_vars}")
        return self[to_index(x)]

    def _binary(self, other, op):
        if not isinstance(other, TruthTable):
            return NotImplemented
        if other.n_vars != self.n_vars:
            raise DimensionError(f"tables on {self.n_vars} and {other.n_vars} variables")
        return TruthTable(self.n_vars, op(self._packed, other._packed))

    def __xor__(self, other):
        return self._binary(other, np.bitwise_xor)

    def __and__(self, other):
        return self._binary(other, np.bitwise_and)

    def __or__(self, other):
        return self._binary(other, np.bitwise_or)

    def __invert__(self):
        out = ~self._packed
        if self.size < 8:
            out &= np.uint8((0xFF << (8 - self.size)) & 0xFF)
        return TruthTable(self.n_vars, out)

    def __eq__(self, other):
        if not isinstance(other, TruthTable):
            return NotImplemented
        return self.n_vars == other.n_vars and np.array_equal(self._packed, other._packed)

    def __hash__(self):
        return hash((self.n_vars, self._packed.tobytes()))

    def __repr__(self):
        shown = self.to_hex()
        if len(shown) > 32:
            shown = shown[:29] + "..."
        return f"TruthTable(n={self.n_vars}, hex={shown!r})"


@dataclass(frozen=True)
class VectorialMap:
    """An (s,k)-vectorial function given by its k coordinate tables.

    F(x) is read as the k-bit word (f1(x), ..., fk(x)) with f1 the most
    significant bit.
    """

    s: int
    k: int
    coords: tuple[TruthTable, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        if self.k < 1 or len(self.coords) != self.k:
            raise DimensionError(f"expected {self.k} coordinate functions, got {len(self.coords)}")
        for c in self.coords:
            if c.n_vars != self.s:
                raise DimensionError(f"coordinate on {c.n_vars} variables, expected {self.s}")

    @classmethod
    def from_values(cls, s: int, k: int, values) -> VectorialMap:
        values = np.asarray(values, dtype=np.int64)
        if values.shape != (1 << s,):
            raise DimensionError(f"need {1 << s} output words, got shape {values.shape}")
        if values.min(initial=0) < 0 or values.max(initial=0) >= (1 << k):
            raise DimensionError(f"output words do not fit in {k} bits")
        coords = tuple(TruthTable.from_bits((values >> (k - 1 - i)) & 1) for i in range(k))
        return cls(s, k, coords)

    @classmethod
    def constant(cls, s: int, k: int, u) -> VectorialMap:
        return cls.from_values(s, k, np.full(1 << s, _word(u, k)))

    @cached_property
    def values(self) -> np.ndarray:
        """F(x) as an integer word, for every x in index order."""
        out = np.zeros(1 << self.s, dtype=np.int64)
        for c in self.coords:
            out = (out << 1) | c.bits
        out.flags.writeable = False
        return out

    def __call__(self, x) -> int:
        if not isinstance(x, (int, np.integer)):
            x = to_index(x)
        return int(self.values[x])

    def is_permutation(self) -> bool:
        return self.s == self.k and len(np.unique(self.values)) == (1 << self.s)


def image_set(F: VectorialMap) -> frozenset[int]:
    """Attained output words, as integers under the index convention."""
    return frozenset(int(u) for u in np.unique(F.values))


def preimage_indicator(F: VectorialMap, u) -> TruthTable:
    return TruthTable.from_bits(F.values == _word(u, F.k))


def component_select(F: VectorialMap, v) -> TruthTable:
    """The component function v.F, XOR of the coordinates selected by v."""
    v = _word(v, F.k)
    out = TruthTable.zeros(F.s)
    for i, c in enumerate(F.coords):
        if (v >> (F.k - 1 - i)) & 1:
            out = out ^ c
    return out


def canonicalize_image(F: VectorialMap) -> tuple[VectorialMap, dict[int, int]]:
    """Relabel Im(F) onto the smallest word length that holds it.

    Image words are numbered 0, 1, 2, ... in order of first occurrence when
    scanning x by increasing index.  Returns the new map and the relabeling.
    """
    words, first = np.unique(F.values, return_index=True)
    ordered = words[np.argsort(first)]
    relabel = {int(w): i for i, w in enumerate(ordered)}
    l = max(1, math.ceil(math.log2(len(ordered))))
    lookup = np.zeros(1 << F.k, dtype=np.int64)
    lookup[ordered] = np.arange(len(ordered))
    return VectorialMap.from_values(F.s, l, lookup[F.values]), relabel


@dataclass(frozen=True)
class FunctionFamily:
    """The family {h_u : u in F_2^k} of t-variable functions, indexed by idx(u)."""

    t: int
    k: int
    members: tuple[TruthTable, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if len(self.members) != (1 << self.k):
            raise DimensionError(f"family needs {1 << self.k} members, got {len(self.members)}")
        for h in self.members:
            if h.n_vars != self.t:
                raise DimensionError(f"member on {h.n_vars} variables, expected {self.t}")

    @classmethod
    def from_partial(cls, t: int, k: int, members: Mapping) -> FunctionFamily:
        """Build a family from some members; missing words get the zero function."""
        filled = [TruthTable.zeros(t)] * (1 << k)
        for u, h in members.items():
            filled[_word(u, k)] = h
        return cls(t, k, tuple(filled))

    def __getitem__(self, u) -> TruthTable:
        return self.members[_word(u, self.k)]

    @cached_property
    def matrix(self) -> np.ndarray:
        """Member values stacked as a (2^k, 2^t) uint8 array."""
        out = np.stack([h.bits for h in self.members])
        out.flags.writeable = False
        return out


def concat_family(H: FunctionFamily) -> TruthTable:
    """The (t+k)-variable function h(y, u) = h_u(y)."""
    return TruthTable.from_bits(H.matrix.T.ravel())


def split_family(h: TruthTable, t: int) -> FunctionFamily:
    """Inverse of concat_family: slice h(y, u) at each fixed u."""
    k = h.n_vars - t
    if k < 1:
        raise DimensionError(f"cannot split {h.n_vars} variables into t={t} and k>=1")
    rows = h.bits.reshape(1 << t, 1 << k).T
    return FunctionFamily(t, k, tuple(TruthTable.from_bits(r) for r in rows))


def random_table(n: int, rng: np.random.Generator) -> TruthTable:
    return TruthTable.from_bits(rng.integers(0, 2, size=1 << n, dtype=np.uint8))


def random_map(s: int, k: int, rng: np.random.Generator) -> VectorialMap:
    return VectorialMap(s, k, tuple(random_table(s, rng) for _ in range(k)))


def random_family(t: int, k: int, rng: np.random.Generator) -> FunctionFamily:
    return FunctionFamily(t, k, tuple(random_table(t, rng) for _ in range(1 << k)))
