"""Exact Walsh-Hadamard, Moebius (ANF) and 0/1 Fourier transforms."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import TruthTable, parity, to_bits
from .errors import SpectrumError


def _butterfly(a: np.ndarray) -> np.ndarray:
    """In-place unnormalized Hadamard butterfly along the last axis."""
    size = a.shape[-1]
    lead = a.shape[:-1]
    h = 1
    while h < size:
        v = a.reshape(*lead, -1, 2, h)
        top = v[..., 0, :].copy()
        v[..., 0, :] += v[..., 1, :]
        np.subtract(top, v[..., 1, :], out=v[..., 1, :])
        h <<= 1
    return a


def _xor_butterfly(a: np.ndarray) -> np.ndarray:
    size = a.shape[-1]
    lead = a.shape[:-1]
    h = 1
    while h < size:
        v = a.reshape(*lead, -1, 2, h)
        v[..., 1, :] ^= v[..., 0, :]
        h <<= 1
    return a


@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    n_vars: int
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.int64)
        if values.shape != (1 << self.n_vars,):
            raise SpectrumError(f"spectrum of n={self.n_vars} needs {1 << self.n_vars} values")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def __getitem__(self, a):
        return int(self.values[a])

    def __len__(self):
        return len(self.values)

    def __neg__(self):
        return WalshSpectrum(self.n_vars, -self.values)

    def __eq__(self, other):
        if not isinstance(other, WalshSpectrum):
            return NotImplemented
        return self.n_vars == other.n_vars and np.array_equal(self.values, other.values)

    def tolist(self) -> list[int]:
        return self.values.tolist()

    def max_abs(self) -> int:
        return int(np.abs(self.values).max())


def walsh_matrix(rows: np.ndarray) -> np.ndarray:
    """Walsh spectra of a stack of 0/1 tables (one table per row)."""
    return _butterfly(1 - 2 * np.asarray(rows, dtype=np.int64))


def fwht(f: TruthTable) -> WalshSpectrum:
    """W_f(a) = sum_x (-1)^(f(x) + a.x) for every a, in O(n 2^n)."""
    return WalshSpectrum(f.n_vars, _butterfly(f.signs()))


def walsh_at(f: TruthTable, a: int) -> int:
    """A single Walsh coefficient, summed directly from the definition."""
    idx = np.arange(f.size, dtype=np.int64)
    return int(np.dot(f.signs(), 1 - 2 * parity(idx & int(a))))


def fwht_inverse(W: WalshSpectrum) -> TruthTable:
    """Recover f from its spectrum; rejects vectors no Boolean function realizes."""
    n = W.n_vars
    back = _butterfly(np.array(W.values, dtype=np.int64))
    if not np.all(np.abs(back) == (1 << n)):
        bad = int(np.flatnonzero(np.abs(back) != (1 << n))[0])
        raise SpectrumError(f"not a Walsh spectrum: reconstructed value {back[bad]}/2^{n} at x={bad}")
    return TruthTable.from_bits(back < 0)


@dataclass(frozen=True)
class Anf:
    """Algebraic normal form as a set of monomial masks.

    Mask ``m`` stands for the product of the x_i with bit ``n - i`` of ``m``
    set (the same convention as table indices); mask 0 is the constant 1.
    """

    n_vars: int
    monomials: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "monomials", frozenset(int(m) for m in self.monomials))

    @property
    def degree(self) -> int:
        return max((bin(m).count("1") for m in self.monomials), default=-1)

    def variables(self, mask: int) -> tuple[int, ...]:
        return tuple(i + 1 for i, b in enumerate(to_bits(mask, self.n_vars)) if b)

    def to_table(self) -> TruthTable:
        coeffs = np.zeros(1 << self.n_vars, dtype=np.uint8)
        coeffs[list(self.monomials)] = 1
        return TruthTable.from_bits(_xor_butterfly(coeffs))

    def __str__(self):
        if not self.monomials:
            return "0"
        terms = sorted((self.variables(m) for m in self.monomials), key=lambda vs: (-len(vs), vs))
        return " + ".join("*".join(f"x{i}" for i in vs) if vs else "1" for vs in terms)


def mobius(f: TruthTable) -> Anf:
    coeffs = _xor_butterfly(np.array(f.bits))
    return Anf(f.n_vars, frozenset(np.flatnonzero(coeffs).tolist()))


def algebraic_degree(f: TruthTable) -> int:
    """Maximum monomial weight in the ANF; -1 for the zero function."""
    return mobius(f).degree


@dataclass(frozen=True, eq=False)
class FourierSpectrum:
    n_vars: int
    values: np.ndarray

    def __getitem__(self, a):
        return int(self.values[a])

    def __eq__(self, other):
        if not isinstance(other, FourierSpectrum):
            return NotImplemented
        return self.n_vars == other.n_vars and np.array_equal(self.values, other.values)

    def tolist(self) -> list[int]:
        return self.values.tolist()


def fourier(f: TruthTable) -> FourierSpectrum:
    """hat f(a) = sum_x f(x) (-1)^(a.x), with f read as 0/1 integers.

    Related to the Walsh transform by W_f(a) = 2^n [a == 0] - 2 hat f(a).
    """
    return FourierSpectrum(f.n_vars, _butterfly(f.bits.astype(np.int64)))
