"""Cryptographic properties computed exactly from the Walsh spectrum."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .core import TruthTable
from .errors import DimensionError
from .transforms import WalshSpectrum, algebraic_degree, fwht


def _values(spectrum):
    if isinstance(spectrum, WalshSpectrum):
        return spectrum.n_vars, spectrum.values
    values = np.asarray(spectrum, dtype=np.int64)
    return values.size.bit_length() - 1, values


def spectrum_nonlinearity(spectrum) -> int:
    n, w = _values(spectrum)
    return (1 << n) // 2 - int(np.abs(w).max()) // 2


def spectrum_is_bent(spectrum) -> bool:
    n, w = _values(spectrum)
    return n % 2 == 0 and bool(np.all(np.abs(w) == (1 << (n // 2))))


def spectrum_amplitude(spectrum) -> int | None:
    _, w = _values(spectrum)
    levels = np.unique(np.abs(w[w != 0]))
    return int(levels[0]) if len(levels) == 1 else None


def spectrum_resiliency(spectrum) -> int:
    _, w = _values(spectrum)
    nonzero = np.flatnonzero(w)
    return int(np.bitwise_count(nonzero).min()) - 1


def nonlinearity(f: TruthTable) -> int:
    """2^(n-1) - max|W_f| / 2, the distance from f to the affine functions."""
    if f.n_vars < 1:
        raise DimensionError("nonlinearity needs n >= 1")
    return spectrum_nonlinearity(fwht(f))


def is_bent(f: TruthTable) -> bool:
    return spectrum_is_bent(fwht(f))


def plateaued_amplitude(f: TruthTable) -> int | None:
    """The amplitude lambda if the spectrum takes values in {0, +-lambda}, else None."""
    return spectrum_amplitude(fwht(f))


def resiliency_order(f: TruthTable) -> int:
    """Largest t with W_f(a) = 0 whenever w_H(a) <= t; -1 if f is unbalanced."""
    return spectrum_resiliency(fwht(f))


def is_balanced(f: TruthTable) -> bool:
    return 2 * f.weight() == f.size


def is_annihilator_pair(f: TruthTable, h: TruthTable) -> bool:
    """True iff f * h is the zero function."""
    if f.n_vars != h.n_vars:
        raise DimensionError(f"tables on {f.n_vars} and {h.n_vars} variables")
    return (f & h).is_zero()


@dataclass(frozen=True)
class PropertyReport:
    n_vars: int
    nonlinearity: int
    is_bent: bool
    plateaued_amplitude: int | None
    resiliency_order: int
    is_balanced: bool
    degree: int

    def as_record(self) -> dict:
        return asdict(self)


def analyze(f: TruthTable, spectrum: WalshSpectrum | None = None) -> PropertyReport:
    w = fwht(f) if spectrum is None else spectrum
    return PropertyReport(
        n_vars=f.n_vars,
        nonlinearity=spectrum_nonlinearity(w) if f.n_vars else 0,
        is_bent=spectrum_is_bent(w),
        plateaued_amplitude=spectrum_amplitude(w),
        resiliency_order=spectrum_resiliency(w),
        is_balanced=is_balanced(f),
        degree=algebraic_degree(f),
    )
