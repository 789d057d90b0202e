"""Exact toolkit for the secondary construction f(x, y) = g(x) + h_{F(x)}(y)
and the Walsh spectra of its special cases."""

from .analysis import (
    PropertyReport,
    analyze,
    is_annihilator_pair,
    is_balanced,
    is_bent,
    nonlinearity,
    plateaued_amplitude,
    resiliency_order,
)
from .anf_parser import eval_to_table, parse
from .constructions import (
    GeneralInstance,
    absorb_outer,
    direct_sum,
    expand_k2,
    expand_k3,
    gen1,
    gen2,
    general_construct,
    indirect_sum,
    size3_sum,
)
from .core import (
    FunctionFamily,
    TruthTable,
    VectorialMap,
    canonicalize_image,
    component_select,
    concat_family,
    covers,
    hamming_weight,
    image_set,
    inner_product,
    preimage_indicator,
    support,
)
from .transforms import Anf, WalshSpectrum, algebraic_degree, fourier, fwht, fwht_inverse, mobius

__version__ = "0.1.0"
