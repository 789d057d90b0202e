import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boolcons.core import (
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
    random_map,
    split_family,
    support,
    to_bits,
    to_index,
)
from boolcons.errors import DimensionError, HexFormatError
from boolcons.anf_parser import table_from_anf_string


def tt(*bits):
    return TruthTable.from_bits(bits)


X1 = TruthTable.variable(1, 2)
X2 = TruthTable.variable(2, 2)


@pytest.mark.parametrize("x, expected", [((0, 0, 0), set()), ((1, 0, 1), {1, 3}), ((1, 1, 1), {1, 2, 3})])
def test_support(x, expected):
    assert support(x) == expected


@pytest.mark.parametrize("a, w", [((0, 0), 0), ((1, 0, 1, 1), 3), ((1,) * 7, 7)])
def test_hamming_weight(a, w):
    assert hamming_weight(a) == w


def test_covers():
    assert covers((0, 1), (1, 1))
    assert covers((1, 0, 1), (1, 0, 1))
    assert not covers((1, 0), (0, 1))
    with pytest.raises(DimensionError):
        covers((1,), (1, 0))


def test_inner_product():
    assert inner_product((0, 0, 0), (1, 0, 1)) == 0
    assert inner_product((1, 1), (1, 1)) == 0
    assert inner_product((1, 0, 1), (1, 1, 1)) == 0
    assert inner_product((1, 0, 1), (1, 1, 0)) == 1
    with pytest.raises(DimensionError):
        inner_product((1, 1), (1,))


def test_index_convention_x1_is_msb():
    assert table_from_anf_string("x1", 2).bits.tolist() == [0, 0, 1, 1]
    assert X1.bits.tolist() == [0, 0, 1, 1]
    assert X2.bits.tolist() == [0, 1, 0, 1]
    assert to_index((1, 0)) == 2
    assert to_bits(2, 2) == (1, 0)


@given(st.integers(0, 6), st.data())
def test_evaluation_matches_index(n, data):
    bits = data.draw(st.lists(st.integers(0, 1), min_size=1 << n, max_size=1 << n))
    f = TruthTable.from_bits(bits)
    for i in range(1 << n):
        assert f(to_bits(i, n)) == bits[i] == f[i]


def test_hex_format():
    assert tt(0, 0, 0, 1).to_hex() == "1"
    assert TruthTable.from_hex("1").bits.tolist() == [0, 0, 0, 1]
    assert len(TruthTable.variable(1, 4).to_hex()) == 4
    assert TruthTable.variable(1, 4).to_hex() == "00ff"
    assert tt(1, 0).to_hex() == "8"
    assert TruthTable.from_hex("4", 1).bits.tolist() == [0, 1]
    with pytest.raises(HexFormatError):
        TruthTable.from_hex("zz")
    with pytest.raises(HexFormatError):
        TruthTable.from_hex("1", 1)   # padding bit set
    with pytest.raises(HexFormatError):
        TruthTable.from_hex("abc")


@given(st.integers(0, 10), st.randoms(use_true_random=False))
def test_hex_round_trip(n, rnd):
    bits = [rnd.randint(0, 1) for _ in range(1 << n)]
    f = TruthTable.from_bits(bits)
    assert TruthTable.from_hex(f.to_hex(), n) == f


def test_bitwise_ops_and_padding():
    f = tt(0, 1)
    assert (~f).bits.tolist() == [1, 0]
    assert (~f).packed.tolist() == [0b10000000]
    assert TruthTable.ones(2).weight() == 4
    assert (X1 ^ X2).bits.tolist() == [0, 1, 1, 0]
    assert (X1 & X2).bits.tolist() == [0, 0, 0, 1]
    assert hash(X1 ^ X2) == hash(tt(0, 1, 1, 0))
    with pytest.raises(DimensionError):
        X1 ^ TruthTable.zeros(3)


def test_bad_sizes():
    with pytest.raises(DimensionError):
        TruthTable.from_bits([0, 1, 1])
    with pytest.raises(DimensionError):
        TruthTable.zeros(31)


def test_image_set():
    zero = TruthTable.zeros(2)
    assert image_set(VectorialMap(2, 2, (zero, zero))) == {0}
    x1 = TruthTable.variable(1, 1)
    assert image_set(VectorialMap(1, 2, (x1, x1))) == {0b00, 0b11}
    assert image_set(VectorialMap(2, 2, (X1, X2))) == {0, 1, 2, 3}


def test_preimage_indicator():
    const = VectorialMap.constant(3, 2, (1, 0))
    assert preimage_indicator(const, (1, 0)) == TruthTable.ones(3)
    assert preimage_indicator(const, (0, 1)) == TruthTable.zeros(3)
    F = VectorialMap(2, 2, (X1, X2))
    # F(x) = x, so u = (1,0) is attained only at idx 2
    assert preimage_indicator(F, (1, 0)).bits.tolist() == [0, 0, 1, 0]


def test_preimage_partition(rng):
    for s in range(1, 13):
        F = random_map(s, 3, rng)
        total = sum(preimage_indicator(F, u).bits.astype(int) for u in range(8))
        assert np.all(total == 1)


def test_component_select():
    F = VectorialMap(2, 2, (X1, X2))
    assert component_select(F, 0) == TruthTable.zeros(2)
    assert component_select(F, (1, 0)) == X1
    assert component_select(F, (0, 1)) == X2
    assert component_select(F, (1, 1)).bits.tolist() == [0, 1, 1, 0]


def _fibers(F):
    return {frozenset(np.flatnonzero(F.values == u).tolist()) for u in image_set(F)}


def test_canonicalize_image(rng):
    const = VectorialMap.constant(3, 3, 5)
    G, relabel = canonicalize_image(const)
    assert G.k == 1 and G.coords[0].is_zero() and relabel == {5: 0}

    two = VectorialMap.from_values(2, 3, [6, 1, 1, 6])
    G, relabel = canonicalize_image(two)
    assert G.k == 1 and relabel == {6: 0, 1: 1}
    assert _fibers(G) == _fibers(two)

    three = VectorialMap.from_values(2, 2, [3, 0, 3, 2])
    G, relabel = canonicalize_image(three)
    assert G.k == 2 and relabel == {3: 0, 0: 1, 2: 2}
    for old, new in relabel.items():
        assert preimage_indicator(three, old) == preimage_indicator(G, new)

    for _ in range(50):
        F = random_map(4, 3, rng)
        G, relabel = canonicalize_image(F)
        assert G.k == max(1, int(np.ceil(np.log2(len(image_set(F))))))
        same_before = F.values[:, None] == F.values[None, :]
        same_after = G.values[:, None] == G.values[None, :]
        assert np.array_equal(same_before, same_after)
        assert np.array_equal(np.array([relabel[int(w)] for w in F.values]), G.values)


def test_concat_family():
    h0 = TruthTable.zeros(1)
    h1 = TruthTable.variable(1, 1)
    # (y, u) order 00, 01, 10, 11
    assert concat_family(FunctionFamily(1, 1, (h0, h1))).bits.tolist() == [0, 0, 0, 1]

    same = FunctionFamily(2, 2, (X1,) * 4)
    h = concat_family(same)
    assert h == TruthTable.from_bits(np.repeat(X1.bits, 4))


def test_concat_family_ordering_matches_block_layout(rng):
    # h = h_(0,0) || h_(0,1) || h_(1,0) || h_(1,1) read as h(y, u) with u last
    members = tuple(TruthTable.from_bits(rng.integers(0, 2, 8)) for _ in range(4))
    h = concat_family(FunctionFamily(3, 2, members))
    for u in range(4):
        for y in range(8):
            assert h[y * 4 + u] == members[u][y]
    assert split_family(h, 3).members == members


def test_family_from_partial():
    H = FunctionFamily.from_partial(2, 2, {(1, 0): X1})
    assert H[(1, 0)] == X1
    assert all(H[u].is_zero() for u in (0, 1, 3))
    with pytest.raises(DimensionError):
        FunctionFamily(2, 2, (X1, X2))


def test_vectorial_map_validation():
    with pytest.raises(DimensionError):
        VectorialMap(2, 2, (X1,))
    with pytest.raises(DimensionError):
        VectorialMap(3, 1, (X1,))
    F = VectorialMap(2, 2, (X1, X2))
    assert F((1, 0)) == 2 and F.is_permutation()
