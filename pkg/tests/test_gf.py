import numpy as np
import pytest

from dennarc.gf import (
    DEFAULT_MODULI,
    FieldContext,
    FieldSpec,
    NotAdditivelyClosedError,
    ReducibleModulusError,
    SubfieldError,
    element_from_hex,
    element_to_hex,
    f2_rref_basis,
    span_f2,
    subspace_polynomial,
    xmul,
)


@pytest.fixture(scope="module")
def f16():
    return FieldContext(FieldSpec(4, 0b10011))


@pytest.fixture(scope="module")
def f32():
    return FieldContext(FieldSpec(5, 0b100101))


@pytest.fixture(scope="module")
def f64():
    return FieldContext(FieldSpec(6, 0b1000011))


def test_f16_generator_satisfies_defining_relation(f16):
    # g^4 = g + 1 under the modulus T^4+T+1
    g = f16.generator
    assert g == 0b10
    assert f16.pow(g, 4) == g ^ 1


def test_f32_generator_satisfies_defining_relation(f32):
    # g^5 = g^2 + 1 under the modulus T^5+T^2+1
    g = f32.generator
    assert g == 0b10
    assert f32.pow(g, 5) == f32.mul(g, g) ^ 1


def test_reducible_modulus_rejected_and_names_a_factor():
    # T^4+T^2+1 = (T^2+T+1)^2; the squaring oracle confirms the factor
    assert xmul(0b111, 0b111) == 0b10101
    with pytest.raises(ReducibleModulusError) as exc:
        FieldSpec(4, 0b10101)
    factor = exc.value.factor
    assert factor not in (1, 0b10101)
    assert xmul(factor, factor) == 0b10101 or 0b10101 % factor != 0b10101


def test_degree_must_match_m():
    with pytest.raises(ValueError):
        FieldSpec(4, 0b100101)


def test_m_range_enforced():
    with pytest.raises(ValueError):
        FieldSpec(1, 0b11)
    with pytest.raises(ValueError):
        FieldSpec(21, (1 << 21) | 0b11)


def test_mult_order(f16):
    eta = f16.generator
    assert f16.mul(eta, f16.pow(eta, 14)) == 1


def test_sqrt_of_xi_plus_one_is_xi(f16):
    xi = f16.xi
    assert f16.mul(xi, xi) == xi ^ 1  # xi^2 + xi + 1 = 0
    assert f16.sqrt(xi ^ 1) == xi


def test_xi_is_smaller_root(f16, f64):
    for f in (f16, f64):
        other = f.mul(f.xi, f.xi)
        assert f.xi < other
        assert f.mul(other, other) == other ^ 1


def test_xi_none_for_odd_m(f32):
    assert f32.xi is None


def test_absolute_trace_of_generator_in_f16(f16):
    # eta + eta^2 + eta^4 + eta^8 = 0, expanding with eta^4 = eta + 1
    eta = f16.generator
    expected = eta ^ f16.pow(eta, 2) ^ (eta ^ 1) ^ f16.pow(eta ^ 1, 2)
    assert expected == 0
    assert f16.trace_to(1, eta) == 0


def test_trace_surjective_and_additive(f64):
    for sub_m in (1, 2, 3):
        images = {f64.trace_to(sub_m, x) for x in f64.elements()}
        assert images == set(f64.subfield_elements(sub_m))
        rng = np.random.default_rng(7)
        for _ in range(50):
            x, y = rng.integers(0, 64, size=2)
            assert f64.trace_to(sub_m, int(x) ^ int(y)) == (
                f64.trace_to(sub_m, int(x)) ^ f64.trace_to(sub_m, int(y))
            )
            assert f64.trace_to(sub_m, f64.frobenius(int(x), sub_m)) == f64.trace_to(sub_m, int(x))


def test_trace_requires_divisor(f64):
    with pytest.raises(SubfieldError):
        f64.trace_to(4, 1)


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_field_axioms_exhaustive(m):
    f = FieldContext(FieldSpec.default(m))
    q = f.order
    mul = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        row = f.scale_vec(a, np.arange(q, dtype=f.dtype))
        mul[a] = row
    # associativity and commutativity over all triples/pairs
    assert np.array_equal(mul, mul.T)
    left = mul[mul[:, :, None], np.arange(q)[None, None, :]]
    right = mul[np.arange(q)[:, None, None], mul[None, :, :]]
    assert np.array_equal(left, right)
    # distributivity: a*(b+c) = a*b + a*c
    b = np.arange(q)[None, :, None]
    c = np.arange(q)[None, None, :]
    a = np.arange(q)[:, None, None]
    assert np.array_equal(mul[a, b ^ c], mul[a, b] ^ mul[a, c])
    # inverses
    for x in range(1, q):
        assert f.mul(x, f.inv(x)) == 1


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6, 8])
def test_frobenius_additive_and_sqrt_inverts_square(m):
    f = FieldContext(FieldSpec.default(m))
    for x in f.elements():
        assert f.sqrt(f.mul(x, x)) == x
        assert f.mul(f.sqrt(x), f.sqrt(x)) == x
    for x in range(0, f.order, 3):
        for y in range(0, f.order, 5):
            assert f.mul(x ^ y, x ^ y) == f.mul(x, x) ^ f.mul(y, y)


def test_exp_log_roundtrip(f64):
    for x in f64.nonzero_elements():
        assert f64.exp(f64.log(x)) == x
    assert f64.exp(f64.order - 1) == f64.exp(0) == 1


def test_inv_of_zero_raises(f16):
    with pytest.raises(ZeroDivisionError):
        f16.inv(0)


# -- subfields -----------------------------------------------------------------


def test_subfield_embedding_basics(f64):
    f8 = FieldContext(FieldSpec.default(3))
    emb = f64.subfield_embedding(f8)
    assert emb(0) == 0 and emb(1) == 1
    # image of the F8 generator has multiplicative order 7
    img = emb(f8.generator)
    orders = {i for i in range(1, 64) if f64.pow(img, i) == 1}
    assert min(orders) == 7
    # homomorphism on all 64 pairs
    for x in f8.elements():
        for y in f8.elements():
            assert emb(x ^ y) == emb(x) ^ emb(y)
            assert emb(f8.mul(x, y)) == f64.mul(emb(x), emb(y))


def test_subfield_elements_closed_under_addition(f64):
    sub = f64.subfield_elements(3)
    sset = set(sub)
    assert len(sub) == 8
    for x in sub:
        for y in sub:
            assert x ^ y in sset
    # fixed field of the 8-power Frobenius, exactly
    fixed = {x for x in f64.elements() if f64.frobenius(x, 3) == x}
    assert fixed == sset


def test_subfield_requires_divisor(f64):
    with pytest.raises(SubfieldError):
        f64.subfield_elements(4)


# -- subspace polynomials --------------------------------------------------------


def test_subspace_polynomial_trivial(f16):
    poly = subspace_polynomial(f16, [0])
    assert poly.coeffs == {1: 1}
    assert poly.degree == 1


def test_subspace_polynomial_pair_in_f16(f16):
    poly = subspace_polynomial(f16, [0, 1])
    assert poly.coeffs == {1: 1, 2: 1}  # T^2 + T = T(T+1)


def test_subspace_polynomial_subfield_is_tq_plus_t(f64):
    poly = subspace_polynomial(f64, f64.subfield_elements(3))
    assert poly.coeffs == {1: 1, 8: 1}  # T^8 + T


def test_subspace_polynomial_roots_exactly_h(f64):
    rng = np.random.default_rng(3)
    basis = [int(b) for b in rng.choice(np.arange(1, 64), size=3, replace=False)]
    h = set(span_f2(f2_rref_basis(basis)))
    poly = subspace_polynomial(f64, h)
    assert poly.degree == len(h)
    for x in f64.elements():
        assert (poly.evaluate(x) == 0) == (x in h)
    # additivity, exhaustively testable
    for x in range(0, 64, 5):
        for y in range(0, 64, 7):
            assert poly.evaluate(x ^ y) == poly.evaluate(x) ^ poly.evaluate(y)


def test_subspace_polynomial_rejects_non_closed(f16):
    with pytest.raises(NotAdditivelyClosedError):
        subspace_polynomial(f16, [0, 1, f16.generator])


# -- serialization ----------------------------------------------------------------


def test_hex_roundtrip():
    for x in (0, 1, 10, 255, 0x13):
        assert element_from_hex(element_to_hex(x)) == x
    assert element_to_hex(0x1A) == "1a"


def test_default_moduli_are_irreducible():
    for m, mod in DEFAULT_MODULI.items():
        FieldSpec(m, mod)  # constructor verifies irreducibility
