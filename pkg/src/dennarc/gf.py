"""Exact arithmetic in GF(2^m) for 2 <= m <= 20.

Field elements are plain Python ints: bit i of the encoding is the
coefficient of T^i in the polynomial-basis representation, so addition
is xor and the zero/one elements are literally 0 and 1.  Multiplication
goes through log/antilog tables built for a fixed primitive element
(the smallest encoding that generates the multiplicative group).

Serialization uses lowercase hex without a prefix, e.g. the modulus
T^4+T+1 is "13" and the element T^3+T is "a".
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

MIN_M = 2
MAX_M = 20

# One irreducible (in fact primitive) modulus per extension degree; all are
# overridable.  m=4 and m=5 are pinned to T^4+T+1 and T^5+T^2+1 so that the
# generator satisfies g^4=g+1 resp. g^5=g^2+1, which the table fixtures need.
DEFAULT_MODULI: dict[int, int] = {
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10001001,
    8: 0b100011101,
    9: 0b1000010001,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000001010011,
    13: 0b10000000011011,
    14: 0b100010001000011,
    15: 0b1000000000000011,
    16: 0b10001000000001011,
    17: 0b100000000000001001,
    18: 0b1000000000010000001,
    19: 0b10000000000000100111,
    20: 0b100000000000000001001,
}


class ReducibleModulusError(ValueError):
    """Raised when a field modulus factors over GF(2); carries one factor."""

    def __init__(self, modulus: int, factor: int):
        self.modulus = modulus
        self.factor = factor
        super().__init__(
            f"modulus {modulus:#x} is reducible over GF(2): "
            f"divisible by {factor:#x}"
        )


class SubfieldError(ValueError):
    pass


def xmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2) polynomials given as bit vectors."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def xmod(a: int, b: int) -> int:
    """Remainder of a modulo b, both GF(2) polynomials."""
    bl = b.bit_length()
    while a.bit_length() >= bl:
        a ^= b << (a.bit_length() - bl)
    return a


def find_factor(poly: int) -> int | None:
    """Smallest nontrivial GF(2)-polynomial factor of poly, or None.

    Trial division by every polynomial of degree 1..deg/2; fine for the
    degrees this package supports (<= 20).
    """
    deg = poly.bit_length() - 1
    for d in range(1, deg // 2 + 1):
        for low in range(1 << d):
            cand = (1 << d) | low
            if xmod(poly, cand) == 0:
                return cand
    return None


def element_to_hex(x: int) -> str:
    return format(x, "x")


def element_from_hex(s: str) -> int:
    return int(s, 16)


@lru_cache(maxsize=None)
def _prime_factors(n: int) -> tuple[int, ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return tuple(out)


@dataclass(frozen=True)
class FieldSpec:
    """Extension degree plus bit-encoded monic irreducible modulus."""

    m: int
    modulus: int

    def __post_init__(self):
        if not MIN_M <= self.m <= MAX_M:
            raise ValueError(f"extension degree must be in [{MIN_M}, {MAX_M}], got {self.m}")
        if self.modulus.bit_length() - 1 != self.m:
            raise ValueError(
                f"modulus {self.modulus:#x} has degree {self.modulus.bit_length() - 1}, "
                f"expected {self.m}"
            )
        factor = find_factor(self.modulus)
        if factor is not None:
            raise ReducibleModulusError(self.modulus, factor)

    @classmethod
    def default(cls, m: int) -> "FieldSpec":
        if m not in DEFAULT_MODULI:
            raise ValueError(f"no default modulus for m={m}")
        return cls(m, DEFAULT_MODULI[m])

    @property
    def order(self) -> int:
        return 1 << self.m

    def to_json(self) -> dict:
        return {"m": self.m, "modulus": element_to_hex(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> "FieldSpec":
        return cls(int(obj["m"]), element_from_hex(obj["modulus"]))


class FieldContext:
    """A concrete GF(2^m) with exp/log tables and subfield helpers.

    Immutable after construction; all operations are pure, so one context
    can be shared freely across worker processes.
    """

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.m = spec.m
        self.modulus = spec.modulus
        self.order = 1 << spec.m
        q1 = self.order - 1

        self.generator = self._find_generator()
        exp = [0] * (2 * q1)
        log = [0] * self.order
        x = 1
        for i in range(q1):
            exp[i] = x
            exp[i + q1] = x
            log[x] = i
            x = self._mul_raw(x, self.generator)
        if x != 1:
            raise AssertionError("generator order mismatch while building tables")
        self._exp = exp
        self._log = log

        # numpy mirrors for vectorized paths
        dtype = np.uint8 if self.m <= 8 else (np.uint16 if self.m <= 16 else np.uint32)
        self.dtype = dtype
        self.np_exp = np.array(exp, dtype=dtype)
        self.np_log = np.array(log, dtype=np.int64)

        # distinguished cube root of unity: root of T^2+T+1, only for even m,
        # fixed as the root with the smaller encoding
        if self.m % 2 == 0:
            r = self.exp(q1 // 3)
            self.xi = min(r, self.mul(r, r))
        else:
            self.xi = None

    # -- construction helpers ------------------------------------------------

    def _mul_raw(self, a: int, b: int) -> int:
        return xmod(xmul(a, b), self.modulus)

    def _pow_raw(self, a: int, n: int) -> int:
        r = 1
        while n:
            if n & 1:
                r = self._mul_raw(r, a)
            a = self._mul_raw(a, a)
            n >>= 1
        return r

    def _find_generator(self) -> int:
        q1 = self.order - 1
        checks = [q1 // p for p in _prime_factors(q1)]
        for g in range(2, self.order):
            if all(self._pow_raw(g, n) != 1 for n in checks):
                return g
        raise AssertionError("no generator found; modulus not irreducible?")

    # -- scalar arithmetic ---------------------------------------------------

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return self._exp[self.order - 1 - self._log[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 0 if n else 1
        return self._exp[(self._log[a] * n) % (self.order - 1)]

    def square(self, a: int) -> int:
        return self.mul(a, a)

    def sqrt(self, a: int) -> int:
        """Unique square root; squaring is a bijection in characteristic 2."""
        return self.pow(a, 1 << (self.m - 1))

    def exp(self, i: int) -> int:
        return self._exp[i % (self.order - 1)]

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of zero")
        return self._log[a]

    def frobenius(self, a: int, times: int = 1) -> int:
        for _ in range(times % self.m):
            a = self.mul(a, a)
        return a

    def trace_to(self, sub_m: int, a: int) -> int:
        """Relative trace onto the subfield GF(2^sub_m); sub_m must divide m."""
        if self.m % sub_m != 0:
            raise SubfieldError(f"{sub_m} does not divide {self.m}")
        t = 0
        x = a
        for _ in range(self.m // sub_m):
            t ^= x
            x = self.frobenius(x, sub_m)
        return t

    def elements(self) -> range:
        return range(self.order)

    def nonzero_elements(self) -> range:
        return range(1, self.order)

    # -- subfields -----------------------------------------------------------

    def subfield_elements(self, sub_m: int) -> list[int]:
        """Sorted elements of the subfield of size 2^sub_m inside this field.

        This is the fixed field of the 2^sub_m-power Frobenius: 0 together
        with the powers of g^((2^m-1)/(2^sub_m-1)).
        """
        if self.m % sub_m != 0:
            raise SubfieldError(f"{sub_m} does not divide {self.m}")
        step = (self.order - 1) // ((1 << sub_m) - 1)
        out = {0}
        for i in range((1 << sub_m) - 1):
            out.add(self.exp(i * step))
        assert all(self.frobenius(x, sub_m) == x for x in out)
        return sorted(out)

    def subfield_embedding(self, sub: "FieldContext") -> "SubfieldEmbedding":
        return SubfieldEmbedding(sub, self)

    # -- vectorized helpers (numpy) -------------------------------------------

    def scale_vec(self, v: int, arr: np.ndarray) -> np.ndarray:
        """Elementwise product v * arr for a scalar v and element array arr."""
        if v == 0:
            return np.zeros_like(arr)
        if v == 1:
            return arr.copy()
        out = self.np_exp[self._log[v] + self.np_log[arr]]
        out[arr == 0] = 0
        return out

    def mul_vec(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        out = self.np_exp[self.np_log[a] + self.np_log[b]]
        out[(a == 0) | (b == 0)] = 0
        return out

    def pow_vec(self, arr: np.ndarray, n: int) -> np.ndarray:
        if n == 0:
            return np.ones_like(arr)
        out = self.np_exp[(self.np_log[arr] * n) % (self.order - 1)]
        out[arr == 0] = 0
        return out

    def __repr__(self):
        return f"FieldContext(m={self.m}, modulus={self.modulus:#x})"


class SubfieldEmbedding:
    """Field homomorphism GF(2^s) -> GF(2^m) for s | m.

    The image of the small field's generator is the root of the small
    modulus inside the big field with the smallest encoding, which makes
    the embedding deterministic.
    """

    def __init__(self, sub: FieldContext, big: FieldContext):
        if big.m % sub.m != 0:
            raise SubfieldError(f"{sub.m} does not divide {big.m}")
        self.sub = sub
        self.big = big
        self.root = self._find_root()
        # transport the polynomial basis: sub element sum c_i g^i maps to
        # sum c_i root^i, with g the sub generator
        gen_powers = [sub.pow(sub.generator, i) for i in range(sub.order - 1)]
        table = [0] * sub.order
        for i, e in enumerate(gen_powers):
            table[e] = big.pow(self.root, i)
        table[0] = 0
        self._table = table

    def _find_root(self) -> int:
        candidates = []
        for x in self.big.subfield_elements(self.sub.m):
            # evaluate the small modulus at x with big-field arithmetic
            acc = 0
            for bit in range(self.sub.modulus.bit_length() - 1, -1, -1):
                acc = self.big.mul(acc, x) ^ ((self.sub.modulus >> bit) & 1)
            if acc == 0:
                candidates.append(x)
        if not candidates:
            raise AssertionError("sub modulus has no root in the subfield")
        return min(candidates)

    def __call__(self, x: int) -> int:
        return self._table[x]

    def image(self) -> list[int]:
        return sorted(self._table)


class NotAdditivelyClosedError(ValueError):
    """Raised for element sets that are not subgroups; names a violating pair."""

    def __init__(self, x: int, y: int):
        self.pair = (x, y)
        super().__init__(
            f"set is not additively closed: {element_to_hex(x)} + {element_to_hex(y)} "
            f"= {element_to_hex(x ^ y)} is missing"
        )


def f2_rref_basis(vectors: Iterable[int]) -> tuple[int, ...]:
    """Reduced echelon basis over GF(2) of the span of the given bit vectors."""
    pivots: dict[int, int] = {}  # leading bit -> row
    for v in vectors:
        while v:
            lead = v.bit_length() - 1
            if lead in pivots:
                v ^= pivots[lead]
            else:
                pivots[lead] = v
                break
    leads = sorted(pivots, reverse=True)
    for i, low in enumerate(leads):
        for high in leads[:i]:
            if (pivots[high] >> low) & 1:
                pivots[high] ^= pivots[low]
    return tuple(pivots[lead] for lead in leads)


def span_f2(basis: Sequence[int]) -> list[int]:
    out = [0]
    for b in basis:
        out += [x ^ b for x in out]
    return sorted(out)


class SubspacePolynomial:
    """Additive polynomial with root set exactly a given additive subgroup.

    Only power-of-two exponents occur; coefficients are stored keyed by the
    exponent.  For a subgroup of size 2^k the degree is 2^k.
    """

    def __init__(self, field: FieldContext, coeffs: dict[int, int]):
        for e in coeffs:
            if e & (e - 1):
                raise ValueError(f"exponent {e} is not a power of two")
        self.field = field
        self.coeffs = {e: c for e, c in sorted(coeffs.items()) if c}

    @property
    def degree(self) -> int:
        return max(self.coeffs)

    def evaluate(self, x: int) -> int:
        f = self.field
        acc = 0
        power = x  # x^(2^i) by repeated squaring
        e = 1
        for exp in sorted(self.coeffs):
            while e < exp:
                power = f.mul(power, power)
                e <<= 1
            acc ^= f.mul(self.coeffs[exp], power)
        return acc

    def __repr__(self):
        terms = " + ".join(
            f"{element_to_hex(c)}*T^{e}" if c != 1 else f"T^{e}"
            for e, c in sorted(self.coeffs.items(), reverse=True)
        )
        return f"SubspacePolynomial({terms})"


def subspace_polynomial(field: FieldContext, elements: Iterable[int]) -> SubspacePolynomial:
    """Product of (T - h) over the subgroup, folded along a basis.

    Uses the splitting L_{H + <b>}(T) = L_H(T)^2 + L_H(b) L_H(T), which keeps
    every intermediate polynomial additive.  Raises NotAdditivelyClosedError
    (naming a violating pair) if the input set is not a subgroup.
    """
    elems = sorted(set(elements))
    if 0 not in elems:
        raise NotAdditivelyClosedError(0, 0)
    eset = set(elems)
    for x in elems:
        for y in elems:
            if x ^ y not in eset:
                raise NotAdditivelyClosedError(x, y)
    basis = f2_rref_basis(elems)
    if len(elems) != 1 << len(basis):
        raise AssertionError("closed set has non-power-of-two size")

    coeffs = {1: 1}  # L_{{0}}(T) = T
    for b in basis:
        lb = SubspacePolynomial(field, coeffs).evaluate(b)
        squared = {2 * e: field.mul(c, c) for e, c in coeffs.items()}
        for e, c in coeffs.items():
            squared[e] = squared.get(e, 0) ^ field.mul(lb, c)
        coeffs = squared
    return SubspacePolynomial(field, coeffs)
