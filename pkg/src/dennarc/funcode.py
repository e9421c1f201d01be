"""Functional codes evaluated on arc point sets.

A code here is the image of a monomial space V under evaluation at the
arc points: row r of the generator matrix holds monomial r evaluated at
every point, columns in arc point order.  Weight distributions are exact
and are computed by walking the (q^k-1)/(q-1) projective messages (first
nonzero coordinate normalized to 1) in a radix-q Gray order, so each step
changes a single message coordinate and costs one scaled-row xor of
length n plus one nonzero count.  Nonzero-weight counts are then scaled
by q-1, since scalar multiples share a weight.

Worker processes own contiguous rank ranges of the message space and
their histograms are summed, so the result is independent of the worker
count.
"""

from __future__ import annotations

import math
import multiprocessing as mp
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

import numpy as np

from .arcs import Arc
from .gf import FieldContext, FieldSpec, element_to_hex

DEFAULT_CLASS_BUDGET = 200_000_000
HARD_MESSAGE_BITS = 48


class BudgetExceededError(RuntimeError):
    """Enumeration refused; carries the projective-class count estimate."""

    def __init__(self, classes: int, budget: int, hard: bool = False):
        self.projective_classes = classes
        self.budget = budget
        kind = "hard bit-width guard" if hard else "message budget"
        super().__init__(
            f"refusing enumeration of {classes:_} projective messages "
            f"({kind}: limit {budget:_}); raise the budget to proceed"
        )


class RankDeficiencyError(ValueError):
    """Generator rank is below |V|; carries one dependent combination."""

    def __init__(self, dependency: tuple[int, ...]):
        self.dependency = dependency
        pretty = ", ".join(element_to_hex(c) for c in dependency)
        super().__init__(f"monomial space is dependent on the point set: kernel message ({pretty})")


class MacWilliamsError(ValueError):
    pass


@dataclass(frozen=True)
class MonomialSpace:
    """Ordered list of (i, j) exponent pairs meaning x^i y^j."""

    exponents: tuple[tuple[int, int], ...]
    name: str = ""

    def __post_init__(self):
        if not self.exponents:
            raise ValueError("monomial space must be nonempty")
        if len(set(self.exponents)) != len(self.exponents):
            raise ValueError("monomial exponent pairs must be distinct")

    def __len__(self):
        return len(self.exponents)


#: x, y, x^2, xy, y^2 — the five-dimensional space of conics through the origin
CONIC5 = MonomialSpace(((1, 0), (0, 1), (2, 0), (1, 1), (0, 2)), "conic5")

#: all monomials of total degree at most three, degree-graded
CUBIC10 = MonomialSpace(
    ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)),
    "cubic10",
)

#: 1, x, y — affine chart of the projective linear forms
LINEAR3 = MonomialSpace(((0, 0), (1, 0), (0, 1)), "linear3")

SPACES = {"conic5": CONIC5, "cubic10": CUBIC10, "linear3": LINEAR3}


@dataclass(frozen=True)
class EvalCode:
    field: FieldContext
    space: MonomialSpace
    generator: np.ndarray = dc_field(repr=False)  # (k, n)
    arc: Arc | None = None

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    def codeword(self, message: Sequence[int]) -> np.ndarray:
        if len(message) != self.k:
            raise ValueError(f"message length {len(message)} != k={self.k}")
        cw = np.zeros(self.n, dtype=self.field.dtype)
        for coef, row in zip(message, self.generator):
            if coef:
                cw ^= self.field.scale_vec(int(coef), row)
        return cw

    def weight(self, message: Sequence[int]) -> int:
        return int(np.count_nonzero(self.codeword(message)))

    def __repr__(self):
        return f"EvalCode([{self.n},{self.k}]_{self.field.order}, space={self.space.name or self.space.exponents})"


def _gf_rank_dependency(field: FieldContext, rows: np.ndarray) -> tuple[int, ...] | None:
    """None if rows are independent over GF(q), else one kernel combination."""
    k, n = rows.shape
    work = [[int(v) for v in row] + [1 if i == j else 0 for j in range(k)] for i, row in enumerate(rows)]
    pivot_row = 0
    for col in range(n):
        sel = next((r for r in range(pivot_row, k) if work[r][col]), None)
        if sel is None:
            continue
        work[pivot_row], work[sel] = work[sel], work[pivot_row]
        inv = field.inv(work[pivot_row][col])
        work[pivot_row] = [field.mul(inv, v) for v in work[pivot_row]]
        for r in range(k):
            if r != pivot_row and work[r][col]:
                f = work[r][col]
                work[r] = [v ^ field.mul(f, p) for v, p in zip(work[r], work[pivot_row])]
        pivot_row += 1
        if pivot_row == k:
            return None
    for r in range(pivot_row, k):
        if not any(work[r][:n]):
            return tuple(work[r][n:])
    return None


def build_code(arc: Arc, space: MonomialSpace) -> EvalCode:
    """Evaluate the monomial space at the arc points and check full rank.

    Dimension claims are treated as assertions: if the evaluation map has
    a kernel the build fails and reports one dependent combination.
    """
    if arc.size == 0:
        raise ValueError("cannot build a code on an empty point set")
    field = arc.field
    xs = arc.xs.astype(field.dtype)
    ys = arc.ys.astype(field.dtype)
    rows = []
    for i, j in space.exponents:
        rows.append(field.mul_vec(field.pow_vec(xs, i), field.pow_vec(ys, j)))
    generator = np.vstack(rows)
    dependency = _gf_rank_dependency(field, generator)
    if dependency is not None:
        raise RankDeficiencyError(dependency)
    return EvalCode(field, space, generator, arc)


def generator_to_text(code: EvalCode) -> str:
    """Plain-text export: one row per line, hex elements space-separated."""
    return "\n".join(" ".join(element_to_hex(int(v)) for v in row) for row in code.generator) + "\n"


# -- projective message ranking ------------------------------------------------


def projective_class_count(q: int, k: int) -> int:
    return (q**k - 1) // (q - 1)


def _lead_blocks(q: int, k: int) -> list[int]:
    return [q ** (k - 1 - i) for i in range(k)]


def _gray_digits(q: int, length: int, index: int) -> list[int]:
    """Digits of the radix-q modular Gray word for a block-local index.

    Digit j (least significant first) drives message coordinate k-1-j; one
    index increment changes exactly one digit.
    """
    d = []
    for _ in range(length + 1):
        d.append(index % q)
        index //= q
    return [(d[j] - d[j + 1]) % q for j in range(length)]


def message_from_rank(q: int, k: int, rank: int) -> tuple[int, ...]:
    """The projective representative message at a global enumeration rank."""
    for lead, size in enumerate(_lead_blocks(q, k)):
        if rank < size:
            digits = _gray_digits(q, k - 1 - lead, rank)
            msg = [0] * k
            msg[lead] = 1
            for j, g in enumerate(digits):
                msg[k - 1 - j] = g
            return tuple(msg)
        rank -= size
    raise ValueError("rank out of range")


@dataclass
class EnumerationResult:
    distribution: "WeightDistribution"
    min_weight: int
    min_witness: tuple[int, ...]
    probes: dict[int, int]


@dataclass
class WeightDistribution:
    """weight -> codeword count histogram; the zero word sits at weight 0."""

    counts: dict[int, int]
    n: int
    k: int
    q: int

    def total(self) -> int:
        return sum(self.counts.values())

    def min_nonzero_weight(self) -> int:
        return min(w for w, c in self.counts.items() if w > 0 and c > 0)

    def nonzero_weights(self) -> list[int]:
        return sorted(w for w, c in self.counts.items() if w > 0 and c > 0)

    def class_counts(self) -> dict[int, int]:
        """Counts of projective classes per nonzero weight."""
        return {w: c // (self.q - 1) for w, c in sorted(self.counts.items()) if w > 0 and c > 0}

    def validate(self) -> None:
        if self.total() != self.q**self.k:
            raise ValueError(f"distribution sums to {self.total()}, expected {self.q ** self.k}")
        for w, c in self.counts.items():
            if w > 0 and c % (self.q - 1):
                raise ValueError(f"count at weight {w} is not divisible by q-1")
        if self.counts.get(0) != 1:
            raise ValueError("distribution must contain exactly one zero-weight word")

    def to_pairs(self) -> list[list[int]]:
        return [[w, c] for w, c in sorted(self.counts.items()) if c > 0]


def _worker_enumerate(args) -> tuple[np.ndarray, int, tuple[int, ...] | None, dict[int, int]]:
    (m, modulus, generator, lo, hi, probe_ranks) = args
    field = FieldContext(FieldSpec(m, modulus))
    q = field.order
    k, n = generator.shape

    # scaled[p*q + v] = v * (row p), so a coordinate change from a to b costs
    # one xor with scaled[p*q + (a^b)]
    scaled = np.zeros((k * q, n), dtype=generator.dtype)
    for p in range(k):
        row = generator[p]
        for v in range(1, q):
            scaled[p * q + v] = field.scale_vec(v, row)

    hist = np.zeros(n + 1, dtype=np.int64)
    probes: dict[int, int] = {}
    min_w = n + 1
    best: tuple[int, ...] | None = None
    count_nonzero = np.count_nonzero
    bxor = np.bitwise_xor
    qm1 = q - 1
    mbits = m

    base = 0
    for lead, size in enumerate(_lead_blocks(q, k)):
        blo, bhi = max(lo, base), min(hi, base + size)
        if blo >= bhi:
            base += size
            continue
        local = blo - base
        length = k - 1 - lead
        digits = _gray_digits(q, length, local)
        cw = generator[lead].copy()
        for j, g in enumerate(digits):
            if g:
                cw ^= scaled[(k - 1 - j) * q + g]

        rank = blo
        while True:
            w = count_nonzero(cw)
            hist[w] += 1
            if probe_ranks and rank in probe_ranks:
                probes[rank] = int(w)
            if w <= min_w:
                msg = [0] * k
                msg[lead] = 1
                for j, g in enumerate(digits):
                    msg[k - 1 - j] = g
                msg_t = tuple(msg)
                if w < min_w or best is None or msg_t < best:
                    min_w = int(w)
                    best = msg_t
            rank += 1
            if rank >= bhi:
                break
            # lowest digit position that does not roll over changes by +1 mod q
            t = 0
            s = local
            while (s & qm1) == qm1:
                t += 1
                s >>= mbits
            old = digits[t]
            new = old + 1 if old < qm1 else 0
            digits[t] = new
            bxor(cw, scaled[(k - 1 - t) * q + (old ^ new)], out=cw)
            local += 1
        base += size

    return hist, min_w, best, probes


def enumerate_code(
    code: EvalCode,
    workers: int = 1,
    budget: int | None = None,
    probe_ranks: Iterable[int] | None = None,
) -> EnumerationResult:
    """Exact weight distribution plus the lex-smallest minimum-weight witness."""
    field = code.field
    q, k, n = field.order, code.k, code.n
    limit = DEFAULT_CLASS_BUDGET if budget is None else budget
    classes = projective_class_count(q, k)
    if k * field.m > HARD_MESSAGE_BITS:
        raise BudgetExceededError(classes, 1 << HARD_MESSAGE_BITS, hard=True)
    if classes > limit:
        raise BudgetExceededError(classes, limit)

    probe_set = frozenset(probe_ranks) if probe_ranks else frozenset()
    workers = max(1, min(workers, classes))
    bounds = [classes * i // workers for i in range(workers + 1)]
    jobs = [
        (field.m, field.modulus, code.generator, bounds[i], bounds[i + 1], probe_set)
        for i in range(workers)
        if bounds[i] < bounds[i + 1]
    ]
    if len(jobs) == 1:
        parts = [_worker_enumerate(jobs[0])]
    else:
        with mp.Pool(processes=len(jobs)) as pool:
            parts = pool.map(_worker_enumerate, jobs)

    hist = np.zeros(n + 1, dtype=np.int64)
    min_w, best = n + 1, None
    probes: dict[int, int] = {}
    for h, w, msg, pr in parts:
        hist += h
        probes.update(pr)
        if msg is not None and (w < min_w or (w == min_w and (best is None or msg < best))):
            min_w, best = w, msg

    counts = {0: 1}
    for w in range(1, n + 1):
        if hist[w]:
            counts[w] = int(hist[w]) * (q - 1)
    dist = WeightDistribution(counts, n=n, k=k, q=q)
    dist.validate()
    return EnumerationResult(dist, min_w, best, probes)


def weight_distribution(code: EvalCode, workers: int = 1, budget: int | None = None) -> WeightDistribution:
    return enumerate_code(code, workers=workers, budget=budget).distribution


def min_distance(code: EvalCode, workers: int = 1, budget: int | None = None) -> int:
    """Smallest nonzero weight; equals n minus the largest variety-point intersection."""
    return enumerate_code(code, workers=workers, budget=budget).min_weight


def two_weight_check(code: EvalCode, workers: int = 1) -> set[int]:
    """Distinct nonzero weights; {N-h, N} for a degree-h arc of size N."""
    return set(weight_distribution(code, workers=workers).nonzero_weights())


def random_message_weights(code: EvalCode, count: int, seed: int) -> list[int]:
    """Weights of random nonzero messages; a sampled lower-bound consistency oracle."""
    rng = np.random.default_rng(seed)
    out = []
    q, k = code.field.order, code.k
    while len(out) < count:
        msg = rng.integers(0, q, size=k)
        if msg.any():
            out.append(code.weight([int(v) for v in msg]))
    return out


def macwilliams_dual_distribution(
    counts: dict[int, int], n: int, k: int, q: int
) -> dict[int, int]:
    """MacWilliams transform of a weight distribution, exact over the integers.

    The dual histogram must consist of nonnegative integers summing to
    q^(n-k); a fractional or negative entry flags an incorrect input
    distribution.
    """
    if sum(counts.values()) != q**k:
        raise MacWilliamsError(f"input distribution sums to {sum(counts.values())}, expected {q ** k}")
    qk = q**k
    pw = [(q - 1) ** t for t in range(n + 1)]
    dual: dict[int, int] = {}
    for j in range(n + 1):
        s = 0
        for w, a in counts.items():
            if a == 0:
                continue
            kj = sum(
                (-1) ** i * pw[j - i] * math.comb(w, i) * math.comb(n - w, j - i)
                for i in range(0, min(w, j) + 1)
                if j - i <= n - w
            )
            s += a * kj
        b, rem = divmod(s, qk)
        if rem:
            raise MacWilliamsError(f"dual count at weight {j} is not an integer ({s}/{qk})")
        if b < 0:
            raise MacWilliamsError(f"dual count at weight {j} is negative ({b})")
        if b:
            dual[j] = b
    if sum(dual.values()) != q ** (n - k):
        raise MacWilliamsError("dual distribution does not sum to q^(n-k)")
    return dual
