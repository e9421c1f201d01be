"""Denniston maximal arcs in AG(2,q), q = 2^m.

An arc here is the affine point set {(x,y) : f(x,y) in H} for an
irreducible binary quadratic form f(x,y) = a x^2 + b xy + c y^2 and an
additive subgroup H of the field, optionally with the origin removed.
Points are kept sorted lexicographically by (x, y) encodings so that
generator matrices and serialized arcs are deterministic.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Iterator

import numpy as np

from .gf import (
    FieldContext,
    FieldSpec,
    NotAdditivelyClosedError,
    SubspacePolynomial,
    element_from_hex,
    element_to_hex,
    f2_rref_basis,
    span_f2,
)

ARC_SCHEMA_VERSION = 1


class ReducibleFormError(ValueError):
    pass


class TrivialSubgroupError(ValueError):
    pass


@dataclass(frozen=True)
class QuadraticForm:
    """f(x,y) = a x^2 + b xy + c y^2 with coefficients in the field."""

    a: int
    b: int
    c: int

    def evaluate(self, field: FieldContext, x: int, y: int) -> int:
        return (
            field.mul(self.a, field.mul(x, x))
            ^ field.mul(self.b, field.mul(x, y))
            ^ field.mul(self.c, field.mul(y, y))
        )

    def evaluate_row(self, field: FieldContext, x: int, ys: np.ndarray) -> np.ndarray:
        """Values f(x, y) for fixed x and a vector of y's."""
        const = field.mul(self.a, field.mul(x, x))
        out = field.scale_vec(field.mul(self.b, x), ys)
        out ^= field.scale_vec(self.c, field.mul_vec(ys, ys))
        out ^= np.asarray(const, dtype=out.dtype)
        return out

    def to_json(self) -> list[str]:
        return [element_to_hex(self.a), element_to_hex(self.b), element_to_hex(self.c)]

    @classmethod
    def from_json(cls, obj: list[str]) -> "QuadraticForm":
        return cls(*(element_from_hex(s) for s in obj))


def default_irreducible_form(field: FieldContext) -> QuadraticForm:
    """x^2 + xy + c y^2 with c the smallest-encoding element of trace 1."""
    c = next(x for x in field.nonzero_elements() if field.trace_to(1, x) == 1)
    return QuadraticForm(1, 1, c)


def form_is_irreducible(field: FieldContext, form: QuadraticForm) -> bool:
    """True iff the form has no nonzero root in AG(2,q).

    Checked two ways on every call: the characteristic-2 trace criterion
    (b != 0 and Tr(ac/b^2) = 1) and a direct root scan over the q slope
    values plus the point (0,1).  A disagreement would mean a broken field
    implementation, so it raises.
    """
    a, b, c = form.a, form.b, form.c
    if b == 0 or a == 0 or c == 0:
        by_trace = False
    else:
        ratio = field.div(field.mul(a, c), field.mul(b, b))
        by_trace = field.trace_to(1, ratio) == 1

    ts = np.arange(field.order, dtype=field.dtype)
    vals = field.scale_vec(c, field.mul_vec(ts, ts))
    vals ^= field.scale_vec(b, ts)
    vals ^= np.asarray(a, dtype=vals.dtype)
    by_scan = c != 0 and not bool((vals == 0).any())

    if by_trace != by_scan:
        raise AssertionError(f"irreducibility routes disagree for {form}")
    return by_trace


@dataclass(frozen=True)
class AdditiveSubgroup:
    """Additive subgroup of the field, canonicalized by its reduced basis."""

    field: FieldContext
    basis: tuple[int, ...]
    elements: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def membership(self) -> np.ndarray:
        mem = np.zeros(self.field.order, dtype=bool)
        mem[list(self.elements)] = True
        return mem

    def __contains__(self, x: int) -> bool:
        return x in set(self.elements)

    def __repr__(self):
        return f"AdditiveSubgroup(size={self.size}, basis={[element_to_hex(b) for b in self.basis]})"


def subgroup_from_basis(field: FieldContext, basis: Iterable[int]) -> AdditiveSubgroup:
    vecs = list(basis)
    rref = f2_rref_basis(vecs)
    if len(rref) != len(vecs):
        raise ValueError("basis vectors are linearly dependent over GF(2)")
    return AdditiveSubgroup(field, rref, tuple(span_f2(rref)))


def subgroup_from_elements(field: FieldContext, elements: Iterable[int]) -> AdditiveSubgroup:
    """Subgroup from an explicit element set; rejects non-closed sets.

    The error names the first violating pair, e.g. {0,1,g} fails because
    1 + g is missing.
    """
    elems = sorted(set(elements))
    if not elems or elems[0] != 0:
        raise NotAdditivelyClosedError(0, 0)
    eset = set(elems)
    for x, y in itertools.combinations(elems, 2):
        if x ^ y not in eset:
            raise NotAdditivelyClosedError(x, y)
    rref = f2_rref_basis(elems)
    if 1 << len(rref) != len(elems):
        raise AssertionError("closed set with non-power-of-two size")
    return AdditiveSubgroup(field, rref, tuple(elems))


def subfield_subgroup(field: FieldContext, sub_m: int) -> AdditiveSubgroup:
    """The subfield GF(2^sub_m) viewed as an additive subgroup."""
    return subgroup_from_elements(field, field.subfield_elements(sub_m))


def enumerate_subgroups(field: FieldContext, size: int) -> Iterator[AdditiveSubgroup]:
    """All additive subgroups of the given (power of two) size, canonically.

    Enumerates reduced echelon bases over GF(2), so each subgroup appears
    exactly once; there are gaussian-binomial-many of them.
    """
    if size & (size - 1) or not 1 <= size <= field.order:
        raise ValueError(f"subgroup size must be a power of two in [1, {field.order}]")
    k = size.bit_length() - 1
    m = field.m
    for leads in itertools.combinations(range(m - 1, -1, -1), k):
        lead_set = set(leads)
        free = [[p for p in range(lead) if p not in lead_set] for lead in leads]
        for fills in itertools.product(*(range(1 << len(fp)) for fp in free)):
            rows = []
            for lead, fp, bits in zip(leads, free, fills):
                row = 1 << lead
                for i, p in enumerate(fp):
                    if (bits >> i) & 1:
                        row |= 1 << p
                rows.append(row)
            yield AdditiveSubgroup(field, tuple(rows), tuple(span_f2(rows)))


@dataclass(frozen=True)
class Arc:
    """Ordered Denniston arc point set with its defining data."""

    field: FieldContext
    form: QuadraticForm
    subgroup: AdditiveSubgroup
    includes_origin: bool
    points: np.ndarray = dc_field(repr=False)  # (n, 2) int array, lex sorted

    @property
    def degree(self) -> int:
        return self.subgroup.size

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def xs(self) -> np.ndarray:
        return self.points[:, 0]

    @property
    def ys(self) -> np.ndarray:
        return self.points[:, 1]

    def expected_size(self) -> int:
        q, h = self.field.order, self.subgroup.size
        full = (q + 1) * (h - 1) + 1
        return full if self.includes_origin else full - 1

    def without_origin(self) -> "Arc":
        if not self.includes_origin:
            return self
        pts = self.points[~((self.points[:, 0] == 0) & (self.points[:, 1] == 0))]
        return Arc(self.field, self.form, self.subgroup, False, pts)

    def to_json(self) -> dict:
        return {
            "version": ARC_SCHEMA_VERSION,
            "field": self.field.spec.to_json(),
            "form": self.form.to_json(),
            "subgroup_basis": [element_to_hex(b) for b in self.subgroup.basis],
            "includes_origin": self.includes_origin,
            "points": [[element_to_hex(int(x)), element_to_hex(int(y))] for x, y in self.points],
        }

    def __repr__(self):
        return (
            f"Arc(q={self.field.order}, degree={self.degree}, "
            f"n={self.size}, origin={self.includes_origin})"
        )


def denniston_arc(
    field: FieldContext,
    form: QuadraticForm,
    subgroup: AdditiveSubgroup,
    includes_origin: bool = True,
    allow_trivial: bool = False,
) -> Arc:
    """Construct {(x,y) : f(x,y) in H}, checking the size formula.

    The whole-field subgroup gives the trivial arc (all of AG(2,q)) and is
    rejected unless allow_trivial is set.
    """
    if not form_is_irreducible(field, form):
        raise ReducibleFormError(f"{form} is reducible over GF(2^{field.m})")
    if subgroup.size == field.order and not allow_trivial:
        raise TrivialSubgroupError(
            "H equal to the whole field gives the trivial arc; pass allow_trivial to build it"
        )

    mem = subgroup.membership
    ys_all = np.arange(field.order, dtype=field.dtype)
    rows_x = []
    rows_y = []
    for x in field.elements():
        vals = form.evaluate_row(field, x, ys_all)
        ys = ys_all[mem[vals]]
        if len(ys):
            rows_x.append(np.full(len(ys), x, dtype=np.int64))
            rows_y.append(ys.astype(np.int64))
    points = np.column_stack([np.concatenate(rows_x), np.concatenate(rows_y)])
    if not includes_origin:
        points = points[~((points[:, 0] == 0) & (points[:, 1] == 0))]
    arc = Arc(field, form, subgroup, includes_origin, points)
    if arc.size != arc.expected_size():
        raise AssertionError(
            f"arc size {arc.size} does not match the size formula {arc.expected_size()}"
        )
    return arc


def arc_from_json(obj: dict) -> Arc:
    """Rehydrate a serialized arc, re-checking membership pointwise."""
    if obj.get("version") != ARC_SCHEMA_VERSION:
        raise ValueError(f"unsupported arc schema version {obj.get('version')!r}")
    field = FieldContext(FieldSpec.from_json(obj["field"]))
    form = QuadraticForm.from_json(obj["form"])
    basis = [element_from_hex(s) for s in obj["subgroup_basis"]]
    subgroup = subgroup_from_basis(field, basis) if basis else subgroup_from_elements(field, [0])
    points = np.array(
        [[element_from_hex(x), element_from_hex(y)] for x, y in obj["points"]], dtype=np.int64
    )
    members = set(subgroup.elements)
    for x, y in points:
        if form.evaluate(field, int(x), int(y)) not in members:
            raise ValueError(f"point ({x:#x},{y:#x}) does not satisfy f(x,y) in H")
    keys = points[:, 0] * field.order + points[:, 1]
    if not np.all(np.diff(keys) > 0):
        raise ValueError("serialized points are not strictly lex sorted")
    arc = Arc(field, form, subgroup, bool(obj["includes_origin"]), points)
    if arc.size != arc.expected_size():
        raise ValueError("serialized arc size disagrees with the size formula")
    return arc


def arc_to_json_str(arc: Arc) -> str:
    return json.dumps(arc.to_json(), indent=None, separators=(",", ":"))


def arc_from_json_str(s: str) -> Arc:
    return arc_from_json(json.loads(s))


# -- projective lines ---------------------------------------------------------


@dataclass(frozen=True)
class Line:
    """A line of PG(2,q): y = s x + b, or x = c, or the line at infinity."""

    kind: str  # "slope" | "vertical" | "infinity"
    s: int = 0
    b: int = 0

    def contains(self, field: FieldContext, x: int, y: int) -> bool:
        if self.kind == "slope":
            return y == field.mul(self.s, x) ^ self.b
        if self.kind == "vertical":
            return x == self.s
        return False  # affine points never lie on the line at infinity

    def __str__(self):
        if self.kind == "slope":
            return f"y = {element_to_hex(self.s)}*x + {element_to_hex(self.b)}"
        if self.kind == "vertical":
            return f"x = {element_to_hex(self.s)}"
        return "line at infinity"


def all_projective_lines(field: FieldContext) -> list[Line]:
    """The q^2 + q + 1 lines of PG(2,q) in a fixed deterministic order."""
    lines = [Line("slope", s, b) for s in field.elements() for b in field.elements()]
    lines += [Line("vertical", c) for c in field.elements()]
    lines.append(Line("infinity"))
    return lines


def point_grid(field: FieldContext, points: np.ndarray) -> np.ndarray:
    """q x q boolean membership grid indexed [x, y] for a point array."""
    grid = np.zeros((field.order, field.order), dtype=bool)
    grid[points[:, 0], points[:, 1]] = True
    return grid


def line_intersection_counts(field: FieldContext, grid: np.ndarray) -> Iterator[tuple[Line, int]]:
    """Yield (line, |line ∩ point set|) over every projective line."""
    q = field.order
    xs = np.arange(q, dtype=field.dtype)
    bs = np.arange(q, dtype=field.dtype)
    for s in field.elements():
        base = field.scale_vec(s, xs)  # y-intercept-free part s*x
        ymat = np.bitwise_xor.outer(bs, base)  # row b: y values of the line
        counts = grid[xs[None, :], ymat].sum(axis=1)
        for b in field.elements():
            yield Line("slope", s, b), int(counts[b])
    col_counts = grid.sum(axis=1)
    for c in field.elements():
        yield Line("vertical", c), int(col_counts[c])
    yield Line("infinity"), 0


@dataclass(frozen=True)
class MaximalArcCheck:
    is_maximal: bool
    degree: int | None
    counterexample: Line | None = None
    counterexample_count: int | None = None


def verify_point_set(field: FieldContext, points: np.ndarray, degree: int) -> MaximalArcCheck:
    """Check the defining 0-or-degree line property for an arbitrary point set."""
    grid = point_grid(field, points)
    for line, count in line_intersection_counts(field, grid):
        if count not in (0, degree):
            return MaximalArcCheck(False, None, line, count)
    return MaximalArcCheck(True, degree)


def verify_maximal_arc(arc: Arc) -> MaximalArcCheck:
    """Check every line of PG(2,q) against the arc.

    Requires the origin-complete arc; every line must meet it in 0 or
    |H| points (the line at infinity in 0).  Returns the constant nonzero
    intersection size, or the first offending line.
    """
    if not arc.includes_origin:
        raise ValueError("maximal-arc verification expects the arc with the origin")
    return verify_point_set(arc.field, arc.points, arc.degree)


def arc_curve_identity(arc: Arc, poly: SubspacePolynomial) -> bool:
    """True iff L(f(x,y)) = 0 exactly on the arc, over all q^2 points.

    L must be the subspace polynomial of the arc's subgroup for this to
    hold; a mismatched L fails on some point.
    """
    field = arc.field
    if not arc.includes_origin:
        raise ValueError("the curve identity is a statement about the full arc")
    ys_all = np.arange(field.order, dtype=field.dtype)
    arc_rows: dict[int, set[int]] = {}
    for x, y in arc.points:
        arc_rows.setdefault(int(x), set()).add(int(y))
    for x in field.elements():
        vals = arc.form.evaluate_row(field, x, ys_all)
        lvals = np.zeros_like(vals)
        for e, c in poly.coeffs.items():
            lvals ^= field.scale_vec(c, field.pow_vec(vals, e))
        on_curve = set(map(int, ys_all[lvals == 0]))
        if on_curve != arc_rows.get(x, set()):
            return False
    return True
