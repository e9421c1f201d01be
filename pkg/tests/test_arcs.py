import numpy as np
import pytest

from dennarc.arcs import (
    AdditiveSubgroup,
    Line,
    QuadraticForm,
    ReducibleFormError,
    TrivialSubgroupError,
    all_projective_lines,
    arc_curve_identity,
    arc_from_json_str,
    arc_to_json_str,
    denniston_arc,
    enumerate_subgroups,
    form_is_irreducible,
    subfield_subgroup,
    subgroup_from_basis,
    subgroup_from_elements,
    verify_maximal_arc,
    verify_point_set,
)
from dennarc.gf import (
    FieldContext,
    FieldSpec,
    NotAdditivelyClosedError,
    subspace_polynomial,
)


@pytest.fixture(scope="module")
def f16():
    return FieldContext(FieldSpec.default(4))


@pytest.fixture(scope="module")
def f32():
    return FieldContext(FieldSpec.default(5))


@pytest.fixture(scope="module")
def f64():
    return FieldContext(FieldSpec.default(6))


def default_form(field: FieldContext) -> QuadraticForm:
    lam = next(x for x in field.nonzero_elements() if field.trace_to(1, x) == 1)
    return QuadraticForm(1, 1, lam)


def index2_subgroup(field: FieldContext) -> AdditiveSubgroup:
    return subgroup_from_basis(field, [1 << i for i in range(field.m - 1)])


def table2_form_q16(f16: FieldContext) -> QuadraticForm:
    eta = f16.generator
    return QuadraticForm(1, f16.pow(eta, 10), f16.pow(eta, 8))


def table2_subgroup_q16(f16: FieldContext) -> AdditiveSubgroup:
    eta, xi = f16.generator, f16.xi
    return subgroup_from_elements(
        f16, [0, eta, f16.mul(eta, xi), f16.mul(eta, f16.mul(xi, xi))]
    )


# -- forms ---------------------------------------------------------------------


def test_section3_form_irreducible_over_f64(f64):
    assert form_is_irreducible(f64, QuadraticForm(1, 1, f64.xi))


def test_table2_form_irreducible_over_f16(f16):
    assert form_is_irreducible(f16, table2_form_q16(f16))


def test_sum_of_squares_is_reducible(f16):
    # x^2 + y^2 = (x+y)^2
    assert not form_is_irreducible(f16, QuadraticForm(1, 0, 1))


def test_exhaustive_root_scan_matches_trace_criterion(f16):
    # both routes run inside form_is_irreducible; cross-check against a full
    # q^2 point scan here
    for a in (0, 1, f16.generator):
        for b in (0, 1, f16.pow(f16.generator, 10)):
            for c in (0, 1, f16.pow(f16.generator, 8)):
                form = QuadraticForm(a, b, c)
                has_root = any(
                    form.evaluate(f16, x, y) == 0
                    for x in f16.elements()
                    for y in f16.elements()
                    if (x, y) != (0, 0)
                )
                assert form_is_irreducible(f16, form) == (not has_root)


# -- subgroups -------------------------------------------------------------------


def test_table2_subgroup_q32(f32):
    w = f32.generator
    elems = [0, f32.pow(w, 9), f32.pow(w, 13), f32.pow(w, 19)]
    assert f32.pow(w, 9) ^ f32.pow(w, 13) == f32.pow(w, 19)  # closure of the listed set
    sub = subgroup_from_elements(f32, elems)
    assert sub.size == 4


def test_eta_f4_subgroup_q16(f16):
    sub = table2_subgroup_q16(f16)
    assert sub.size == 4
    assert 0 in sub


def test_non_closed_set_rejected_names_pair(f16):
    with pytest.raises(NotAdditivelyClosedError) as exc:
        subgroup_from_elements(f16, [0, 1, f16.generator])
    x, y = exc.value.pair
    assert x ^ y not in (0, 1, f16.generator)


def test_subgroup_from_dependent_basis_rejected(f16):
    with pytest.raises(ValueError):
        subgroup_from_basis(f16, [1, 2, 3])


def test_enumerate_subgroups_counts(f16, f32):
    # gaussian binomials: [4 choose 2]_2 = 35, [5 choose 2]_2 = 155
    assert len(list(enumerate_subgroups(f16, 4))) == 35
    assert len(list(enumerate_subgroups(f32, 4))) == 155
    seen = {s.basis for s in enumerate_subgroups(f16, 4)}
    assert len(seen) == 35


def test_subfield_subgroup(f64):
    sub = subfield_subgroup(f64, 3)
    assert sub.size == 8
    assert set(sub.elements) == set(f64.subfield_elements(3))


# -- arcs ------------------------------------------------------------------------


def test_arc_size_q16_index2(f16):
    arc = denniston_arc(f16, default_form(f16), index2_subgroup(f16))
    assert arc.size == 120
    assert arc.degree == 8


def test_arc_star_size_table2_q16(f16):
    arc = denniston_arc(
        f16, table2_form_q16(f16), table2_subgroup_q16(f16), includes_origin=False
    )
    assert arc.size == 51


def test_arc_size_q64_subfield(f64):
    arc = denniston_arc(f64, QuadraticForm(1, 1, f64.xi), subfield_subgroup(f64, 3))
    assert arc.size == (64 + 1) * (8 - 1) + 1 == 456
    assert arc.without_origin().size == 455


def test_points_sorted_lex_and_satisfy_membership(f16):
    arc = denniston_arc(f16, default_form(f16), index2_subgroup(f16))
    keys = arc.points[:, 0] * 16 + arc.points[:, 1]
    assert np.all(np.diff(keys) > 0)
    members = set(arc.subgroup.elements)
    for x, y in arc.points:
        assert arc.form.evaluate(f16, int(x), int(y)) in members


def test_reducible_form_rejected(f16):
    with pytest.raises(ReducibleFormError):
        denniston_arc(f16, QuadraticForm(1, 0, 1), index2_subgroup(f16))


def test_trivial_subgroup_needs_flag(f16):
    whole = subgroup_from_basis(f16, [1 << i for i in range(4)])
    with pytest.raises(TrivialSubgroupError):
        denniston_arc(f16, default_form(f16), whole)
    arc = denniston_arc(f16, default_form(f16), whole, allow_trivial=True)
    assert arc.size == 256


def test_verify_maximal_arc_q16(f16):
    arc = denniston_arc(f16, default_form(f16), index2_subgroup(f16))
    check = verify_maximal_arc(arc)
    assert check.is_maximal and check.degree == 8


def test_verify_trivial_arc(f16):
    whole = subgroup_from_basis(f16, [1 << i for i in range(4)])
    arc = denniston_arc(f16, default_form(f16), whole, allow_trivial=True)
    check = verify_maximal_arc(arc)
    assert check.is_maximal and check.degree == 16


def test_random_point_set_fails_verification(f16):
    rng = np.random.default_rng(11)
    flat = rng.choice(np.arange(256), size=120, replace=False)
    points = np.column_stack([flat // 16, flat % 16])
    points = points[np.lexsort((points[:, 1], points[:, 0]))]
    check = verify_point_set(f16, points, 8)
    assert not check.is_maximal
    assert check.counterexample is not None
    assert check.counterexample_count not in (0, 8)


def test_line_count(f16):
    assert len(all_projective_lines(f16)) == 16 * 16 + 16 + 1


def test_curve_identity_q16(f16):
    arc = denniston_arc(f16, default_form(f16), index2_subgroup(f16))
    poly = subspace_polynomial(f16, arc.subgroup.elements)
    assert poly.degree == 8
    assert arc_curve_identity(arc, poly)


def test_curve_identity_q64_subfield(f64):
    arc = denniston_arc(f64, QuadraticForm(1, 1, f64.xi), subfield_subgroup(f64, 3))
    poly = subspace_polynomial(f64, arc.subgroup.elements)
    assert poly.coeffs == {1: 1, 8: 1}
    assert arc_curve_identity(arc, poly)


def test_curve_identity_fails_for_mismatched_polynomial(f16):
    arc = denniston_arc(f16, default_form(f16), index2_subgroup(f16))
    other = subspace_polynomial(f16, subgroup_from_basis(f16, [1, 2]).elements)
    assert not arc_curve_identity(arc, other)


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_size_formula_and_line_incidence_all_subgroup_sizes(m):
    field = FieldContext(FieldSpec.default(m))
    form = default_form(field)
    for k in range(1, m):
        sub = subgroup_from_basis(field, [1 << i for i in range(k)])
        arc = denniston_arc(field, form, sub)
        q, h = field.order, sub.size
        assert arc.size == (q + 1) * (h - 1) + 1
        check = verify_maximal_arc(arc)
        assert check.is_maximal and check.degree == h


def test_json_roundtrip(f16):
    arc = denniston_arc(
        f16, table2_form_q16(f16), table2_subgroup_q16(f16), includes_origin=False
    )
    s = arc_to_json_str(arc)
    back = arc_from_json_str(s)
    assert np.array_equal(back.points, arc.points)
    assert back.includes_origin == arc.includes_origin
    assert back.subgroup.basis == arc.subgroup.basis
    assert back.form == arc.form


def test_json_rejects_tampered_points(f16):
    import json

    arc = denniston_arc(f16, default_form(f16), index2_subgroup(f16))
    obj = arc.to_json()
    obj["points"][3] = ["0", "1"] if obj["points"][3] != ["0", "1"] else ["0", "2"]
    with pytest.raises(ValueError):
        arc_from_json_str(json.dumps(obj))


def test_without_origin(f16):
    arc = denniston_arc(f16, default_form(f16), index2_subgroup(f16))
    star = arc.without_origin()
    assert star.size == arc.size - 1
    assert not ((star.points[:, 0] == 0) & (star.points[:, 1] == 0)).any()


def test_line_str_and_contains(f16):
    line = Line("slope", 3, 5)
    assert line.contains(f16, 1, f16.mul(3, 1) ^ 5)
    assert not Line("infinity").contains(f16, 0, 0)
