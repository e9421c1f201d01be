import itertools

import numpy as np
import pytest

from dennarc.arcs import (
    QuadraticForm,
    denniston_arc,
    subfield_subgroup,
    subgroup_from_basis,
    subgroup_from_elements,
)
from dennarc.funcode import (
    CONIC5,
    CUBIC10,
    LINEAR3,
    BudgetExceededError,
    MacWilliamsError,
    MonomialSpace,
    RankDeficiencyError,
    build_code,
    enumerate_code,
    generator_to_text,
    macwilliams_dual_distribution,
    message_from_rank,
    min_distance,
    projective_class_count,
    random_message_weights,
    two_weight_check,
    weight_distribution,
)
from dennarc.gf import FieldContext, FieldSpec


@pytest.fixture(scope="module")
def f16():
    return FieldContext(FieldSpec.default(4))


def default_form(field):
    lam = next(x for x in field.nonzero_elements() if field.trace_to(1, x) == 1)
    return QuadraticForm(1, 1, lam)


def index2_subgroup(field):
    return subgroup_from_basis(field, [1 << i for i in range(field.m - 1)])


@pytest.fixture(scope="module")
def omega16(f16):
    return denniston_arc(f16, default_form(f16), index2_subgroup(f16))


def brute_force_distribution(code):
    """Oracle: enumerate every message and evaluate the codeword directly."""
    q, k = code.field.order, code.k
    counts = {}
    for msg in itertools.product(range(q), repeat=k):
        w = code.weight(msg)
        counts[w] = counts.get(w, 0) + 1
    return counts


# -- build_code -------------------------------------------------------------------


def test_build_conic5_rank(omega16):
    code = build_code(omega16, CONIC5)
    assert (code.k, code.n) == (5, 120)


def test_build_cubic10_rank(omega16):
    code = build_code(omega16, CUBIC10)
    assert (code.k, code.n) == (10, 120)


def test_build_linear3_rank(omega16):
    code = build_code(omega16, LINEAR3)
    assert (code.k, code.n) == (3, 120)


def test_rank_deficiency_reports_dependency(f16):
    # on points with y = 0 every y-divisible monomial evaluates to zero, so
    # the space {y, xy} is dependent there
    arc = denniston_arc(f16, default_form(f16), index2_subgroup(f16))
    pts = arc.points[arc.points[:, 1] == 0]
    from dennarc.arcs import Arc

    doctored = Arc(f16, arc.form, arc.subgroup, False, pts)
    with pytest.raises(RankDeficiencyError) as exc:
        build_code(doctored, MonomialSpace(((0, 1), (1, 1)), "ys"))
    dep = exc.value.dependency
    assert any(dep)
    # the reported kernel combination really evaluates to zero
    field = f16
    for x, y in pts:
        v = field.mul(dep[0], int(y)) ^ field.mul(dep[1], field.mul(int(x), int(y)))
        assert v == 0


def test_generator_text_export(omega16):
    code = build_code(omega16, LINEAR3)
    text = generator_to_text(code)
    lines = text.strip().split("\n")
    assert len(lines) == 3
    assert all(len(line.split()) == 120 for line in lines)
    assert lines[0].split()[0] == "1"  # constant monomial at the origin


# -- enumeration against oracles -----------------------------------------------


def test_hand_oracle_full_plane_ag22():
    # the 4-point plane over the two-element field with space {x, y}:
    # four messages, hand-enumerable, distribution {0: 1, 2: 3}
    pts = [(0, 0), (0, 1), (1, 0), (1, 1)]
    counts = {}
    for a in (0, 1):
        for b in (0, 1):
            w = sum(1 for x, y in pts if (a & x) ^ (b & y))
            counts[w] = counts.get(w, 0) + 1
    assert counts == {0: 1, 2: 3}
    # the same structure through the package kernel, on the GF(2) subplane
    # of AG(2,4): restricted to {0,1} coordinates the field acts like GF(2)
    f4 = FieldContext(FieldSpec.default(2))
    whole = subgroup_from_basis(f4, [1, 2])
    from dennarc.arcs import Arc

    plane = Arc(f4, QuadraticForm(1, 1, f4.xi), whole, True,
                np.array(pts, dtype=np.int64))
    code = build_code(plane, MonomialSpace(((1, 0), (0, 1)), "xy"))
    dist = weight_distribution(code)
    assert dist.counts == brute_force_distribution(code)
    sub = {msg: code.weight(msg) for msg in itertools.product((0, 1), repeat=2)}
    assert sorted(sub.values()) == [0, 2, 2, 2]


def test_kernel_matches_brute_force_small_cases():
    cases = []
    f4 = FieldContext(FieldSpec.default(2))
    sub2 = subgroup_from_basis(f4, [1])
    arc4 = denniston_arc(f4, QuadraticForm(1, 1, f4.xi), sub2)
    cases.append(build_code(arc4, LINEAR3))
    cases.append(build_code(arc4, CONIC5))
    f8 = FieldContext(FieldSpec.default(3))
    lam8 = next(x for x in f8.nonzero_elements() if f8.trace_to(1, x) == 1)
    arc8 = denniston_arc(f8, QuadraticForm(1, 1, lam8), subgroup_from_basis(f8, [1, 2]))
    cases.append(build_code(arc8, LINEAR3))
    cases.append(build_code(arc8.without_origin(), CONIC5))
    for code in cases:
        dist = weight_distribution(code)
        assert dist.counts == brute_force_distribution(code)
        dist.validate()


def test_probe_ranks_match_direct_recomputation(omega16):
    code = build_code(omega16, CONIC5)
    total = projective_class_count(16, 5)
    rng = np.random.default_rng(5)
    ranks = sorted(int(r) for r in rng.integers(0, total, size=1000))
    res = enumerate_code(code, probe_ranks=ranks)
    assert set(res.probes) == set(ranks)
    for rank in ranks[:150]:
        msg = message_from_rank(16, 5, rank)
        assert code.weight(msg) == res.probes[rank]


def test_rank_message_enumeration_is_projective_and_complete():
    q, k = 4, 3
    msgs = [message_from_rank(q, k, r) for r in range(projective_class_count(q, k))]
    assert len(set(msgs)) == len(msgs)
    for msg in msgs:
        lead = next(i for i, v in enumerate(msg) if v)
        assert msg[lead] == 1


def test_workers_do_not_change_distribution(omega16):
    code = build_code(omega16, CONIC5)
    base = enumerate_code(code, workers=1)
    for workers in (2, 3, 7):
        res = enumerate_code(code, workers=workers)
        assert res.distribution.counts == base.distribution.counts
        assert res.min_weight == base.min_weight
        assert res.min_witness == base.min_witness


def test_table1_minimum_distances(f16, omega16):
    code = build_code(omega16, CONIC5)
    assert min_distance(code) == 103
    star = build_code(omega16.without_origin(), CONIC5)
    assert (star.k, star.n) == (5, 119)
    assert min_distance(star) == 103


def test_min_distance_witness_verifies(omega16):
    code = build_code(omega16, CONIC5)
    res = enumerate_code(code)
    assert code.weight(res.min_witness) == res.min_weight == 103


def test_random_messages_bound_min_distance(omega16):
    code = build_code(omega16, CONIC5)
    d = min_distance(code)
    weights = random_message_weights(code, 10_000, seed=123)
    assert min(weights) >= d


def test_two_weight_q16_with_origin(omega16):
    code = build_code(omega16, LINEAR3)
    assert two_weight_check(code) == {112, 120}


def test_two_weight_table2_arc_with_origin(f16):
    eta, xi = f16.generator, f16.xi
    sub = subgroup_from_elements(f16, [0, eta, f16.mul(eta, xi), f16.mul(eta, f16.mul(xi, xi))])
    form = QuadraticForm(1, f16.pow(eta, 10), f16.pow(eta, 8))
    arc = denniston_arc(f16, form, sub)
    code = build_code(arc, LINEAR3)
    assert two_weight_check(code) == {48, 52}


def test_zero_weight_never_in_two_weight_set(omega16):
    assert 0 not in two_weight_check(build_code(omega16, LINEAR3))


def test_constant_monomial_bounds_distance(omega16):
    code = build_code(omega16, LINEAR3)
    assert min_distance(code) <= code.n


# -- budget guard -----------------------------------------------------------------


def test_cubic10_q16_refused_by_budget(omega16):
    code = build_code(omega16, CUBIC10)
    with pytest.raises(BudgetExceededError) as exc:
        weight_distribution(code)
    assert exc.value.projective_classes == projective_class_count(16, 10)


def test_hard_bit_guard():
    # k*m = 4*16 = 64 bits exceeds the hard guard even with a huge budget
    f = FieldContext(FieldSpec.default(16))
    from dennarc.arcs import Arc

    pts = np.array([[0, 1], [1, 0], [1, 1], [2, 1]], dtype=np.int64)
    arc = Arc(f, QuadraticForm(1, 1, f.xi), subgroup_from_basis(f, [1]), True, pts)
    code = build_code(arc, MonomialSpace(((1, 0), (0, 1), (1, 1), (2, 0)), "w"))
    with pytest.raises(BudgetExceededError):
        weight_distribution(code, budget=10**18)


# -- MacWilliams -------------------------------------------------------------------


def test_macwilliams_trivial_code():
    n, q = 6, 4
    dual = macwilliams_dual_distribution({0: 1}, n=n, k=0, q=q)
    import math

    expected = {w: math.comb(n, w) * (q - 1) ** w for w in range(n + 1)}
    assert dual == {w: c for w, c in expected.items() if c}


def test_macwilliams_of_computed_distribution(omega16):
    code = build_code(omega16, CONIC5)
    dist = weight_distribution(code)
    dual = macwilliams_dual_distribution(dist.counts, n=120, k=5, q=16)
    assert all(v > 0 for v in dual.values())
    assert sum(dual.values()) == 16 ** (120 - 5)


def test_macwilliams_flags_perturbed_distribution(omega16):
    code = build_code(omega16, LINEAR3)
    dist = weight_distribution(code)
    bad = dict(dist.counts)
    w = next(iter(bad))
    bad[w] += 1
    with pytest.raises(MacWilliamsError):
        macwilliams_dual_distribution(bad, n=120, k=3, q=16)


def test_distribution_sum_and_divisibility(omega16):
    for space in (LINEAR3, CONIC5):
        dist = weight_distribution(build_code(omega16, space))
        assert dist.total() == 16**dist.k
        assert all(c % 15 == 0 for w, c in dist.counts.items() if w > 0)
