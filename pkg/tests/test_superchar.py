import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gpmoments import (DimensionMismatch, build_context, build_matrices,
                       build_tensor, compute_periods, primes_in_range,
                       structure_constant, verify_identities)
from gpmoments.superchar import all_passed, constant_matrix, general_constant


def brute_constant(ctx, i, j, k, rep_index=0):
    # oracle: literal pair enumeration at a chosen representative
    z = int(ctx.cosets[k][rep_index])
    return sum(1 for x in ctx.cosets[i] for y in ctx.cosets[j]
               if (int(x) + int(y)) % ctx.p == z)


def test_structure_constant_examples():
    ctx = build_context(7, 3)
    assert structure_constant(ctx, 0, 0, 0) == 0
    assert structure_constant(ctx, 0, 3, 0) == 1


def test_structure_constant_representative_check():
    ctx = build_context(13, 4)
    for j in range(5):
        for k in range(5):
            structure_constant(ctx, 0, j, k, check_representative=True)


def test_column_sums_13_4():
    ctx = build_context(13, 4)
    tensor = build_tensor(ctx)
    for n in range(4):
        assert int(tensor.c0[:, n].sum()) == 3


def test_tensor_matches_brute_force():
    for p, d in [(7, 3), (13, 4), (13, 6), (29, 7), (11, 2)]:
        ctx = build_context(p, d)
        tensor = build_tensor(ctx)
        for j in range(d + 1):
            for n in range(d + 1):
                assert tensor.c0[j, n] == brute_constant(ctx, 0, j, n), (p, d, j, n)


def test_tensor_d1_count():
    # x + y = 1 with x, y nonzero
    for p in (7, 11, 13):
        ctx = build_context(p, 1)
        assert build_tensor(ctx).c0[0, 0] == p - 2


def test_d3_pattern_off_diagonal_is_t0_plus_1():
    # for d = 3 the (1,2) and (2,1) entries equal t_0 + 1
    for p in primes_in_range(7, 100, (3, 1)):
        c0 = build_tensor(build_context(p, 3)).c0
        assert c0[2, 1] == c0[0, 0] + 1
        assert c0[1, 2] == c0[0, 0] + 1


def test_d2_matrix_displays():
    # p = 1 (mod 4): counting block [[(p-5)/4,(p-1)/4],[(p-1)/4,(p-1)/4]]
    for p in primes_in_range(5, 120, (4, 1)):
        c0 = build_tensor(build_context(p, 2)).c0
        assert (c0[0, 0], c0[0, 1]) == ((p - 5) // 4, (p - 1) // 4)
        assert (c0[1, 0], c0[1, 1]) == ((p - 1) // 4, (p - 1) // 4)
    # p = 3 (mod 4): [[(p-3)/4,(p+1)/4],[(p-3)/4,(p-3)/4]]
    for p in primes_in_range(7, 120, (4, 3)):
        c0 = build_tensor(build_context(p, 2)).c0
        assert (c0[0, 0], c0[0, 1]) == ((p - 3) // 4, (p + 1) // 4)
        assert (c0[1, 0], c0[1, 1]) == ((p - 3) // 4, (p - 3) // 4)


def test_general_constant_matches_brute():
    for p, d in [(7, 3), (13, 4), (13, 6)]:
        ctx = build_context(p, d)
        tensor = build_tensor(ctx)
        for i in range(d + 1):
            cm = constant_matrix(tensor, i)
            for j in range(d + 1):
                for k in range(d + 1):
                    expected = brute_constant(ctx, i, j, k)
                    assert general_constant(tensor, i, j, k) == expected
                    assert cm[j, k] == expected


def _pipeline(p, d):
    ctx = build_context(p, d)
    tensor = build_tensor(ctx)
    pv = compute_periods(ctx)
    return ctx, tensor, pv, build_matrices(ctx, tensor, pv)


def test_t_structure_sqrt_row_at_alpha():
    for p, d in [(13, 4), (17, 4), (7, 3), (13, 2), (7, 2)]:
        ctx, tensor, pv, m = _pipeline(p, d)
        root = np.sqrt(ctx.k)
        for j in range(d):
            expected = root if j == ctx.alpha else 0.0
            assert m.T[j, d] == pytest.approx(expected)
        assert m.T[d, 0] == pytest.approx(root)
        assert np.all(m.T[d, 1:] == 0)


def test_identities_7_3_all_pass():
    _, tensor, pv, m = _pipeline(7, 3)
    assert all_passed(verify_identities(m, tensor, pv))


def test_identities_13_4_symmetry_not_applicable():
    _, tensor, pv, m = _pipeline(13, 4)
    results = {r.name: r for r in verify_identities(m, tensor, pv)}
    assert not results["T_symmetric"].applicable
    assert results["T_normal"].passed
    assert all(r.passed for r in results.values())


def test_identities_29_7_odd_d_symmetric():
    ctx, tensor, pv, m = _pipeline(29, 7)
    results = {r.name: r for r in verify_identities(m, tensor, pv)}
    assert results["T_symmetric"].applicable  # d odd forces 2d | p-1
    assert results["T_symmetric"].passed


def test_eigenvalues_of_T_are_periods():
    ctx, tensor, pv, m = _pipeline(13, 6)
    eig = sorted(np.linalg.eigvals(m.T).real)
    expected = sorted(list(pv.eta.real) + [(ctx.p - 1) / ctx.d])
    assert np.allclose(eig, expected, atol=1e-8)


def test_trace_closed_form():
    for p, d in [(7, 3), (13, 4), (29, 7), (31, 5)]:
        ctx = build_context(p, d)
        c0 = build_tensor(ctx).c0
        lhs = int((c0[:d, :d].astype(object) ** 2).sum())
        assert lhs * d * d == p * p + (d * d - 3 * d - 2) * p + 3 * d + 1


def test_build_matrices_dimension_mismatch():
    ctx3 = build_context(7, 3)
    ctx2 = build_context(7, 2)
    with pytest.raises(DimensionMismatch):
        build_matrices(ctx3, build_tensor(ctx2), compute_periods(ctx3))


@st.composite
def contexts(draw):
    p = draw(st.sampled_from(primes_in_range(5, 200)))
    divisors = [d for d in range(2, min(p, 20)) if (p - 1) % d == 0]
    if not divisors:
        divisors = [1]
    return build_context(p, draw(st.sampled_from(divisors)))


@settings(max_examples=30, deadline=None)
@given(contexts())
def test_tensor_invariants_property(ctx):
    d, k = ctx.d, ctx.k
    c0 = build_tensor(ctx).c0
    assert c0.max() <= k
    for n in range(d):
        assert int(c0[:, n].sum()) == k
    for m in range(d):
        for n in range(d):
            assert c0[m, n] == c0[(-m) % d, (n - m) % d]
    if (ctx.p - 1) % (2 * d) == 0:
        assert np.array_equal(c0[:d, :d], c0[:d, :d].T)
