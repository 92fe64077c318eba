import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from commdiag import (
    PairSpec,
    check_star_commute,
    generate_star_commuting_pair,
    load_fixture,
    singular_values,
    sort_svd,
    svd_commuting_pair,
    verify_svd,
)
from commdiag.exceptions import InputError, NotCommuting, NotStarCommuting
from commdiag.generator import generate_noncommuting_pair
from commdiag.linalg import unitarity_defect


def assert_valid(r, a, b, atol=1e-12):
    for x, sigma, v in ((a, r.sigma_a, r.v_a), (b, r.sigma_b, r.v_b)):
        np.testing.assert_allclose((r.u * sigma) @ v.conj().T, x, atol=atol * max(1, np.abs(x).max()))
        assert unitarity_defect(v) < 1e-12
        assert np.all(sigma >= 0)
    assert unitarity_defect(r.u) < 1e-12


@pytest.mark.parametrize("example", ["ex1", "ex2", "ex3"])
def test_examples(example):
    a, b = load_fixture(f"{example}_a"), load_fixture(f"{example}_b")
    r = svd_commuting_pair(a, b)
    assert_valid(r, a, b)
    np.testing.assert_allclose(np.sort(r.sigma_a), np.sort(np.linalg.svd(a, compute_uv=False)), atol=1e-12)
    np.testing.assert_allclose(np.sort(r.sigma_b), np.sort(np.linalg.svd(b, compute_uv=False)), atol=1e-12)


@pytest.mark.parametrize("name", ["ex1_a", "ex1_b", "ex3_a", "ex3_b"])
def test_reference_right_factors(name):
    # X V = U Sigma, so the columns of X V are mutually orthogonal
    x = load_fixture(name)
    v = load_fixture(name.replace("_a", "_v_a").replace("_b", "_v_b"))
    xv = x @ v
    gram = xv.conj().T @ xv
    assert unitarity_defect(v) < 1e-12
    np.testing.assert_allclose(gram, np.diag(np.diag(gram)), atol=1e-12)
    np.testing.assert_allclose(
        np.sort(np.linalg.norm(xv, axis=0)), np.sort(np.linalg.svd(x, compute_uv=False)), atol=1e-12
    )


def test_zero_matrix_pair():
    z = np.zeros((3, 3))
    b = np.diag([1.0, 2.0, 3.0])
    r = svd_commuting_pair(z, b)
    np.testing.assert_array_equal(r.sigma_a, 0)
    assert_valid(r, z, b)


def test_sort_svd():
    a, b = load_fixture("ex3_a"), load_fixture("ex3_b")
    r = sort_svd(svd_commuting_pair(a, b), by="b")
    assert np.all(np.diff(r.sigma_b) <= 1e-12)
    assert_valid(r, a, b)
    with pytest.raises(InputError):
        sort_svd(r, by="c")


def test_rejects_noncommuting_and_non_star():
    with pytest.raises(NotCommuting):
        svd_commuting_pair(*generate_noncommuting_pair(3))
    # a Jordan block commutes with itself but is not normal, so A^H A != A A^H
    j = np.array([[1.0, 1.0], [0.0, 1.0]])
    assert not check_star_commute(j, j)[0]
    with pytest.raises(NotStarCommuting):
        svd_commuting_pair(j, j)


def test_verify_svd_detects_wrong_sigma():
    a = load_fixture("ex1_a")
    r = svd_commuting_pair(a, load_fixture("ex1_b"))
    assert verify_svd(a, r.u, r.sigma_a, r.v_a).ok
    bad = verify_svd(a, r.u, r.sigma_a * 1.01, r.v_a)
    assert not bad.ok and bad.reconstruction > 1e-3


def test_singular_values_descending_and_accurate_near_zero():
    a = np.diag([1e-9, 3.0, 2.0])
    np.testing.assert_allclose(singular_values(a), [3.0, 2.0, 1e-9], rtol=1e-6)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 7), st.booleans(), st.sampled_from(["complex", "real", "nonneg"]))
def test_generated_star_pairs(seed, n, zeros, mode):
    spec = PairSpec(n=n, seed=seed, zero_eigenvalues=zeros, eigenvalue_mode=mode)
    a, b = generate_star_commuting_pair(spec)
    r = svd_commuting_pair(a, b)
    assert_valid(r, a, b, atol=1e-10)
