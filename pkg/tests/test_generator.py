import numpy as np
import pytest

from commdiag import (
    PairSpec,
    check_commute,
    check_star_commute,
    eigenvalues,
    generate_commuting_pair,
    generate_normal_pair,
    generate_star_commuting_pair,
    is_normal,
)
from commdiag.exceptions import InvalidSpec
from commdiag.generator import RNG_ALGORITHM, random_unitary
from commdiag.linalg import unitarity_defect
from conftest import multiset_gap


def test_same_seed_same_pair():
    spec = PairSpec(n=5, multiplicities_a=(2, 3), seed=42)
    a1, b1 = generate_commuting_pair(spec)
    a2, b2 = generate_commuting_pair(spec)
    np.testing.assert_array_equal(a1, a2)
    np.testing.assert_array_equal(b1, b2)
    a3, _ = generate_commuting_pair(PairSpec(n=5, multiplicities_a=(2, 3), seed=43))
    assert not np.allclose(a1, a3)


def test_pinned_first_draw():
    # a 1x1 pair is its eigenvalues, so this pins the PCG64 stream and sampling order
    assert RNG_ALGORITHM == "numpy.random.PCG64"
    a, _ = generate_commuting_pair(PairSpec(n=1, seed=0))
    rng = np.random.Generator(np.random.PCG64(0))
    rng.standard_normal((1, 1))
    rng.standard_normal((1, 1))
    r = 10.0 * np.sqrt(rng.random())
    assert a[0, 0] == pytest.approx(r * np.exp(2j * np.pi * rng.random()), abs=1e-12)


def test_complex_eigenvalues_fill_the_disk():
    a, _ = generate_commuting_pair(PairSpec(n=16, seed=11))
    vals = eigenvalues(a)
    assert np.all(np.abs(vals) <= 10.0 + 1e-9)
    assert np.any(vals.real < 0) and np.any(vals.imag < 0)


@pytest.mark.parametrize("mults", [(1, 1, 1, 1), (2, 2), (3, 1), (4,)])
def test_multiplicity_structure(mults):
    a, b = generate_commuting_pair(PairSpec(n=4, multiplicities_a=mults, seed=1))
    assert check_commute(a, b)[0]
    counts = np.unique(np.round(eigenvalues(a), 6), return_counts=True)[1]
    assert sorted(counts) == sorted(mults)


def test_general_basis_condition():
    a, b = generate_commuting_pair(PairSpec(n=6, basis_mode="general", cond_target=1e3, seed=2))
    assert check_commute(a, b)[0]
    assert not is_normal(a)


def test_normal_pair():
    a, b = generate_normal_pair(PairSpec(n=4, seed=3))
    assert is_normal(a) and is_normal(b)
    with pytest.raises(InvalidSpec):
        generate_normal_pair(PairSpec(n=4, basis_mode="general"))


@pytest.mark.parametrize("mode", ["complex", "real", "nonneg"])
def test_star_pair(mode):
    a, b = generate_star_commuting_pair(PairSpec(n=5, eigenvalue_mode=mode, seed=4))
    np.testing.assert_array_equal(a, a.T)
    assert np.all(a.imag == 0)
    assert check_commute(a, b)[0] and check_star_commute(a, b)[0]
    if mode == "nonneg":
        assert np.all(eigenvalues(a).real >= -1e-12)


def test_zero_eigenvalues_make_both_singular():
    spec = PairSpec(n=5, multiplicities_a=(2, 1, 2), seed=9, zero_eigenvalues=True)
    a, b = generate_star_commuting_pair(spec)
    assert multiset_gap(np.sort(np.abs(np.linalg.eigvals(a)))[:2], [0, 0]) < 1e-12
    assert np.sort(np.abs(np.linalg.eigvals(b)))[:2] == pytest.approx([0, 0], abs=1e-12)


def test_random_unitary():
    rng = np.random.default_rng(0)
    assert unitarity_defect(random_unitary(rng, 7)) < 1e-13
    q = random_unitary(rng, 4, real=True)
    assert np.isrealobj(q) and unitarity_defect(q) < 1e-13


@pytest.mark.parametrize(
    "kwargs",
    [
        {"n": 0},
        {"n": 3, "multiplicities_a": (1, 1)},
        {"n": 2, "multiplicities_a": (0, 2)},
        {"n": 2, "eigenvalue_mode": "imaginary"},
        {"n": 2, "basis_mode": "sparse"},
        {"n": 2, "cond_target": 0.5},
        {"n": 2, "seed": -1},
    ],
)
def test_invalid_specs(kwargs):
    with pytest.raises(InvalidSpec):
        PairSpec(**kwargs)


def test_star_pair_rejects_general_basis():
    with pytest.raises(InvalidSpec):
        generate_star_commuting_pair(PairSpec(n=3, basis_mode="general"))


def test_spec_dict_round_trip():
    spec = PairSpec(n=3, multiplicities_a=[2, 1], seed=5)
    assert PairSpec(**spec.as_dict()) == spec
    assert spec.as_dict()["multiplicities_a"] == [2, 1]
