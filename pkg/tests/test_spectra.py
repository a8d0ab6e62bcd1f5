import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

import codespectra as cs
import codespectra.spectra as spectra_mod
from codespectra import ContractViolationError, ConvergenceError, LawSpec
from codespectra.signal import MODE_DISTINCT, MODE_WITH_REPLACEMENT


def _vector_cdf(law):
    return lambda xs: np.array([law.cdf(float(t)) for t in np.atleast_1d(xs)])


def test_gram_orthogonal_rows_identity():
    hadamard = np.array([
        [1.0, 1.0, 1.0, 1.0],
        [1.0, -1.0, 1.0, -1.0],
        [1.0, 1.0, -1.0, -1.0],
        [1.0, -1.0, -1.0, 1.0],
    ])
    sig = cs.SignalMatrix(entries=hadamard, mode=MODE_DISTINCT,
                          seed=cs.SeedContract(0), q=2)
    assert (cs.gram(sig) == np.eye(4)).all()


def test_gram_duplicate_rows(even5):
    sig = cs.sample_codewords(even5, 1, MODE_DISTINCT, seed=3)
    row = np.asarray(sig.entries)
    dup = cs.SignalMatrix(entries=np.vstack([row, row]), mode=MODE_WITH_REPLACEMENT,
                          seed=cs.SeedContract(3), q=2)
    assert (cs.gram(dup) == np.ones((2, 2))).all()


def test_gram_binary_offdiagonal_identity(even5):
    sig = cs.sample_codewords(even5, 16, MODE_DISTINCT, seed=3)
    g = cs.gram(sig)
    rows = np.asarray(sig.entries)
    words = ((1.0 - rows) / 2).astype(int)
    for i in range(16):
        assert g[i, i] == 1.0
        for j in range(16):
            wt = int(((words[i] + words[j]) % 2).sum())
            assert g[i, j] * even5.n == pytest.approx(even5.n - 2 * wt)


def test_center_scale_zero_on_identity():
    out = cs.center_scale(np.eye(3), n=10, p=3)
    assert (out == 0).all()


def test_center_scale_two_by_two():
    g = np.array([[1.0, 0.4], [0.4, 1.0]])
    out = cs.center_scale(g, n=8, p=2)
    eigs = cs.eig_hermitian(out)
    expect = np.sqrt(8 / 2) * 0.4
    assert eigs == pytest.approx([-expect, expect])
    assert np.trace(out) == 0.0


def test_center_scale_rejects_bad_diagonal():
    g = np.array([[1.1, 0.0], [0.0, 1.0]])
    with pytest.raises(ContractViolationError):
        cs.center_scale(g, n=4, p=2)


def test_eig_identity_and_swap():
    assert cs.eig_hermitian(np.eye(3)).tolist() == [1.0, 1.0, 1.0]
    assert cs.eig_hermitian(np.array([[0.0, 1.0], [1.0, 0.0]])) == \
        pytest.approx([-1.0, 1.0], abs=1e-12)


def test_eig_trace_and_frobenius_invariants():
    rng = np.random.default_rng(11)
    x = rng.standard_normal((8, 8))
    h = (x + x.T) / 2
    eigs = cs.eig_hermitian(h)
    assert eigs.sum() == pytest.approx(np.trace(h), rel=1e-9)
    assert (eigs**2).sum() == pytest.approx(np.linalg.norm(h) ** 2, rel=1e-9)


@pytest.mark.parametrize("size", [2, 5, 17, 50])
def test_eig_matches_numpy_oracle(size):
    rng = np.random.default_rng(size)
    x = rng.standard_normal((size, size))
    h = (x + x.T) / 2
    assert cs.eig_hermitian(h) == pytest.approx(np.linalg.eigvalsh(h), abs=1e-10)


def test_eig_complex_hermitian_embedding():
    rng = np.random.default_rng(5)
    x = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    h = (x + x.conj().T) / 2
    assert cs.eig_hermitian(h) == pytest.approx(np.linalg.eigvalsh(h), abs=1e-10)


def test_eig_rejects_non_hermitian():
    with pytest.raises(ContractViolationError):
        cs.eig_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ContractViolationError):
        cs.eig_hermitian(np.zeros((2, 3)))


def test_eig_convergence_failure_is_loud(monkeypatch):
    monkeypatch.setattr(spectra_mod, "JACOBI_SWEEP_LIMIT", 0)
    with pytest.raises(ConvergenceError):
        cs.eig_hermitian(np.array([[0.0, 1.0], [1.0, 0.0]]))


def test_esd_examples():
    eigs = np.array([-1.0, 0.0, 1.0])
    assert cs.esd(eigs, -2.0) == 0.0
    assert cs.esd(eigs, 1.0) == 1.0
    assert cs.esd(eigs, 0.0) == pytest.approx(2 / 3)


def test_ks_single_eigenvalue_against_semicircle():
    assert cs.ks_statistic(np.array([0.0]), LawSpec("sc")) == pytest.approx(0.5)


def test_ks_at_quantiles_is_small():
    # eigenvalues at the (j - 1/2)/p semicircle quantiles
    law = LawSpec("sc")
    p = 16
    targets = (np.arange(1, p + 1) - 0.5) / p
    xs = np.array([_invert_cdf(law, t) for t in targets])
    assert cs.ks_statistic(xs, law) <= 1 / (2 * p) + 1e-9


def _invert_cdf(law, target, lo=-2.0, hi=2.0):
    for _ in range(80):
        mid = (lo + hi) / 2
        if law.cdf(mid) < target:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_ks_matches_scipy(seed):
    rng = np.random.default_rng(seed)
    eigs = np.sort(rng.uniform(-2.5, 2.5, size=rng.integers(2, 40)))
    law = LawSpec("sc")
    ref = stats.ks_1samp(eigs, _vector_cdf(law)).statistic
    assert cs.ks_statistic(eigs, law) == pytest.approx(ref, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(-3, 3), min_size=1, max_size=24))
def test_ks_invariant_under_multiplicity_doubling(values):
    eigs = np.sort(np.array(values))
    law = LawSpec("sc")
    doubled = np.sort(np.concatenate([eigs, eigs]))
    assert cs.ks_statistic(doubled, law) == pytest.approx(
        cs.ks_statistic(eigs, law), abs=1e-12
    )


def test_trace_moments_examples():
    eigs = np.array([-1.0, 1.0])
    moments = dict(cs.trace_moments(eigs, 3))
    assert moments[1] == 0.0
    assert moments[2] == 1.0
    assert moments[3] == 0.0


def test_centered_first_moment_vanishes(even5):
    sig = cs.sample_codewords(even5, 8, MODE_DISTINCT, seed=21)
    gi = cs.center_scale(cs.gram(sig), sig.n, sig.p)
    eigs = cs.eig_hermitian(gi)
    assert abs(dict(cs.trace_moments(eigs, 1))[1]) < 1e-9


def test_second_moment_entry_formula(even5):
    # A_{2,I} = (n/p^2) sum_{i != j} |G_ij|^2
    sig = cs.sample_codewords(even5, 8, MODE_DISTINCT, seed=22)
    g = cs.gram(sig)
    gi = cs.center_scale(g, sig.n, sig.p)
    eigs = cs.eig_hermitian(gi)
    a2 = dict(cs.trace_moments(eigs, 2))[2]
    off = g - np.diag(np.diag(g))
    assert a2 == pytest.approx(sig.n / sig.p**2 * (off**2).sum(), rel=1e-9)


def test_moment_eigenvalue_duality(even5):
    sig = cs.sample_codewords(even5, 12, MODE_DISTINCT, seed=23)
    gi = cs.center_scale(cs.gram(sig), sig.n, sig.p)
    eigs = cs.eig_hermitian(gi)
    power = np.eye(sig.p)
    for ell in range(1, 7):
        power = power @ gi
        direct = np.trace(power) / sig.p
        from_eigs = dict(cs.trace_moments(eigs, 6))[ell]
        assert from_eigs == pytest.approx(direct, rel=1e-8, abs=1e-12)


def test_full_code_spectrum_deterministic(even5):
    # p = N uses every codeword, so the spectrum ignores the seed
    a = cs.sample_codewords(even5, 16, MODE_DISTINCT, seed=1)
    b = cs.sample_codewords(even5, 16, MODE_DISTINCT, seed=999)
    ea = cs.eig_hermitian(cs.gram(a))
    eb = cs.eig_hermitian(cs.gram(b))
    assert ea == pytest.approx(eb, abs=1e-9)
    assert np.trace(cs.gram(a)) == 16.0


def test_full_code_gram_row_sums_exact(even5):
    sig = cs.sample_codewords(even5, 16, MODE_DISTINCT, seed=4)
    scaled = cs.gram(sig) * even5.n  # integer-valued inner products
    assert (scaled.sum(axis=1) == 0).all()


def test_summarize_metadata(gold5):
    sig = cs.sample_codewords(gold5, 8, MODE_DISTINCT, seed=6)
    summary = cs.summarize(sig, LawSpec("sc"), centered=True, ell_max=4)
    assert summary.metadata["n"] == 31
    assert summary.metadata["p"] == 8
    assert summary.metadata["mode"] == MODE_DISTINCT
    assert len(summary.eigenvalues) == 8
    assert summary.ks_to_law > 0
    d = summary.as_dict()
    assert d["law"]["kind"] == "sc"
