import numpy as np
import pytest

import rbd


def test_decompose_low_rank():
    rng = np.random.default_rng(7)
    x = rng.normal(size=(40, 6)) @ rng.normal(size=(6, 30))
    model = rbd.decompose(x, d_max=30, eps_r=1e-10)
    assert model.d == 6
    assert np.max(np.abs(x - model.Y @ model.T)) < 1e-9
    gram = model.Y.T @ model.Y
    assert np.max(np.abs(gram - np.eye(model.d))) < 1e-10
    hist = model.residual_history
    assert all(b <= a + 1e-12 for a, b in zip(hist, hist[1:]))
    assert len(model.selected) == model.d


def test_project_reconstruct_roundtrip():
    rng = np.random.default_rng(8)
    x = rng.normal(size=(25, 10))
    model = rbd.decompose(x, d_max=10)
    v = x[:, 3]
    c = model.project(v)
    assert c.shape == (model.d,)
    assert np.linalg.norm(model.reconstruct(c) - v) < 1e-9
    assert np.allclose(model.compress(), model.Y @ model.T)


def test_diagonal_weight_changes_selection():
    rng = np.random.default_rng(9)
    x = rng.normal(size=(30, 12))
    plain = rbd.decompose(x, d_max=4)
    diag = np.ones(30)
    diag[0] = 1e4
    weighted = rbd.decompose(x, d_max=4, diag=diag)
    assert plain.d == weighted.d == 4
    assert not np.allclose(plain.Y, weighted.Y)


def test_model_file_roundtrip(tmp_path):
    rng = np.random.default_rng(10)
    x = rng.normal(size=(20, 15))
    model = rbd.decompose(x, d_max=5, eps_r=1e-8)
    path = tmp_path / "m.rbd"
    model.save(path, eps_r=1e-8)
    back, eps_r = rbd.load(path)
    assert eps_r == 1e-8
    assert np.array_equal(back.Y, model.Y)
    assert np.array_equal(back.T, model.T)


def test_truncated_svd_agrees_with_numpy():
    rng = np.random.default_rng(11)
    x = rng.normal(size=(18, 12))
    u, s, v = rbd.truncated_svd(x, 5)
    s_np = np.linalg.svd(x, compute_uv=False)
    assert np.allclose(s, s_np[:5], rtol=1e-10, atol=1e-12)
    assert np.max(np.abs(u.T @ u - np.eye(5))) < 1e-10
    assert np.max(np.abs(v.T @ v - np.eye(5))) < 1e-10


def test_error_histories():
    x = rbd.gen_grid_matrix("composite", n_points=61)
    model = rbd.decompose(x, d_max=8)
    e_r = rbd.rbd_error_history(x, model)
    e_s = rbd.svd_error_history(x, 8)
    assert len(e_r) == len(e_s) == 8
    for er, es in zip(e_r, e_s):
        assert es <= er * (1 + 1e-10) + 1e-12


def test_classifier_on_blobs():
    samples, labels = rbd.gen_labeled_blobs(4, 10, 30, 0.01, seed=3)
    names = [str(l) for l in labels]
    clf = rbd.fit(samples, names, d_max=8)
    assert clf.evaluate(samples, names) == 0.0
    assert clf.predict(samples[:, 0]) == names[0]


def test_errors_are_typed():
    with pytest.raises(rbd.RbdError):
        rbd.decompose(np.zeros((4, 3)), d_max=2)
    with pytest.raises(rbd.RbdError):
        rbd.gen_grid_matrix("nope")
