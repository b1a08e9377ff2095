import math

import numpy as np
import pytest

import circgwt as cg


def test_graph_construction():
    g = cg.make_circulant(16, [(1, 1.0), (2, 0.5)])
    assert g.n == 16
    assert g.degree == pytest.approx(3.0)
    assert g.connected
    assert not g.bipartite()
    a = cg.adjacency(g)
    assert a.shape == (16, 16)
    assert np.allclose(a, a.T)
    lap = cg.laplacian(g)
    assert np.allclose(lap.sum(axis=1), 0.0)


def test_round_trip():
    g = cg.make_circulant(16, [(1, 1.0)])
    fb = cg.make_bank(g, "hgswt", k=2)
    sp = cg.default_pattern(16)
    rep = cg.check_invertibility(fb, sp)
    assert rep["invertible"]
    x = np.random.default_rng(7).normal(size=16) + 0j
    w = cg.analyze(fb, sp, x)
    back = cg.invert(fb, sp, w)
    assert np.abs(back - x).max() < 1e-8


def test_complementary_fir_synthesis():
    g = cg.make_circulant(16, [(1, 1.0)])
    fb = cg.make_bank(g, "hcgswt", k=1)
    assert fb.has_fir_synthesis
    sp = cg.default_pattern(16)
    x = np.random.default_rng(11).normal(size=16) + 0j
    back = cg.synthesize(fb, sp, cg.analyze(fb, sp, x))
    assert np.abs(back - x).max() < 1e-8


def test_espline_annihilation():
    n = 32
    g = cg.make_circulant(n, [(1, 1.0)])
    alpha = 2 * math.pi / n
    fb = cg.make_bank(g, "hgeswt", k=1, alphas=[("trig", alpha)])
    sp = cg.default_pattern(n)
    x = np.exp(1j * alpha * np.arange(n))
    w = cg.analyze(fb, sp, x)
    hp = np.asarray(sp) == False  # noqa: E712
    assert np.abs(w[hp]).max() < 1e-9


def test_infeasible_factorization_raises():
    g = cg.make_circulant(16, [(1, 1.0)])
    with pytest.raises(cg.InfeasibleFactorizationError):
        cg.make_bank(g, "hcgeswt", k=1, alphas=[("trig", math.pi / 2)])


def test_decompose_and_nla():
    n = 64
    g = cg.make_circulant(n, [(1, 1.0), (2, 1.0)])
    x = np.random.default_rng(3).normal(size=n) + 0j
    d = cg.decompose(g, x, family="hgswt", k=1, levels=2)
    assert d.levels == 2
    assert len(d.coeffs) == n
    curve = cg.nla_curve(d, [0, 16, 64])
    assert curve[0][1] == pytest.approx(0.0, abs=1e-6)
    assert curve[-1][1] >= 150.0


def test_products():
    g1 = cg.make_circulant(4, [(1, 1.0)])
    g2 = cg.make_circulant(6, [(1, 1.0)])
    pg = cg.make_product("cartesian", g1, g2)
    assert pg.nodes() == 24
    a = cg.product_adjacency(pg)
    spec = np.sort(cg.product_spectrum(pg))
    assert np.allclose(spec, np.sort(np.linalg.eigvalsh(a)))
    circ, perm = cg.lexicographic_circulant(g1, g2)
    assert circ.n == 24
    assert sorted(perm) == list(range(24))


def test_approximation():
    g = cg.make_circulant(12, [(1, 1.0), (3, 0.5)])
    a = cg.adjacency(g)
    approx, perm = cg.nearest_circulant(a, relabel="identity")
    assert approx.n == 12
    assert {gen.s: gen.w for gen in approx.gens} == {1: 1.0, 3: 0.5}
    row1, row2, residual = cg.nearest_kron_circulant(
        np.kron(cg.adjacency(cg.make_circulant(3, [(1, 1.0)])), a), 3, 12
    )
    assert residual < 1e-9
