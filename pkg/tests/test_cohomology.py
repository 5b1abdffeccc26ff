"""Cochains, the bar differential, cocycle/coboundary decisions, cup
products, and the obstruction 2-cocycle gamma."""

import json

import numpy as np
import pytest

from zcenter.cohomology import (Cochain, CocycleError, coboundary, cochain_from_json,
                                cochain_to_json, cup3, embed_modulus, gamma,
                                is_coboundary, is_cocycle, load_cocycle,
                                _delta_dense)
from zcenter.group_core import (direct_product, make_cyclic, make_symmetric,
                                centralizer, subgroup)

from conftest import (bilinear_cochain, pullback, random_cochain,
                      shifted, sign_cocycle)


# -- cochain mechanics -------------------------------------------------

def test_constructor_validation(C4):
    with pytest.raises(ValueError, match="degree"):
        Cochain(C4, 4, 2)
    with pytest.raises(ValueError, match="modulus"):
        Cochain(C4, 2, 0)
    with pytest.raises(ValueError, match="arity"):
        Cochain(C4, 2, 3, values={(1, 2, 3): 1})
    with pytest.raises(ValueError, match="out of range"):
        Cochain(C4, 2, 3, values={(1, 9): 1})
    with pytest.raises(ValueError, match="shape"):
        Cochain(C4, 2, 3, dense=np.zeros((4, 4, 4)))


def test_normalization_enforced(C4):
    with pytest.raises(ValueError, match="not normalized"):
        Cochain(C4, 2, 5, values={(0, 1): 2})
    with pytest.raises(ValueError, match="not normalized"):
        Cochain(C4, 3, 5, values={(1, 0, 1): 2})
    # nonzero only off the identity is fine
    f = Cochain(C4, 2, 5, values={(1, 1): 2, (3, 2): 4})
    assert f(1, 1) == 2 and f(3, 2) == 4 and f(1, 2) == 0


def test_values_dense_round_trip(C4):
    f = Cochain(C4, 2, 7, values={(1, 2): 3, (2, 1): 6})
    assert f.values == {(1, 2): 3, (2, 1): 6}
    g = Cochain(C4, 2, 7, dense=f.dense.copy())
    assert f == g
    assert not f.is_zero()
    assert Cochain.zero(C4, 2, 7).is_zero()


def test_arithmetic(C4):
    rng = np.random.default_rng(3)
    f = random_cochain(C4, 2, 6, rng)
    g = random_cochain(C4, 2, 6, rng)
    s = f + g
    assert np.array_equal(s.dense, (f.dense + g.dense) % 6)
    assert (s - g) == f
    with pytest.raises(ValueError):
        f + random_cochain(C4, 3, 6, rng)
    with pytest.raises(ValueError):
        f + random_cochain(C4, 2, 5, rng)


def test_degree_zero_and_call(C4):
    c = Cochain(C4, 0, 5, values={(): 3})
    assert c() == 3
    f = Cochain(C4, 2, 5, values={(1, 1): 2})
    with pytest.raises(ValueError):
        f(1)


def test_size_bounds():
    G130 = make_cyclic(130)
    with pytest.raises(ValueError, match="degree-3"):
        Cochain(G130, 3, 2)
    Cochain(G130, 2, 2)  # fine
    G520 = make_cyclic(520)
    with pytest.raises(ValueError, match="degree-2"):
        Cochain(G520, 2, 2)


def test_restrict(S3):
    rng = np.random.default_rng(5)
    w = random_cochain(S3, 3, 4, rng)
    orders = S3.element_orders()
    t = int(np.nonzero(orders == 2)[0][0])
    H, embed = subgroup(S3, centralizer(S3, [t]))
    r = w.restrict(H, embed)
    assert r.group is H and r.modulus == 4 and r.degree == 3
    for a in range(H.order):
        for b in range(H.order):
            for c in range(H.order):
                assert r(a, b, c) == w(int(embed[a]), int(embed[b]),
                                       int(embed[c]))


# -- the differential --------------------------------------------------

def test_delta_known_values(C4):
    # delta f (g, h) = f(h) - f(gh) + f(g)
    f = Cochain(C4, 1, 8, values={1: 1, 2: 2, 3: 3})
    df = coboundary(f)
    for g in range(4):
        for h in range(4):
            assert df(g, h) == (f(h) - f((g + h) % 4) + f(g)) % 8
    # the classic extension cocycle of Z/8 over Z/4: carry of addition
    carry = Cochain(C4, 2, 8, dense=np.add.outer(range(4), range(4)) // 4)
    assert is_cocycle(carry).is_cocycle


def test_delta_squared_zero_small():
    rng = np.random.default_rng(11)
    groups = [make_cyclic(4), make_symmetric(3),
              direct_product(make_cyclic(2), make_cyclic(2))]
    for G in groups:
        for N in (2, 6):
            for _ in range(10):
                f0 = random_cochain(G, 0, N, rng)
                assert coboundary(coboundary(f0)).is_zero()
                f1 = random_cochain(G, 1, N, rng)
                assert coboundary(coboundary(f1)).is_zero()
                f2 = random_cochain(G, 2, N, rng)
                assert is_cocycle(coboundary(f2)).is_cocycle


def test_coboundary_degree_limit(C4):
    w = Cochain.zero(C4, 3, 2)
    with pytest.raises(ValueError):
        coboundary(w)


# -- is_cocycle --------------------------------------------------------

def test_zero_is_cocycle(C4):
    for k in (1, 2, 3):
        assert is_cocycle(Cochain.zero(C4, k, 3)).is_cocycle


def test_cup_products_are_cocycles(C2cubed, C3cubed, C2xC4):
    assert is_cocycle(cup3(C2cubed, 0, 1, 2, 2)).is_cocycle
    assert is_cocycle(cup3(C3cubed, 0, 1, 2, 3)).is_cocycle
    assert is_cocycle(cup3(C2xC4, 0, 1, 1, 4)).is_cocycle
    assert is_cocycle(cup3(C2xC4, 1, 1, 1, 8)).is_cocycle


def test_bilinear_cochains_are_cocycles(C2xC4, C3cubed):
    rng = np.random.default_rng(17)
    for G, N in ((C2xC4, 4), (C2xC4, 8), (C3cubed, 3)):
        k = len(G.cyclic_factors)
        for _ in range(5):
            coeffs = {(i, j): int(rng.integers(0, N))
                      for i in range(k) for j in range(k)}
            assert is_cocycle(bilinear_cochain(G, coeffs, N)).is_cocycle


def test_constant_off_identity_on_c2_is_a_cocycle(C2):
    # the extension cocycle of Z/4 over Z/2; delta f vanishes identically
    f = Cochain(C2, 2, 2, values={(1, 1): 1})
    v = is_cocycle(f)
    assert v.is_cocycle and v.failure_certificate is None


def test_non_cocycle_certificates(C4, S3):
    f = Cochain(C4, 2, 5, values={(1, 2): 1})
    v = is_cocycle(f)
    assert not v.is_cocycle
    g, h, k = v.failure_certificate
    lhs = (f(h, k) - f((g + h) % 4, k) + f(g, (h + k) % 4) - f(g, h)) % 5
    assert lhs != 0

    w = Cochain(S3, 3, 3, values={(1, 1, 1): 1})
    v3 = is_cocycle(w)
    assert not v3.is_cocycle
    g, h, k, l = v3.failure_certificate
    T = S3.table
    val = (w(h, k, l) - w(T[g, h], k, l) + w(g, T[h, k], l)
           - w(g, h, T[k, l]) + w(g, h, k)) % 3
    assert val != 0


def test_cocycle_verdict_cached(C4):
    f = Cochain(C4, 2, 5, values={(1, 2): 1})
    assert is_cocycle(f) is is_cocycle(f)


def test_degree_zero_rejected(C4):
    with pytest.raises(ValueError):
        is_cocycle(Cochain.zero(C4, 0, 5))


# -- is_coboundary -----------------------------------------------------

def test_coboundaries_recognized_with_exact_witness():
    rng = np.random.default_rng(23)
    G = make_symmetric(3)
    for degree in (2, 3):
        for N in (2, 6):
            for _ in range(4):
                beta = random_cochain(G, degree - 1, N, rng)
                f = coboundary(beta)
                v = is_coboundary(f)
                assert v.is_cocycle and v.is_coboundary
                assert coboundary(v.witness) == f


def test_zero_shortcut(C4):
    v = is_coboundary(Cochain.zero(C4, 2, 6))
    assert v.is_coboundary and v.witness.is_zero()


def test_rejects_non_cocycle(C4):
    f = Cochain(C4, 2, 5, values={(1, 2): 1})
    with pytest.raises(CocycleError):
        is_coboundary(f)
    with pytest.raises(ValueError):
        is_coboundary(Cochain.zero(C4, 1, 5))


def test_cup_gamma_not_coboundary(C2cubed, C3cubed):
    for G, n in ((C2cubed, 2), (C3cubed, 3)):
        w = cup3(G, 0, 1, 2, n)
        z = G.order // n  # e1 = (1, 0, 0) in row-major indexing
        gam = gamma(w, z)
        assert not is_coboundary(gam).is_coboundary


def test_cup_omega_itself_not_coboundary(C2cubed):
    w = cup3(C2cubed, 0, 1, 2, 2)
    assert not is_coboundary(w).is_coboundary


def test_extension_cocycle_modulus_matters(C2):
    """Nontrivial mod 2, but a coboundary once mu_2 sits inside mu_4."""
    f = Cochain(C2, 2, 2, values={(1, 1): 1})
    assert not is_coboundary(f).is_coboundary
    lifted = embed_modulus(f, 4)
    v = is_coboundary(lifted)
    assert v.is_coboundary
    assert coboundary(v.witness) == lifted
    # the witness is forced to be a primitive 4th root at the generator
    assert v.witness(1) % 2 == 1


def test_alternation_is_shift_invariant(S3, C2xC4):
    """f(g,h) - f(h,g) on commuting pairs survives any coboundary shift.

    (On non-commuting pairs it picks up beta(hg) - beta(gh), so the
    assertion is restricted to gh = hg; on abelian groups that is the
    whole square.)"""
    rng = np.random.default_rng(29)
    for G in (S3, C2xC4):
        commuting = G.table == G.table.T
        for _ in range(5):
            f = random_cochain(G, 2, 6, rng)
            beta = random_cochain(G, 1, 6, rng)
            g = f + coboundary(beta)
            alt_f = (f.dense - f.dense.T) % 6
            alt_g = (g.dense - g.dense.T) % 6
            assert np.array_equal(alt_f[commuting], alt_g[commuting])


# -- cup3 --------------------------------------------------------------

def test_cup3_needs_product_group(S3):
    with pytest.raises(ValueError, match="cyclic factors"):
        cup3(S3, 0, 0, 0, 2)


def test_cup3_index_and_modulus_errors(C2xC4):
    with pytest.raises(ValueError, match="out of range"):
        cup3(C2xC4, 0, 2, 0, 4)
    with pytest.raises(ValueError, match="divisible"):
        cup3(C2xC4, 0, 1, 1, 2)  # factor order 4 does not divide 2


def test_cup3_values(C2cubed):
    w = cup3(C2cubed, 0, 1, 2, 2)
    # row-major: g = 4*g1 + 2*g2 + g3
    for g in range(8):
        for h in range(8):
            for k in range(8):
                assert w(g, h, k) == ((g >> 2) & 1) * ((h >> 1) & 1) * (k & 1)


def test_cup3_gcd_scaling(C2xC4):
    # factors (2, 4); mixing them cups in Z/2 and scales into Z/4
    w = cup3(C2xC4, 0, 1, 1, 4)
    for g in range(8):
        for h in range(8):
            for k in range(8):
                x, y, z = (g >> 2) & 1, h & 3, k & 3
                assert w(g, h, k) == 2 * ((x * y * z) % 2)


def test_cup3_repeated_index_cocycle(C3cubed):
    w = cup3(C3cubed, 1, 1, 1, 3)
    assert is_cocycle(w).is_cocycle
    assert not w.is_zero()


# -- gamma -------------------------------------------------------------

def _gamma_direct(omega, z):
    G = omega.group
    n = G.order
    out = np.zeros((n, n), dtype=np.int64)
    for g in range(n):
        for h in range(n):
            out[g, h] = (omega(g, h, z) - omega(g, z, h)
                         + omega(z, g, h)) % omega.modulus
    return out


def test_gamma_matches_definition(C2cubed, D4):
    rng = np.random.default_rng(31)
    w = shifted(cup3(C2cubed, 0, 1, 2, 2), rng)
    for z in range(8):
        gam = gamma(w, z)
        assert np.array_equal(gam.dense, _gamma_direct(w, z))
        assert gam.degree == 2 and gam.modulus == 2
    wd = shifted(sign_cocycle_on_d4(D4), rng)
    for z in (0, 2):  # center of D4: e and the rotation by pi
        gam = gamma(wd, z)
        assert np.array_equal(gam.dense, _gamma_direct(wd, z))


def sign_cocycle_on_d4(D4):
    """Pull the nontrivial C2 cocycle back along D4 -> D4/<r> = C2."""
    images = np.array([0, 0, 0, 0, 1, 1, 1, 1])  # b-coordinate
    return pullback(cup3(make_cyclic(2), 0, 0, 0, 2), D4, images)


def test_gamma_requires_central_element(S3, D4):
    w = Cochain.zero(S3, 3, 2)
    orders = S3.element_orders()
    t = int(np.nonzero(orders == 2)[0][0])
    with pytest.raises(ValueError, match="central"):
        gamma(w, t)
    wd = Cochain.zero(D4, 3, 2)
    with pytest.raises(ValueError, match="central"):
        gamma(wd, 1)  # the rotation r is not central


def test_gamma_requires_cocycle(C4):
    f = Cochain(C4, 3, 5, values={(1, 1, 1): 1})
    with pytest.raises(CocycleError):
        gamma(f, 0)
    with pytest.raises(ValueError):
        gamma(Cochain.zero(C4, 2, 5), 0)


def test_gamma_is_always_a_cocycle(C2cubed, C3cubed):
    rng = np.random.default_rng(37)
    for G, n in ((C2cubed, 2), (C3cubed, 3)):
        w = shifted(cup3(G, 0, 1, 2, n), rng)
        for z in rng.integers(0, G.order, 4):
            assert is_cocycle(gamma(w, int(z))).is_cocycle


def test_gamma_closed_form_at_e1(C2cubed, C3cubed):
    """At z = e1 the cup-product obstruction is the single term g2*h3."""
    for G, n in ((C2cubed, 2), (C3cubed, 3)):
        w = cup3(G, 0, 1, 2, n)
        z = n * n  # e1 = (1, 0, 0)
        gam = gamma(w, z)
        for g in range(G.order):
            for h in range(G.order):
                g2 = (g // n) % n
                h3 = h % n
                assert gam(g, h) == (g2 * h3) % n


def test_gamma_two_term_form_at_e1e3(C2cubed, C3cubed):
    """The two-term expression g2*h3 + g1*h2 appears at z = (1, 0, 1)."""
    for G, n in ((C2cubed, 2), (C3cubed, 3)):
        w = cup3(G, 0, 1, 2, n)
        z = n * n + 1  # (1, 0, 1)
        gam = gamma(w, z)
        for g in range(G.order):
            for h in range(G.order):
                g1, g2 = g // (n * n), (g // n) % n
                h2, h3 = (h // n) % n, h % n
                assert gam(g, h) == (g2 * h3 + g1 * h2) % n


def test_gamma_of_shifted_omega_is_cohomologous(C2cubed):
    rng = np.random.default_rng(41)
    w = cup3(C2cubed, 0, 1, 2, 2)
    for _ in range(5):
        w2 = shifted(w, rng)
        for z in (0, 4):
            a = gamma(w, z)
            b = gamma(w2, z)
            diff = a - b
            assert is_coboundary(diff).is_coboundary


# -- embed_modulus -----------------------------------------------------

def test_embed_modulus_validation(C4):
    f = Cochain.zero(C4, 2, 6)
    with pytest.raises(ValueError, match="multiple"):
        embed_modulus(f, 9)


def test_embed_modulus_preserves_structure(C2cubed):
    w = cup3(C2cubed, 0, 1, 2, 2)
    w4 = embed_modulus(w, 4)
    assert w4.modulus == 4
    assert np.array_equal(w4.dense, 2 * w.dense)
    assert is_cocycle(w4).is_cocycle


def test_coboundary_stays_coboundary_upward(S3):
    rng = np.random.default_rng(43)
    beta = random_cochain(S3, 1, 3, rng)
    f = coboundary(beta)
    for M in (6, 9, 12):
        assert is_coboundary(embed_modulus(f, M)).is_coboundary


# -- serialization -----------------------------------------------------

def test_json_round_trip(C2cubed):
    w = cup3(C2cubed, 0, 1, 2, 2)
    data = cochain_to_json(w)
    assert data["degree"] == 3 and data["modulus"] == 2
    w2, corr = cochain_from_json(C2cubed, data)
    assert corr is None
    assert w2 == w
    assert cochain_to_json(w2) == data


def test_json_normalizes_degree_two(C4):
    # constant 1 everywhere, identity slots included: a non-normalized cocycle
    entries = [[g, h, 1] for g in range(4) for h in range(4)]
    f, corr = cochain_from_json(
        C4, {"modulus": 5, "degree": 2, "entries": entries})
    assert corr is not None
    raw = np.ones((4, 4), dtype=np.int64)
    assert np.array_equal(
        f.dense, (raw - _delta_dense(C4.table, 1, corr, 5)) % 5)
    assert f.dense[0].sum() == 0 and f.dense[:, 0].sum() == 0
    assert is_cocycle(f).is_cocycle


def test_json_normalizes_degree_three(C2):
    # inflate: shift the doubled extension cocycle off normalization
    base = Cochain(C2, 3, 4, values={(1, 1, 1): 2})
    assert is_cocycle(base).is_cocycle
    phi = np.array([[1, 3], [2, 1]], dtype=np.int64)
    dense = (base.dense + _delta_dense(C2.table, 2, phi, 4)) % 4
    entries = [[g, h, k, int(dense[g, h, k])]
               for g in range(2) for h in range(2) for k in range(2)]
    f, corr = cochain_from_json(
        C2, {"modulus": 4, "degree": 3, "entries": entries})
    assert corr is not None
    assert np.array_equal(
        f.dense, (dense - _delta_dense(C2.table, 2, corr, 4)) % 4)
    # normalization keeps the class: difference from base is a coboundary
    assert is_coboundary(f - base).is_coboundary


def test_json_degree_one_unnormalizable(C4):
    with pytest.raises(ValueError, match="degree-1"):
        cochain_from_json(
            C4, {"modulus": 3, "degree": 1, "entries": [[0, 1]]})


def test_json_rejects_garbage(C4):
    with pytest.raises(ValueError, match="missing"):
        cochain_from_json(C4, {"modulus": 2, "degree": 2})
    with pytest.raises(ValueError, match="modulus"):
        cochain_from_json(C4, {"modulus": 0, "degree": 2, "entries": []})
    with pytest.raises(ValueError, match="degree"):
        cochain_from_json(C4, {"modulus": 2, "degree": 7, "entries": []})
    with pytest.raises(ValueError, match="arity"):
        cochain_from_json(
            C4, {"modulus": 2, "degree": 2, "entries": [[1, 1, 1, 1]]})
    with pytest.raises(ValueError, match="out of range"):
        cochain_from_json(
            C4, {"modulus": 2, "degree": 2, "entries": [[1, 7, 1]]})
    with pytest.raises(ValueError):
        cochain_from_json(C4, [1, 2, 3])


def test_json_unnormalizable_non_cocycle(C4):
    # identity-slot junk that no coboundary can remove
    entries = [[0, 1, 1]]
    with pytest.raises(CocycleError):
        cochain_from_json(C4, {"modulus": 3, "degree": 2, "entries": entries})


def test_load_cocycle_file(tmp_path, C2cubed):
    w = cup3(C2cubed, 0, 1, 2, 2)
    path = tmp_path / "w.json"
    path.write_text(json.dumps(cochain_to_json(w)))
    w2, corr = load_cocycle(C2cubed, str(path))
    assert w2 == w and corr is None
