import json
import random

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import nonzero_pool, pool_values, random_invertible
from sbrep import catalog
from sbrep.arith import LaurentPoly, T, as_gaussian
from sbrep.catalog import (
    FAMILIES,
    Representation,
    build,
    burau,
    custom,
    f_rep,
    homog_mu,
    homog_rho,
    normalize_homog,
    phi_extension,
    sb2_classify,
    sb2_family,
    sb3_ext_dim2,
    sb3_ext_dim3,
    standard,
    tuba_wenzl_dim2,
    tuba_wenzl_dim3,
    wada,
)
from sbrep.errors import (
    BadStrandCount,
    ConstraintViolation,
    FormulaInconsistent,
    NotCommuting,
    NotInvertible,
    RelationViolation,
    SingularTau,
    ZeroC,
    ZeroEigenvalue,
    ZeroExponent,
)
from sbrep.irreducibility import burnside_verdict
from sbrep.linalg import Matrix, block_embed, mat_inverse, span_closure
from sbrep.presentations import presentation, sigma, tau, verify_rep

g = as_gaussian


def images_of(rep, kind):
    return [rep.images[(sigma if kind == "s" else tau)(i)] for i in range(1, rep.n)]


def passes(rep):
    return verify_rep(rep.images, presentation(rep.group, rep.n)) == []


class TestBraidFamilies:
    def test_burau2(self):
        assert burau(2).images[sigma(1)] == Matrix([[1 - T, T], [1, 0]])

    def test_burau_far_commutation(self):
        s = burau(4).images
        assert s[sigma(1)] @ s[sigma(3)] == s[sigma(3)] @ s[sigma(1)]

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_wada_one_is_burau(self, n):
        assert wada(n, 1).images == burau(n).images

    def test_wada_negative(self):
        assert wada(2, -1).images[sigma(1)] == Matrix([[1 - T ** -1, T ** -1], [1, 0]])

    def test_wada_zero(self):
        with pytest.raises(ZeroExponent):
            wada(3, 0)

    def test_standard(self):
        s1 = standard(2).images[sigma(1)]
        assert s1 @ s1 == Matrix.identity(2, "laurent").scale(T)
        for M in images_of(standard(4), "s"):
            assert M.det() == -T

    def test_f_rep(self):
        F = Matrix([[1, 1, 0], [0, -T, 0], [0, T, 1]])
        assert f_rep(2).images[sigma(1)] == F
        rep = f_rep(3)
        assert rep.dim == 4 and passes(rep)
        assert all(M.det() == -T for M in images_of(rep, "s"))

    @pytest.mark.parametrize("ctor", [burau, standard, f_rep, lambda n: wada(n, 2)])
    def test_full_relation_check(self, ctor):
        for n in (2, 3, 4):
            assert passes(ctor(n))

    def test_bad_n(self):
        with pytest.raises(BadStrandCount):
            burau(1)


class TestPhi:
    def test_reproduces_sigma(self):
        rep = phi_extension(burau(3), 1, 0, 0)
        assert images_of(rep, "t") == images_of(rep, "s")

    def test_inverse(self):
        rep = phi_extension(burau(3), 0, 1, 0)
        assert images_of(rep, "t") == [mat_inverse(M) for M in images_of(rep, "s")]

    def test_burau3_at_two(self):
        rep = phi_extension(burau(3), 1, 1, 1)
        assert passes(rep)
        assert burnside_verdict(rep, at=2).status == burnside_verdict(burau(3), at=2).status

    def test_singular_tau(self):
        with pytest.raises(SingularTau) as info:
            phi_extension(standard(2), 0, 0, 0)
        assert info.value.index == 1


class TestSB2:
    def test_rho4(self):
        rep = sb2_family("rho4", {"w": 1, "z": 2, "a": 3, "d": 4})
        assert rep.images[sigma(1)] == Matrix.diag([1, 2])
        assert rep.images[tau(1)] == Matrix.diag([3, 4])

    def test_rho3(self):
        rep = sb2_family("rho3", {"w": 2, "a": 0, "b": 1, "c": 1, "d": 0})
        assert rep.images[sigma(1)] == Matrix.diag([2, 2])
        assert rep.images[tau(1)] == Matrix([[0, 1], [1, 0]])

    def test_rho1_derived_entry(self):
        rep = sb2_family("rho1", {"w": 1, "x": 1, "y": 0, "z": 1, "a": 1, "b": 2})
        S, Tm = rep.images[sigma(1)], rep.images[tau(1)]
        assert Tm == Matrix([[1, 2], [0, 1]])
        assert S @ Tm == Tm @ S

    @pytest.mark.parametrize("tag, params, needle", [
        ("rho1", {"w": 1, "x": 0, "y": 0, "z": 1, "a": 1, "b": 2}, "x != 0"),
        ("rho1", {"w": 1, "x": 1, "y": 1, "z": 1, "a": 1, "b": 2}, "wz != xy"),
        ("rho2", {"w": 1, "y": 1, "z": 1, "a": 0, "c": 1}, "a != 0"),
        ("rho3", {"w": 2, "a": 1, "b": 1, "c": 1, "d": 1}, "ad != bc"),
        ("rho4", {"w": 1, "z": 0, "a": 1, "d": 1}, "z != 0"),
    ])
    def test_constraints_named(self, tag, params, needle):
        with pytest.raises(ConstraintViolation) as info:
            sb2_family(tag, params)
        assert needle in str(info.value)

    def test_classify_examples(self):
        assert sb2_classify(Matrix.diag([1, 2]), Matrix.diag([3, 4])).family == "rho4"
        assert sb2_classify(Matrix.diag([2, 2]), Matrix([[0, 1], [1, 0]])).family == "rho3"
        res = sb2_classify(Matrix([[1, 1], [0, 1]]), Matrix([[1, 2], [0, 1]]))
        assert res.family == "rho1"
        assert res.params == {k: g(v) for k, v in
                              {"w": 1, "x": 1, "y": 0, "z": 1, "a": 1, "b": 2}.items()}

    def test_classify_errors(self):
        with pytest.raises(NotCommuting):
            sb2_classify(Matrix([[1, 1], [0, 1]]), Matrix([[1, 0], [1, 1]]))
        with pytest.raises(NotInvertible):
            sb2_classify(Matrix([[1, 1], [1, 1]]), Matrix.identity(2))


sb2_params = {
    "rho1": ("w", "x", "y", "z", "a", "b"),
    "rho2": ("w", "y", "z", "a", "c"),
    "rho3": ("w", "a", "b", "c", "d"),
    "rho4": ("w", "z", "a", "d"),
}


@st.composite
def sb2_reps(draw):
    tag = draw(st.sampled_from(sorted(sb2_params)))
    params = {k: draw(pool_values) for k in sb2_params[tag]}
    try:
        return sb2_family(tag, params)
    except ConstraintViolation:
        assume(False)


@given(sb2_reps(), st.integers(0, 10_000))
def test_classify_round_trip(rep, seed):
    P = random_invertible(random.Random(seed), 2)
    S, Tm = (rep.images[x].conjugate_by(P) for x in (sigma(1), tau(1)))
    res = sb2_classify(S, Tm)
    tmpl = res.template()
    Q = res.conjugator
    assert tmpl.images[sigma(1)].conjugate_by(Q) == S
    assert tmpl.images[tau(1)].conjugate_by(Q) == Tm
    if P.is_identity():
        assert res.family == rep.family.removeprefix("sb2_")


@given(sb2_reps())
def test_classify_recovers_family(rep):
    res = sb2_classify(rep.images[sigma(1)], rep.images[tau(1)])
    tmpl = res.template()
    assert tmpl.images == rep.images


class TestTubaWenzl:
    def test_dim2(self):
        rep = tuba_wenzl_dim2(1, -1)
        assert rep.images[sigma(1)] == Matrix([[1, 1], [0, -1]])
        assert rep.images[sigma(2)] == Matrix([[-1, 0], [1, 1]])
        assert not rep.notes

    def test_dim2_flags(self):
        assert not tuba_wenzl_dim2(1, 1).notes
        assert span_closure(tuba_wenzl_dim2(1, 1).matrices()) == 4
        assert not tuba_wenzl_dim2(1, "i").notes

    def test_dim2_zero(self):
        with pytest.raises(ZeroEigenvalue):
            tuba_wenzl_dim2(0, 1)

    def test_dim3(self):
        rep = tuba_wenzl_dim3(1, 1, 1)
        assert rep.images[sigma(1)] == Matrix([[1, 2, 1], [0, 1, 1], [0, 0, 1]])
        assert passes(rep)

    @pytest.mark.parametrize("lams", [(1, -1, 1), (1, 1, -1)])
    def test_dim3_flag(self, lams):
        rep = tuba_wenzl_dim3(*lams)
        assert any(n.startswith("advisory") for n in rep.notes)
        assert passes(rep)


class TestSB3Dim2:
    @pytest.mark.parametrize("l1, l2", [(1, -1), (2, 3), ("i", 1), ("1+i", "-1/2")])
    def test_identity_extension(self, l1, l2):
        rep = sb3_ext_dim2(l1, l2, l1, l1)
        assert images_of(rep, "t") == images_of(rep, "s")

    def test_example(self):
        rep = sb3_ext_dim2(1, -1, 1, 1)
        assert rep.images[tau(1)] == Matrix([[1, 1], [0, -1]])
        assert rep.images[tau(2)] == Matrix([[-1, 0], [1, 1]])
        assert passes(rep) and len(rep.presentation().relations) == 5

    def test_scalar_tau(self):
        rep = sb3_ext_dim2(1, -1, 2, 0)
        assert images_of(rep, "t") == [Matrix.diag([2, 2])] * 2

    def test_constraints(self):
        with pytest.raises(ConstraintViolation):
            sb3_ext_dim2(1, -1, 0, 1)
        # d1 = a1 - b1 (l1 - l2) / l1 = 1 - 1/2 * 2 = 0
        with pytest.raises(ConstraintViolation, match="d1"):
            sb3_ext_dim2(1, -1, 1, "1/2")


class TestSB3Dim3:
    @pytest.mark.parametrize("lam", [1, 2, "i", "-1/2"])
    def test_identity_extension(self, lam):
        rep = sb3_ext_dim3(lam, lam, lam, lam, lam, lam)
        assert images_of(rep, "t") == images_of(rep, "s")

    def test_trivial_taus(self):
        rep = sb3_ext_dim3(1, 1, 1, 0, 1, 0)
        assert images_of(rep, "t") == [Matrix.identity(3)] * 2
        assert not rep.notes

    def test_rejects_opposite_eigenvalues(self):
        with pytest.raises(ConstraintViolation, match="λ_2 ≠ −λ_3"):
            sb3_ext_dim3(1, -1, 1, 1, 1, 1)

    def test_fallback_solver_names_coefficient(self, monkeypatch):
        original = catalog._published_tau_entries

        def corrupted(*args):
            entries = dict(original(*args))
            entries["b1"] = entries["b1"] + 1
            return entries

        monkeypatch.setattr(catalog, "_published_tau_entries", corrupted)
        rep = sb3_ext_dim3(1, 2, 3, 1, 2, 1)
        assert passes(rep)
        assert any("b1 (published" in n for n in rep.notes)
        with pytest.raises(FormulaInconsistent) as info:
            sb3_ext_dim3(1, 2, 3, 1, 2, 1, strict=True)
        assert set(info.value.deviations) == {"b1"}
        assert passes(info.value.solved)


class TestHomogeneous:
    def test_mu3_standard_shape(self):
        rep = homog_mu("mu3", {"b": 2, "c": 1}, 3)
        assert rep.images[sigma(1)] == block_embed(Matrix([[0, 2], [1, 0]]), 1, 3)

    def test_mu1_burau_shape(self):
        a = g(1) - g(2)
        rep = homog_mu("mu1", {"a": a, "c": 1}, 3)
        assert rep.images[sigma(2)] == block_embed(Matrix([[a, 1 - a], [1, 0]]), 2, 3)

    def test_mu2_swap(self):
        rep = homog_mu("mu2", {"c": 1, "d": 0}, 3)
        assert rep.images[sigma(1)] == block_embed(Matrix([[0, 1], [1, 0]]), 1, 3)
        assert passes(rep)

    def test_rho3_swap_blocks(self):
        rep = homog_rho("rho3", {"b": 1, "c": 1, "x": 0, "y": 1}, 3)
        swap = block_embed(Matrix([[0, 1], [1, 0]]), 1, 3)
        assert rep.images[sigma(1)] == swap and rep.images[tau(1)] == swap
        assert passes(rep) and len(rep.presentation().relations) == 5

    def test_trivial_taus(self):
        r1 = homog_rho("rho1", {"a": 2, "c": 3, "t": 1}, 4)
        r2 = homog_rho("rho2", {"c": 3, "d": 2, "x": 1}, 4)
        for rep in (r1, r2):
            assert images_of(rep, "t") == [Matrix.identity(4)] * 3

    def test_singular_sigma_block_is_hard_error(self):
        with pytest.raises(ConstraintViolation, match="a != 1"):
            homog_rho("rho1", {"a": 1, "c": 1, "t": 2}, 3)
        with pytest.raises(ConstraintViolation, match="d != 1"):
            homog_rho("rho2", {"c": 1, "d": 1, "x": 2}, 3)

    def test_singular_tau_block(self):
        with pytest.raises(SingularTau):
            homog_rho("rho3", {"b": 2, "c": 1, "x": 0, "y": 0}, 3)

    def test_normalize_rho1(self):
        for a in (2, "i", "-1/2"):
            a = g(a)
            rep = normalize_homog(homog_rho("rho1", {"a": a, "c": 2, "t": 3}, 3))
            assert rep.images[sigma(1)] == block_embed(Matrix([[a, 1 - a], [1, 0]]), 1, 3)

    def test_normalize_rho3(self):
        rep = normalize_homog(homog_rho("rho3", {"b": 2, "c": 3, "x": 5, "y": 7}, 4))
        assert rep.images[sigma(2)] == block_embed(Matrix([[0, 6], [1, 0]]), 2, 4)
        assert rep.images[tau(2)] == block_embed(Matrix([[5, 21], ["7/2", 5]]), 2, 4)

    def test_normalize_rho2_puts_fixed_line_on_ones(self):
        d, x = g("1/3"), g(2)
        rep = normalize_homog(homog_rho("rho2", {"c": 5, "d": d, "x": x}, 4))
        assert rep.images[sigma(1)] == block_embed(Matrix([[0, 1], [1 - d, d]]), 1, 4)
        assert rep.images[tau(3)] == block_embed(
            Matrix([[x, 1 - x], [(1 - d) * (1 - x), 1 - (1 - d) * (1 - x)]]), 3, 4)

    def test_normalize_c_one_is_identity(self):
        rep = homog_rho("rho3", {"b": 2, "c": 1, "x": 1, "y": 1}, 3)
        assert normalize_homog(rep).images == rep.images

    def test_normalize_zero_c(self):
        rep = homog_rho("rho3", {"b": 2, "c": 1, "x": 1, "y": 1}, 3)
        bad = Representation(rep.family, rep.n, rep.group, rep.images,
                             {**rep.params, "c": g(0)})
        with pytest.raises(ZeroC):
            normalize_homog(bad)


homog_cases = st.one_of(
    st.tuples(st.just("mu1"), st.fixed_dictionaries({"a": pool_values, "c": nonzero_pool})),
    st.tuples(st.just("mu3"), st.fixed_dictionaries({"b": nonzero_pool, "c": nonzero_pool})),
    st.tuples(st.just("rho1"), st.fixed_dictionaries(
        {"a": nonzero_pool, "c": nonzero_pool, "t": pool_values})),
    st.tuples(st.just("rho2"), st.fixed_dictionaries(
        {"c": nonzero_pool, "d": nonzero_pool, "x": pool_values})),
    st.tuples(st.just("rho3"), st.fixed_dictionaries(
        {"b": nonzero_pool, "c": nonzero_pool, "x": pool_values, "y": pool_values})),
)


def _homog(tag, params, n):
    ctor = homog_mu if tag.startswith("mu") else homog_rho
    try:
        return ctor(tag, params, n)
    except ConstraintViolation:
        assume(False)


@given(homog_cases, st.integers(3, 5))
def test_homogeneity_and_normalization(case, n):
    rep = _homog(*case, n)
    for kind in ("s", "t") if rep.group == "sbn" else ("s",):
        mats = images_of(rep, kind)
        blocks = [tuple(M[i - 1 + r, i - 1 + c] for r in range(2) for c in range(2))
                  for i, M in enumerate(mats, start=1)]
        assert len(set(blocks)) == 1
    norm = normalize_homog(rep)
    assert passes(norm)
    assert span_closure(norm.matrices()) == span_closure(rep.matrices())


@given(homog_cases)
def test_windowed_validation_matches_full_check(case):
    rep = _homog(*case, 6)
    assert passes(rep)


def test_windowed_validation_rejects_non_braid_block():
    block = Matrix([[1, 1], [0, 2]])
    with pytest.raises(RelationViolation):
        catalog._bn_local("custom", 5, block, {})
    images = {sigma(i): block_embed(block, i, 5) for i in range(1, 5)}
    assert verify_rep(images, presentation("bn", 5))


class TestRepresentation:
    def test_json_round_trip(self):
        for rep in (burau(3), sb3_ext_dim2(1, -1, 1, 1),
                    homog_rho("rho3", {"b": 2, "c": 1, "x": 1, "y": 1}, 3)):
            back = Representation.from_json(json.loads(json.dumps(rep.to_json())))
            assert back.images == rep.images and back.family == rep.family
            assert back.n == rep.n and back.group == rep.group

    def test_evaluate(self):
        rep = burau(3).evaluate(2)
        assert rep.images[sigma(1)] == block_embed(Matrix([[-1, 2], [1, 0]]), 1, 3)

    def test_custom_rejects_bad_images(self):
        J = Matrix([[1, 1], [0, 1]])
        images = {sigma(1): block_embed(J, 1, 3), sigma(2): Matrix.identity(3)}
        with pytest.raises(RelationViolation):
            custom(images, "bn", 3)

    def test_conjugate_keeps_relations(self):
        P = Matrix([[1, 2], [0, 1]])
        assert passes(sb3_ext_dim2(1, -1, 1, 1).conjugate(P))

    def test_dims_follow_family_law(self):
        assert burau(4).dim == 4 and f_rep(4).dim == 5
        assert tuba_wenzl_dim3(1, 2, 3).dim == 3
        assert homog_mu("mu3", {"b": 2, "c": 1}, 5).dim == 5


REGISTRY_SAMPLES = {
    "burau": {}, "wada": {"k": 2}, "standard": {}, "f_rep": {},
    "phi": {"a": 1, "b": 1, "c": 1},
    "sb2_rho1": {"w": 1, "x": 1, "y": 0, "z": 1, "a": 1, "b": 2},
    "sb2_rho2": {"w": 1, "y": 1, "z": 2, "a": 1, "c": 1},
    "sb2_rho3": {"w": 2, "a": 0, "b": 1, "c": 1, "d": 0},
    "sb2_rho4": {"w": 1, "z": 2, "a": 3, "d": 4},
    "tw2": {"l1": 1, "l2": -1}, "sb3_ext2": {"l1": 1, "l2": -1, "a1": 1, "b1": 1},
    "tw3": {"l1": 1, "l2": 2, "l3": 3},
    "sb3_ext3": {"l1": 1, "l2": 2, "l3": 3, "c1": 1, "e1": 2, "f1": 1},
    "mu1": {"a": 2, "c": 1}, "mu2": {"c": 1, "d": 0}, "mu3": {"b": 2, "c": 1},
    "local_rho1": {"a": 2, "c": 1, "t": 3}, "local_rho2": {"c": 1, "d": 2, "x": 3},
    "local_rho3": {"b": 2, "c": 1, "x": 1, "y": 1},
}


def test_registry_covers_every_family():
    assert set(REGISTRY_SAMPLES) == set(FAMILIES)


@pytest.mark.parametrize("family", sorted(REGISTRY_SAMPLES))
def test_registry_builds(family):
    n = FAMILIES[family].fixed_n or 3
    rep = build(family, n, REGISTRY_SAMPLES[family])
    assert passes(rep) and rep.n == n
    assert rep.group == FAMILIES[family].group
