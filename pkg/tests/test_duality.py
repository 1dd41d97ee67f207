"""
Tests for the functors B and M, phi and the homomorphism search
"""

import pytest

from mvduality.domain.duality import (
    EquivalenceSamples,
    PairMorphism,
    WMorphism,
    check_phi,
    equivalence_suite,
    functor_b_mor,
    functor_b_obj,
    functor_m_mor,
    functor_m_obj,
    homomorphisms,
    naturality_square,
    pair_roundtrip_check,
    phi,
    phi_inverse,
)
from mvduality.domain.exceptions import (
    MorphismConditionError,
    NotHomomorphismError,
    NotInSubalgebraError,
)
from mvduality.domain.pairs import FilterMap, MonotoneTuple, build_m
from mvduality.domain.schemas import Verdict
from mvduality.domain.wajsberg import WajsbergAlgebra


def generators(p: FilterMap) -> dict:
    return {d: p.generator(d) for d in p.divisors}


@pytest.mark.unit
class TestFunctorB:
    """Test <B(A), h_A> and the restriction of morphisms"""

    def test_chain(self, l3):
        """Test that h(1) is improper and h(2) trivial for L_3"""
        assert generators(functor_b_obj(l3, 2)) == {1: 0, 2: 0b1}

    def test_two_valued_chain(self, l2):
        assert generators(functor_b_obj(l2, 2)) == {1: 0b1, 2: 0b1}

    def test_product(self, l2xl3):
        """Test P_d against the factor lengths 2 and 1"""
        assert generators(functor_b_obj(l2xl3, 2)) == {1: 0b10, 2: 0b11}
        assert generators(functor_b_obj(l2xl3, 6)) == {1: 0b10, 2: 0b11, 3: 0b10, 6: 0b11}

    def test_memoized(self, l2xl3):
        assert functor_b_obj(l2xl3, 6) is functor_b_obj(l2xl3, 6)

    def test_inclusion(self, l2, l3):
        """Test the embedding L_2 -> L_3 on skeletons"""
        g = WMorphism(source=l2, target=l3, mapping=(0, 2))
        theta = functor_b_mor(g, 2)
        assert theta.atom_images == (0b1,)

    def test_projections(self, l2, l3, l2xl3):
        """Test both projections out of L_2 x L_3"""
        to_l2 = WMorphism(source=l2xl3, target=l2, mapping=tuple(x // 3 for x in range(6)))
        to_l3 = WMorphism(source=l2xl3, target=l3, mapping=tuple(x % 3 for x in range(6)))
        assert functor_b_mor(to_l2, 2).atom_images == (0, 0b1)
        assert functor_b_mor(to_l3, 2).atom_images == (0b1, 0)

    def test_identity(self, l2xl3):
        theta = functor_b_mor(WMorphism.identity(l2xl3), 6)
        assert theta == PairMorphism.identity(functor_b_obj(l2xl3, 6))


@pytest.mark.unit
class TestMorphisms:
    """Test morphism validation and composition"""

    def test_not_a_homomorphism(self, l2, l3):
        with pytest.raises(NotHomomorphismError):
            WMorphism(source=l3, target=l2, mapping=(0, 0, 1))

    def test_not_composable(self, l2, l3):
        with pytest.raises(NotHomomorphismError):
            WMorphism.identity(l3).compose(WMorphism.identity(l2))

    def test_filter_condition(self, l2, l3):
        """Test that B(L_3) -> B(L_2) has no morphism"""
        with pytest.raises(MorphismConditionError):
            PairMorphism(
                source=functor_b_obj(l3, 2), target=functor_b_obj(l2, 2), atom_images=(0b1,)
            )

    def test_atom_images_must_partition(self, post_pair):
        with pytest.raises(NotHomomorphismError):
            PairMorphism(source=post_pair, target=post_pair, atom_images=(0b01, 0b01))

    def test_functor_m_object(self, six_pair, post_pair):
        """Test M on objects: the six-element algebra and the Post algebra B^[2]"""
        assert functor_m_obj(six_pair).size == 6
        assert functor_m_obj(post_pair).size == 9

    def test_functor_m_identity(self, six_pair):
        g = functor_m_mor(PairMorphism.identity(six_pair))
        assert g.mapping == tuple(range(6))

    def test_functor_m_composition(self, post_pair):
        """Test that swapping the atoms twice is the identity on M"""
        m = build_m(post_pair)
        swap = PairMorphism(source=post_pair, target=post_pair, atom_images=(0b10, 0b01))
        g = functor_m_mor(swap, m, m)
        assert g.mapping != tuple(range(9))
        assert g.compose(g).mapping == tuple(range(9))
        assert functor_m_mor(swap.compose(swap), m, m).mapping == tuple(range(9))

    def test_functor_m_outside_target(self, post_pair, six_pair):
        theta = PairMorphism.model_construct(
            source=post_pair, target=six_pair, atom_images=(0b01, 0b10)
        )
        with pytest.raises(MorphismConditionError):
            functor_m_mor(theta)


@pytest.mark.unit
class TestPhi:
    """Test A -> M(B(A), h_A) and its inverse"""

    def test_phi_on_l3(self, l3):
        assert [str(phi(l3, 2, x)) for x in range(3)] == ["[{},{}]", "[{},{0}]", "[{0},{0}]"]

    def test_phi_inverse_on_l3(self, l3):
        assert phi_inverse(l3, 2, MonotoneTuple(atom_count=1, entries=(0, 1))) == 1

    @pytest.mark.parametrize("n", [2, 4, 6])
    def test_roundtrip_on_product(self, l2xl3, n):
        for x in range(l2xl3.size):
            assert phi_inverse(l2xl3, n, phi(l2xl3, n, x)) == x

    def test_phi_inverse_rejects_outsiders(self, l2xl3):
        """Test a tuple failing the block condition for d = 1"""
        f = MonotoneTuple(atom_count=2, entries=(0, 0b10))
        with pytest.raises(NotInSubalgebraError) as exc_info:
            phi_inverse(l2xl3, 2, f)
        assert exc_info.value.violations == [(1, 1)]

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
    def test_check_phi_on_chains(self, n):
        results = check_phi(WajsbergAlgebra.chain(n), n)
        assert [r.law for r in results] == [
            "phi-image",
            "phi-injective",
            "phi-surjective",
            "phi-homomorphism",
            "phi-inverse",
        ]
        assert all(r.verdict == Verdict.OK for r in results)

    def test_check_phi_not_n_valued(self, l2xl3):
        """Test that a failing construction gives a single FAIL"""
        results = check_phi(l2xl3, 3)
        assert len(results) == 1
        assert results[0].law == "phi-isomorphism"
        assert results[0].verdict == Verdict.FAIL


@pytest.mark.unit
class TestPairRoundtrip:
    """Test <B, h> -> <B(M(B, h)), h_M>"""

    def test_six_element_pair(self, six_pair):
        witness = pair_roundtrip_check(six_pair)
        assert witness.mu == (0b01, 0b10)
        assert witness.psi1 == (0, 1)
        assert len(witness.psi2) == 2

    def test_post_pair(self, post_pair):
        witness = pair_roundtrip_check(post_pair)
        assert all(pq.length == 2 for pq in witness.algebra.prime_quotients)

    def test_prebuilt_algebra(self, six_pair):
        m = build_m(six_pair)
        assert pair_roundtrip_check(six_pair, m).algebra is m


@pytest.mark.unit
class TestHomomorphismSearch:
    """Test the exhaustive and sampled homomorphism search"""

    def test_counts(self, l2, l3, l2xl3):
        assert homomorphisms(l2, l3)[0] == [(0, 2)]
        assert homomorphisms(l3, l2)[0] == []
        assert set(homomorphisms(l2xl3, l3)[0]) == {(0, 1, 2, 0, 1, 2), (0, 0, 0, 2, 2, 2)}
        mappings, exhaustive = homomorphisms(l2xl3, l2xl3)
        assert exhaustive
        assert len(mappings) == 2
        assert tuple(range(6)) in mappings

    def test_sampling_beyond_limit(self, l2xl3):
        """Test that a small limit switches to seeded sampling"""
        everything = set(homomorphisms(l2xl3, l2xl3)[0])
        mappings, exhaustive = homomorphisms(l2xl3, l2xl3, limit=1, samples=5, seed=3)
        assert not exhaustive
        assert mappings
        assert set(mappings) <= everything

    def test_zero_limit_is_not_the_default(self, l2xl3, l3):
        """Test that limit=0 and samples=0 are honoured rather than replaced by settings"""
        assert homomorphisms(l2xl3, l3, limit=0, samples=0) == ([], False)

    def test_found_maps_validate(self, l2xl3, l3):
        for mapping in homomorphisms(l2xl3, l3)[0]:
            WMorphism(source=l2xl3, target=l3, mapping=mapping)


@pytest.mark.unit
class TestNaturality:
    """Test that phi commutes with morphisms"""

    @pytest.mark.parametrize("n", [2, 6])
    def test_squares_commute(self, l2xl3, l3, n):
        for target in (l3, l2xl3):
            for mapping in homomorphisms(l2xl3, target)[0]:
                g = WMorphism.from_search(l2xl3, target, mapping)
                assert naturality_square(g, n) is None

    def test_inclusion_square(self, l2, l3):
        assert naturality_square(WMorphism(source=l2, target=l3, mapping=(0, 2)), 2) is None


@pytest.mark.integration
class TestEquivalenceSuite:
    """Test the aggregated report"""

    def test_all_laws_hold(self, l2, l3, l2xl3, six_pair, post_pair):
        morphisms = [
            WMorphism.from_search(l2xl3, l3, mapping) for mapping in homomorphisms(l2xl3, l3)[0]
        ]
        morphisms.append(WMorphism(source=l2, target=l3, mapping=(0, 2)))
        report = equivalence_suite(
            EquivalenceSamples(
                n=2, algebras=[l3, l2xl3], pairs=[six_pair, post_pair], morphisms=morphisms
            )
        )
        assert report.ok
        laws = [r.law for r in report.results]
        assert laws == sorted(laws)
        assert laws.count("naturality") == 3
        assert laws.count("pair-roundtrip") == 2

    def test_failures_are_reported(self, l2xl3):
        report = equivalence_suite(EquivalenceSamples(n=3, algebras=[l2xl3]))
        assert not report.ok
        assert report.failures[0].subject == "L2xL3"
