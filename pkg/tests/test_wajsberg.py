"""
Tests for finite Wajsberg algebras: operations, skeletons, filters and modal operators
"""

import pytest

from mvduality.domain.chain import ChainValue
from mvduality.domain.exceptions import (
    EmptyPrimeFamilyError,
    ImproperFilterError,
    IndexOutOfRangeError,
    MalformedAlgebraError,
    NotNValuedError,
)
from mvduality.domain.wajsberg import (
    WajsbergAlgebra,
    boolean_skeleton,
    brute_force_filters,
    build_yd,
    check_axioms,
    check_n_valued,
    chain_coordinates,
    chi_d,
    derived_ops,
    find_xd,
    implicative_filters,
    is_chain,
    prime_filters,
    quotient,
    sigma_op,
    subdirect_injective,
    valuation,
    yd_bound_violations,
)


@pytest.mark.unit
class TestConstruction:
    """Test table validation and constructors"""

    def test_chain_labels(self, l3):
        """Test that index k of L_{n+1} is k/n"""
        assert [l3.label(x) for x in range(3)] == ["0/2", "1/2", "2/2"]
        assert l3.index_of(ChainValue(num=1, den=2)) == 1
        assert l3.name == "L3"

    def test_product_order(self, l2xl3):
        """Test that the first factor varies slowest"""
        assert l2xl3.size == 6
        assert l2xl3.name == "L2xL3"
        assert l2xl3.label(4) == "(1/1,1/2)"
        assert l2xl3.top == 5
        assert l2xl3.bottom == 0

    def test_index_of_unknown(self, l3):
        with pytest.raises(KeyError):
            l3.index_of("nope")

    @pytest.mark.parametrize(
        "imp, neg, top",
        [
            ([[1, 1]], [1, 0], 1),
            ([[1, 1], [0, 2]], [1, 0], 1),
            ([[1, 1], [0, 1]], [1, 0], 2),
            ([], [], 0),
        ],
    )
    def test_malformed_tables(self, imp, neg, top):
        """Test shape and range validation"""
        with pytest.raises(MalformedAlgebraError):
            WajsbergAlgebra(imp, neg, top)


@pytest.mark.unit
class TestDerivedOperations:
    """Test the lattice and MV operations"""

    def test_operations_on_l4(self, l4):
        """Test join, meet, oplus, odot and power on thirds"""
        ops = derived_ops(l4)
        assert ops.join(1, 2) == 2
        assert ops.meet(1, 2) == 1
        assert ops.oplus(1, 1) == 2
        assert ops.oplus(2, 2) == 3
        assert ops.odot(2, 2) == 1
        assert ops.power(2, 2) == 1
        assert ops.power(2, 0) == l4.top
        assert ops.leq(1, 2) and not ops.leq(2, 1)

    def test_join_all_meet_all(self, l4):
        assert l4.join_all([]) == l4.bottom
        assert l4.meet_all([]) == l4.top
        assert l4.join_all([0, 2, 1]) == 2
        assert l4.meet_all([3, 2, 1]) == 1


@pytest.mark.unit
class TestAxiomScan:
    """Test check_axioms"""

    def test_corrupted_table(self):
        """Test that a broken entry is reported with its witness"""
        imp = [[2, 2, 2], [1, 2, 2], [1, 1, 2]]
        report = check_axioms(WajsbergAlgebra(imp, [2, 1, 0], 2))
        assert not report.ok
        assert report.violations[0].identity == 1
        assert report.violations[0].witness == (0,)

    def test_sampling_above_limit(self, l4):
        """Test that the triple identity is sampled when the carrier is large"""
        report = check_axioms(l4, seed=7, exhaustive_limit=10, samples=500)
        assert not report.exhaustive
        assert report.triples_checked == 500
        assert report.ok

    def test_zero_limit_is_not_the_default(self, l4):
        """Test that an explicit zero limit samples instead of falling back to settings"""
        report = check_axioms(l4, exhaustive_limit=0, samples=0)
        assert not report.exhaustive
        assert report.triples_checked == 0

    def test_product_passes(self, l2xl3):
        assert check_axioms(l2xl3).ok


@pytest.mark.unit
class TestSkeleton:
    """Test the Boolean skeleton B(A)"""

    def test_chain_skeleton(self, l3):
        """Test that B(L_3) is {0, 1}"""
        skeleton = boolean_skeleton(l3)
        assert skeleton.elements == (0, 2)
        assert skeleton.atoms == (2,)
        assert skeleton.base.atom_count == 1

    def test_product_skeleton(self, l2xl3):
        """Test atoms ordered by element index"""
        skeleton = l2xl3.skeleton
        assert skeleton.atoms == (2, 3)
        assert skeleton.to_mask(5) == 0b11
        assert skeleton.to_mask(3) == 0b10
        assert skeleton.from_mask(0b01) == 2
        assert 4 not in skeleton

    def test_from_bool(self, l2xl3):
        skeleton = l2xl3.skeleton
        assert skeleton.from_bool(skeleton.to_bool(3)) == 3


@pytest.mark.unit
class TestFilters:
    """Test implicative and prime filters against enumeration"""

    def test_l4_has_two_filters(self, l4):
        """Test that a simple chain has only the trivial and improper filters"""
        assert len(implicative_filters(l4)) == 2

    @pytest.mark.parametrize("n", [1, 2, 3, 6])
    def test_chain_filters_match_enumeration(self, n):
        a = WajsbergAlgebra.chain(n)
        assert {f.members for f in a.filters} == set(brute_force_filters(a))

    def test_product_filters_match_enumeration(self, l2xl3):
        """Test the 6-element product by subset enumeration"""
        assert {f.members for f in l2xl3.filters} == set(brute_force_filters(l2xl3))

    def test_product_primes(self, l2xl3):
        """Test one prime per factor with the factor as quotient"""
        primes = l2xl3.prime_quotients
        assert [pq.filter.generator for pq in primes] == [2, 3]
        assert [pq.length for pq in primes] == [2, 1]
        assert prime_filters(l2xl3)[1].members == frozenset({3, 4, 5})

    def test_quotient(self, l2xl3):
        """Test that dividing by {1} x L_3 leaves L_2"""
        f = l2xl3.filters[[f.generator for f in l2xl3.filters].index(3)]
        q, projection = quotient(l2xl3, f)
        assert q.size == 2
        assert is_chain(q)
        assert projection == (0, 0, 0, 1, 1, 1)
        assert [str(c) for c in chain_coordinates(q)] == ["0/1", "1/1"]

    def test_improper_quotient(self, l3):
        improper = l3.filters[0]
        with pytest.raises(ImproperFilterError):
            quotient(l3, improper)

    def test_subdirect_embedding(self, l2xl3):
        assert subdirect_injective(l2xl3)
        assert not is_chain(l2xl3)


@pytest.mark.unit
class TestModalOperators:
    """Test n-valuedness, sigma and the witnesses x_d, y_d"""

    def test_n_valued(self, l2xl3):
        """Test that L_2 x L_3 is 3-, 5- and 7-valued but not 4-valued"""
        for n in (2, 4, 6):
            check_n_valued(l2xl3, n)
        with pytest.raises(NotNValuedError):
            check_n_valued(l2xl3, 3)

    def test_valuation(self, l2xl3):
        """Test the images in the prime quotients, read in L_7"""
        values = valuation(l2xl3, 6, 4)
        assert [str(x) for x in values] == ["3/6", "6/6"]

    def test_sigma_on_l3(self, l3):
        assert sigma_op(l3, 2, 1, 1) == 0
        assert sigma_op(l3, 2, 2, 1) == 2
        with pytest.raises(IndexOutOfRangeError):
            sigma_op(l3, 2, 3, 1)

    def test_sigma_on_product(self, l2xl3):
        """Test sigma componentwise"""
        # 4 = (1, 1/2): sigma_1 gives (1, 0) = 3, sigma_2 gives (1, 1) = 5
        assert sigma_op(l2xl3, 2, 1, 4) == 3
        assert sigma_op(l2xl3, 2, 2, 4) == 5

    def test_chi_d(self, l2xl3):
        assert chi_d(l2xl3, 6, 1) == [l2xl3.prime_quotients[1].filter]
        assert chi_d(l2xl3, 6, 3) == []
        with pytest.raises(IndexOutOfRangeError):
            chi_d(l2xl3, 6, 4)

    def test_witnesses_on_l3(self, l3):
        """Test x_2 = 1/2, y_2 = 1/2 and y_1 = 1"""
        assert find_xd(l3, 2, 2) == 1
        assert build_yd(l3, 2, 2) == 1
        assert build_yd(l3, 2, 1) == l3.top
        with pytest.raises(EmptyPrimeFamilyError):
            find_xd(l3, 2, 1)

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
    def test_yd_bound_on_chains(self, n):
        """Test that x or not x^(d-1) never drops below (d-1)/d"""
        assert yd_bound_violations(WajsbergAlgebra.chain(n), n) == []

    def test_yd_bound_on_product(self, l2xl3):
        assert yd_bound_violations(l2xl3, 6) == []
