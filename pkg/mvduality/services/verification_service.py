"""Verification service - orchestrates the law checks over sample families"""

import logging
from functools import partial
from itertools import product
from typing import Dict, List, Optional, Sequence

from mvduality.config import settings
from mvduality.domain.boolalg import (
    BoolAlg,
    brute_force_ultrafilters,
    ultrafilters,
)
from mvduality.domain.boolalg import brute_force_filters as brute_force_bool_filters
from mvduality.domain.duality import (
    EquivalenceSamples,
    check_naturality,
    check_pair,
    check_phi,
    equivalence_suite,
    functor_b_obj,
    homomorphisms,
)
from mvduality.domain.exceptions import DomainException
from mvduality.domain.pairs import (
    FilterMap,
    atom_values,
    build_bn,
    build_m,
    is_post_object,
    post_sigma,
)
from mvduality.domain.schemas import LawResult, SuiteReport, Verdict
from mvduality.domain.stone import (
    pointwise_imp,
    pointwise_neg,
    psi,
    psi_inverse,
    space_of,
    valued_maps,
)
from mvduality.domain.wajsberg import (
    ImplicativeFilter,
    WajsbergAlgebra,
    brute_force_filters,
    check_axioms,
    is_chain,
    quotient,
    sigma_op,
    yd_bound_violations,
)
from mvduality.repositories.sample_repository import sample_repository
from mvduality.tasks.suite_tasks import SuiteJob, run_suite_jobs

logger = logging.getLogger(__name__)

SUITE_NS = (2, 3, 4, 6)
AXIOM_NS = (1, 2, 3, 4, 6)
STONE_NS = (1, 2, 3, 4, 5, 6)
STONE_ATOMS = 3


def _ok(law: str, subject: str) -> LawResult:
    return LawResult(verdict=Verdict.OK, law=law, subject=subject)


def _fail(law: str, subject: str, counterexample: str) -> LawResult:
    logger.warning(f"FAIL {law} {subject}: {counterexample}")
    return LawResult(verdict=Verdict.FAIL, law=law, subject=subject, counterexample=counterexample)


class VerificationService:
    """Service for the acceptance checks of both functors and their round trips"""

    @staticmethod
    def check_tuple_axioms(
        atom_counts: Sequence[int] = (1, 2, 3),
        ns: Sequence[int] = AXIOM_NS,
        seed: Optional[int] = None,
        max_chain: int = 12,
    ) -> List[LawResult]:
        """
        Scan B^[n] and the chains L_{n+1} for the Wajsberg identities

        Args:
            atom_counts: Atom counts of the Boolean bases
            ns: Values of n for B^[n]
            seed: Seed for sampled triples
            max_chain: Chains L_2 .. L_{max_chain+1} are scanned exhaustively

        Returns:
            One `axioms` line per algebra
        """
        results = []
        algebras = [WajsbergAlgebra.chain(n) for n in range(1, max_chain + 1)]
        algebras += [build_bn(BoolAlg(atom_count=m), n) for m in atom_counts for n in ns]
        for a in algebras:
            report = check_axioms(a, seed=seed)
            if report.ok:
                results.append(_ok("axioms", a.name))
            else:
                results.append(_fail("axioms", a.name, str(report.violations[0])))
        return results

    @staticmethod
    def check_atomwise_oracle(max_atoms: int = 3, max_n: int = 6) -> List[LawResult]:
        """B^[n] against (L_{n+1})^m through atom-wise counting"""
        results = []
        for m in range(1, max_atoms + 1):
            for n in range(1, max_n + 1):
                a = build_bn(BoolAlg(atom_count=m), n)
                counts = [tuple(v.num for v in atom_values(a.element(x))) for x in range(a.size)]
                results.append(_atomwise_result(a, n, counts))
        return results

    @staticmethod
    def check_cardinalities(
        max_atoms: int = 3, ns: Sequence[int] = SUITE_NS
    ) -> List[LawResult]:
        """|B^[n]| = (n+1)^m, Post objects give B^[n], and the six-element M is L_2 x L_3"""
        results = []
        for m in range(1, max_atoms + 1):
            b = BoolAlg(atom_count=m)
            for n in ns:
                subject = f"2^{m}[{n}]"
                size = build_bn(b, n).size
                if size != (n + 1) ** m:
                    results.append(_fail("cardinality", subject, f"{size} != {(n + 1) ** m}"))
                else:
                    results.append(_ok("cardinality", subject))

                generators = {d: b.full if d == n else 0 for d in range(1, n + 1) if n % d == 0}
                post = FilterMap.from_generators(m, n, generators)
                post_size = build_m(post).size
                if not is_post_object(post) or post_size != (n + 1) ** m:
                    results.append(_fail("post-cardinality", subject, f"|M| = {post_size}"))
                else:
                    results.append(_ok("post-cardinality", subject))

        pair = FilterMap.from_generators(2, 2, {1: 0b01, 2: 0b11})
        m_alg = build_m(pair)
        target = WajsbergAlgebra.product(WajsbergAlgebra.chain(1), WajsbergAlgebra.chain(2))
        mappings, _ = homomorphisms(m_alg, target)
        if m_alg.size != 6 or not any(len(set(g)) == target.size for g in mappings):
            results.append(
                _fail("six-element-m", pair.describe(), f"|M| = {m_alg.size}, no isomorphism onto L2xL3")
            )
        else:
            results.append(_ok("six-element-m", pair.describe()))
        return results

    @staticmethod
    def check_phi_roundtrips(n: int, algebras: Sequence[WajsbergAlgebra]) -> List[LawResult]:
        """phi is a bijective homomorphism onto M(B(A), h_A) inverted by phi_inverse"""
        results = []
        for a in algebras:
            results.extend(check_phi(a, n))
            try:
                violations = yd_bound_violations(a, n)
            except DomainException as e:
                results.append(_fail("yd-bound", a.name, str(e)))
                continue
            if violations:
                x, d, p = violations[0]
                results.append(_fail("yd-bound", a.name, f"x={a.label(x)} d={d} prime={p}"))
            else:
                results.append(_ok("yd-bound", a.name))
        return results

    @staticmethod
    def check_pair_roundtrips(pairs: Sequence[FilterMap]) -> List[LawResult]:
        return [check_pair(p) for p in pairs]

    @staticmethod
    def check_naturality(
        n: int,
        algebras: Sequence[WajsbergAlgebra],
        seed: Optional[int] = None,
    ) -> List[LawResult]:
        """The naturality square for every (or a seeded sample of) homomorphisms"""
        morphisms = sample_repository.morphisms(algebras, seed=seed)
        return [
            check_naturality(g, n, f"{g.source.name}->{g.target.name}#{k}")
            for k, g in enumerate(morphisms)
        ]

    @staticmethod
    def check_filter_soundness(algebras: Sequence[WajsbergAlgebra]) -> List[LawResult]:
        """Filters and prime filters against subset enumeration on small carriers"""
        results = []
        for a in algebras:
            if a.size > settings.filter_bruteforce_limit:
                continue
            expected = set(brute_force_filters(a))
            actual = {f.members for f in a.filters}
            if actual != expected:
                results.append(
                    _fail("filters", a.name, f"{len(actual)} generated, {len(expected)} enumerated")
                )
            else:
                results.append(_ok("filters", a.name))

            brute_primes = set()
            for members in expected:
                if a.bottom in members:
                    continue
                f = ImplicativeFilter(generator=a.meet_all(members), members=members)
                q, _ = quotient(a, f)
                if is_chain(q):
                    brute_primes.add(members)
            primes = {pq.filter.members for pq in a.prime_quotients}
            if primes != brute_primes:
                results.append(
                    _fail("prime-filters", a.name, f"{len(primes)} found, {len(brute_primes)} enumerated")
                )
            else:
                results.append(_ok("prime-filters", a.name))
        return results

    @staticmethod
    def check_boolean_filters(max_atoms: Optional[int] = None) -> List[LawResult]:
        """Every filter of 2^m is principal and the ultrafilters are the atom filters"""
        max_atoms = settings.boolean_bruteforce_atoms if max_atoms is None else max_atoms
        results = []
        for m in range(max_atoms + 1):
            b = BoolAlg(atom_count=m)
            subject = f"2^{m}"
            principal = {
                frozenset(y for y in range(b.size) if g & ~y == 0) for g in range(b.size)
            }
            if set(brute_force_bool_filters(b)) != principal:
                results.append(_fail("boolean-filters", subject, "a filter is not principal"))
                continue
            expected = {
                frozenset(y for y in range(b.size) if u.generator.mask & ~y == 0)
                for u in ultrafilters(b)
            }
            if set(brute_force_ultrafilters(b)) != expected:
                results.append(_fail("boolean-filters", subject, "ultrafilters differ from atom filters"))
            else:
                results.append(_ok("boolean-filters", subject))
        return results

    @staticmethod
    def check_stone(
        pairs: Sequence[FilterMap],
        n: Optional[int] = None,
        algebras: Sequence[WajsbergAlgebra] = (),
    ) -> List[LawResult]:
        """psi is a bijective homomorphism onto the valued maps, inverted by psi_inverse"""
        results = []
        for p in pairs:
            results.extend(_stone_results(p))
        for a in algebras:
            space = space_of(functor_b_obj(a, n))
            if space.point_count != len(a.prime_quotients):
                results.append(
                    _fail("stone-points", a.name, f"{space.point_count} points, {len(a.prime_quotients)} primes")
                )
            else:
                results.append(_ok("stone-points", a.name))
        return results

    @staticmethod
    def check_sigma(max_atoms: int = 2, max_n: int = 6) -> List[LawResult]:
        """sigma_op on B^[n] agrees with sigma_i(f)(j) = f(i)"""
        results = []
        for m in range(1, max_atoms + 1):
            for n in range(1, max_n + 1):
                a = build_bn(BoolAlg(atom_count=m), n)
                failure = None
                for x, i in product(range(a.size), range(1, n + 1)):
                    if sigma_op(a, n, i, x) != a.index_of(post_sigma(a.element(x), i)):
                        failure = f"sigma_{i}({a.label(x)})"
                        break
                results.append(_fail("sigma-post", a.name, failure) if failure else _ok("sigma-post", a.name))
        return results

    @staticmethod
    def run_equivalence(
        n: int,
        algebras: Sequence[WajsbergAlgebra] = (),
        pairs: Sequence[FilterMap] = (),
        seed: Optional[int] = None,
    ) -> SuiteReport:
        """phi, pair round trips and naturality over one sample family"""
        morphisms = sample_repository.morphisms(algebras, seed=seed) if algebras else []
        return equivalence_suite(
            EquivalenceSamples(n=n, algebras=list(algebras), pairs=list(pairs), morphisms=morphisms)
        )

    @staticmethod
    def run_suite(
        ns: Sequence[int] = SUITE_NS,
        max_size: Optional[int] = None,
        max_atoms: int = 2,
        seed: Optional[int] = None,
        concurrent: Optional[bool] = None,
        stone_ns: Sequence[int] = STONE_NS,
        stone_atoms: int = STONE_ATOMS,
    ) -> SuiteReport:
        """
        Full acceptance run

        Args:
            ns: Values of n for the equivalence checks
            max_size: Largest product of chains in the algebra samples
            max_atoms: Largest atom count of the enumerated filter maps
            seed: Seed for every sampled check
            concurrent: Fan jobs out concurrently (defaults to settings)
            stone_ns: Values of n for the Stone translation
            stone_atoms: Largest atom count of the Stone translation's filter maps

        Returns:
            SuiteReport over every job
        """
        seed = settings.default_seed if seed is None else seed
        max_size = settings.max_algebra_size if max_size is None else max_size

        jobs: Dict[str, SuiteJob] = {
            "axioms": partial(VerificationService.check_tuple_axioms, seed=seed),
            "atomwise-oracle": VerificationService.check_atomwise_oracle,
            "cardinality": VerificationService.check_cardinalities,
            "sigma-post": VerificationService.check_sigma,
            "boolean-filters": VerificationService.check_boolean_filters,
        }
        for n in ns:
            algebras = sample_repository.chain_products(n, max_size)
            pairs = sample_repository.filter_maps(n, max_atoms)
            jobs[f"phi[n={n}]"] = partial(_phi_job, n, algebras, max_atoms)
            jobs[f"pair-roundtrip[n={n}]"] = partial(VerificationService.check_pair_roundtrips, pairs)
            jobs[f"naturality[n={n}]"] = partial(_naturality_job, n, algebras, max_atoms, seed)
            jobs[f"filters[n={n}]"] = partial(VerificationService.check_filter_soundness, algebras)
            jobs[f"stone-points[n={n}]"] = partial(VerificationService.check_stone, (), n, algebras)
        for n in stone_ns:
            jobs[f"stone[n={n}]"] = partial(_stone_job, n, stone_atoms)

        logger.info(f"Running suite for n in {list(ns)} with algebras up to {max_size} elements")
        return run_suite_jobs(jobs, concurrent)


def _phi_job(n: int, algebras: Sequence[WajsbergAlgebra], max_atoms: int) -> List[LawResult]:
    """phi round trips on the chain products and on every M(B, h)"""
    samples = list(algebras) + sample_repository.tuple_algebras(n, max_atoms)
    return VerificationService.check_phi_roundtrips(n, samples)


def _naturality_job(
    n: int, algebras: Sequence[WajsbergAlgebra], max_atoms: int, seed: int
) -> List[LawResult]:
    """Naturality over the same family as the phi round trips"""
    samples = list(algebras) + sample_repository.tuple_algebras(n, max_atoms)
    return VerificationService.check_naturality(n, samples, seed)


def _stone_job(n: int, max_atoms: int) -> List[LawResult]:
    return VerificationService.check_stone(sample_repository.filter_maps(n, max_atoms))


def _atomwise_result(a: WajsbergAlgebra, n: int, counts: List[tuple]) -> LawResult:
    if len(set(counts)) != a.size:
        return _fail("atomwise-oracle", a.name, "atom-wise evaluation is not injective")
    for x in range(a.size):
        cx = counts[x]
        if counts[a.neg(x)] != tuple(n - k for k in cx):
            return _fail("atomwise-oracle", a.name, f"negation at {a.label(x)}")
        for y in range(a.size):
            cy = counts[y]
            expected = tuple(min(n, n - i + j) for i, j in zip(cx, cy))
            if counts[a.imp(x, y)] != expected:
                return _fail("atomwise-oracle", a.name, f"implication at ({a.label(x)}, {a.label(y)})")
    return _ok("atomwise-oracle", a.name)


def _stone_results(p: FilterMap) -> List[LawResult]:
    subject = p.describe()
    try:
        space = space_of(p)
        m = build_m(p)
        images = [psi(space, m.element(x)) for x in range(m.size)]
        targets = set(valued_maps(space))
    except DomainException as e:
        return [_fail("stone-bijection", subject, str(e))]

    results = []
    if len(set(images)) != m.size or set(images) != targets:
        results.append(
            _fail("stone-bijection", subject, f"{len(set(images))} images, {len(targets)} valued maps")
        )
    else:
        results.append(_ok("stone-bijection", subject))

    broken = None
    for x in range(m.size):
        if images[m.neg(x)] != pointwise_neg(images[x]):
            broken = f"negation at {m.label(x)}"
            break
        if psi_inverse(space, images[x]) != m.element(x):
            broken = f"psi_inverse(psi({m.label(x)}))"
            break
        for y in range(m.size):
            if images[m.imp(x, y)] != pointwise_imp(images[x], images[y]):
                broken = f"implication at ({m.label(x)}, {m.label(y)})"
                break
        if broken:
            break
    results.append(_fail("stone-homomorphism", subject, broken) if broken else _ok("stone-homomorphism", subject))
    return results
