"""The equivalence between (n+1)-valued Wajsberg algebras and filtered Boolean algebras

`functor_b_*` sends an algebra to its Boolean skeleton with the filters h_A(d);
`functor_m_*` sends a filter map to the tuple algebra M(B, h). `phi` and
`phi_inverse` realise A = M(B(A), h_A) and `pair_roundtrip_check` realises
<B, h> = <B(M(B, h)), h_M>.
"""

import logging
import random
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from mvduality.config import settings
from mvduality.domain.exceptions import (
    DomainException,
    MorphismConditionError,
    NotHomomorphismError,
    VerificationError,
)
from mvduality.domain.pairs import (
    FilterMap,
    MonotoneTuple,
    block_violations,
    build_m,
    check_object,
    divisors_of,
    q_index,
    require_member,
)
from mvduality.domain.schemas import LawResult, SuiteReport, Verdict
from mvduality.domain.wajsberg import (
    ImplicativeFilter,
    WajsbergAlgebra,
    build_yd,
    check_n_valued,
    sigma_op,
)

logger = logging.getLogger(__name__)


class WMorphism(BaseModel):
    """A homomorphism of Wajsberg algebras given by its element map"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    source: WajsbergAlgebra
    target: WajsbergAlgebra
    mapping: Tuple[int, ...]

    @model_validator(mode="after")
    def _check_homomorphism(self) -> "WMorphism":
        s, t, g = self.source, self.target, self.mapping
        if len(g) != s.size or any(not 0 <= y < t.size for y in g):
            raise NotHomomorphismError(f"mapping is not a function {s.name} -> {t.name}")
        if g[s.top] != t.top:
            raise NotHomomorphismError(f"top of {s.name} is not sent to top")
        for x in range(s.size):
            if g[s.neg(x)] != t.neg(g[x]):
                raise NotHomomorphismError(f"negation not preserved at {s.label(x)}")
            for y in range(s.size):
                if g[s.imp(x, y)] != t.imp(g[x], g[y]):
                    raise NotHomomorphismError(
                        f"implication not preserved at ({s.label(x)}, {s.label(y)})"
                    )
        return self

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    @classmethod
    def from_search(
        cls, source: WajsbergAlgebra, target: WajsbergAlgebra, mapping: Sequence[int]
    ) -> "WMorphism":
        """Wrap a mapping produced by `homomorphisms`, which already checked every pair"""
        return cls.model_construct(source=source, target=target, mapping=tuple(mapping))

    @classmethod
    def identity(cls, a: WajsbergAlgebra) -> "WMorphism":
        return cls(source=a, target=a, mapping=tuple(range(a.size)))

    def compose(self, first: "WMorphism") -> "WMorphism":
        """self after first"""
        if first.target is not self.source:
            raise NotHomomorphismError("morphisms are not composable")
        return WMorphism(
            source=first.source,
            target=self.target,
            mapping=tuple(self.mapping[y] for y in first.mapping),
        )


class PairMorphism(BaseModel):
    """A Boolean homomorphism theta with h_1(d) inside theta^-1(h_2(d))

    theta is stored by the images of the source atoms; they partition the
    target atoms (some images may be empty).
    """

    model_config = ConfigDict(frozen=True)

    source: FilterMap
    target: FilterMap
    atom_images: Tuple[int, ...]

    @model_validator(mode="after")
    def _check_morphism(self) -> "PairMorphism":
        if self.source.n != self.target.n:
            raise MorphismConditionError("filter maps over different n")
        if len(self.atom_images) != self.source.base.atom_count:
            raise NotHomomorphismError("one image per source atom is required")
        seen = 0
        for image in self.atom_images:
            if image & seen or image & ~self.target.base.full:
                raise NotHomomorphismError("atom images must be disjoint target elements")
            seen |= image
        if seen != self.target.base.full:
            raise NotHomomorphismError("atom images must cover the target atoms")
        for d in self.source.divisors:
            if self.target.generator(d) & ~self.apply(self.source.generator(d)):
                raise MorphismConditionError(
                    f"h_1({d}) is not inside the preimage of h_2({d})"
                )
        return self

    def apply(self, mask: int) -> int:
        result = 0
        for a, image in enumerate(self.atom_images):
            if mask >> a & 1:
                result |= image
        return result

    @classmethod
    def identity(cls, p: FilterMap) -> "PairMorphism":
        return cls(source=p, target=p, atom_images=tuple(1 << a for a in range(p.base.atom_count)))

    def compose(self, first: "PairMorphism") -> "PairMorphism":
        """self after first"""
        return PairMorphism(
            source=first.source,
            target=self.target,
            atom_images=tuple(self.apply(image) for image in first.atom_images),
        )


def apply_entrywise(theta: PairMorphism, f: MonotoneTuple) -> MonotoneTuple:
    return MonotoneTuple(
        atom_count=theta.target.base.atom_count,
        entries=tuple(theta.apply(mask) for mask in f.entries),
    )


# Functor B


def functor_b_obj(a: WajsbergAlgebra, n: int) -> FilterMap:
    """<B(A), h_A> with h_A(d) = P_d meet B(A)

    P_d intersects the primes whose quotient embeds in L_{d+1}; over an
    empty family it is the improper filter.
    """

    def compute() -> FilterMap:
        check_n_valued(a, n)
        skeleton = a.skeleton
        generators: Dict[int, int] = {}
        for d in divisors_of(n):
            family = [pq for pq in a.prime_quotients if d % pq.length == 0]
            if not family:
                generators[d] = 0
            else:
                g = a.join_all(pq.filter.generator for pq in family)
                generators[d] = skeleton.to_mask(g)
        pair = FilterMap.from_generators(skeleton.base.atom_count, n, generators)
        report = check_object(pair)
        if not report.ok:
            raise VerificationError(
                f"B({a.name}) violates the object conditions",
                counterexample="; ".join(v.message for v in report.violations),
            )
        logger.debug(f"B({a.name}) = {pair.describe()}")
        return pair

    return a.memoized(("functor_b", n), compute)


def functor_b_mor(g: WMorphism, n: int) -> PairMorphism:
    """The restriction of g to Boolean skeletons"""
    source = functor_b_obj(g.source, n)
    target = functor_b_obj(g.target, n)
    sk1, sk2 = g.source.skeleton, g.target.skeleton
    return PairMorphism(
        source=source,
        target=target,
        atom_images=tuple(sk2.to_mask(g(atom)) for atom in sk1.atoms),
    )


# Functor M


def functor_m_obj(p: FilterMap) -> WajsbergAlgebra:
    return build_m(p)


def functor_m_mor(
    theta: PairMorphism,
    source: Optional[WajsbergAlgebra] = None,
    target: Optional[WajsbergAlgebra] = None,
) -> WMorphism:
    """f -> theta o f between M(B_1, h_1) and M(B_2, h_2)

    Prebuilt tuple algebras for the two objects may be passed in.
    """
    source = functor_m_obj(theta.source) if source is None else source
    target = functor_m_obj(theta.target) if target is None else target
    mapping = []
    for x in range(source.size):
        image = apply_entrywise(theta, source.element(x))
        try:
            mapping.append(target.index_of(image))
        except KeyError:
            raise MorphismConditionError(
                f"{image} falls outside the target subalgebra; block conditions "
                f"{block_violations(theta.target, image)} fail"
            ) from None
    return WMorphism(source=source, target=target, mapping=tuple(mapping))


# The isomorphism A -> M(B(A), h_A)


def phi(a: WajsbergAlgebra, n: int, x: int) -> MonotoneTuple:
    """(sigma_1(x), ..., sigma_n(x)) read in B(A)"""
    skeleton = a.skeleton
    return MonotoneTuple(
        atom_count=skeleton.base.atom_count,
        entries=tuple(skeleton.to_mask(sigma_op(a, n, i, x)) for i in range(1, n + 1)),
    )


def phi_table(a: WajsbergAlgebra, n: int) -> Tuple[MonotoneTuple, ...]:
    return a.memoized(("phi", n), lambda: tuple(phi(a, n, x) for x in range(a.size)))


def phi_inverse(a: WajsbergAlgebra, n: int, f: MonotoneTuple) -> int:
    """z = join over i of (f(i) meet a_i), a_i = meet over d of y_d^(q_{d,i}-1)"""
    require_member(functor_b_obj(a, n), f)
    skeleton = a.skeleton
    divisors = divisors_of(n)
    ys = {d: build_yd(a, n, d) for d in divisors}
    z = a.bottom
    for i in range(1, n + 1):
        a_i = a.meet_all(a.power(ys[d], q_index(d, i, n) - 1) for d in divisors)
        z = a.join(z, a.meet(skeleton.from_mask(f.entries[i - 1]), a_i))
    return z


# The isomorphism <B, h> -> <B(M(B, h)), h_M>


class PairIsomorphismWitness(BaseModel):
    """mu on atoms, with the prime-filter correspondences

    `mu[a]` is the skeleton mask of the constant tuple at atom a;
    `psi1[a]` is the skeleton atom whose ultrafilter is mu(up a);
    `psi2[b]` is the prime filter {x : x^n in up b} of M(B, h).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    pair: FilterMap
    algebra: WajsbergAlgebra
    mu: Tuple[int, ...]
    psi1: Tuple[int, ...]
    psi2: Tuple[ImplicativeFilter, ...]


def pair_roundtrip_check(p: FilterMap, algebra: Optional[WajsbergAlgebra] = None) -> PairIsomorphismWitness:
    """Show <B, h> and <B(A), h_A> are isomorphic for A = M(B, h)"""
    a = functor_m_obj(p) if algebra is None else algebra
    n, base = p.n, p.base
    skeleton = a.skeleton

    def fail(message: str, counterexample: str = "") -> VerificationError:
        logger.warning(f"Pair round trip failed for {p.describe()}: {message}")
        return VerificationError(message, counterexample=counterexample)

    def mu_mask(mask: int) -> int:
        constant = MonotoneTuple(atom_count=base.atom_count, entries=(mask,) * n)
        x = a.index_of(constant)
        if x not in skeleton:
            raise fail("a constant tuple is not idempotent", str(constant))
        return skeleton.to_mask(x)

    images = [mu_mask(mask) for mask in range(base.size)]
    if len(set(images)) != base.size or skeleton.base.size != base.size:
        raise fail("mu is not a bijection onto B(A)")
    for x in range(base.size):
        if images[base.full & ~x] != skeleton.base.full & ~images[x]:
            raise fail("mu does not preserve complements", str(base.elem(x)))
        for y in range(base.size):
            if images[x & y] != images[x] & images[y]:
                raise fail("mu does not preserve meets", f"{base.elem(x)}, {base.elem(y)}")

    h_a = functor_b_obj(a, n)
    for d in p.divisors:
        if images[p.generator(d)] != h_a.generator(d):
            raise fail(
                f"mu^-1(h_A({d})) differs from h({d})",
                f"h({d})={p.h[d].generator}, h_A({d})={h_a.h[d].generator}",
            )

    mu = tuple(images[1 << atom] for atom in range(base.atom_count))
    psi1 = []
    for atom, image in enumerate(mu):
        if image == 0 or image & (image - 1):
            raise fail("mu does not send atoms to atoms", f"atom {atom}")
        psi1.append(image.bit_length() - 1)

    primes = {pq.filter.members: pq.filter for pq in a.prime_quotients}
    psi2 = []
    for b in range(skeleton.base.atom_count):
        members = frozenset(x for x in range(a.size) if skeleton.to_mask(a.power(x, n)) >> b & 1)
        prime = primes.get(members)
        if prime is None:
            raise fail(f"{{x : x^n in up atom {b}}} is not a prime filter")
        trace = {e for e in skeleton.elements if e in prime.members}
        expected = {e for e in skeleton.elements if skeleton.to_mask(e) >> b & 1}
        if trace != expected:
            raise fail(f"the prime over atom {b} does not meet B(A) in its ultrafilter")
        psi2.append(prime)
    if len(psi2) != len(a.prime_quotients):
        raise fail("the prime filters are not in bijection with the ultrafilters")

    logger.debug(f"Pair round trip verified for {p.describe()}")
    return PairIsomorphismWitness(pair=p, algebra=a, mu=mu, psi1=tuple(psi1), psi2=tuple(psi2))


# Naturality


def naturality_square(g: WMorphism, n: int) -> Optional[int]:
    """First x with phi(g(x)) != M(B(g))(phi(x)), or None when the square commutes"""
    theta = functor_b_mor(g, n)
    phi_source = phi_table(g.source, n)
    phi_target = phi_table(g.target, n)
    for x in range(g.source.size):
        if phi_target[g(x)] != apply_entrywise(theta, phi_source[x]):
            return x
    return None


# Homomorphism search


def _extend(
    source: WajsbergAlgebra,
    target: WajsbergAlgebra,
    assignment: List[int],
    assigned: List[int],
    pending: List[int],
) -> bool:
    """Propagate forced images; False on conflict"""
    while pending:
        x = pending.pop()
        gx = assignment[x]
        forced = [(source.neg(x), target.neg(gx))]
        for y in assigned:
            gy = assignment[y]
            forced.append((source.imp(x, y), target.imp(gx, gy)))
            forced.append((source.imp(y, x), target.imp(gy, gx)))
        for z, gz in forced:
            if assignment[z] == -1:
                assignment[z] = gz
                assigned.append(z)
                pending.append(z)
            elif assignment[z] != gz:
                return False
    return True


def _search(
    source: WajsbergAlgebra,
    target: WajsbergAlgebra,
    rng: Optional[random.Random] = None,
) -> Iterator[Tuple[int, ...]]:
    start = [-1] * source.size
    start[source.top] = target.top
    stack = []
    assigned = [source.top]
    if _extend(source, target, start, assigned, [source.top]):
        stack.append((start, assigned))
    while stack:
        assignment, assigned = stack.pop()
        try:
            x = assignment.index(-1)
        except ValueError:
            yield tuple(assignment)
            continue
        candidates = list(range(target.size))
        if rng is not None:
            rng.shuffle(candidates)
        else:
            candidates.reverse()
        for t in candidates:
            trial = list(assignment)
            trial[x] = t
            trial_assigned = assigned + [x]
            if _extend(source, target, trial, trial_assigned, [x]):
                stack.append((trial, trial_assigned))


def homomorphisms(
    source: WajsbergAlgebra,
    target: WajsbergAlgebra,
    limit: Optional[int] = None,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
) -> Tuple[List[Tuple[int, ...]], bool]:
    """Element maps of the homomorphisms source -> target

    Returns every homomorphism when there are at most `limit`; otherwise a
    seeded sample of up to `samples` distinct ones. The flag says which.
    """
    limit = settings.hom_set_limit if limit is None else limit
    samples = settings.naturality_samples if samples is None else samples
    seed = settings.default_seed if seed is None else seed

    found = []
    for mapping in _search(source, target):
        found.append(mapping)
        if len(found) > limit:
            break
    else:
        return found, True

    rng = random.Random(seed)
    sampled: Dict[Tuple[int, ...], None] = {}
    attempts = 0
    while len(sampled) < samples and attempts < 4 * samples:
        attempts += 1
        mapping = next(_search(source, target, rng), None)
        if mapping is not None:
            sampled[mapping] = None
    logger.info(
        f"Hom({source.name}, {target.name}) exceeds {limit}; sampled {len(sampled)} morphisms"
    )
    return list(sampled), False


# Per-sample laws


class EquivalenceSamples(BaseModel):
    """A finite family of objects and morphisms on both sides"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    n: int
    algebras: List[WajsbergAlgebra] = []
    pairs: List[FilterMap] = []
    morphisms: List[WMorphism] = []


def _ok(law: str, subject: str) -> LawResult:
    return LawResult(verdict=Verdict.OK, law=law, subject=subject)


def _fail(law: str, subject: str, counterexample: str) -> LawResult:
    return LawResult(verdict=Verdict.FAIL, law=law, subject=subject, counterexample=counterexample)


def check_phi(a: WajsbergAlgebra, n: int) -> List[LawResult]:
    """phi lands in M(B(A), h_A), is a bijective homomorphism, and phi_inverse inverts it"""
    subject = a.name
    try:
        pair = functor_b_obj(a, n)
        m = functor_m_obj(pair)
        table = phi_table(a, n)
    except DomainException as e:
        return [_fail("phi-isomorphism", subject, str(e))]

    results = []
    outside = [x for x in range(a.size) if block_violations(pair, table[x])]
    results.append(
        _fail("phi-image", subject, f"phi({a.label(outside[0])}) = {table[outside[0]]}")
        if outside
        else _ok("phi-image", subject)
    )
    if outside:
        return results

    positions = [m.index_of(f) for f in table]
    if len(set(positions)) != a.size:
        results.append(_fail("phi-injective", subject, "two elements share a sigma profile"))
    else:
        results.append(_ok("phi-injective", subject))
    if len(set(positions)) != m.size:
        results.append(_fail("phi-surjective", subject, f"{a.size} elements onto {m.size}"))
    else:
        results.append(_ok("phi-surjective", subject))

    broken = _first_homomorphism_failure(a, m, positions)
    results.append(
        _fail("phi-homomorphism", subject, broken) if broken else _ok("phi-homomorphism", subject)
    )

    inverse_failure = None
    for x in range(a.size):
        if phi_inverse(a, n, table[x]) != x:
            inverse_failure = f"phi_inverse(phi({a.label(x)})) != {a.label(x)}"
            break
    if inverse_failure is None:
        for y in range(m.size):
            f = m.element(y)
            if phi(a, n, phi_inverse(a, n, f)) != f:
                inverse_failure = f"phi(phi_inverse({f})) != {f}"
                break
    results.append(
        _fail("phi-inverse", subject, inverse_failure)
        if inverse_failure
        else _ok("phi-inverse", subject)
    )
    return results


def _first_homomorphism_failure(
    a: WajsbergAlgebra, m: WajsbergAlgebra, positions: Sequence[int]
) -> Optional[str]:
    if positions[a.top] != m.top:
        return "top is not preserved"
    for x in range(a.size):
        if positions[a.neg(x)] != m.neg(positions[x]):
            return f"negation at {a.label(x)}"
        for y in range(a.size):
            if positions[a.imp(x, y)] != m.imp(positions[x], positions[y]):
                return f"implication at ({a.label(x)}, {a.label(y)})"
    return None


def check_pair(p: FilterMap) -> LawResult:
    subject = p.describe()
    try:
        pair_roundtrip_check(p)
    except VerificationError as e:
        return _fail("pair-roundtrip", subject, f"{e} {e.counterexample}".strip())
    except DomainException as e:
        return _fail("pair-roundtrip", subject, str(e))
    return _ok("pair-roundtrip", subject)


def check_naturality(g: WMorphism, n: int, subject: str) -> LawResult:
    try:
        x = naturality_square(g, n)
    except DomainException as e:
        return _fail("naturality", subject, str(e))
    if x is not None:
        return _fail("naturality", subject, f"square fails at {g.source.label(x)}")
    return _ok("naturality", subject)


def equivalence_suite(samples: EquivalenceSamples) -> SuiteReport:
    """phi round trips, pair round trips and naturality squares over the samples"""
    report = SuiteReport()
    for a in samples.algebras:
        report.extend(check_phi(a, samples.n))
    for p in samples.pairs:
        report.extend([check_pair(p)])
    for k, g in enumerate(samples.morphisms):
        subject = f"{g.source.name}->{g.target.name}#{k}"
        report.extend([check_naturality(g, samples.n, subject)])
    report = report.ordered()
    logger.info(
        f"Equivalence suite: {len(report.results)} laws, {len(report.failures)} failures"
    )
    return report
