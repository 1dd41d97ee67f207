"""Finite Wajsberg algebras given by operation tables

Everything the duality needs is derived from the implication table, the
negation table and the top element: the MV operations, the Boolean skeleton,
implicative and prime filters, quotients, and the modal operators.
"""

import logging
import random
from functools import cached_property
from itertools import combinations, product
from typing import (
    Any,
    Callable,
    Dict,
    FrozenSet,
    Iterable,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
)

from pydantic import BaseModel, ConfigDict

from mvduality.config import settings
from mvduality.domain.boolalg import BoolAlg, BoolElem
from mvduality.domain.chain import ChainValue, chain_embed, chain_sigma
from mvduality.domain.exceptions import (
    EmptyPrimeFamilyError,
    ImproperFilterError,
    IndexOutOfRangeError,
    MalformedAlgebraError,
    NoEmbeddingError,
    NotNValuedError,
    NoWitnessError,
    SkeletonError,
    VerificationError,
)
from mvduality.domain.schemas import AxiomReport, AxiomViolation

logger = logging.getLogger(__name__)


class WajsbergAlgebra:
    """A finite algebra <A, ->, not, 1> on the carrier 0..size-1

    `elements` optionally carries a payload per index (chain values, tuples of
    component values, monotone tuples) used for labels and reverse lookup.
    Instances are immutable; derived structures are cached on first use.
    """

    def __init__(
        self,
        imp_table: Sequence[Sequence[int]],
        neg_table: Sequence[int],
        top: int,
        elements: Optional[Sequence[Any]] = None,
        name: str = "A",
    ):
        size = len(neg_table)
        if size < 1:
            raise MalformedAlgebraError("carrier must be non-empty")
        if len(imp_table) != size or any(len(row) != size for row in imp_table):
            raise MalformedAlgebraError(f"implication table must be {size}x{size}")
        for row in imp_table:
            for entry in row:
                if not 0 <= entry < size:
                    raise MalformedAlgebraError(f"table entry {entry} outside 0..{size - 1}")
        for entry in neg_table:
            if not 0 <= entry < size:
                raise MalformedAlgebraError(f"negation entry {entry} outside 0..{size - 1}")
        if not 0 <= top < size:
            raise MalformedAlgebraError(f"top {top} outside 0..{size - 1}")
        if elements is not None and len(elements) != size:
            raise MalformedAlgebraError(f"{len(elements)} element labels for {size} elements")

        self.size = size
        self.imp_table: Tuple[Tuple[int, ...], ...] = tuple(tuple(row) for row in imp_table)
        self.neg_table: Tuple[int, ...] = tuple(neg_table)
        self.top = top
        self.elements = tuple(elements) if elements is not None else None
        self.name = name
        self._memo: Dict[Any, Any] = {}

    def __repr__(self) -> str:
        return f"WajsbergAlgebra(name={self.name!r}, size={self.size})"

    # Constructors

    @classmethod
    def chain(cls, n: int) -> "WajsbergAlgebra":
        """L_{n+1}; index k is k/n"""
        if n < 1:
            raise IndexOutOfRangeError(f"chain length must be positive, got {n}")
        imp = [[min(n, n - x + y) for y in range(n + 1)] for x in range(n + 1)]
        neg = [n - x for x in range(n + 1)]
        elements = [ChainValue(num=k, den=n) for k in range(n + 1)]
        return cls(imp, neg, n, elements=elements, name=f"L{n + 1}")

    @classmethod
    def product(cls, *factors: "WajsbergAlgebra") -> "WajsbergAlgebra":
        """Direct product, indexed lexicographically with the first factor slowest"""
        if not factors:
            raise MalformedAlgebraError("a product needs at least one factor")
        coords = list(product(*(range(a.size) for a in factors)))
        index = {c: i for i, c in enumerate(coords)}
        imp = [
            [index[tuple(a.imp(x, y) for a, x, y in zip(factors, cx, cy))] for cy in coords]
            for cx in coords
        ]
        neg = [index[tuple(a.neg(x) for a, x in zip(factors, c))] for c in coords]
        top = index[tuple(a.top for a in factors)]
        elements = [
            tuple(a.element(x) for a, x in zip(factors, c)) for c in coords
        ]
        name = "x".join(a.name for a in factors)
        return cls(imp, neg, top, elements=elements, name=name)

    # Basic operations

    @property
    def bottom(self) -> int:
        return self.neg_table[self.top]

    def imp(self, x: int, y: int) -> int:
        return self.imp_table[x][y]

    def neg(self, x: int) -> int:
        return self.neg_table[x]

    def join(self, x: int, y: int) -> int:
        """(x -> y) -> y"""
        return self.imp_table[self.imp_table[x][y]][y]

    def meet(self, x: int, y: int) -> int:
        """not(not x or not y)"""
        neg = self.neg_table
        return neg[self.join(neg[x], neg[y])]

    def oplus(self, x: int, y: int) -> int:
        """not y -> x"""
        return self.imp_table[self.neg_table[y]][x]

    def odot(self, x: int, y: int) -> int:
        """not(x -> not y)"""
        return self.neg_table[self.imp_table[x][self.neg_table[y]]]

    def power(self, x: int, k: int) -> int:
        """x^0 = 1, x^k = x^(k-1) odot x"""
        result = self.top
        for _ in range(k):
            result = self.odot(result, x)
        return result

    def leq(self, x: int, y: int) -> bool:
        return self.imp_table[x][y] == self.top

    def join_all(self, xs: Iterable[int]) -> int:
        result = self.bottom
        for x in xs:
            result = self.join(result, x)
        return result

    def meet_all(self, xs: Iterable[int]) -> int:
        result = self.top
        for x in xs:
            result = self.meet(result, x)
        return result

    # Labels

    def element(self, x: int) -> Any:
        return self.elements[x] if self.elements is not None else x

    def label(self, x: int) -> str:
        payload = self.element(x)
        if isinstance(payload, tuple):
            return "(" + ",".join(str(p) for p in payload) + ")"
        return str(payload)

    def index_of(self, payload: Any) -> int:
        try:
            return self._index[payload]
        except KeyError:
            raise KeyError(f"{payload} is not an element of {self.name}") from None

    @cached_property
    def _index(self) -> Dict[Any, int]:
        return {self.element(x): x for x in range(self.size)}

    # Derived structures (computed once)

    @cached_property
    def idempotents(self) -> Tuple[int, ...]:
        return tuple(x for x in range(self.size) if self.odot(x, x) == x)

    @cached_property
    def skeleton(self) -> "BooleanSkeleton":
        return BooleanSkeleton(self)

    @cached_property
    def filters(self) -> Tuple["ImplicativeFilter", ...]:
        return tuple(
            ImplicativeFilter(
                generator=g,
                members=frozenset(x for x in range(self.size) if self.leq(g, x)),
            )
            for g in self.idempotents
        )

    @cached_property
    def prime_quotients(self) -> Tuple["PrimeQuotient", ...]:
        return _compute_prime_quotients(self)

    @cached_property
    def boolean_profiles(self) -> Dict[Tuple[bool, ...], int]:
        """Idempotent e keyed by (e is 1 in A/P) over the primes P"""
        profiles: Dict[Tuple[bool, ...], int] = {}
        for e in self.idempotents:
            key = tuple(pq.ranks[e] == pq.length for pq in self.prime_quotients)
            if key in profiles:
                raise VerificationError(
                    f"{self.name}: idempotents {profiles[key]} and {e} share a prime profile",
                    counterexample=f"{self.label(profiles[key])} ~ {self.label(e)}",
                )
            profiles[key] = e
        return profiles

    def memoized(self, key: Any, factory: Callable[[], Any]) -> Any:
        """Single-assignment cache for per-algebra values"""
        if key not in self._memo:
            self._memo[key] = factory()
        return self._memo[key]


class DerivedOperations(NamedTuple):
    join: Callable[[int, int], int]
    meet: Callable[[int, int], int]
    oplus: Callable[[int, int], int]
    odot: Callable[[int, int], int]
    power: Callable[[int, int], int]
    leq: Callable[[int, int], bool]


def derived_ops(a: WajsbergAlgebra) -> DerivedOperations:
    """The Kleene and MV operations computed from the implication and negation tables"""
    return DerivedOperations(a.join, a.meet, a.oplus, a.odot, a.power, a.leq)


class ImplicativeFilter(BaseModel):
    """The implicative filter {x : x >= generator} of a finite algebra"""

    model_config = ConfigDict(frozen=True)

    generator: int
    members: FrozenSet[int]

    def contains(self, x: int) -> bool:
        return x in self.members


class PrimeQuotient(BaseModel):
    """A prime filter with its quotient chain

    `projection[x]` is the class of x; `ranks[x]` is the height of that class
    in the quotient chain of `length + 1` elements.
    """

    model_config = ConfigDict(frozen=True)

    filter: ImplicativeFilter
    projection: Tuple[int, ...]
    ranks: Tuple[int, ...]
    length: int

    def value(self, x: int) -> ChainValue:
        return ChainValue(num=self.ranks[x], den=self.length)


class BooleanSkeleton:
    """B(A): the idempotents of A with their identification with a powerset

    Atoms are ordered by element index; the mask of an idempotent has bit i
    set when the i-th atom lies below it.
    """

    def __init__(self, a: WajsbergAlgebra):
        self.algebra = a
        self.elements = a.idempotents
        nonzero = [x for x in self.elements if x != a.bottom]
        self.atoms: Tuple[int, ...] = tuple(
            x for x in nonzero if not any(y != x and a.leq(y, x) for y in nonzero)
        )
        self.base = BoolAlg(atom_count=len(self.atoms))

        self._mask: Dict[int, int] = {}
        for x in self.elements:
            self._mask[x] = sum(1 << i for i, at in enumerate(self.atoms) if a.leq(at, x))
        self._element: Dict[int, int] = {m: x for x, m in self._mask.items()}
        self._verify()
        logger.debug(f"{a.name}: Boolean skeleton with {len(self.atoms)} atoms")

    def _verify(self) -> None:
        a = self.algebra
        if len(self._element) != len(self.elements) or len(self.elements) != self.base.size:
            raise SkeletonError(
                f"{a.name}: {len(self.elements)} idempotents over {len(self.atoms)} atoms",
                counterexample=",".join(a.label(x) for x in self.elements),
            )
        full = self.base.full
        for x, y in combinations(self.elements, 2):
            mx, my = self._mask[x], self._mask[y]
            if self._mask.get(a.meet(x, y)) != mx & my or self._mask.get(a.join(x, y)) != mx | my:
                raise SkeletonError(
                    f"{a.name}: idempotents not closed under meet/join",
                    counterexample=f"{a.label(x)}, {a.label(y)}",
                )
        for x in self.elements:
            if self._mask.get(a.neg(x)) != full & ~self._mask[x]:
                raise SkeletonError(
                    f"{a.name}: negation of an idempotent is not its complement",
                    counterexample=a.label(x),
                )

    def __contains__(self, x: int) -> bool:
        return x in self._mask

    def to_mask(self, x: int) -> int:
        try:
            return self._mask[x]
        except KeyError:
            raise SkeletonError(
                f"{self.algebra.label(x)} is not idempotent in {self.algebra.name}"
            ) from None

    def to_bool(self, x: int) -> BoolElem:
        return self.base.elem(self.to_mask(x))

    def from_mask(self, mask: int) -> int:
        return self._element[mask]

    def from_bool(self, e: BoolElem) -> int:
        if not self.base.owns(e):
            raise SkeletonError(f"{e} is not an element of the skeleton of {self.algebra.name}")
        return self.from_mask(e.mask)


def boolean_skeleton(a: WajsbergAlgebra) -> BooleanSkeleton:
    return a.skeleton


def check_axioms(
    a: WajsbergAlgebra,
    seed: Optional[int] = None,
    exhaustive_limit: Optional[int] = None,
    samples: Optional[int] = None,
    max_violations: int = 50,
) -> AxiomReport:
    """Scan the four Wajsberg identities

    The one- and two-variable identities are always checked on every tuple;
    the three-variable identity is exhaustive while size**3 stays within
    `exhaustive_limit` and sampled otherwise.
    """
    if exhaustive_limit is None:
        exhaustive_limit = settings.exhaustive_triple_limit
    samples = settings.random_triple_samples if samples is None else samples
    seed = settings.default_seed if seed is None else seed
    imp, neg, top, size = a.imp_table, a.neg_table, a.top, a.size
    violations: List[AxiomViolation] = []

    def record(identity: int, *witness: int) -> bool:
        violations.append(AxiomViolation(identity=identity, witness=witness))
        return len(violations) >= max_violations

    for x in range(size):
        if imp[top][x] != x and record(1, x):
            return AxiomReport(size=size, exhaustive=False, triples_checked=0, violations=violations)

    for x in range(size):
        for y in range(size):
            xy = imp[x][y]
            if imp[xy][y] != imp[imp[y][x]][x] and record(3, x, y):
                return AxiomReport(size=size, exhaustive=False, triples_checked=0, violations=violations)
            if imp[imp[neg[y]][neg[x]]][xy] != top and record(4, x, y):
                return AxiomReport(size=size, exhaustive=False, triples_checked=0, violations=violations)

    exhaustive = size**3 <= exhaustive_limit
    if exhaustive:
        triples: Iterable[Tuple[int, int, int]] = product(range(size), repeat=3)
    else:
        rng = random.Random(seed)
        triples = (
            (rng.randrange(size), rng.randrange(size), rng.randrange(size))
            for _ in range(samples)
        )

    checked = 0
    for x, y, z in triples:
        checked += 1
        if imp[imp[x][y]][imp[imp[y][z]][imp[x][z]]] != top and record(2, x, y, z):
            break

    logger.info(
        f"Axiom scan of {a.name} ({size} elements, {checked} triples, "
        f"{'exhaustive' if exhaustive else 'sampled'}): {len(violations)} violations"
    )
    return AxiomReport(size=size, exhaustive=exhaustive, triples_checked=checked, violations=violations)


def implicative_filters(a: WajsbergAlgebra) -> List[ImplicativeFilter]:
    """One filter per idempotent generator, ordered by generator index"""
    return list(a.filters)


def brute_force_filters(a: WajsbergAlgebra) -> List[FrozenSet[int]]:
    """Every subset containing top and closed under modus ponens

    Exponential; meant for carriers of at most eight elements.
    """
    others = [x for x in range(a.size) if x != a.top]
    found = []
    for r in range(len(others) + 1):
        for extra in combinations(others, r):
            candidate = frozenset(extra) | {a.top}
            if all(
                y in candidate
                for x in candidate
                for y in range(a.size)
                if a.imp(x, y) in candidate
            ):
                found.append(candidate)
    return found


def quotient(a: WajsbergAlgebra, f: ImplicativeFilter) -> Tuple[WajsbergAlgebra, Tuple[int, ...]]:
    """A/F with classes ordered by their least member, and the projection"""
    if a.bottom in f.members:
        raise ImproperFilterError(f"the improper filter of {a.name} has a trivial quotient")
    members = f.members
    reps: List[int] = []
    projection: List[int] = []
    for x in range(a.size):
        for c, r in enumerate(reps):
            if a.imp(x, r) in members and a.imp(r, x) in members:
                projection.append(c)
                break
        else:
            projection.append(len(reps))
            reps.append(x)
    imp = [[projection[a.imp(r, s)] for s in reps] for r in reps]
    neg = [projection[a.neg(r)] for r in reps]
    q = WajsbergAlgebra(
        imp,
        neg,
        projection[a.top],
        elements=[a.element(r) for r in reps],
        name=f"{a.name}/{a.label(f.generator)}",
    )
    return q, tuple(projection)


def is_chain(a: WajsbergAlgebra) -> bool:
    return all(a.leq(x, y) or a.leq(y, x) for x, y in combinations(range(a.size), 2))


def chain_coordinates(a: WajsbergAlgebra) -> Tuple[ChainValue, ...]:
    """Identify a chain algebra with L_{c+1} by rank order"""
    ranks, length = _chain_ranks(a)
    return tuple(ChainValue(num=r, den=length) for r in ranks)


def _chain_ranks(a: WajsbergAlgebra) -> Tuple[Tuple[int, ...], int]:
    length = a.size - 1
    ranks = tuple(sum(1 for y in range(a.size) if y != x and a.leq(y, x)) for x in range(a.size))
    if length == 0 or sorted(ranks) != list(range(a.size)):
        raise VerificationError(f"{a.name} is not a non-trivial chain")
    for x in range(a.size):
        for y in range(a.size):
            if ranks[a.imp(x, y)] != min(length, length - ranks[x] + ranks[y]):
                raise VerificationError(
                    f"{a.name} is a chain but not a Lukasiewicz chain",
                    counterexample=f"{a.label(x)} -> {a.label(y)}",
                )
    return ranks, length


def _compute_prime_quotients(a: WajsbergAlgebra) -> Tuple[PrimeQuotient, ...]:
    primes = []
    for f in a.filters:
        if a.bottom in f.members:
            continue
        q, projection = quotient(a, f)
        if not is_chain(q):
            continue
        class_ranks, length = _chain_ranks(q)
        primes.append(
            PrimeQuotient(
                filter=f,
                projection=projection,
                ranks=tuple(class_ranks[c] for c in projection),
                length=length,
            )
        )
    logger.debug(
        f"{a.name}: {len(primes)} prime filters with quotient lengths "
        f"{[pq.length for pq in primes]}"
    )
    return tuple(primes)


def prime_filters(a: WajsbergAlgebra) -> List[ImplicativeFilter]:
    """Proper implicative filters whose quotient is totally ordered"""
    return [pq.filter for pq in a.prime_quotients]


def check_n_valued(a: WajsbergAlgebra, n: int) -> None:
    """Raise unless every prime quotient embeds in L_{n+1}"""
    if n < 1:
        raise IndexOutOfRangeError(f"n must be positive, got {n}")
    for pq in a.prime_quotients:
        if n % pq.length:
            raise NotNValuedError(
                f"{a.name} has a prime quotient L_{pq.length + 1}, "
                f"which does not embed in L_{n + 1}"
            )


def valuation(a: WajsbergAlgebra, n: int, x: int) -> Tuple[ChainValue, ...]:
    """The images of x in every prime quotient, read inside L_{n+1}"""
    try:
        return tuple(chain_embed(pq.value(x), n) for pq in a.prime_quotients)
    except NoEmbeddingError as e:
        raise NotNValuedError(f"{a.name} is not {n + 1}-valued: {e}") from e


def subdirect_injective(a: WajsbergAlgebra) -> bool:
    """x -> ([x]_P)_P separates elements"""
    profiles = {tuple(pq.ranks[x] for pq in a.prime_quotients) for x in range(a.size)}
    return len(profiles) == a.size


def _check_divisor(n: int, d: int) -> None:
    if d < 1 or n % d:
        raise IndexOutOfRangeError(f"{d} is not a divisor of {n}")


def chi_d(a: WajsbergAlgebra, n: int, d: int) -> List[ImplicativeFilter]:
    """Primes whose quotient is exactly L_{d+1}"""
    _check_divisor(n, d)
    check_n_valued(a, n)
    return [pq.filter for pq in a.prime_quotients if pq.length == d]


def sigma_op(a: WajsbergAlgebra, n: int, i: int, x: int) -> int:
    """The idempotent that is sigma_i([x]_P) in every prime quotient"""
    if not 1 <= i <= n:
        raise IndexOutOfRangeError(f"sigma index {i} outside 1..{n}")
    values = valuation(a, n, x)
    profile = tuple(chain_sigma(i, v).num == n for v in values)
    try:
        return a.boolean_profiles[profile]
    except KeyError:
        raise NotNValuedError(
            f"{a.name}: no idempotent realises sigma_{i}({a.label(x)})"
        ) from None


def find_xd(a: WajsbergAlgebra, n: int, d: int) -> int:
    """Least-index x with [x]_P = (d-1)/d for every P in chi_d"""
    family = [pq for pq in a.prime_quotients if pq.length == d]
    if not chi_d(a, n, d):
        raise EmptyPrimeFamilyError(f"{a.name} has no quotient L_{d + 1}")
    for x in range(a.size):
        if all(pq.ranks[x] == d - 1 for pq in family):
            return x
    raise NoWitnessError(f"{a.name}: no element is {d - 1}/{d} on every L_{d + 1} quotient")


def build_yd(a: WajsbergAlgebra, n: int, d: int) -> int:
    """Top when chi_d is empty, else x_d or not x_d^(d-1)"""

    def compute() -> int:
        if not chi_d(a, n, d):
            return a.top
        x = find_xd(a, n, d)
        return a.join(x, a.neg(a.power(x, d - 1)))

    return a.memoized(("y", n, d), compute)


def yd_bound_violations(a: WajsbergAlgebra, n: int) -> List[Tuple[int, int, int]]:
    """(x, d, prime index) where the image of x or not x^(d-1) drops below (d-1)/d"""
    check_n_valued(a, n)
    failures = []
    for d in (d for d in range(1, n + 1) if n % d == 0):
        for x in range(a.size):
            y = a.join(x, a.neg(a.power(x, d - 1)))
            for p, v in enumerate(valuation(a, n, y)):
                if v.num * d < (d - 1) * n:
                    failures.append((x, d, p))
    return failures
