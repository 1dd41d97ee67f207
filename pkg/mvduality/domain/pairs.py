"""Filtered Boolean algebras <B, h> and the tuple algebras B^[n] and M(B, h)

An element of B^[n] is a monotone sequence f(1) <= ... <= f(n) of atom masks.
Enumeration is atom-wise: atom a contributes a threshold k_a in 0..n (the
number of indices whose entry contains a) and the element index is
sum(k_a * (n+1)**a), which fixes a reproducible order.
"""

import logging
from math import gcd
from typing import Dict, List, Mapping, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from mvduality.domain.boolalg import BoolAlg, BoolElem, Filter, bool_imp, filter_join
from mvduality.domain.chain import ChainValue
from mvduality.domain.exceptions import (
    ClosureError,
    IndexOutOfRangeError,
    InvalidObjectError,
    MalformedFilterMapError,
    NotInSubalgebraError,
)
from mvduality.domain.schemas import ObjectReport, ObjectViolation
from mvduality.domain.wajsberg import WajsbergAlgebra

logger = logging.getLogger(__name__)


def divisors_of(n: int) -> Tuple[int, ...]:
    if n < 1:
        raise IndexOutOfRangeError(f"n must be positive, got {n}")
    return tuple(d for d in range(1, n + 1) if n % d == 0)


class DivisorSet(BaseModel):
    """Div(n), closed under gcd"""

    model_config = ConfigDict(frozen=True)

    n: int

    @model_validator(mode="after")
    def _check_n(self) -> "DivisorSet":
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        return self

    @property
    def divisors(self) -> Tuple[int, ...]:
        return divisors_of(self.n)

    def __iter__(self):
        return iter(self.divisors)

    def __contains__(self, d: object) -> bool:
        return d in self.divisors


class MonotoneTuple(BaseModel):
    """f(1) <= ... <= f(n) over a Boolean algebra with `atom_count` atoms"""

    model_config = ConfigDict(frozen=True)

    atom_count: int
    entries: Tuple[int, ...]

    @model_validator(mode="after")
    def _check_monotone(self) -> "MonotoneTuple":
        full = (1 << self.atom_count) - 1
        if not self.entries:
            raise ValueError("a monotone tuple needs at least one entry")
        for i, mask in enumerate(self.entries):
            if mask & ~full:
                raise ValueError(f"entry {i + 1} exceeds {self.atom_count} atoms")
        for i in range(len(self.entries) - 1):
            if self.entries[i] & ~self.entries[i + 1]:
                raise ValueError(f"entry {i + 1} is not below entry {i + 2}")
        return self

    @property
    def n(self) -> int:
        return len(self.entries)

    def at(self, i: int) -> BoolElem:
        """f(i), 1-based"""
        if not 1 <= i <= self.n:
            raise IndexOutOfRangeError(f"index {i} outside 1..{self.n}")
        return BoolElem(atom_count=self.atom_count, mask=self.entries[i - 1])

    def __str__(self) -> str:
        return "[" + ",".join(str(self.at(i)) for i in range(1, self.n + 1)) + "]"


class FilterMap(BaseModel):
    """An object <B, h>: a filter of `base` for every divisor of n"""

    model_config = ConfigDict(frozen=True)

    base: BoolAlg
    n: int
    h: Dict[int, Filter]

    @model_validator(mode="after")
    def _check_domain(self) -> "FilterMap":
        divisors = set(divisors_of(self.n))
        if set(self.h) != divisors:
            extra = sorted(set(self.h) - divisors)
            missing = sorted(divisors - set(self.h))
            raise MalformedFilterMapError(
                f"h must be defined exactly on Div({self.n}); "
                f"non-divisors {extra}, missing {missing}"
            )
        for d, f in self.h.items():
            if f.atom_count != self.base.atom_count:
                raise MalformedFilterMapError(f"h({d}) lives in another Boolean algebra")
        return self

    @classmethod
    def from_generators(cls, atom_count: int, n: int, generators: Mapping[int, int]) -> "FilterMap":
        base = BoolAlg(atom_count=atom_count)
        return cls(
            base=base,
            n=n,
            h={d: Filter(generator=base.elem(g)) for d, g in generators.items()},
        )

    @property
    def divisors(self) -> Tuple[int, ...]:
        return divisors_of(self.n)

    def generator(self, d: int) -> int:
        return self.h[d].generator.mask

    def describe(self) -> str:
        """Compact id without spaces, e.g. `n=2;atoms=2;h(1)={0};h(2)={0,1}`"""
        return f"n={self.n};atoms={self.base.atom_count};" + ";".join(
            f"h({d})={self.h[d].generator}" for d in self.divisors
        )


def q_index(d: int, j: int, n: int) -> int:
    """Least q in 1..d with j <= q*n/d: the d-block holding j"""
    if d < 1 or n % d:
        raise IndexOutOfRangeError(f"{d} is not a divisor of {n}")
    if not 1 <= j <= n:
        raise IndexOutOfRangeError(f"index {j} outside 1..{n}")
    width = n // d
    return -(-j // width)


def _xi_mask(entries: Sequence[int], full: int, d: int, q: int) -> int:
    width = len(entries) // d
    top_entry = entries[q * width - 1]
    bottom_entry = entries[(q - 1) * width]
    return (full & ~top_entry) | bottom_entry


def xi(d: int, q: int, f: MonotoneTuple) -> BoolElem:
    """f(q*n/d) -> f((q-1)*n/d + 1)"""
    n = f.n
    if d < 1 or n % d:
        raise IndexOutOfRangeError(f"{d} is not a divisor of {n}")
    if not 1 <= q <= d:
        raise IndexOutOfRangeError(f"block {q} outside 1..{d}")
    width = n // d
    return bool_imp(f.at(q * width), f.at((q - 1) * width + 1))


def block_violations(p: FilterMap, f: MonotoneTuple) -> List[Tuple[int, int]]:
    """The (d, q) with xi_{d,q}(f) outside h(d)"""
    full = p.base.full
    violations = []
    for d in p.divisors:
        g = p.generator(d)
        for q in range(1, d + 1):
            if g & ~_xi_mask(f.entries, full, d, q):
                violations.append((d, q))
    return violations


def in_subalgebra(p: FilterMap, f: MonotoneTuple) -> bool:
    return f.atom_count == p.base.atom_count and f.n == p.n and not block_violations(p, f)


def require_member(p: FilterMap, f: MonotoneTuple) -> None:
    if f.atom_count != p.base.atom_count or f.n != p.n:
        raise NotInSubalgebraError(
            f"{f} is not a tuple of length {p.n} over {p.base.atom_count} atoms"
        )
    violations = block_violations(p, f)
    if violations:
        raise NotInSubalgebraError(
            f"{f} is outside M(B,h): block conditions {violations} fail", violations
        )


def tuple_from_thresholds(thresholds: Sequence[int], n: int) -> MonotoneTuple:
    """Atom a lies in f(i) exactly when i >= n + 1 - thresholds[a]"""
    entries = tuple(
        sum(1 << a for a, k in enumerate(thresholds) if i >= n + 1 - k)
        for i in range(1, n + 1)
    )
    return MonotoneTuple(atom_count=len(thresholds), entries=entries)


def atom_values(f: MonotoneTuple) -> Tuple[ChainValue, ...]:
    """Per atom, the number of entries containing it over n"""
    return tuple(
        ChainValue(num=sum(1 for mask in f.entries if mask >> a & 1), den=f.n)
        for a in range(f.atom_count)
    )


def post_constant(b: BoolAlg, n: int, k: int) -> MonotoneTuple:
    """c_k(i) = 1 iff i >= n + 1 - k"""
    if not 0 <= k <= n:
        raise IndexOutOfRangeError(f"constant index {k} outside 0..{n}")
    return tuple_from_thresholds([k] * b.atom_count, n)


def post_sigma(f: MonotoneTuple, i: int) -> MonotoneTuple:
    """sigma_i(f)(j) = f(i)"""
    value = f.at(i).mask
    return MonotoneTuple(atom_count=f.atom_count, entries=(value,) * f.n)


def _all_thresholds(m: int, n: int) -> List[Tuple[int, ...]]:
    base = n + 1
    return [tuple(index // base**a % base for a in range(m)) for index in range(base**m)]


def _tuple_algebra(
    tuples: Sequence[MonotoneTuple], full: int, n: int, name: str
) -> WajsbergAlgebra:
    """Wajsberg algebra on a list of tuples closed under the operations"""
    index: Dict[Tuple[int, ...], int] = {t.entries: i for i, t in enumerate(tuples)}
    rows = [t.entries for t in tuples]
    neg_entries = [tuple(full & ~f[n - 1 - k] for k in range(n)) for f in rows]
    imp_table = []
    for f in rows:
        not_f = [full & ~x for x in f]
        row = []
        for g in rows:
            # (f => g)(k) = meet over i of (f(i) -> g(i+k-1))
            result = []
            for k in range(1, n + 1):
                acc = full
                for i in range(n - k + 1):
                    acc &= not_f[i] | g[i + k - 1]
                result.append(acc)
            key = tuple(result)
            if key not in index:
                raise ClosureError(
                    f"{name} is not closed under implication",
                    counterexample=f"{rows.index(f)} => {rows.index(g)}",
                )
            row.append(index[key])
        imp_table.append(row)
    neg_table = []
    for x, entries in enumerate(neg_entries):
        if entries not in index:
            raise ClosureError(f"{name} is not closed under negation", counterexample=str(x))
        neg_table.append(index[entries])
    top = index.get((full,) * n)
    if top is None:
        raise ClosureError(f"{name} does not contain the top tuple")
    return WajsbergAlgebra(imp_table, neg_table, top, elements=tuples, name=name)


def build_bn(b: BoolAlg, n: int) -> WajsbergAlgebra:
    """B^[n] with the displayed implication and negation"""
    if n < 1:
        raise IndexOutOfRangeError(f"n must be positive, got {n}")
    tuples = [tuple_from_thresholds(t, n) for t in _all_thresholds(b.atom_count, n)]
    algebra = _tuple_algebra(tuples, b.full, n, name=f"2^{b.atom_count}[{n}]")
    logger.info(f"Built {algebra.name} with {algebra.size} elements")
    return algebra


def check_object(p: FilterMap) -> ObjectReport:
    """h(n) = {1} and h(gcd(d, r)) = h(d) v h(r), on generators"""
    report = ObjectReport(n=p.n)
    if not p.h[p.n].is_trivial:
        report.violations.append(
            ObjectViolation(message=f"h({p.n}) = {p.h[p.n]} is not {{1}}")
        )
    divisors = p.divisors
    for i, d in enumerate(divisors):
        for r in divisors[i + 1:]:
            expected = filter_join(p.h[d], p.h[r])
            actual = p.h[gcd(d, r)]
            if actual != expected:
                report.violations.append(
                    ObjectViolation(
                        pair=(d, r),
                        message=f"h(gcd({d},{r})) = {actual}, expected {expected}",
                    )
                )
    return report


def require_object(p: FilterMap) -> None:
    report = check_object(p)
    if not report.ok:
        raise InvalidObjectError(
            "invalid filter map: " + "; ".join(v.message for v in report.violations)
        )


def is_post_object(p: FilterMap) -> bool:
    """h(d) = B for every d != n"""
    return all(p.h[d].is_improper for d in p.divisors if d != p.n)


def build_m(p: FilterMap) -> WajsbergAlgebra:
    """M(B, h): tuples of B^[n] whose every block condition lands in h(d)

    Closure under => and negation is re-checked while the tables are built.
    Of the constants only c_0 and c_n are required; c_k for 0 < k < n may
    fall outside.
    """
    require_object(p)
    n, b = p.n, p.base
    tuples = [
        f
        for f in (tuple_from_thresholds(t, n) for t in _all_thresholds(b.atom_count, n))
        if not block_violations(p, f)
    ]
    algebra = _tuple_algebra(tuples, b.full, n, name=f"M({p.describe()})")
    members = {t.entries for t in tuples}
    for k in (0, n):
        if post_constant(b, n, k).entries not in members:
            raise ClosureError(f"{algebra.name} misses the constant c_{k}")
    logger.info(f"Built M(B,h) with {algebra.size} elements for {p.describe()}")
    return algebra
