"""Finite valued Boolean spaces and the translation of M(B, h) into valued maps

A finite Stone space is discrete, so its points are the atoms of B, closed
sets are arbitrary point sets and every function is continuous.
"""

import logging
from itertools import product
from math import gcd
from typing import Dict, FrozenSet, Iterator, List, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from mvduality.domain.boolalg import from_stone_basis, stone_basis, ultrafilters
from mvduality.domain.chain import ChainValue, chain_imp, chain_neg
from mvduality.domain.exceptions import (
    IncompatibleChainsError,
    InvalidObjectError,
    MalformedFilterMapError,
    ValuedMapError,
)
from mvduality.domain.pairs import (
    FilterMap,
    MonotoneTuple,
    divisors_of,
    require_member,
    require_object,
)

logger = logging.getLogger(__name__)


class ValuedBooleanSpace(BaseModel):
    """Points 0..point_count-1 with a closed set for every divisor of n"""

    model_config = ConfigDict(frozen=True)

    point_count: int
    n: int
    closed: Dict[int, FrozenSet[int]]

    @model_validator(mode="after")
    def _check_meet_homomorphism(self) -> "ValuedBooleanSpace":
        divisors = divisors_of(self.n)
        if set(self.closed) != set(divisors):
            raise MalformedFilterMapError(f"closed sets must be indexed by Div({self.n})")
        points = frozenset(range(self.point_count))
        for d, s in self.closed.items():
            if not s <= points:
                raise InvalidObjectError(f"closed set for {d} has unknown points {sorted(s - points)}")
        if self.closed[self.n] != points:
            raise InvalidObjectError(f"the closed set for {self.n} must be the whole space")
        for i, d in enumerate(divisors):
            for r in divisors[i + 1:]:
                if self.closed[gcd(d, r)] != self.closed[d] & self.closed[r]:
                    raise InvalidObjectError(
                        f"closed set for gcd({d},{r}) is not the intersection of theirs"
                    )
        return self

    @property
    def points(self) -> range:
        return range(self.point_count)

    def filter_map(self) -> FilterMap:
        """The filter map this space comes from (inverse of space_of)"""
        return FilterMap.from_generators(
            self.point_count,
            self.n,
            {d: from_stone_basis(s, self.point_count).mask for d, s in self.closed.items()},
        )


class ValuedMap(BaseModel):
    """A function from the points into L_{n+1}"""

    model_config = ConfigDict(frozen=True)

    n: int
    values: Tuple[ChainValue, ...]

    @model_validator(mode="after")
    def _check_chain(self) -> "ValuedMap":
        for point, v in enumerate(self.values):
            if v.den != self.n:
                raise IncompatibleChainsError(f"value {v} at point {point} is not in L_{self.n + 1}")
        return self

    def at(self, point: int) -> ChainValue:
        return self.values[point]


def space_of(p: FilterMap) -> ValuedBooleanSpace:
    """Ultrafilters of the base with h_top(d) the ultrafilters containing h(d)"""
    require_object(p)
    return ValuedBooleanSpace(
        point_count=len(ultrafilters(p.base)),
        n=p.n,
        closed={d: stone_basis(p.h[d].generator) for d in p.divisors},
    )


def check_valued_map(space: ValuedBooleanSpace, f: ValuedMap) -> None:
    """Raise unless f sends h_top(d) into L_{d+1} for every d"""
    if f.n != space.n or len(f.values) != space.point_count:
        raise ValuedMapError(
            f"map has {len(f.values)} values in L_{f.n + 1}; the space has "
            f"{space.point_count} points over n={space.n}",
            point=-1,
            divisor=space.n,
        )
    for d in divisors_of(space.n):
        step = space.n // d
        for point in sorted(space.closed[d]):
            if f.values[point].num % step:
                raise ValuedMapError(
                    f"value {f.values[point]} at point {point} is outside L_{d + 1}",
                    point=point,
                    divisor=d,
                )


def is_valued_map(space: ValuedBooleanSpace, f: ValuedMap) -> bool:
    try:
        check_valued_map(space, f)
    except ValuedMapError:
        return False
    return True


def psi(space: ValuedBooleanSpace, g: MonotoneTuple) -> ValuedMap:
    """The map that is 1 on s(g(1)), k/n on s(g(n-k+1)) minus s(g(n-k)), 0 off s(g(n))"""
    require_member(space.filter_map(), g)
    n = space.n
    layers = [stone_basis(g.at(i)) for i in range(1, n + 1)]
    values: List[ChainValue] = []
    for point in space.points:
        if point in layers[0]:
            values.append(ChainValue(num=n, den=n))
        elif point not in layers[n - 1]:
            values.append(ChainValue(num=0, den=n))
        else:
            k = next(k for k in range(1, n) if point in layers[n - k] and point not in layers[n - k - 1])
            values.append(ChainValue(num=k, den=n))
    result = ValuedMap(n=n, values=tuple(values))
    check_valued_map(space, result)
    return result


def psi_inverse(space: ValuedBooleanSpace, f: ValuedMap) -> MonotoneTuple:
    """(a_1, ..., a_n) with s(a_j) the points valued at least (n-j+1)/n"""
    check_valued_map(space, f)
    n = space.n
    entries = tuple(
        from_stone_basis(
            frozenset(p for p in space.points if f.values[p].num >= n - j + 1),
            space.point_count,
        ).mask
        for j in range(1, n + 1)
    )
    g = MonotoneTuple(atom_count=space.point_count, entries=entries)
    require_member(space.filter_map(), g)
    return g


def valued_maps(space: ValuedBooleanSpace) -> Iterator[ValuedMap]:
    """Every valued map, point 0 varying fastest"""
    n = space.n
    allowed: List[List[int]] = []
    for point in space.points:
        steps = [n // d for d in divisors_of(n) if point in space.closed[d]]
        allowed.append([k for k in range(n + 1) if all(k % s == 0 for s in steps)])
    for nums in product(*reversed(allowed)):
        yield ValuedMap(n=n, values=tuple(ChainValue(num=k, den=n) for k in reversed(nums)))


def pointwise_imp(f: ValuedMap, g: ValuedMap) -> ValuedMap:
    return ValuedMap(n=f.n, values=tuple(chain_imp(x, y) for x, y in zip(f.values, g.values)))


def pointwise_neg(f: ValuedMap) -> ValuedMap:
    return ValuedMap(n=f.n, values=tuple(chain_neg(x) for x in f.values))
