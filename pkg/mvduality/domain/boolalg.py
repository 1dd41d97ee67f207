"""Finite Boolean algebras as powersets of atoms

An element is a bitmask over the atoms 0..m-1. Every filter of a finite
Boolean algebra is principal, so a filter is stored by its generator.
"""

import logging
from itertools import combinations
from typing import FrozenSet, Iterator, List

from pydantic import BaseModel, ConfigDict, model_validator

from mvduality.domain.exceptions import AlgebraMismatchError, ParseError

logger = logging.getLogger(__name__)


class BoolElem(BaseModel):
    """Element of the Boolean algebra with `atom_count` atoms"""

    model_config = ConfigDict(frozen=True)

    atom_count: int
    mask: int

    @model_validator(mode="after")
    def _check_mask(self) -> "BoolElem":
        if self.atom_count < 0:
            raise ValueError("atom count must be non-negative")
        if not 0 <= self.mask < (1 << self.atom_count):
            raise ValueError(f"mask {self.mask:#b} exceeds {self.atom_count} atoms")
        return self

    @property
    def atoms(self) -> FrozenSet[int]:
        return frozenset(i for i in range(self.atom_count) if self.mask >> i & 1)

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in sorted(self.atoms)) + "}"

    @classmethod
    def parse(cls, text: str, atom_count: int) -> "BoolElem":
        """Parse the `{0,2}` form"""
        body = text.strip()
        if not (body.startswith("{") and body.endswith("}")):
            raise ParseError(f"not an atom set: {text!r}")
        inner = body[1:-1].strip()
        mask = 0
        if inner:
            try:
                for part in inner.split(","):
                    atom = int(part)
                    if not 0 <= atom < atom_count:
                        raise ParseError(f"atom {atom} outside 0..{atom_count - 1}")
                    mask |= 1 << atom
            except ValueError as e:
                raise ParseError(f"not an atom set: {text!r}") from e
        return cls(atom_count=atom_count, mask=mask)


class BoolAlg(BaseModel):
    """The powerset algebra of {0, ..., atom_count-1}"""

    model_config = ConfigDict(frozen=True)

    atom_count: int

    @model_validator(mode="after")
    def _check_count(self) -> "BoolAlg":
        if self.atom_count < 0:
            raise ValueError("atom count must be non-negative")
        return self

    @property
    def full(self) -> int:
        return (1 << self.atom_count) - 1

    @property
    def size(self) -> int:
        return 1 << self.atom_count

    @property
    def top(self) -> BoolElem:
        return self.elem(self.full)

    @property
    def bottom(self) -> BoolElem:
        return self.elem(0)

    def elem(self, mask: int) -> BoolElem:
        return BoolElem(atom_count=self.atom_count, mask=mask)

    def atom(self, i: int) -> BoolElem:
        return self.elem(1 << i)

    def elements(self) -> Iterator[BoolElem]:
        for mask in range(self.size):
            yield self.elem(mask)

    def owns(self, x: BoolElem) -> bool:
        return x.atom_count == self.atom_count

    def meet(self, x: BoolElem, y: BoolElem) -> BoolElem:
        return bool_meet(self._own(x), self._own(y))

    def join(self, x: BoolElem, y: BoolElem) -> BoolElem:
        return bool_join(self._own(x), self._own(y))

    def compl(self, x: BoolElem) -> BoolElem:
        return bool_compl(self._own(x))

    def leq(self, x: BoolElem, y: BoolElem) -> bool:
        return bool_leq(self._own(x), self._own(y))

    def imp(self, x: BoolElem, y: BoolElem) -> BoolElem:
        return bool_imp(self._own(x), self._own(y))

    def _own(self, x: BoolElem) -> BoolElem:
        if not self.owns(x):
            raise AlgebraMismatchError(
                f"{x} belongs to a {x.atom_count}-atom algebra, not {self.atom_count}"
            )
        return x


class Filter(BaseModel):
    """The principal filter {x : x >= generator}"""

    model_config = ConfigDict(frozen=True)

    generator: BoolElem

    @property
    def atom_count(self) -> int:
        return self.generator.atom_count

    @property
    def is_trivial(self) -> bool:
        """True for {1}"""
        return self.generator.mask == (1 << self.atom_count) - 1

    @property
    def is_improper(self) -> bool:
        """True for the whole algebra"""
        return self.generator.mask == 0

    def contains(self, x: BoolElem) -> bool:
        return bool_leq(self.generator, x)

    def __str__(self) -> str:
        return f"up{self.generator}"


def _check_same(x: BoolElem, y: BoolElem) -> None:
    if x.atom_count != y.atom_count:
        raise AlgebraMismatchError(
            f"{x} and {y} live in algebras with {x.atom_count} and {y.atom_count} atoms"
        )


def bool_meet(x: BoolElem, y: BoolElem) -> BoolElem:
    _check_same(x, y)
    return BoolElem(atom_count=x.atom_count, mask=x.mask & y.mask)


def bool_join(x: BoolElem, y: BoolElem) -> BoolElem:
    _check_same(x, y)
    return BoolElem(atom_count=x.atom_count, mask=x.mask | y.mask)


def bool_compl(x: BoolElem) -> BoolElem:
    full = (1 << x.atom_count) - 1
    return BoolElem(atom_count=x.atom_count, mask=full & ~x.mask)


def bool_leq(x: BoolElem, y: BoolElem) -> bool:
    _check_same(x, y)
    return x.mask & ~y.mask == 0


def bool_imp(x: BoolElem, y: BoolElem) -> BoolElem:
    """x -> y = not x or y"""
    return bool_join(bool_compl(x), y)


def filter_join(f: Filter, g: Filter) -> Filter:
    """Join in the filter lattice; its generator is the meet of the generators"""
    return Filter(generator=bool_meet(f.generator, g.generator))


def ultrafilters(b: BoolAlg) -> List[Filter]:
    """The ultrafilters, one per atom, in atom order"""
    return [Filter(generator=b.atom(i)) for i in range(b.atom_count)]


def stone_basis(a: BoolElem) -> FrozenSet[int]:
    """Indices of the ultrafilters containing a"""
    return a.atoms


def from_stone_basis(points: FrozenSet[int], atom_count: int) -> BoolElem:
    """Inverse of stone_basis"""
    mask = 0
    for i in points:
        mask |= 1 << i
    return BoolElem(atom_count=atom_count, mask=mask)


def brute_force_filters(b: BoolAlg) -> List[FrozenSet[int]]:
    """Every upward-closed, meet-closed subset containing top, as mask sets

    Exponential in 2^m; meant for m <= 4.
    """
    masks = range(b.size)
    found = []
    others = [x for x in masks if x != b.full]
    for r in range(len(others) + 1):
        for extra in combinations(others, r):
            candidate = frozenset(extra) | {b.full}
            if _is_filter(candidate, b.size):
                found.append(candidate)
    logger.debug(f"Brute force found {len(found)} filters on {b.atom_count} atoms")
    return found


def brute_force_ultrafilters(b: BoolAlg) -> List[FrozenSet[int]]:
    """Maximal proper filters among brute_force_filters"""
    proper = [f for f in brute_force_filters(b) if 0 not in f]
    return [f for f in proper if not any(f < g for g in proper)]


def _is_filter(subset: FrozenSet[int], size: int) -> bool:
    for x in subset:
        for y in range(size):
            if x & ~y == 0 and y not in subset:
                return False
        for y in subset:
            if x & y not in subset:
                return False
    return True
