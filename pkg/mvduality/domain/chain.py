"""Finite Lukasiewicz chains L_{n+1}

Values are exact integer pairs num/den; nothing here touches floating point.
"""

from typing import List

from pydantic import BaseModel, ConfigDict, model_validator

from mvduality.domain.exceptions import (
    IncompatibleChainsError,
    IndexOutOfRangeError,
    NoEmbeddingError,
    ParseError,
)


class ChainValue(BaseModel):
    """The element num/den of L_{den+1}"""

    model_config = ConfigDict(frozen=True)

    num: int
    den: int

    @model_validator(mode="after")
    def _check_range(self) -> "ChainValue":
        if self.den < 1:
            raise ValueError(f"denominator must be positive, got {self.den}")
        if not 0 <= self.num <= self.den:
            raise ValueError(f"numerator {self.num} outside 0..{self.den}")
        return self

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"

    @classmethod
    def parse(cls, text: str) -> "ChainValue":
        """Parse the `k/n` form"""
        try:
            num, den = (int(part) for part in text.strip().split("/"))
            return cls(num=num, den=den)
        except ValueError as e:
            raise ParseError(f"not a chain value: {text!r}") from e

    @property
    def is_boolean(self) -> bool:
        return self.num in (0, self.den)


def _same_chain(x: ChainValue, y: ChainValue) -> int:
    if x.den != y.den:
        raise IncompatibleChainsError(
            f"cannot combine {x} and {y}: chains L_{x.den + 1} and L_{y.den + 1}"
        )
    return x.den


def chain_elements(n: int) -> List[ChainValue]:
    """All of L_{n+1} in increasing order"""
    return [ChainValue(num=k, den=n) for k in range(n + 1)]


def chain_imp(x: ChainValue, y: ChainValue) -> ChainValue:
    """x -> y = min(1, 1 - x + y)"""
    n = _same_chain(x, y)
    return ChainValue(num=min(n, n - x.num + y.num), den=n)


def chain_neg(x: ChainValue) -> ChainValue:
    return ChainValue(num=x.den - x.num, den=x.den)


def chain_sigma(j: int, x: ChainValue) -> ChainValue:
    """j-th modal operator: 1 when j + num exceeds n, else 0"""
    n = x.den
    if not 1 <= j <= n:
        raise IndexOutOfRangeError(f"sigma index {j} outside 1..{n}")
    return ChainValue(num=n if j + x.num > n else 0, den=n)


def chain_embed(x: ChainValue, n: int) -> ChainValue:
    """Send x in L_{t+1} to the same rational inside L_{n+1}"""
    t = x.den
    if n < 1 or n % t:
        raise NoEmbeddingError(f"L_{t + 1} is not a subalgebra of L_{n + 1}")
    return ChainValue(num=x.num * (n // t), den=n)
