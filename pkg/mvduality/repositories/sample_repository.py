"""Sample families for the equivalence checks

Exposes the families the verification service iterates over:

- chain_products(n, max_size) -> products of chains L_{d+1}, d | n
- filter_maps(n, max_atoms) -> every valid <B, h> over small B
- tuple_algebras(n, max_atoms) -> M(B, h) for every filter map of filter_maps
- morphisms(algebras) -> homomorphisms between the sampled algebras

Families are built once per argument set and kept in memory.
"""

import logging
from itertools import combinations_with_replacement, product
from math import gcd, prod
from typing import Dict, List, Optional, Sequence, Tuple

from mvduality.config import settings
from mvduality.domain.duality import WMorphism, homomorphisms
from mvduality.domain.pairs import FilterMap, build_m, divisors_of
from mvduality.domain.wajsberg import WajsbergAlgebra

logger = logging.getLogger(__name__)


class SampleRepository:
    """In-memory store of sample algebras, filter maps and morphisms"""

    def __init__(self):
        self._products: Dict[Tuple[int, int], List[WajsbergAlgebra]] = {}
        self._pairs: Dict[Tuple[int, int], List[FilterMap]] = {}
        self._tuple_algebras: Dict[Tuple[int, int], List[WajsbergAlgebra]] = {}
        self._chains: Dict[int, WajsbergAlgebra] = {}

    def chain(self, d: int) -> WajsbergAlgebra:
        if d not in self._chains:
            self._chains[d] = WajsbergAlgebra.chain(d)
        return self._chains[d]

    def chain_products(self, n: int, max_size: Optional[int] = None) -> List[WajsbergAlgebra]:
        """Every product of chains L_{d+1} (d | n) with at most max_size elements

        Factors are listed by decreasing d so each multiset appears once.
        """
        max_size = settings.max_algebra_size if max_size is None else max_size
        key = (n, max_size)
        if key in self._products:
            return self._products[key]

        divisors = sorted(divisors_of(n), reverse=True)
        found: List[WajsbergAlgebra] = []
        length = 1
        while 2**length <= max_size:
            for factors in combinations_with_replacement(divisors, length):
                if prod(d + 1 for d in factors) <= max_size:
                    found.append(
                        self.chain(factors[0])
                        if length == 1
                        else WajsbergAlgebra.product(*(self.chain(d) for d in factors))
                    )
            length += 1

        logger.info(f"Sample family for n={n}: {len(found)} products of chains up to {max_size}")
        self._products[key] = found
        return found

    def filter_maps(self, n: int, max_atoms: int = 2) -> List[FilterMap]:
        """Every generator map Div(n) -> B with h(n) = {1} obeying the gcd law, 1 <= m <= max_atoms"""
        key = (n, max_atoms)
        if key in self._pairs:
            return self._pairs[key]

        divisors = divisors_of(n)
        free = [d for d in divisors if d != n]
        found: List[FilterMap] = []
        for m in range(1, max_atoms + 1):
            full = (1 << m) - 1
            for choice in product(range(1 << m), repeat=len(free)):
                generators = dict(zip(free, choice))
                generators[n] = full
                if _gcd_law(generators, divisors):
                    found.append(FilterMap.from_generators(m, n, generators))

        logger.info(f"Enumerated {len(found)} filter maps for n={n} with up to {max_atoms} atoms")
        self._pairs[key] = found
        return found

    def tuple_algebras(self, n: int, max_atoms: int = 2) -> List[WajsbergAlgebra]:
        """M(B, h) for every filter map of `filter_maps(n, max_atoms)`, in the same order"""
        key = (n, max_atoms)
        if key not in self._tuple_algebras:
            self._tuple_algebras[key] = [build_m(p) for p in self.filter_maps(n, max_atoms)]
        return self._tuple_algebras[key]

    def morphisms(
        self,
        algebras: Sequence[WajsbergAlgebra],
        limit: Optional[int] = None,
        samples: Optional[int] = None,
        seed: Optional[int] = None,
    ) -> List[WMorphism]:
        """Homomorphisms between every ordered pair of the given algebras"""
        found: List[WMorphism] = []
        for source in algebras:
            for target in algebras:
                mappings, exhaustive = homomorphisms(source, target, limit, samples, seed)
                found.extend(WMorphism.from_search(source, target, m) for m in mappings)
                logger.debug(
                    f"Hom({source.name}, {target.name}): {len(mappings)} "
                    f"{'(all)' if exhaustive else '(sampled)'}"
                )
        logger.info(f"Collected {len(found)} morphisms between {len(algebras)} algebras")
        return found

    def clear(self) -> None:
        self._products.clear()
        self._pairs.clear()
        self._tuple_algebras.clear()
        self._chains.clear()


def _gcd_law(generators: Dict[int, int], divisors: Sequence[int]) -> bool:
    # h(gcd(d, r)) = h(d) v h(r) is a meet of generators
    return all(
        generators[gcd(d, r)] == generators[d] & generators[r]
        for i, d in enumerate(divisors)
        for r in divisors[i + 1:]
    )


# Global repository instance
sample_repository = SampleRepository()
