"""Interchange text formats for algebras, filter maps and valued maps"""

import logging
import re
from pathlib import Path
from typing import Dict, List, Union

from mvduality.domain.boolalg import BoolElem
from mvduality.domain.chain import ChainValue
from mvduality.domain.exceptions import MalformedAlgebraError, ParseError
from mvduality.domain.pairs import FilterMap, MonotoneTuple
from mvduality.domain.schemas import AlgebraTable, FilterMapView
from mvduality.domain.stone import ValuedMap
from mvduality.domain.wajsberg import WajsbergAlgebra

logger = logging.getLogger(__name__)

ALGEBRA_HEADER = re.compile(r"^wajsberg\s+size=(\d+)\s+top=(\d+)$")
PAIR_HEADER = re.compile(r"^pair\s+n=(\d+)\s+atoms=(\d+)$")
PAIR_LINE = re.compile(r"^h\s+(\d+)\s*=\s*(\{.*\})$")
VALUE_LINE = re.compile(r"^(\d+)\s*:\s*(\S+)$")


class InterchangeFormat:
    """Parsing and formatting of the text interchange files

    Lines starting with `#` and blank lines are ignored everywhere.
    """

    @staticmethod
    def read_file(path: Union[str, Path]) -> str:
        """
        Read an interchange file

        Raises:
            ParseError: If the file cannot be read as UTF-8 text
        """
        try:
            return Path(path).read_text(encoding="utf-8")
        except UnicodeDecodeError:
            raise ParseError(f"{path}: file must be UTF-8 encoded")
        except OSError as e:
            raise ParseError(f"{path}: cannot read file: {e.strerror}")

    @staticmethod
    def _content_lines(text: str) -> List[str]:
        lines = (line.strip() for line in text.splitlines())
        return [line for line in lines if line and not line.startswith("#")]

    @staticmethod
    def _indices(fields: List[str], where: str) -> List[int]:
        try:
            return [int(f) for f in fields]
        except ValueError:
            raise ParseError(f"{where}: expected element indices, got {' '.join(fields)!r}")

    @staticmethod
    def parse_algebra(text: str, name: str = "A") -> WajsbergAlgebra:
        """
        Parse `wajsberg size=<s> top=<t>`, `neg: ...` and `imp:` with s rows

        Returns:
            WajsbergAlgebra on the indices 0..s-1

        Raises:
            ParseError: If the text does not follow the format
            MalformedAlgebraError: If the tables are not well formed
        """
        lines = InterchangeFormat._content_lines(text)
        if not lines:
            raise ParseError("algebra file is empty")

        header = ALGEBRA_HEADER.match(lines[0])
        if not header:
            raise ParseError(f"bad algebra header: {lines[0]!r}")
        size, top = int(header.group(1)), int(header.group(2))

        if len(lines) < 2 or not lines[1].startswith("neg:"):
            raise ParseError("missing 'neg:' line")
        neg = InterchangeFormat._indices(lines[1][len("neg:"):].split(), "neg")

        if len(lines) < 3 or lines[2] != "imp:":
            raise ParseError("missing 'imp:' line")
        rows = [
            InterchangeFormat._indices(line.split(), f"imp row {i}")
            for i, line in enumerate(lines[3:])
        ]
        if len(neg) != size or len(rows) != size:
            raise MalformedAlgebraError(
                f"header declares {size} elements; found {len(neg)} negation entries "
                f"and {len(rows)} implication rows"
            )

        algebra = WajsbergAlgebra(rows, neg, top, name=name)
        logger.info(f"Parsed algebra {name} with {size} elements")
        return algebra

    @staticmethod
    def format_algebra(a: WajsbergAlgebra) -> str:
        """Interchange text, with element labels as comments"""
        lines = [f"# {a.name}"]
        lines += [f"# {x}: {a.label(x)}" for x in range(a.size)]
        lines.append(f"wajsberg size={a.size} top={a.top}")
        lines.append("neg: " + " ".join(str(y) for y in a.neg_table))
        lines.append("imp:")
        lines += [" ".join(str(y) for y in row) for row in a.imp_table]
        return "\n".join(lines)

    @staticmethod
    def algebra_table(a: WajsbergAlgebra) -> AlgebraTable:
        return AlgebraTable(
            name=a.name,
            size=a.size,
            top=a.top,
            elements=[a.label(x) for x in range(a.size)],
            neg=list(a.neg_table),
            imp=[list(row) for row in a.imp_table],
        )

    @staticmethod
    def parse_pair(text: str) -> FilterMap:
        """
        Parse `pair n=<n> atoms=<m>` followed by `h <d> = {..}` lines

        Raises:
            ParseError: If the text does not follow the format
            MalformedFilterMapError: If the lines do not cover exactly Div(n)
        """
        lines = InterchangeFormat._content_lines(text)
        if not lines:
            raise ParseError("pair file is empty")

        header = PAIR_HEADER.match(lines[0])
        if not header:
            raise ParseError(f"bad pair header: {lines[0]!r}")
        n, atom_count = int(header.group(1)), int(header.group(2))

        generators: Dict[int, int] = {}
        for line in lines[1:]:
            match = PAIR_LINE.match(line)
            if not match:
                raise ParseError(f"bad filter line: {line!r}")
            d = int(match.group(1))
            if d in generators:
                raise ParseError(f"h({d}) is given twice")
            generators[d] = BoolElem.parse(match.group(2), atom_count).mask

        pair = FilterMap.from_generators(atom_count, n, generators)
        logger.info(f"Parsed filter map {pair.describe()}")
        return pair

    @staticmethod
    def pair_view(p: FilterMap) -> FilterMapView:
        return FilterMapView(
            n=p.n,
            atoms=p.base.atom_count,
            h={d: str(p.h[d].generator) for d in p.divisors},
        )

    @staticmethod
    def format_pair(p: FilterMap) -> str:
        lines = [f"pair n={p.n} atoms={p.base.atom_count}"]
        lines += [f"h {d} = {p.h[d].generator}" for d in p.divisors]
        return "\n".join(lines)

    @staticmethod
    def parse_tuple(text: str, atom_count: int) -> MonotoneTuple:
        """Parse `[{..},...,{..}]`"""
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ParseError(f"not a tuple: {text!r}")
        parts = re.findall(r"\{[^}]*\}", body[1:-1])
        if not parts:
            raise ParseError(f"empty tuple: {text!r}")
        entries = tuple(BoolElem.parse(part, atom_count).mask for part in parts)
        try:
            return MonotoneTuple(atom_count=atom_count, entries=entries)
        except ValueError as e:
            raise ParseError(f"not a monotone tuple: {text!r}") from e

    @staticmethod
    def parse_valued_map(text: str) -> ValuedMap:
        """
        Parse `<point>: k/n` lines; points must be 0..p-1, each exactly once

        Raises:
            ParseError: If the lines are malformed or mix denominators
        """
        values: Dict[int, ChainValue] = {}
        for line in InterchangeFormat._content_lines(text):
            match = VALUE_LINE.match(line)
            if not match:
                raise ParseError(f"bad valued map line: {line!r}")
            point = int(match.group(1))
            if point in values:
                raise ParseError(f"point {point} is given twice")
            values[point] = ChainValue.parse(match.group(2))

        if not values:
            raise ParseError("valued map file is empty")
        if sorted(values) != list(range(len(values))):
            raise ParseError(f"points must be 0..{len(values) - 1}, got {sorted(values)}")
        dens = {v.den for v in values.values()}
        if len(dens) != 1:
            raise ParseError(f"values come from different chains: {sorted(dens)}")

        return ValuedMap(n=dens.pop(), values=tuple(values[p] for p in range(len(values))))

    @staticmethod
    def format_valued_map(f: ValuedMap) -> str:
        return "\n".join(f"{point}: {value}" for point, value in enumerate(f.values))
