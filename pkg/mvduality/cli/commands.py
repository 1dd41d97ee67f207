"""Command-line verbs

Every verb returns its exit status: 0 when every law holds, 1 on a
verification failure. Input errors surface as domain exceptions and are
mapped to status 2 by `mvduality.main.run`.
"""

import logging
from pathlib import Path
from typing import Optional, Tuple

import click

from mvduality.config import settings
from mvduality.domain.boolalg import BoolAlg
from mvduality.domain.duality import check_phi, functor_b_obj, functor_m_obj, phi_table
from mvduality.domain.pairs import FilterMap, build_bn, build_m
from mvduality.domain.schemas import (
    LawResult,
    PhiEntry,
    PrimeView,
    ReconstructionReport,
    SuiteReport,
    Verdict,
)
from mvduality.domain.stone import psi, psi_inverse, space_of
from mvduality.domain.wajsberg import WajsbergAlgebra, check_axioms, check_n_valued
from mvduality.services.verification_service import SUITE_NS, VerificationService
from mvduality.utils.file_parser import InterchangeFormat

logger = logging.getLogger(__name__)

format_option = click.option(
    "--format",
    "output_format",
    type=click.Choice(["text", "json"]),
    default="text",
    show_default=True,
    help="Output format.",
)
n_option = click.option("--n", "n", type=int, metavar="<int>", required=True, help="The n of L_{n+1}.")
algebra_option = click.option(
    "--algebra",
    "algebra_path",
    metavar="<path>",
    type=click.Path(exists=True, dir_okay=False),
    required=True,
    help="Algebra interchange file.",
)
pair_option = click.option(
    "--pair",
    "pair_path",
    metavar="<path>",
    type=click.Path(exists=True, dir_okay=False),
    required=True,
    help="Filter map interchange file.",
)
seed_option = click.option("--seed", type=int, metavar="<int>", default=None, help="Seed for sampled checks.")


def _load_algebra(path: str) -> WajsbergAlgebra:
    return InterchangeFormat.parse_algebra(InterchangeFormat.read_file(path), name=Path(path).stem)


def _load_pair(path: str) -> FilterMap:
    return InterchangeFormat.parse_pair(InterchangeFormat.read_file(path))


def _emit_report(report: SuiteReport, output_format: str) -> int:
    if output_format == "json":
        click.echo(report.model_dump_json(indent=2))
    else:
        for line in report.lines():
            click.echo(line)
    return 0 if report.ok else 1


@click.group(context_settings=dict(help_option_names=["-h", "--help"]))
@click.version_option(settings.app_version, prog_name=settings.app_name)
def cli():
    """Finite duality between (n+1)-valued Wajsberg algebras and filtered Boolean algebras"""


@cli.command("build-bn")
@click.option("--atoms", type=int, metavar="<int>", required=True, help="Atoms of the Boolean base.")
@n_option
@format_option
def build_bn_command(atoms: int, n: int, output_format: str) -> int:
    """Print the operation tables of B^[n]."""
    algebra = build_bn(BoolAlg(atom_count=atoms), n)
    if output_format == "json":
        click.echo(InterchangeFormat.algebra_table(algebra).model_dump_json(indent=2))
    else:
        click.echo(InterchangeFormat.format_algebra(algebra))
    return 0


@cli.command("build-m")
@pair_option
@format_option
def build_m_command(pair_path: str, output_format: str) -> int:
    """Print the operation tables of M(B, h)."""
    algebra = build_m(_load_pair(pair_path))
    if output_format == "json":
        click.echo(InterchangeFormat.algebra_table(algebra).model_dump_json(indent=2))
    else:
        click.echo(InterchangeFormat.format_algebra(algebra))
    return 0


@cli.command("axioms")
@algebra_option
@seed_option
@format_option
def axioms_command(algebra_path: str, seed: Optional[int], output_format: str) -> int:
    """Check the four Wajsberg identities."""
    algebra = _load_algebra(algebra_path)
    report = check_axioms(algebra, seed=seed)
    if output_format == "json":
        click.echo(report.model_dump_json(indent=2))
    elif report.ok:
        click.echo(LawResult(verdict=Verdict.OK, law="axioms", subject=algebra.name).line())
    else:
        for violation in report.violations:
            click.echo(
                LawResult(
                    verdict=Verdict.FAIL,
                    law="axioms",
                    subject=algebra.name,
                    counterexample=str(violation),
                ).line()
            )
    return 0 if report.ok else 1


@cli.command("primes")
@algebra_option
@format_option
def primes_command(algebra_path: str, output_format: str) -> int:
    """List the prime filters and their quotient chains."""
    algebra = _load_algebra(algebra_path)
    views = [
        PrimeView(
            generator=algebra.label(pq.filter.generator),
            length=pq.length,
            members=[algebra.label(x) for x in sorted(pq.filter.members)],
        )
        for pq in algebra.prime_quotients
    ]
    if output_format == "json":
        click.echo("[" + ",".join(v.model_dump_json() for v in views) + "]")
    else:
        for view in views:
            click.echo(view.line())
    return 0


@cli.command("decompose")
@algebra_option
@n_option
@format_option
def decompose_command(algebra_path: str, n: int, output_format: str) -> int:
    """Print <B(A), h_A>."""
    pair = functor_b_obj(_load_algebra(algebra_path), n)
    if output_format == "json":
        click.echo(InterchangeFormat.pair_view(pair).model_dump_json(indent=2))
    else:
        click.echo(InterchangeFormat.format_pair(pair))
    return 0


@cli.command("reconstruct")
@algebra_option
@n_option
@format_option
def reconstruct_command(algebra_path: str, n: int, output_format: str) -> int:
    """Print phi: A -> M(B(A), h_A) and check that it is an isomorphism."""
    algebra = _load_algebra(algebra_path)
    check_n_valued(algebra, n)
    results = check_phi(algebra, n)
    entries = []
    if all(r.verdict == Verdict.OK for r in results):
        table = phi_table(algebra, n)
        entries = [PhiEntry(element=algebra.label(x), image=str(table[x])) for x in range(algebra.size)]
    report = ReconstructionReport(phi=entries, results=results)
    if output_format == "json":
        click.echo(report.model_dump_json(indent=2))
    else:
        for entry in report.phi:
            click.echo(f"phi {entry.element} = {entry.image}")
        for result in report.results:
            click.echo(result.line())
    return 0 if report.ok else 1


@cli.command("roundtrip")
@pair_option
@seed_option
@format_option
def roundtrip_command(pair_path: str, seed: Optional[int], output_format: str) -> int:
    """Check both round trips and naturality on M(B, h)."""
    pair = _load_pair(pair_path)
    algebra = build_m(pair)
    report = VerificationService.run_equivalence(pair.n, algebras=[algebra], pairs=[pair], seed=seed)
    return _emit_report(report, output_format)


@cli.command("stone")
@pair_option
@click.option(
    "--map",
    "map_path",
    metavar="<path>",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Valued map to translate back into M(B, h).",
)
@click.option("--images", is_flag=True, help="Print psi of every element of M(B, h).")
@format_option
def stone_command(
    pair_path: str, map_path: Optional[str], images: bool, output_format: str
) -> int:
    """Print the valued Boolean space of a pair and check the translation psi."""
    pair = _load_pair(pair_path)
    space = space_of(pair)
    report = SuiteReport(results=VerificationService.check_stone([pair]))
    if output_format == "json":
        return _emit_report(report, output_format)

    click.echo(f"space points={space.point_count} n={space.n}")
    for d in sorted(space.closed):
        click.echo(f"closed {d} = {{{','.join(str(p) for p in sorted(space.closed[d]))}}}")
    if images:
        m = functor_m_obj(pair)
        for x in range(m.size):
            click.echo(f"psi {m.element(x)}")
            click.echo(InterchangeFormat.format_valued_map(psi(space, m.element(x))))
    if map_path:
        valued = InterchangeFormat.parse_valued_map(InterchangeFormat.read_file(map_path))
        click.echo(f"psi_inverse = {psi_inverse(space, valued)}")
    return _emit_report(report, output_format)


@cli.command("suite")
@click.option("--n", "ns", type=int, metavar="<int>", multiple=True, help="Values of n (repeatable).")
@click.option("--max-size", type=int, metavar="<int>", default=None, help="Largest sample algebra.")
@click.option("--atoms", type=int, metavar="<int>", default=2, show_default=True, help="Largest base for filter maps.")
@click.option("--sequential", is_flag=True, help="Run jobs one after another.")
@seed_option
@format_option
def suite_command(
    ns: Tuple[int, ...],
    max_size: Optional[int],
    atoms: int,
    sequential: bool,
    seed: Optional[int],
    output_format: str,
) -> int:
    """Run the full acceptance suite."""
    report = VerificationService.run_suite(
        ns=ns or SUITE_NS,
        max_size=max_size,
        max_atoms=atoms,
        seed=seed,
        concurrent=False if sequential else None,
    )
    return _emit_report(report, output_format)
