import logging
import sys
from typing import List, Optional

import click
from pydantic import ValidationError

from pqconductor.constants import (
    DEFAULT_A_MAX,
    DEFAULT_EXPONENT_MAX,
    DEFAULT_FAMILY_BOUND,
    DEFAULT_MAX_CONDUCTOR,
    DEFAULT_NONEXISTENCE_LIMIT,
    DEFAULT_PRIME_CUTOFF,
    DEFAULT_WORKERS,
    OUTPUT_FORMATS,
    TABLE1_CONDUCTORS,
    TABLE1_HEADER,
    TABLE2_HEADER,
    VERDICTS_HEADER,
)
from pqconductor.curves import family_conductor, family_model, invariants
from pqconductor.diophantine import (
    all_equations,
    equation_from_tag,
    fuzz_obstructed_pair,
    residue_obstruction,
    solve_equation,
    two_torsion_obstructed,
)
from pqconductor.errors import CrossCheckError, PQConductorError
from pqconductor.existence import (
    almost_prime_count,
    compare_with_table1,
    hl_partial_products,
    predicted_prime_conductors,
    prime_conductor_count,
    search_conductors,
    setzer_prime_search,
)
from pqconductor.nonexistence import congruence_candidates, nonexistence_search
from pqconductor.quadforms import field_class_data
from pqconductor.schema import FamilyParams, RunConfig, SearchBounds
from pqconductor.utils import render, write_output

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


def build_config(subcommand: str, **values) -> RunConfig:
    try:
        return RunConfig(subcommand=subcommand, **values)
    except ValidationError as e:
        messages = "; ".join(error["msg"] for error in e.errors())
        raise click.UsageError(messages, ctx=click.get_current_context(silent=True))


def emit(config: RunConfig, header: List[str], rows: List[list]) -> None:
    write_output(render(header, rows, config.format), config.output_path)


def output_options(command):
    command = click.option(
        "--format",
        "output_format",
        type=click.Choice(OUTPUT_FORMATS),
        default="csv",
        show_default=True,
        help="Output format.",
    )(command)
    command = click.option(
        "-o",
        "--output",
        "output_path",
        required=False,
        default=None,
        help="Write the result to this file instead of standard output.",
    )(command)
    return command


def workers_option(command):
    return click.option(
        "-w",
        "--workers",
        "workers",
        type=int,
        default=DEFAULT_WORKERS,
        show_default=True,
        help="Worker processes; the output does not depend on it.",
    )(command)


def bounds_options(command):
    for flag, name, default, bound in (
        ("--A-max", "big_a_max", DEFAULT_A_MAX, "|A|"),
        ("--b-max", "b_max", DEFAULT_EXPONENT_MAX, "b"),
        ("--a-max", "a_max", DEFAULT_EXPONENT_MAX, "a"),
    ):
        command = click.option(
            flag, name, type=int, default=default, show_default=True, help=f"Bound on {bound}."
        )(command)
    return command


def pair_options(command):
    command = click.option("--q", "q", type=int, required=True, help="Second odd prime.")(command)
    command = click.option("--p", "p", type=int, required=True, help="First odd prime.")(command)
    return command


@click.group()
@click.option(
    "-v", "--verbose", "verbose", is_flag=True, default=False, help="Debug logging."
)
def main(verbose: bool):
    """Elliptic curves of conductor p and pq: searches, class numbers and obstructions."""
    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)


@main.command()
@click.option(
    "--bound",
    "bound",
    type=int,
    default=DEFAULT_FAMILY_BOUND,
    show_default=True,
    help="Search |a|, |b|, |n| < bound.",
)
@click.option(
    "--max-conductor",
    "max_conductor",
    type=int,
    default=DEFAULT_MAX_CONDUCTOR,
    show_default=True,
    help="Largest conductor to report.",
)
@workers_option
@output_options
def table1(bound, max_conductor, workers, output_path, output_format):
    """Prime and two-prime conductors from y^2 + y = x^3 + a x^2 + b x + n."""
    config = build_config(
        "table1",
        bound=bound,
        max_conductor=max_conductor,
        workers=workers,
        output_path=output_path,
        format=output_format,
    )
    span = range(-config.bound + 1, config.bound)
    rows = search_conductors(span, span, span, config.max_conductor, workers=config.workers)
    expected = {N for N in TABLE1_CONDUCTORS if N <= config.max_conductor}
    compare_with_table1(rows, expected)
    emit(config, TABLE1_HEADER, [row.csv_row() for row in rows])


def _h_values_cell(verdict) -> str:
    return ";".join(f"{m}:{h}" for m, h in verdict.h_values.items())


@main.command()
@click.option(
    "--limit",
    "limit",
    type=int,
    default=DEFAULT_NONEXISTENCE_LIMIT,
    show_default=True,
    help="Search N = pq < limit.",
)
@click.option(
    "--verdicts",
    "verdicts_path",
    required=False,
    default=None,
    help="Also write every candidate verdict as CSV to this file.",
)
@workers_option
@output_options
def table2(limit, verdicts_path, workers, output_path, output_format):
    """Conductors N = pq < limit with no elliptic curve."""
    config = build_config(
        "table2", limit=limit, workers=workers, output_path=output_path, format=output_format
    )
    verdicts = nonexistence_search(config.limit, workers=config.workers)
    rows = [
        [v.candidate.N, v.candidate.p, v.candidate.q] for v in verdicts if v.nonexistent
    ]
    emit(config, TABLE2_HEADER, rows)
    if verdicts_path:
        verdict_rows = [
            [
                v.candidate.N,
                v.candidate.p,
                v.candidate.q,
                v.congruence_pass,
                "" if v.failing_field is None else v.failing_field,
                _h_values_cell(v),
            ]
            for v in verdicts
        ]
        write_output(render(VERDICTS_HEADER, verdict_rows, "csv"), verdicts_path)


@main.command()
@click.option(
    "--limit",
    "limit",
    type=int,
    default=DEFAULT_NONEXISTENCE_LIMIT,
    show_default=True,
    help="List N = pq < limit.",
)
@output_options
def candidates(limit, output_path, output_format):
    """N = pq < limit with p = 7 mod 16, q = 15 mod 16 and p, q = 1 mod 15."""
    config = build_config(
        "candidates", limit=limit, output_path=output_path, format=output_format
    )
    rows = [[c.N, c.p, c.q] for c in congruence_candidates(config.limit)]
    emit(config, TABLE2_HEADER, rows)


@main.command()
@click.option("-m", "m", type=int, required=True, help="Squarefree radicand of Q(sqrt(m)).")
@output_options
def classnum(m, output_path, output_format):
    """Class number of Q(sqrt(m)), narrow for m > 0."""
    config = build_config("classnum", m=m, output_path=output_path, format=output_format)
    data = field_class_data(config.m)
    emit(config, ["m", "D", "h", "div3"], [[data.m, data.D, data.h_value, data.div3]])


@main.command()
@click.option("--a", "a", type=int, required=True, help="Coefficient of x^2.")
@click.option("--b", "b", type=int, required=True, help="Coefficient of x.")
@click.option("--n", "n", type=int, required=True, help="Constant term.")
@output_options
def curve(a, b, n, output_path, output_format):
    """Invariants and conductor of y^2 + y = x^3 + a x^2 + b x + n."""
    config = build_config(
        "curve", a=a, b=b, n=n, output_path=output_path, format=output_format
    )
    params = FamilyParams(a=config.a, b=config.b, n=config.n)
    model = family_model(params)
    inv = invariants(model)
    N = None if inv.degenerate else family_conductor(params)
    header = ["model", "b2", "b4", "b6", "b8", "c4", "c6", "delta", "N"]
    row = [model.equation(), inv.b2, inv.b4, inv.b6, inv.b8, inv.c4, inv.c6, inv.delta]
    emit(config, header, [row + ["" if N is None else N]])


def _selected_equations(eq: str):
    if eq == "all":
        return all_equations()
    tag = equation_from_tag(f"E{eq}").tag
    return [e for e in all_equations() if e.tag is tag]


@main.command()
@pair_options
@click.option(
    "--eq", "eq", default="all", show_default=True, help="Equation number 1..7, or all."
)
@bounds_options
@output_options
def dioph(p, q, eq, a_max, b_max, big_a_max, output_path, output_format):
    """Bounded solutions of the two-torsion equations, in both orders of p and q."""
    config = build_config(
        "dioph",
        p=p,
        q=q,
        eq=eq,
        a_max=a_max,
        b_max=b_max,
        big_a_max=big_a_max,
        output_path=output_path,
        format=output_format,
    )
    bounds = SearchBounds(a_max=config.a_max, b_max=config.b_max, A_max=config.big_a_max)
    rows = []
    for first, second in ((config.p, config.q), (config.q, config.p)):
        for equation in _selected_equations(config.eq):
            for solution in solve_equation(equation, first, second, bounds):
                rows.append(
                    [
                        first,
                        second,
                        equation.describe(solution.signs),
                        "" if solution.A is None else solution.A,
                        solution.a,
                        solution.b,
                    ]
                )
    emit(config, ["p", "q", "equation", "A", "a", "b"], rows)


@main.command()
@pair_options
@click.option(
    "--fuzz",
    "fuzz",
    is_flag=True,
    default=False,
    help="Also run the bounded solution search over every equation.",
)
@bounds_options
@output_options
def obstruct(p, q, fuzz, a_max, b_max, big_a_max, output_path, output_format):
    """Residue certificates ruling out the two-torsion equations for (p, q)."""
    config = build_config(
        "obstruct",
        p=p,
        q=q,
        a_max=a_max,
        b_max=b_max,
        big_a_max=big_a_max,
        output_path=output_path,
        format=output_format,
    )
    obstructed = two_torsion_obstructed(config.p, config.q)
    logger.info(f"(p, q) = ({config.p}, {config.q}) obstructed: {obstructed}")
    rows = []
    certified = set()
    for first, second in ((config.p, config.q), (config.q, config.p)):
        for equation in all_equations():
            obstruction = residue_obstruction(equation, first, second)
            if obstruction is not None:
                certified.add((equation, first, second))
            rows.append(
                [
                    first,
                    second,
                    equation.describe(),
                    "" if obstruction is None else obstruction.kind.value,
                    "" if obstruction is None else obstruction.detail,
                ]
            )
    if fuzz:
        bounds = SearchBounds(a_max=config.a_max, b_max=config.b_max, A_max=config.big_a_max)
        hits = fuzz_obstructed_pair(config.p, config.q, bounds)
        logger.info(f"bounded search found {len(hits)} solutions")
        for equation, first, second, solution in hits:
            if (equation, first, second) in certified:
                raise CrossCheckError(
                    f"{equation.describe(solution.signs)} has solution {solution} "
                    f"at (p, q) = ({first}, {second}) despite a certificate"
                )
    emit(config, ["p", "q", "equation", "obstruction", "detail"], rows)


def _cutoffs(prime_limit: int) -> List[int]:
    cutoffs = []
    cutoff = 1000
    while cutoff < prime_limit:
        cutoffs.append(cutoff)
        cutoff *= 10
    return cutoffs + [prime_limit]


@main.command()
@click.option("--a", "a", type=int, required=True, help="Coefficient of x^2.")
@click.option("--b", "b", type=int, required=True, help="Coefficient of x.")
@click.option(
    "--prime-limit",
    "prime_limit",
    type=int,
    default=DEFAULT_PRIME_CUTOFF,
    show_default=True,
    help="Truncate the prime product here.",
)
@click.option(
    "--x",
    "x",
    type=int,
    default=None,
    help="Also compare predicted and observed prime conductors up to x.",
)
@output_options
def hl(a, b, prime_limit, x, output_path, output_format):
    """Hardy-Littlewood constant for prime conductors in the (a, b) family."""
    config = build_config(
        "hl",
        a=a,
        b=b,
        prime_limit=prime_limit,
        x=x,
        output_path=output_path,
        format=output_format,
    )
    results = hl_partial_products(config.a, config.b, _cutoffs(config.prime_limit))
    logger.info(
        "the prime product converges slowly and only conditionally; "
        "compare the partial products below before trusting more than one digit"
    )
    header = ["a", "b", "prime_cutoff", "C"]
    rows = [[r.a, r.b, r.prime_cutoff, f"{r.C:.6f}"] for r in results]
    if config.x is not None:
        observed = prime_conductor_count(config.a, config.b, config.x)
        header += ["x", "predicted", "observed"]
        rows = [
            row + [config.x, f"{predicted_prime_conductors(r, config.x):.2f}", observed]
            for row, r in zip(rows, results)
        ]
    emit(config, header, rows)


@main.command(name="almost-prime")
@click.option("--a", "a", type=int, required=True, help="Coefficient of x^2.")
@click.option("--b", "b", type=int, required=True, help="Coefficient of x.")
@click.option("--limit", "limit", type=int, required=True, help="Count 1 <= n <= limit.")
@output_options
def almost_prime(a, b, limit, output_path, output_format):
    """How often |Delta(n)| is a prime or a product of two primes."""
    config = build_config(
        "almost-prime", a=a, b=b, limit=limit, output_path=output_path, format=output_format
    )
    primes, semiprimes = almost_prime_count(config.a, config.b, config.limit)
    row = [config.a, config.b, config.limit, primes, semiprimes]
    emit(config, ["a", "b", "T", "prime", "semiprime"], [row])


@main.command(name="setzer-primes")
@click.option("--limit", "limit", type=int, required=True, help="Largest p to report.")
@output_options
def setzer_primes(limit, output_path, output_format):
    """Primes p = u^2 + 64, the prime conductors with a rational 2-torsion curve."""
    config = build_config(
        "setzer-primes", limit=limit, output_path=output_path, format=output_format
    )
    rows = [[hit.u, hit.p] for hit in setzer_prime_search(config.limit)]
    emit(config, ["u", "p"], rows)


def run(argv: Optional[List[str]] = None) -> int:
    try:
        result = main.main(args=argv, prog_name="pqconductor", standalone_mode=False)
    except click.UsageError as e:
        e.show()
        return 2
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        return 1
    except PQConductorError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return 1
    except Exception as e:
        logger.exception(f"unexpected failure: {e}")
        return 1
    return result if isinstance(result, int) else 0


if __name__ == "__main__":
    sys.exit(run())
