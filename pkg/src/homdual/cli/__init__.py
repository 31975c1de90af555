"""Command line interface.

Structure arguments are StructureFile documents; structure results are
written to standard output in the same format. Decisions print ``yes``,
``no`` or ``inconclusive`` first and exit with 0 for yes and 1 otherwise.
Usage and parse errors exit with 2, refused budgets with 3.
"""

from __future__ import annotations

import logging
from pathlib import Path

import click

from ..lib.arcgraph import arc_graph, arc_graph_inverse
from ..lib.config import get_settings
from ..lib.duality import (
    check_tree_duality,
    finite_duality_witness,
    has_bounded_height_tree_duality,
    lift_nuf_arc_graph,
    lift_nuf_pultr,
    search_nuf,
    verify_nuf,
)
from ..lib.errors import BudgetExceeded, HomdualError, ParseError
from ..lib.hom import core, find_hom
from ..lib.log import configure_logging
from ..lib.oracle import check_adjunction, check_duality_pair, count_digraphs, enumerate_digraphs, sample_pairs
from ..lib.pultr import Pattern, blue_red_sproinks, builtin_patterns, identity_pattern, psi, psi_inverse
from ..lib.schema import (
    parse_nuf_table,
    parse_pattern,
    parse_structure,
    parse_structures,
    serialize_nuf_table,
    serialize_structure,
)
from ..lib.sproink import enumerate_sproinks, sproink_family, thunderbolt, thunderbolts, union_family
from ..lib.structures import DIGRAPH

logger = logging.getLogger(__name__)

EXIT_NO = 1
EXIT_ERROR = 2
EXIT_BUDGET = 3

STRUCTURE = click.Path(exists=True, dir_okay=False, path_type=Path)


class HomdualGroup(click.Group):
    """Maps library errors to exit codes."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except BudgetExceeded as err:
            click.echo(f'error: budget exceeded: {err}', err=True)
            ctx.exit(EXIT_BUDGET)
        except HomdualError as err:
            click.echo(f'error: {err}', err=True)
            ctx.exit(EXIT_ERROR)


def _read(path: Path, parse, *args):
    try:
        text = path.read_text(encoding='utf-8')
    except UnicodeDecodeError as err:
        line = err.object[: err.start].count(b'\n') + 1
        raise ParseError(f'not valid UTF-8 ({err.reason})', line, source=str(path)) from None
    except OSError as err:
        raise ParseError(f'cannot read file: {err.strerror or err}', 1, source=str(path)) from None
    try:
        return parse(text, *args)
    except ParseError as err:
        raise ParseError(err.message, err.line, err.column, source=str(path)) from None


def load_structure(path: Path):
    return _read(path, parse_structure)


def load_digraph(path: Path):
    G = load_structure(path)
    if G.vocab != DIGRAPH:
        raise click.BadParameter(f'{path} is not a digraph')
    return G


def load_pattern(spec: str) -> Pattern:
    """A builtin pattern name or a pattern file."""
    patterns = {**builtin_patterns(), 'identity': identity_pattern()}
    if spec in patterns:
        return patterns[spec]
    path = Path(spec)
    if not path.is_file():
        raise click.BadParameter(f'{spec!r} is neither a builtin pattern ({", ".join(patterns)}) nor a file')
    return _read(path, parse_pattern)


def echo_structure(A):
    click.echo(serialize_structure(A), nl=False)


def decide(ctx, holds: bool):
    click.echo('yes' if holds else 'no')
    if not holds:
        ctx.exit(EXIT_NO)


@click.group(cls=HomdualGroup)
@click.option(
    '--log-level',
    type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR'], case_sensitive=False),
    default=None,
    help='Logging level (default from HOMDUAL_LOG_LEVEL).',
)
@click.option('--progress/--no-progress', default=None, help='Show progress bars in campaigns.')
@click.option('--workers', type=click.IntRange(min=1), default=None, help='Worker threads for campaigns.')
@click.version_option(package_name='homdual')
@click.pass_context
def cli(ctx, log_level, progress, workers):
    """Homomorphism dualities: constructions, decisions and ground-truth campaigns."""
    settings = get_settings().with_overrides(log_level=log_level, progress=progress, workers=workers)
    configure_logging(settings.log_level)
    logger.debug(f'settings: {settings!r}')
    ctx.obj = settings


@cli.command()
@click.argument('G', type=STRUCTURE)
@click.argument('H', type=STRUCTURE)
@click.option('--injective', is_flag=True, help='Only injective homomorphisms.')
@click.option('--fix', 'fixes', multiple=True, metavar='X=Y', help='Require element X to map to Y.')
@click.pass_context
def hom(ctx, g, h, injective, fixes):
    """Finds a homomorphism G -> H and prints its image vector."""
    fixed = {}
    for fix in fixes:
        try:
            x, y = (int(part) for part in fix.split('='))
        except ValueError:
            raise click.BadParameter(f'{fix!r} is not of the form X=Y', param_hint='--fix') from None
        fixed[x] = y
    f = find_hom(load_structure(g), load_structure(h), fixed=fixed or None, injective=injective)
    if f is None:
        click.echo('no homomorphism')
        ctx.exit(EXIT_NO)
    click.echo(' '.join(map(str, f.mapping)))


@cli.command(name='core')
@click.argument('H', type=STRUCTURE)
def core_command(h):
    """Prints the core of H, with the retraction as a comment."""
    result = core(load_structure(h))
    click.echo(f'# retraction: {" ".join(map(str, result.retraction.mapping))}')
    click.echo(f'# embedding: {" ".join(map(str, result.retraction.embedding))}')
    echo_structure(result.structure)


@cli.command()
@click.argument('G', type=STRUCTURE)
def arcgraph(g):
    """Prints the arc graph of G; vertex i stands for the i-th arc."""
    G = load_digraph(g)
    delta, labels = arc_graph(G)
    for i, (u, v) in enumerate(labels):
        click.echo(f'# {i}: {u} {v}')
    echo_structure(delta)


@cli.command(name='arcgraph-inv')
@click.argument('G', type=STRUCTURE)
def arcgraph_inv(g):
    """Prints the left adjoint of the arc graph applied to G."""
    echo_structure(arc_graph_inverse(load_digraph(g)))


@cli.command()
@click.argument('T', type=STRUCTURE)
@click.option('--max-size', type=click.IntRange(min=1), required=True, help='Largest sproink, in vertices.')
@click.option('--all-trees', is_flag=True, help='Replace vertices by all trees of height at most one.')
def sproink(t, max_size, all_trees):
    """Prints the sproinks of the oriented tree T up to isomorphism."""
    for S in enumerate_sproinks(load_digraph(t), max_size, paths_only=not all_trees):
        echo_structure(S)


@cli.command(name='thunderbolt')
@click.argument('J', type=click.IntRange(min=0))
@click.option('--all', 'all_up_to', is_flag=True, help='Print thunderbolts 0..J.')
def thunderbolt_command(j, all_up_to):
    """Prints the J-th thunderbolt."""
    for T in thunderbolts(j) if all_up_to else [thunderbolt(j)]:
        echo_structure(T)


@cli.command(name='psi')
@click.argument('PAT')
@click.argument('A', type=STRUCTURE)
def psi_command(pat, a):
    """Applies the Pultr functor of PAT (builtin name or pattern file) to A."""
    pattern = load_pattern(pat)
    image, labels = psi(pattern, load_structure(a))
    for i, h in enumerate(labels):
        click.echo(f'# {i}: {" ".join(map(str, h))}')
    echo_structure(image)


@cli.command(name='psi-inv')
@click.argument('PAT')
@click.argument('B', type=STRUCTURE)
def psi_inv_command(pat, b):
    """Applies the left adjoint of the Pultr functor of PAT to B."""
    echo_structure(psi_inverse(load_pattern(pat), load_structure(b)))


@cli.command(name='tree-duality')
@click.argument('H', type=STRUCTURE)
@click.option('--explain', is_flag=True, help='Report the power-set structure and search effort.')
@click.pass_context
def tree_duality(ctx, h, explain):
    """Decides whether H has tree duality."""
    check = check_tree_duality(load_structure(h), ctx.obj)
    if explain:
        click.echo(f'# power-set elements: {check.power_set_size}')
        click.echo(f'# power-set tuples: {check.power_set_tuples}')
        click.echo(f'# search nodes: {check.search_nodes}')
    decide(ctx, check.holds)


@cli.command(name='bh-duality')
@click.argument('H', type=STRUCTURE)
@click.option('--max-n', type=click.IntRange(min=1), default=None, help='Largest crushed cylinder tried.')
@click.option(
    '--method',
    type=click.Choice(['auto', 'exponential', 'crushed-cylinder']),
    default='auto',
    show_default=True,
)
@click.option('--assume-core', is_flag=True, help='Skip the core and tree-duality checks.')
@click.pass_context
def bh_duality(ctx, h, max_n, method, assume_core):
    """Decides bounded-height tree duality for a core H with tree duality."""
    decision = has_bounded_height_tree_duality(
        load_digraph(h), n_max=max_n, method=method, assume_core_with_tree_duality=assume_core, settings=ctx.obj
    )
    click.echo(decision.verdict)
    click.echo(f'condition: {decision.condition}')
    if decision.witness_n is not None:
        click.echo(f'witness n: {decision.witness_n}')
    if decision.path_length is not None:
        click.echo(f'path length: {decision.path_length}')
    if decision.n_max is not None:
        click.echo(f'tried up to n: {decision.n_max}')
    for assumption in decision.assumptions:
        click.echo(f'assumed: {assumption}')
    if decision.verdict != 'yes':
        ctx.exit(EXIT_NO)


@cli.command(name='finite-duality')
@click.argument('H', type=STRUCTURE)
@click.pass_context
def finite_duality(ctx, h):
    """Decides finite duality by dismantling the square of the core to its diagonal."""
    result = finite_duality_witness(load_structure(h), ctx.obj)
    click.echo('yes' if result.success else 'no')
    click.echo(f'method: {result.method}')
    if result.success:
        click.echo(f'removal order: {" ".join(map(str, result.sequence))}')
    else:
        ctx.exit(EXIT_NO)


@cli.command(name='verify-nuf')
@click.argument('H', type=STRUCTURE)
@click.argument('TABLE', type=STRUCTURE)
@click.pass_context
def verify_nuf_command(ctx, h, table):
    """Checks that TABLE is a near-unanimity function on H."""
    candidate = _read(table, parse_nuf_table, load_structure(h))
    decide(ctx, verify_nuf(candidate, ctx.obj))


@cli.command(name='search-nuf')
@click.argument('H', type=STRUCTURE)
@click.option('--arity', type=click.IntRange(min=3), default=3, show_default=True)
@click.pass_context
def search_nuf_command(ctx, h, arity):
    """Searches for a near-unanimity function on H and prints its table."""
    found = search_nuf(load_structure(h), arity, ctx.obj)
    if found is None:
        click.echo('no near-unanimity function')
        ctx.exit(EXIT_NO)
    click.echo(serialize_nuf_table(found), nl=False)


def _emit_lift(lifted, structure_out: Path | None):
    if structure_out is not None:
        structure_out.write_text(serialize_structure(lifted.structure), encoding='utf-8')
    click.echo(serialize_nuf_table(lifted), nl=False)


@cli.group(name='lift-nuf')
def lift_nuf():
    """Transfers a near-unanimity function along a construction."""


@lift_nuf.command(name='arc')
@click.argument('H', type=STRUCTURE)
@click.argument('TABLE', type=STRUCTURE)
@click.option('--structure-out', type=click.Path(dir_okay=False, path_type=Path), help='Also write the arc graph.')
@click.pass_obj
def lift_nuf_arc(settings, h, table, structure_out):
    """Lifts the NUF in TABLE on H to the arc graph of H."""
    candidate = _read(table, parse_nuf_table, load_digraph(h))
    _emit_lift(lift_nuf_arc_graph(candidate, settings), structure_out)


@lift_nuf.command(name='pultr')
@click.argument('PAT')
@click.argument('H', type=STRUCTURE)
@click.argument('TABLE', type=STRUCTURE)
@click.option('--structure-out', type=click.Path(dir_okay=False, path_type=Path), help='Also write psi H.')
@click.pass_obj
def lift_nuf_pultr_command(settings, pat, h, table, structure_out):
    """Lifts the NUF in TABLE on H pointwise to the image of H under PAT."""
    candidate = _read(table, parse_nuf_table, load_structure(h))
    _emit_lift(lift_nuf_pultr(load_pattern(pat), candidate, settings), structure_out)


def family_from_source(source: str, sproink_max_size: int, all_trees: bool):
    """Resolves ``file:PATH``, ``sproink:TREES``, ``thunderbolts:J`` or ``blue-red:TREES``."""
    kind, _, value = source.partition(':')
    if not value:
        raise click.BadParameter(f'{source!r} is not of the form KIND:VALUE', param_hint='--family')
    if kind == 'thunderbolts':
        try:
            return thunderbolts(int(value))
        except ValueError:
            raise click.BadParameter(f'{value!r} is not a thunderbolt index', param_hint='--family') from None
    path = Path(value)
    if not path.is_file():
        raise click.BadParameter(f'no such file {value!r}', param_hint='--family')
    structures = _read(path, parse_structures)
    if kind == 'file':
        return structures
    if kind == 'sproink':
        return sproink_family(structures, sproink_max_size, paths_only=not all_trees)
    if kind == 'blue-red':
        return blue_red_sproinks(structures)
    raise click.BadParameter(f'unknown family kind {kind!r}', param_hint='--family')


def _emit_report(ctx, report, records: Path | None):
    click.echo(report.render_text(), nl=False)
    if records is not None:
        lines = report.records()
        records.write_text(''.join(f'{line}\n' for line in lines), encoding='utf-8')
    if report.verdict.value != 'verified':
        ctx.exit(EXIT_NO)


RECORDS = click.option(
    '--records',
    type=click.Path(dir_okay=False, path_type=Path),
    help='Write one JSON record per witness to this file.',
)


@cli.command(name='check-pair')
@click.argument('H', type=STRUCTURE)
@click.option('--family', 'sources', multiple=True, required=True, metavar='KIND:VALUE')
@click.option('--max-g', type=click.IntRange(min=1), required=True, help='Largest enumerated digraph.')
@click.option('--family-max-size', type=click.IntRange(min=1), default=None, help='Ignore larger members.')
@click.option('--sproink-max-size', type=click.IntRange(min=1), default=15, show_default=True)
@click.option('--all-trees', is_flag=True, help='Generate sproinks from all trees of height at most one.')
@click.option('--unique', is_flag=True, help='Enumerate one digraph per isomorphism class.')
@RECORDS
@click.pass_context
def check_pair(ctx, h, sources, max_g, family_max_size, sproink_max_size, all_trees, unique, records):
    """Tests a candidate obstruction family for H on all small digraphs."""
    H = load_digraph(h)
    family = union_family(*(family_from_source(s, sproink_max_size, all_trees) for s in sources))
    report = check_duality_pair(
        H, family, max_g, family_size_max=family_max_size, unique=unique, settings=ctx.obj
    )
    _emit_report(ctx, report, records)


@cli.group(name='check-adjunction')
def check_adjunction_group():
    """Compares both sides of an adjunction on seeded random pairs."""


def _sampling_options(samples: int, max_size: int):
    def decorate(fn):
        fn = click.option('--samples', type=click.IntRange(min=0), default=samples, show_default=True)(fn)
        fn = click.option('--max-size', type=click.IntRange(min=1), default=max_size, show_default=True)(fn)
        fn = click.option('--seed', type=int, default=None, help='Defaults to HOMDUAL_DEFAULT_SEED.')(fn)
        return RECORDS(fn)

    return decorate


@check_adjunction_group.command(name='arc')
@_sampling_options(samples=200, max_size=5)
@click.pass_context
def check_adjunction_arc(ctx, samples, max_size, seed, records):
    """G -> delta H iff delta^-1 G -> H."""
    seed = ctx.obj.default_seed if seed is None else seed
    pairs = sample_pairs(DIGRAPH, DIGRAPH, samples, max_size, seed)
    report = check_adjunction(
        lambda A: arc_graph(A).structure,
        arc_graph_inverse,
        pairs,
        campaign='arc-graph-adjunction',
        parameters={'seed': seed, 'max_size': max_size},
        settings=ctx.obj,
    )
    _emit_report(ctx, report, records)


@check_adjunction_group.command(name='pultr')
@click.argument('PAT')
@_sampling_options(samples=100, max_size=4)
@click.pass_context
def check_adjunction_pultr(ctx, pat, samples, max_size, seed, records):
    """B -> psi A iff psi^-1 B -> A for the pattern PAT."""
    pattern = load_pattern(pat)
    seed = ctx.obj.default_seed if seed is None else seed
    pairs = sample_pairs(pattern.tau, pattern.sigma, samples, max_size, seed)
    report = check_adjunction(
        lambda A: psi(pattern, A).structure,
        lambda B: psi_inverse(pattern, B),
        pairs,
        campaign=f'pultr-adjunction:{pattern.name}',
        parameters={'seed': seed, 'max_size': max_size, 'pattern': pattern.name},
        settings=ctx.obj,
    )
    _emit_report(ctx, report, records)


@cli.command(name='enumerate')
@click.argument('N', type=click.IntRange(min=1))
@click.option('--loops/--no-loops', default=True, show_default=True)
@click.option('--unique', is_flag=True, help='One digraph per isomorphism class.')
@click.option('--count', 'count_only', is_flag=True, help='Print only the number of digraphs.')
@click.pass_obj
def enumerate_command(settings, n, loops, unique, count_only):
    """Prints every digraph on 1..N vertices."""
    if count_only:
        if n > settings.enumeration_max_vertices:
            raise BudgetExceeded('digraph enumeration (vertices)', n, settings.enumeration_max_vertices)
        click.echo(count_digraphs(n, loops=loops, unique=unique))
        return
    for G in enumerate_digraphs(n, loops=loops, unique=unique, settings=settings):
        echo_structure(G)
