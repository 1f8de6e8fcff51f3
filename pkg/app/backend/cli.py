"""
``knotslice`` command-line interface.

Exit codes: 0 success, 1 unexpected error, 2 usage error, 3 parse or
validation error, 4 size limit exceeded, 5 certificate error, 6 knot not
found, 7 invalid operation or link input, 8 internal consistency failure.
"""

import logging
import os
import sys
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import click
import ujson
from colorama import Fore, Style
from colorama import just_fix_windows_console

from app.backend.catalog import (KnotRecord, export_report, load_catalog, load_certificate, select_from_file,
                                 validate_record)
from app.backend.catalog.loader import extra_paths
from app.backend.config import Config, setup_logging
from app.backend.errors import InvalidOperationError, KnotEngineError
from app.backend.homology import (euler_characteristic, khovanov_homology, khovanov_polynomial, s_invariant)
from app.backend.invariants import (abelianization, alexander_polynomial, count_s3_homomorphisms,
                                    fox_colorings_count, genus_lower_bound, jones_polynomial, kauffman_bracket,
                                    knot_determinant, naive_kauffman_bracket, seifert_genus_upper_bound,
                                    unnormalized_jones, wirtinger_presentation)
from app.backend.knots import (PlanarDiagram, TangleRegion, connected_sum, crossing_change, greedy_simplify, mirror,
                               mutate, parse_pd, reverse, to_gauss_code, writhe)
from app.backend.slice import TRACE_TRANSFER, Verdict, slice_report, trace_transfer_verdict

logger = logging.getLogger(__name__)


@dataclass
class CliConfig:
    color: bool = True
    fmt: str = 'text'
    oracle: bool = False
    threads: int = 1
    size_limit: Optional[int] = None
    field: str = 'Q'
    extra_files: Tuple[str, ...] = ()

    @property
    def homology_options(self) -> Dict[str, object]:
        return {'oracle': self.oracle, 'size_limit': self.size_limit, 'threads': self.threads}


class EngineGroup(click.Group):
    """Maps engine errors onto their documented exit codes."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except KnotEngineError as exc:
            logger.debug("command failed", exc_info=True)
            click.echo(_paint(f"error: {exc.message}", Fore.RED, ctx), err=True)
            if exc.context.get('diagnostics'):
                for diagnostic in exc.context['diagnostics']:
                    click.echo(f"  line {diagnostic['line']}: {diagnostic['message']}", err=True)
            ctx.exit(exc.exit_code)
        except (click.exceptions.Exit, click.ClickException, click.Abort):
            raise
        except Exception as exc:
            logger.exception("unexpected error")
            click.echo(_paint(f"unexpected error: {exc}", Fore.RED, ctx), err=True)
            ctx.exit(1)


def _color_enabled(ctx: Optional[click.Context]) -> bool:
    root = ctx.find_root() if ctx is not None else None
    cfg = root.obj if root is not None else None
    return bool(cfg and cfg.color)


def _paint(text: str, color: str, ctx: Optional[click.Context] = None) -> str:
    if not _color_enabled(ctx or click.get_current_context(silent=True)):
        return text
    return f"{color}{text}{Style.RESET_ALL}"


def _config(ctx: click.Context) -> CliConfig:
    return ctx.find_root().obj


def _emit(ctx: click.Context, payload: Dict[str, object], text: str) -> None:
    if _config(ctx).fmt == 'json':
        click.echo(ujson.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False))
    else:
        click.echo(text)


def _catalog(ctx: click.Context):
    return load_catalog(paths=_extra_paths(ctx))


def _extra_paths(ctx: click.Context) -> Optional[List[str]]:
    extra = list(_config(ctx).extra_files)
    if not extra:
        return None
    return extra_paths() + extra


def _parse_ints(text: str, what: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(' ', '').split(',') if x]
    except ValueError:
        raise click.BadParameter(f"{what} must be comma-separated integers: {text!r}")


# -- knot selection -----------------------------------------------------------

def knot_selector(func):
    func = click.option('--file', 'file_', metavar='PATH[:NAME]', help='PD file, optionally with a knot name.')(func)
    func = click.option('--pd', metavar='PD', help='PD literal, e.g. "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]".')(func)
    func = click.option('--knot', metavar='NAME', help='Catalog name or alias.')(func)
    return func


def compute_options(func):
    func = click.option('--size-limit', type=click.IntRange(min=1), default=None,
                        help='Generator limit for Khovanov and Lee complexes.')(func)
    func = click.option('--threads', type=click.IntRange(min=1), default=None, help='Worker threads.')(func)
    func = click.option('--oracle', is_flag=True, help='Use the exponential reference algorithms.')(func)
    return func


def _apply_compute_options(ctx: click.Context, oracle: bool, threads: Optional[int],
                           size_limit: Optional[int]) -> CliConfig:
    cfg = _config(ctx)
    cfg.oracle = oracle or cfg.oracle
    if threads is not None:
        cfg.threads = threads
    if size_limit is not None:
        cfg.size_limit = size_limit
    return cfg


def resolve_knot(ctx: click.Context, knot: Optional[str], pd: Optional[str], file_: Optional[str]) -> KnotRecord:
    chosen = [x for x in (knot, pd, file_) if x]
    if len(chosen) != 1:
        raise click.UsageError("give exactly one of --knot, --pd or --file")
    if pd:
        return KnotRecord(name='K', pd=parse_pd(pd), source='literal')
    if file_:
        return select_from_file(file_)
    return _catalog(ctx).lookup(knot)


# -- command group ------------------------------------------------------------

@click.group(cls=EngineGroup)
@click.option('--format', 'fmt', type=click.Choice(['text', 'json']), default='text', show_default=True)
@click.option('--no-color', is_flag=True, help='Plain output (also honored via NO_COLOR).')
@click.option('--verbose', '-v', is_flag=True, help='Debug logging on stderr.')
@click.option('--catalog-file', 'extra_files', multiple=True, type=click.Path(dir_okay=False),
              help='Extra PD file merged into the catalog (repeatable).')
@click.version_option(Config.VERSION, prog_name='knotslice')
@click.pass_context
def cli(ctx, fmt, no_color, verbose, extra_files):
    """Knot invariants, Khovanov homology and slice obstructions."""
    setup_logging('DEBUG' if verbose else 'WARNING', log_dir=os.getenv('LOG_DIR', ''))
    color = not no_color and 'NO_COLOR' not in os.environ
    if color:
        just_fix_windows_console()
    ctx.obj = CliConfig(color=color, fmt=fmt, threads=Config.THREADS, field=Config.KH_DEFAULT_FIELD,
                        extra_files=tuple(extra_files))


@cli.command()
@knot_selector
@click.option('--presentation', is_flag=True, help='Also print the Wirtinger presentation.')
@click.pass_context
def alexander(ctx, knot, pd, file_, presentation):
    """Alexander polynomial from the Wirtinger presentation."""
    record = resolve_knot(ctx, knot, pd, file_)
    delta = alexander_polynomial(record.pd)
    payload = {
        'knot': record.name,
        'alexander': delta.to_text(),
        'determinant': knot_determinant(record.pd),
        'genus_lower_bound': genus_lower_bound(record.pd),
        'genus_upper_bound': seifert_genus_upper_bound(record.pd),
    }
    lines = [delta.to_text()]
    if presentation:
        group = wirtinger_presentation(record.pd)
        payload['presentation'] = group.to_text()
        payload['abelianization'] = abelianization(group).to_text()
        lines.append(group.to_text())
    _emit(ctx, payload, '\n'.join(lines))


@cli.command()
@knot_selector
@click.option('--unnormalized', is_flag=True, help='Print (q + q^-1) V(q^2) instead of V(t).')
@click.option('--bracket', is_flag=True, help='Print the Kauffman bracket instead.')
@compute_options
@click.pass_context
def jones(ctx, knot, pd, file_, unnormalized, bracket, oracle, threads, size_limit):
    """Jones polynomial via the Kauffman bracket."""
    cfg = _apply_compute_options(ctx, oracle, threads, size_limit)
    record = resolve_knot(ctx, knot, pd, file_)
    if bracket:
        value = (naive_kauffman_bracket if cfg.oracle else kauffman_bracket)(record.pd)
        kind = 'bracket'
    elif unnormalized:
        value = unnormalized_jones(record.pd, oracle=cfg.oracle)
        kind = 'unnormalized_jones'
    else:
        value = jones_polynomial(record.pd, oracle=cfg.oracle)
        kind = 'jones'
    _emit(ctx, {'knot': record.name, kind: value.to_text(), 'writhe': writhe(record.pd)}, value.to_text())


@cli.command()
@knot_selector
@click.option('--field', type=click.Choice(['Q', 'F2'], case_sensitive=False), default=None)
@click.option('--euler', is_flag=True, help='Also print the graded Euler characteristic.')
@compute_options
@click.pass_context
def khovanov(ctx, knot, pd, file_, field, euler, oracle, threads, size_limit):
    """Khovanov homology ranks Kh^{i,j}."""
    cfg = _apply_compute_options(ctx, oracle, threads, size_limit)
    record = resolve_knot(ctx, knot, pd, file_)
    ranks = khovanov_homology(record.pd, field=(field or cfg.field).upper(), **cfg.homology_options)
    payload = {
        'knot': record.name,
        'field': ranks.field,
        'ranks': [list(t) for t in ranks.to_triples()],
        'poincare': khovanov_polynomial(ranks).to_text(),
    }
    text = ranks.to_text()
    if euler:
        chi = euler_characteristic(ranks)
        payload['euler_characteristic'] = chi.to_text()
        text += f"\nchi = {chi.to_text()}"
    _emit(ctx, payload, text)


@cli.command('s')
@knot_selector
@compute_options
@click.pass_context
def s_command(ctx, knot, pd, file_, oracle, threads, size_limit):
    """Rasmussen s-invariant from Lee homology."""
    cfg = _apply_compute_options(ctx, oracle, threads, size_limit)
    record = resolve_knot(ctx, knot, pd, file_)
    result = s_invariant(record.pd, **cfg.homology_options)
    payload = {
        'knot': record.name,
        's': result.s,
        'smin': result.smin,
        'smax': result.smax,
        'slice_genus_lower_bound': result.slice_genus_lower_bound,
        'diagnostics': result.diagnostics,
    }
    _emit(ctx, payload, str(result.s))


@cli.command()
@knot_selector
@click.option('--p', 'p', type=int, default=3, show_default=True, help='Odd prime modulus.')
@click.option('--s3', is_flag=True, help='Also count homomorphisms to S3.')
@click.pass_context
def colorings(ctx, knot, pd, file_, p, s3):
    """Number of Fox p-colorings."""
    record = resolve_knot(ctx, knot, pd, file_)
    count = fox_colorings_count(record.pd, p)
    payload = {'knot': record.name, 'p': p, 'colorings': count}
    text = str(count)
    if s3:
        homs = count_s3_homomorphisms(wirtinger_presentation(record.pd))
        payload['s3_homomorphisms'] = homs
        text += f"\nS3 homomorphisms: {homs}"
    _emit(ctx, payload, text)


def _s_text(value: Optional[int]) -> str:
    return 'not computed' if value is None else str(value)


def _report_text(ctx: click.Context, report) -> str:
    verdict = report.verdict
    color = Fore.RED if verdict is Verdict.NOT_SLICE else Fore.YELLOW
    lines = [
        f"{report.knot}: {_paint(verdict.value, color, ctx)}",
        f"  Alexander polynomial: {report.alexander_poly.to_text()}",
        f"  determinant: {report.determinant} ({'square' if report.determinant_is_square else 'not a square'})",
        f"  genus bounds: {report.genus_lower_bound} <= g <= {report.genus_upper_bound}",
        f"  s: {_s_text(report.s_value)}",
        f"  topologically slice (Freedman): {'yes' if report.topologically_slice_by_freedman else 'no'}",
    ]
    if report.reference_genus is not None:
        lines.append(f"  reference genus: {report.reference_genus}")
    for obstruction in report.obstructions:
        lines.append(f"  obstruction {obstruction.id}: {obstruction.detail}")
    return '\n'.join(lines)


@cli.command('slice-report')
@knot_selector
@click.option('--compute-s/--skip-s', default=True, show_default=True)
@compute_options
@click.pass_context
def slice_report_command(ctx, knot, pd, file_, compute_s, oracle, threads, size_limit):
    """Collect slice obstructions for one knot."""
    cfg = _apply_compute_options(ctx, oracle, threads, size_limit)
    record = resolve_knot(ctx, knot, pd, file_)
    report = slice_report(record.pd, compute_s=compute_s, name=record.name,
                          reference_genus=record.reference.genus, **cfg.homology_options)
    _emit(ctx, report.to_dict(), _report_text(ctx, report))


def _diagram_payload(name: str, d: PlanarDiagram) -> Tuple[Dict[str, object], str]:
    gauss = to_gauss_code(d).to_text() if d.is_knot else None
    payload = {'knot': name, 'pd': d.to_pd_text(), 'crossings': d.n, 'writhe': writhe(d), 'gauss': gauss}
    return payload, d.to_pd_text()


@cli.command('mutate')
@knot_selector
@click.option('--crossings', help='Comma-separated crossing indices inside the tangle.')
@click.option('--boundary', help='The 4 boundary edges in circular order.')
@click.pass_context
def mutate_command(ctx, knot, pd, file_, crossings, boundary):
    """Conway mutation of a 4-ended tangle (defaults to the catalog's region)."""
    record = resolve_knot(ctx, knot, pd, file_)
    if crossings and boundary:
        region = TangleRegion.of(_parse_ints(crossings, '--crossings'), _parse_ints(boundary, '--boundary'))
    elif crossings or boundary:
        raise click.UsageError("--crossings and --boundary go together")
    elif record.mutation_region is not None:
        region = record.mutation_region
    else:
        raise InvalidOperationError(f"{record.name} has no recorded mutation region; give --crossings and --boundary")
    payload, text = _diagram_payload(f"mutant of {record.name}", mutate(record.pd, region))
    _emit(ctx, payload, text)


@cli.command('connect-sum')
@click.option('--knot', 'knots', multiple=True, metavar='NAME', help='Catalog knot (repeat for both summands).')
@click.option('--pd', 'pds', multiple=True, metavar='PD', help='PD literal summand.')
@click.option('--arc', 'arcs', type=(int, int), default=(1, 1), show_default=True,
              help='Edge of each summand where the band is attached.')
@click.pass_context
def connect_sum_command(ctx, knots, pds, arcs):
    """Connected sum of two knots."""
    if len(knots) + len(pds) != 2:
        raise click.UsageError("connect-sum needs exactly two summands")
    summands = [(name, _catalog(ctx).lookup(name).pd) for name in knots]
    summands += [(f'K{i + 1}', parse_pd(text)) for i, text in enumerate(pds)]
    (n1, d1), (n2, d2) = summands
    payload, text = _diagram_payload(f"{n1} # {n2}", connected_sum(d1, d2, *arcs))
    _emit(ctx, payload, text)


@cli.command('crossing-change')
@knot_selector
@click.option('--index', type=int, default=None, help='Crossing to switch (default: catalog unknotting crossing).')
@click.pass_context
def crossing_change_command(ctx, knot, pd, file_, index):
    """Switch over and under at one crossing."""
    record = resolve_knot(ctx, knot, pd, file_)
    if index is None:
        index = record.unknotting_crossing
    if index is None:
        raise click.UsageError("--index is required for this knot")
    payload, text = _diagram_payload(f"{record.name} with crossing {index} changed", crossing_change(record.pd, index))
    _emit(ctx, payload, text)


@cli.command()
@knot_selector
@click.pass_context
def gauss(ctx, knot, pd, file_):
    """Gauss code of a knot diagram."""
    record = resolve_knot(ctx, knot, pd, file_)
    code = to_gauss_code(record.pd).to_text()
    _emit(ctx, {'knot': record.name, 'gauss': code}, code)


@cli.command()
@knot_selector
@click.pass_context
def simplify(ctx, knot, pd, file_):
    """Greedy Reidemeister I/II simplification."""
    record = resolve_knot(ctx, knot, pd, file_)
    payload, text = _diagram_payload(record.name, greedy_simplify(record.pd))
    _emit(ctx, payload, text)


@cli.command('mirror')
@knot_selector
@click.pass_context
def mirror_command(ctx, knot, pd, file_):
    """Mirror image (every crossing switched)."""
    record = resolve_knot(ctx, knot, pd, file_)
    payload, text = _diagram_payload(f"mirror of {record.name}", mirror(record.pd))
    _emit(ctx, payload, text)


@cli.command('reverse')
@knot_selector
@click.pass_context
def reverse_command(ctx, knot, pd, file_):
    """Reverse the orientation."""
    record = resolve_knot(ctx, knot, pd, file_)
    payload, text = _diagram_payload(f"reverse of {record.name}", reverse(record.pd))
    _emit(ctx, payload, text)


def _transfer_line(ctx: click.Context, report, sibling) -> str:
    if any(o.id == TRACE_TRANSFER for o in report.obstructions):
        return f"{report.knot}: {_paint('NOT SLICE', Fore.RED, ctx)} (via trace sibling {sibling.knot}, " \
               f"s={_s_text(sibling.s_value)})"
    if report.verdict is Verdict.NOT_SLICE:
        return f"{report.knot}: {_paint('NOT SLICE', Fore.RED, ctx)} ({', '.join(report.obstruction_ids())}, " \
               f"s={_s_text(report.s_value)})"
    return f"{report.knot}: {_paint('INCONCLUSIVE', Fore.YELLOW, ctx)}"


@cli.command()
@click.option('--cert', 'cert_path', required=True, help='Trace-sibling certificate (*.cert.yaml).')
@click.option('--knots', 'knot_names', required=True, metavar='A,B', help='The two catalog knots.')
@click.option('--compute-s/--skip-s', default=True, show_default=True)
@compute_options
@click.pass_context
def transfer(ctx, cert_path, knot_names, compute_s, oracle, threads, size_limit):
    """Transfer slice obstructions between 0-trace siblings."""
    cfg = _apply_compute_options(ctx, oracle, threads, size_limit)
    names = [n.strip() for n in knot_names.split(',') if n.strip()]
    if len(names) != 2:
        raise click.UsageError("--knots takes exactly two comma-separated names")
    cert = load_certificate(cert_path)
    catalog = _catalog(ctx)
    records = [catalog.lookup(name) for name in names]
    reports = [slice_report(r.pd, compute_s=compute_s, name=r.name, reference_genus=r.reference.genus,
                            **cfg.homology_options) for r in records]
    report_a, report_b = trace_transfer_verdict(cert, *reports)
    payload = {'certificate': {'knot_a': cert.knot_a, 'knot_b': cert.knot_b, 'provenance': cert.provenance},
               'reports': [report_a.to_dict(), report_b.to_dict()]}
    _emit(ctx, payload, _transfer_line(ctx, report_a, report_b) + '\n' + _transfer_line(ctx, report_b, report_a))


@cli.command('catalog')
@click.option('--validate', is_flag=True, help='Re-check every reference value and report it.')
@click.pass_context
def catalog_command(ctx, validate):
    """List the knot catalog."""
    catalog = _catalog(ctx)
    rows = []
    for record in catalog:
        if validate:
            validate_record(record)
        rows.append({'name': record.name, 'aliases': list(record.aliases), 'crossings': record.crossings,
                     'source': record.source, 'duplicate_of': record.duplicate_of})
    text = '\n'.join(f"{r['name']:<16} {r['crossings']:>3}  {', '.join(r['aliases'])}" for r in rows)
    if validate:
        text += f"\n{_paint('all reference values match', Fore.GREEN, ctx)}"
    _emit(ctx, {'knots': rows, 'validated': validate}, text)


@cli.command('export')
@click.option('--knot', 'knots', multiple=True, metavar='NAME', help='Knot to include (default: whole catalog).')
@click.option('--khovanov', 'with_khovanov', is_flag=True, help='Include Khovanov ranks.')
@click.option('--compute-s/--skip-s', default=True, show_default=True)
@click.option('--output', '-o', type=click.Path(dir_okay=False, writable=True), default=None)
@compute_options
@click.pass_context
def export_command(ctx, knots, with_khovanov, compute_s, output, oracle, threads, size_limit):
    """JSON report for a set of catalog knots."""
    cfg = _apply_compute_options(ctx, oracle, threads, size_limit)
    catalog = _catalog(ctx)
    records = [catalog.lookup(name) for name in knots] if knots else list(catalog)
    reports = {r.name: slice_report(r.pd, compute_s=compute_s, name=r.name, reference_genus=r.reference.genus,
                                    **cfg.homology_options) for r in records}
    khovanov_ranks = None
    if with_khovanov:
        khovanov_ranks = {r.name: khovanov_homology(r.pd, field=cfg.field, **cfg.homology_options) for r in records}
    document = export_report(records, reports, khovanov_ranks)
    if output:
        with open(output, 'w', encoding='utf-8') as handle:
            handle.write(document + '\n')
        click.echo(f"wrote {len(records)} knots to {output}", err=True)
    else:
        click.echo(document)


@cli.command()
@click.option('--host', default='127.0.0.1', show_default=True)
@click.option('--port', default=5000, type=int, show_default=True)
@click.option('--debug', is_flag=True)
def serve(host, port, debug):
    """Run the HTTP API."""
    from app.backend import create_app
    create_app().run(host=host, port=port, debug=debug)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code instead of exiting."""
    try:
        cli.main(args=list(argv) if argv is not None else None, prog_name='knotslice', standalone_mode=True)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else (0 if code is None else 1)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == '__main__':
    main()
