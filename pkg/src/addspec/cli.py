"""Click CLI for addspec: one subcommand per pipeline, JSON reports on stdout."""

import functools
import json
import logging
import pathlib
import sys
from collections.abc import Callable

import click
import addspec
from addspec.basis.coverage import check_counting_inequality, eigenvalue_report
from addspec.basis.coverage import thin_basis_report, verify_basis
from addspec.basis.spectrum import dilute_eigenvalue, spectrum_interval_report
from addspec.basis.spectrum import synthetic_seed
from addspec.basis.sumset import iterated_sumset
from addspec.config import ExperimentConfig, Limits, load_config
from addspec.equidist.relation import Irrational, PerfectPower, power_relation
from addspec.equidist.relation import rational_case_witness
from addspec.equidist.scan import impossibility_scan
from addspec.export.bitmap import write_bitmap
from addspec.export.sequence import load_sequence, save_sequence
from addspec.export.trace import write_trace
from addspec.growth.function import GrowthFunction, parse_growth
from addspec.growth.stability import probe_exponential_growth, probe_stability
from addspec.model import AddspecError, PreconditionError, to_jsonable
from addspec.sequences.permutation import permutation_from_json, rearrange
from addspec.sequences.prefix import SequencePrefix
from addspec.sequences.tauberian import tauberian_experiment
from addspec.sequences.verdict import asymptotic_verdict, rearrangement_growth_check
from addspec.supersequence.adversarial import DEFAULT_GAMMA, adversarial_construction
from addspec.supersequence.build import DEFAULT_EPSILON0, build_supersequence
from addspec.supersequence.build import perfect_power_supersequence

logger = logging.getLogger('addspec')

_POSITIVE = click.FloatRange(min=0, min_open=True)


def _json_out(obj: object, path: str | None = None) -> None:
    """Write JSON with 2-space indent, sorted keys, to `path` or stdout."""
    text = json.dumps(to_jsonable(obj), indent=2, sort_keys=True)
    if path:
        pathlib.Path(path).write_text(text + '\n')
    else:
        click.echo(text)


def _report(ctx: click.Context, payload: dict) -> None:
    _json_out({'status': 'ok', **payload}, ctx.obj.get('output'))


def _limits(ctx: click.Context) -> Limits:
    if ctx.obj.get('limits') is None:
        ctx.obj['limits'] = Limits.from_env()
    return ctx.obj['limits']


def _handles_errors(fn: Callable) -> Callable:
    """Precondition failures exit 2 with a JSON report; other errors exit 1."""
    @functools.wraps(fn)
    def wrapper(*args: object, **kwargs: object) -> None:
        try:
            fn(*args, **kwargs)
        except PreconditionError as e:
            ctx = click.get_current_context()
            logger.info('precondition failed: %s', e)
            _json_out({
                'status': 'precondition_failed',
                'error': type(e).__name__,
                'message': str(e),
                'violation': e.violation,
                }, ctx.obj.get('output'))
            ctx.exit(2)
        except AddspecError as e:
            raise click.ClickException(f'{type(e).__name__}: {e}') from None
    return wrapper


class GrowthParam(click.ParamType):
    """JSON object or shorthand power:a:h | exp:b | expsqrt:c."""

    name = 'growth'

    def convert(self, value: object, param: click.Parameter | None,
                ctx: click.Context | None) -> GrowthFunction:
        if isinstance(value, GrowthFunction):
            return value
        if isinstance(value, dict):
            value = json.dumps(value)
        try:
            return parse_growth(str(value))
        except PreconditionError as e:
            self.fail(str(e), param, ctx)


GROWTH = GrowthParam()


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(',') if t.strip()]
    except ValueError:
        raise click.BadParameter(f'expected comma-separated numbers, got {text!r}') from None


_STATUS = {'status': {'enum': ['ok', 'precondition_failed']}}

SCHEMAS: dict[str, dict] = {
    'stability': {'required': ['status', 'verdict', 'exponential_growth']},
    'rearrange': {'required': ['status', 'sequence', 'N']},
    'tauberian': {'required': ['status', 'N', 'trials', 'sup_deviations',
                               'max_sup_deviation', 'all_hold']},
    'supersequence': {'required': ['status', 'B', 'embedding', 'verdict',
                                   'filler_count', 'embedded_count']},
    'sumset': {'required': ['status', 'h', 'X', 'size', 'missing', 'missing_count']},
    'verify-basis': {'required': ['status', 'coverage']},
    'dilute': {'required': ['status', 'alpha', 'beta', 'verdict', 'coverage_A',
                            'coverage_B', 'contains', 'succeeded']},
    'spectrum': {'required': ['status', 'h', 'ceiling', 'samples', 'downward_closed']},
    'impossible': {'required': ['status', 'relation', 'path']},
    'adversarial': {'required': ['status', 'f', 'A', 'witness', 'witness_k']},
    }


def schema_for(name: str) -> dict:
    """JSON schema of a subcommand's success report."""
    spec = SCHEMAS[name]
    return {
        '$schema': 'https://json-schema.org/draft/2020-12/schema',
        'title': f'addspec {name} report',
        'type': 'object',
        'required': spec['required'],
        'properties': dict(_STATUS),
        }


def _configure_logging(verbose: int) -> None:
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose > 1:
        level = logging.DEBUG
    logging.basicConfig(
        level=level, stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s')


@click.group(invoke_without_command=True)
@click.version_option(version=addspec.__version__, prog_name='addspec')
@click.option('--output', '-o', default=None, help='Write the JSON report to a file')
@click.option('--trace', 'trace_path', default=None, help='Write a CSV trace to a file')
@click.option('--seed', default=0, type=int, help='Seed for randomized experiments')
@click.option('--threads', default=1, type=click.IntRange(min=1), help='Worker processes')
@click.option('--json-schema', 'json_schema', is_flag=True, default=False,
              help='Print the report schema and exit')
@click.option('--config', 'config_path', default=None,
              type=click.Path(exists=True, dir_okay=False),
              help='Experiment config supplying subcommand defaults')
@click.option('--verbose', '-v', count=True, help='Log progress to stderr (-vv for debug)')
@click.pass_context
def cli(ctx: click.Context, output: str | None, trace_path: str | None, seed: int,
        threads: int, json_schema: bool, config_path: str | None, verbose: int) -> None:
    """Additive spectra: growth functions, rearrangements, supersequences, sumset bases."""
    _configure_logging(verbose)
    ctx.ensure_object(dict)
    ctx.obj.update(output=output, trace=trace_path, seed=seed, threads=threads)
    if config_path:
        try:
            config = load_config(config_path)
        except PreconditionError as e:
            raise click.ClickException(str(e)) from None
        index: dict[str, click.Parameter] = {}
        if config.subcommand in cli.commands:
            index = _option_index(cli.commands[config.subcommand])
        ctx.default_map = {config.subcommand: {
            index[k].name if k in index else k: v
            for k, v in config.parameters.items()}}
        for key, value in (('output', config.output_path), ('trace', config.trace_path)):
            if ctx.obj[key] is None:
                ctx.obj[key] = value
    if json_schema:
        name = ctx.invoked_subcommand
        _json_out(schema_for(name) if name in SCHEMAS
                  else {n: schema_for(n) for n in SCHEMAS})
        ctx.exit(0)
    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())


@cli.command()
@click.option('--f', 'f', required=True, type=GROWTH, help='Growth function')
@click.option('--delta', default=1.0, type=_POSITIVE, help='Shift delta')
@click.option('--grid-max', default=1e6, type=_POSITIVE, help='Largest grid point')
@click.option('--tolerance', default=0.01, type=_POSITIVE, help='Allowed excess over 1')
@click.pass_context
@_handles_errors
def stability(ctx: click.Context, f: GrowthFunction, delta: float, grid_max: float,
              tolerance: float) -> None:
    """Check f(x+delta)/f(x) -> 1 on a geometric grid."""
    verdict = probe_stability(f, delta, grid_max, tolerance)
    if ctx.obj['trace']:
        write_trace(ctx.obj['trace'], ['x', 'ratio'], verdict.trend)
    _report(ctx, {
        'f': f.to_json(),
        'verdict': verdict,
        'exponential_growth': probe_exponential_growth(f, delta, grid_max),
        })


@cli.command(name='rearrange')
@click.option('--A', 'a_path', required=True, help='Sequence file')
@click.option('--sigma', required=True, help="Permutation JSON or 'powerswap'")
@click.option('--f', 'f', default=None, type=GROWTH, help='Measure A against f')
@click.option('--g', 'g', default=None, type=GROWTH, help='Measure the rearrangement against g')
@click.option('--epsilon', default=0.01, type=_POSITIVE, help='Verdict tolerance')
@click.option('--save', default=None, help='Write the rearranged sequence to a file')
@click.pass_context
@_handles_errors
def rearrange_cmd(ctx: click.Context, a_path: str, sigma: str, f: GrowthFunction | None,
                  g: GrowthFunction | None, epsilon: float, save: str | None) -> None:
    """Apply a permutation of indices to a sequence."""
    A = load_sequence(a_path)
    spec = permutation_from_json(sigma)
    R = rearrange(A, spec)
    if save:
        save_sequence(save, R)
    payload: dict = {'N': len(R), 'sigma': spec.to_json(), 'sequence': R}
    if f is not None and g is not None:
        payload['growth_check'] = rearrangement_growth_check(A, spec, f, g, epsilon)
    elif f is not None:
        payload['verdict'] = asymptotic_verdict(R, f, epsilon)
    _report(ctx, payload)


@cli.command()
@click.option('--N', 'N', default=10_000, type=click.IntRange(min=10), help='Prefix length')
@click.option('--trials', default=100, type=click.IntRange(min=1), help='Random sequences')
@click.option('--noise', default=0.05, type=click.FloatRange(0, 1, max_open=True),
              help='Relative noise bound')
@click.option('--epsilon', default=0.12, type=_POSITIVE, help='Verdict tolerance')
@click.pass_context
@_handles_errors
def tauberian(ctx: click.Context, N: int, trials: int, noise: float, epsilon: float) -> None:
    """Sort noisy copies of k^2 and measure them against x^2."""
    result = tauberian_experiment(N, trials, noise, ctx.obj['seed'], epsilon=epsilon)
    if ctx.obj['trace']:
        write_trace(ctx.obj['trace'], ['trial', 'sup_deviation'],
                    enumerate(result['sup_deviations'], 1))
    _report(ctx, result)


@cli.command()
@click.option('--f', 'f', required=True, type=GROWTH, help='Growth of A')
@click.option('--g', 'g', required=True, type=GROWTH, help='Target growth of B')
@click.option('--A', 'a_path', required=True, help='Sequence file for A')
@click.option('--N', 'N', required=True, type=click.IntRange(min=10), help='Length of B')
@click.option('--epsilon0', default=DEFAULT_EPSILON0, type=_POSITIVE,
              help='Verdict tolerance')
@click.option('--no-checks', is_flag=True, default=False,
              help='Skip stability, superlinearity and density checks')
@click.option('--save', default=None, help='Write B to a file')
@click.pass_context
@_handles_errors
def supersequence(ctx: click.Context, f: GrowthFunction, g: GrowthFunction, a_path: str,
                  N: int, epsilon0: float, no_checks: bool, save: str | None) -> None:
    """Build B ~ g containing A ~ f."""
    A = load_sequence(a_path)
    result = build_supersequence(
        A, f, g, N, epsilon0=epsilon0, check_preconditions=not no_checks)
    if save:
        save_sequence(save, result.B)
    if ctx.obj['trace']:
        write_trace(ctx.obj['trace'], ['k', 'n_k', 'position', 'a_k'],
                    ((k, n, p, a) for k, (n, p, a) in enumerate(
                        zip(result.indices, result.embedding, A.values), 1)))
    _report(ctx, result.to_json())


@cli.command()
@click.option('--A', 'a_path', required=True, help='Sequence file')
@click.option('--h', 'h', required=True, type=click.IntRange(min=1), help='Order')
@click.option('--X', 'X', required=True, type=click.IntRange(min=1), help='Window end')
@click.option('--bitmap', default=None, help='Write hA as a raw little-endian bitmap')
@click.pass_context
@_handles_errors
def sumset(ctx: click.Context, a_path: str, h: int, X: int, bitmap: str | None) -> None:
    """Compute hA on [0, X]."""
    limits = _limits(ctx)
    A = load_sequence(a_path)
    bits = iterated_sumset(A.distinct_sorted(), h, X, limits)
    if bitmap:
        write_bitmap(bitmap, bits)
    missing = bits.missing()
    if missing.size > limits.report_limit:
        click.echo(f'missing list truncated to {limits.report_limit} of {missing.size}',
                   err=True)
    _report(ctx, {
        'h': h,
        'X': X,
        'size': len(bits),
        'missing': [int(m) for m in missing[:limits.report_limit]],
        'missing_count': int(missing.size),
        })


@cli.command(name='verify-basis')
@click.option('--A', 'a_path', required=True, help='Sequence file')
@click.option('--h', 'h', required=True, type=click.IntRange(min=1), help='Order')
@click.option('--X', 'X', required=True, type=click.IntRange(min=1), help='Window end')
@click.pass_context
@_handles_errors
def verify_basis_cmd(ctx: click.Context, a_path: str, h: int, X: int) -> None:
    """Check whether A is a window basis of order h on [0, X]."""
    A = load_sequence(a_path)
    report = verify_basis(A, h, X, _limits(ctx))
    payload: dict = {'coverage': report, 'thin_basis': thin_basis_report(A, h)}
    if report.is_window_basis:
        payload['counting_inequality'] = check_counting_inequality(A, h, report)
        payload['eigenvalue'] = eigenvalue_report(A, h, report)
    _report(ctx, payload)


def _seed_or_file(a_path: str | None, alpha: float, h: int, K: int,
                  m: int) -> SequencePrefix:
    if a_path:
        return load_sequence(a_path)
    return synthetic_seed(alpha, h, K, m)


@cli.command()
@click.option('--alpha', required=True, type=_POSITIVE, help='Eigenvalue of A')
@click.option('--beta', required=True, type=_POSITIVE, help='Target eigenvalue')
@click.option('--h', 'h', required=True, type=click.IntRange(min=1), help='Order')
@click.option('--N', 'N', required=True, type=click.IntRange(min=10), help='Length of B')
@click.option('--X', 'X', required=True, type=click.IntRange(min=1), help='Coverage window')
@click.option('--A', 'a_path', default=None, help='Sequence file (default: synthetic seed)')
@click.option('--K', 'K', default=1000, type=click.IntRange(min=1), help='Synthetic seed terms')
@click.option('--m', 'm', default=10, type=click.IntRange(min=0), help='Synthetic initial segment')
@click.option('--epsilon0', default=DEFAULT_EPSILON0, type=_POSITIVE, help='Verdict tolerance')
@click.pass_context
@_handles_errors
def dilute(ctx: click.Context, alpha: float, beta: float, h: int, N: int, X: int,
           a_path: str | None, K: int, m: int, epsilon0: float) -> None:
    """Dilute eigenvalue alpha of A to beta through a supersequence."""
    A = _seed_or_file(a_path, alpha, h, K, m)
    outcome = dilute_eigenvalue(A, h, alpha, beta, N, X, epsilon0, _limits(ctx))
    _report(ctx, outcome.to_json())


@cli.command()
@click.option('--h', 'h', required=True, type=click.IntRange(min=1), help='Order')
@click.option('--alphas', required=True, help='Comma-separated eigenvalues')
@click.option('--betas', 'betas_per_alpha', default=3, type=click.IntRange(min=1),
              help='Evenly spaced betas tested below each alpha')
@click.option('--N', 'N', default=2000, type=click.IntRange(min=10), help='Length of B')
@click.option('--X', 'X', default=10_000, type=click.IntRange(min=1), help='Coverage window')
@click.option('--K', 'K', default=1000, type=click.IntRange(min=1), help='Synthetic seed terms')
@click.option('--m', 'm', default=10, type=click.IntRange(min=0), help='Synthetic initial segment')
@click.pass_context
@_handles_errors
def spectrum(ctx: click.Context, h: int, alphas: str, betas_per_alpha: int, N: int,
             X: int, K: int, m: int) -> None:
    """Run dilutions below each alpha and summarize downward closure."""
    limits = _limits(ctx)
    samples = []
    for alpha in _floats(alphas):
        A = synthetic_seed(alpha, h, K, m)
        outcomes = []
        for j in range(1, betas_per_alpha + 1):
            beta = alpha * j / (betas_per_alpha + 1)
            try:
                ok = dilute_eigenvalue(A, h, alpha, beta, N, X, limits=limits).succeeded
            except PreconditionError as e:
                logger.info('dilution alpha=%g beta=%g rejected: %s', alpha, beta, e)
                ok = False
            outcomes.append((beta, ok))
        samples.append((alpha, outcomes))
    _report(ctx, spectrum_interval_report(h, samples))


@cli.command()
@click.option('--u', 'u', required=True, type=click.IntRange(min=3), help='Base being approximated')
@click.option('--v', 'v', required=True, type=click.IntRange(min=2), help='Approximating base')
@click.option('--K', 'K', default=100_000, type=click.IntRange(min=1), help='Largest k')
@click.pass_context
@_handles_errors
def impossible(ctx: click.Context, u: int, v: int, K: int) -> None:
    """Decide whether powers of u embed in a sequence ~ v^x."""
    relation = power_relation(u, v)
    payload: dict = {'relation': relation.to_json()}
    if isinstance(relation, PerfectPower):
        # a small prefix shows b_n = v^n, n_k = r k
        result = perfect_power_supersequence(u, v, relation.r, max(10, min(K, 20)))
        payload.update(path='perfect_power', b_n=f'{v}^n', n_k=f'{relation.r}k',
                       embedding=list(result.indices), verdict=result.verdict)
    elif isinstance(relation, Irrational):
        rows: list[tuple[int, int, str]] | None = [] if ctx.obj['trace'] else None
        report = impossibility_scan(u, v, K, ctx.obj['threads'], _limits(ctx), rows)
        if rows is not None:
            write_trace(ctx.obj['trace'], ['k', 'floor_n', 'zone'], rows)
        payload.update(path='scan', scan=report)
    else:
        payload.update(path='rational_log', witness=rational_case_witness(
            u, v, relation.r, relation.s, K))
    _report(ctx, payload)


@cli.command()
@click.option('--g', 'g', required=True, type=GROWTH, help='Growth with exponential rate')
@click.option('--K', 'K', default=50, type=click.IntRange(min=2), help='Knots, with m_k = k')
@click.option('--m', 'm', default=None, help='Comma-separated m_1 < m_2 < ... (overrides --K)')
@click.option('--gamma', default=DEFAULT_GAMMA, type=_POSITIVE, help='Growth margin')
@click.option('--attempt-build', is_flag=True, default=False,
              help='Then try to build a supersequence B ~ g of the result')
@click.pass_context
@_handles_errors
def adversarial(ctx: click.Context, g: GrowthFunction, K: int, m: str | None,
                gamma: float, attempt_build: bool) -> None:
    """Construct A ~ f with no supersequence ~ g."""
    indices = [int(x) for x in _floats(m)] if m else list(range(1, K + 1))
    result = adversarial_construction(g, indices, gamma)
    if attempt_build:
        build_supersequence(result.A, result.f, g, len(result.A))
    _report(ctx, result.to_json())


@cli.command()
@click.argument('config_path', type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def run(ctx: click.Context, config_path: str) -> None:
    """Run the experiment described by a JSON config file."""
    try:
        config = load_config(config_path)
        config.validate(_known_parameters())
    except PreconditionError as e:
        raise click.ClickException(str(e)) from None
    _dispatch(ctx, config)


def _option_index(cmd: click.Command) -> dict[str, click.Parameter]:
    """Parameters keyed by python name and by option name (--grid-max -> grid_max)."""
    index: dict[str, click.Parameter] = {}
    for p in cmd.params:
        index[p.name] = p
        for opt in p.opts:
            index.setdefault(opt.lstrip('-').replace('-', '_'), p)
    return index


def _known_parameters() -> dict[str, set[str]]:
    return {
        name: set(_option_index(cmd))
        for name, cmd in cli.commands.items() if name != 'run'
        }


def _dispatch(ctx: click.Context, config: ExperimentConfig) -> None:
    """Invoke the configured subcommand through click's own parsing and range checks."""
    ctx.obj.update(seed=config.seed, threads=config.threads)
    if config.output_path:
        ctx.obj['output'] = config.output_path
    if config.trace_path:
        ctx.obj['trace'] = config.trace_path
    cmd = cli.commands[config.subcommand]
    options = _option_index(cmd)
    args: list[str] = []
    for key, value in config.parameters.items():
        param = options[key]
        flag = param.opts[0]
        if getattr(param, 'is_flag', False):
            if value:
                args.append(flag)
            continue
        if isinstance(value, (dict, list)):
            value = json.dumps(value)
        args.extend([flag, str(value)])
    logger.info('run: %s %s', config.subcommand, ' '.join(args))
    with cmd.make_context(config.subcommand, args, parent=ctx) as sub_ctx:
        cmd.invoke(sub_ctx)
