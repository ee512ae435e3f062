'''
fquench command line.

  fquench quench --lx 3 --ly 6 --model triangular --ta-sweep 1:32:8 --reads 1000
  fquench analyze fquench-out/samples_ta*.txt --fit --plots
  fquench coarsen --replicas 4
  fquench shim --lx 12 --ly 12 --model villain --iterations 1500
  fquench ratio-sweep --lx 3 --ly 6 --ratios=-3:-0.5:6 --ta 2,8

Exit codes: 0 success, 2 bad configuration or missing file, 3 numerical
failure.  FQUENCH_OUTPUT_DIR sets the default output directory.

Created on Oct 19, 2026

@author: frustrated-quench contributors
'''
import argparse
import sys
from fquench import VERSION
from fquench.errors import ConfigError, NumericalError
from fquench.model_template import MODEL_KINDS
from fquench.cli.config import RunConfig, parse_sweep, OutputDirVariable, DefaultOutputDir
from fquench.cli.commands import Commands
import logging
log = logging.getLogger(__name__)

ExitOk = 0
ExitConfig = 2
ExitNumerical = 3
LogFormat = '%(levelname)s %(name)s: %(message)s'

def _global_flags():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument('--threads', type=int, default=1, help='worker processes (default 1)')
    p.add_argument('--output-dir', default=None,
                   help=f'output directory (default ${OutputDirVariable} or ./{DefaultOutputDir})')
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--plots', action='store_true', help='also write SVG plots')
    level = p.add_mutually_exclusive_group()
    level.add_argument('-v', '--verbose', action='store_true')
    level.add_argument('-q', '--quiet', action='store_true')
    return p

def _lattice_flags(p, lx=3, ly=6):
    p.add_argument('--lx', type=int, default=lx, help='open extent')
    p.add_argument('--ly', type=int, default=ly, help='periodic extent, even')
    p.add_argument('--model', choices=MODEL_KINDS, default='triangular')
    p.add_argument('--j1', type=float, default=None)
    p.add_argument('--j2', type=float, default=None)

def _quench_flags(p):
    ta = p.add_mutually_exclusive_group()
    ta.add_argument('--ta-sweep', default=None, help='start:stop:count, geometric')
    ta.add_argument('--ta', default='8', help='anneal time(s), comma separated (default 8)')
    p.add_argument('--dt', type=float, default=0.05)
    p.add_argument('--reads', type=int, default=1000)
    p.add_argument('--schedule', default=None, help='schedule CSV with columns s,gamma,jcal')

def build_parser():
    common = _global_flags()
    parser = argparse.ArgumentParser(prog='fquench', description='Quench dynamics of frustrated Ising cylinders')
    parser.add_argument('--version', action='version', version=f'%(prog)s {VERSION}')
    sub = parser.add_subparsers(dest='command', metavar='command')
    sub.required = True

    p = sub.add_parser('quench', parents=[common], help='exact quench, sample files per t_a')
    _lattice_flags(p)
    _quench_flags(p)

    p = sub.add_parser('coarsen', parents=[common], help='classical clock-model coarsening')
    p.add_argument('--l', type=int, default=120, help='honeycomb size, even')
    p.add_argument('--replicas', type=int, default=100)
    p.add_argument('--steps', type=int, default=1000)
    p.add_argument('--window', type=int, nargs=2, default=[10, 300], metavar=('LO', 'HI'),
                   help='fit window in steps')

    p = sub.add_parser('analyze', parents=[common], help='observables and fits from sample files')
    p.add_argument('inputs', nargs='+', help='sample files of one lattice')
    p.add_argument('--fit', action='store_true', help='power-law fits against t_a, needs 3+ points')
    p.add_argument('--exclude-boundary', type=int, default=0, metavar='K',
                   help='drop K columns at each open edge from order parameters')

    p = sub.add_parser('shim', parents=[common], help='closed-loop shim of a miscalibrated mock sampler')
    _lattice_flags(p, lx=12, ly=12)
    p.add_argument('--iterations', type=int, default=1500)
    p.add_argument('--samples', type=int, default=100, help='reads per iteration')
    p.add_argument('--bias', type=float, default=0.05, help='hidden field bias range')
    p.add_argument('--gain-error', type=float, default=0.1, help='hidden gain error of one bond')
    p.add_argument('--line-error', type=float, default=0.0, help='hidden anneal line error range')
    p.add_argument('--temperature', type=float, default=1.0, help='Gibbs sampler temperature')
    p.add_argument('--sampler', choices=('gibbs', 'quench'), default='gibbs')
    p.add_argument('--ta', default='8', help='anneal time for --sampler quench')
    p.add_argument('--dt', type=float, default=0.05)
    p.add_argument('--ring-iterations', type=int, default=0,
                   help='first calibrate anneal offsets on a 64 qubit ring')
    p.add_argument('--checkpoint', default=None, help='JSON checkpoint, resumed when present')

    p = sub.add_parser('ratio-sweep', parents=[common], help='order parameters across J2/J1')
    p.add_argument('--lx', type=int, default=3)
    p.add_argument('--ly', type=int, default=6)
    p.add_argument('--j1', type=float, default=None, help='fixed J1 (default 0.9)')
    p.add_argument('--ratios', default='-3:-0.5:6', help='J2/J1 values, start:stop:count linear')
    p.add_argument('--exclude-boundary', type=int, default=0, metavar='K')
    _quench_flags(p)
    return parser

def config_from_args(args):
    '''
        RunConfig from parsed arguments; flags a subcommand lacks keep
        their defaults.
    '''
    values = dict(vars(args))
    for flag in ('verbose', 'quiet'):
        values.pop(flag, None)
    sweep = values.pop('ta_sweep', None)
    if sweep is not None:
        values['ta'] = parse_sweep(sweep)
    elif 'ta' in values:
        values['ta'] = parse_sweep(values['ta'])
    if 'ratios' in values:
        values['ratios'] = parse_sweep(values['ratios'], geometric=False)
    if 'window' in values:
        values['window'] = list(values['window'])
    if values.get('threads', 1) < 1:
        raise ConfigError(f"--threads must be at least 1, got {values['threads']}")
    fields = RunConfig.__dataclass_fields__
    return RunConfig(**{k: v for k, v in values.items() if k in fields})

def _configure_logging(args):
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format=LogFormat, force=True)

def main(argv=None):
    args = build_parser().parse_args(argv)
    _configure_logging(args)
    try:
        config = config_from_args(args)
        log.debug(f'Resolved {config} hash {config.config_hash()}')
        paths = Commands[config.command](config)
        for path in paths:
            log.debug(f'Output {path}')
        log.info(f'{config.command} done, outputs in {config.resolved_output_dir()}')
        return ExitOk
    except (ConfigError, FileNotFoundError) as e:
        log.error(str(e), exc_info=args.verbose)
        return ExitConfig
    except NumericalError as e:
        log.error(str(e), exc_info=args.verbose)
        return ExitNumerical

if __name__ == '__main__':
    sys.exit(main())
