'''
Resolved run parameters.

A RunConfig is built from the command line, hashed, and written next to
the outputs as run.cfg:

  (run (version 1) (hash 3f09a1c2b7de)
    (param command quench)
    (param lx 3)
    (param ta 1.0 2.0 4.0)
    ...)

Created on Oct 19, 2026

@author: frustrated-quench contributors
'''
from dataclasses import dataclass, field, fields, asdict
import hashlib
import json
import os
import numpy as np
from fquench.errors import ConfigError
from fquench.sexp.sourcefile import SourceFile
from fquench.sexp.util import entry, entry_values, as_bool
import logging
log = logging.getLogger(__name__)

OutputDirVariable = 'FQUENCH_OUTPUT_DIR'
DefaultOutputDir = 'fquench-out'
ConfigFileName = 'run.cfg'
HashLength = 12
# left out of the hash: where outputs go and how much hardware is used
Unhashed = ('output_dir', 'threads', 'checkpoint')

@dataclass
class RunConfig:
    command: str = ''
    # lattice
    lx: int = 3
    ly: int = 6
    model: str = 'triangular'
    j1: float = None
    j2: float = None
    # quench
    ta: list = field(default_factory=lambda: [8.0])
    dt: float = 0.05
    reads: int = 1000
    schedule: str = None
    seed: int = 0
    # coarsening
    l: int = 120
    replicas: int = 100
    steps: int = 1000
    window: list = field(default_factory=lambda: [10, 300])
    # analysis
    inputs: list = field(default_factory=list)
    fit: bool = False
    exclude_boundary: int = 0
    plots: bool = False
    # shim
    iterations: int = 1500
    samples: int = 100
    bias: float = 0.05
    gain_error: float = 0.1
    line_error: float = 0.0
    temperature: float = 1.0
    sampler: str = 'gibbs'
    ring_iterations: int = 0
    checkpoint: str = None
    # ratio sweep, J2/J1 at fixed j1
    ratios: list = field(default_factory=lambda: [-3.0, -2.5, -2.0, -1.5, -1.0, -0.5])
    # run
    threads: int = 1
    output_dir: str = None

    def resolved_output_dir(self):
        return self.output_dir or os.environ.get(OutputDirVariable) or DefaultOutputDir

    def hashed_fields(self):
        return {k: v for k, v in asdict(self).items() if k not in Unhashed}

    def config_hash(self):
        '''
            First 12 hex digits of sha256 over the sorted-key JSON of
            everything but output location and worker count
        '''
        canon = json.dumps(self.hashed_fields(), sort_keys=True)
        return hashlib.sha256(canon.encode('utf-8')).hexdigest()[:HashLength]

    def as_dict(self):
        return asdict(self)

    @classmethod
    def from_params(cls, params:dict):
        '''
            Build from name -> list of raw values, coercing by field type
        '''
        kwargs = dict()
        for f in fields(cls):
            if f.name not in params:
                continue
            raw = params[f.name]
            default = f.default_factory() if callable(f.default_factory) else f.default
            if isinstance(default, list):
                kwargs[f.name] = list(raw)
            elif not raw:
                kwargs[f.name] = None
            elif isinstance(default, bool):
                kwargs[f.name] = as_bool(raw[0])
            elif isinstance(default, int):
                kwargs[f.name] = int(raw[0])
            elif isinstance(default, float) or f.name in ('j1', 'j2'):
                kwargs[f.name] = float(raw[0])
            else:
                kwargs[f.name] = str(raw[0])
        unknown = set(params) - {f.name for f in fields(cls)}
        if unknown:
            raise ConfigError(f"Unknown run parameter(s): {', '.join(sorted(unknown))}")
        return cls(**kwargs)

class RunConfigFile(SourceFile):
    '''
        rc = RunConfigFile('out/run.cfg')
        rc.config.lx, rc.hash

        RunConfigFile.from_config(cfg).write('out/run.cfg')
    '''
    Head = 'run'
    def __init__(self, filepath:str=None):
        self.config = None
        self.hash = None
        super().__init__(filepath)

    @classmethod
    def from_config(cls, config:RunConfig):
        rc = cls()
        rc.config = config
        rc.hash = config.config_hash()
        return rc

    def parse_entries(self, bytype:dict):
        params = dict()
        for level in bytype.get('param', []):
            vals = entry_values(level)
            if not vals:
                raise ConfigError(f"'{self.filepath}' has an empty (param) entry")
            params[str(vals[0])] = vals[1:]
        self.config = RunConfig.from_params(params)
        self.hash = entry_values(bytype['hash'][0])[0] if 'hash' in bytype else None
        if self.hash is not None and str(self.hash) != self.config.config_hash():
            log.warning(f"'{self.filepath}' records hash {self.hash}, its parameters hash to {self.config.config_hash()}")

    def will_write(self, filepath:str):
        if self.config is None:
            log.error('No run config to write')
            return False
        return super().will_write(filepath)

    def to_tree(self):
        tree = [entry('run')[0], entry('version', self.Version), entry('hash', self.config.config_hash())]
        for name, value in self.config.as_dict().items():
            if value is None:
                tree.append(entry('param', name))
            elif isinstance(value, list):
                tree.append(entry('param', name, *value))
            else:
                tree.append(entry('param', name, value))
        return tree

def parse_sweep(text:str, geometric:bool=True):
    '''
        'start:stop:count' to count values, geometrically spaced by
        default; a plain number or comma list is taken as is.
    '''
    text = str(text).strip()
    try:
        if ':' in text:
            parts = text.split(':')
            if len(parts) != 3:
                raise ValueError('need start:stop:count')
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
            if count < 1:
                raise ValueError('count must be at least 1')
            if count == 1:
                return [start]
            if geometric:
                if start <= 0 or stop <= 0:
                    raise ValueError('geometric sweeps need positive ends')
                values = np.geomspace(start, stop, count)
            else:
                values = np.linspace(start, stop, count)
            return [float(v) for v in values]
        return [float(v) for v in text.split(',') if v.strip()]
    except ValueError as e:
        raise ConfigError(f"Bad sweep '{text}': {e}")
