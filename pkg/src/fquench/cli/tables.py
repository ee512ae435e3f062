'''
CSV tables with a JSON metadata line on top:

  # {"command": "analyze", "config_hash": "3f09a1c2b7de", ...}
  t_a,m_tri,m_tri_err,...

Created on Oct 19, 2026

@author: frustrated-quench contributors
'''
import json
import os
import pandas as pd
from fquench.errors import ConfigError
import logging
log = logging.getLogger(__name__)

MetadataPrefix = '# '
FloatFormat = '%.10g'

def output_path(directory:str, name:str):
    os.makedirs(directory, exist_ok=True)
    return os.path.join(directory, name)

def write_table(path:str, frame:pd.DataFrame, metadata:dict=None):
    with open(path, 'w', newline='') as f:
        f.write(MetadataPrefix + json.dumps(metadata or {}, sort_keys=True) + '\n')
        frame.to_csv(f, index=False, float_format=FloatFormat, lineterminator='\n')
    log.info(f'Wrote {len(frame)} rows to {path}')
    return path

def read_table(path:str):
    '''
        @return: (DataFrame, metadata dict)
    '''
    with open(path, 'r') as f:
        head = f.readline()
        if not head.startswith(MetadataPrefix.strip()):
            raise ConfigError(f"'{path}' does not start with a metadata line")
        try:
            metadata = json.loads(head[1:])
        except json.JSONDecodeError as e:
            raise ConfigError(f"'{path}' has a malformed metadata line: {e}")
        frame = pd.read_csv(f)
    return frame, metadata
