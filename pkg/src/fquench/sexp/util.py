'''
Created on Oct 19, 2026

@author: frustrated-quench contributors
'''
import sexpdata
from sexpdata import Symbol
import re
import logging 
log = logging.getLogger(__name__)

# entries that get their own line on write
BreakBefore = ['bond', 'param', 'section']

def loadTree(fpath:str):
    with open(fpath, 'r') as f:
        return sexpdata.loads(f.read())

def writeTree(fpath:str, tree):
    remove_nones(tree)
    with open(fpath, 'w') as f:
        # sexpdata dumps everything on one line, which gets 
        # unreadable with a few hundred bonds
        as_str = sexpdata.dumps(tree)
        for elname in BreakBefore:
            as_str = re.sub(rf'\(\s*{elname}\b', f'\n  ({elname}', as_str)
        f.write(as_str)
        f.write('\n')

def entity_type(level):
    '''
        Head symbol of an entry, e.g. 'bond' for (bond 0 1 0.9), 
        or None for atoms
    '''
    if isinstance(level, list) and len(level) and isinstance(level[0], Symbol):
        return level[0].value()
    return None

def entry_values(level):
    '''
        Everything after the head, with symbols turned into 
        plain strings.
    '''
    vals = []
    for v in level[1:]:
        if isinstance(v, Symbol):
            v = v.value()
        vals.append(v)
    return vals

def entry(name:str, *values):
    '''
        Build an entry for writing.  Strings become symbols when they
        look like identifiers, so they read back unquoted.
    '''
    out = [Symbol(name)]
    for v in values:
        if isinstance(v, bool):
            v = Symbol('yes' if v else 'no')
        elif isinstance(v, str) and re.match(r'^[A-Za-z_][\w\-\.]*$', v):
            v = Symbol(v)
        out.append(v)
    return out

def as_bool(v):
    if isinstance(v, bool):
        return v
    if isinstance(v, Symbol):
        v = v.value()
    return str(v).lower() in ('yes', 'true', 't', '1')

def remove_nones(alist):
    '''
        Strip None entries (unset optional fields) in place,
        recursively.
    '''
    alist[:] = [el for el in alist if el is not None]
    for el in alist:
        if isinstance(el, list):
            remove_nones(el)
