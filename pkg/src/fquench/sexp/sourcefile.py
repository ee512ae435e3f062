'''
Base for files read into and written from one object, e.g.

  (run (version 1) (hash 3f2a...) (param lx 4) ...)

read()/write() run the will_load/will_write hooks and then load()/dump().
The default load()/dump() handle a single s-expression: subclasses set
Head and implement parse_entries() and to_tree().  Files in another
format override load()/dump() instead.

Created on Oct 19, 2026

@author: frustrated-quench contributors
'''
from fquench.sexp.util import loadTree, writeTree, entity_type
from fquench.errors import ConfigError
import logging
log = logging.getLogger(__name__)

class SourceFile:
    Head = None
    Version = 1
    def __init__(self, filepath:str=None):
        '''
            c'tor for file-backed objects,
            baseclass for specific file types (lattices, run configs).

            @param filepath: path/to/source, or None for an object
            that will only be written
        '''
        self.tree = None
        self._all = dict()
        self._filepath = filepath
        if filepath is not None:
            self.read(filepath)

    @property
    def filepath(self):
        return self._filepath

    def will_load(self, filepath:str):
        '''
            Called prior to a read.
            For overriding in subclasses.
            Return False to abort
        '''
        log.debug(f'Will read {filepath}')
        return True

    def will_write(self, filepath:str):
        '''
            Called prior to a write.
            For overriding in subclasses.
            Return False to abort
        '''
        log.debug(f'Will write {filepath}')
        return True

    def parse_entries(self, bytype:dict):
        raise NotImplementedError('Unimplemented')

    def to_tree(self):
        raise NotImplementedError('Unimplemented')

    def check_version(self, version, filepath:str):
        if version > self.Version:
            raise ConfigError(f"'{filepath}' has version {version}, only up to {self.Version} is understood")

    def load(self, filepath:str):
        '''
            Parse the s-expression and hand entries, grouped by head
            symbol, to parse_entries().
        '''
        try:
            self.tree = loadTree(filepath)
        except FileNotFoundError:
            raise
        except Exception as e:
            raise ConfigError(f"Could not parse '{filepath}': {e}")

        if entity_type(self.tree) != self.Head:
            raise ConfigError(f"'{filepath}' is not a {self.Head} file (starts with {entity_type(self.tree)})")

        bytype = {}
        for level in self.tree[1:]:
            ent_type = entity_type(level)
            if ent_type is None:
                log.debug(f'Skipping stray atom {level} in {filepath}')
                continue
            bytype.setdefault(ent_type, []).append(level)

        self.check_version(bytype.get('version', [[None, 1]])[0][1], filepath)
        self._all = bytype
        self.parse_entries(bytype)

    def dump(self, fpath:str):
        self.tree = self.to_tree()
        writeTree(fpath, self.tree)

    def read(self, filepath:str):
        '''
            Read in the file.
            @param filepath: path/to/file
        '''
        if not self.will_load(filepath):
            log.info(f'Aborting read of {filepath}')
            return

        self._filepath = filepath
        self.load(filepath)
        log.info(f'Read {self.Head} from {filepath}')

    def write(self, fpath:str):
        '''
            Write current contents to file.
            @param fpath: path/to/output
        '''
        if not self.will_write(fpath):
            log.info(f"Write to '{fpath}' aborted")
            return
        self.dump(fpath)
        log.info(f"Wrote {self.Head} to {fpath}")

    def reload(self):
        '''
            reloads originally loaded file
        '''
        log.info(f"Reloading '{self._filepath}'")
        self.read(self._filepath)

    def overwrite(self):
        '''
            overwrites originally loaded file
        '''
        log.info(f"Overwriting loaded file '{self._filepath}'")
        self.write(self._filepath)

    def __repr__(self):
        return f"<{self.__class__.__name__} '{self.filepath}'>"
