'''
List-like collections of lattice elements: sites, bonds, logical
sites and coupler orbits.

    for bond in lattice.bonds:
        bond.value
    lattice.bonds[3].is_afm
    orbits.v_x0_even.members

Created on Oct 19, 2026

@author: frustrated-quench contributors
'''

import re
import logging

log = logging.getLogger(__name__)
class ElementCollection:
    '''
        Acts like a read-mostly list of elements, keeping a reference
        to the lattice that owns them.
    '''
    def __init__(self, parent, elements:list):
        self._parent = parent
        self._elements = elements

    @property
    def parent(self):
        return self._parent

    def append(self, element):
        self._elements.append(element)

    def filter(self, predicate):
        return list(filter(predicate, self._elements))

    def __getitem__(self, index:int):
        return self._elements[index]

    def __iter__(self):
        return iter(self._elements)

    def __len__(self):
        return len(self._elements)

    def __repr__(self):
        return f'<{type(self).__name__} of {len(self._elements)}>'

    def __str__(self):
        return '\n'.join(str(e) for e in self._elements)

class NamedElementCollection(ElementCollection):
    '''
        Elements also reachable by a cleaned-up name, as attributes
        (tab-completes in a shell) or string keys:

            orbits.v_x0_even
            orbits['v_x0_even']

        @param namefetcher: element -> raw name
    '''
    NameCleanerRegex = re.compile(r'[^\w]+')
    def __init__(self, parent, elements:list, namefetcher):
        super().__init__(parent, [])
        self._named = dict()
        self._namefetcher = namefetcher
        for el in elements:
            self.append(el)

    def _cleanse_key(self, key:str):
        key = self.NameCleanerRegex.sub('_', key.replace('-', 'm')).strip('_')
        if key[:1].isdigit():
            key = f'n{key}'
        return key

    def append(self, element):
        super().append(element)
        name = self._namefetcher(element)
        if not name:
            log.warning(f'{element} has no name, reachable by index only')
            return
        name = self._cleanse_key(name)
        while name in self._named:
            name = f'{name}_'
        self._named[name] = element

    def __contains__(self, key):
        if isinstance(key, str):
            return key in self._named
        return key in self._elements

    def __getattr__(self, key:str):
        if key.startswith('_'):
            raise AttributeError(key)
        if key in self._named:
            return self._named[key]
        raise AttributeError(f"No element named {key}, have {', '.join(self._named)}")

    def __getitem__(self, indexOrKey):
        if isinstance(indexOrKey, str):
            if indexOrKey in self._named:
                return self._named[indexOrKey]
            raise KeyError(indexOrKey)
        return super().__getitem__(indexOrKey)

    def __dir__(self):
        return self._named.keys()
