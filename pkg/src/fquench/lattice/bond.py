'''
Created on Oct 19, 2026

@author: frustrated-quench contributors
'''
import math
import numpy as np
from fquench.collection import ElementCollection
from fquench.lattice.site import Location

VERTICAL = 'vertical'
HORIZONTAL = 'horizontal'

class Bond:
    '''
        A coupler between two sites.
        
        Vertical bonds go from (x, y) to (x, y+1 mod ly), horizontal 
        ones from (x, y) to (x+1, y).  column and row are those of 
        the first endpoint.  coupling_class is 'j1' or 'j2' and does 
        not change when the value is shimmed.
    '''
    RoundPrecision = 6
    def __init__(self, index:int, a:int, b:int, value:float, kind:str, 
                 column:int, row:int, coupling_class:str, location:Location):
        self.index = index
        self.a = a 
        self.b = b
        self.value = value
        self.kind = kind
        self.column = column 
        self.row = row 
        self.coupling_class = coupling_class
        self.location = location
    
    @property 
    def sites(self):
        return (self.a, self.b)
        
    @property 
    def delta_x(self):
        return 0 if self.kind == VERTICAL else 1
        
    @property 
    def delta_y(self):
        return 1 if self.kind == VERTICAL else 0
    
    @property 
    def length(self):
        return round(math.sqrt(self.delta_x**2 + self.delta_y**2), self.RoundPrecision)
    
    @property 
    def unit_vector(self):
        mag = self.length
        return [self.delta_x/mag, self.delta_y/mag]
        
    @property 
    def is_afm(self):
        return self.value > 0
    
    def is_frustrated(self, sa, sb):
        '''
            Frustration indicator (sign(J) sa sb + 1)/2, works
            on scalars or arrays of reads.
        '''
        return (np.sign(self.value) * np.asarray(sa) * np.asarray(sb) + 1) / 2
    
    def other_end(self, site:int):
        if site == self.a:
            return self.b 
        if site == self.b:
            return self.a 
        raise ValueError(f'Site {site} is not on {self}')
    
    def __repr__(self):
        return f'<Bond {self.index} {self.kind} {self.a}-{self.b} J={self.value}>'

class BondCollection(ElementCollection):
    def __init__(self, parent, elements:list):
        super().__init__(parent, elements)
        self._by_pair = dict()
        for bond in elements:
            self._by_pair[frozenset(bond.sites)] = bond
    
    def append(self, element):
        super().append(element)
        self._by_pair[frozenset(element.sites)] = element
    
    def between(self, a:int, b:int):
        '''
            Bond joining a and b, or None
        '''
        return self._by_pair.get(frozenset((a, b)), None)
    
    def all_at(self, site:int):
        return list(filter(lambda b: site in b.sites, self._elements))
    
    @property 
    def vertical(self):
        return self.filter(lambda b: b.kind == VERTICAL)
    
    @property 
    def horizontal(self):
        return self.filter(lambda b: b.kind == HORIZONTAL)
    
    def of_class(self, coupling_class:str):
        return self.filter(lambda b: b.coupling_class == coupling_class)
    
    def endpoints(self):
        '''
            (a, b) index arrays, in bond order
        '''
        a = np.array([b.a for b in self._elements], dtype=np.int64)
        b = np.array([b.b for b in self._elements], dtype=np.int64)
        return a, b
    
    def values(self):
        return np.array([b.value for b in self._elements], dtype=float)
