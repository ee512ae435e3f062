'''
Created on Oct 19, 2026

@author: frustrated-quench contributors
'''

class Location:
    '''
        An (x, y) position in the lattice embedding.  The y direction
        is periodic with period ly when one is given.
    '''
    def __init__(self, x:float, y:float, ly:int=None):
        self._value = [x, y]
        self._ly = ly

    @property 
    def value(self):
        return self._value

    @property 
    def x(self):
        return self._value[0]

    @property
    def y(self):
        return self._value[1]

    def translated(self, dx:float=0, dy:float=0):
        y = self.y + dy
        if self._ly is not None:
            y = y % self._ly
        return Location(self.x + dx, y, self._ly)

    def displacement_to(self, other, lx_periodic:int=None):
        '''
            Shortest displacement (dx, dy) to other, wrapping the 
            periodic direction(s).
            
            @param lx_periodic: wrap x too, with this period
        '''
        dx = other.x - self.x
        dy = other.y - self.y
        if self._ly is not None:
            dy = (dy + self._ly/2) % self._ly - self._ly/2
        if lx_periodic is not None:
            dx = (dx + lx_periodic/2) % lx_periodic - lx_periodic/2
        return dx, dy

    def __eq__(self, other):
        return isinstance(other, Location) and self._value == other._value

    def __hash__(self):
        return hash(tuple(self._value))

    def __repr__(self):
        return f'<Location ({self.x}, {self.y})>'

class Site:
    def __init__(self, index:int, x:int, y:int, ly:int):
        self.index = index
        self.at = Location(x, y, ly)

    @property 
    def x(self):
        return self.at.x

    @property 
    def y(self):
        return self.at.y

    def __repr__(self):
        return f'<Site {self.index} ({self.x}, {self.y})>'
