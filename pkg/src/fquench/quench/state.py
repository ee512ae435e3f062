'''
State vectors over the computational basis.

Qubit i is bit (n-1-i) of the basis index, so the amplitude array
reshaped to (2,)*n has qubit i on axis i.  Bit 0 is spin +1.

Created on Oct 19, 2026

@author: frustrated-quench contributors
'''
import numpy as np
from fquench.errors import ConfigError

# 2^24 complex doubles is ~256 MB
MaxQubits = 24
NormTolerance = 1e-8

class StateVector:
    def __init__(self, amplitudes):
        amps = np.asarray(amplitudes, dtype=np.complex128)
        n = int(round(np.log2(len(amps)))) if len(amps) else -1
        if n < 1 or (1 << n) != len(amps):
            raise ConfigError(f'State of length {len(amps)} is not 2^n for n >= 1')
        self._n = n
        self.amplitudes = amps

    @property 
    def n_qubits(self):
        return self._n

    @property 
    def dim(self):
        return len(self.amplitudes)

    def norm(self):
        return float(np.sqrt(np.vdot(self.amplitudes, self.amplitudes).real))

    def probabilities(self):
        return np.abs(self.amplitudes)**2

    def copy(self):
        return StateVector(self.amplitudes.copy())

    def overlap(self, other):
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def __repr__(self):
        return f'<StateVector {self._n} qubits, norm {self.norm():.12f}>'

def check_qubits(n:int):
    if n < 1 or n > MaxQubits:
        raise ConfigError(f'{n} qubits is outside 1..{MaxQubits} '
                          f'(2^{MaxQubits} amplitudes is the memory ceiling)')

def init_state(n_qubits:int):
    '''
        Uniform superposition, the ground state of -Gamma sum sigma_x
    '''
    check_qubits(n_qubits)
    dim = 1 << n_qubits
    return StateVector(np.full(dim, 2.0**(-n_qubits/2), dtype=np.complex128))

def basis_state(spins):
    '''
        Computational basis state for a +-1 spin list
    '''
    spins = np.asarray(spins)
    check_qubits(len(spins))
    n = len(spins)
    bits = (1 - spins) // 2
    index = int(np.dot(bits, 1 << np.arange(n - 1, -1, -1)))
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(amps)

def spins_of(indices, n_qubits:int):
    '''
        (len(indices), n) int8 spins of basis indices
    '''
    indices = np.asarray(indices, dtype=np.int64)
    shifts = np.arange(n_qubits - 1, -1, -1, dtype=np.int64)
    bits = (indices[:, None] >> shifts[None, :]) & 1
    return (1 - 2*bits).astype(np.int8)

def fidelity(a:StateVector, b:StateVector):
    return abs(a.overlap(b))**2
