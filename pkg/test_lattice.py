#!/usr/bin/env python3
'''
Lattice construction, contraction, sublattices and orbits.

Runs under pytest, or standalone: python test_lattice.py
'''
import os
import sys
sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), 'src'))

import numpy as np
import pytest
from fquench.errors import ConfigError
from fquench.lattice import (build_cylinder, build_ring, build_pair, build_column, boundary_mask, LatticeFile,
                             contract_to_triangular, Scheme, assign_sublattices, available_schemes, compute_orbits)

def triangular(lx=3, ly=6, **kw):
    return build_cylinder(lx, ly, 0.9, -2.0, **kw)

def test_bond_counts():
    lat = triangular()
    assert lat.n_sites == 18
    assert lat.n_bonds == 3*6 + 2*6
    assert len(lat.bonds.vertical) == 18
    assert len(lat.bonds.horizontal) == 12
    torus = build_cylinder(4, 4, 0.9, -0.9, periodic_x=True)
    assert torus.n_bonds == 2*16

def test_site_indexing():
    lat = triangular()
    assert lat.site_index(2, 3) == 2*6 + 3
    assert lat.site_index(1, 7) == lat.site_index(1, 1)
    assert lat.coords(15) == (2, 3)
    with pytest.raises(IndexError):
        lat.site_index(3, 0)

def test_one_j2_per_plaquette():
    lat = build_cylinder(4, 8, 0.9, -2.0)
    values = lat.couplers()
    for corners, bonds in lat.plaquettes():
        assert np.sum(values[bonds] == -2.0) == 1

def test_vertical_pattern():
    lat = triangular()
    for bond in lat.bonds.vertical:
        expected = 'j2' if (bond.column + bond.row) % 2 == 0 else 'j1'
        assert bond.coupling_class == expected

def test_bad_dimensions():
    with pytest.raises(ConfigError, match='odd'):
        build_cylinder(3, 5, 0.9, -2.0)
    with pytest.raises(ConfigError):
        build_cylinder(1, 6, 0.9, -2.0)
    with pytest.raises(ConfigError, match='torus'):
        build_cylinder(3, 6, 0.9, -2.0, periodic_x=True)

def test_model_kind_from_couplers():
    assert triangular().model_kind == 'triangular'
    assert build_cylinder(4, 4, 0.9, -0.9).model_kind == 'villain'
    assert build_cylinder(4, 4, 0.9, -1.3).model_kind == 'custom'

def test_ring():
    ring = build_ring(8, -1.0)
    assert ring.n_sites == 8 and ring.n_bonds == 8
    assert all(b.value == -1.0 for b in ring.bonds)
    with pytest.raises(ConfigError):
        build_ring(2)

def test_pair(tmp_path):
    pair = build_pair(1.0)
    assert pair.n_sites == 2 and pair.n_bonds == 1
    assert pair.bonds.between(1, 0).value == 1.0
    assert build_column(2, 1.0).metadata() == pair.metadata()
    assert build_column(5).n_bonds == 5
    path = str(tmp_path / 'pair.txt')
    LatticeFile.from_lattice(pair).write(path)
    assert list(LatticeFile(path).lattice.couplers()) == [1.0]

def test_frustration_flags():
    lat = triangular()
    afm = next(b for b in lat.bonds if b.is_afm)
    assert afm.is_frustrated(1, 1)
    assert not afm.is_frustrated(1, -1)

def test_boundary_mask():
    lat = build_cylinder(6, 4, 0.9, -0.9)
    mask = boundary_mask(lat, 1)
    cols = lat.positions()[:, 0]
    assert not mask[cols == 0].any() and not mask[cols == 5].any()
    assert mask[(cols > 0) & (cols < 5)].all()
    with pytest.raises(ConfigError):
        boundary_mask(lat, 3)

def test_contraction():
    lat = triangular(6, 12)
    logical = contract_to_triangular(lat)
    assert logical.n_sites == lat.n_sites // 2
    p2l = logical.physical_to_logical
    for bond in lat.bonds.of_class('j2'):
        assert p2l[bond.a] == p2l[bond.b]
    interior = [s.index for s in logical.logical_sites if 0 < s.x < lat.lx - 1]
    assert all(logical.coordination(i) == 6 for i in interior)
    assert len(logical.triangle_faces) == len(lat.plaquettes())
    assert all(len(loop) == 6 for loop in logical.dual_faces)

def test_contraction_rejects_ring():
    with pytest.raises(ConfigError):
        contract_to_triangular(build_ring(6))

def test_logical_spins_counts_broken_pairs():
    logical = contract_to_triangular(triangular())
    read = np.ones(18, dtype=int)
    a, b = logical.logical_sites[0].members
    read[b] = -1
    spins, broken = logical.logical_spins(read)
    assert broken == 1
    assert spins[0] == 1

def test_tri_sublattices():
    lat = triangular()
    smap = assign_sublattices(lat, 'tri')
    assert list(smap.counts()) == [6, 6, 6]
    logical = contract_to_triangular(lat)
    for face in logical.triangle_faces:
        assert sorted(smap.logical_labels[list(face)]) == [0, 1, 2]

def test_sublattice_rules():
    assert available_schemes(triangular()) == [Scheme.AFM, Scheme.TRI]
    assert available_schemes(build_cylinder(4, 4, 0.9, -0.9)) == [Scheme.AFM, Scheme.VIL]
    with pytest.raises(ConfigError, match='multiple of 4'):
        assign_sublattices(triangular(), 'vil')
    with pytest.raises(ConfigError, match='multiple of 3'):
        assign_sublattices(build_cylinder(4, 4, 0.9, -0.9), 'tri')

def test_orbits_cover_bonds():
    lat = triangular()
    orbits = compute_orbits(lat)
    seen = np.concatenate([o.members for o in orbits])
    assert sorted(seen.tolist()) == list(range(lat.n_bonds))
    values = lat.couplers()
    for orbit in orbits:
        assert len(set(values[orbit.members])) == 1
    assert orbits.v_x0_even.size > 0

def test_ring_is_one_orbit():
    orbits = compute_orbits(build_ring(10))
    assert len(orbits) == 1
    assert orbits.v_x0.size == 10

def test_lattice_file(tmp_path):
    lat = build_cylinder(4, 4, 0.9, -0.9)
    values = lat.couplers()
    values[3] = 0.8
    custom = lat.with_couplers(values)
    path = str(tmp_path / 'lattice.txt')
    LatticeFile.from_lattice(custom).write(path)
    back = LatticeFile(path).lattice
    assert back.metadata() == custom.metadata()
    assert np.array_equal(back.couplers(), custom.couplers())

def test_lattice_file_layout(tmp_path):
    lat = build_cylinder(4, 4, 0.9, -0.9)
    path = tmp_path / 'lattice.txt'
    LatticeFile.from_lattice(lat).write(str(path))
    lines = path.read_text().splitlines()
    assert lines[0] == '# lattice version 1'
    assert lines[1].split() == ['4', '4', '0.9', '-0.9', 'villain']
    assert len(lines) == 2 + lat.n_bonds
    a, b, value = lines[2].split()
    assert (int(a), int(b), float(value)) == (lat.bonds[0].a, lat.bonds[0].b, lat.bonds[0].value)

def test_lattice_file_by_hand(tmp_path):
    path = tmp_path / 'ring.txt'
    path.write_text('# lattice version 1\n1 3 -1.0 -1.0 custom\n0 1 -1\n1 2 -1\n2 0 -0.5\n')
    ring = LatticeFile(str(path)).lattice
    assert ring.n_sites == 3
    assert list(ring.couplers()) == [-1.0, -1.0, -0.5]
    path.write_text('# lattice version 1\n1 3 -1.0 -1.0 custom\n0 1 -1\n1 2 -1\n')
    with pytest.raises(ConfigError, match='distinct bonds'):
        LatticeFile(str(path))
    path.write_text('# lattice version 2\n1 3 -1.0 -1.0 custom\n')
    with pytest.raises(ConfigError, match='version'):
        LatticeFile(str(path))

def test_lattice_file_torus(tmp_path):
    path = str(tmp_path / 'torus.txt')
    LatticeFile.from_lattice(build_cylinder(4, 4, 0.9, -0.9, periodic_x=True)).write(path)
    back = LatticeFile(path).lattice
    assert back.periodic_x
    assert back.n_bonds == 32

def test_lattice_file_overwrite(tmp_path):
    path = str(tmp_path / 'lattice.txt')
    LatticeFile.from_lattice(build_cylinder(4, 4, 0.9, -0.9)).write(path)
    lf = LatticeFile(path)
    lf.lattice = triangular()
    lf.overwrite()
    lf.reload()
    assert lf.lattice.model_kind == 'triangular'
    assert LatticeFile(path).lattice.n_sites == 18

def test_lattice_file_wrong_head(tmp_path):
    path = tmp_path / 'other.txt'
    path.write_text('(schedule (version 1))')
    with pytest.raises(ConfigError, match='lattice'):
        LatticeFile(str(path))

def _run():
    import inspect, pathlib, tempfile
    for name, fn in list(globals().items()):
        if not name.startswith('test_') or not callable(fn):
            continue
        kwargs = {}
        if 'tmp_path' in inspect.signature(fn).parameters:
            kwargs['tmp_path'] = pathlib.Path(tempfile.mkdtemp())
        try:
            fn(**kwargs)
            print(f'✓ {name}')
        except pytest.skip.Exception as e:
            print(f'- {name} skipped: {e}')

if __name__ == '__main__':
    _run()
