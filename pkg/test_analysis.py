#!/usr/bin/env python3
'''
Order parameters, pseudospin defects, structure factors and peak fits.

Runs under pytest, or standalone: python test_analysis.py
'''
import itertools
import math
import os
import sys
sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), 'src'))

import numpy as np
import pytest
from fquench.errors import ConfigError, PeakFitError
from fquench.lattice import build_cylinder, contract_to_triangular, assign_sublattices, Scheme
from fquench.lattice.sublattice import tri_labels
from fquench.quench import SampleSet
from fquench.analysis import (order_parameters, MaxMagnitude, DefectField, pseudospin_field, count_defects,
                              defect_counts, defect_table, frustrated_bond_density, frustration_floor, structure_factor,
                              direct_structure_factor, fit_pseudo_voigt, pseudo_voigt, kzm_exponents, kzm_for)
from fquench.analysis.order import combine

Slow = os.environ.get('FQUENCH_SLOW') == '1'

def triangular(lx=3, ly=6, **kw):
    return build_cylinder(lx, ly, 0.9, -2.0, **kw)

def villain(lx=4, ly=4):
    return build_cylinder(lx, ly, 0.9, -0.9)

def samples_of(lattice, reads):
    return SampleSet(reads, lattice.metadata())

def test_uniform_read_has_no_afm_order():
    lat = triangular()
    result = order_parameters(samples_of(lat, np.ones((4, 18))), ['afm', 'tri'])
    assert result.m_afm == pytest.approx(0.0)
    assert result.m_tri == pytest.approx(0.0, abs=1e-12)
    assert result.m_vil is None

def test_three_sublattice_read():
    lat = triangular()
    smap = assign_sublattices(lat, 'tri')
    read = np.where(smap.labels == 0, 1, -1)
    result = order_parameters(samples_of(lat, read), [smap])
    assert result.m_tri == pytest.approx(2/math.sqrt(3))
    assert np.allclose(result.sublattice('tri'), [[1, -1, -1]])

def test_combine_values():
    assert abs(combine(Scheme.TRI, [1, -1, 0])) == pytest.approx(1.0)
    assert abs(combine(Scheme.VIL, [1, 1, -1, -1])) == pytest.approx(1.3066, abs=1e-4)
    assert abs(combine(Scheme.AFM, [1, -1])) == pytest.approx(1.0)

def test_villain_read():
    lat = villain()
    smap = assign_sublattices(lat, 'vil')
    read = np.where(smap.labels < 2, 1, -1)
    result = order_parameters(samples_of(lat, read), ['vil'])
    assert result.m_vil == pytest.approx(MaxMagnitude[Scheme.VIL])

def test_corner_maxima():
    for scheme in Scheme:
        best = max(abs(combine(scheme, s)) for s in itertools.product((-1, 1), repeat=scheme.n_labels))
        assert best == pytest.approx(MaxMagnitude[scheme])

def test_order_parameter_bounds():
    lat = triangular()
    rng = np.random.Generator(np.random.Philox(1))
    reads = rng.choice([-1, 1], size=(10**6 if Slow else 10**4, lat.n_sites)).astype(np.int8)
    result = order_parameters(samples_of(lat, reads), ['afm', 'tri'])
    for key in ('afm', 'tri'):
        assert np.all(result.magnitudes(key) <= MaxMagnitude[Scheme.parse(key)] + 1e-12)
    assert set(result.summary()) == {'m_afm', 'm_afm_err', 'm_tri', 'm_tri_err'}

def test_pseudospin_phases():
    logical = contract_to_triangular(triangular(6, 12))
    labels = tri_labels(logical)
    spins = np.where(labels == 0, 1, -1)
    field = pseudospin_field(spins, logical)
    assert np.allclose(field.phases, 0.0)
    assert np.allclose(np.abs(field.psi), 2/math.sqrt(3))
    flipped = pseudospin_field(-spins, logical)
    assert np.allclose(np.abs(flipped.phases), math.pi)
    assert count_defects(field, logical).as_tuple() == (0, 0)

def test_uniform_field_has_no_defects():
    logical = contract_to_triangular(triangular(6, 12))
    count = count_defects(DefectField(np.full(len(logical.triangle_faces), 0.7)), logical)
    assert count.as_tuple() == (0, 0)
    assert count.n_loops == len(logical.dual_loops)

def test_planted_vortex():
    lat = triangular(6, 12)
    logical = contract_to_triangular(lat)
    v = next(v for v, _ in logical.dual_loops if logical.logical_sites[v].x == 3)
    at = logical.logical_sites[v].at
    c = logical.face_centroids()
    # one zero per period in y, at the chosen site
    z = np.exp(2*math.pi*((c[:, 0] - at.x) + 1j*(c[:, 1] - at.y)) / lat.ly) - 1
    count = count_defects(DefectField(np.angle(z)), logical)
    assert count.as_tuple() == (1, 0)
    assert count.vertices[np.flatnonzero(count.windings)[0]] == v
    mirrored = count_defects(DefectField(-np.angle(z)), logical)
    assert mirrored.as_tuple() == (0, 1)

def test_torus_conserves_charge():
    lat = triangular(6, 6, periodic_x=True)
    logical = contract_to_triangular(lat)
    assert len(logical.dual_loops) == logical.n_sites
    rng = np.random.Generator(np.random.Philox(21))
    for _ in range(200):
        count = count_defects(pseudospin_field(rng.choice([-1, 1], size=lat.n_sites), logical), logical)
        assert count.n_vortex == count.n_antivortex
        assert count.n_loops + count.skipped == logical.n_sites

def test_counted_spin_loops_do_not_wind():
    # around a vertex the non-degenerate faces share its spin, so their
    # phases stay within 2pi/3 and only all-equal triangles can wind
    lat = triangular(6, 12)
    logical = contract_to_triangular(lat)
    rng = np.random.Generator(np.random.Philox(9))
    table = defect_table(samples_of(lat, rng.choice([-1, 1], size=(100, lat.n_sites))), logical)
    assert np.all(table['n_vortex'] == 0)
    assert np.all(table['n_antivortex'] == 0)
    assert np.all(table['skipped'] > 0)

def test_loops_through_equal_triangles_are_skipped():
    lat = triangular(6, 12)
    logical = contract_to_triangular(lat)
    labels = tri_labels(logical)
    v = next(v for v, _ in logical.dual_loops if labels[v] == 0)
    spins = np.where(labels == 0, 1, -1)
    spins[v] = -1
    field = pseudospin_field(spins, logical)
    # every triangle around v is now all -1
    assert field.n_degenerate == 6
    loops = np.array(logical.dual_faces)
    touched = field.degenerate[loops].any(axis=1)
    count = count_defects(field, logical)
    assert count.skipped == touched.sum() > 0
    assert np.all(count.windings[touched] == 0)
    assert count.n_loops == len(loops) - touched.sum()
    assert count.as_tuple() == (0, 0)
    table = defect_table(samples_of(lat, spins[logical.physical_to_logical]), logical)
    assert list(table['skipped']) == [touched.sum()]

def test_defect_counts_per_read():
    lat = triangular(6, 12)
    rng = np.random.Generator(np.random.Philox(3))
    samples = samples_of(lat, rng.choice([-1, 1], size=(5, lat.n_sites)))
    nv, nav, density = defect_counts(samples)
    assert len(nv) == len(nav) == len(density) == 5
    finite = density[np.isfinite(density)]
    assert np.all((finite >= 0) & (finite <= 1))
    assert np.all(defect_table(samples)['skipped'] >= 0)

def test_field_size_checked():
    logical = contract_to_triangular(triangular())
    with pytest.raises(ConfigError):
        count_defects(DefectField(np.zeros(3)), logical)
    with pytest.raises(ConfigError):
        pseudospin_field(np.ones(5), logical)

def test_frustration_floor():
    lat = triangular()
    n_plaquettes = len(lat.plaquettes())
    floor = frustration_floor(lat)
    assert floor == pytest.approx(math.ceil(n_plaquettes/2) / lat.n_bonds)
    rng = np.random.Generator(np.random.Philox(5))
    reads = rng.choice([-1, 1], size=(200, lat.n_sites))
    assert np.all(frustrated_bond_density(samples_of(lat, reads)) >= floor - 1e-12)

def test_single_site_structure_factor():
    sf = structure_factor(SampleSet([[1]], {'lx': 1, 'ly': 1}))
    assert sf.grid.shape == (1, 1)
    assert sf.grid[0, 0] == pytest.approx(1.0)

def test_structure_factor_sums_to_one():
    rng = np.random.Generator(np.random.Philox(9))
    samples = SampleSet(rng.choice([-1, 1], size=(7, 24)), {'lx': 4, 'ly': 6})
    sf = structure_factor(samples, keep_reads=True)
    assert np.allclose(sf.total(), 1.0)
    assert sf.grid.sum() == pytest.approx(1.0)

def test_structure_factor_matches_direct_sum():
    rng = np.random.Generator(np.random.Philox(10))
    reads = rng.choice([-1, 1], size=(3, 36))
    sf = structure_factor(SampleSet(reads, {'lx': 6, 'ly': 6}))
    idx = np.arange(36)
    positions = np.stack([idx // 6, idx % 6], axis=1).astype(float)
    QX, QY = np.meshgrid(sf.qx, sf.qy, indexing='ij')
    q = np.stack([QX.ravel(), QY.ravel()], axis=1)
    direct = direct_structure_factor(reads, positions, q)
    assert np.allclose(direct, sf.grid.ravel(), rtol=0, atol=1e-10)

def test_three_sublattice_peak():
    lat = triangular(6, 12)
    logical = contract_to_triangular(lat)
    smap = assign_sublattices(lat, 'tri', logical)
    read = np.where(smap.labels == 0, 1, -1)
    sf = structure_factor(samples_of(lat, read), logical)
    qx, qy = sf.peak_q()
    k = 2*math.pi/3
    assert (qx, qy) in ((pytest.approx(k), pytest.approx(2*k)), (pytest.approx(2*k), pytest.approx(k)))
    assert sf.grid[sf.peak()] == pytest.approx(4/9)
    assert sf.grid[0, 0] == pytest.approx(1/9)

def test_gaussian_peak():
    x = np.linspace(-3, 3, 81)
    y = pseudo_voigt(x, 2.0, 0.2, 0.8, 1.0)
    fit = fit_pseudo_voigt(x, y)
    assert fit.fwhm == pytest.approx(0.8, rel=0.02)
    assert fit.center == pytest.approx(0.2, abs=1e-3)
    assert fit.xi == pytest.approx(1/0.8, rel=0.02)

def test_lorentzian_peak():
    x = np.linspace(-4, 4, 81)
    fit = fit_pseudo_voigt(x, pseudo_voigt(x, 1.0, 0.0, 0.5, 0.0))
    assert fit.eta < 0.1
    assert fit.fwhm == pytest.approx(0.5, rel=0.02)

def test_flat_data_rejected():
    x = np.linspace(-1, 1, 21)
    with pytest.raises(PeakFitError):
        fit_pseudo_voigt(x, np.full(21, 0.3))
    with pytest.raises(PeakFitError):
        fit_pseudo_voigt(x, np.exp(x))
    with pytest.raises(ConfigError):
        fit_pseudo_voigt(x[:3], x[:3])

def test_kzm_exponents():
    xy = kzm_for('3d_xy')
    assert xy.order_parameter == pytest.approx(0.19, abs=0.01)
    assert xy.defects == pytest.approx(-0.80, abs=0.01)
    assert xy.length == pytest.approx(0.40, abs=0.01)
    assert kzm_for('2d_ising').defects == pytest.approx(-0.5)
    limit = kzm_exponents(math.inf, 0.3, 2.0, 2)
    assert (limit.order_parameter, limit.defects, limit.length) == (0.5, -1.0, 0.5)
    with pytest.raises(ConfigError):
        kzm_for('3d_potts')
    with pytest.raises(ConfigError):
        kzm_exponents(-1.0, 0.3, 1.0, 2)

def _run():
    for name, fn in list(globals().items()):
        if not name.startswith('test_') or not callable(fn):
            continue
        fn()
        print(f'✓ {name}')

if __name__ == '__main__':
    _run()
