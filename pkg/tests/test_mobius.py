import cmath
import math

import numpy as np
import pytest

from schottky_lab.mobius import INF, Disk, MobiusMap, NotInvertibleError

SQRT2 = math.sqrt(2.0)


def random_maps(rng, count):
    out = []
    while len(out) < count:
        a, b, c, d = rng.uniform(-3, 3, size=4)
        if a * d - b * c > 0.1:
            out.append(MobiusMap(a, b, c, d))
    return out


def test_identity_fixes_i():
    m = MobiusMap.identity()
    assert m(1j) == 1j


def test_direct_formula_at_zero():
    m = MobiusMap(SQRT2, 1.0, 1.0, SQRT2)
    assert abs(m(0j) - 1.0 / SQRT2) < 1e-15


def test_normalization_and_sign_convention():
    m = MobiusMap(2 * SQRT2, 2.0, 2.0, 2 * SQRT2)  # determinant 4
    assert abs(m.det() - 1.0) < 1e-12
    assert m.d > 0
    flipped = MobiusMap(-SQRT2, -1.0, -1.0, -SQRT2)
    assert flipped.entry_distance(MobiusMap(SQRT2, 1.0, 1.0, SQRT2)) < 1e-15


def test_nonpositive_determinant_rejected():
    with pytest.raises(NotInvertibleError):
        MobiusMap(1.0, 2.0, 2.0, 1.0)


def test_composition_law_on_random_points():
    rng = np.random.default_rng(2)
    m1, m2 = random_maps(rng, 2)
    comp = m1 @ m2
    zs = rng.uniform(-2, 2, 100) + 1j * rng.uniform(0.1, 2, 100)
    worst = max(abs(comp(z) - m1(m2(z))) for z in zs)
    assert worst < 1e-10


def test_composition_associative():
    rng = np.random.default_rng(3)
    m1, m2, m3 = random_maps(rng, 3)
    left = (m1 @ m2) @ m3
    right = m1 @ (m2 @ m3)
    assert left.entry_distance(right) < 1e-10


def test_preserves_upper_halfplane():
    rng = np.random.default_rng(4)
    for m in random_maps(rng, 5):
        for z in rng.uniform(-2, 2, 20) + 1j * rng.uniform(0.01, 3, 20):
            assert m(z).imag > 0


def test_pole_maps_to_infinity():
    m = MobiusMap(SQRT2, 1.0, 1.0, SQRT2)
    assert cmath.isinf(m(-SQRT2 + 0j))
    assert m(INF) == pytest.approx(SQRT2)
    assert MobiusMap.identity()(INF) == INF


def test_derivative_identity_and_formula():
    assert MobiusMap.identity().derivative(0.7 + 0.2j) == 1.0
    m = MobiusMap(SQRT2, 1.0, 1.0, SQRT2)
    assert abs(m.derivative(0j) - 0.5) < 1e-15


def test_derivative_chain_rule_and_finite_differences():
    rng = np.random.default_rng(5)
    m1, m2 = random_maps(rng, 2)
    comp = m1 @ m2
    h = 1e-6
    worst_chain = 0.0
    worst_fd = 0.0
    for z in rng.uniform(-2, 2, 100) + 1j * rng.uniform(0.2, 2, 100):
        chain = m1.derivative(m2(z)) * m2.derivative(z)
        worst_chain = max(worst_chain, abs(comp.derivative(z) - chain))
        fd = (comp(z + h) - comp(z - h)) / (2 * h)
        worst_fd = max(worst_fd, abs(fd - comp.derivative(z)) / abs(comp.derivative(z)))
    assert worst_chain < 1e-10
    assert worst_fd < 1e-6


def test_inverse_roundtrip():
    rng = np.random.default_rng(6)
    for m in random_maps(rng, 5):
        assert m.inverse().compose(m).is_identity(1e-12)


def test_disk_basics():
    d = Disk(1.5, 0.5)
    assert d.contains(1.5 + 0.3j)
    assert not d.contains(2.1 + 0j)
    assert d.interval == (1.0, 2.0)
    assert d.gap_to(Disk(3.0, 0.5)) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        Disk(0.0, -1.0)
