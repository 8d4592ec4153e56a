import json
import math

import numpy as np
import pytest

from schottky_lab.mobius import Disk, MobiusMap
from schottky_lab.schottky import (
    BranchCutError,
    SchottkyData,
    SchottkyDataError,
    load_schottky,
    theta,
    validate_schottky,
    word_geometry,
    word_map,
)
from conftest import FIXTURES

SQRT2 = math.sqrt(2.0)


def test_f1_validates(f1):
    report = validate_schottky(f1)
    assert report.ok
    assert report.margin == pytest.approx(2 * SQRT2 - 2.0)
    assert report.max_mapping_residual < 1e-8


def test_overlap_fixture_fails_disjointness():
    data = load_schottky(FIXTURES / "f1_overlap.json")
    report = validate_schottky(data)
    assert not report.ok
    assert not report.checks["closure_disjointness"]
    assert any("closure disjointness" in msg for msg in report.failures)
    assert report.margin < 0


def test_swapped_generator_fails_mapping():
    data = load_schottky(FIXTURES / "f1_swapped.json")
    report = validate_schottky(data)
    assert not report.ok
    assert any("infinity" in msg and "outside disk 2" in msg for msg in report.failures)


def test_rank_one_rejected():
    g = MobiusMap(SQRT2, 1.0, 1.0, SQRT2)
    with pytest.raises(SchottkyDataError):
        SchottkyData.from_generators([g], [Disk(SQRT2, 1.0), Disk(-SQRT2, 1.0)])


def test_non_inverse_pair_rejected(f1):
    gens = list(f1.gens)
    gens[2] = gens[0]  # letter 3 should be the inverse of letter 1
    with pytest.raises(SchottkyDataError):
        SchottkyData(2, tuple(gens), f1.disks)


def test_unknown_field_rejected(tmp_path):
    doc = json.loads((FIXTURES / "f1.json").read_text())
    doc["comment"] = "boom"
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    with pytest.raises(SchottkyDataError, match="unknown fields"):
        load_schottky(p)


def test_word_map_inverse_oracle(f1):
    for ell in (1, 2, 3, 4, 5):
        for w in f1.words_of_length(ell):
            direct = word_map(f1, w.inverse())
            flipped = word_map(f1, w).inverse()
            scale = max(1.0, abs(direct.a), abs(direct.b), abs(direct.c), abs(direct.d))
            assert direct.entry_distance(flipped) / scale < 1e-10


def test_word_map_composition_oracle(f1):
    for ell in (2, 3, 4):
        for w in f1.words_of_length(ell):
            full = word_map(f1, w)
            scale = max(1.0, abs(full.a), abs(full.b), abs(full.c), abs(full.d))
            for w1, w2 in w.splits():
                prod = word_map(f1, w1).compose(word_map(f1, w2))
                assert prod.entry_distance(full) / scale < 1e-9


def test_single_letter_geometry(f1):
    for a in f1.letters:
        g = word_geometry(f1, f1.word(a))
        assert g.disk == f1.disk(a)
        assert g.upsilon == pytest.approx(2 * f1.disk(a).radius)


def test_two_letter_geometry_endpoints(f1):
    w = f1.word(1, 2)
    g = word_geometry(f1, w)
    g1 = f1.gen(1)
    lo = g1(complex(7.0 + SQRT2)).real
    hi = g1(complex(9.0 + SQRT2)).real
    assert g.interval[0] == pytest.approx(min(lo, hi), abs=1e-14)
    assert g.interval[1] == pytest.approx(max(lo, hi), abs=1e-14)
    assert g.upsilon == pytest.approx(abs(hi - lo))


def test_nesting_up_to_length_six(f1):
    for ell in range(2, 7):
        for w in f1.words_of_length(ell):
            inner = word_geometry(f1, w).disk
            outer = f1.disk(w.start)
            gap = outer.radius - (abs(inner.center - outer.center) + inner.radius)
            assert gap > 0.0


def test_theta_single_term(f1):
    w = f1.word(1, 2)
    z = complex(8 + SQRT2, 0.3)
    assert theta(f1, w, z) == pytest.approx(np.log(f1.gen(1).derivative(z)))


def test_theta_real_points_match_derivative(f1):
    for w in f1.words_of_length(4):
        lo, hi = f1.disk(w.end).interval
        zs = np.linspace(lo + 0.01, hi - 0.01, 7).astype(complex)
        m = word_map(f1, w.backspace())
        vals = np.exp(theta(f1, w, zs))
        direct = m.derivative(zs)
        assert np.max(np.abs(vals - direct)) < 1e-10


def test_theta_chain_rule_complex(f1):
    rng = np.random.default_rng(11)
    for w in f1.words_of_length(3):
        d = f1.disk(w.end)
        zs = d.center + 0.5 * d.radius * (
            rng.uniform(-1, 1, 10) + 1j * rng.uniform(-1, 1, 10)
        )
        a1, a2 = w.letters[0], w.letters[1]
        g1, g2 = f1.gen(a1), f1.gen(a2)
        product = g1.derivative(g2(zs)) * g2.derivative(zs)
        assert np.max(np.abs(np.exp(theta(f1, w, zs)) - product)) < 1e-10


def test_theta_branch_cut_error(f1):
    # gen(1)'(z) = 1/(z + sqrt2)^2 is negative real on the line Re z = -sqrt2,
    # so theta must refuse there (outside the Schottky disks, where the
    # precondition protects real computations)
    w = f1.word(1, 2)
    with pytest.raises(BranchCutError):
        theta(f1, w, complex(-SQRT2, 0.5))


def test_upsilon_is_diameter(f1):
    for w in f1.words_of_length(3):
        g = word_geometry(f1, w)
        assert g.upsilon == pytest.approx(2 * g.disk.radius, rel=1e-15)
