"""Acceptance suite.

Each test prints one PASS/FAIL line.  The exhaustive ranges are all knot
codes with up to 4 crossings plus all codes with up to 3 crossings and at
most 2 components; every criterion states its own tolerance, and every
polynomial comparison is exact.

Run with ``pytest tests/test_acceptance.py -v -s``.
"""

import itertools
import random
import time
from contextlib import contextmanager

import pytest

from vknots.ald import checkerboard_colorable, is_alternating, make_alternating
from vknots.bracket import (
    bracket,
    bracket_parallel,
    f_polynomial,
    finite_type_recursion_check,
    index_spectrum,
    skein_identity_check,
    splice_state,
)
from vknots.diagram import parse_gauss, random_diagram
from vknots.laurent import LaurentPoly
from vknots.verify import EnumSpec, enumerate_diagrams, fuzz_invariance, verify_diagram

from conftest import TREFOIL, VIRTUAL_TREFOIL, VIRTUAL_TREFOIL_MIRROR

F_TREFOIL = LaurentPoly({4: 1, 12: 1, 16: -1})
F_VIRTUAL_TREFOIL = LaurentPoly({4: 1, 6: 1, 10: -1})
FIGURE_NINE_POLY = LaurentPoly(
    {12: 1, 16: 3, 20: -4, 24: 3, 28: -4, 32: 4, 36: -3, 40: 1}
)


@contextmanager
def criterion(number: int, description: str):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {number:2d} FAIL  {description}")
        raise
    print(f"ACCEPTANCE {number:2d} PASS  {description}")


@pytest.fixture(scope="session")
def enumerated():
    """Both exhaustive ranges: knots c <= 4, and c <= 3 with n <= 2."""
    diagrams = list(enumerate_diagrams(EnumSpec(4, max_components=1)))
    diagrams += [
        d
        for d in enumerate_diagrams(EnumSpec(3, max_components=2))
        if d.component_count == 2
    ]
    return diagrams


@pytest.fixture(scope="session")
def records(enumerated):
    return [verify_diagram(d) for d in enumerated]


def test_criterion_1_reference_polynomials():
    with criterion(1, "published trefoil and virtual trefoil f-polynomials, < 1 s"):
        start = time.perf_counter()
        assert f_polynomial(parse_gauss(TREFOIL)) == F_TREFOIL
        assert f_polynomial(parse_gauss(VIRTUAL_TREFOIL)) == F_VIRTUAL_TREFOIL
        assert time.perf_counter() - start < 1.0


def test_criterion_2_congruence_for_colorable(records):
    with criterion(2, "colorable => EXP(f) in 4Z (n odd) / 4Z+2 (n even), exhaustive"):
        checked = 0
        for rec in records:
            if not rec.colorable:
                continue
            expected = 0 if rec.diagram.component_count % 2 == 1 else 2
            assert rec.f, "f-polynomial of a diagram must be nonzero"
            assert rec.f.congruence_class_mod4() == expected
            checked += 1
        assert checked > 5_000


def test_criterion_3_f_at_one(records):
    with criterion(3, "f(1) = (-2)^(n-1), exhaustive plus 10^3 random c <= 10"):
        for rec in records:
            n = rec.diagram.component_count
            assert rec.f.evaluate_at_one() == (-2) ** (n - 1)
        rng = random.Random(20260810)
        for _ in range(1000):
            d = random_diagram(rng, rng.randrange(0, 11), components=rng.randrange(1, 3))
            assert f_polynomial(d).evaluate_at_one() == (-2) ** (d.component_count - 1)


def test_criterion_4_skein_identity(enumerated):
    with criterion(4, "splice identity at every crossing, exact, with l != 0 cases"):
        nonzero_l = 0
        signs_seen = set()
        for d in enumerated:
            for cid in range(1, d.crossing_count + 1):
                report = skein_identity_check(d, cid)  # raises on violation
                assert report.holds
                signs_seen.add(report.sign)
                nonzero_l += report.l != 0
        assert signs_seen == {1, -1}
        assert nonzero_l >= 10


def test_criterion_5_alternating_equivalence(records):
    with criterion(5, "crossing changes reach alternating <=> colorable, exhaustive"):
        for rec in records:
            assert rec.alternating_equiv_ok


def test_criterion_6_index_spectrum(enumerated):
    with criterion(6, "colorable => singleton index spectrum and +-1 loop toggles"):
        colorable_checked = 0
        for d in enumerated:
            if checkerboard_colorable(d) is None:
                continue
            colorable_checked += 1
            assert len(index_spectrum(d)) == 1
            c = d.crossing_count
            loops = {}
            for bits in itertools.product("AB", repeat=c):
                loops[bits] = splice_state(
                    d, {i + 1: b for i, b in enumerate(bits)}
                ).loop_count
            for bits, count in loops.items():
                for i in range(c):
                    flipped = list(bits)
                    flipped[i] = "B" if bits[i] == "A" else "A"
                    assert abs(loops[tuple(flipped)] - count) == 1
        assert colorable_checked > 5_000
        assert len(index_spectrum(parse_gauss(VIRTUAL_TREFOIL_MIRROR))) >= 2


def test_criterion_7_alternating_form_witness():
    with criterion(7, "reference polynomial rejected; alternating witness with c <= 6"):
        assert not FIGURE_NINE_POLY.is_alternating_form()
        from vknots.verify import find_nonalternating_form_witness

        witness = find_nonalternating_form_witness(
            EnumSpec(6, max_components=1, dedupe="cyclic-relabel")
        )
        assert witness is not None
        assert witness.crossing_count <= 6
        assert is_alternating(witness)
        assert checkerboard_colorable(witness) is not None
        assert make_alternating(witness) == frozenset()
        assert not f_polynomial(witness).is_alternating_form()


def test_criterion_8_move_invariance():
    with criterion(8, "f exactly preserved across 10^3 random rewrites"):
        report = fuzz_invariance(seed=97, trials=300, max_moves=4)
        assert report.moves_applied >= 1000
        assert report.f_mismatches == []
        assert report.consistency_failures == []


def test_criterion_9_parallel_determinism():
    with criterion(9, "bracket_parallel bit-equal for 1/2/8 workers; c=24 in time"):
        rng = random.Random(424242)
        for _ in range(100):
            d = random_diagram(rng, rng.randrange(0, 17), components=rng.randrange(1, 3))
            expected = bracket(d)
            for workers in (1, 2, 8):
                assert bracket_parallel(d, workers=workers) == expected
        big = random_diagram(rng, 24, components=1)
        start = time.perf_counter()
        poly = bracket_parallel(big, workers=2)
        elapsed = time.perf_counter() - start
        assert poly.evaluate_at_one() != 0  # f(1) = +-1 for a knot
        assert elapsed < 600.0


def test_criterion_10_difference_identity_and_recursion(enumerated):
    with criterion(10, "crossing-switch difference identity exhaustive; series to N=5"):
        # exact polynomial identity at every crossing of every enumerated diagram
        nonzero_l = 0
        for d in enumerated:
            for cid in range(1, d.crossing_count + 1):
                report = finite_type_recursion_check(d, cid, order=0)
                assert report.difference_identity_holds
                nonzero_l += report.l != 0
        assert nonzero_l >= 10
        # series recursion through order 5: every crossing of every diagram
        # with c <= 2, plus collected instances with |l| >= 1
        deep = [d for d in enumerated if d.crossing_count <= 2]
        deep_nonzero = 0
        for d in deep:
            for cid in range(1, d.crossing_count + 1):
                report = finite_type_recursion_check(d, cid, order=5)
                assert all(report.series_match_l)
                if report.l == 0:
                    assert report.identified_convention == "both"
                else:
                    deep_nonzero += 1
                    assert report.identified_convention == "as-defined"
        rng = random.Random(5150)
        for _ in range(500):
            if deep_nonzero >= 25:
                break
            d = random_diagram(rng, rng.randrange(2, 6), components=rng.randrange(1, 3))
            cid = rng.randrange(1, d.crossing_count + 1)
            report = finite_type_recursion_check(d, cid, order=5)
            assert all(report.series_match_l)
            if report.l != 0:
                deep_nonzero += 1
                assert report.identified_convention == "as-defined"
        assert deep_nonzero >= 25
