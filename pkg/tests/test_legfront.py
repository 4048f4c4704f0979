import itertools

import pytest
from hypothesis import assume, given, settings, strategies as st

from gfhkit.homlin import GradedRanks
from gfhkit.legfront import (
    DGA, Event, FrontDiagram, FrontError, RotationError, alexander_polynomial, augmentations,
    chekanov_dga, classical_invariants, gfh_from_lch, is_augmentation, is_plat, knot_determinant,
    lch, lch_spectrum, plat_position, trefoil_front, twist_front, unknot_front,
)


def ranks(d):
    return GradedRanks.from_ranks(d)


def brute_augmentations(d: DGA) -> int:
    """Count assignments on every generator (any degree) killing the differential
    and vanishing off degree 0."""
    gens = list(d.order)
    count = 0
    for bits in itertools.product((0, 1), repeat=len(gens)):
        eps = dict(zip(gens, bits))
        if any(eps[g] and d.degrees[g] != 0 for g in gens):
            continue
        if is_augmentation(d, eps):
            count += 1
    return count


@st.composite
def fronts(draw, max_steps=10):
    s, ev = 0, []
    for _ in range(draw(st.integers(1, max_steps))):
        kinds = ["lcusp"] + (["cross", "rcusp"] if s >= 2 else [])
        k = draw(st.sampled_from(kinds))
        if k == "lcusp":
            ev.append(Event(k, draw(st.integers(1, s + 1))))
            s += 2
        else:
            ev.append(Event(k, draw(st.integers(1, s - 1))))
            s -= 2 if k == "rcusp" else 0
    while s:
        ev.append(Event("rcusp", draw(st.integers(1, s - 1))))
        s -= 2
    width = max(itertools.accumulate(2 if e.kind == "lcusp" else -2 if e.kind == "rcusp" else 0 for e in ev))
    return FrontDiagram(width, tuple(ev))


@st.composite
def plats(draw):
    p = draw(st.integers(1, 3))
    ev = [Event("lcusp", 1)] * p
    ev += [Event("cross", draw(st.integers(1, 2 * p - 1))) for _ in range(draw(st.integers(0, 8)))]
    ev += [Event("rcusp", 1)] * p
    return FrontDiagram(2 * p, tuple(ev))


def test_unknot():
    fd = unknot_front()
    assert classical_invariants(fd) == (-1, 0)
    d = chekanov_dga(fd)
    augs = augmentations(d)
    assert len(augs) == 1
    assert lch(d, augs[0]) == ranks({1: 1})
    assert gfh_from_lch(lch(d, augs[0])) == ranks({2: 1})


def test_trefoil():
    fd = trefoil_front()
    assert classical_invariants(fd) == (1, 0)
    assert alexander_polynomial(fd) == (1, -1, 1)
    d = chekanov_dga(fd)
    assert d.square_defects() == [] and d.grading_defects() == []
    spec = lch_spectrum(d)
    assert len(spec) == 5 == brute_augmentations(d)
    assert all(l == ranks({0: 2, 1: 1}) for _, l in spec)


def test_rotation_number_is_detected(fixtures_dir):
    fd = FrontDiagram.load(fixtures_dir / "rotating-unknot.json")
    with pytest.raises(RotationError):
        classical_invariants(fd)
    with pytest.raises(RotationError):
        chekanov_dga(plat_position(fd))


def test_non_plat_fronts_are_refused():
    fd = FrontDiagram(4, tuple(Event(*e) for e in [("lcusp", 1), ("lcusp", 1), ("cross", 2), ("cross", 1),
                                                   ("cross", 1), ("rcusp", 2), ("rcusp", 1)]))
    assert not is_plat(fd)
    with pytest.raises(FrontError, match="plat"):
        chekanov_dga(fd)
    assert chekanov_dga(plat_position(fd)).square_defects() == []


@pytest.mark.parametrize("bad", [
    {"strands": 2, "events": [{"type": "zigzag", "level": 1}]},
    {"strands": 2, "events": [{"type": "cross", "level": 1}]},
    {"strands": 2, "events": [{"type": "lcusp", "level": 1}]},
    {"events": []},
])
def test_malformed_fronts(bad):
    with pytest.raises(FrontError):
        FrontDiagram.from_json(bad)


# Alexander polynomials of twist knots with d half twists and classical tb (derived by hand
# from the Fox calculus on the constructed fronts, then frozen)
TWISTS = {2: ((-1, 3, -1), -3), 3: ((2, -3, 2), 1), 4: ((-2, 5, -2), -3),
          5: ((3, -5, 3), 1), 6: ((-3, 7, -3), -3), 7: ((4, -7, 4), 1)}


@pytest.mark.parametrize("d", sorted(TWISTS))
def test_twist_fronts_have_expected_knot_type(d):
    fd = twist_front(d)
    poly, tb = TWISTS[d]
    assert is_plat(fd)
    assert alexander_polynomial(fd) == poly
    assert knot_determinant(fd) == 2 * d + 1
    assert classical_invariants(fd) == (tb, 0)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_twist_front_lch(d):
    dga = chekanov_dga(twist_front(d))
    spec = lch_spectrum(dga)
    assert len(spec) == 2
    if d <= 3:
        assert brute_augmentations(dga) == 2
    for _, l in spec:
        expected = ranks({1 - d: 1, 1: 1}) + ranks({d - 1: 1})
        assert l == expected
        assert gfh_from_lch(l).nonzero_degrees() == {2 - d, 2, d}


def test_front_json_roundtrip(fixtures_dir):
    for name, fd in [("unknot", unknot_front()), ("trefoil", trefoil_front()), ("m52", twist_front(3))]:
        assert FrontDiagram.load(fixtures_dir / f"{name}.json") == fd
        assert FrontDiagram.from_json(fd.to_json()) == fd


@settings(max_examples=150, deadline=None)
@given(plats())
def test_differential_squares_to_zero_and_lch_euler_is_tb(fd):
    try:
        d = chekanov_dga(fd)
    except RotationError:
        assume(False)
    assert d.square_defects() == []
    if len(fd.components()) == 1:
        assert d.grading_defects() == []
        tb, _ = classical_invariants(fd)
        for _, l in lch_spectrum(d):
            assert l.euler_characteristic() == tb


@settings(max_examples=100, deadline=None)
@given(fronts())
def test_plat_position_preserves_invariants(fd):
    try:
        inv = classical_invariants(fd)
    except RotationError:
        assume(False)
    p = plat_position(fd)
    assert is_plat(p)
    assert classical_invariants(p) == inv
    assert len(p.components()) == len(fd.components())
    if len(fd.components()) == 1:
        assert alexander_polynomial(p) == alexander_polynomial(fd)
    assert chekanov_dga(p).square_defects() == []
