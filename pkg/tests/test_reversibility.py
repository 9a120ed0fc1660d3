import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from helpers import (
    brute_defect,
    brute_injective,
    brute_surjective,
    random_radius1_reversible,
    random_reversible,
    random_rule_machine,
    run_moving_head,
)
from rtmgroups.core import Machine, MachineDims, compose, identity
from rtmgroups.errors import NotReversible
from rtmgroups.reversibility import (
    average_movement,
    find_collision,
    image_cylinders,
    invert,
    is_reversible,
    measure_defect,
)
from rtmgroups.zoo import involution_walker, shift_machine, state_cycler, surf_machine

D1 = MachineDims(1, 2, 1)
D2 = MachineDims(1, 2, 2)


def write_zero(dims=D1):
    return Machine.from_function(dims, [(0,)], [(0,)], lambda p, q: ((0,), q, (0,)))


def test_write_zero_defect_is_half():
    m = write_zero()
    assert not is_reversible(m)
    assert measure_defect(m) == Fraction(1, 2)


def test_reversible_examples():
    assert is_reversible(identity(D2))
    assert is_reversible(shift_machine(D1, (3,)))
    assert is_reversible(involution_walker(D1, 0))
    assert is_reversible(state_cycler(D2))
    assert is_reversible(surf_machine(D1, 2))


def test_agrees_with_brute_force_oracles():
    rng = random.Random(7)
    seen = set()
    for i in range(200):
        m = random_rule_machine(rng, D2) if i % 2 else random_radius1_reversible(rng, D2)
        rev = is_reversible(m)
        seen.add(rev)
        assert brute_injective(m) == rev
        assert brute_surjective(m) == rev
        assert measure_defect(m) == brute_defect(m)
        assert (measure_defect(m) == 0) == rev
    assert seen == {True, False}


def test_collision_is_a_real_collision():
    rng = random.Random(8)
    found = 0
    for _ in range(100):
        m = random_rule_machine(rng, D2)
        hit = find_collision(m)
        if hit is None:
            continue
        found += 1
        window = sorted(set(m.rule.read) | set(m.rule.write))
        imgs = image_cylinders(m, window)
        by_input = {}
        for idx, img in enumerate(imgs):
            by_input[idx] = img
        (p1, q1), (p2, q2) = hit
        assert (p1, q1) != (p2, q2)
        k = m.dims.k

        def row(p, q):
            i = 0
            for s in p:
                i = i * m.dims.n + s
            return i * k + q - 1

        assert by_input[row(p1, q1)].compatible(by_input[row(p2, q2)])
    assert found > 20


def test_image_cylinders_default_window():
    m = involution_walker(D1, 1)
    imgs = image_cylinders(m)
    assert len(imgs) == 2 ** 3
    assert {img.move for img in imgs} == {(-1,), (0,), (1,)}
    assert all(len(img.support) == 3 for img in imgs)


def test_image_window_must_cover_supports():
    with pytest.raises(ValueError):
        image_cylinders(involution_walker(D1, 1), [(0,)])


def test_invert_round_trip():
    rng = random.Random(9)
    for _ in range(40):
        m = random_reversible(rng, D2)
        inv = invert(m)
        assert compose(m, inv).is_identity()
        assert compose(inv, m).is_identity()


def test_invert_undoes_a_step_on_configurations():
    rng = random.Random(10)
    for _ in range(20):
        m = random_radius1_reversible(rng, D2)
        inv = invert(m)
        tape = {(i,): rng.randrange(2) for i in range(-6, 7)}
        tape = {c: s for c, s in tape.items() if s}
        q = rng.randrange(1, 3)
        t1, h1, q1 = run_moving_head(m, tape, (0,), q)
        t2, h2, q2 = run_moving_head(inv, t1, h1, q1)
        assert (t2, h2, q2) == (tape, (0,), q)


def test_invert_rejects_non_reversible():
    with pytest.raises(NotReversible):
        invert(write_zero())


def test_alpha_examples():
    assert average_movement(shift_machine(MachineDims(2, 2, 1), (1, -2))) == (1, -2)
    assert average_movement(involution_walker(D1, 0)) == (0,)
    assert average_movement(state_cycler(MachineDims(1, 2, 3))) == (Fraction(1, 3),)
    assert average_movement(surf_machine(MachineDims(1, 3, 1), 2)) == (Fraction(1, 9),)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_alpha_is_additive_on_reversible_machines(seed):
    rng = random.Random(seed)
    a, b = random_reversible(rng, D2), random_reversible(rng, D2)
    sa, sb = average_movement(a), average_movement(b)
    assert average_movement(compose(a, b)) == tuple(x + y for x, y in zip(sa, sb))


def test_alpha_of_inverse_is_negated():
    rng = random.Random(11)
    for _ in range(10):
        m = random_reversible(rng, D2)
        assert average_movement(invert(m)) == tuple(-x for x in average_movement(m))


def pairwise_disjoint(images):
    return not any(a.compatible(b) for i, a in enumerate(images) for b in images[i + 1:])


def test_verdict_does_not_depend_on_the_window():
    rng = random.Random(12)
    for _ in range(40):
        m = random_rule_machine(rng, D2)
        rev = is_reversible(m)
        assert pairwise_disjoint(image_cylinders(m)) == rev
        assert pairwise_disjoint(image_cylinders(m, [(-2,), (-1,), (0,), (1,), (2,)])) == rev
