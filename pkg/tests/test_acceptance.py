"""One test per acceptance criterion; conftest prints a PASS/FAIL line for each."""

import random
from fractions import Fraction

import pytest

from golden_cases import CASES, golden_path, run_case
from helpers import (
    all_classical_rules,
    brute_defect,
    brute_injective,
    brute_surjective,
    random_local_permutation,
    random_radius1_reversible,
    random_radius1_rfa_by_rejection,
    random_reversible,
    random_rfa,
    random_rule_machine,
    run_moving_head,
)
from rtmgroups.core import Machine, MachineDims, compose, identity, power
from rtmgroups.errors import NotReversible, ParityObstruction
from rtmgroups.perms import Permutation
from rtmgroups.quotients import lef_check, phi, sign_vector
from rtmgroups.reversibility import average_movement, invert, is_reversible, measure_defect
from rtmgroups.synthesis import (
    eval_word,
    flatten,
    in_generating_set,
    point_coords,
    point_index,
    reduce_to_width4,
    synthesize_ob,
    three_cycle_from_swaps,
    word_action,
)
from rtmgroups.torsion import (
    Finite,
    Infinite,
    decide_torsion_rfa1,
    power_is_identity_by_simulation,
    quotient_order_lcm,
    verify_certificate,
)
from rtmgroups.zoo import (
    cell_swap,
    classical_decompose,
    free_product_witness,
    involution_walker,
    lamplighter_generators,
    local_permutation,
    shift_machine,
    state_cycler,
    state_symbol_permutation,
    surf_machine,
)
from test_textformat import parse_any, valid_fixtures

D1 = MachineDims(1, 2, 1)
D2 = MachineDims(1, 2, 2)


@pytest.fixture(scope="module")
def corpus():
    """1000 random radius-1 rules, 200 reversible ones, and all 36 classical n=2, k=1 rules."""
    rng = random.Random(100)
    machines = [random_rule_machine(rng, rng.choice([D1, D2])) for _ in range(1000)]
    machines += [random_radius1_reversible(rng, rng.choice([D1, D2])) for _ in range(200)]
    machines += [Machine.from_table(D1, [(0,)], [(0,)], t) for t in all_classical_rules(D1)]
    return machines


def test_criterion_01_reversibility_oracle(corpus):
    verdicts = [is_reversible(m) for m in corpus]
    assert 0 < sum(verdicts) < len(corpus)
    mismatches = [i for i, (m, v) in enumerate(zip(corpus, verdicts)) if brute_injective(m) != v]
    assert mismatches == []


def test_criterion_02_collapse(corpus):
    for m in corpus:
        rev = is_reversible(m)
        defect = measure_defect(m)
        assert brute_injective(m) == brute_surjective(m) == rev == (defect == 0)
        assert defect == brute_defect(m)


def test_criterion_03_constants():
    for n in (2, 3):
        for m in range(1, 5):
            assert average_movement(surf_machine(MachineDims(1, n, 1), m)) == (Fraction(1, n ** m),)
    for k in (2, 3, 4):
        assert average_movement(state_cycler(MachineDims(1, 2, k))) == (Fraction(1, k),)
        assert average_movement(state_cycler(MachineDims(3, 2, k), 2)) == (0, Fraction(1, k), 0)
    write0 = Machine.from_function(D1, [(0,)], [(0,)], lambda p, q: ((0,), q, (0,)))
    assert measure_defect(write0) == Fraction(1, 2)


def test_criterion_04_homomorphisms():
    rng = random.Random(104)
    for _ in range(100):
        a, b = random_reversible(rng, D2), random_reversible(rng, D2)
        ab = average_movement(compose(a, b))
        assert ab == tuple(x + y for x, y in zip(average_movement(a), average_movement(b)))
    ms = [2, 3, 4]
    for _ in range(100):
        a, b = random_rfa(rng, D2), random_rfa(rng, D2)
        ab = compose(a, b)
        for m in ms:
            assert phi(ab, m) == phi(a, m) * phi(b, m)
        assert sign_vector(ab, ms) == [x * y for x, y in zip(sign_vector(a, ms), sign_vector(b, ms))]


def test_criterion_05_classical_decomposition():
    reversible = 0
    for table in all_classical_rules(D1):
        m = Machine.from_table(D1, [(0,)], [(0,)], table)
        reversible += is_reversible(m)
    assert reversible == 6  # (n k)! * 3^k
    rebuilt = 0
    for table in all_classical_rules(D2):
        m = Machine.from_table(D2, [(0,)], [(0,)], table)
        if not is_reversible(m):
            continue
        t1, t0 = classical_decompose(m)
        assert compose(t1, t0) == m
        rebuilt += 1
    assert rebuilt == 24 * 9
    # and a non-reversible one yields a genuine collision
    bad = Machine.from_table(D1, [(0,)], [(0,)], {((0,), 1): ((1,), 1, (1,)), ((1,), 1): ((0,), 1, (0,))})
    with pytest.raises(NotReversible):
        classical_decompose(bad)


def test_criterion_06_inversion():
    rng = random.Random(106)
    for i in range(200):
        m = random_reversible(rng, D2, depth=4) if i % 2 else random_radius1_reversible(rng, D2)
        inv = invert(m)
        assert compose(m, inv) == identity(D2)
        assert compose(inv, m) == identity(D2)


def reduced_words(max_len):
    for t in range(1, max_len + 1):
        for first in (0, 1):
            yield [(first + j) % 2 for j in range(t)]


def test_criterion_07_free_product_witness():
    walkers = [involution_walker(D1, 0), involution_walker(D1, 1)]
    words = list(reduced_words(6))
    assert len(words) == 12
    for word in words:
        prod = identity(D1)
        for a in word:
            prod = compose(walkers[a], prod)
        assert not prod.is_identity()
        tape, head, q = free_product_witness(word), (0,), 1
        for a in word:
            tape, head, q = run_moving_head(walkers[a], tape, head, q)
        assert head == (len(word),)


def check_verdict(machine, verdict):
    if isinstance(verdict, Finite):
        assert power_is_identity_by_simulation(machine, verdict.order)
        assert verdict.order % quotient_order_lcm(machine, [1, 2, 3, 4]) == 0
    else:
        assert isinstance(verdict, Infinite)
        assert verify_certificate(machine, verdict.certificate)


def test_criterion_08_torsion():
    rng = random.Random(108)
    for _ in range(50):
        t = random_radius1_rfa_by_rejection(rng, D2)
        check_verdict(t, decide_torsion_rfa1(t))
    for a in (0, 1):
        walker = involution_walker(D1, a)
        assert decide_torsion_rfa1(walker) == Finite(2)
        check_verdict(walker, Finite(2))
    for m in (shift_machine(D1, (1,)), state_cycler(D2)):
        verdict = decide_torsion_rfa1(m)
        assert isinstance(verdict, Infinite)
        check_verdict(m, verdict)


def test_criterion_09_lef():
    rng = random.Random(109)
    for _ in range(20):
        pair = [random_radius1_reversible(rng, D2) for _ in range(2)]
        assert all(t.radius <= 1 and is_reversible(t) for t in pair)
        result = lef_check(pair, 1)
        assert result and result.m == 8


def zoo_lp_machines(dims):
    flip = local_permutation(dims, [(0,)], lambda lhs: ((1 - lhs[0][0],), lhs[1]))
    out = [identity(dims), cell_swap(dims, 1), flip]
    out += lamplighter_generators(dims, 2, [(1, 0)])[:1]
    if dims.k == 2:
        out.append(state_symbol_permutation(dims, {(0, 1): (1, 2), (1, 2): (0, 1), (0, 2): (0, 2), (1, 1): (1, 1)}))
        out.append(local_permutation(dims, [], lambda lhs: ((), 3 - lhs[1])))
    return out


def test_criterion_10_synthesis():
    rng = random.Random(110)
    targets = zoo_lp_machines(D1) + zoo_lp_machines(D2)
    for _ in range(50):
        dims = rng.choice([D1, D2])
        F = sorted(rng.sample([(-1,), (0,), (1,)], rng.randrange(1, 3)))
        targets.append(random_local_permutation(rng, dims, F))
    for t in targets:
        word = synthesize_ob(t)
        assert all(in_generating_set(tok, t.dims) for tok in flatten(word.tokens))
        assert eval_word(word) == t
    # parity: only odd permutations with an even alphabet and no ancilla fail
    for n, size in ((2, 64), (3, 729)):
        for _ in range(4):
            p = Permutation(rng.sample(range(size), size)) if n == 2 else \
                Permutation.from_cycles(size, [rng.sample(range(size), rng.choice([2, 3]))])
            odd = p.sign() == -1
            try:
                reduction = reduce_to_width4(p, n, 1, 6, allow_ancilla=False)
            except ParityObstruction:
                assert odd and n % 2 == 0
            else:
                assert not (odd and n % 2 == 0)
                assert word_action(reduction.gates, n, 1, 6) == p
    with pytest.raises(ParityObstruction):
        reduce_to_width4(Permutation.from_cycles(64, [(0, 1)]), 2, 1, 6, allow_ancilla=False)


def test_criterion_11_three_cycles():
    n, k, m = 2, 1, 6
    size = k * n ** m
    count = 0
    for pivot in range(size):
        q, t = point_coords(pivot, n, k, m)
        for i in range(m):
            for j in range(i + 1, m):
                a = point_index(q, t[:i] + (1 - t[i],) + t[i + 1:], n, k)
                b = point_index(q, t[:j] + (1 - t[j],) + t[j + 1:], n, k)
                for cyc in ((pivot, a, b), (pivot, b, a)):
                    target = Permutation.from_cycles(size, [cyc])
                    gates = three_cycle_from_swaps(target, n, k, m)
                    assert len(gates) == 4
                    assert word_action(gates, n, k, m) == target
                    count += 1
    assert count == 64 * 15 * 2


def test_criterion_12_format_and_goldens():
    for path in valid_fixtures():
        text = path.read_text()
        parse, serialize = parse_any(text)
        once = serialize(parse(text))
        assert serialize(parse(once)) == once
    for _ in range(2):
        for name, argv in CASES:
            assert run_case(argv) == golden_path(name).read_text(encoding="ascii"), name
