"""Rays, subspaces, partial maps and the n-qubit frame."""

import random
from fractions import Fraction

import pytest

from qpdl.frame import (
    BadIndex,
    Frame,
    PartialMap,
    QAction,
    Ray,
    Subspace,
    format_state,
    parse_state,
)
from qpdl.linalg import Matrix, gr


def rand_amps(rng, dim, real=False):
    while True:
        amps = [gr(Fraction(rng.randint(-6, 6), rng.randint(1, 3)),
                   0 if real else Fraction(rng.randint(-6, 6), rng.randint(1, 3)))
                for _ in range(dim)]
        if any(not a.is_zero() for a in amps):
            return tuple(amps)


def rand_sub(rng, dim, k=None):
    while True:
        rows = [rand_amps(rng, dim) for _ in range(k or rng.randint(1, dim))]
        sub = Subspace.from_rows(rows, dim)
        if not sub.is_zero():
            return sub


def test_ray_scalar_and_phase_invariance():
    rng = random.Random(201)
    for _ in range(50):
        amps = rand_amps(rng, 4)
        scale = gr(Fraction(rng.randint(1, 5)), Fraction(rng.randint(-5, 5)))
        assert Ray(amps) == Ray(tuple(scale * a for a in amps))
    assert Ray((1, 0, 0, 1)) != Ray((1, 0, 0, -1))


def test_inner_and_orthogonality():
    a = Ray((1, 0))
    b = Ray((0, 1))
    c = Ray((1, 1))
    assert a.is_orthogonal(b)
    assert not a.is_orthogonal(c)
    assert Ray((1, gr(0, 1))).is_orthogonal(Ray((1, gr(0, -1))))


def test_subspace_lattice_laws():
    rng = random.Random(202)
    for _ in range(40):
        s = rand_sub(rng, 4)
        t = rand_sub(rng, 4)
        assert s.ortho().ortho() == s
        assert s.join(t).ortho() == s.ortho().meet(t.ortho())
        assert s.meet(t).dim + s.join(t).dim <= s.dim + t.dim
        assert s.join(t).contains_subspace(s)
        assert s.contains_subspace(s.meet(t))


def test_projector_is_idempotent_selfadjoint():
    rng = random.Random(203)
    for _ in range(30):
        s = rand_sub(rng, 4)
        p = s.projector()
        assert p * p == p
        assert p.conj_transpose() == p
        v = rand_amps(rng, 4)
        out = p.apply(v)
        assert s.contains_vector(out)


def test_single_gate_tables():
    fr = Frame(1)
    table = {"X": {"0": "1", "1": "0", "+": "+"},
             "Z": {"0": "0", "1": "1", "+": "-"},
             "H": {"0": "+", "1": "-", "+": "0"}}
    for g, rows in table.items():
        pm = fr.gate(g, (1,))
        for pre, post in rows.items():
            assert pm.apply_ray(fr.product_ray(pre)) == fr.product_ray(post)


def test_h_matrix_is_unnormalised():
    fr = Frame(1)
    assert fr.gate("H", (1,)).matrix == Matrix([[1, 1], [1, -1]])


def test_qubit_one_is_most_significant():
    fr = Frame(2)
    pm = fr.gate("X", (1,))
    assert pm.apply_ray(fr.basis_ray(0b00)) == fr.basis_ray(0b10)
    pm2 = fr.gate("X", (2,))
    assert pm2.apply_ray(fr.basis_ray(0b00)) == fr.basis_ray(0b01)


def test_cnot_table():
    fr = Frame(2)
    pm = fr.gate("CNOT", (1, 2))
    plain = {"00": "00", "01": "01", "0+": "0+",
             "10": "11", "11": "10", "1+": "1+"}
    for pre, post in plain.items():
        assert pm.apply_ray(fr.product_ray(pre)) == fr.product_ray(post)
    assert pm.apply_ray(fr.product_ray("+0")) == fr.ray([1, 0, 0, 1])
    assert pm.apply_ray(fr.product_ray("+1")) == fr.ray([0, 1, 1, 0])
    assert pm.apply_ray(fr.product_ray("++")) == fr.product_ray("++")


def test_split_merge_round_trip():
    fr = Frame(3)
    rng = random.Random(204)
    for _ in range(60):
        idx = rng.randrange(fr.dim)
        inside = sorted(rng.sample([1, 2, 3], rng.randint(1, 2)))
        a, b = fr.split_index(idx, inside)
        assert fr.merge_index(inside, a, b) == idx


def test_separability_of_products_and_entangled():
    fr = Frame(2)
    rng = random.Random(205)
    for _ in range(40):
        left = rand_amps(rng, 2)
        right = rand_amps(rng, 2)
        amps = [a * b for a in left for b in right]
        got = fr.separability(Ray(amps), (1,))
        assert got is not None
        assert got[0] == Ray(left) and got[1] == Ray(right)
    assert fr.separability(fr.ray([1, 0, 0, 1]), (1,)) is None
    assert fr.separability(fr.ray([0, 1, -1, 0]), (2,)) is None


def test_reachable_by_local_actions():
    fr = Frame(2)
    got = fr.reachable(fr.basis_ray(0), (2,))
    assert got == Subspace.from_rows([[1, 0, 0, 0], [0, 1, 0, 0]], 4)
    bell = fr.ray([1, 0, 0, 1])
    assert fr.reachable(bell, (1,)).is_full()


def test_state_lift_and_local_lift():
    fr = Frame(2)
    plus2 = fr.state_lift((1, 1), (2,))
    assert plus2.dim == 2
    assert plus2.contains_ray(fr.product_ray("0+"))
    assert plus2.contains_ray(fr.product_ray("1+"))
    assert not plus2.contains_ray(fr.product_ray("00"))
    assert fr.local_lift("+", 2) == plus2
    both = fr.state_lift((1, 0, 0, 1), (1, 2))
    assert both.dim == 1


def test_map_to_state_of_h():
    # sum_x |x> (x) H|x> = |0+> + |1-> with amplitudes (1,1,1,-1)
    fr = Frame(2)
    g = Matrix([[1, 1], [1, -1]])
    assert fr.map_to_state(g, 1, 2) == fr.state_lift((1, 1, 1, -1), (1, 2))
    assert fr.map_to_state(Matrix.identity(2), 1, 2) == \
        fr.state_lift((1, 0, 0, 1), (1, 2))


def test_restrict_first_inverts_encoding():
    fr = Frame(2)
    rng = random.Random(206)
    for _ in range(20):
        g = Matrix([[gr(Fraction(rng.randint(-4, 4))) for _ in range(2)]
                    for _ in range(2)])
        if g.is_zero():
            continue
        full = g.kron(Matrix.identity(2))
        got = fr.restrict_first(PartialMap(full))
        # equal up to scale: compare induced subspace of the flattened entries
        flat_got = [x for row in got.entries for x in row]
        flat_g = [x for row in g.entries for x in row]
        assert Subspace.from_rows([flat_got], 4) == \
            Subspace.from_rows([flat_g], 4)


def test_partial_map_adjoint_characterisation():
    rng = random.Random(207)
    for _ in range(60):
        m = Matrix([[gr(Fraction(rng.randint(-5, 5)),
                        Fraction(rng.randint(-5, 5))) for _ in range(4)]
                    for _ in range(4)])
        if m.is_zero():
            continue
        pm = PartialMap(m)
        s, t = Ray(rand_amps(rng, 4)), Ray(rand_amps(rng, 4))
        fs = pm.apply_ray(s)
        at = pm.adjoint().apply_ray(t)
        # t perp F(s) iff F+(t) perp s, reading undefined as orthogonal
        left = fs is None or fs.is_orthogonal(t)
        right = at is None or at.is_orthogonal(s)
        assert left == right


def test_is_local():
    fr = Frame(2)
    x1 = fr.gate("X", (1,))
    assert x1.is_local(fr, frozenset([1]))
    assert not x1.is_local(fr, frozenset([2]))
    cx = fr.gate("CNOT", (1, 2))
    assert cx.is_local(fr, frozenset([1, 2]))
    assert not cx.is_local(fr, frozenset([1]))


def test_qaction_composition():
    fr = Frame(1)
    act = QAction([fr.gate("X", (1,))]).union(QAction([fr.gate("Z", (1,))]))
    assert not act.is_deterministic()
    seq = act.then(QAction([fr.gate("H", (1,))]))
    assert len(seq.branches) == 2
    outs = {b.apply_ray(fr.product_ray("0")) for b in seq.branches}
    assert outs == {fr.product_ray("+"), fr.product_ray("-")}


def test_check_qubits_rejects_bad_indices():
    fr = Frame(2)
    with pytest.raises(BadIndex):
        fr.check_qubits((0,))
    with pytest.raises(BadIndex):
        fr.check_qubits((3,))
    with pytest.raises(BadIndex):
        fr.check_qubits((1, 1))


def test_product_form_both_sides():
    fr = Frame(2)
    lifted = fr.state_lift((1, 2), (1,))
    got = fr.product_form(lifted, (1,))
    assert got is not None
    bell_span = Subspace.of_ray(fr.ray([1, 0, 0, 1]))
    assert fr.product_form(bell_span, (1,)) is None


def test_state_file_round_trip():
    fr = Frame(2)
    ray = fr.ray([1, 0, gr(0, 1), Fraction(1, 2)])
    text = format_state(2, ray)
    n, back = parse_state(text)
    assert n == 2 and back == ray
    with pytest.raises(ValueError):
        parse_state("m=2\n1 0\n")
    with pytest.raises(ValueError):
        parse_state("n=1\n1 0\n")  # wrong number of amplitude lines
    with pytest.raises(ValueError):
        parse_state("n=1\n0 0\n0 0\n")  # zero vector is not a state
