"""End-to-end acceptance checks, one test per shipped guarantee, each
with its wall-clock budget.  A summary line per criterion is printed at
the end of the run (see conftest.py)."""

import functools
import random
import time
from fractions import Fraction

from qpdl import ast
from qpdl.checker import (
    Environment,
    check_state,
    check_valid,
    denote_program,
    eval_symbolic,
)
from qpdl.frame import Frame, PartialMap, Ray, Subspace
from qpdl.linalg import GaussianRational, Matrix
from qpdl.parser import parse_formula, parse_program
from qpdl.protocols import (
    _ax_adjunction,
    _ax_dynamic,
    _ax_testable,
    _ax_unitary,
    _bell_characteristic,
    _qss_branch,
    _random_ray,
    _random_subspace,
    _teleport_branch,
    axiom_suite,
    lemma_suite,
    quantum_secret_sharing,
    teleportation,
)
from test_checker import coherent_formula, rand_ray
from test_lang import rand_formula, rand_program

CRITERIA = []


def criterion(number, bound_seconds):
    """Record one pass/fail summary line and enforce the time budget."""
    def wrap(fn):
        @functools.wraps(fn)
        def run():
            start = time.perf_counter()
            try:
                detail = fn()
                elapsed = time.perf_counter() - start
                assert elapsed < bound_seconds, (
                    f"criterion {number} took {elapsed:.1f}s, "
                    f"budget {bound_seconds}s")
            except BaseException:
                CRITERIA.append(f"criterion {number:2d}: FAIL")
                raise
            CRITERIA.append(f"criterion {number:2d}: PASS ({detail}; "
                            f"{elapsed:.2f}s < {bound_seconds:.0f}s)")
        return run
    return wrap


# ----- shared random material ------------------------------------------------------


def rand_scalar(rng, lo=-3, hi=3):
    return GaussianRational(Fraction(rng.randint(lo, hi)),
                            Fraction(rng.randint(lo, hi)))


def rand_matrix(rng, dim, singular=False):
    rows = [[rand_scalar(rng) for _ in range(dim)] for _ in range(dim)]
    if singular:
        for i in rng.sample(range(dim), rng.randint(1, dim - 1)):
            rows[i] = [GaussianRational()] * dim
    return Matrix(rows)


def word_matrix(rng, fr):
    """The matrix of a random word of basic gates."""
    m = Matrix.identity(fr.dim)
    for _ in range(rng.randint(1, 4)):
        if fr.n >= 2 and rng.random() < 0.25:
            i, j = rng.sample(range(1, fr.n + 1), 2)
            g = fr.gate("CNOT", (i, j))
        else:
            g = fr.gate(rng.choice("XZH"), (rng.randint(1, fr.n),))
        m = g.matrix * m
    return m


def ray_in(rng, sub):
    """A random ray inside a nonzero subspace."""
    while True:
        amps = [GaussianRational()] * sub.ambient
        for i in range(sub.dim):
            c = rand_scalar(rng)
            amps = [a + c * b for a, b in zip(amps, sub.basis.row(i))]
        if any(not a.is_zero() for a in amps):
            return Ray(amps)


# ----- 1: single-qubit and CNOT transition tables ----------------------------------


@criterion(1, 1.0)
def test_gate_tables_exact():
    fr = Frame(1)
    zero, one = fr.product_ray("0"), fr.product_ray("1")
    plus, minus = fr.product_ray("+"), fr.ray([1, -1])
    tables = {"X": [(zero, one), (one, zero), (plus, plus)],
              "Z": [(zero, zero), (one, one), (plus, minus)],
              "H": [(zero, plus), (one, minus), (plus, zero)]}
    entries = 0
    for kind, rows in tables.items():
        gate = fr.gate(kind, (1,))
        for src, want in rows:
            assert gate.apply_ray(src) == want
            entries += 1
    fr2 = Frame(2)
    cnot = fr2.gate("CNOT", (1, 2))
    rows = [("00", "00"), ("01", "01"), ("0+", "0+"),
            ("11", "10"), ("10", "11"), ("1+", "1+"),
            ("+0", [1, 0, 0, 1]), ("+1", [0, 1, 1, 0]),
            ("++", [1, 1, 1, 1])]
    for src, want in rows:
        want_ray = fr2.product_ray(want) if isinstance(want, str) \
            else fr2.ray(want)
        assert cnot.apply_ray(fr2.product_ray(src)) == want_ray
        entries += 1
    assert entries == 18
    return "9 single-qubit + 9 CNOT entries, ray-exact"


# ----- 2: Bell truth table ---------------------------------------------------------


def bell_amps(x, y, n):
    """|0 y ...0> + (-1)^x |1 (1-y) ...0> with qubit 1 most significant."""
    amps = [0] * (2 ** n)
    shift = n - 2
    amps[(0 << 1 | y) << shift] = 1
    amps[(1 << 1 | (1 - y)) << shift] = (-1) ** x
    return amps


@criterion(2, 1.0)
def test_bell_truth_table_is_identity():
    checks = 0
    for n in (2, 3):
        fr = Frame(n)
        env = Environment(fr)
        rays = {(x, y): fr.ray(bell_amps(x, y, n))
                for x in (0, 1) for y in (0, 1)}
        for a, ray in rays.items():
            for b in rays:
                for text in (f"bell[{b[0]},{b[1]},1,2]",
                             _bell_characteristic(b[0], b[1], 1, 2)):
                    held = check_state(env, ray, parse_formula(text))
                    assert held == (a == b)
                    checks += 1
    assert checks == 64
    return "4x4 identity at n=2 and embedded at n=3, atom and description"


# ----- 3: frame properties ---------------------------------------------------------


def prop_partial_functionality(rng, fr):
    test = PartialMap(_random_subspace(rng, fr).projector())
    s = _random_ray(rng, fr)
    c = GaussianRational(Fraction(rng.randint(1, 5), 2),
                         Fraction(rng.randint(-3, 3)))
    # another representative of the same state
    t, v = test.apply_ray(s), test.apply_ray(Ray([c * a for a in s.amps]))
    assert (t is None) == (v is None)
    assert t is None or t == v


def prop_trivial_tests(rng, fr):
    s = _random_ray(rng, fr)
    assert PartialMap(Subspace.full(fr.dim).projector()).apply_ray(s) == s
    assert PartialMap(Subspace.zero(fr.dim).projector()).apply_ray(s) is None


def prop_atomicity(rng, fr):
    s = _random_ray(rng, fr)
    t = _random_ray(rng, fr)
    while t == s:
        t = _random_ray(rng, fr)
    # the orthocomplement of a state rejects it and catches any other
    away = PartialMap(Subspace.of_ray(s).ortho().projector())
    assert away.apply_ray(s) is None
    assert away.apply_ray(t) is not None


def prop_adequacy(rng, fr):
    sub = _random_subspace(rng, fr)
    s = ray_in(rng, sub)
    assert PartialMap(sub.projector()).apply_ray(s) == s


def prop_repeatability(rng, fr):
    sub = _random_subspace(rng, fr)
    s = _random_ray(rng, fr)
    out = PartialMap(sub.projector()).apply_ray(s)
    assert out is None or sub.contains_ray(out)
    assert (out is None) == sub.ortho().contains_ray(s)


def prop_compatibility(rng, fr):
    # spans of subsets of one orthogonal basis commute
    g = word_matrix(rng, fr)
    def span(ids):
        if not ids:
            return Subspace.zero(fr.dim)
        return Subspace.from_rows([g.column(i) for i in ids], fr.dim)
    a = [i for i in range(fr.dim) if rng.random() < 0.5]
    b = [i for i in range(fr.dim) if rng.random() < 0.5]
    sa, sb = span(a), span(b)
    pa, pb = sa.projector(), sb.projector()
    assert pa * pb == pb * pa
    composed = PartialMap(pb * pa)
    meet = PartialMap(sa.meet(sb).projector())
    s = _random_ray(rng, fr)
    left, right = composed.apply_ray(s), meet.apply_ray(s)
    assert (left is None) == (right is None)
    assert left is None or left == right


def prop_self_adjointness(rng, fr):
    test = PartialMap(_random_subspace(rng, fr).projector())
    while True:
        s = _random_ray(rng, fr)
        w = test.apply_ray(s)
        if w is not None:
            break
    while True:
        t = _random_ray(rng, fr)
        if not t.is_orthogonal(w):
            break
    # s -P?-> w -> t forces t -P?-> v -> s
    v = test.apply_ray(t)
    assert v is not None
    assert not v.is_orthogonal(s)


def prop_proper_superposition(rng, fr):
    s = _random_ray(rng, fr)
    if rng.random() < 0.5:
        t = ray_in(rng, Subspace.of_ray(s).ortho())
    else:
        t = _random_ray(rng, fr)
    if s.is_orthogonal(t):
        w = Ray([a + b for a, b in zip(s.amps, t.amps)])
    else:
        w = s
    assert not s.is_orthogonal(w)
    assert not w.is_orthogonal(t)


def prop_unitary_reversibility(rng, fr):
    m = word_matrix(rng, fr)
    s = _random_ray(rng, fr)
    assert PartialMap(m).apply_ray(s) is not None
    assert PartialMap(m.conj_transpose() * m).apply_ray(s) == s
    assert PartialMap(m * m.conj_transpose()).apply_ray(s) == s


def prop_orthogonality_preservation(rng, fr):
    u = PartialMap(word_matrix(rng, fr))
    s = _random_ray(rng, fr)
    if rng.random() < 0.5:
        t = ray_in(rng, Subspace.of_ray(s).ortho())
    else:
        t = _random_ray(rng, fr)
    assert s.is_orthogonal(t) == u.apply_ray(s).is_orthogonal(u.apply_ray(t))


FRAME_PROPERTIES = [
    prop_partial_functionality,
    prop_trivial_tests,
    prop_atomicity,
    prop_adequacy,
    prop_repeatability,
    prop_compatibility,
    prop_self_adjointness,
    prop_proper_superposition,
    prop_unitary_reversibility,
    prop_orthogonality_preservation,
]


@criterion(3, 30.0)
def test_frame_properties_randomized():
    rng = random.Random(301)
    frames = (Frame(1), Frame(2))
    for prop in FRAME_PROPERTIES:
        for t in range(100):
            prop(rng, frames[t % 2])
    return f"{len(FRAME_PROPERTIES)} properties x 100 instances, n in {{1,2}}"


# ----- 4: the adjoint via weakest preconditions ------------------------------------


@criterion(4, 30.0)
def test_adjoint_equals_ortho_of_preimage_of_ortho():
    rng = random.Random(404)
    fr = Frame(2)
    annihilated = 0
    for k in range(200):
        m = rand_matrix(rng, 4, singular=(k % 3 == 0))
        if m.is_zero():
            m = rand_matrix(rng, 4)
        kern = m.conj_transpose().kernel_basis()
        if k % 5 == 2 and kern.rows:
            s = ray_in(rng, Subspace(kern, 4, _canonical=True))
        else:
            s = _random_ray(rng, fr)
        dag = m.conj_transpose().apply(s.amps)
        if all(a.is_zero() for a in dag):
            lhs = Subspace.zero(4)
            annihilated += 1
        else:
            lhs = Subspace.of_ray(Ray(dag))
        rhs = PartialMap(m).preimage_closed(
            Subspace.of_ray(s).ortho()).ortho()
        assert lhs == rhs
    assert annihilated > 0
    return f"200 random 4x4 maps, {annihilated} with annihilated adjoint"


# ----- 5: axiom suite --------------------------------------------------------------


AXIOM_SCHEMAS = [
    "kripke", "testability-axiom", "partial-functionality", "adequacy",
    "proper-superpositions", "unitary-functionality", "unitary-bijectivity",
    "adjointness-axiom", "repeatability", "testability-closure",
    "quantum-modus-ponens", "weak-modularity", "post-adjunction",
    "adjointness-theorem", "separation", "trivial-local", "local-states",
    "basic-testability", "determinacy", "entanglement-axiom",
    "gate-locality", "characteristic", "cnot", "bell characterization",
    "ghz characterization", "gamma axiom row", "ortho-trivial",
    "locality-closure", "act-locally", "identical-parts", "perp-component",
]


@criterion(5, 180.0)
def test_axiom_suite():
    suite = axiom_suite()
    assert suite.passed, suite.headline
    for name in AXIOM_SCHEMAS:
        assert any(name in line for line in suite.lines), name
    # round-robin families get a top-up so every schema sees >= 50 draws
    rng = random.Random(505)
    for fn, count in ((_ax_dynamic, 250), (_ax_unitary, 200),
                      (_ax_testable, 200), (_ax_adjunction, 100)):
        rows = fn(rng, count)
        bad = [r.label for r in rows if not r.valid]
        assert not bad, bad
    return f"{len(suite.lines)} suite instances + 750 schema top-ups"


# ----- 6: teleportation ------------------------------------------------------------


@criterion(6, 5.0)
def test_teleportation_with_mutations():
    report = teleportation()
    assert report.passed, report.headline
    assert report.headline == "PASS (12/12 instances, 4 branches)"
    env = Environment(Frame(3))
    union = " + ".join(_teleport_branch(x, y, False, False)
                       for x in (0, 1) for y in (0, 1))
    for c in "01+":
        whole = parse_formula(
            f"eqi{{3}}(img({union}, vec{{1}}({c}) & bell[0,0,2,3]),"
            f" img(mov[1,3](id), vec{{1}}({c})))")
        assert check_valid(env, whole) is None
    fr = Frame(3)
    mutations = [
        (dict(drop_z=True), "q=+ x=1,y=0", (1, 0, False, True),
         fr.ray([1, 0, 0, 1, 1, 0, 0, 1]), [1, 1], [1, -1]),
        (dict(drop_x=True), "q=0 x=0,y=1", (0, 1, True, False),
         fr.ray([1, 0, 0, 1, 0, 0, 0, 0]), [1, 0], [0, 1]),
    ]
    for kwargs, label, branch_args, inp, wanted, uncorrected in mutations:
        bad = teleportation(samples=0, **kwargs)
        assert not bad.passed
        line = next(l for l in bad.lines if f"\t{label}\t" in l)
        assert "\tFAIL" in line and "witness=" in line
        branch = _teleport_branch(*branch_args)
        claim = parse_formula(
            f"eqi{{3}}(img({branch}, vec{{1}}({label[2]}) & bell[0,0,2,3]),"
            f" img(mov[1,3](id), vec{{1}}({label[2]})))")
        witness = check_valid(env, claim)
        assert witness is not None
        # the pointwise evaluator confirms the witness refutes the claim
        assert check_state(env, witness, claim) is False
        # and the skipped correction is visible on the output's third qubit
        out = denote_program(env, parse_program(branch)).single().apply_ray(inp)
        part = fr.separability(out, (3,))[0]
        assert part == Ray(uncorrected)
        assert part != Ray(wanted)
    return "claim valid per branch, union and 20 rays; 2 mutations refuted"


# ----- 7: secret sharing -----------------------------------------------------------


@criterion(7, 15.0)
def test_quantum_secret_sharing():
    report = quantum_secret_sharing()
    assert report.passed, report.headline
    assert report.headline == "PASS (26/26 instances, 8 branches)"
    ghz = [line for line in report.lines if "ghz intermediate" in line]
    assert len(ghz) == 2
    assert all("\tPASS" in line for line in ghz)
    return "8 branches + 2 intermediate Bell facts + 20 rays"


# ----- 8: lemma suite --------------------------------------------------------------


LEMMA_FAMILIES = [
    "teleportation property", "corollary", "bell measurement",
    "bell preparation", "entanglement composition", "compatibility",
    "agreement", "dual entanglement", "entanglement preparation",
]


@criterion(8, 120.0)
def test_lemma_suite():
    suite = lemma_suite()
    assert suite.passed, suite.headline
    for name in LEMMA_FAMILIES:
        assert any(name in line for line in suite.lines), name
    return f"{len(suite.lines)} instances across {len(LEMMA_FAMILIES)} families"


# ----- 9: phase sensitivity --------------------------------------------------------


@criterion(9, 1.0)
def test_phase_counterexample():
    fr = Frame(1)
    env = Environment(fr)
    z = denote_program(env, parse_program("Z_1")).single()
    ident = denote_program(env, parse_program("id")).single()
    for ray in (fr.product_ray("0"), fr.product_ray("1")):
        assert z.apply_ray(ray) == ray
        assert ident.apply_ray(ray) == ray
    plus = fr.product_ray("+")
    assert ident.apply_ray(plus) == plus
    assert z.apply_ray(plus) != plus
    assert z.apply_ray(plus) == fr.ray([1, -1])
    return "Z = id on 0 and 1, Z(+) = -, exact"


# ----- 10: the two evaluators agree ------------------------------------------------


@criterion(10, 60.0)
def test_symbolic_pointwise_coherence():
    rng = random.Random(1010)
    pairs = 0
    formulas = 0
    while pairs < 1000:
        n = rng.randint(1, 2)
        env = Environment(Frame(n))
        f = parse_formula(coherent_formula(rng, n, rng.randint(1, 3)))
        formulas += 1
        region = eval_symbolic(env, f)
        for _ in range(4):
            s = rand_ray(rng, n)
            assert region.contains_ray(s) == check_state(env, s, f), str(f)
            pairs += 1
    return f"{pairs} (formula, ray) pairs over {formulas} formulas"


# ----- 11: parser round trips ------------------------------------------------------


@criterion(11, 10.0)
def test_parser_round_trip_corpus():
    rng = random.Random(1111)
    corpus = 0
    for _ in range(60):
        f = rand_formula(rng, rng.randint(1, 3))
        assert parse_formula(ast.pretty(f)) == f
        corpus += 1
    for _ in range(60):
        p = rand_program(rng, rng.randint(1, 2))
        assert parse_program(ast.pretty(p)) == p
        corpus += 1
    assert corpus >= 100
    # the protocol texts parse to the structures the verifier consumes
    for x in (0, 1):
        for y in (0, 1):
            node = parse_program(_teleport_branch(x, y, False, False))
            assert isinstance(node, ast.SeqP)
            for z in (0, 1):
                node = parse_program(_qss_branch(x, y, z, False, "+-"))
                assert isinstance(node, ast.SeqP)
    claim = parse_formula("eqi{3}(img(X_1 + Z_1, q & bell[0,0,2,3]),"
                          " img(mov[1,3](id), q))")
    assert isinstance(claim, ast.EqI) and claim.qubits == (3,)
    assert isinstance(claim.left, ast.Img) and isinstance(claim.right, ast.Img)
    assert isinstance(claim.right.prog, ast.Mov)
    return f"{corpus} random round trips + protocol texts"
