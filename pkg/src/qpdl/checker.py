"""The three evaluators.

Symbolic: formula -> Region, for everything whose meaning is a finite
boolean combination of subspaces.  Pointwise: formula at one concrete
ray, which additionally covers the separation constructs.  Schematic:
universally quantified state variables, decided by instantiating over
{0,1,+} per qubit and corroborated on random rational states.

A counterexample found symbolically is re-checked pointwise before it
is reported; the two evaluators share no interpretation code for the
connectives, so agreement is meaningful.
"""

from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import ast
from .desugar import desugar_formula, desugar_program
from .errors import (
    CheckError,
    NonDeterministicProgram,
    SpatialAtomInSymbolicMode,
    UnboundVariable,
    UnsupportedNesting,
    UnsupportedShape,
)
from .frame import Frame, PartialMap, QAction, Ray, Subspace
from .linalg import GaussianRational, Matrix, ONE, ZERO
from .regions import Region, emptiness, wp


class Environment:
    """Evaluation context: a frame plus a valuation for variables.

    Valuation values may be given as Subspace or Region; they are held
    as Regions.
    """

    __slots__ = ("frame", "valuation")

    def __init__(self, frame: Frame, valuation=None):
        self.frame = frame
        self.valuation = {}
        for name, value in dict(valuation or {}).items():
            if isinstance(value, Subspace):
                value = Region.of_subspace(value)
            self.valuation[name] = value

    def lookup(self, name: str) -> Region:
        try:
            return self.valuation[name]
        except KeyError:
            raise UnboundVariable(name) from None


@dataclass(frozen=True)
class LocalTrivial:
    """Marker denotation of the program T{I}: every I-local action at
    once.  It has no matrix; modalities treat it through reachability."""
    qubits: tuple


# ----- program denotation ----------------------------------------------------


def denote_program(env: Environment, prog: ast.Program):
    """QAction for a surface program, or LocalTrivial for T{I}."""
    return _denote(env, desugar_program(prog, env.frame.n))


def _denote(env: Environment, prog: ast.Program):
    fr = env.frame
    if isinstance(prog, ast.GateP):
        return QAction([fr.gate(prog.kind, prog.targets)])
    if isinstance(prog, ast.Id):
        return QAction([PartialMap(Matrix.identity(fr.dim))])
    if isinstance(prog, ast.TopP):
        return LocalTrivial(prog.qubits)
    if isinstance(prog, ast.Test):
        closed = _eval(env, prog.formula).closure()
        return QAction([PartialMap(closed.projector())])
    if isinstance(prog, ast.SeqP):
        left = _denote(env, prog.left)
        right = _denote(env, prog.right)
        if isinstance(left, LocalTrivial) or isinstance(right, LocalTrivial):
            raise UnsupportedShape("T{I} cannot be composed; it may only "
                                   "stand alone under a modality")
        return left.then(right)
    if isinstance(prog, ast.UnionP):
        left = _denote(env, prog.left)
        right = _denote(env, prog.right)
        if isinstance(left, LocalTrivial) or isinstance(right, LocalTrivial):
            raise UnsupportedShape("T{I} cannot be composed; it may only "
                                   "stand alone under a modality")
        return left.union(right)
    raise TypeError(f"not a core program node: {prog!r}")


def _atom_subspace(env: Environment, f: ast.Formula) -> Subspace:
    """The subspace named by one of the state atoms."""
    fr = env.frame
    if isinstance(f, ast.Const):
        return fr.local_lift(f.char, f.qubit)
    if isinstance(f, ast.RayF):
        return fr.state_lift(f.amps, f.qubits)
    if isinstance(f, ast.GHZ):
        amps = [ZERO] * 8
        amps[0] = ONE
        amps[7] = ONE
        return fr.state_lift(amps, (f.i, f.j, f.k))
    if isinstance(f, ast.Gamma):
        return fr.state_lift((ONE, ONE, ONE, ONE), (f.i, f.j))
    if isinstance(f, ast.Ent):
        act = _denote(env, f.prog)
        if isinstance(act, LocalTrivial):
            raise UnsupportedShape("ent needs a deterministic program")
        if not act.is_deterministic():
            raise NonDeterministicProgram(
                "ent encodes one linear map, not a union")
        g = fr.restrict_first(act.single())
        return fr.map_to_state(g, f.i, f.j)
    raise TypeError(f"not a state atom: {f!r}")


# ----- symbolic evaluation ----------------------------------------------------


def eval_symbolic(env: Environment, f: ast.Formula) -> Region:
    """Region of a surface formula; raises SpatialAtomInSymbolicMode when
    its meaning is not a finite boolean combination of subspaces."""
    return _eval(env, desugar_formula(f, env.frame.n))


def _eval(env: Environment, f: ast.Formula) -> Region:
    dim = env.frame.dim
    if isinstance(f, ast.Var):
        return env.lookup(f.name)
    if isinstance(f, ast.TrueF):
        return Region.full(dim)
    if isinstance(f, ast.FalseF):
        return Region.empty(dim)
    if isinstance(f, (ast.Const, ast.RayF, ast.GHZ, ast.Gamma, ast.Ent)):
        return Region.of_subspace(_atom_subspace(env, f))
    if isinstance(f, ast.Top):
        if not f.qubits or len(f.qubits) == env.frame.n:
            return Region.full(dim)
        raise SpatialAtomInSymbolicMode(
            "T{I} membership is state-by-state; use a concrete state")
    if isinstance(f, ast.Not):
        return _eval(env, f.body).complement()
    if isinstance(f, ast.And):
        return _eval(env, f.left).intersect(_eval(env, f.right))
    if isinstance(f, ast.Ortho):
        if isinstance(f.body, ast.Top):
            # basis states are I-separated for every I, so T{I} spans the
            # whole space and its orthocomplement is zero
            return Region.empty(dim)
        return Region.of_subspace(_eval(env, f.body).ortho())
    if isinstance(f, ast.Box):
        if isinstance(f.prog, ast.TopP):
            if len(f.prog.qubits) == env.frame.n:
                valid = emptiness(_eval(env, f.body).complement()) is None
                return Region.full(dim) if valid else Region.empty(dim)
            raise SpatialAtomInSymbolicMode(
                "[T{I}] needs a concrete state")
        act = _denote(env, f.prog)
        return wp(act, _eval(env, f.body))
    if isinstance(f, ast.EqI):
        same = eq_component(env, _eval(env, f.left), _eval(env, f.right),
                            f.qubits)
        return Region.full(dim) if same else Region.empty(dim)
    if isinstance(f, ast.Component):
        return _component_region(env, f)
    if isinstance(f, ast.LocalF):
        ok = _region_is_local(env, _eval(env, f.body), f.qubits)
        return Region.full(dim) if ok else Region.empty(dim)
    if isinstance(f, ast.LocalP):
        ok = _program_is_local(env, f.prog, f.qubits)
        return Region.full(dim) if ok else Region.empty(dim)
    if isinstance(f, ast.Img):
        return _image_region(env, f)
    raise TypeError(f"not a core formula node: {f!r}")


def _component_region(env: Environment, f: ast.Component) -> Region:
    """cmp{I}(g) is symbolic only when g denotes a single part-state:
    the lift of that state is λ s . s_I = g, a subspace."""
    sub_env = Environment(Frame(len(f.qubits)))
    inner = _eval(sub_env, f.body)
    if inner.is_empty():
        return Region.empty(env.frame.dim)
    closed = inner.closure()
    if closed.dim != 1:
        raise SpatialAtomInSymbolicMode(
            "cmp{I} of anything but a single state needs a concrete state")
    ray = closed.any_ray()
    return Region.of_subspace(env.frame.state_lift(ray.amps, f.qubits))


def _image_region(env: Environment, f: ast.Img) -> Region:
    act = _denote(env, f.prog)
    if isinstance(act, LocalTrivial):
        raise UnsupportedShape("images through T{I} are not supported")
    inner = _eval(env, f.body)
    out = Region.empty(env.frame.dim)
    for t in inner.terms:
        if t.negatives:
            raise UnsupportedShape(
                "images are taken of unions of subspaces only")
        for pm in act.branches:
            out = out.union(Region.of_subspace(pm.image_of(t.positive)))
    return out


# ----- component and locality judgements --------------------------------------


def _component_profile(env: Environment, region: Region, qubits):
    """The I-components occurring in the region: (rays, subspaces), or
    None when some ray of the region is not I-separated.

    Every term must be a plain subspace.  A subspace whose rays are all
    I-separated factors as x_I (x) V (one shared component) or V_I (x) y
    (components = the rays of V_I); anything else contains an entangled
    superposition, which settles the answer.
    """
    rays = set()
    subs = set()
    for t in region.terms:
        if t.negatives:
            raise UnsupportedShape(
                "=_I compares unions of subspaces or states only")
        s = t.positive
        if s.dim == 1:
            sep = env.frame.separability(s.any_ray(), qubits)
            if sep is None:
                return None
            rays.add(sep[0])
            continue
        form = env.frame.product_form(s, qubits)
        if form is None:
            return None
        if form[0] == "left":
            rays.add(form[1])
        else:
            part = form[1]
            if part.dim == 1:
                rays.add(part.any_ray())
            else:
                subs.add(part)
    return frozenset(rays), frozenset(subs)


def eq_component(env: Environment, left: Region, right: Region, qubits) -> bool:
    """Whether the two regions have identical sets of I-components, all
    rays on both sides being I-separated."""
    lp = _component_profile(env, left, qubits)
    if lp is None:
        return False
    rp = _component_profile(env, right, qubits)
    if rp is None:
        return False
    return lp == rp


def _region_is_local(env: Environment, region: Region, qubits) -> bool:
    """Whether the region constrains only the named qubits, i.e. equals
    S' x H_rest for some set S' of part-states."""
    inside = env.frame.check_qubits(qubits)
    if len(inside) == env.frame.n:
        return True
    forms = []
    covered = set()
    for t in region.terms:
        if t.negatives:
            raise UnsupportedShape(
                "locality is judged on unions of subspaces only")
        form = env.frame.product_form(t.positive, inside)
        if form is None:
            return False
        forms.append(form)
        if form[0] == "left" and form[2].is_full():
            covered.add(form[1])
    for form in forms:
        if form[0] == "left":
            if form[1] not in covered:
                return False
        else:
            part = form[1]
            if part.dim != 1 or part.any_ray() not in covered:
                return False
    return True


def _program_is_local(env: Environment, prog: ast.Program, qubits) -> bool:
    act = _denote(env, prog)
    if isinstance(act, LocalTrivial):
        return set(act.qubits) <= set(qubits)
    want = frozenset(qubits)
    return all(pm.is_local(env.frame, want) for pm in act.branches)


# ----- pointwise evaluation ----------------------------------------------------


def check_state(env: Environment, s: Ray, f: ast.Formula) -> bool:
    """Whether the concrete state satisfies the surface formula."""
    return _holds(env, s, desugar_formula(f, env.frame.n))


def _symbolic_here(env: Environment, f: ast.Formula) -> Region:
    try:
        return _eval(env, f)
    except SpatialAtomInSymbolicMode as err:
        raise UnsupportedNesting(
            f"separation construct where a testable formula is needed: {err}"
        ) from None


def _holds(env: Environment, s: Ray, f: ast.Formula) -> bool:
    fr = env.frame
    if isinstance(f, ast.Var):
        return env.lookup(f.name).contains_ray(s)
    if isinstance(f, ast.TrueF):
        return True
    if isinstance(f, ast.FalseF):
        return False
    if isinstance(f, (ast.Const, ast.RayF, ast.GHZ, ast.Gamma, ast.Ent)):
        return _atom_subspace(env, f).contains_ray(s)
    if isinstance(f, ast.Top):
        return fr.separability(s, f.qubits) is not None
    if isinstance(f, ast.Not):
        return not _holds(env, s, f.body)
    if isinstance(f, ast.And):
        return _holds(env, s, f.left) and _holds(env, s, f.right)
    if isinstance(f, ast.Ortho):
        if isinstance(f.body, ast.Top):
            return False
        return _symbolic_here(env, f.body).ortho().contains_ray(s)
    if isinstance(f, ast.Box):
        if isinstance(f.prog, ast.TopP):
            reach = Region.of_subspace(fr.reachable(s, f.prog.qubits))
            bad = _symbolic_here(env, ast.Not(f.body))
            return reach.intersect(bad).is_empty_rayset()
        act = _denote(env, f.prog)
        for pm in act.branches:
            out = pm.apply_ray(s)
            if out is not None and not _holds(env, out, f.body):
                return False
        return True
    if isinstance(f, ast.EqI):
        return eq_component(env, _symbolic_here(env, f.left),
                            _symbolic_here(env, f.right), f.qubits)
    if isinstance(f, ast.Component):
        sep = fr.separability(s, f.qubits)
        if sep is None:
            return False
        return _holds(Environment(Frame(len(f.qubits))), sep[0], f.body)
    if isinstance(f, ast.LocalF):
        return _region_is_local(env, _symbolic_here(env, f.body), f.qubits)
    if isinstance(f, ast.LocalP):
        return _program_is_local(env, f.prog, f.qubits)
    if isinstance(f, ast.Img):
        return _eval(env, f).contains_ray(s)
    raise TypeError(f"not a core formula node: {f!r}")


# ----- validity ----------------------------------------------------------------


def check_valid(env: Environment, f: ast.Formula) -> Optional[Ray]:
    """None when the formula holds at every state; otherwise a
    counterexample ray, re-verified pointwise."""
    core = desugar_formula(f, env.frame.n)
    witness = emptiness(_eval(env, ast.Not(core)))
    if witness is None:
        return None
    if _holds(env, witness, core):
        raise RuntimeError(
            "symbolic and pointwise evaluation disagree on the witness")
    return witness


# ----- schematic claims ---------------------------------------------------------


@dataclass(frozen=True)
class SchematicClaim:
    """A template valid for every state assigned to its metavariables.

    Each metavariable (name, qubits) stands for a state of len(qubits)
    qubits; occurrences are Var nodes in formula position.  When the
    template's outer program is a union, branch_labels may name the
    branches for reporting."""
    metavariables: tuple
    template: ast.Formula
    branch_labels: tuple = ()


@dataclass(frozen=True)
class InstanceResult:
    label: str
    valid: bool
    witness: Optional[Ray]


@dataclass(frozen=True)
class SchematicOutcome:
    instances: tuple
    corroborations: tuple
    branch_count: int

    @property
    def passed(self) -> bool:
        return all(r.valid for r in self.instances + self.corroborations)

    def failing(self) -> Optional[InstanceResult]:
        for r in self.instances + self.corroborations:
            if not r.valid:
                return r
        return None


def substitute(node, mapping: dict):
    """Replace Var nodes by formulas throughout a formula or program."""
    if isinstance(node, ast.Var) and node.name in mapping:
        return mapping[node.name]
    changes = {}
    for fld in dataclasses.fields(node):
        value = getattr(node, fld.name)
        if isinstance(value, (ast.Formula, ast.Program)):
            replaced = substitute(value, mapping)
            if replaced is not value:
                changes[fld.name] = replaced
    return dataclasses.replace(node, **changes) if changes else node


def _union_branches(prog: ast.Program) -> list:
    if isinstance(prog, ast.UnionP):
        return _union_branches(prog.left) + _union_branches(prog.right)
    return [prog]


def _modal_split(template: ast.Formula):
    """(rebuild, branches): branch-wise claims when the template's outer
    program is a union.

    [p + q]f is the conjunction of [p]f and [q]f, and an image through a
    union is the union of the branch images, so =_I against a fixed right
    side must hold branch by branch.  Otherwise the template itself is
    the only branch."""
    if (isinstance(template, ast.Implies)
            and isinstance(template.right, ast.Box)):
        box = template.right
        branches = _union_branches(box.prog)
        if len(branches) > 1:
            def rebuild(branch):
                return ast.Implies(template.left, ast.Box(branch, box.body))
            return rebuild, branches
    if isinstance(template, ast.EqI) and isinstance(template.left, ast.Img):
        img = template.left
        branches = _union_branches(img.prog)
        if len(branches) > 1:
            def rebuild(branch):
                return ast.EqI(ast.Img(branch, img.body), template.right,
                               template.qubits)
            return rebuild, branches
    return (lambda _one: template), [None]


def random_part_state(rng, nqubits: int, real_only: bool = False) -> tuple:
    """Amplitudes of a random rational part-state, never the zero vector."""
    while True:
        amps = []
        for _ in range(2 ** nqubits):
            re = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
            im = Fraction(0) if real_only else Fraction(rng.randint(-6, 6),
                                                        rng.randint(1, 3))
            amps.append(GaussianRational(re, im))
        if any(not a.is_zero() for a in amps):
            return tuple(amps)


def check_schematic(env: Environment, claim: SchematicClaim, rng=None,
                    samples: int = 20,
                    real_only: bool = False) -> SchematicOutcome:
    rebuild, branches = _modal_split(claim.template)
    arities = [(name, len(qubits)) for name, qubits in claim.metavariables]
    instances = []
    spaces = [tuple("01+") for _ in range(sum(a for _, a in arities))]
    for chars in itertools.product(*spaces):
        mapping = {}
        pos = 0
        labels = []
        for (name, qubits), (_, arity) in zip(claim.metavariables, arities):
            picked = "".join(chars[pos:pos + arity])
            pos += arity
            mapping[name] = ast.VecC(tuple(qubits), picked)
            labels.append(f"{name}={picked}")
        for b_index, branch in enumerate(branches):
            formula = substitute(rebuild(branch), mapping)
            witness = check_valid(env, formula)
            label = ", ".join(labels)
            if len(branches) > 1:
                if len(claim.branch_labels) == len(branches):
                    label += f" {claim.branch_labels[b_index]}"
                else:
                    label += f" branch {b_index + 1}"
            instances.append(InstanceResult(label, witness is None, witness))
    corroborations = []
    if rng is not None:
        for k in range(samples):
            mapping = {
                name: ast.RayF(tuple(qubits),
                               random_part_state(rng, len(qubits), real_only))
                for name, qubits in claim.metavariables}
            witness = check_valid(env, substitute(claim.template, mapping))
            corroborations.append(
                InstanceResult(f"random state {k + 1}", witness is None,
                               witness))
    return SchematicOutcome(tuple(instances), tuple(corroborations),
                            len(branches))
