"""Quantum frames over exact scalars.

A frame fixes a register of n qubits (dimension 2^n).  States are rays:
nonzero amplitude vectors identified up to a scalar.  Properties that can
be tested by measurement are subspaces; actions are finite unions of
partial linear maps.  Qubit 1 occupies the most significant bit of a
basis index, so |b1 b2 ... bn> sits at index b1*2^(n-1) + ... + bn.

Everything here is exact: subspace identity goes through canonical RREF
bases, projectors through Gram-matrix inversion, and separability through
integer ranks of reshaped amplitude matrices.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .linalg import (
    GaussianRational,
    Matrix,
    ONE,
    ZERO,
    gr,
    parse_rational,
)


class BadIndex(ValueError):
    """A qubit index is out of range or repeated."""


class Ray:
    """A nonzero amplitude vector up to scalar multiples.

    Equality and hashing use the canonical representative whose first
    nonzero amplitude is 1.
    """

    __slots__ = ("amps", "_canon")

    def __init__(self, amps: Iterable):
        amps = tuple(GaussianRational.of(a) for a in amps)
        if all(a.is_zero() for a in amps):
            raise ValueError("a ray needs a nonzero amplitude vector")
        self.amps = amps
        lead = next(a for a in amps if not a.is_zero())
        self._canon = tuple(a / lead for a in amps)

    @property
    def dim(self) -> int:
        return len(self.amps)

    def canonical(self) -> tuple:
        return self._canon

    def inner(self, other: "Ray") -> GaussianRational:
        """<self|other> with conjugation on the left argument."""
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        acc = ZERO
        for a, b in zip(self.amps, other.amps):
            if not (a.is_zero() or b.is_zero()):
                acc = acc + a.conj() * b
        return acc

    def is_orthogonal(self, other: "Ray") -> bool:
        return self.inner(other).is_zero()

    def __eq__(self, other):
        if not isinstance(other, Ray):
            return NotImplemented
        return self._canon == other._canon

    def __hash__(self):
        return hash(self._canon)

    def __str__(self):
        return "(" + ", ".join(str(a) for a in self._canon) + ")"

    def __repr__(self):
        return f"Ray{self.__str__()}"


class Subspace:
    """A linear subspace, held as a canonical RREF basis (one row per dimension)."""

    __slots__ = ("basis", "ambient", "_projector")

    def __init__(self, basis: Matrix, ambient: int, _canonical: bool = False):
        if basis.cols != ambient:
            raise ValueError("basis width differs from ambient dimension")
        if not _canonical:
            basis = basis.row_basis()
        self.basis = basis
        self.ambient = ambient
        self._projector = None

    @staticmethod
    def from_rows(rows: Iterable[Sequence], ambient: int) -> "Subspace":
        rows = list(rows)
        if not rows:
            return Subspace.zero(ambient)
        return Subspace(Matrix(rows, cols=ambient), ambient)

    @staticmethod
    def zero(ambient: int) -> "Subspace":
        return Subspace(Matrix([], cols=ambient), ambient, _canonical=True)

    @staticmethod
    def full(ambient: int) -> "Subspace":
        return Subspace(Matrix.identity(ambient), ambient, _canonical=True)

    @staticmethod
    def of_ray(ray: Ray) -> "Subspace":
        return Subspace(Matrix([list(ray.canonical())]), ray.dim)

    @property
    def dim(self) -> int:
        return self.basis.rows

    def is_zero(self) -> bool:
        return self.basis.rows == 0

    def is_full(self) -> bool:
        return self.basis.rows == self.ambient

    def contains_vector(self, vec: Sequence) -> bool:
        v = [GaussianRational.of(x) for x in vec]
        if all(x.is_zero() for x in v):
            return True
        stacked = Matrix.vstack([self.basis, Matrix([v], cols=self.ambient)]) \
            if self.basis.rows else Matrix([v], cols=self.ambient)
        return stacked.rank() == self.dim

    def contains_ray(self, ray: Ray) -> bool:
        return self.contains_vector(ray.amps)

    def contains_subspace(self, other: "Subspace") -> bool:
        if other.is_zero():
            return True
        if self.is_zero():
            return False
        stacked = Matrix.vstack([self.basis, other.basis])
        return stacked.rank() == self.dim

    def join(self, other: "Subspace") -> "Subspace":
        self._same_ambient(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        return Subspace(Matrix.vstack([self.basis, other.basis]), self.ambient)

    def ortho(self) -> "Subspace":
        """Orthocomplement under the conjugate-linear inner product."""
        if self.is_zero():
            return Subspace.full(self.ambient)
        return Subspace(self.basis.conj().kernel_basis(), self.ambient, _canonical=True)

    def meet(self, other: "Subspace") -> "Subspace":
        self._same_ambient(other)
        return self.ortho().join(other.ortho()).ortho()

    def projector(self) -> Matrix:
        """Orthogonal projector onto the subspace, as an exact matrix."""
        if self._projector is None:
            if self.is_zero():
                self._projector = Matrix.zeros(self.ambient, self.ambient)
            else:
                b = self.basis
                gram = b.conj() * b.transpose()
                self._projector = b.transpose() * gram.inverse() * b.conj()
        return self._projector

    def any_ray(self) -> Ray:
        if self.is_zero():
            raise ValueError("the zero subspace has no rays")
        return Ray(self.basis.row(0))

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"

    def _same_ambient(self, other: "Subspace"):
        if self.ambient != other.ambient:
            raise ValueError("ambient dimensions differ")


class PartialMap:
    """A linear map acting on rays; undefined where it sends a vector to 0."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: Matrix):
        if matrix.rows != matrix.cols:
            raise ValueError("maps must be square")
        self.matrix = matrix

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def apply_ray(self, ray: Ray) -> Optional[Ray]:
        out = self.matrix.apply(ray.amps)
        if all(a.is_zero() for a in out):
            return None
        return Ray(out)

    def adjoint(self) -> "PartialMap":
        return PartialMap(self.matrix.conj_transpose())

    def then(self, other: "PartialMap") -> "PartialMap":
        """self followed by other (matrix other * self)."""
        return PartialMap(other.matrix * self.matrix)

    def kernel(self) -> Subspace:
        return Subspace(self.matrix.kernel_basis(), self.dim, _canonical=True)

    def image_of(self, sub: Subspace) -> Subspace:
        """Span of the pointwise image of a subspace."""
        rows = [self.matrix.apply(sub.basis.row(i)) for i in range(sub.dim)]
        rows = [r for r in rows if any(not a.is_zero() for a in r)]
        return Subspace.from_rows(rows, self.dim)

    def preimage_closed(self, sub: Subspace) -> Subspace:
        """{x : M x lands in sub (possibly at zero)} = ker(P_perp * M)."""
        perp = sub.ortho()
        if perp.is_zero():
            return Subspace.full(self.dim)
        reduced = perp.projector() * self.matrix
        return Subspace(reduced.kernel_basis(), self.dim, _canonical=True)

    def is_local(self, frame: "Frame", qubits: frozenset) -> bool:
        """True iff the map factors as (something on qubits) tensor identity."""
        inside = sorted(qubits)
        outside = [q for q in range(1, frame.n + 1) if q not in qubits]
        k = len(inside)
        m = self.matrix
        ref: dict[tuple, GaussianRational] = {}
        for r in range(frame.dim):
            a_out = tuple(frame.bit(r, q) for q in outside)
            a_in = tuple(frame.bit(r, q) for q in inside)
            for c in range(frame.dim):
                b_out = tuple(frame.bit(c, q) for q in outside)
                b_in = tuple(frame.bit(c, q) for q in inside)
                val = m.entries[r][c]
                if a_out != b_out:
                    if not val.is_zero():
                        return False
                    continue
                key = (a_in, b_in)
                if key in ref and ref[key] != val:
                    return False
                ref.setdefault(key, val)
        # All diagonal-in-outside blocks agreed with a single k-qubit pattern.
        return len(ref) == (2 ** k) ** 2

    def __eq__(self, other):
        if not isinstance(other, PartialMap):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"PartialMap({self.dim}x{self.dim})"


class QAction:
    """A finite union of partial maps (a nondeterministic quantum action)."""

    __slots__ = ("branches",)

    def __init__(self, branches: Iterable[PartialMap]):
        self.branches = tuple(branches)
        if not self.branches:
            raise ValueError("an action needs at least one branch")

    @property
    def dim(self) -> int:
        return self.branches[0].dim

    def is_deterministic(self) -> bool:
        return len(self.branches) == 1

    def single(self) -> PartialMap:
        if not self.is_deterministic():
            raise ValueError("action has several branches")
        return self.branches[0]

    def then(self, other: "QAction") -> "QAction":
        return QAction([f.then(g) for f in self.branches for g in other.branches])

    def union(self, other: "QAction") -> "QAction":
        return QAction(self.branches + other.branches)

    def adjoint(self) -> "QAction":
        return QAction([f.adjoint() for f in self.branches])

    def __repr__(self):
        return f"QAction({len(self.branches)} branches, dim={self.dim})"


GATE_1Q = {
    "X": Matrix([[0, 1], [1, 0]]),
    "Z": Matrix([[1, 0], [0, -1]]),
    "H": Matrix([[1, 1], [1, -1]]),
}

LOCAL_STATES = {
    "0": (ONE, ZERO),
    "1": (ZERO, ONE),
    "+": (ONE, ONE),
    "-": (ONE, GaussianRational(-1)),
}


class Frame:
    """An n-qubit register with its gates and locality structure."""

    def __init__(self, n: int):
        if n < 1:
            raise BadIndex("a frame needs at least one qubit")
        self.n = n
        self.dim = 2 ** n
        self._gates: dict = {}

    # ----- index bookkeeping -------------------------------------------------

    def bit(self, index: int, qubit: int) -> int:
        return (index >> (self.n - qubit)) & 1

    def with_bit(self, index: int, qubit: int, value: int) -> int:
        mask = 1 << (self.n - qubit)
        return (index | mask) if value else (index & ~mask)

    def check_qubits(self, qubits: Iterable[int], distinct: bool = True) -> tuple:
        qs = tuple(qubits)
        for q in qs:
            if not 1 <= q <= self.n:
                raise BadIndex(f"qubit {q} outside 1..{self.n}")
        if distinct and len(set(qs)) != len(qs):
            raise BadIndex(f"repeated qubit in {qs}")
        return qs

    # ----- states ------------------------------------------------------------

    def basis_ray(self, index: int) -> Ray:
        return Ray([ONE if i == index else ZERO for i in range(self.dim)])

    def product_ray(self, chars: str) -> Ray:
        """Product state from one of 0 1 + - per qubit, e.g. '0+1'."""
        if len(chars) != self.n:
            raise ValueError(f"need {self.n} qubit symbols, got {chars!r}")
        amps = []
        for idx in range(self.dim):
            acc = ONE
            for q in range(1, self.n + 1):
                acc = acc * LOCAL_STATES[chars[q - 1]][self.bit(idx, q)]
                if acc.is_zero():
                    break
            amps.append(acc)
        return Ray(amps)

    def ray(self, amps: Iterable) -> Ray:
        r = Ray(amps)
        if r.dim != self.dim:
            raise ValueError("amplitude count differs from frame dimension")
        return r

    def local_lift(self, char: str, qubit: int) -> Subspace:
        """All states whose given qubit carries the named 1-qubit state."""
        self.check_qubits([qubit])
        a0, a1 = LOCAL_STATES[char]
        rows = []
        for rest in range(self.dim // 2):
            v = [ZERO] * self.dim
            low = rest & ((1 << (self.n - qubit)) - 1)
            high = rest >> (self.n - qubit)
            base = (high << (self.n - qubit + 1)) | low
            v[self.with_bit(base, qubit, 0)] = a0
            v[self.with_bit(base, qubit, 1)] = a1
            rows.append(v)
        return Subspace.from_rows(rows, self.dim)

    # ----- gates -------------------------------------------------------------

    def gate(self, kind: str, targets: Sequence[int]) -> PartialMap:
        key = (kind, tuple(targets))
        if key in self._gates:
            return self._gates[key]
        if kind in GATE_1Q:
            (q,) = self.check_qubits(targets)
            g = GATE_1Q[kind]
            entries = [[ZERO] * self.dim for _ in range(self.dim)]
            for c in range(self.dim):
                a = self.bit(c, q)
                for b in (0, 1):
                    val = g.entries[b][a]
                    if not val.is_zero():
                        entries[self.with_bit(c, q, b)][c] = val
            pm = PartialMap(Matrix(entries, cols=self.dim))
        elif kind == "CNOT":
            ctrl, tgt = self.check_qubits(targets)
            entries = [[ZERO] * self.dim for _ in range(self.dim)]
            for c in range(self.dim):
                r = c ^ (1 << (self.n - tgt)) if self.bit(c, ctrl) else c
                entries[r][c] = ONE
            pm = PartialMap(Matrix(entries, cols=self.dim))
        else:
            raise BadIndex(f"unknown gate {kind!r}")
        self._gates[key] = pm
        return pm

    # ----- locality ----------------------------------------------------------

    def split_index(self, index: int, inside: Sequence[int]) -> tuple[int, int]:
        """Index of the inside-qubit bits and of the remaining bits."""
        outside = [q for q in range(1, self.n + 1) if q not in inside]
        a = 0
        for q in inside:
            a = (a << 1) | self.bit(index, q)
        b = 0
        for q in outside:
            b = (b << 1) | self.bit(index, q)
        return a, b

    def merge_index(self, inside: Sequence[int], a: int, b: int) -> int:
        outside = [q for q in range(1, self.n + 1) if q not in inside]
        idx = 0
        for pos, q in enumerate(reversed(inside)):
            if (a >> pos) & 1:
                idx |= 1 << (self.n - q)
        for pos, q in enumerate(reversed(outside)):
            if (b >> pos) & 1:
                idx |= 1 << (self.n - q)
        return idx

    def reshape(self, amps: Sequence, qubits: Iterable[int]) -> Matrix:
        """Amplitudes as a 2^|I| x 2^(n-|I|) matrix, I-qubits indexing rows."""
        inside = sorted(self.check_qubits(qubits))
        rows_n = 2 ** len(inside)
        cols_n = self.dim // rows_n
        entries = [[ZERO] * cols_n for _ in range(rows_n)]
        for idx, amp in enumerate(amps):
            a, b = self.split_index(idx, inside)
            entries[a][b] = GaussianRational.of(amp)
        return Matrix(entries, cols=cols_n)

    def separability(self, ray: Ray, qubits: Iterable[int]
                     ) -> Optional[tuple[Ray, Ray]]:
        """(I-component, rest-component) when the ray splits; None otherwise.

        A state is I-separated exactly when its reshaped amplitude matrix
        has rank 1; the components are then the factors, unique as rays.
        """
        inside = sorted(self.check_qubits(qubits))
        if not inside or len(inside) == self.n:
            trivial = Ray([ONE])
            return (trivial, ray) if not inside else (ray, trivial)
        m = self.reshape(ray.amps, inside)
        if m.rank() != 1:
            return None
        r0, c0 = next((r, c) for r in range(m.rows) for c in range(m.cols)
                      if not m.entries[r][c].is_zero())
        return Ray(m.column(c0)), Ray(m.row(r0))

    def reachable(self, ray: Ray, qubits: Iterable[int]) -> Subspace:
        """States reachable from the ray by actions local to the given qubits.

        An I-local map turns the reshaped matrix M into G*M, so reachable
        states are exactly H_I tensor (row space of M).
        """
        inside = sorted(self.check_qubits(qubits))
        m = self.reshape(ray.amps, inside)
        rows = m.row_basis()
        vectors = []
        for a in range(2 ** len(inside)):
            for i in range(rows.rows):
                v = [ZERO] * self.dim
                for b in range(rows.cols):
                    val = rows.entries[i][b]
                    if not val.is_zero():
                        v[self.merge_index(inside, a, b)] = val
                vectors.append(v)
        return Subspace.from_rows(vectors, self.dim)

    def restrict_first(self, pm: PartialMap) -> Matrix:
        """The 2x2 map x -> P_W F(x tensor |0...0>) on the first qubit,

        where W is spanned by |0...0> and |10...0>.
        """
        if pm.dim != self.dim:
            raise ValueError("map dimension differs from frame")
        s = self.dim // 2
        m = pm.matrix
        return Matrix([[m.entries[0][0], m.entries[0][s]],
                       [m.entries[s][0], m.entries[s][s]]])

    def map_to_state(self, g: Matrix, i: int, j: int) -> Subspace:
        """States whose {i,j} component encodes the 2x2 map g.

        g's column a lists the image of basis state a; the encoded 2-qubit
        state puts amplitude g[beta][alpha] on |alpha>_i |beta>_j.  The
        result is that state tensored with everything on the other qubits,
        which is a subspace (empty when g = 0).
        """
        if g.shape != (2, 2):
            raise ValueError("need a 2x2 matrix")
        self.check_qubits([i, j])
        if g.is_zero():
            return Subspace.zero(self.dim)
        inside = sorted([i, j])
        rest_n = self.dim // 4
        rows = []
        for t in range(rest_n):
            v = [ZERO] * self.dim
            for alpha in (0, 1):
                for beta in (0, 1):
                    val = g.entries[beta][alpha]
                    if val.is_zero():
                        continue
                    a = 0
                    for q in inside:
                        a = (a << 1) | (alpha if q == i else beta)
                    v[self.merge_index(inside, a, t)] = val
            rows.append(v)
        return Subspace.from_rows(rows, self.dim)

    def state_lift(self, amps: Sequence, qubits: Iterable[int]) -> Subspace:
        """States whose I-component is the given part-state: part x H_rest.

        One amplitude per part basis index, the lowest-numbered qubit of I
        being the most significant bit, as everywhere else.
        """
        inside = sorted(self.check_qubits(qubits))
        part = [GaussianRational.of(a) for a in amps]
        if len(part) != 2 ** len(inside):
            raise ValueError("need one amplitude per part basis state")
        if all(a.is_zero() for a in part):
            return Subspace.zero(self.dim)
        rows = []
        for t in range(self.dim // len(part)):
            v = [ZERO] * self.dim
            for a, val in enumerate(part):
                if not val.is_zero():
                    v[self.merge_index(inside, a, t)] = val
            rows.append(v)
        return Subspace.from_rows(rows, self.dim)

    def product_form(self, sub: Subspace, qubits: Iterable[int]):
        """Recognize sub as x_I tensor V ("left") or V_I tensor y ("right").

        Returns ("left", Ray, Subspace), ("right", Subspace, Ray), or None.
        A nonzero subspace all of whose rays are I-separated always has one
        of the two forms: two elements differing in both factors would
        superpose to an entangled vector.
        """
        inside = sorted(self.check_qubits(qubits))
        if sub.is_zero():
            return None
        if not inside:
            return ("left", Ray([ONE]), sub)
        if len(inside) == self.n:
            if sub.dim == 1:
                return ("left", Ray(sub.basis.row(0)), Subspace.full(1))
            return ("right", sub, Ray([ONE]))
        splits = []
        for r in range(sub.dim):
            split = _rank_one_split(self.reshape(sub.basis.row(r), inside))
            if split is None:
                return None
            splits.append(split)
        part_rays = [Ray(col) for col, _ in splits]
        if all(p == part_rays[0] for p in part_rays):
            rest = Subspace.from_rows([row for _, row in splits],
                                      self.dim // 2 ** len(inside))
            return ("left", part_rays[0], rest)
        rest_rays = [Ray(row) for _, row in splits]
        if all(p == rest_rays[0] for p in rest_rays):
            part = Subspace.from_rows([col for col, _ in splits],
                                      2 ** len(inside))
            return ("right", part, rest_rays[0])
        return None

    def cylinder(self, sub: Subspace, qubits: Iterable[int]) -> Optional[Subspace]:
        """The I-part V when sub == V tensor H_rest; None if it is no cylinder."""
        inside = sorted(self.check_qubits(qubits))
        cols = []
        for r in range(sub.dim):
            m = self.reshape(sub.basis.row(r), inside)
            cols.extend(m.transpose().entries)
        part = Subspace.from_rows(cols, 2 ** len(inside))
        if part.dim * (self.dim // 2 ** len(inside)) != sub.dim:
            return None
        lifted = []
        for i in range(part.dim):
            for b in range(self.dim // 2 ** len(inside)):
                v = [ZERO] * self.dim
                for a in range(2 ** len(inside)):
                    val = part.basis.entries[i][a]
                    if not val.is_zero():
                        v[self.merge_index(inside, a, b)] = val
                lifted.append(v)
        if Subspace.from_rows(lifted, self.dim) == sub:
            return part
        return None

    def component_span(self, sub: Subspace, qubits: Iterable[int]) -> Subspace:
        """Span of the I-side factors of the subspace's vectors."""
        inside = sorted(self.check_qubits(qubits))
        cols = []
        for r in range(sub.dim):
            m = self.reshape(sub.basis.row(r), inside)
            cols.extend(m.transpose().entries)
        return Subspace.from_rows(cols, 2 ** len(inside))

    def __repr__(self):
        return f"Frame(n={self.n})"


def _rank_one_split(m: Matrix) -> Optional[tuple[list, list]]:
    """(column, row) with m = column x row as an outer product, else None."""
    pivot_pos = next(((r, c) for r in range(m.rows) for c in range(m.cols)
                      if not m.entries[r][c].is_zero()), None)
    if pivot_pos is None:
        return None
    r0, c0 = pivot_pos
    col = [m.entries[r][c0] for r in range(m.rows)]
    pivot = m.entries[r0][c0]
    row = [m.entries[r0][c] / pivot for c in range(m.cols)]
    for r in range(m.rows):
        for c in range(m.cols):
            if m.entries[r][c] != col[r] * row[c]:
                return None
    return col, row


# ----- state files ---------------------------------------------------------


def parse_state(text: str) -> tuple[int, Ray]:
    """Read the 'n=<k>' header plus 2^k lines of '<re> <im>' rationals."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("n="):
        raise ValueError("state file must start with 'n=<qubits>'")
    try:
        n = int(lines[0][2:])
    except ValueError as exc:
        raise ValueError("bad qubit count in state file") from exc
    if n < 1:
        raise ValueError("state file needs at least one qubit")
    want = 2 ** n
    body = lines[1:]
    if len(body) != want:
        raise ValueError(f"expected {want} amplitude lines, found {len(body)}")
    amps = []
    for ln in body:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"amplitude line needs '<re> <im>': {ln!r}")
        amps.append(GaussianRational(parse_rational(parts[0]), parse_rational(parts[1])))
    return n, Ray(amps)


def format_state(n: int, ray: Ray) -> str:
    lines = [f"n={n}"]
    for a in ray.amps:
        lines.append(f"{a.re} {a.im}")
    return "\n".join(lines) + "\n"
