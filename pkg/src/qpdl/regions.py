"""Ray-set algebra for the separation-free fragment.

A Region denotes a set of rays as a finite union of Terms, each the rays
of a positive subspace minus the rays of finitely many proper subspaces
of it.  The class is closed under complement, intersection, union, the
orthocomplement-style closure, and weakest preconditions of partial
linear maps, which is what makes validity decidable by an emptiness
check.

The emptiness verdict rests on the covering fact that a subspace over an
infinite field is never a finite union of proper subspaces, so a
normalised term with a nonzero positive part always contains a ray; a
small deterministic search produces one.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .frame import PartialMap, QAction, Ray, Subspace
from .linalg import ONE, ZERO


class WitnessSearchExhausted(RuntimeError):
    """The bounded witness search ran out of candidates (not expected)."""


def _subspace_key(sub: Subspace):
    return (sub.dim, tuple((x.re, x.im)
                           for row in sub.basis.entries for x in row))


class Term:
    """Rays of ``positive`` outside every subspace in ``negatives``.

    Normalised: every negative is a nonzero proper subspace of the
    positive part, so a Term is never empty.  Use ``make_term``.
    """

    __slots__ = ("positive", "negatives")

    def __init__(self, positive: Subspace, negatives: tuple):
        self.positive = positive
        self.negatives = negatives

    def contains_ray(self, ray: Ray) -> bool:
        if not self.positive.contains_ray(ray):
            return False
        return all(not b.contains_ray(ray) for b in self.negatives)

    def witness(self) -> Ray:
        """A ray of the term, found by a deterministic exact search.

        Single basis rows are tried first, then points on the moment
        curve sum_j t^j b_j; a linear functional vanishing on a proper
        subspace kills at most dim-1 of those points, so the bounded
        search always lands outside every negative.
        """
        basis = self.positive.basis
        k = basis.rows
        candidates = []
        for i in range(k):
            candidates.append(basis.row(i))
        limit = max(8, (k - 1) * len(self.negatives) + 2)
        for t in range(1, limit + 1):
            weight = ONE
            v = [ZERO] * basis.cols
            for j in range(k):
                row = basis.row(j)
                v = [acc + weight * x for acc, x in zip(v, row)]
                weight = weight * t
            candidates.append(tuple(v))
        for cand in candidates:
            if all(a.is_zero() for a in cand):
                continue
            ray = Ray(cand)
            if all(not b.contains_ray(ray) for b in self.negatives):
                return ray
        raise WitnessSearchExhausted(f"no witness among {len(candidates)} candidates")

    def __eq__(self, other):
        if not isinstance(other, Term):
            return NotImplemented
        return (self.positive == other.positive
                and set(self.negatives) == set(other.negatives))

    def __hash__(self):
        return hash((self.positive, frozenset(self.negatives)))

    def __repr__(self):
        return f"Term(dim={self.positive.dim}, minus={len(self.negatives)})"


def make_term(positive: Subspace, negatives: Iterable[Subspace]) -> Optional[Term]:
    """Normalise; None when the term denotes no ray."""
    if positive.is_zero():
        return None
    kept = []
    for b in negatives:
        cut = positive.meet(b)
        if cut.dim == positive.dim:
            return None
        if not cut.is_zero() and cut not in kept:
            kept.append(cut)
    # A negative inside another negative removes nothing extra.
    pruned = [b for b in kept
              if not any(o != b and o.contains_subspace(b) for o in kept)]
    pruned.sort(key=_subspace_key)
    return Term(positive, tuple(pruned))


class Region:
    """A finite union of normalised terms over a fixed ambient dimension."""

    __slots__ = ("ambient", "terms")

    def __init__(self, ambient: int, terms: Iterable[Term] = ()):
        self.ambient = ambient
        uniq = []
        for t in terms:
            if t is not None and t not in uniq:
                uniq.append(t)
        self.terms = tuple(uniq)

    @staticmethod
    def empty(ambient: int) -> "Region":
        return Region(ambient)

    @staticmethod
    def full(ambient: int) -> "Region":
        return Region(ambient, [make_term(Subspace.full(ambient), [])])

    @staticmethod
    def of_subspace(sub: Subspace) -> "Region":
        return Region(sub.ambient, [make_term(sub, [])])

    def is_empty(self) -> bool:
        return not self.terms

    def contains_ray(self, ray: Ray) -> bool:
        return any(t.contains_ray(ray) for t in self.terms)

    def union(self, other: "Region") -> "Region":
        self._same_ambient(other)
        return Region(self.ambient, self.terms + other.terms)

    def intersect(self, other: "Region") -> "Region":
        self._same_ambient(other)
        out = []
        for a in self.terms:
            for b in other.terms:
                pos = a.positive.meet(b.positive)
                out.append(make_term(pos, a.negatives + b.negatives))
        return Region(self.ambient, out)

    def complement(self) -> "Region":
        """De Morgan over the DNF; complement of a term is a small union."""
        result = Region.full(self.ambient)
        for t in self.terms:
            parts = [make_term(Subspace.full(self.ambient), [t.positive])]
            for b in t.negatives:
                parts.append(make_term(b, []))
            result = result.intersect(Region(self.ambient, parts))
        return result

    def closure(self) -> Subspace:
        """Least subspace containing the region (its biorthogonal closure).

        A normalised term spans its positive part, so this is the join of
        the positive parts.
        """
        acc = Subspace.zero(self.ambient)
        for t in self.terms:
            acc = acc.join(t.positive)
        return acc

    def ortho(self) -> Subspace:
        return self.closure().ortho()

    def witness(self) -> Optional[Ray]:
        if self.is_empty():
            return None
        return self.terms[0].witness()

    def contains_region(self, other: "Region") -> bool:
        return other.intersect(self.complement()).is_empty_rayset()

    def same_rayset(self, other: "Region") -> bool:
        return self.contains_region(other) and other.contains_region(self)

    def is_empty_rayset(self) -> bool:
        # Terms are normalised, so syntactic emptiness is semantic emptiness.
        return self.is_empty()

    def _same_ambient(self, other: "Region"):
        if self.ambient != other.ambient:
            raise ValueError("ambient dimensions differ")

    def __repr__(self):
        return f"Region(ambient={self.ambient}, terms={len(self.terms)})"


def emptiness(region: Region) -> Optional[Ray]:
    """None when the region has no rays, else a witness ray."""
    if region.is_empty():
        return None
    return region.witness()


def box(region: Region) -> Subspace:
    """[measurement]region: states orthogonal to every ray outside it."""
    return region.complement().closure().ortho()


def diamond(region: Region) -> Region:
    """States from which a measurement can land in the region."""
    return Region.of_subspace(box(region.complement()).ortho())


def sasaki_closure(region: Region) -> Subspace:
    """The double orthocomplement, i.e. closure of the ray set."""
    return region.closure()


def wp_map(pm: PartialMap, region: Region) -> Region:
    """[F]region for one partial map: kernel rays plus exact preimages.

    The preimage of a term (A minus Bs) is taken strictly: vectors sent
    into A but not into any B and not to zero; the kernel term restores
    the states where F is undefined.
    """
    kernel = pm.kernel()
    terms = [make_term(kernel, [])]
    for t in region.terms:
        pre_pos = pm.preimage_closed(t.positive)
        negs = [pm.preimage_closed(b) for b in t.negatives]
        negs.append(kernel)
        terms.append(make_term(pre_pos, negs))
    return Region(region.ambient, terms)


def wp(action: QAction, region: Region) -> Region:
    """[action]region: intersection of the branch preconditions."""
    result = None
    for pm in action.branches:
        part = wp_map(pm, region)
        result = part if result is None else result.intersect(part)
    return result
