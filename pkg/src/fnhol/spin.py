"""Determinant-one lifts of the normalized cocycle and the spin
structures they classify.

A lift assigns a genuine SL2 matrix to every edge so that each face
word multiplies to +I (never -I); trace signs of lifted holonomies are
then mod-2 rotation numbers of the corresponding loops.  On one pair of
pants the boundary trace signs eps_k always satisfy
eps_0 eps_1 eps_2 = -1, and under that constraint there is a unique
lift whose seam and b{k}0 arc values have positive (1,1) entry; it is
found here by exhausting the 2^6 sign assignments.

Globally, the free data beyond the per-pants lifts is one sign per
crossing edge pair.  Gauging by the per-pants transformations (-I on
all six vertices of one pants) lets the signs on a spanning tree of the
gluing graph be fixed to +1; the remaining g signs enumerate the 2^g
spin structures compatible with a given boundary-sign assignment.
"""

import itertools
import math

from .mat2 import Mat2, ProjMat2, NonHyperbolicError
from . import pants as pants_mod
from .surface import CellComplex, SurfaceCocycle, build_complex, pants_boundary_lengths

__all__ = [
    "SpinSignError",
    "BoundarySigns",
    "SpinSurfaceCocycle",
    "sl2_pants_cocycle",
    "assemble_spin",
    "enumerate_spin",
    "spanning_tree_curves",
    "apply_pants_gauge",
    "rot2",
    "sl2_holonomy",
]

_FACE_TOL = 1e-8


class SpinSignError(ValueError):
    """Sign data violates the per-pants constraint or the tree-curve
    normalization."""


class BoundarySigns:
    """Signs of the three boundary eigenvalues of one pants; their
    product must be -1."""

    __slots__ = ("eps",)

    def __init__(self, e0, e1, e2):
        self.eps = (int(e0), int(e1), int(e2))
        if any(e not in (-1, 1) for e in self.eps):
            raise SpinSignError(f"signs must be +-1, got {self.eps}")
        if self.eps[0] * self.eps[1] * self.eps[2] != -1:
            raise SpinSignError(f"boundary signs {self.eps} must multiply to -1")

    def __getitem__(self, k):
        return self.eps[k % 3]

    def __repr__(self):
        return f"BoundarySigns{self.eps!r}"


def _face_value(values, word):
    m = Mat2.identity()
    for edge, sign in word:
        rep = values[edge]
        m = m @ (rep if sign > 0 else rep.inv())
    return m


def _is_plus_identity(m, tol=_FACE_TOL):
    return m.dist(Mat2.identity()) <= tol * max(1.0, m.norm())


def sl2_pants_cocycle(lengths, signs):
    """The unique determinant-one lift of the normalized pants cocycle
    with the given boundary trace signs.

    Returns edge id -> Mat2.  Both hexagon words evaluate to +I; the
    seams and the b{k}0 arcs have positive (1,1) entry, and each
    boundary holonomy b{k}0 b{k}1 has trace of sign eps_k.  The sign
    assignment is located by brute force over the 64 possibilities and
    is checked to be unique."""
    if not isinstance(signs, BoundarySigns):
        signs = BoundarySigns(*signs)
    seams = [pants_mod.seam_matrix_sl2(lengths, k) for k in range(3)]
    arcs = [Mat2.diagonal(math.exp(0.25 * lengths[k])) for k in range(3)]

    solutions = []
    for seam_signs in itertools.product((1, -1), repeat=3):
        for arc_signs in itertools.product((1, -1), repeat=3):
            values = {}
            for k in range(3):
                values[f"seam{k}"] = seams[k] if seam_signs[k] > 0 else -seams[k]
                a0 = arcs[k] if arc_signs[k] > 0 else -arcs[k]
                values[f"b{k}0"] = a0
                values[f"b{k}1"] = a0 if signs[k] > 0 else -a0
            if not _is_plus_identity(_face_value(values, pants_mod.PANTS_FACES["hex+"])):
                continue
            if not _is_plus_identity(_face_value(values, pants_mod.PANTS_FACES["hex-"])):
                continue
            if any(values[f"seam{k}"].a <= 0.0 for k in range(3)):
                continue
            if any(values[f"b{k}0"].a <= 0.0 for k in range(3)):
                continue
            solutions.append(values)
    if len(solutions) != 1:
        raise AssertionError(
            f"expected a unique sign assignment, found {len(solutions)}"
        )
    return solutions[0]


def spanning_tree_curves(spec):
    """Curve ids of a spanning tree of the pants gluing multigraph,
    chosen greedily over curves sorted by id (union-find)."""
    parent = {p: p for p in spec.pants}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = []
    for c in sorted(spec.curves, key=lambda c: str(c.id)):
        a, b = find(c.left[0]), find(c.right[0])
        if a != b:
            parent[a] = b
            tree.append(c.id)
    return tuple(tree)


class SpinSurfaceCocycle:
    """A determinant-one cocycle (edge id -> Mat2) lifting the
    normalized cocycle, with its classifying sign data."""

    __slots__ = ("complex", "values", "eps", "crossing_signs")

    def __init__(self, complex_, values, eps, crossing_signs):
        self.complex = complex_
        self.values = dict(values)
        self.eps = dict(eps)
        self.crossing_signs = dict(crossing_signs)

    def face_residual(self, fid):
        """Distance of the face word from +I (not from -I)."""
        m = _face_value(self.values, self.complex.faces[fid].cycle)
        return m.dist(Mat2.identity())

    def max_face_residual(self):
        return max(self.face_residual(f) for f in self.complex.faces)

    def reduction(self):
        """Forget the signs: the underlying projective cocycle."""
        return SurfaceCocycle(
            self.complex, {e: ProjMat2(m) for e, m in self.values.items()}
        )


def _pants_sign_constraint(spec, eps):
    """Check eps: curve id -> +-1 multiplies to -1 around every pants
    (a curve glued to one pants twice contributes +1)."""
    for pid in spec.pants:
        sides = spec.sides_of_pants(pid)
        prod = 1
        for k in range(3):
            prod *= eps[sides[k]]
        if prod != -1:
            return False
    return True


def assemble_spin(spec, fn, eps, crossing_signs=None):
    """Assemble the determinant-one cocycle with boundary signs ``eps``
    (curve id -> +-1) and crossing-edge signs (curve id -> +-1,
    defaulting to +1, required to be +1 on the spanning tree).

    Crossing edges carry s_i (0, -1/T_i; T_i, 0) with T_i =
    exp(-twist_i/2) on side 0 and eps_i times that on side 1; all face
    words then evaluate to +I."""
    complex_ = spec if isinstance(spec, CellComplex) else build_complex(spec)
    spec = complex_.spec
    eps = {c.id: int(eps[c.id]) for c in spec.curves}
    if any(e not in (-1, 1) for e in eps.values()):
        raise SpinSignError("boundary signs must be +-1")
    if not _pants_sign_constraint(spec, eps):
        raise SpinSignError(
            "boundary signs must multiply to -1 around every pants"
        )
    crossing_signs = {
        c.id: int(crossing_signs.get(c.id, 1)) if crossing_signs else 1
        for c in spec.curves
    }
    if any(s not in (-1, 1) for s in crossing_signs.values()):
        raise SpinSignError("crossing signs must be +-1")
    for cid in spanning_tree_curves(spec):
        if crossing_signs[cid] != 1:
            raise SpinSignError(f"crossing sign on tree curve {cid} must be +1")

    values = {}
    for pid in spec.pants:
        sides = spec.sides_of_pants(pid)
        lengths = pants_boundary_lengths(complex_, fn, pid)
        triple = BoundarySigns(*(eps[sides[k]] for k in range(3)))
        for e, m in sl2_pants_cocycle(lengths, triple).items():
            values[f"p{pid}.{e}"] = m
    for c in spec.curves:
        t = math.exp(-0.5 * fn.twists[c.id])
        m = Mat2(0.0, -1.0 / t, t, 0.0, check=False)
        if crossing_signs[c.id] < 0:
            m = -m
        values[f"c{c.id}.x0"] = m
        values[f"c{c.id}.x1"] = m if eps[c.id] > 0 else -m
    out = SpinSurfaceCocycle(complex_, values, eps, crossing_signs)
    residual = out.max_face_residual()
    if residual > _FACE_TOL:
        raise SpinSignError(f"face word failed to lift to +I (residual {residual:g})")
    return out


def enumerate_spin(spec):
    """All boundary-sign assignments satisfying every pants constraint,
    and the crossing-sign classes (one per choice of sign on the g
    curves outside the spanning tree; tree curves are held at +1).

    Returns (eps assignments, crossing-sign classes), each a list of
    dicts over curve ids.  Every pair combines into a valid lift, so
    there are len(eps) * 2^g lifts in normal form."""
    if isinstance(spec, CellComplex):
        spec = spec.spec
    curve_ids = sorted((c.id for c in spec.curves), key=str)
    eps_assignments = []
    for combo in itertools.product((1, -1), repeat=len(curve_ids)):
        eps = dict(zip(curve_ids, combo))
        if _pants_sign_constraint(spec, eps):
            eps_assignments.append(eps)

    tree = set(spanning_tree_curves(spec))
    free = [c for c in curve_ids if c not in tree]
    classes = []
    for combo in itertools.product((1, -1), repeat=len(free)):
        signs = {c: 1 for c in curve_ids}
        signs.update(dict(zip(free, combo)))
        classes.append(signs)
    return eps_assignments, classes


def apply_pants_gauge(spec, pid, crossing_signs):
    """Crossing signs after gauging by -I on all vertices of one pants:
    curves meeting the pants once flip, a curve glued to it twice is
    fixed."""
    if isinstance(spec, CellComplex):
        spec = spec.spec
    out = dict(crossing_signs)
    for c in spec.curves:
        touches = (c.left[0] == pid) + (c.right[0] == pid)
        if touches == 1:
            out[c.id] = -out[c.id]
    return out


def sl2_holonomy(spin_cocycle, word):
    """Product of the determinant-one edge values along a composable
    word of (edge id, +-1)."""
    complex_ = spin_cocycle.complex
    m = Mat2.identity()
    at = None
    for eid, sign in word:
        edge = complex_.edges[eid]
        start, end = (edge.start, edge.end) if sign > 0 else (edge.end, edge.start)
        if at is not None and at != start:
            raise ValueError(f"word is not composable at {eid}")
        at = end
        rep = spin_cocycle.values[eid]
        m = m @ (rep if sign > 0 else rep.inv())
    return m.renormalized()


def rot2(spin_cocycle, loop):
    """Mod-2 rotation number of a loop with hyperbolic holonomy:
    0 when the lifted trace is positive, 1 when negative."""
    tr = sl2_holonomy(spin_cocycle, loop).trace()
    if abs(tr) <= 2.0 + 1e-12:
        raise NonHyperbolicError(f"loop holonomy trace {tr!r} is not hyperbolic")
    return 0 if tr > 0.0 else 1
