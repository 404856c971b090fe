"""The Weil-Petersson pairing as a cellular cup product.

Two variation cocycles z1, z2 are paired by the trace form
B(X, Y) = trace(XY) against a cellular approximation of the diagonal
map of the surface.  On a face whose counterclockwise boundary reads
s_1 ... s_n (signed edges hat{s}_i = sigma_i e_i), a valid degree-(1,1)
diagonal chain is

    - sum_{i<j} hat{s}_j x hat{s}_i  -  sum_{sigma_i = -1} e_i x e_i,

together with corner terms that never meet a (1,1) pairing.  Any two
chains with the same restriction to the boundary pair identically
against closed cocycles (the closed face is contractible), so the
result is independent of the basepoint, the transport paths, and the
interior filling; the tests exercise that freedom.

Orientation bookkeeping: boundary arcs ``b{k}1`` enter the diagonal
chains with reversed orientation throughout (one global convention for
all faces), which is what localizes the pairing on the annuli: the two
squares of curve i contribute exactly (dtau_i ^ dl_i) and each pants'
hexagons plus its two bigon corrections contribute zero.

The bigon corrections are the self-terms +b10 x b10 - b11 x b11 along
one boundary circle of each pants; their pairings cancel exactly and
they are kept as explicit terms rather than omitted.
"""

import math
from dataclasses import dataclass

from .mat2 import ad_action
from .surface import CellComplex, build_complex, holonomy

__all__ = [
    "killing_form",
    "DiagonalTerm",
    "FaceChain",
    "diagonal_chain",
    "pants_bigon_chain",
    "pair_chain",
    "pair_on_face",
    "wp_pairing",
    "wolpert_reference",
    "wp_matrix",
]

# boundary arcs b{k}1 are carried with reversed orientation in every
# diagonal chain
_REVERSED_KINDS = frozenset({"arc1"})


def killing_form(x, y):
    """trace(XY) = 2 x_X x_Y + y_X z_Y + z_X y_Y on traceless matrices."""
    return 2.0 * x.x * y.x + x.y * y.z + x.z * y.y


@dataclass(frozen=True)
class DiagonalTerm:
    """One product cell e' x e'' of a diagonal chain.

    ``first``/``second`` are (edge id, +1/-1) giving the edge with the
    orientation the chain carries it in; ``path_first``/``path_second``
    run from the start vertex of that oriented edge to the face
    basepoint along the face boundary."""

    sign: int
    first: tuple
    second: tuple
    path_first: tuple
    path_second: tuple


@dataclass(frozen=True)
class FaceChain:
    """Degree-(1,1) part of a diagonal chain on one face."""

    face_id: str
    basepoint: str
    terms: tuple


def _oriented_cycle(complex_, fid, start):
    """The face cycle rewritten in the chain orientations, rotated to
    begin at position ``start``: a list of ((edge id, orientation),
    exponent) pairs, where the oriented edge is the generator the chain
    uses and the exponent is how the rotated cycle traverses it."""
    cycle = complex_.faces[fid].cycle
    n = len(cycle)
    out = []
    for i in range(n):
        eid, sign = cycle[(start + i) % n]
        orient = -1 if complex_.edges[eid].kind in _REVERSED_KINDS else 1
        out.append(((eid, orient), sign * orient))
    return out


def diagonal_chain(complex_, fid, start=0):
    """Diagonal chain of the face, based at the vertex where the
    (rotated) boundary cycle begins.

    ``start`` rotates the boundary cycle; all rotations pair
    identically against closed cocycles."""
    if fid not in complex_.faces:
        raise KeyError(f"unknown face {fid!r}")
    cycle = complex_.faces[fid].cycle
    n = len(cycle)
    rotated = tuple(cycle[(start + i) % n] for i in range(n))
    gens = _oriented_cycle(complex_, fid, start)

    first_eid, first_sign = rotated[0]
    edge0 = complex_.edges[first_eid]
    basepoint = edge0.start if first_sign > 0 else edge0.end

    # path from the basepoint to the start of generator i (prefix of the
    # rotated cycle; one step longer when the cycle runs the generator
    # backwards), stored reversed so it ends at the basepoint
    paths = []
    for i, (_, exponent) in enumerate(gens):
        upto = i if exponent > 0 else i + 1
        back = tuple((eid, -sign) for eid, sign in reversed(rotated[:upto]))
        paths.append(back)

    terms = []
    for j in range(n):
        gen_j, exp_j = gens[j]
        for i in range(j):
            gen_i, exp_i = gens[i]
            terms.append(
                DiagonalTerm(-exp_i * exp_j, gen_j, gen_i, paths[j], paths[i])
            )
        if exp_j < 0:
            terms.append(DiagonalTerm(-1, gen_j, gen_j, paths[j], paths[j]))
    return FaceChain(fid, basepoint, tuple(terms))


def pants_bigon_chain(complex_, pid):
    """The two bigon correction terms of a pants, along its boundary
    circle 1: +b10 x b10 and -b11 x b11.  Their contributions are
    (1/8) dl1 dl1 with opposite signs and cancel exactly."""
    b10 = f"p{pid}.b10"
    b11 = f"p{pid}.b11"
    back = ((b10, -1),)
    return FaceChain(
        f"p{pid}.bigons",
        complex_.edges[b10].start,
        (
            DiagonalTerm(1, (b10, 1), (b10, 1), (), ()),
            DiagonalTerm(-1, (b11, 1), (b11, 1), back, back),
        ),
    )


def _transported(cocycle, variation, oriented_edge, path):
    """The variation value on the oriented edge, moved to the basepoint
    along ``path`` (which runs start-of-edge -> basepoint)."""
    eid, orient = oriented_edge
    z = variation.value(eid, orient)
    if path:
        move = holonomy(cocycle, path).rep.inv()
        z = ad_action(move, z)
    return z


# The raw cup-product sum reproduces wedge products in the averaged
# convention (a^b = (a@b - b@a)/2); this factor converts to the
# determinant convention used by wolpert_reference, under which the
# pairing of the dtau_i and dl_i directions is exactly 1.
PAIRING_NORMALIZATION = 2.0


def pair_chain(cocycle, z1, z2, chain):
    """Pair two variation cocycles against one face chain."""
    total = []
    for term in chain.terms:
        a = _transported(cocycle, z1, term.first, term.path_first)
        b = _transported(cocycle, z2, term.second, term.path_second)
        total.append(term.sign * killing_form(a, b))
    return PAIRING_NORMALIZATION * math.fsum(total)


def pair_on_face(cocycle, z1, z2, fid, start=0):
    return pair_chain(cocycle, z1, z2, diagonal_chain(cocycle.complex, fid, start))


def wp_pairing(cocycle, z1, z2):
    """The Weil-Petersson pairing of two variation cocycles: the sum of
    all face contributions, in a fixed face order.

    The face chains already assemble into a diagonal cycle, so the bigon
    corrections of :func:`pants_bigon_chain` are not part of the sum
    (their two terms cancel identically on variation cocycles)."""
    parts = []
    for fid in sorted(cocycle.complex.faces):
        parts.append(pair_on_face(cocycle, z1, z2, fid))
    return math.fsum(parts)


def wolpert_reference(u, v):
    """sum_i (dtau_i(u) dl_i(v) - dl_i(u) dtau_i(v)), the twist-length
    expression the pairing must reproduce."""
    curves = set(u.dl) | set(u.dtau) | set(v.dl) | set(v.dtau)
    return math.fsum(
        u.dtau.get(c, 0.0) * v.dl.get(c, 0.0) - u.dl.get(c, 0.0) * v.dtau.get(c, 0.0)
        for c in curves
    )


def wp_matrix(spec, fn):
    """The pairing matrix over the coordinate directions, ordered as all
    length directions then all twist directions (curves sorted by id).

    Returns (labels, matrix) with matrix[i][j] the pairing of direction
    i against direction j; the exact value is the block form with
    matrix[dl_i][dtau_i] = -1 and matrix[dtau_i][dl_i] = +1."""
    from .variation import TangentVector, variation_cocycle

    complex_ = spec if isinstance(spec, CellComplex) else build_complex(spec)
    curves = sorted((c.id for c in complex_.spec.curves), key=str)
    labels = [f"dl[{c}]" for c in curves] + [f"dtau[{c}]" for c in curves]
    basis = [TangentVector({c: 1.0}, {}) for c in curves] + [
        TangentVector({}, {c: 1.0}) for c in curves
    ]
    cocycles = [variation_cocycle(complex_, fn, v) for v in basis]
    base = cocycles[0].base
    matrix = [
        [wp_pairing(base, zi, zj) for zj in cocycles] for zi in cocycles
    ]
    return labels, matrix
