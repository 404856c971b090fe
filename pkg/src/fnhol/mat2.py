"""Unimodular 2x2 real matrices, their projective classes, and upper
half-plane utilities.

Conventions used throughout the package:

* ``Mat2(a, b, c, d)`` is the matrix ``(a b; c d)`` with ``det = 1``.
* ``ProjMat2`` is the class ``{+M, -M}``; its canonical representative
  makes the first nonzero entry in reading order positive.
* ``TracelessMat2(x, y, z)`` is ``(x y; z -x)``, a tangent direction in
  the 2x2 traceless matrices.
* Matrices act on the upper half-plane by ``z -> (az+b)/(cz+d)``.
"""

import math

DET_TOL = 1e-12
# default relative tolerance for matrix comparisons
CMP_TOL = 1e-9
# margin above |trace| = 2 before an element counts as hyperbolic
HYPERBOLIC_MARGIN = 1e-12


class NonHyperbolicError(ValueError):
    """The element does not translate along an axis (|trace| <= 2)."""


class AxisLocationError(ValueError):
    """The requested axis data is degenerate (axis through infinity or
    meeting the imaginary axis)."""


class Mat2:
    """A real 2x2 matrix of determinant one."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d, check=True):
        self.a = float(a)
        self.b = float(b)
        self.c = float(c)
        self.d = float(d)
        if check:
            err = abs(self.det() - 1.0)
            if err > DET_TOL * max(1.0, self.norm()):
                raise ValueError(f"determinant {self.det()!r} is not 1")

    @staticmethod
    def identity():
        return Mat2(1.0, 0.0, 0.0, 1.0, check=False)

    @staticmethod
    def diagonal(h):
        """diag(h, 1/h) for h != 0."""
        if h == 0.0:
            raise ValueError("diagonal entry must be nonzero")
        return Mat2(h, 0.0, 0.0, 1.0 / h, check=False)

    @staticmethod
    def rotation_j():
        """The quarter turn (0 -1; 1 0)."""
        return Mat2(0.0, -1.0, 1.0, 0.0, check=False)

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def norm(self):
        """Max-entry norm."""
        return max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))

    def __matmul__(self, other):
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            check=False,
        )

    def __neg__(self):
        return Mat2(-self.a, -self.b, -self.c, -self.d, check=False)

    def inv(self):
        """Inverse via the adjugate; exact for det = 1."""
        return Mat2(self.d, -self.b, -self.c, self.a, check=False)

    def renormalized(self):
        """Rescale so the determinant is exactly 1 again.

        Used inside long products to stop determinant drift."""
        det = self.det()
        if det <= 0.0:
            raise ValueError(f"cannot renormalize matrix with det {det!r}")
        s = 1.0 / math.sqrt(det)
        return Mat2(self.a * s, self.b * s, self.c * s, self.d * s, check=False)

    def dist(self, other):
        return max(
            abs(self.a - other.a),
            abs(self.b - other.b),
            abs(self.c - other.c),
            abs(self.d - other.d),
        )

    def close_to(self, other, tol=CMP_TOL):
        return self.dist(other) <= tol * max(1.0, self.norm(), other.norm())

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __repr__(self):
        return f"Mat2({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"


class ProjMat2:
    """The pair {+M, -M} of a unimodular matrix, with a canonical sign.

    The representative stored in ``.rep`` has its first entry of
    significant size (in the order a, b, c, d) positive, which makes
    equality and serialization independent of the incoming sign.
    """

    __slots__ = ("rep",)

    def __init__(self, m):
        self.rep = _canonical_sign(m)

    @staticmethod
    def of(a, b, c, d):
        return ProjMat2(Mat2(a, b, c, d))

    @staticmethod
    def identity():
        return ProjMat2(Mat2.identity())

    @staticmethod
    def diagonal(h):
        return ProjMat2(Mat2.diagonal(h))

    @staticmethod
    def rotation_j():
        return ProjMat2(Mat2.rotation_j())

    def __matmul__(self, other):
        return ProjMat2(self.rep @ other.rep)

    def inv(self):
        return ProjMat2(self.rep.inv())

    def trace_abs(self):
        return abs(self.rep.trace())

    def dist(self, other):
        """Max-entry distance between the classes (minimum over signs)."""
        return min(self.rep.dist(other.rep), self.rep.dist(-other.rep))

    def close_to(self, other, tol=CMP_TOL):
        return self.dist(other) <= tol * max(1.0, self.rep.norm(), other.rep.norm())

    def __eq__(self, other):
        if not isinstance(other, ProjMat2):
            return NotImplemented
        return self.close_to(other)

    __hash__ = None

    def __repr__(self):
        m = self.rep
        return f"ProjMat2.of({m.a!r}, {m.b!r}, {m.c!r}, {m.d!r})"


def _canonical_sign(m):
    scale = m.norm()
    if scale == 0.0:
        raise ValueError("zero matrix has no projective class")
    for x in m.entries():
        if abs(x) > 1e-12 * scale:
            return -m if x < 0.0 else m
    return m


class TracelessMat2:
    """The traceless matrix (x y; z -x); values of variation cocycles."""

    __slots__ = ("x", "y", "z")

    def __init__(self, x, y, z):
        self.x = float(x)
        self.y = float(y)
        self.z = float(z)

    @staticmethod
    def zero():
        return TracelessMat2(0.0, 0.0, 0.0)

    @staticmethod
    def diag(x):
        """x * (1 0; 0 -1)."""
        return TracelessMat2(x, 0.0, 0.0)

    @staticmethod
    def offdiag(y):
        """y * (0 1; 1 0)."""
        return TracelessMat2(0.0, y, y)

    @staticmethod
    def from_entries(a, b, c, d):
        """Project a 2x2 matrix onto its traceless part."""
        x = 0.5 * (a - d)
        return TracelessMat2(x, b, c)

    def __add__(self, other):
        return TracelessMat2(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other):
        return TracelessMat2(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self):
        return TracelessMat2(-self.x, -self.y, -self.z)

    def scale(self, t):
        return TracelessMat2(t * self.x, t * self.y, t * self.z)

    def norm(self):
        return max(abs(self.x), abs(self.y), abs(self.z))

    def dist(self, other):
        return (self - other).norm()

    def entries(self):
        return (self.x, self.y, self.z, -self.x)

    def __repr__(self):
        return f"TracelessMat2({self.x!r}, {self.y!r}, {self.z!r})"


def ad_action(m, t):
    """Conjugation m @ t @ m^-1 of a traceless matrix; m may be Mat2 or
    ProjMat2 (the sign of m does not matter)."""
    if isinstance(m, ProjMat2):
        m = m.rep
    a, b, c, d = m.entries()
    x, y, z = t.x, t.y, t.z
    # (a b; c d) (x y; z -x) (d -b; -c a), using det = 1
    p = a * x + b * z
    q = a * y - b * x
    r = c * x + d * z
    s = c * y - d * x
    return TracelessMat2(p * d - q * c, -p * b + q * a, r * d - s * c)


def mobius(m, z):
    """Apply the half-plane action z -> (az+b)/(cz+d).

    The input must lie strictly in the upper half-plane."""
    if isinstance(m, ProjMat2):
        m = m.rep
    z = complex(z)
    if z.imag <= 0.0:
        raise ValueError(f"point {z!r} is not in the upper half-plane")
    return (m.a * z + m.b) / (m.c * z + m.d)


def fixed_points(conj, lam=None):
    """Fixed points on the real line of conj @ diag(lam, 1/lam) @ conj^-1.

    For lam > 1 the attracting fixed point is a/c and the repelling one
    is b/d, where conj = (a b; c d).  Raises if either axis endpoint is
    at infinity (c = 0 or d = 0)."""
    if lam is not None and lam <= 1.0:
        raise ValueError("expansion factor must exceed 1")
    m = conj.rep if isinstance(conj, ProjMat2) else conj
    scale = m.norm()
    if abs(m.c) <= 1e-12 * scale or abs(m.d) <= 1e-12 * scale:
        raise AxisLocationError("axis passes through infinity (c or d vanishes)")
    return (m.a / m.c, m.b / m.d)


def nearest_point_on_imaginary_axis(conj, lam=None):
    """Height R of the point R*i on the imaginary axis closest to the
    axis of conj @ diag(lam, 1/lam) @ conj^-1.

    Requires the two axes to be disjoint, i.e. ab/cd > 0; then
    R = sqrt(ab/cd)."""
    m = conj.rep if isinstance(conj, ProjMat2) else conj
    scale = m.norm()
    if abs(m.c) <= 1e-12 * scale or abs(m.d) <= 1e-12 * scale:
        raise AxisLocationError("axis passes through infinity (c or d vanishes)")
    ratio = (m.a * m.b) / (m.c * m.d)
    if ratio <= 0.0:
        raise AxisLocationError("axis meets the imaginary axis (ab/cd <= 0)")
    return math.sqrt(ratio)


def translation_length(m):
    """Translation length 2*log(lambda) of a hyperbolic class, where
    lambda = (|tr| + sqrt(tr^2 - 4))/2."""
    if isinstance(m, ProjMat2):
        t = m.trace_abs()
    else:
        t = abs(m.trace())
    if t <= 2.0 + HYPERBOLIC_MARGIN:
        raise NonHyperbolicError(f"|trace| = {t!r} is not above 2")
    lam = 0.5 * (t + math.sqrt(t * t - 4.0))
    return 2.0 * math.log(lam)


def axis_feet(m):
    """Real fixed points (attracting, repelling) of a hyperbolic class.

    Solves c t^2 + (d - a) t - b = 0 for the matrix itself, then orders
    the roots by the derivative of the action.  Raises when the axis
    passes through infinity (c = 0)."""
    rep = m.rep if isinstance(m, ProjMat2) else m
    if rep.trace() < 0.0:
        rep = -rep
    t = rep.trace()
    if t <= 2.0 + HYPERBOLIC_MARGIN:
        raise NonHyperbolicError(f"|trace| = {t!r} is not above 2")
    if abs(rep.c) <= 1e-12 * rep.norm():
        raise AxisLocationError("axis passes through infinity (c vanishes)")
    disc = math.sqrt(t * t - 4.0)
    r1 = (rep.a - rep.d + disc) / (2.0 * rep.c)
    r2 = (rep.a - rep.d - disc) / (2.0 * rep.c)
    # |derivative| = 1/(c t + d)^2; attracting where it is < 1
    if abs(rep.c * r1 + rep.d) >= abs(rep.c * r2 + rep.d):
        return (r1, r2)
    return (r2, r1)
