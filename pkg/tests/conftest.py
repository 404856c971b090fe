import math
import random

import pytest

from fnhol.mat2 import Mat2, ProjMat2
from fnhol.surface import Curve, FNPoint, SurfaceSpec, build_complex
from fnhol.variation import TangentVector


def genus2_spec():
    return SurfaceSpec(2, (0, 1), tuple(Curve(i, (0, i), (1, i)) for i in range(3)))


def genus3_spec():
    return SurfaceSpec(
        3,
        (0, 1, 2, 3),
        (
            Curve(0, (0, 0), (1, 0)),
            Curve(1, (0, 1), (1, 1)),
            Curve(2, (0, 2), (2, 0)),
            Curve(3, (1, 2), (3, 0)),
            Curve(4, (2, 1), (3, 1)),
            Curve(5, (2, 2), (3, 2)),
        ),
    )


def handle_spec():
    """Genus 2 with two self-glued pants joined by one curve."""
    return SurfaceSpec(
        2,
        (0, 1),
        (
            Curve(0, (0, 1), (0, 2)),
            Curve(1, (0, 0), (1, 0)),
            Curve(2, (1, 1), (1, 2)),
        ),
    )


@pytest.fixture(scope="session")
def genus2_complex():
    return build_complex(genus2_spec())


@pytest.fixture(scope="session")
def genus3_complex():
    return build_complex(genus3_spec())


def random_fn(rng, spec, lrange=(0.5, 5.0), trange=(-10.0, 10.0)):
    ids = [c.id for c in spec.curves]
    return FNPoint(
        {c: rng.uniform(*lrange) for c in ids},
        {c: rng.uniform(*trange) for c in ids},
    )


def random_tangent(rng, spec):
    ids = [c.id for c in spec.curves]
    return TangentVector(
        {c: rng.uniform(-1.0, 1.0) for c in ids},
        {c: rng.uniform(-1.0, 1.0) for c in ids},
    )


def random_projmat(rng, spread=2.0):
    """A random projective class with moderate entries."""
    while True:
        a, b, c, d = (rng.uniform(-spread, spread) for _ in range(4))
        det = a * d - b * c
        if det > 0.25:
            s = 1.0 / math.sqrt(det)
            return ProjMat2(Mat2(a * s, b * s, c * s, d * s, check=False))


def rng_for(name):
    return random.Random(name)
