"""Fixed points of the map and their local stability.

Fixed points solve the cubic gamma*z^3 + delta*z^2 - alpha*z - beta = 0.
Roots come from the companion-matrix eigenvalues (numpy.roots) and are
then polished with a few Newton steps on the cubic; the closed-form
radical expressions are kept out of the production path because their
cube-root branch choices are numerically fragile (tests use them as an
independent oracle instead).

For the exactly reducible parameter patterns the map collapses to
z -> a/z, whose fixed points are the two square roots of a; the third
cubic root is the cancelled 0/0 point and is not a fixed point of the
map, so the solver returns two records in that regime.
"""

from __future__ import annotations

import cmath
import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConditioningWarning, DegenerateMap, NotAFixedPoint, WrongTag
from .plane_map import (
    MapParams,
    SpecialCase,
    SpecialCaseTag,
    raw_derivative,
    raw_step,
)

#: |discriminant| of the monic cubic below which roots are treated as near-multiple.
NEAR_MULTIPLE_DISC = 1e-12


class Stability(enum.Enum):
    SINK = "sink"
    SOURCE = "source"
    NON_HYPERBOLIC = "non-hyperbolic"


@dataclass(frozen=True)
class FixedPointRecord:
    """One fixed point with its multiplier and stability class.

    ``multiplier_abs`` is |f'(z_bar)|; the trichotomy is sink (< 1),
    source (> 1) or non-hyperbolic (within class_tol of 1).
    ``residual`` is |f(z_bar) - z_bar| after polishing.
    """

    z_bar: complex
    multiplier_abs: float
    stability: Stability
    residual: float
    index: int
    class_tol: float = 1e-9
    near_multiple: bool = False

    def to_json(self):
        return {
            "z_bar": {"re": self.z_bar.real, "im": self.z_bar.imag},
            "multiplier_abs": self.multiplier_abs,
            "stability": self.stability.value,
            "residual": self.residual,
            "index": self.index,
            "class_tol": self.class_tol,
            "near_multiple": self.near_multiple,
        }


def cubic_coefficients(params: MapParams) -> list[complex]:
    """Coefficients [c3, c2, c1, c0] of the fixed-point cubic."""
    return [params.gamma, params.delta, -params.alpha, -params.beta]


def _cubic_value(coeffs, z):
    c3, c2, c1, c0 = coeffs
    return ((c3 * z + c2) * z + c1) * z + c0


def _newton_polish(coeffs, z: complex, steps: int = 3) -> complex:
    c3, c2, c1, _ = coeffs
    for _ in range(steps):
        p = _cubic_value(coeffs, z)
        dp = (3 * c3 * z + 2 * c2) * z + c1
        if dp == 0:
            break
        z = z - p / dp
    return z


def _monic_discriminant(coeffs) -> float:
    c3, c2, c1, c0 = coeffs
    p, q, r = c2 / c3, c1 / c3, c0 / c3
    disc = (
        18 * p * q * r
        - 4 * p**3 * r
        + p**2 * q**2
        - 4 * q**3
        - 27 * r**2
    )
    return abs(disc)


def _classify(mult_abs: float, class_tol: float) -> Stability:
    if mult_abs < 1.0 - class_tol:
        return Stability.SINK
    if mult_abs > 1.0 + class_tol:
        return Stability.SOURCE
    return Stability.NON_HYPERBOLIC


def _record(params, z_bar, index, class_tol, near_multiple=False) -> FixedPointRecord:
    image = raw_step(params, z_bar)
    residual = math.inf if image is None else abs(image - z_bar)
    mult = abs(raw_derivative(params, z_bar))
    return FixedPointRecord(
        z_bar=z_bar,
        multiplier_abs=mult,
        stability=_classify(mult, class_tol),
        residual=residual,
        index=index,
        class_tol=class_tol,
        near_multiple=near_multiple,
    )


def _sorted_records(params, roots, class_tol, near_multiple=False):
    roots = sorted(roots, key=lambda z: (z.real, z.imag))
    return [
        _record(params, z, i + 1, class_tol, near_multiple)
        for i, z in enumerate(roots)
    ]


def fixed_points(params: MapParams, class_tol: float = 1e-9) -> list[FixedPointRecord]:
    """All fixed points of the map, sorted by (re, im).

    Generic parameters give the three cubic roots; exactly reduced
    parameter patterns give the two fixed points of z -> a/z.  A cubic
    whose discriminant magnitude falls below NEAR_MULTIPLE_DISC raises a
    ConditioningWarning and marks every record ``near_multiple``.
    """
    if params.gamma == 0:
        raise DegenerateMap("fixed points require gamma != 0")
    if params.reduction is not None:
        root = cmath.sqrt(params.reduction)
        pair = [root, -root] if root != 0 else [root]
        return _sorted_records(params, pair, class_tol)
    coeffs = cubic_coefficients(params)
    raw_roots = np.roots(coeffs)
    polished = []
    for z in raw_roots:
        z = _newton_polish(coeffs, complex(z))
        if z * (params.gamma * z + params.delta) == 0:
            # beta = 0 degenerates the cubic: z = 0 is a root but a pole of
            # the map, not a fixed point.
            warnings.warn(
                "dropped cubic root at a pole of the map (degenerate beta = 0 root)",
                ConditioningWarning,
                stacklevel=2,
            )
            continue
        polished.append(z)
    disc = _monic_discriminant(coeffs)
    near = disc < NEAR_MULTIPLE_DISC
    if near:
        warnings.warn(
            f"fixed-point cubic has near-multiple roots (|disc| = {disc:.3e})",
            ConditioningWarning,
            stacklevel=2,
        )
    return _sorted_records(params, polished, class_tol, near_multiple=near)


def classify_stability(
    params: MapParams, z_bar: complex, class_tol: float = 1e-9
) -> FixedPointRecord:
    """Polish a claimed fixed point and classify its stability.

    Raises NotAFixedPoint when |f(z_bar) - z_bar| >= 1e-6 * (1 + |z_bar|).
    The returned record's index matches the sorted output of
    ``fixed_points`` when the point is one of them (0 otherwise).
    """
    z_bar = complex(z_bar)
    image = raw_step(params, z_bar)
    scale = 1.0 + abs(z_bar)
    if image is None or abs(image - z_bar) >= 1e-6 * scale:
        got = "infinity" if image is None else f"{abs(image - z_bar):.3e}"
        raise NotAFixedPoint(
            f"residual {got} at z = {z_bar!r} exceeds 1e-6 * (1 + |z|)"
        )
    if params.reduction is not None:
        # One Newton step on z^2 - a polishes the reduced fixed point.
        for _ in range(2):
            z_bar = z_bar - (z_bar * z_bar - params.reduction) / (2 * z_bar)
    else:
        z_bar = _newton_polish(cubic_coefficients(params), z_bar)
    index = 0
    for rec in fixed_points(params, class_tol):
        if abs(rec.z_bar - z_bar) < 1e-6 * scale:
            index = rec.index
            break
    rec = _record(params, z_bar, index, class_tol)
    return rec


def special_case_fixed_points(
    params: MapParams, tag: SpecialCaseTag, class_tol: float = 1e-9
) -> list[FixedPointRecord]:
    """Closed-form fixed points for the reducible special patterns.

    alpha=beta, gamma=delta: the pair +/- sqrt(alpha/gamma), multiplier 1.
    gamma=alpha, delta=beta: exactly +/- 1, multiplier 1.
    gamma=beta, delta=alpha: z = 1 with |f'(1)| = |2 beta/(alpha+beta)|,
    plus the quadratic pair [-(alpha+beta) +/- sqrt(alpha^2 + 2 alpha beta
    - 3 beta^2)]/(2 beta) whose multiplier is |-2 - alpha/beta|.

    There is no closed form for alpha=-beta (use the general solver).
    """
    a, b = params.alpha, params.beta
    case = tag.case
    if case is SpecialCase.ALPHA_EQ_BETA:
        root = cmath.sqrt(a / params.gamma)
        points = [(z, 1.0) for z in (root, -root)]
    elif case is SpecialCase.PARAMS_MIRRORED:
        points = [(1 + 0j, 1.0), (-1 + 0j, 1.0)]
    elif case is SpecialCase.PARAMS_SWAPPED:
        disc = cmath.sqrt(a * a + 2 * a * b - 3 * b * b)
        mult_one = abs(2 * b / (a + b))
        mult_pair = abs(-2 - a / b)
        points = [
            (1 + 0j, mult_one),
            ((-(a + b) + disc) / (2 * b), mult_pair),
            ((-(a + b) - disc) / (2 * b), mult_pair),
        ]
    else:
        raise WrongTag(
            f"no closed-form fixed points for special case {case.name}"
        )
    points.sort(key=lambda zm: (zm[0].real, zm[0].imag))
    records = []
    for i, (z, mult) in enumerate(points):
        image = raw_step(params, z)
        residual = math.inf if image is None else abs(image - z)
        records.append(
            FixedPointRecord(
                z_bar=z,
                multiplier_abs=mult,
                stability=_classify(mult, class_tol),
                residual=residual,
                index=i + 1,
                class_tol=class_tol,
            )
        )
    return records
