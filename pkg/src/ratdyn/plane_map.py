"""Extended complex plane and the rational map family (a*z + b)/(g*z^2 + d*z).

The map family is parameterised by four complex numbers (alpha, beta,
gamma, delta).  All dynamics in this package run on the one-point
compactification of the plane: infinity is a first-class value, and the
chordal (Riemann sphere) metric makes it an ordinary point.  Magnitudes
above ``OVERFLOW_LIMIT`` are promoted to infinity instead of drifting
into IEEE inf/NaN, which keeps the exact 0 <-> infinity exchange intact.
"""

from __future__ import annotations

import enum
import math
import re
import warnings
from dataclasses import dataclass, field

from .errors import DegenerateMap, IndeterminateValue, ParameterWarning, PoleDerivative

# Magnitude at which a finite value is promoted to the point at infinity.
OVERFLOW_LIMIT = 1e150


class ExtComplex:
    """A point of the extended complex plane: a finite complex or infinity.

    Finite values must have finite real and imaginary parts; NaN or
    component-wise IEEE infinities are rejected so overflow can never leak
    in silently.  The unique point at infinity is the module-level
    ``INFINITY`` constant.
    """

    __slots__ = ("_v",)

    def __init__(self, value: complex = 0j, imag: float | None = None):
        if imag is not None:
            value = complex(value, imag)
        else:
            value = complex(value)
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise ValueError(
                f"ExtComplex requires finite components, got {value!r}; "
                "use INFINITY for the point at infinity"
            )
        self._v = value

    @property
    def is_infinity(self) -> bool:
        return self._v is None

    @property
    def value(self) -> complex:
        """The finite complex value; raises for the point at infinity."""
        if self._v is None:
            raise ValueError("the point at infinity has no finite value")
        return self._v

    def __eq__(self, other):
        if isinstance(other, ExtComplex):
            return self._v == other._v
        if isinstance(other, (int, float, complex)):
            return self._v is not None and self._v == other
        return NotImplemented

    def __hash__(self):
        return hash(self._v)

    def __repr__(self):
        if self._v is None:
            return "INFINITY"
        return f"ExtComplex({self._v!r})"

    def to_json(self):
        """JSON form: {"re": ..., "im": ...} for finite values, "inf" otherwise."""
        if self._v is None:
            return "inf"
        return {"re": self._v.real, "im": self._v.imag}

    @classmethod
    def from_json(cls, obj) -> "ExtComplex":
        if obj == "inf":
            return INFINITY
        return cls(complex(obj["re"], obj["im"]))


def _make_infinity() -> ExtComplex:
    inf = object.__new__(ExtComplex)
    inf._v = None
    return inf


#: The unique point at infinity of the extended plane.
INFINITY: ExtComplex = _make_infinity()


def as_ext(z) -> ExtComplex:
    """Coerce a complex number (or ExtComplex) to ExtComplex."""
    if isinstance(z, ExtComplex):
        return z
    return ExtComplex(complex(z))


def _raw(z) -> complex | None:
    """Internal encoding: finite complex, or None for infinity."""
    if isinstance(z, ExtComplex):
        return z._v
    return complex(z)


def _wrap(z: complex | None) -> ExtComplex:
    return INFINITY if z is None else ExtComplex(z)


def chordal_raw(z: complex | None, w: complex | None) -> float:
    """Chordal distance on the raw encoding (None = infinity)."""
    if z is None:
        if w is None:
            return 0.0
        z, w = w, None
    if w is None:
        return 2.0 / math.hypot(1.0, abs(z))
    return 2.0 * abs(z - w) / (math.hypot(1.0, abs(z)) * math.hypot(1.0, abs(w)))


def chordal_distance(z, w) -> float:
    """Distance between two extended-plane points on the Riemann sphere.

    This is the chord length under stereographic projection onto the unit
    sphere, so it is bounded by 2, treats infinity as an ordinary point,
    and satisfies chordal_distance(z, INFINITY) -> 0 as |z| grows.
    """
    return chordal_raw(_raw(z), _raw(w))


class Comparison(enum.Enum):
    LT = "LT"
    EQ = "EQ"
    GT = "GT"


def _compare(x: float, y: float, eq_tol: float) -> Comparison:
    if abs(x - y) < eq_tol * max(x, y, 1e-300):
        return Comparison.EQ
    return Comparison.LT if x < y else Comparison.GT


@dataclass(frozen=True)
class ConditionSignature:
    """The three modulus comparisons governing the real-line criteria.

    ``cmp_ag`` compares |alpha| vs |gamma|, ``cmp_bd`` |beta| vs |delta|,
    and ``cmp_sum`` |alpha+beta| vs |gamma+delta|.  EQ is declared when the
    two moduli differ by less than ``eq_tol`` relative to the larger one.
    """

    cmp_ag: Comparison
    cmp_bd: Comparison
    cmp_sum: Comparison
    eq_tol: float
    moduli: dict = field(compare=False, default_factory=dict)

    def triple(self) -> tuple[str, str, str]:
        return (self.cmp_ag.value, self.cmp_bd.value, self.cmp_sum.value)

    def to_json(self):
        return {
            "cmp_ag": self.cmp_ag.value,
            "cmp_bd": self.cmp_bd.value,
            "cmp_sum": self.cmp_sum.value,
            "eq_tol": self.eq_tol,
            "moduli": dict(self.moduli),
        }


class SpecialCase(enum.Enum):
    """Recognised parameter restrictions and their algebraic reductions."""

    GENERAL = "general"
    ALPHA_EQ_BETA = "alpha=beta, gamma=delta"        # map reduces to (alpha/gamma)/z
    ALPHA_EQ_NEG_BETA = "alpha=-beta, gamma=delta"
    PARAMS_MIRRORED = "gamma=alpha, delta=beta"      # map reduces to 1/z
    PARAMS_SWAPPED = "gamma=beta, delta=alpha"


@dataclass(frozen=True)
class SpecialCaseTag:
    case: SpecialCase
    match_tol: float
    reduced_map: str | None = None

    def to_json(self):
        return {
            "case": self.case.name,
            "match_tol": self.match_tol,
            "reduced_map": self.reduced_map,
        }


def _close(a: complex, b: complex, tol: float) -> bool:
    return abs(a - b) <= tol * max(abs(a), abs(b), 1e-300)


@dataclass(frozen=True)
class MapParams:
    """The parameter quadruple of the map (alpha*z + beta)/(gamma*z^2 + delta*z).

    gamma must be nonzero unless ``allow_moebius`` is set; even then the
    dynamics operations refuse to run (the gamma = 0 Moebius family is out
    of scope), the flag only permits carrying such a quadruple around.
    beta = 0 is allowed but collapses the generic count of three fixed
    points, so it triggers a ParameterWarning.

    When the quadruple satisfies one of the exactly reducible patterns
    (alpha == beta and gamma == delta, or gamma == alpha and delta == beta)
    the common factor of numerator and denominator is cancelled once, here,
    and evaluation uses the reduced map z -> reduction/z.  That removes the
    0/0 point exactly instead of approximating it with limits.
    """

    alpha: complex
    beta: complex
    gamma: complex
    delta: complex
    allow_moebius: bool = False
    reduction: complex | None = field(init=False, default=None, compare=False)

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta"):
            v = complex(getattr(self, name))
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError(f"parameter {name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)
        if self.gamma == 0 and not self.allow_moebius:
            raise DegenerateMap(
                "gamma = 0 makes the map a Moebius map; pass allow_moebius=True "
                "to carry such parameters (dynamics still refuse to run)"
            )
        if self.beta == 0:
            warnings.warn(
                "beta = 0: z = 0 becomes a root of the fixed-point cubic but is "
                "a pole of the map; the generic count of three fixed points is lost",
                ParameterWarning,
                stacklevel=2,
            )
        # Exact reductions only: near-misses are genuinely different maps.
        if self.gamma != 0:
            if self.gamma == self.alpha and self.delta == self.beta:
                object.__setattr__(self, "reduction", 1 + 0j)
            elif self.alpha == self.beta and self.gamma == self.delta:
                object.__setattr__(self, "reduction", self.alpha / self.gamma)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_string(cls, text: str, allow_moebius: bool = False) -> "MapParams":
        """Parse "a,b,c,d" where each component uses the re+imi grammar."""
        parts = [p for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError(
                f"expected 4 comma-separated components, got {len(parts)}: {text!r}"
            )
        a, b, g, d = (parse_complex(p) for p in parts)
        return cls(a, b, g, d, allow_moebius=allow_moebius)

    def scaled(self, c: complex) -> "MapParams":
        """The same map with all four parameters multiplied by c (c != 0)."""
        if c == 0:
            raise ValueError("scaling factor must be nonzero")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ParameterWarning)
            return MapParams(
                c * self.alpha, c * self.beta, c * self.gamma, c * self.delta,
                allow_moebius=self.allow_moebius,
            )

    def to_json(self):
        return {
            "alpha": {"re": self.alpha.real, "im": self.alpha.imag},
            "beta": {"re": self.beta.real, "im": self.beta.imag},
            "gamma": {"re": self.gamma.real, "im": self.gamma.imag},
            "delta": {"re": self.delta.real, "im": self.delta.imag},
        }

    @classmethod
    def from_json(cls, obj) -> "MapParams":
        return cls(
            complex(obj["alpha"]["re"], obj["alpha"]["im"]),
            complex(obj["beta"]["re"], obj["beta"]["im"]),
            complex(obj["gamma"]["re"], obj["gamma"]["im"]),
            complex(obj["delta"]["re"], obj["delta"]["im"]),
        )

    def as_string(self) -> str:
        return ",".join(
            format_complex(v) for v in (self.alpha, self.beta, self.gamma, self.delta)
        )


# -- string grammar ----------------------------------------------------------

_FLOAT = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(
    rf"^\s*(?:(?P<re>{_FLOAT})(?P<im>[+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i?"
    rf"|(?P<imonly>{_FLOAT})i)\s*$"
)


def parse_complex(text: str) -> complex:
    """Parse one component in the "re+imi" grammar.

    Accepted forms: "1.5", "-0.3i", "0.92735+0.9174938i", "1.3e-6-6.2e-7i".
    """
    s = text.strip()
    m = _COMPLEX_RE.match(s)
    if not m:
        raise ValueError(f"cannot parse complex component {text!r}")
    if m.group("imonly") is not None:
        return complex(0.0, float(m.group("imonly")))
    re_part = float(m.group("re"))
    im_text = m.group("im")
    if im_text is None:
        # a trailing 'i' with no second number means the single number was imaginary
        if s.endswith("i"):
            return complex(0.0, re_part)
        return complex(re_part, 0.0)
    if not s.endswith("i"):
        raise ValueError(f"missing trailing 'i' on imaginary part: {text!r}")
    return complex(re_part, float(im_text))


def format_complex(z: complex, digits: int = 17) -> str:
    """Format a complex as "re+imi" with round-trip precision."""
    z = complex(z)
    re_s = format(z.real, f".{digits}g")
    im_s = format(z.imag, f".{digits}g")
    sign = "+" if not im_s.startswith("-") else ""
    return f"{re_s}{sign}{im_s}i"


# -- raw evaluation kernels (None encodes infinity) ---------------------------


def raw_step(params: MapParams, z: complex | None) -> complex | None:
    """One application of the map on the raw encoding.

    This is the allocation-free kernel the orbit engines run on; eval_map
    is the ExtComplex-typed wrapper.  Values with magnitude above
    OVERFLOW_LIMIT are treated as the point at infinity.
    """
    if params.gamma == 0:
        raise DegenerateMap("cannot iterate the gamma = 0 Moebius family")
    red = params.reduction
    if red is not None:
        if z is None:
            return 0j
        if z == 0:
            return None
        if abs(z) > OVERFLOW_LIMIT:
            return 0j
        w = red / z
        return None if abs(w) > OVERFLOW_LIMIT else w
    if z is None:
        return 0j
    if abs(z) > OVERFLOW_LIMIT:
        return 0j
    num = params.alpha * z + params.beta
    den = z * (params.gamma * z + params.delta)
    if den == 0:
        if num != 0:
            return None
        raise IndeterminateValue(
            f"0/0 at z = {z!r} and no algebraic reduction is known for these parameters"
        )
    w = num / den
    if not (math.isfinite(w.real) and math.isfinite(w.imag)) or abs(w) > OVERFLOW_LIMIT:
        # Overflow near a pole: the true dynamics pass through infinity.
        return None
    return w


def eval_map(params: MapParams, z) -> ExtComplex:
    """Evaluate the map at an extended-plane point.

    Poles (z = 0 and z = -delta/gamma) map to INFINITY, INFINITY maps to 0
    (the denominator degree exceeds the numerator's), and removable 0/0
    points of exactly reducible parameter patterns evaluate through the
    reduced map.
    """
    return _wrap(raw_step(params, _raw(z)))


def raw_derivative(params: MapParams, z: complex) -> complex:
    """f'(z) on the raw encoding; caller guarantees z is finite and not a pole."""
    red = params.reduction
    if red is not None:
        return -red / (z * z)
    a, b, g, d = params.alpha, params.beta, params.gamma, params.delta
    # Quotient rule with the numerator expanded once: the difference
    # a*(g z^2 + d z) - (a z + b)(2 g z + d) collapses to the quadratic
    # below, which evaluates without cancellation even for |z| ~ 1e6.
    num = -(a * g * z * z + 2 * b * g * z + b * d)
    den = g * z * z + d * z
    return num / (den * den)


def eval_derivative(params: MapParams, z) -> complex:
    """Derivative of the map at a finite non-pole point."""
    if params.gamma == 0:
        raise DegenerateMap("cannot differentiate the gamma = 0 Moebius family")
    zr = _raw(z)
    if zr is None:
        raise PoleDerivative("derivative is not defined at infinity")
    if params.reduction is not None:
        if zr == 0:
            raise PoleDerivative("z = 0 is a pole of the reduced map")
        return raw_derivative(params, zr)
    if zr == 0 or params.gamma * zr + params.delta == 0:
        raise PoleDerivative(f"z = {zr!r} is a pole of the map")
    return raw_derivative(params, zr)


def condition_signature(params: MapParams, eq_tol: float = 1e-9) -> ConditionSignature:
    """Compare |alpha| vs |gamma|, |beta| vs |delta| and |alpha+beta| vs |gamma+delta|."""
    ma, mb = abs(params.alpha), abs(params.beta)
    mg, md = abs(params.gamma), abs(params.delta)
    ms1, ms2 = abs(params.alpha + params.beta), abs(params.gamma + params.delta)
    moduli = {
        "abs_alpha": ma, "abs_beta": mb, "abs_gamma": mg, "abs_delta": md,
        "abs_alpha_plus_beta": ms1, "abs_gamma_plus_delta": ms2,
    }
    return ConditionSignature(
        cmp_ag=_compare(ma, mg, eq_tol),
        cmp_bd=_compare(mb, md, eq_tol),
        cmp_sum=_compare(ms1, ms2, eq_tol),
        eq_tol=eq_tol,
        moduli=moduli,
    )


def detect_special_case(params: MapParams, match_tol: float = 1e-9) -> SpecialCaseTag:
    """Tag the parameter quadruple with its special pattern, if any.

    Ties are broken in the fixed order of the SpecialCase enum (first
    match wins).  The tag also carries a plain-text description of the
    reduced map where one exists.
    """
    a, b, g, d = params.alpha, params.beta, params.gamma, params.delta
    if _close(a, b, match_tol) and _close(g, d, match_tol):
        return SpecialCaseTag(
            SpecialCase.ALPHA_EQ_BETA, match_tol,
            reduced_map=f"z -> ({format_complex(a / g, 12)})/z",
        )
    if _close(a, -b, match_tol) and _close(g, d, match_tol):
        return SpecialCaseTag(SpecialCase.ALPHA_EQ_NEG_BETA, match_tol)
    if _close(g, a, match_tol) and _close(d, b, match_tol):
        return SpecialCaseTag(SpecialCase.PARAMS_MIRRORED, match_tol, reduced_map="z -> 1/z")
    if _close(g, b, match_tol) and _close(d, a, match_tol):
        return SpecialCaseTag(SpecialCase.PARAMS_SWAPPED, match_tol)
    return SpecialCaseTag(SpecialCase.GENERAL, match_tol)


def singular_points(params: MapParams) -> list[ExtComplex]:
    """The poles of the map: z = 0 and z = -delta/gamma (deduplicated)."""
    if params.gamma == 0:
        raise DegenerateMap("poles are only defined for gamma != 0")
    poles = [ExtComplex(0j)]
    second = -params.delta / params.gamma
    if second != 0:
        poles.append(ExtComplex(second))
    return poles
