"""
Representation - the second h-Minkowski algebra acting on truncated Laurent polynomials

Vectors are finite maps exponent -> Scalar on the window -B..B. Every
operator records its band (how far it can move an exponent, summed over
compositions); an identity is only asserted on basis vectors x^k with
|k| <= B - band, where truncation at the window edge cannot reach it.
"""

import logging
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from hlorentz.config import config
from hlorentz.errors import ScalarDivisionError
from hlorentz.models.report import CheckReport, check, combine
from hlorentz.utils.exactalg import ELL, H, I, ONE, ZERO, ZETA, Scalar, ScalarLike, as_scalar
from hlorentz.utils.ncalg import ALPHABET, NcPoly, printed_minkowski

logger = logging.getLogger(__name__)

Vector = Dict[int, Scalar]
Action = Callable[[int], Vector]
Rational = Union[int, Fraction, str]


def _add_into(target: Vector, source: Mapping[int, Scalar], factor: Scalar = ONE):
    for k, c in source.items():
        value = target.get(k, ZERO) + (c if factor.is_one else factor * c)
        if value:
            target[k] = value
        else:
            target.pop(k, None)


def vector_text(vec: Mapping[int, Scalar]) -> str:
    if not vec:
        return "0"
    parts = []
    for k in sorted(vec, reverse=True):
        c = vec[k]
        text = str(c)
        coeff = text if " " not in text else f"({text})"
        parts.append(f"{coeff}·x^{k}")
    return " + ".join(parts)


class LaurentSpace:
    """Span of x^k for -window <= k <= window."""

    def __init__(self, window: Optional[int] = None):
        window = config.REPN_WINDOW if window is None else window
        if window < 4:
            raise ValueError(f"window must be at least 4, got {window}")
        self.window = window

    def __contains__(self, k: int) -> bool:
        return -self.window <= k <= self.window

    def truncate(self, vec: Mapping[int, Scalar]) -> Vector:
        return {k: c for k, c in vec.items() if k in self and c}

    def safe_range(self, band: int) -> range:
        reach = self.window - band
        return range(-reach, reach + 1)

    def operator(self, action: Action, band: int, name: str = "") -> "BandOperator":
        return BandOperator(self, action, band, name)

    def shift(self, offset: int, coefficient: Callable[[int], ScalarLike], name: str = "") -> "BandOperator":
        """x^k -> coefficient(k) x^(k+offset)."""

        def action(k: int) -> Vector:
            c = as_scalar(coefficient(k))
            return {k + offset: c} if c else {}

        return BandOperator(self, action, abs(offset), name)

    def identity(self) -> "BandOperator":
        return BandOperator(self, lambda k: {k: ONE}, 0, "1")

    def __repr__(self):
        return f"LaurentSpace(B={self.window})"


class BandOperator:
    """Linear operator on a LaurentSpace given by its action on basis vectors."""

    def __init__(self, space: LaurentSpace, action: Action, band: int, name: str = ""):
        self.space = space
        self.band = band
        self.name = name
        self._action = action
        self._cache: Dict[int, Vector] = {}

    def on(self, k: int) -> Vector:
        cached = self._cache.get(k)
        if cached is None:
            cached = self.space.truncate(self._action(k)) if k in self.space else {}
            self._cache[k] = cached
        return cached

    def apply(self, vec: Mapping[int, Scalar]) -> Vector:
        out: Vector = {}
        for k, c in vec.items():
            _add_into(out, self.on(k), c)
        return out

    def _require_same_space(self, other: "BandOperator"):
        if other.space is not self.space:
            raise ValueError("operators act on different Laurent spaces")

    def __mul__(self, other):
        if isinstance(other, BandOperator):
            self._require_same_space(other)
            return BandOperator(
                self.space,
                lambda k: self.apply(other.on(k)),
                self.band + other.band,
                f"{self.name}{other.name}",
            )
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, s: ScalarLike) -> "BandOperator":
        s = as_scalar(s)
        return BandOperator(
            self.space,
            lambda k: {j: v for j, v in ((j, s * c) for j, c in self.on(k).items()) if v},
            self.band,
            self.name,
        )

    def _combine(self, other: "BandOperator", sign: Scalar) -> "BandOperator":
        self._require_same_space(other)

        def action(k: int) -> Vector:
            out = dict(self.on(k))
            _add_into(out, other.on(k), sign)
            return out

        return BandOperator(self.space, action, max(self.band, other.band))

    def __add__(self, other: "BandOperator") -> "BandOperator":
        return self._combine(other, ONE)

    def __sub__(self, other: "BandOperator") -> "BandOperator":
        return self._combine(other, -ONE)

    def __neg__(self) -> "BandOperator":
        return self.scale(-ONE)

    def commutator(self, other: "BandOperator") -> "BandOperator":
        return self * other - other * self

    def first_nonzero(self, band: Optional[int] = None) -> Optional[Tuple[int, Vector]]:
        """First safe-window basis vector the operator does not annihilate."""
        for k in self.space.safe_range(self.band if band is None else band):
            image = self.on(k)
            if image:
                return k, image
        return None

    def __repr__(self):
        return f"BandOperator({self.name or '?'}, band={self.band})"


def annihilation_check(name: str, op: BandOperator) -> CheckReport:
    found = op.first_nonzero()
    if found is None:
        return check(name, True)
    k, image = found
    return check(name, False, f"x^{k} -> {vector_text(image)}")


# --- x, y and the generators -------------------------------------------------------

def build_xy(space: LaurentSpace) -> Tuple[BandOperator, BandOperator, BandOperator]:
    """x, x^-1 and y = -4i x (d/dx) x."""
    x = space.shift(1, lambda k: ONE, "x")
    x_inv = space.shift(-1, lambda k: ONE, "x⁻¹")
    y = space.shift(1, lambda k: -4 * I * (k + 1), "y")
    return x, x_inv, y


def check_xy_commutators(space: LaurentSpace) -> CheckReport:
    x, x_inv, y = build_xy(space)
    identity = space.identity()
    return combine("xy-commutators", [
        annihilation_check("x-y", x.commutator(y) - (x * x).scale(4 * I)),
        annihilation_check("y-xinv", y.commutator(x_inv) - identity.scale(4 * I)),
    ])


def _resolve_h(h: Optional[Rational]) -> Scalar:
    value = H if h is None else as_scalar(h)
    if not value:
        raise ScalarDivisionError("the representation needs h != 0 (δ = x/h)")
    return value


def build_generators(
    space: LaurentSpace,
    zeta: ScalarLike = ZETA,
    ell: ScalarLike = ELL,
    h: Optional[Rational] = None,
) -> Dict[str, BandOperator]:
    """
    α, β, γ, δ acting on the Laurent space.

    Args:
        space: truncated Laurent module
        zeta: value of the linear central element (symbol by default)
        ell: value of the Minkowski length (symbol by default)
        h: deformation parameter; the symbol h unless a nonzero rational is given

    Returns:
        dict with keys α, β, γ, δ; α is fixed by the length, x α = h((2+h²)/2) ℓ + h(β - 2x)γ
    """
    h = _resolve_h(h)
    zeta, ell = as_scalar(zeta), as_scalar(ell)
    x, x_inv, y = build_xy(space)
    identity = space.identity()
    half = ONE / 2
    delta = x.scale(h.inverse())
    beta = (x.scale(ONE * 3 / 2) + y.scale(I) + identity.scale(zeta)).scale(half)
    gamma = (x.scale(ONE * 3 / 2) - y.scale(I) + identity.scale(zeta)).scale(half)
    inner = identity.scale(h * (2 + h * h) / 2 * ell) + ((beta - x.scale(2)) * gamma).scale(h)
    alpha = x_inv * inner
    for op, name in ((alpha, "α"), (beta, "β"), (gamma, "γ"), (delta, "δ")):
        op.name = name
    return {"α": alpha, "β": beta, "γ": gamma, "δ": delta}


def closed_form_alpha(
    space: LaurentSpace,
    zeta: ScalarLike = ZETA,
    ell: ScalarLike = ELL,
    h: Optional[Rational] = None,
) -> BandOperator:
    """(h/4)(x⁻¹(y² + 2i{y,x}) - (23/4)x - ζ + x⁻¹(ζ² + (4+h²)ℓ))."""
    h = _resolve_h(h)
    zeta, ell = as_scalar(zeta), as_scalar(ell)
    x, x_inv, y = build_xy(space)
    identity = space.identity()
    anti = y * x + x * y
    body = (
        x_inv * (y * y + anti.scale(2 * I))
        - x.scale(ONE * 23 / 4)
        - identity.scale(zeta)
        + x_inv.scale(zeta * zeta + (4 + h * h) * ell)
    )
    return body.scale(h / 4)


def represent(p: NcPoly, images: Mapping[str, BandOperator], space: LaurentSpace) -> BandOperator:
    """Image of a polynomial in α, β, γ, δ under the given operators."""
    total = space.identity().scale(ZERO)
    for word, coeff in p.terms.items():
        term = space.identity()
        for pos, i in enumerate(word):
            name = ALPHABET[i].name
            if name not in images:
                raise ValueError(f"no operator for generator {name}")
            term = images[name] if pos == 0 else term * images[name]
        total = total + term.scale(coeff)
    return total


def _h_params(h: Optional[Rational]) -> Optional[Dict[str, Rational]]:
    return None if h is None else {"h": h}


def _relators(h: Optional[Rational]) -> List[NcPoly]:
    """The printed relator table of the second deformation, specialized at h when given."""
    params = _h_params(h)
    return [rel.subs(params) if params else rel for rel in printed_minkowski(2)]


def _length_poly() -> NcPoly:
    al, be, ga, de = (NcPoly.gen(n) for n in ("α", "β", "γ", "δ"))
    return (al * de - be * ga + (be * de).scale(2 * H)).scale(2 / (H * H + 2))


def _zeta_poly() -> NcPoly:
    be, ga, de = (NcPoly.gen(n) for n in ("β", "γ", "δ"))
    return be + ga - de.scale(H * 3 / 2)


def representation_check(
    window: Optional[int] = None,
    zeta: ScalarLike = ZETA,
    ell: ScalarLike = ELL,
    h: Optional[Rational] = None,
) -> CheckReport:
    """Relators annihilate the safe window; ζ and the length act as ζ̂ and ℓ̂."""
    space = LaurentSpace(window)
    gens = build_generators(space, zeta, ell, h)
    params = _h_params(h)
    identity = space.identity()
    reports = []
    for n, rel in enumerate(_relators(h), start=1):
        reports.append(annihilation_check(f"relator-{n}", represent(rel, gens, space)))
    zeta_op = represent(_specialize(_zeta_poly(), params), gens, space)
    reports.append(annihilation_check("zeta-scalar", zeta_op - identity.scale(as_scalar(zeta))))
    length_op = represent(_specialize(_length_poly(), params), gens, space)
    reports.append(annihilation_check("length-scalar", length_op - identity.scale(as_scalar(ell))))
    logger.debug(f"Representation checked on {space}")
    return combine("representation", reports)


def _specialize(p: NcPoly, params: Optional[Mapping[str, Rational]]) -> NcPoly:
    return p.subs(params) if params else p


def residual_text(op: BandOperator) -> str:
    """Describe an operator on the safe window as Σ c·x^s when its coefficients do not depend on k."""
    by_shift: Dict[int, Dict[int, Scalar]] = {}
    safe = list(op.space.safe_range(op.band))
    for k in safe:
        for j, c in op.on(k).items():
            by_shift.setdefault(j - k, {})[k] = c
    if not by_shift:
        return "0"
    parts = []
    for s in sorted(by_shift):
        coefficients = by_shift[s]
        values = set(coefficients.values())
        if len(coefficients) == len(safe) and len(values) == 1:
            parts.append(f"({values.pop()})·x^{s}")
        else:
            k = min(coefficients)
            parts.append(f"x^{k} -> ({coefficients[k]})·x^{k + s} (k-dependent)")
    return " + ".join(parts)


def closed_form_alpha_report(
    window: Optional[int] = None,
    zeta: ScalarLike = ZETA,
    ell: ScalarLike = ELL,
    h: Optional[Rational] = None,
) -> CheckReport:
    """Operational α against the closed form; the residual operator is the witness."""
    space = LaurentSpace(window)
    alpha = build_generators(space, zeta, ell, h)["α"]
    difference = alpha - closed_form_alpha(space, zeta, ell, h)
    found = difference.first_nonzero()
    if found is None:
        return check("closed-form-alpha", True)
    return check("closed-form-alpha", False, f"α - α_closed = {residual_text(difference)}")


def window_stability_check(
    windows: Sequence[int] = (),
    zeta: ScalarLike = ZETA,
    ell: ScalarLike = ELL,
    h: Optional[Rational] = None,
) -> CheckReport:
    """Relator and scalar images agree across windows on the common safe range."""
    windows = sorted(windows or config.REPN_STABILITY_WINDOWS)
    params = _h_params(h)
    polys = list(_relators(h)) + [_specialize(_zeta_poly(), params), _specialize(_length_poly(), params)]
    images: List[List[BandOperator]] = []
    for b in windows:
        space = LaurentSpace(b)
        gens = build_generators(space, zeta, ell, h)
        images.append([represent(p, gens, space) for p in polys])
    reports = []
    for n, ops in enumerate(zip(*images), start=1):
        band = ops[0].band
        common = ops[0].space.safe_range(band)
        bad = next(
            (k for k in common if any(op.on(k) != ops[0].on(k) for op in ops[1:])),
            None,
        )
        reports.append(check(f"stable-{n}", bad is None, f"images of x^{bad} differ between windows {windows}"))
    return combine("window-stability", reports)


def evaluate_scalar(p: NcPoly, values: Mapping[str, ScalarLike]) -> Scalar:
    """Evaluate a polynomial with commuting scalar values for its generators."""
    total = ZERO
    for word, coeff in p.terms.items():
        term = coeff
        for i in word:
            name = ALPHABET[i].name
            if name not in values:
                raise ValueError(f"no value for generator {name}")
            term = term * as_scalar(values[name])
        total = total + term
    return total


def one_dim_check(alpha0: ScalarLike, beta0: ScalarLike) -> CheckReport:
    """α = α₀, δ = 0, β = β₀, γ = conj(β₀) satisfies every relator."""
    alpha0, beta0 = as_scalar(alpha0), as_scalar(beta0)
    values = {"α": alpha0, "β": beta0, "γ": beta0.conjugate(), "δ": ZERO}
    reports = []
    for n, rel in enumerate(printed_minkowski(2), start=1):
        value = evaluate_scalar(rel, values)
        reports.append(check(f"relator-{n}", not value, f"evaluates to {value}"))
    return combine("one-dimensional", reports)


def repn_checks(
    window: Optional[int] = None,
    zeta: ScalarLike = ZETA,
    ell: ScalarLike = ELL,
    h: Optional[Rational] = None,
) -> Tuple[List[CheckReport], CheckReport]:
    """Counted checks, plus the closed-form comparison reported alongside."""
    counted = [
        check_xy_commutators(LaurentSpace(window)),
        representation_check(window, zeta, ell, h),
        window_stability_check((), zeta, ell, h),
        one_dim_check(1, 1 + I),
        one_dim_check(0, 0),
        one_dim_check(ZETA, ELL + I * ZETA),
    ]
    return counted, closed_form_alpha_report(window, zeta, ell, h)
