"""
Exact Algebra - Gaussian-rational functions of h, r and dense exact matrices

Every coefficient in the package is a Scalar: an element re + i*im of the
field Q(i)(h, r, zeta, ell), stored as two sympy rational functions over QQ.
zeta and ell are the auxiliary symbols of the Laurent representation.
Index conventions for tensor spaces live here and nowhere else:
the pair (i, j), i, j in {1, 2}, is the flat index 2(i-1)+(j-1) (zero based),
a pair of pairs ((i, j), (k, l)) is 4*flat(i, j) + flat(k, l), and
kron(A, B)[(i,k),(j,l)] = A[i,j] * B[k,l].
"""

import logging
import math
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import sympy
from sympy.polys.domains import QQ
from sympy.polys.fields import FracElement, field
from sympy.polys.orderings import grlex

from hlorentz.errors import ScalarDivisionError, ShapeError, SingularMatrixError

logger = logging.getLogger(__name__)

SYMBOL_NAMES = ("h", "r", "zeta", "ell")

FIELD, _h, _r, _zeta, _ell = field(",".join(SYMBOL_NAMES), QQ, grlex)
# substitution runs on numerator and denominator, so it needs the polynomial ring generators
_RING_GENS = dict(zip(SYMBOL_NAMES, FIELD.ring.gens))
_FZERO = FIELD.zero
_FONE = FIELD.one

ScalarLike = Union["Scalar", int, Fraction, FracElement, sympy.Expr, str]


def _to_field(value) -> FracElement:
    if isinstance(value, FracElement):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return FIELD(value)
    if isinstance(value, Fraction):
        return FIELD(value.numerator) / FIELD(value.denominator)
    if isinstance(value, sympy.Expr):
        return FIELD.from_expr(value)
    raise TypeError(f"cannot convert {value!r} to a scalar")


def _rational(value: Union[int, Fraction, str]):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


class Scalar:
    """Element re + i*im of Q(i)(h, r, zeta, ell); immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, Scalar):
            if im:
                raise TypeError("complex real part")
            re, im = re.re, re.im
        object.__setattr__(self, "re", _to_field(re))
        object.__setattr__(self, "im", _to_field(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def _raw(cls, re: FracElement, im: FracElement) -> "Scalar":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        """Parse 'h^2 - r/2', '3/4*i', '(1+h)/(2+h^2)' and similar exact input."""
        local = {name: sympy.Symbol(name) for name in SYMBOL_NAMES}
        local["i"] = sympy.I
        local["I"] = sympy.I
        try:
            expr = sympy.sympify(text.replace("^", "**"), locals=local, rational=True)
        except (sympy.SympifyError, SyntaxError, TypeError) as e:
            raise ValueError(f"cannot parse scalar '{text}': {e}")
        if expr.has(sympy.zoo, sympy.nan, sympy.oo):
            raise ScalarDivisionError(f"scalar '{text}' divides by zero")
        expr = sympy.together(expr)
        numer, denom = sympy.fraction(expr)
        return cls._from_gaussian_expr(numer) / cls._from_gaussian_expr(denom)

    @classmethod
    def _from_gaussian_expr(cls, expr: sympy.Expr) -> "Scalar":
        expr = sympy.expand(expr)
        real = expr.subs(sympy.I, 0)
        imag = sympy.expand((expr - real) / sympy.I)
        if imag.has(sympy.I) or real.has(sympy.I):
            raise ValueError(f"not a Gaussian-rational expression: {expr}")
        try:
            return cls._raw(FIELD.from_expr(real), FIELD.from_expr(imag))
        except ValueError as e:
            raise ValueError(f"cannot parse scalar '{expr}': {e}")

    # arithmetic

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Scalar._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Scalar._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return Scalar._raw(-self.re, -self.im)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return Scalar._raw(a * c, _FZERO)
        return Scalar._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        a, b = self.re, self.im
        if not b:
            if not a:
                raise ScalarDivisionError("division by the zero scalar")
            return Scalar._raw(1 / a, _FZERO)
        norm = a * a + b * b
        return Scalar._raw(a / norm, -b / norm)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.im:
            if not other.re:
                raise ScalarDivisionError("division by the zero scalar")
            return Scalar._raw(self.re / other.re, self.im / other.re)
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "Scalar":
        """i -> -i; h, r, zeta, ell are real indeterminates."""
        return Scalar._raw(self.re, -self.im)

    # predicates

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    @property
    def is_zero(self) -> bool:
        return not self

    @property
    def is_one(self) -> bool:
        return not self.im and self.re == _FONE

    @property
    def is_real(self) -> bool:
        return not self.im

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    # specialization

    def subs(self, values: Mapping[str, Union[int, Fraction, str]]) -> "Scalar":
        """Substitute rational values for any of h, r, zeta, ell."""
        if not values:
            return self
        pairs = []
        for name, value in values.items():
            if name not in _RING_GENS:
                raise KeyError(f"unknown symbol '{name}'")
            pairs.append((_RING_GENS[name], _rational(value)))
        return Scalar._raw(_subs_field(self.re, pairs), _subs_field(self.im, pairs))

    def free_symbols(self) -> Tuple[str, ...]:
        used = set()
        for part in (self.re, self.im):
            for poly in (part.numer, part.denom):
                for monom in poly.keys():
                    used.update(name for name, e in zip(SYMBOL_NAMES, monom) if e)
        return tuple(name for name in SYMBOL_NAMES if name in used)

    def as_expr(self) -> sympy.Expr:
        return self.re.as_expr() + sympy.I * self.im.as_expr()

    # text forms

    def _common_parts(self) -> Tuple[Dict[tuple, Tuple[object, object]], Dict[tuple, object]]:
        """Numerator as monom -> (re, im) over a monic common real denominator."""
        if not self.im:
            den = self.re.denom
            parts = [(self.re.numer, 0)]
        elif not self.re:
            den = self.im.denom
            parts = [(self.im.numer, 1)]
        else:
            den = self.re.denom.lcm(self.im.denom)
            parts = [
                (self.re.numer * den.exquo(self.re.denom), 0),
                (self.im.numer * den.exquo(self.im.denom), 1),
            ]
        lc = den.LC
        numer: Dict[tuple, List[object]] = {}
        for poly, slot in parts:
            for monom, coeff in poly.items():
                entry = numer.setdefault(monom, [QQ.zero, QQ.zero])
                entry[slot] = coeff / lc
        denom = {monom: coeff / lc for monom, coeff in den.items()}
        numer = {m: (c[0], c[1]) for m, c in numer.items() if c[0] or c[1]}
        return numer, denom

    def canonical(self) -> str:
        """'(num)/(den)', terms graded-lex descending, coefficients 'p/q' or 'p/q+P/Q*i'."""
        numer, denom = self._common_parts()
        return f"({_canonical_poly(numer)})/({_canonical_poly({m: (c, QQ.zero) for m, c in denom.items()})})"

    def __str__(self):
        numer, denom = self._common_parts()
        num_text = _pretty_poly(numer)
        if len(denom) == 1 and all(e == 0 for e in next(iter(denom))):
            return num_text
        den_text = _pretty_poly({m: (c, QQ.zero) for m, c in denom.items()})
        if len(numer) > 1 or num_text.startswith("-"):
            num_text = f"({num_text})"
        if len(denom) > 1 or any(sum(m) for m in denom):
            den_text = f"({den_text})"
        return f"{num_text}/{den_text}"

    def __repr__(self):
        return f"Scalar({self})"


def _subs_field(value: FracElement, pairs) -> FracElement:
    numer = value.numer.subs(pairs)
    denom = value.denom.subs(pairs)
    if not denom:
        raise ScalarDivisionError(f"denominator {value.denom.as_expr()} vanishes at the given values")
    return FIELD.new(numer, denom)


def _coerce(value) -> Union[Scalar, type(NotImplemented)]:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction, FracElement)) and not isinstance(value, bool):
        return Scalar._raw(_to_field(value), _FZERO)
    return NotImplemented


def as_scalar(value: ScalarLike) -> Scalar:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, str):
        return Scalar.parse(value)
    if isinstance(value, sympy.Expr):
        return Scalar._from_gaussian_expr(value)
    coerced = _coerce(value)
    if coerced is NotImplemented:
        raise TypeError(f"cannot convert {value!r} to a scalar")
    return coerced


def _monomial_text(monom: tuple) -> str:
    factors = []
    for name, exp in zip(SYMBOL_NAMES, monom):
        if exp == 1:
            factors.append(name)
        elif exp:
            factors.append(f"{name}^{exp}")
    return "*".join(factors)


def _grlex_desc(monoms: Iterable[tuple]) -> List[tuple]:
    return sorted(monoms, key=lambda m: (sum(m), m), reverse=True)


def _frac_text(q) -> str:
    return f"{QQ.numer(q)}/{QQ.denom(q)}"


def _canonical_poly(terms: Mapping[tuple, Tuple[object, object]]) -> str:
    if not terms:
        return "0/1"
    parts = []
    for monom in _grlex_desc(terms):
        re, im = terms[monom]
        if im:
            coeff = f"{_frac_text(re)}+{_frac_text(im)}*i"
        else:
            coeff = _frac_text(re)
        mono = _monomial_text(monom)
        parts.append(f"{coeff}*{mono}" if mono else coeff)
    return " + ".join(parts)


def _q_text(q) -> str:
    n, d = QQ.numer(q), QQ.denom(q)
    return f"{n}" if d == 1 else f"{n}/{d}"


def _pretty_poly(terms: Mapping[tuple, Tuple[object, object]]) -> str:
    if not terms:
        return "0"
    out = ""
    for monom in _grlex_desc(terms):
        re, im = terms[monom]
        mono = _monomial_text(monom)
        if re and im:
            sign, coeff = "+", f"({_q_text(re)}{'+' if im > 0 else '-'}{_q_text(abs(im))}*i)"
        elif im:
            sign = "-" if im < 0 else "+"
            mag = abs(im)
            coeff = "i" if mag == 1 else f"{_q_text(mag)}*i"
        else:
            sign = "-" if re < 0 else "+"
            mag = abs(re)
            coeff = "" if (mag == 1 and mono) else _q_text(mag)
        body = "*".join(p for p in (coeff, mono) if p)
        if not out:
            out = body if sign == "+" else f"-{body}"
        else:
            out += f" {sign} {body}"
    return out


ZERO = Scalar._raw(_FZERO, _FZERO)
ONE = Scalar._raw(_FONE, _FZERO)
I = Scalar._raw(_FZERO, _FONE)
H = Scalar._raw(_h, _FZERO)
R = Scalar._raw(_r, _FZERO)
ZETA = Scalar._raw(_zeta, _FZERO)
ELL = Scalar._raw(_ell, _FZERO)


def scalar_arith(a: ScalarLike, b: ScalarLike, op: str) -> Scalar:
    a, b = as_scalar(a), as_scalar(b)
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown scalar operation '{op}'")


# --- index conventions -----------------------------------------------------

PAIRS = ((1, 1), (1, 2), (2, 1), (2, 2))


def pair_index(i: int, j: int) -> int:
    return 2 * (i - 1) + (j - 1)


def double_index(i: int, j: int, k: int, l: int) -> int:
    return 4 * pair_index(i, j) + pair_index(k, l)


def _auto_pairing(rows: int, cols: int) -> Optional[str]:
    if rows == cols == 4:
        return "pair"
    if rows == cols == 16:
        return "pair2"
    return None


_PAIRING_DIMS = {"pair": 4, "pair2": 16}


class ExactMatrix:
    """Dense row-major matrix over Scalar; immutable."""

    __slots__ = ("rows", "cols", "entries", "pairing")

    def __init__(
        self,
        rows: int,
        cols: int,
        entries: Sequence[ScalarLike],
        pairing: Optional[str] = "auto",
    ):
        if rows <= 0 or cols <= 0:
            raise ShapeError(f"invalid shape {rows}x{cols}")
        entries = tuple(as_scalar(e) for e in entries)
        if len(entries) != rows * cols:
            raise ShapeError(f"{len(entries)} entries for a {rows}x{cols} matrix")
        if pairing == "auto":
            pairing = _auto_pairing(rows, cols)
        elif pairing is not None:
            dim = _PAIRING_DIMS.get(pairing)
            if dim is None or rows != dim or cols != dim:
                raise ShapeError(f"pairing '{pairing}' inconsistent with a {rows}x{cols} matrix")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "pairing", pairing)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    # constructors

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[ScalarLike]]) -> "ExactMatrix":
        n = len(rows)
        m = len(rows[0]) if n else 0
        if any(len(row) != m for row in rows):
            raise ShapeError("ragged rows")
        return cls(n, m, [e for row in rows for e in row])

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: Optional[int] = None) -> "ExactMatrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, [ZERO] * (rows * cols))

    @classmethod
    def from_function(cls, rows: int, cols: int, fn: Callable[[int, int], ScalarLike]) -> "ExactMatrix":
        return cls(rows, cols, [fn(i, j) for i in range(rows) for j in range(cols)])

    # access

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, key: Tuple[int, int]) -> Scalar:
        i, j = key
        return self.entries[i * self.cols + j]

    def at(self, i: int, j: int, k: int, l: int) -> Scalar:
        """Entry ((i,j),(k,l)) of a pair-indexed 4x4 matrix, indices from 1."""
        return self[pair_index(i, j), pair_index(k, l)]

    def row(self, i: int) -> Tuple[Scalar, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> List[List[Scalar]]:
        return [list(self.row(i)) for i in range(self.rows)]

    # arithmetic

    def _check_same_shape(self, other: "ExactMatrix"):
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same_shape(other)
        return ExactMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)], self.pairing)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same_shape(other)
        return ExactMatrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)], self.pairing)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, [-a for a in self.entries], self.pairing)

    def scale(self, s: ScalarLike) -> "ExactMatrix":
        s = as_scalar(s)
        return ExactMatrix(self.rows, self.cols, [s * a for a in self.entries], self.pairing)

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            return self @ other
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        n, m, p = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out: List[Scalar] = [ZERO] * (n * p)
        for i in range(n):
            acc = out[i * p:(i + 1) * p]
            for k in range(m):
                aik = a[i * m + k]
                if not aik:
                    continue
                base = k * p
                for j in range(p):
                    bkj = b[base + j]
                    if bkj:
                        acc[j] = acc[j] + aik * bkj
            out[i * p:(i + 1) * p] = acc
        pairing = self.pairing if self.pairing == other.pairing else "auto"
        return ExactMatrix(n, p, out, pairing)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and all(a == b for a, b in zip(self.entries, other.entries))

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    # structure

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix.from_function(self.cols, self.rows, lambda i, j: self[j, i])

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def conjugate(self) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, [a.conjugate() for a in self.entries], self.pairing)

    def conj_transpose(self) -> "ExactMatrix":
        return self.transpose().conjugate()

    dagger = conj_transpose

    def _tensor_dim(self) -> int:
        if not self.is_square:
            raise ShapeError(f"tensor-square operation on a {self.rows}x{self.cols} matrix")
        d = math.isqrt(self.rows)
        if d * d != self.rows:
            raise ShapeError(f"size {self.rows} is not a tensor square")
        return d

    def partial_transpose_t1(self) -> "ExactMatrix":
        """(A^t1)_{ij,kl} = A_{kj,il}."""
        d = self._tensor_dim()

        def entry(row, col):
            i, j = divmod(row, d)
            k, l = divmod(col, d)
            return self[k * d + j, i * d + l]

        return ExactMatrix.from_function(self.rows, self.cols, entry)

    def partial_transpose_t2(self) -> "ExactMatrix":
        """(A^t2)_{ij,kl} = A_{il,kj}."""
        d = self._tensor_dim()

        def entry(row, col):
            i, j = divmod(row, d)
            k, l = divmod(col, d)
            return self[i * d + l, k * d + j]

        return ExactMatrix.from_function(self.rows, self.cols, entry)

    def partial_trace_space2(self) -> "ExactMatrix":
        """(tr_2 A)_{ik} = sum_j A_{ij,kj}."""
        d = self._tensor_dim()

        def entry(i, k):
            total = ZERO
            for j in range(d):
                total = total + self[i * d + j, k * d + j]
            return total

        return ExactMatrix.from_function(d, d, entry)

    def trace(self) -> Scalar:
        if not self.is_square:
            raise ShapeError("trace of a non-square matrix")
        total = ZERO
        for i in range(self.rows):
            total = total + self[i, i]
        return total

    def inverse(self) -> "ExactMatrix":
        """Fraction-free Gauss-Jordan elimination (Bareiss one-step update)."""
        if not self.is_square:
            raise ShapeError(f"inverse of a {self.rows}x{self.cols} matrix")
        n = self.rows
        work = [
            list(self.row(i)) + [ONE if i == j else ZERO for j in range(n)]
            for i in range(n)
        ]
        prev = ONE
        for k in range(n):
            pivot_row = next((i for i in range(k, n) if work[i][k]), None)
            if pivot_row is None:
                # column k is zero from row k down, so the pivot polynomial work[k][k] vanishes
                raise SingularMatrixError(k, str(work[k][k]), str(prev))
            if pivot_row != k:
                work[k], work[pivot_row] = work[pivot_row], work[k]
            pivot_line = work[k]
            pivot = pivot_line[k]
            unchanged = pivot == prev
            for i in range(n):
                if i == k:
                    continue
                line = work[i]
                factor = line[k]
                if not factor:
                    if unchanged:
                        continue
                    work[i] = [(pivot * x) / prev if x else x for x in line]
                    continue
                if prev.is_one:
                    work[i] = [pivot * x - factor * y for x, y in zip(line, pivot_line)]
                else:
                    work[i] = [(pivot * x - factor * y) / prev for x, y in zip(line, pivot_line)]
            prev = pivot
        out = []
        for i in range(n):
            diag = work[i][i]
            out.extend(x / diag if x else x for x in work[i][n:])
        return ExactMatrix(n, n, out, self.pairing)

    def rank(self) -> int:
        """Generic rank over the fraction field (h, r treated as transcendentals)."""
        work = self.to_rows()
        rank, col = 0, 0
        while rank < self.rows and col < self.cols:
            pivot_row = next((i for i in range(rank, self.rows) if work[i][col]), None)
            if pivot_row is None:
                col += 1
                continue
            work[rank], work[pivot_row] = work[pivot_row], work[rank]
            pivot = work[rank][col]
            for i in range(rank + 1, self.rows):
                factor = work[i][col]
                if factor:
                    ratio = factor / pivot
                    work[i] = [x - ratio * y for x, y in zip(work[i], work[rank])]
            rank += 1
            col += 1
        return rank

    # predicates and witnesses

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_identity(self) -> bool:
        return self.is_square and self == ExactMatrix.identity(self.rows)

    def first_difference(self, other: "ExactMatrix") -> Optional[Tuple[int, int, Scalar, Scalar]]:
        self._check_same_shape(other)
        for idx, (a, b) in enumerate(zip(self.entries, other.entries)):
            if a != b:
                i, j = divmod(idx, self.cols)
                return i, j, a, b
        return None

    def difference_text(self, other: "ExactMatrix") -> Optional[str]:
        diff = self.first_difference(other)
        if diff is None:
            return None
        i, j, a, b = diff
        return f"entry ({i + 1},{j + 1}): {a} != {b}"

    def subs(self, values: Mapping[str, Union[int, Fraction, str]]) -> "ExactMatrix":
        if not values:
            return self
        return ExactMatrix(self.rows, self.cols, [a.subs(values) for a in self.entries], self.pairing)

    def map(self, fn: Callable[[Scalar], ScalarLike]) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, [fn(a) for a in self.entries], self.pairing)

    # text

    def canonical_entries(self) -> List[str]:
        return [a.canonical() for a in self.entries]

    def to_text(self) -> str:
        cells = [[str(a) for a in self.row(i)] for i in range(self.rows)]
        width = max(len(c) for row in cells for c in row)
        return "\n".join("  ".join(c.rjust(width) for c in row) for row in cells)

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols}, pairing={self.pairing})"


def kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    rows, cols = a.rows * b.rows, a.cols * b.cols

    def entry(row, col):
        i, k = divmod(row, b.rows)
        j, l = divmod(col, b.cols)
        x = a[i, j]
        return x * b[k, l] if x else ZERO

    return ExactMatrix.from_function(rows, cols, entry)


def permutation(dim2: int) -> ExactMatrix:
    """Swap of the two tensor factors of C^dim2 x C^dim2: P_{ij,kl} = d_il d_jk."""
    if dim2 not in (2, 4):
        raise ShapeError(f"permutation of factors of dimension {dim2}; expected 2 or 4")
    n = dim2

    def entry(row, col):
        i, j = divmod(row, n)
        k, l = divmod(col, n)
        return ONE if (i == l and j == k) else ZERO

    return ExactMatrix.from_function(n * n, n * n, entry)


def leg_swap(m: ExactMatrix) -> ExactMatrix:
    """P M P for a tensor-square matrix (the tilde operation)."""
    d = m._tensor_dim()
    p = permutation(d)
    return p @ m @ p


def mat_core(a: ExactMatrix, op: str, b: Optional[ExactMatrix] = None) -> ExactMatrix:
    if op == "mul":
        if b is None:
            raise ShapeError("mul needs a second operand")
        return a @ b
    ops = {
        "inverse": ExactMatrix.inverse,
        "transpose": ExactMatrix.transpose,
        "conj_transpose": ExactMatrix.conj_transpose,
        "partial_transpose_t1": ExactMatrix.partial_transpose_t1,
        "partial_transpose_t2": ExactMatrix.partial_transpose_t2,
        "partial_trace_space2": ExactMatrix.partial_trace_space2,
    }
    try:
        return ops[op](a)
    except KeyError:
        raise ValueError(f"unknown matrix operation '{op}'")


def matrix(rows: Sequence[Sequence[ScalarLike]]) -> ExactMatrix:
    return ExactMatrix.from_rows(rows)
