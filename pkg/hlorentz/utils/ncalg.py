"""
Noncommutative Algebra - free algebra over Scalar, relation generation and rewriting

Generators live in one global alphabet split into sectors (M, K, dK, P, Y).
Words are tuples of global generator indices. The monomial order compares
degree, then sector inversions (a letter of a later sector standing left of
an earlier one), then total weight, then the words lexicographically. Rules
therefore move K left of dK, P and Y, and P left of Y.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from hlorentz.config import config
from hlorentz.errors import (
    HLorentzError,
    OrientationError,
    RewriteDepthError,
    ShapeError,
    StarError,
    UnknownNameError,
)
from hlorentz.models.report import CheckReport, check, combine
from hlorentz.utils.exactalg import (
    H,
    ONE,
    R,
    ZERO,
    ExactMatrix,
    Scalar,
    as_scalar,
    permutation,
)
from hlorentz.utils.rmat import MatrixName, build

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]
Terms = Dict[Word, Scalar]


class Sector(str, Enum):
    M = "M"
    K = "K"
    DK = "dK"
    P = "P"
    Y = "Y"


SECTOR_RANK = {Sector.M: 0, Sector.K: 1, Sector.DK: 2, Sector.P: 3, Sector.Y: 4}


@dataclass(frozen=True)
class Generator:
    name: str
    sector: Sector
    index: int
    weight: int
    row: int
    col: int


# (name, matrix position, weight); Y and P place beta/gamma transposed
_SECTOR_LAYOUT = {
    Sector.M: [("a", 1, 1, 1), ("b", 1, 2, 2), ("c", 2, 1, 0), ("d", 2, 2, 1)],
    Sector.K: [("α", 1, 1, 2), ("β", 1, 2, 1), ("γ", 2, 1, 1), ("δ", 2, 2, 0)],
    Sector.DK: [("dα", 1, 1, 2), ("dβ", 1, 2, 1), ("dγ", 2, 1, 1), ("dδ", 2, 2, 0)],
    Sector.P: [("pα", 1, 1, -2), ("pβ", 2, 1, -1), ("pγ", 1, 2, -1), ("pδ", 2, 2, 0)],
    Sector.Y: [("∂α", 1, 1, -2), ("∂β", 2, 1, -1), ("∂γ", 1, 2, -1), ("∂δ", 2, 2, 0)],
}

ALPHABET: List[Generator] = []
for _sector in (Sector.M, Sector.K, Sector.DK, Sector.P, Sector.Y):
    for _name, _row, _col, _weight in _SECTOR_LAYOUT[_sector]:
        ALPHABET.append(Generator(_name, _sector, len(ALPHABET), _weight, _row, _col))

GENERATOR_INDEX: Dict[str, int] = {g.name: g.index for g in ALPHABET}
_RANK = tuple(SECTOR_RANK[g.sector] for g in ALPHABET)
_WEIGHT = tuple(g.weight for g in ALPHABET)


def _star_table() -> Dict[int, Tuple[int, int]]:
    table: Dict[int, Tuple[int, int]] = {}
    for prefix, sign in (("", 1), ("d", 1), ("p", 1), ("∂", -1)):
        pairs = {"α": "α", "β": "γ", "γ": "β", "δ": "δ"}
        for src, dst in pairs.items():
            table[GENERATOR_INDEX[prefix + src]] = (GENERATOR_INDEX[prefix + dst], sign)
    return table


# M carries no star structure
STAR_IMAGE = _star_table()


def generator_index(name: str) -> int:
    try:
        return GENERATOR_INDEX[name]
    except KeyError:
        raise UnknownNameError("generator", name, list(GENERATOR_INDEX))


def word_text(word: Word) -> str:
    return "·".join(ALPHABET[i].name for i in word) if word else "1"


def order_key(word: Word) -> Tuple[int, int, int, Word]:
    inversions = 0
    for pos, i in enumerate(word):
        rank = _RANK[i]
        for j in word[pos + 1:]:
            if rank > _RANK[j]:
                inversions += 1
    return len(word), inversions, sum(_WEIGHT[i] for i in word), word


class GeneratorSet:
    """Ordered slice of the alphabet covering whole sectors."""

    def __init__(self, sectors: Iterable[Union[Sector, str]]):
        sectors = tuple(sorted({Sector(s) for s in sectors}, key=SECTOR_RANK.get))
        if not sectors:
            raise ValueError("a generator set needs at least one sector")
        self.sectors = sectors
        self.generators = [g for g in ALPHABET if g.sector in sectors]

    def __contains__(self, index: int) -> bool:
        return ALPHABET[index].sector in self.sectors

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def sector(self, sector: Union[Sector, str]) -> List[Generator]:
        sector = Sector(sector)
        return [g for g in self.generators if g.sector == sector]

    def __repr__(self):
        return f"GeneratorSet({', '.join(s.value for s in self.sectors)})"


class NcPoly:
    """Finite Scalar-weighted sum of words; the empty word is the unit."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Word, Scalar]] = None):
        self.terms: Terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def gen(cls, name: str) -> "NcPoly":
        return cls({(generator_index(name),): ONE})

    @classmethod
    def const(cls, value) -> "NcPoly":
        return cls({(): as_scalar(value)})

    @classmethod
    def word(cls, *names: str) -> "NcPoly":
        return cls({tuple(generator_index(n) for n in names): ONE})

    # arithmetic

    @staticmethod
    def _lift(other) -> Optional["NcPoly"]:
        if isinstance(other, NcPoly):
            return other
        if isinstance(other, (Scalar, int)):
            return NcPoly.const(other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        _accumulate(terms, other.terms, ONE)
        return NcPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return NcPoly({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        _accumulate(terms, other.terms, -ONE)
        return NcPoly(terms)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        if not isinstance(other, NcPoly):
            return NotImplemented
        terms: Terms = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = u + v
                value = terms.get(w, ZERO) + a * b
                if value:
                    terms[w] = value
                else:
                    terms.pop(w, None)
        return NcPoly(terms)

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "NcPoly":
        if n < 0:
            raise ValueError("negative power of a noncommutative polynomial")
        result = NcPoly.const(1)
        for _ in range(n):
            result = result * self
        return result

    def scale(self, s) -> "NcPoly":
        s = as_scalar(s)
        if not s:
            return NcPoly()
        return NcPoly({w: s * c for w, c in self.terms.items()})

    def commutator(self, other: "NcPoly") -> "NcPoly":
        return self * other - other * self

    # inspection

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def coefficient(self, word: Word) -> Scalar:
        return self.terms.get(word, ZERO)

    def leading_word(self) -> Word:
        if not self.terms:
            raise ValueError("zero polynomial has no leading word")
        return max(self.terms, key=order_key)

    def sorted_words(self) -> List[Word]:
        return sorted(self.terms, key=order_key, reverse=True)

    def letters(self) -> set:
        return {i for w in self.terms for i in w}

    def map_coefficients(self, fn) -> "NcPoly":
        return NcPoly({w: fn(c) for w, c in self.terms.items()})

    def subs(self, values: Mapping[str, object]) -> "NcPoly":
        if not values:
            return self
        return self.map_coefficients(lambda c: c.subs(values))

    def filter_words(self, keep) -> "NcPoly":
        return NcPoly({w: c for w, c in self.terms.items() if keep(w)})

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for word in self.sorted_words():
            coeff = self.terms[word]
            text = str(coeff)
            if word:
                if coeff.is_one:
                    body, sign = word_text(word), "+"
                elif coeff == -ONE:
                    body, sign = word_text(word), "-"
                else:
                    single = " " not in text
                    if single and text.startswith("-"):
                        body, sign = f"{text[1:]}·{word_text(word)}", "-"
                    else:
                        body, sign = (f"{text}·" if single else f"({text})·") + word_text(word), "+"
            else:
                sign = "-" if text.startswith("-") and " " not in text else "+"
                body = text[1:] if sign == "-" else (text if " " not in text else f"({text})")
            if not out:
                out.append(body if sign == "+" else f"-{body}")
            else:
                out.append(f"{sign} {body}")
        return " ".join(out)

    def __repr__(self):
        return f"NcPoly({self})"


def _accumulate(target: Terms, source: Mapping[Word, Scalar], factor: Scalar):
    for w, c in source.items():
        value = target.get(w, ZERO) + (c if factor.is_one else factor * c)
        if value:
            target[w] = value
        else:
            target.pop(w, None)


def gens(*names: str) -> List[NcPoly]:
    return [NcPoly.gen(n) for n in names]


# --- matrices of noncommuting entries ---------------------------------------

class NcMatrix:
    """Square matrix of NcPoly entries; ExactMatrix factors multiply as constants."""

    def __init__(self, rows: Sequence[Sequence[Union[NcPoly, Scalar, int]]]):
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ShapeError("NcMatrix must be square")
        self.n = n
        self.rows: List[List[NcPoly]] = [
            [e if isinstance(e, NcPoly) else NcPoly.const(e) for e in row] for row in rows
        ]

    @classmethod
    def from_exact(cls, m: ExactMatrix) -> "NcMatrix":
        if not m.is_square:
            raise ShapeError("NcMatrix must be square")
        return cls([[NcPoly.const(m[i, j]) for j in range(m.cols)] for i in range(m.rows)])

    @classmethod
    def sector(cls, sector: Union[Sector, str]) -> "NcMatrix":
        """The 2x2 generator matrix of a sector (K = [[α,β],[γ,δ]], Y = [[∂α,∂γ],[∂β,∂δ]])."""
        sector = Sector(sector)
        rows = [[NcPoly(), NcPoly()], [NcPoly(), NcPoly()]]
        for g in ALPHABET:
            if g.sector == sector:
                rows[g.row - 1][g.col - 1] = NcPoly({(g.index,): ONE})
        return cls(rows)

    def __getitem__(self, key: Tuple[int, int]) -> NcPoly:
        i, j = key
        return self.rows[i][j]

    def entries(self) -> List[NcPoly]:
        return [e for row in self.rows for e in row]

    def _coerce(self, other) -> "NcMatrix":
        if isinstance(other, NcMatrix):
            out = other
        elif isinstance(other, ExactMatrix):
            out = NcMatrix.from_exact(other)
        else:
            raise TypeError(f"cannot combine NcMatrix with {type(other).__name__}")
        if out.n != self.n:
            raise ShapeError(f"size mismatch {self.n} vs {out.n}")
        return out

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if other.rows != self.n:
                raise ShapeError(f"size mismatch {self.n} vs {other.rows}")
            return NcMatrix([
                [_dot_right(self.rows[i], other, j) for j in range(other.cols)]
                for i in range(self.n)
            ])
        other = self._coerce(other)
        return NcMatrix([
            [_sum(self.rows[i][k] * other.rows[k][j] for k in range(self.n)) for j in range(self.n)]
            for i in range(self.n)
        ])

    def __rmatmul__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if other.cols != self.n:
            raise ShapeError(f"size mismatch {other.cols} vs {self.n}")
        return NcMatrix([
            [_dot_left(other, i, self.rows, j) for j in range(self.n)]
            for i in range(other.rows)
        ])

    def __add__(self, other):
        other = self._coerce(other)
        return NcMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        other = self._coerce(other)
        return NcMatrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        return NcMatrix([[-a for a in row] for row in self.rows])

    def scale(self, s) -> "NcMatrix":
        return NcMatrix([[a.scale(s) for a in row] for row in self.rows])

    def map(self, fn) -> "NcMatrix":
        return NcMatrix([[fn(a) for a in row] for row in self.rows])

    def transpose(self) -> "NcMatrix":
        return NcMatrix([[self.rows[j][i] for j in range(self.n)] for i in range(self.n)])

    def trace(self) -> NcPoly:
        return _sum(self.rows[i][i] for i in range(self.n))

    def leg1(self) -> "NcMatrix":
        """X ⊗ I_2."""
        return self._kron_identity(first=True)

    def leg2(self) -> "NcMatrix":
        """I_2 ⊗ X."""
        return self._kron_identity(first=False)

    def _kron_identity(self, first: bool) -> "NcMatrix":
        n = self.n
        size = 2 * n
        rows = [[NcPoly() for _ in range(size)] for _ in range(size)]
        if first:
            for i, j, k in product(range(n), range(n), range(2)):
                rows[i * 2 + k][j * 2 + k] = self.rows[i][j]
        else:
            for k, i, j in product(range(2), range(n), range(n)):
                rows[k * n + i][k * n + j] = self.rows[i][j]
        return NcMatrix(rows)

    def __eq__(self, other):
        if not isinstance(other, NcMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __str__(self):
        return "\n".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.rows)


def _sum(items: Iterable[NcPoly]) -> NcPoly:
    terms: Terms = {}
    for p in items:
        _accumulate(terms, p.terms, ONE)
    return NcPoly(terms)


def _dot_right(row: List[NcPoly], m: ExactMatrix, j: int) -> NcPoly:
    terms: Terms = {}
    for k, p in enumerate(row):
        c = m[k, j]
        if c and p:
            _accumulate(terms, p.terms, c)
    return NcPoly(terms)


def _dot_left(m: ExactMatrix, i: int, rows: List[List[NcPoly]], j: int) -> NcPoly:
    terms: Terms = {}
    for k in range(m.cols):
        c = m[i, k]
        p = rows[k][j]
        if c and p:
            _accumulate(terms, p.terms, c)
    return NcPoly(terms)


# --- relation templates -------------------------------------------------------

class Template(str, Enum):
    FRT = "frt"
    REFLECTION_CONTRAVARIANT = "reflection_contravariant"
    REFLECTION_COVARIANT = "reflection_covariant"
    REFLECTION_MIXED_INHOMOGENEOUS = "reflection_mixed_inhomogeneous"
    FORMS_MIXED = "forms_mixed"
    FORMS_FORMS = "forms_forms"
    MOMENTA_MIXED_K = "momenta_mixed_K"
    MOMENTA_MIXED_Y = "momenta_mixed_Y"


# number of R-matrix inputs and of sector roles per template
TEMPLATE_ARITY = {
    Template.FRT: (1, 1),
    Template.REFLECTION_CONTRAVARIANT: (4, 1),
    Template.REFLECTION_COVARIANT: (4, 1),
    Template.REFLECTION_MIXED_INHOMOGENEOUS: (4, 2),
    Template.FORMS_MIXED: (4, 2),
    Template.FORMS_FORMS: (4, 1),
    Template.MOMENTA_MIXED_K: (4, 2),
    Template.MOMENTA_MIXED_Y: (4, 2),
}


def equation_matrix(
    template: Union[Template, str],
    matrices: Sequence[ExactMatrix],
    sectors: Sequence[Union[Sector, str]],
) -> NcMatrix:
    """LHS - RHS of a template equation as a 4x4 matrix of polynomials."""
    try:
        template = Template(template)
    except ValueError:
        raise UnknownNameError("template", str(template), [t.value for t in Template])
    n_mats, n_sectors = TEMPLATE_ARITY[template]
    if len(matrices) != n_mats:
        raise ShapeError(f"template {template.value} takes {n_mats} matrices, got {len(matrices)}")
    if len(sectors) != n_sectors:
        raise ShapeError(f"template {template.value} takes {n_sectors} sectors, got {len(sectors)}")
    for m in matrices:
        if m.shape != (4, 4):
            raise ShapeError(f"template matrices must be 4x4, got {m.rows}x{m.cols}")

    x = NcMatrix.sector(sectors[0])
    x1, x2 = x.leg1(), x.leg2()
    if template == Template.FRT:
        (r,) = matrices
        return r @ x1 @ x2 - x2 @ x1 @ r

    r1, r2, r3, r4 = matrices
    if template == Template.REFLECTION_CONTRAVARIANT:
        return r1 @ x1 @ r2 @ x2 - x2 @ r3 @ x1 @ r4
    if template == Template.REFLECTION_COVARIANT:
        return r4 @ x2 @ r2.inverse() @ x1 - x1 @ r3.inverse() @ x2 @ r1
    if template == Template.FORMS_FORMS:
        return r1 @ x1 @ r2 @ x2 + x2 @ r3 @ x1 @ r4

    y = NcMatrix.sector(sectors[1])
    y1, y2 = y.leg1(), y.leg2()
    if template == Template.REFLECTION_MIXED_INHOMOGENEOUS:
        return y2 @ r1 @ x1 @ r2 - r3 @ x1 @ r4 @ y2 - (r3 @ permutation(2))
    if template == Template.FORMS_MIXED:
        # x is K and y is dK: R1 dK1 R2 K2 = K2 R3 dK1 R4
        return r1 @ y1 @ r2 @ x2 - x2 @ r3 @ y1 @ r4
    if template == Template.MOMENTA_MIXED_K:
        return y2 @ r1 @ x1 @ r2 - r3 @ x1 @ r4 @ y2
    # MOMENTA_MIXED_Y: x is Y and y is P
    return r4 @ x2 @ r2.inverse() @ y1 - y1 @ r3.inverse() @ x2 @ r1


def independent_relators(relators: Iterable[NcPoly]) -> List[NcPoly]:
    """Reduced row echelon form of the relators over Scalar, words ordered descending."""
    rows = [dict(p.terms) for p in relators if p]
    words = sorted({w for row in rows for w in row}, key=order_key, reverse=True)
    basis: List[Terms] = []
    for word in words:
        pivot = next((row for row in rows if row.get(word)), None)
        if pivot is None:
            continue
        rows.remove(pivot)
        inv = pivot[word].inverse()
        pivot = {w: c * inv for w, c in pivot.items()}
        for others in (rows, basis):
            for idx, row in enumerate(others):
                factor = row.get(word)
                if factor:
                    updated = dict(row)
                    _accumulate(updated, pivot, -factor)
                    others[idx] = updated
        rows = [row for row in rows if row]
        basis.append(pivot)
    return [NcPoly(row) for row in basis]


def relations_from_equation(
    template: Union[Template, str],
    matrices: Sequence[ExactMatrix],
    sectors: Sequence[Union[Sector, str]],
) -> List[NcPoly]:
    """
    Expand a matrix equation entry by entry into an independent set of relators.

    Args:
        template: shape of the equation (see Template)
        matrices: R-matrix inputs, [R] for frt and [R1, R2, R3, R4] otherwise
        sectors: generator sectors filling the template roles

    Returns:
        relators in reduced echelon form, each monic in its leading word
    """
    eq = equation_matrix(template, matrices, sectors)
    relators = [p for p in eq.entries() if p]
    logger.debug(f"{Template(template).value}: {len(relators)} nonzero entries")
    return independent_relators(relators)


# --- rewriting ------------------------------------------------------------------

class RewriteSystem:
    """Oriented quadratic rules; left sides are words of length two."""

    def __init__(
        self,
        rules: Mapping[Tuple[int, int], NcPoly],
        generators: Optional[GeneratorSet] = None,
        depth_factor: Optional[int] = None,
    ):
        self.rules: Dict[Tuple[int, int], Terms] = {lhs: dict(rhs.terms) for lhs, rhs in rules.items()}
        self.generators = generators
        self.depth_factor = config.REWRITE_DEPTH_FACTOR if depth_factor is None else depth_factor
        self._memo: Dict[Tuple[Word, int], Terms] = {}

    def __len__(self):
        return len(self.rules)

    def rule_polys(self) -> List[NcPoly]:
        """Each rule L -> R as the relator L - R."""
        out = []
        for lhs, rhs in sorted(self.rules.items(), key=lambda item: order_key(item[0]), reverse=True):
            terms = {w: -c for w, c in rhs.items()}
            terms[lhs] = terms.get(lhs, ZERO) + ONE
            out.append(NcPoly(terms))
        return out

    def rule_text(self) -> List[str]:
        return [
            f"{word_text(lhs)} -> {NcPoly(rhs)}"
            for lhs, rhs in sorted(self.rules.items(), key=lambda item: order_key(item[0]))
        ]

    def budget(self, length: int) -> int:
        return self.depth_factor * max(length, 2) ** 2

    def _insert(self, prefix: Word, letter: int, depth: int, budget: int, origin: Word) -> Terms:
        """Normal form of prefix·letter for a prefix already in normal form."""
        rhs = self.rules.get((prefix[-1], letter)) if prefix else None
        if rhs is None:
            return {prefix + (letter,): ONE}
        key = (prefix, letter)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        if depth > budget:
            raise RewriteDepthError(word_text(origin), budget)
        head = prefix[:-1]
        result: Terms = {}
        for word, coeff in rhs.items():
            _accumulate(result, self._insert_word(head, word, depth + 1, budget, origin), coeff)
        self._memo[key] = result
        return result

    def _insert_word(self, prefix: Word, word: Word, depth: int, budget: int, origin: Word) -> Terms:
        current: Terms = {prefix: ONE}
        for letter in word:
            nxt: Terms = {}
            for w, c in current.items():
                _accumulate(nxt, self._insert(w, letter, depth, budget, origin), c)
            current = nxt
            if not current:
                break
        return current

    def reduce_word(self, word: Word) -> Terms:
        budget = self.budget(len(word))
        try:
            return self._insert_word((), word, 0, budget, word)
        except RecursionError:
            raise RewriteDepthError(word_text(word), budget)

    def normal_form(self, p: NcPoly) -> NcPoly:
        terms: Terms = {}
        for word, coeff in p.terms.items():
            _accumulate(terms, self.reduce_word(word), coeff)
        return NcPoly(terms)

    def is_normal(self, word: Word) -> bool:
        return all((word[i], word[i + 1]) not in self.rules for i in range(len(word) - 1))

    def merged(self, other: "RewriteSystem") -> "RewriteSystem":
        rules = {lhs: NcPoly(rhs) for lhs, rhs in self.rules.items()}
        for lhs, rhs in other.rules.items():
            if lhs in rules and rules[lhs].terms != rhs:
                raise OrientationError(f"conflicting rules for {word_text(lhs)}")
            rules[lhs] = NcPoly(rhs)
        sectors = set()
        for system in (self, other):
            if system.generators is not None:
                sectors.update(system.generators.sectors)
        return RewriteSystem(rules, GeneratorSet(sectors) if sectors else None, self.depth_factor)

    def subs(self, values: Mapping[str, object]) -> "RewriteSystem":
        rules = {lhs: NcPoly(rhs).subs(values) for lhs, rhs in self.rules.items()}
        return RewriteSystem(rules, self.generators, self.depth_factor)


def orient(relators: Iterable[NcPoly], gens: Optional[GeneratorSet] = None) -> RewriteSystem:
    """Solve each relator for its order-largest word, which must have length two."""
    rules: Dict[Tuple[int, int], NcPoly] = {}
    for rel in relators:
        if not rel:
            continue
        lead = rel.leading_word()
        if len(lead) != 2:
            raise OrientationError(f"leading word {word_text(lead)} of {rel} is not quadratic")
        if gens is not None and any(i not in gens for i in lead):
            raise OrientationError(f"relator {rel} uses generators outside {gens}")
        coeff = rel.terms[lead]
        if not coeff:
            raise OrientationError(f"leading coefficient of {rel} is not invertible")
        inv = coeff.inverse()
        rhs = NcPoly({w: -c * inv for w, c in rel.terms.items() if w != lead})
        if lead in rules:
            if rules[lead] != rhs:
                raise OrientationError(
                    f"conflicting rules for {word_text(lead)}: {rules[lead]} vs {rhs}"
                )
            continue
        rules[lead] = rhs
    return RewriteSystem(rules, gens)


def normal_form(p: NcPoly, rs: RewriteSystem) -> NcPoly:
    return rs.normal_form(p)


def ideal_check(rs: RewriteSystem, relators: Iterable[NcPoly], name: str = "ideal") -> CheckReport:
    """Every relator reduces to zero."""
    for rel in relators:
        nf = rs.normal_form(rel)
        if nf:
            return check(name, False, f"{rel} reduces to {nf}")
    return check(name, True)


def is_central(
    p: NcPoly,
    rs: RewriteSystem,
    generators: Optional[Iterable[Generator]] = None,
    name: str = "central",
) -> CheckReport:
    if generators is None:
        if rs.generators is None:
            raise ValueError("no generators to test against")
        generators = rs.generators
    failures = []
    for g in generators:
        x = NcPoly({(g.index,): ONE})
        nf = rs.normal_form(x * p - p * x)
        if nf:
            failures.append((len(nf.terms), len(str(nf)), g.index, g.name, nf))
    if not failures:
        return check(name, True)
    # shortest commutator
    *_, g_name, nf = min(failures, key=lambda f: f[:3])
    return check(name, False, f"[{g_name}, {p}] = {nf}")


def star(p: NcPoly) -> NcPoly:
    """Antilinear antihomomorphism fixed by the generator star images."""
    terms: Terms = {}
    for word, coeff in p.terms.items():
        sign = 1
        image = []
        for i in reversed(word):
            if i not in STAR_IMAGE:
                raise StarError(f"generator {ALPHABET[i].name} has no star image")
            j, s = STAR_IMAGE[i]
            image.append(j)
            sign *= s
        c = coeff.conjugate()
        _accumulate(terms, {tuple(image): c if sign > 0 else -c}, ONE)
    return NcPoly(terms)


def star_closure_check(rs: RewriteSystem, relators: Iterable[NcPoly], name: str = "star-closure") -> CheckReport:
    for rel in relators:
        nf = rs.normal_form(star(rel))
        if nf:
            return check(name, False, f"star({rel}) reduces to {nf}")
    return check(name, True)


def confluence_check(rs: RewriteSystem, degree: int = 3, name: str = "confluence") -> CheckReport:
    """Resolve every overlap xyz of two left sides xy, yz both ways."""
    if degree != 3:
        raise ValueError("quadratic rules only have overlaps of length 3")
    by_first: Dict[int, List[Tuple[int, int]]] = {}
    for lhs in rs.rules:
        by_first.setdefault(lhs[0], []).append(lhs)
    overlaps = 0
    for (x, y), rhs_xy in sorted(rs.rules.items()):
        for _, z in sorted(by_first.get(y, ())):
            overlaps += 1
            left = NcPoly(rhs_xy) * NcPoly({(z,): ONE})
            right = NcPoly({(x,): ONE}) * NcPoly(rs.rules[(y, z)])
            diff = rs.normal_form(left) - rs.normal_form(right)
            if diff:
                return check(name, False, f"overlap {word_text((x, y, z))} resolves to {diff}")
    logger.debug(f"Confluence: {overlaps} overlaps resolved")
    return check(name, True)


def exterior_derivative(p: NcPoly) -> NcPoly:
    """Graded derivation with d(K) = dK and d(dK) = 0."""
    terms: Terms = {}
    for word, coeff in p.terms.items():
        forms_seen = 0
        for pos, i in enumerate(word):
            sector = ALPHABET[i].sector
            if sector == Sector.K:
                image = word[:pos] + (i + 4,) + word[pos + 1:]
                c = coeff if forms_seen % 2 == 0 else -coeff
                _accumulate(terms, {image: c}, ONE)
            elif sector == Sector.DK:
                forms_seen += 1
            else:
                raise ValueError(f"d is defined on K and dK only, got {ALPHABET[i].name}")
    return NcPoly(terms)


def system_from_template(
    template: Union[Template, str],
    matrices: Sequence[ExactMatrix],
    sectors: Sequence[Union[Sector, str]],
) -> Tuple[List[NcPoly], RewriteSystem]:
    relators = relations_from_equation(template, matrices, sectors)
    return relators, orient(relators, GeneratorSet(sectors))


# --- printed relation tables -----------------------------------------------------

def _comm(x: NcPoly, y: NcPoly) -> NcPoly:
    return x * y - y * x


def xi_gl_h2() -> NcPoly:
    """det_h M = ad - cb - h cd."""
    a, b, c, d = gens("a", "b", "c", "d")
    return a * d - c * b - (c * d).scale(H)


def printed_gl_h2() -> List[NcPoly]:
    a, b, c, d = gens("a", "b", "c", "d")
    xi = xi_gl_h2()
    return [
        _comm(a, b) - (xi - a * a).scale(H),
        _comm(a, c) - (c * c).scale(H),
        _comm(a, d) - (c * d - c * a).scale(H),
        _comm(b, c) - (a * c + c * d).scale(H),
        _comm(b, d) - (d * d - xi).scale(H),
        _comm(c, d) + (c * c).scale(H),
    ]


def printed_minkowski(deformation: int) -> List[NcPoly]:
    al, be, ga, de = gens("α", "β", "γ", "δ")
    h2 = H * H
    if int(deformation) == 1:
        return [
            _comm(al, be) - (-(be * be).scale(H) - (be * de).scale(R) + (de * al).scale(H)
                             - (be * ga).scale(H) + (de * ga).scale(h2)),
            _comm(al, de) - (de * ga - be * de).scale(H),
            _comm(al, ga) - ((ga * ga).scale(H) + (de * ga).scale(R) - (al * de).scale(H)
                             + (be * ga).scale(H) - (be * de).scale(h2)),
            _comm(be, de) - (de * de).scale(H),
            _comm(be, ga) - ((de * ga + de * be).scale(H) + (de * de).scale(R)),
            _comm(ga, de) + (de * de).scale(H),
        ]
    return [
        _comm(al, be) - ((al * de).scale(2 * H) + (be * de).scale(h2)),
        _comm(al, de) - (de * ga - be * de).scale(2 * H),
        _comm(al, ga) - (-(de * ga).scale(h2) - (de * al).scale(2 * H)),
        _comm(be, de) - (de * de).scale(2 * H),
        _comm(be, ga) - (de * de).scale(3 * h2),
        _comm(ga, de) + (de * de).scale(2 * H),
    ]


def check_printed_relations(
    relators: Sequence[NcPoly],
    printed: Sequence[NcPoly],
    name: str = "printed-relations",
) -> CheckReport:
    """The generated and the printed relators span the same ideal."""
    generated = orient(relators)
    forward = ideal_check(generated, printed, "printed-in-generated")
    if not forward.passed:
        return check(name, False, forward.witness)
    try:
        printed_system = orient(independent_relators(printed))
    except HLorentzError as e:
        return check(name, False, f"printed table does not orient: {e}")
    backward = ideal_check(printed_system, relators, "generated-in-printed")
    return check(name, backward.passed, backward.witness)


def gl_h2_system(params: Optional[Mapping[str, object]] = None) -> Tuple[List[NcPoly], RewriteSystem]:
    rh = build(MatrixName.RH, params=params)
    return system_from_template(Template.FRT, [rh], [Sector.M])


def check_inverse_identity(params: Optional[Mapping[str, object]] = None) -> CheckReport:
    """M (eps_h M^t eps_h^-1) = det_h M I_2 in GL_h(2), with det_h M central."""
    _, rs = gl_h2_system(params)
    eps = build(MatrixName.EPS_H, params=params)
    m = NcMatrix.sector(Sector.M)
    xi = xi_gl_h2()
    if params:
        xi = xi.subs(params)
    product_ = (m @ (eps @ m.transpose() @ eps.inverse())).map(rs.normal_form)
    expected = NcMatrix([[rs.normal_form(xi), NcPoly()], [NcPoly(), rs.normal_form(xi)]])
    reports = []
    for i in range(2):
        for j in range(2):
            got, want = product_[i, j], expected[i, j]
            reports.append(check(f"entry-{i + 1}{j + 1}", got == want, f"{got} != {want}"))
    reports.append(is_central(xi, rs, name="xi-central"))
    return combine("inverse-identity", reports)


def gl_h2_check(params: Optional[Mapping[str, object]] = None) -> CheckReport:
    relators, rs = gl_h2_system(params)
    printed = printed_gl_h2()
    if params:
        printed = [p.subs(params) for p in printed]
    return combine("gl-h2", [
        check("relator-count", len(relators) == 6, f"{len(relators)} independent relators"),
        check_printed_relations(relators, printed),
        confluence_check(rs),
        check_inverse_identity(params),
    ])
