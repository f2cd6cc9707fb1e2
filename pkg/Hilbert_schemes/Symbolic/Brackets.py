import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from Hilbert_schemes.Exceptions import ShapeMismatch, UnmappableMinor
from Hilbert_schemes.GradingCore.Gradings import Degree, Exponent

logger = logging.getLogger(__name__)


class VarKind(str, Enum):
    BRACKET = "bracket"
    STIEFEL = "stiefel"
    CHART = "chart"
    TORIC = "toric"
    PARAM = "param"


@dataclass(frozen=True, order=True)
class SymVar:
    """An indexed indeterminate. `key` is a nested integer tuple, or a name for PARAM."""

    kind: VarKind
    key: tuple

    @classmethod
    def bracket(cls, degree: Degree, monomials: Sequence[Exponent]) -> "SymVar":
        return cls(VarKind.BRACKET, (tuple(degree), tuple(tuple(m) for m in monomials)))

    @classmethod
    def stiefel(cls, row: int, monomial: Exponent) -> "SymVar":
        return cls(VarKind.STIEFEL, (row, tuple(monomial)))

    @classmethod
    def chart(cls, x: Exponent, b: Exponent) -> "SymVar":
        return cls(VarKind.CHART, (tuple(x), tuple(b)))

    @classmethod
    def toric(cls, degree: Degree, monomial: Exponent) -> "SymVar":
        return cls(VarKind.TORIC, (tuple(degree), tuple(monomial)))

    @classmethod
    def param(cls, name: str) -> "SymVar":
        return cls(VarKind.PARAM, (name,))

    def label(self) -> str:
        if self.kind == VarKind.BRACKET:
            return "[" + ",".join(monomial_label(m) for m in self.key[1]) + "]"
        if self.kind == VarKind.STIEFEL:
            return f"w{self.key[0]}_{monomial_label(self.key[1])}"
        if self.kind == VarKind.CHART:
            return f"g({monomial_label(self.key[0])}|{monomial_label(self.key[1])})"
        if self.kind == VarKind.TORIC:
            return f"z{list(self.key[0])}_{monomial_label(self.key[1])}"
        return str(self.key[0])

    def to_dict(self) -> dict:
        if self.kind == VarKind.PARAM:
            return {"kind": self.kind.value, "name": self.key[0]}
        return {"kind": self.kind.value, "key": _listify(self.key)}


def _listify(value):
    if isinstance(value, tuple):
        return [_listify(v) for v in value]
    return value


def monomial_label(u: Sequence[int]) -> str:
    names = "xyzw" if len(u) <= 4 else None
    parts = []
    for i, e in enumerate(u):
        if not e:
            continue
        name = names[i] if names else f"x{i + 1}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts) or "1"


# ---------------------------
# Sparse integer polynomials
# ---------------------------
PolyMonomial = Tuple[Tuple[SymVar, int], ...]


def _mono_mul(p: PolyMonomial, q: PolyMonomial) -> PolyMonomial:
    if not p:
        return q
    if not q:
        return p
    powers = dict(p)
    for v, e in q:
        powers[v] = powers.get(v, 0) + e
    return tuple(sorted(powers.items()))


def _mono_key(m: PolyMonomial):
    return sum(e for _, e in m), m


class SparsePoly:
    """Integer polynomial, a map from monomials (sorted (var, exponent) tuples) to coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Mapping[PolyMonomial, int]] = None):
        self.terms: Dict[PolyMonomial, int] = {m: int(c) for m, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def constant(cls, c: int) -> "SparsePoly":
        return cls({(): c})

    @classmethod
    def var(cls, v: SymVar, coeff: int = 1) -> "SparsePoly":
        return cls({((v, 1),): coeff})

    @classmethod
    def zero(cls) -> "SparsePoly":
        return cls()

    @staticmethod
    def _lift(other) -> "SparsePoly":
        return other if isinstance(other, SparsePoly) else SparsePoly.constant(other)

    # arithmetic
    def __add__(self, other) -> "SparsePoly":
        other = self._lift(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return SparsePoly(terms)

    __radd__ = __add__

    def __neg__(self) -> "SparsePoly":
        return SparsePoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "SparsePoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "SparsePoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "SparsePoly":
        other = self._lift(other)
        terms: Dict[PolyMonomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                terms[m] = terms.get(m, 0) + c1 * c2
        return SparsePoly(terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SparsePoly":
        out = SparsePoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparsePoly):
            other = SparsePoly.constant(other)
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    # inspection
    def is_zero(self) -> bool:
        return not self.terms

    def term_count(self) -> int:
        return len(self.terms)

    def degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({sum(e for _, e in m) for m in self.terms}) <= 1

    def variables(self) -> List[SymVar]:
        return sorted({v for m in self.terms for v, _ in m})

    def ordered_terms(self) -> List[Tuple[PolyMonomial, int]]:
        """Graded lex on variable ids, largest first."""
        return sorted(self.terms.items(), key=lambda t: _mono_key(t[0]), reverse=True)

    def leading_coefficient(self) -> int:
        return self.ordered_terms()[0][1] if self.terms else 0

    def sort_key(self):
        return tuple((_mono_key(m), c) for m, c in self.ordered_terms())

    def normalized(self) -> "SparsePoly":
        """Content divided out, positive leading coefficient."""
        if not self.terms:
            return self
        g = 0
        for c in self.terms.values():
            g = _gcd(g, c)
        sign = -1 if self.leading_coefficient() < 0 else 1
        return SparsePoly({m: sign * c // g for m, c in self.terms.items()})

    # evaluation
    def evaluate(self, values: Mapping[SymVar, Union[int, Fraction]]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            term = Fraction(c)
            for v, e in m:
                term *= Fraction(values[v]) ** e
            total += term
        return total

    def substitute(self, values: Mapping[SymVar, Union[int, "SparsePoly"]]) -> "SparsePoly":
        """Replace the listed variables; the others stay symbolic."""
        out = SparsePoly()
        cache: Dict[Tuple[SymVar, int], SparsePoly] = {}
        for m, c in self.terms.items():
            term = SparsePoly.constant(c)
            for v, e in m:
                if v in values:
                    if (v, e) not in cache:
                        cache[(v, e)] = self._lift(values[v]) ** e
                    term = term * cache[(v, e)]
                else:
                    term = term * SparsePoly({((v, e),): 1})
                if term.is_zero():
                    break
            out = out + term
        return out

    def to_dict(self, index: Mapping[SymVar, int]) -> dict:
        return {"terms": [{"coeff": str(c), "monomial": [[index[v], e] for v, e in m]}
                          for m, c in self.ordered_terms()]}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.ordered_terms():
            body = "*".join(v.label() if e == 1 else f"{v.label()}^{e}" for v, e in m)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def _gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def permutation_sign(seq: Sequence) -> int:
    """Sign of the permutation sorting seq ascending; 0 on repeats."""
    if len(set(seq)) < len(seq):
        return 0
    sign = 1
    items = list(seq)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                sign = -sign
    return sign


def bracket(monomials: Sequence[Exponent], degree: Degree) -> SparsePoly:
    """The Pluecker coordinate [m1,...,mh] in canonical (lex, largest first) order.

    Repeated entries give zero, the empty bracket is 1.
    """
    monomials = [tuple(m) for m in monomials]
    if not monomials:
        return SparsePoly.constant(1)
    # canonical order is descending, so the sign is that of the reversed sort
    sign = permutation_sign([tuple(-e for e in m) for m in monomials])
    if sign == 0:
        return SparsePoly.zero()
    ordered = tuple(sorted(monomials, reverse=True))
    return SparsePoly.var(SymVar.bracket(degree, ordered), sign)


# ---------------------------
# Symbolic matrices
# ---------------------------
class SymMatrix:
    """Dense grid of SparsePoly entries with optional row blocks and a minor cache."""

    def __init__(self, entries: List[List[SparsePoly]], ncols: Optional[int] = None,
                 blocks: Optional[Sequence[int]] = None, column_labels: Optional[Sequence] = None):
        self.entries = entries
        self.nrows = len(entries)
        self.ncols = ncols if ncols is not None else (len(entries[0]) if entries else 0)
        if any(len(row) != self.ncols for row in entries):
            raise ShapeMismatch("ragged matrix rows")
        if blocks is not None and sum(blocks) != self.nrows:
            raise ShapeMismatch("row blocks do not add up to the row count", blocks=blocks, rows=self.nrows)
        self.blocks = tuple(blocks) if blocks is not None else None
        self.column_labels = list(column_labels) if column_labels is not None else None
        self._minors: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], SparsePoly] = {}

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def column(self, j: int, rows: Optional[Iterable[int]] = None) -> Tuple[SparsePoly, ...]:
        rows = range(self.nrows) if rows is None else rows
        return tuple(self.entries[i][j] for i in rows)

    def block_rows(self, b: int) -> range:
        start = sum(self.blocks[:b])
        return range(start, start + self.blocks[b])

    def hstack(self, other: "SymMatrix") -> "SymMatrix":
        if self.nrows != other.nrows:
            raise ShapeMismatch("cannot concatenate matrices with different row counts")
        labels = None
        if self.column_labels is not None and other.column_labels is not None:
            labels = self.column_labels + other.column_labels
        return SymMatrix([a + b for a, b in zip(self.entries, other.entries)], self.ncols + other.ncols,
                         self.blocks, labels)

    def evaluate(self, values: Mapping[SymVar, Union[int, Fraction]]) -> List[List[Fraction]]:
        return [[e.evaluate(values) for e in row] for row in self.entries]

    def _det(self, rows: Tuple[int, ...], cols: Tuple[int, ...]) -> SparsePoly:
        if not rows:
            return SparsePoly.constant(1)
        key = (rows, cols)
        cached = self._minors.get(key)
        if cached is not None:
            return cached
        # expand along the sparsest row
        pivot = min(rows, key=lambda r: sum(1 for c in cols if self.entries[r][c]))
        rest = tuple(r for r in rows if r != pivot)
        sign0 = -1 if rows.index(pivot) % 2 else 1
        total = SparsePoly()
        for j, c in enumerate(cols):
            entry = self.entries[pivot][c]
            if entry.is_zero():
                continue
            sub = self._det(rest, cols[:j] + cols[j + 1:])
            if sub.is_zero():
                continue
            term = entry * sub
            total = total + (term if (sign0 * (-1 if j % 2 else 1)) > 0 else -term)
        self._minors[key] = total
        return total


def minor(M: SymMatrix, rows: Sequence[int], cols: Sequence[int]) -> SparsePoly:
    """Determinant of M[rows, cols] in the given row and column order."""
    if len(rows) != len(cols):
        raise ShapeMismatch(f"minor needs as many rows as columns, got {len(rows)} and {len(cols)}")
    sign = permutation_sign(rows) * permutation_sign(cols)
    if sign == 0:
        return SparsePoly.zero()
    value = M._det(tuple(sorted(rows)), tuple(sorted(cols)))
    return value if sign > 0 else -value


# ---------------------------
# Block Laplace expansion into brackets
# ---------------------------
class StiefelBracketMap:
    """Maximal minors of a Stiefel matrix Omega as signed brackets of the complementary monomials.

    det Omega[:, X'] = sign(X' followed by B) * [B], where B is the complement of X'
    in the column monomials, both in canonical order.
    """

    def __init__(self, omega: SymMatrix, monomials: Sequence[Exponent], degree: Degree):
        if omega.ncols != len(monomials):
            raise ShapeMismatch("one monomial per Stiefel column is required")
        self.omega = omega
        self.monomials = [tuple(m) for m in monomials]
        self.degree = tuple(degree)
        self._by_column = {omega.column(j): j for j in range(omega.ncols)}

    def column_index(self, entries: Tuple[SparsePoly, ...]) -> Optional[int]:
        """The Omega column a block column copies, None for a zero column."""
        if all(e.is_zero() for e in entries):
            return None
        index = self._by_column.get(tuple(entries))
        if index is None:
            raise UnmappableMinor("block column is not a column of the Stiefel matrix")
        return index

    def block_minor(self, indices: Sequence[int]) -> SparsePoly:
        """det Omega[:, indices] with the columns in the given order."""
        if len(indices) != self.omega.nrows:
            raise UnmappableMinor("block minor is not maximal", size=len(indices), rows=self.omega.nrows)
        sign = permutation_sign(indices)
        if sign == 0:
            return SparsePoly.zero()
        chosen = sorted(indices)
        complement = [j for j in range(len(self.monomials)) if j not in set(chosen)]
        sign *= permutation_sign(chosen + complement)
        value = bracket([self.monomials[j] for j in complement], self.degree)
        return value if sign > 0 else -value


def block_laplace(M: SymMatrix, cols: Sequence[int], bracket_map: StiefelBracketMap) -> SparsePoly:
    """Maximal minor of M on cols, written in brackets by Laplace expansion along the row blocks."""
    if M.blocks is None:
        raise ShapeMismatch("block Laplace expansion needs row blocks")
    if len(cols) != M.nrows:
        raise ShapeMismatch(f"expected {M.nrows} columns, got {len(cols)}")
    nblocks = len(M.blocks)
    # identification of every selected column inside every block
    ident = [[bracket_map.column_index(M.column(c, M.block_rows(b))) for c in cols] for b in range(nblocks)]
    total = SparsePoly()
    memo: Dict[Tuple[int, Tuple[int, ...]], SparsePoly] = {}

    def block_value(b, positions):
        key = (b, positions)
        if key not in memo:
            memo[key] = bracket_map.block_minor([ident[b][p] for p in positions])
        return memo[key]

    def distribute(b, remaining, order, product):
        nonlocal total
        if b == nblocks:
            sign = permutation_sign(order)
            total = total + (product if sign > 0 else -product)
            return
        usable = [p for p in remaining if ident[b][p] is not None]
        for chosen in itertools.combinations(usable, M.blocks[b]):
            value = block_value(b, chosen)
            if value.is_zero():
                continue
            left = tuple(p for p in remaining if p not in chosen)
            distribute(b + 1, left, order + chosen, product * value)

    distribute(0, tuple(range(len(cols))), (), SparsePoly.constant(1))
    return total
