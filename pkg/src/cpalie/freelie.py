"""Free-nilpotent Lie algebras F_{g,c} on a Lyndon basis.

Basis elements are Lyndon words over the letters ``1..g`` of length at most
``c``, bracketed by their standard factorization, ordered by degree and then
lexicographically.  Brackets of basis elements are rewritten into the basis
with the Jacobi identity; all coefficients are integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .errors import BudgetExceeded, PreconditionError
from .liealg import LieAlgebraTable

Word = tuple[int, ...]
Tree = Union[int, tuple["Tree", "Tree"]]

DEFAULT_MAX_DIM = 4000


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for positive integers")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def necklace_count(g: int, m: int) -> int:
    """Number of Lyndon words of length ``m`` over ``g`` letters."""
    total = sum(mobius(d) * g ** (m // d) for d in range(1, m + 1) if m % d == 0)
    return total // m


@dataclass(frozen=True)
class WittDimensions:
    per_degree: tuple[int, ...]  # per_degree[m - 1] = I_m(g)
    total: int

    @property
    def center(self) -> int:
        """dim Z(F_{g,c}), the top graded piece."""
        return self.per_degree[-1]


def witt_dimension(g: int, c: int) -> WittDimensions:
    if g < 1 or c < 1:
        raise PreconditionError("need g >= 1 and c >= 1")
    per = tuple(necklace_count(g, m) for m in range(1, c + 1))
    return WittDimensions(per, sum(per))


# ---------------------------------------------------------------------------
# Lyndon words
# ---------------------------------------------------------------------------


def is_lyndon(word: Word) -> bool:
    """Strictly smaller than each of its proper rotations."""
    n = len(word)
    if n == 0:
        return False
    return all(word < word[i:] + word[:i] for i in range(1, n))


def lyndon_words(g: int, max_len: int) -> list[Word]:
    """All Lyndon words of length <= max_len over ``1..g`` in lex order (Duval's generator)."""
    out: list[Word] = []
    w = [0]
    while w:
        w[-1] += 1
        out.append(tuple(x for x in w))
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == g:
            w.pop()
    return out


def standard_factorization(word: Word) -> tuple[Word, Word]:
    """Split ``word = u v`` with ``v`` its longest proper Lyndon suffix."""
    if len(word) < 2:
        raise ValueError("letters have no standard factorization")
    for i in range(1, len(word)):
        if is_lyndon(word[i:]):
            return word[:i], word[i:]
    raise AssertionError("unreachable: the last letter is always Lyndon")


def bracketing(word: Word) -> Tree:
    if len(word) == 1:
        return word[0]
    u, v = standard_factorization(word)
    return (bracketing(u), bracketing(v))


def tree_label(tree: Tree) -> str:
    if isinstance(tree, int):
        return str(tree)
    return f"[{tree_label(tree[0])},{tree_label(tree[1])}]"


@dataclass(frozen=True)
class LyndonElement:
    word: Word
    basis_index: int  # 0-based position in the ordered basis
    bracketing: Tree = field(compare=False)

    @property
    def degree(self) -> int:
        return len(self.word)

    @property
    def label(self) -> str:
        if self.degree == 1:
            return f"x{self.word[0]}"
        return "x" + tree_label(self.bracketing)


# ---------------------------------------------------------------------------
# presentation
# ---------------------------------------------------------------------------


class _Rewriter:
    """Expresses brackets of Lyndon words in the Lyndon basis, truncated at ``cls``."""

    def __init__(self, cls: int):
        self.cls = cls
        self._memo: dict[tuple[Word, Word], dict[Word, int]] = {}
        self._factor: dict[Word, tuple[Word, Word]] = {}

    def factor(self, w: Word) -> tuple[Word, Word]:
        f = self._factor.get(w)
        if f is None:
            f = self._factor[w] = standard_factorization(w)
        return f

    def bracket(self, u: Word, v: Word) -> dict[Word, int]:
        if u == v or len(u) + len(v) > self.cls:
            return {}
        if u > v:
            return {w: -c for w, c in self.bracket(v, u).items()}
        key = (u, v)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if len(u) == 1 or self.factor(u)[1] >= v:
            result = {u + v: 1}
        else:
            # [[a, b], v] = [a, [b, v]] - [b, [a, v]]
            a, b = self.factor(u)
            result: dict[Word, int] = {}
            for w, c in self.bracket(b, v).items():
                _add(result, c, self.bracket(a, w))
            for w, c in self.bracket(a, v).items():
                _add(result, -c, self.bracket(b, w))
        self._memo[key] = result
        return result


def _add(target: dict, coeff: int, source: dict) -> None:
    for k, v in source.items():
        new = target.get(k, 0) + coeff * v
        if new:
            target[k] = new
        else:
            target.pop(k, None)


@dataclass(frozen=True, eq=False)
class FreeNilpotentPresentation:
    generators: int
    cls: int
    basis: tuple[LyndonElement, ...]
    table: LieAlgebraTable
    _rewriter: _Rewriter = field(repr=False)
    _index: dict[Word, int] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index_of(self, word: Word) -> int:
        return self._index[tuple(word)]

    def degree_block(self, degree: int) -> list[int]:
        return [el.basis_index for el in self.basis if el.degree == degree]

    @property
    def center_indices(self) -> list[int]:
        return self.degree_block(self.cls)

    def normalize_bracket(self, i: int, j: int) -> dict[int, int]:
        """``[b_i, b_j]`` in the basis, as ``{index: integer coefficient}``."""
        return normalize_bracket(self, i, j)


def normalize_bracket(p: FreeNilpotentPresentation, i: int, j: int) -> dict[int, int]:
    n = p.dim
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"basis index out of range 0..{n - 1}")
    index = p._index
    combo = p._rewriter.bracket(p.basis[i].word, p.basis[j].word)
    return {index[w]: c for w, c in sorted(combo.items(), key=lambda kv: index[kv[0]])}


def build_free_nilpotent(
    g: int, c: int, *, max_dim: int = DEFAULT_MAX_DIM, validate: bool = True
) -> FreeNilpotentPresentation:
    """F_{g,c} with its Lyndon basis and bracket table."""
    if g < 2 or c < 1:
        raise PreconditionError("need g >= 2 generators and class c >= 1")
    expected = witt_dimension(g, c).total
    if expected > max_dim:
        raise BudgetExceeded(
            f"F_{{{g},{c}}} has dimension {expected}, above the budget of {max_dim}",
            dimension=expected,
        )
    words = sorted(lyndon_words(g, c), key=lambda w: (len(w), w))
    basis = tuple(LyndonElement(w, idx, bracketing(w)) for idx, w in enumerate(words))
    index = {el.word: el.basis_index for el in basis}
    rw = _Rewriter(c)
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for a in basis:
        for b in basis[a.basis_index + 1 :]:
            if a.degree + b.degree > c:
                continue
            combo = rw.bracket(a.word, b.word)
            if combo:
                brackets[(a.basis_index, b.basis_index)] = {index[w]: Fraction(v) for w, v in combo.items()}
    names = [el.label for el in basis]
    table = LieAlgebraTable(
        len(basis), brackets, names, name=f"F_{g}_{c}", free_type=(g, c), validate=validate
    )
    return FreeNilpotentPresentation(g, c, basis, table, rw, index)
