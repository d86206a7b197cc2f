"""Sparse multivariate polynomials over the rationals.

A monomial is a tuple of ``(variable, exponent)`` pairs sorted by variable,
with positive exponents only; the constant monomial is ``()``.  This keeps
polynomials in thousands of variables cheap when each involves only a few.
:meth:`MultiPoly.exponents` recovers the dense exponent vector.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from ..exact import format_rational, parse_rational, to_rational

Monomial = tuple[tuple[int, int], ...]

ONE_MONO: Monomial = ()


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_div(a: Monomial, b: Monomial) -> Monomial | None:
    """``a / b`` if ``b`` divides ``a``, else ``None``."""
    if not b:
        return a
    da = dict(a)
    for v, e in b:
        have = da.get(v, 0)
        if have < e:
            return None
        if have == e:
            del da[v]
        else:
            da[v] = have - e
    return tuple(sorted(da.items()))


def mono_divides(b: Monomial, a: Monomial) -> bool:
    if len(b) > len(a):
        return False
    da = dict(a)
    return all(da.get(v, 0) >= e for v, e in b)


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    d = dict(a)
    for v, e in b:
        if d.get(v, 0) < e:
            d[v] = e
    return tuple(sorted(d.items()))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    va = {v for v, _ in a}
    return not any(v in va for v, _ in b)


def mono_degree(a: Monomial) -> int:
    return sum(e for _, e in a)


@lru_cache(maxsize=1 << 18)
def grevlex_key(m: Monomial) -> tuple:
    """Sort key: a larger key is a larger monomial in graded reverse lex order.

    Equal degrees are decided at the largest-index variable where the
    exponents differ; the smaller exponent there wins.
    """
    return (mono_degree(m), tuple((-v, -e) for v, e in reversed(m)))


def _mono_str(m: Monomial, prefix: str) -> str:
    return "*".join(f"{prefix}{v + 1}" + (f"^{e}" if e > 1 else "") for v, e in m)


class MultiPoly:
    """Polynomial in ``nvars`` variables with Fraction coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, object] | None = None):
        self.nvars = nvars
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                q = to_rational(c)
                if q:
                    if m and m[-1][0] >= nvars:
                        raise ValueError(f"variable index {m[-1][0]} outside {nvars} variables")
                    clean[m] = clean.get(m, Fraction(0)) + q
            clean = {m: c for m, c in clean.items() if c}
        self.terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Monomial, Fraction]) -> MultiPoly:
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def constant(cls, nvars: int, c) -> MultiPoly:
        return cls(nvars, {ONE_MONO: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> MultiPoly:
        if not 0 <= i < nvars:
            raise ValueError(f"variable {i} outside {nvars} variables")
        return cls._raw(nvars, {((i, 1),): Fraction(1)})

    @classmethod
    def linear(cls, nvars: int, coeffs: Mapping[int, object], const=0) -> MultiPoly:
        terms: dict[Monomial, object] = {((i, 1),): c for i, c in coeffs.items()}
        terms[ONE_MONO] = const
        return cls(nvars, terms)

    @classmethod
    def from_exponents(cls, nvars: int, terms: Mapping[Sequence[int], object]) -> MultiPoly:
        out = {}
        for exps, c in terms.items():
            if len(exps) != nvars:
                raise ValueError("exponent vector length differs from the number of variables")
            out[tuple((i, e) for i, e in enumerate(exps) if e)] = c
        return cls(nvars, out)

    # -- basic queries --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    @property
    def degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=-1)

    def exponents(self) -> dict[tuple[int, ...], Fraction]:
        """Terms keyed by dense exponent vectors of length ``nvars``."""
        out = {}
        for m, c in self.terms.items():
            vec = [0] * self.nvars
            for v, e in m:
                vec[v] = e
            out[tuple(vec)] = c
        return out

    def variables(self) -> set[int]:
        return {v for m in self.terms for v, _ in m}

    def lead_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        return max(self.terms, key=grevlex_key)

    def lead_coefficient(self) -> Fraction:
        return self.terms[self.lead_monomial()]

    def monic(self) -> MultiPoly:
        if not self.terms:
            return self
        lc = self.lead_coefficient()
        if lc == 1:
            return self
        inv = 1 / lc
        return MultiPoly._raw(self.nvars, {m: c * inv for m, c in self.terms.items()})

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in decreasing grevlex order."""
        return sorted(self.terms.items(), key=lambda mc: grevlex_key(mc[0]), reverse=True)

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other: MultiPoly) -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"variable counts differ: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(self.nvars, other)

    def __add__(self, other) -> MultiPoly:
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            new = out.get(m, 0) + c
            if new:
                out[m] = new
            else:
                out.pop(m, None)
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> MultiPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> MultiPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            c = to_rational(other)
            if not c:
                return MultiPoly._raw(self.nvars, {})
            return MultiPoly._raw(self.nvars, {m: c * v for m, v in self.terms.items()})
        self._check(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                new = out.get(m, 0) + c1 * c2
                if new:
                    out[m] = new
                else:
                    out.pop(m, None)
        return MultiPoly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MultiPoly:
        result = MultiPoly.constant(self.nvars, 1)
        for _ in range(k):
            result = result * self
        return result

    def mul_term(self, mono: Monomial, coeff: Fraction) -> MultiPoly:
        return MultiPoly._raw(self.nvars, {mono_mul(m, mono): c * coeff for m, c in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({ONE_MONO: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def evaluate(self, point: Sequence | Mapping[int, Fraction]) -> Fraction:
        get = point.get if isinstance(point, Mapping) else (lambda v, _d=None: point[v])
        total = Fraction(0)
        for m, c in self.terms.items():
            val = c
            for v, e in m:
                x = get(v, 0)
                if not x:
                    val = 0
                    break
                val *= x**e
            total += val
        return total

    def extend(self, nvars: int) -> MultiPoly:
        """Same polynomial viewed in a ring with more variables."""
        if nvars < self.nvars:
            raise ValueError("cannot shrink the variable count")
        return MultiPoly._raw(nvars, dict(self.terms))

    # -- text ----------------------------------------------------------------

    def to_str(self, prefix: str = "s") -> str:
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = _mono_str(m, prefix)
            if not m:
                txt = format_rational(a)
            elif a == 1:
                txt = body
            else:
                txt = f"{format_rational(a)}*{body}"
            pieces.append((sign, txt))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, txt in pieces[1:]:
            out += f" {sign} {txt}"
        return out

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {self.to_str()!r})"

    @classmethod
    def parse(cls, text: str, nvars: int, prefix: str = "s") -> MultiPoly:
        """Inverse of :meth:`to_str`: ``"3/2*s1^2*s3 - s2 + 1"``."""
        src = text.replace(" ", "")
        if src in ("", "0"):
            return cls(nvars)
        if src[0] not in "+-":
            src = "+" + src
        terms: dict[Monomial, Fraction] = {}
        var_re = re.compile(rf"{re.escape(prefix)}(\d+)(?:\^(\d+))?")
        for sign, body in re.findall(r"([+-])([^+-]+)", src):
            coeff = Fraction(1)
            exps: dict[int, int] = {}
            for factor in body.split("*"):
                m = var_re.fullmatch(factor)
                if m:
                    v = int(m.group(1)) - 1
                    exps[v] = exps.get(v, 0) + int(m.group(2) or 1)
                else:
                    coeff *= parse_rational(factor)
            if sign == "-":
                coeff = -coeff
            mono = tuple(sorted(exps.items()))
            terms[mono] = terms.get(mono, Fraction(0)) + coeff
        return cls(nvars, terms)


def linear_form_product(
    nvars: int, a: Mapping[int, Fraction], b: Mapping[int, Fraction]
) -> dict[Monomial, Fraction]:
    """Terms of the product of two homogeneous linear forms."""
    out: dict[Monomial, Fraction] = {}
    for i, x in a.items():
        for j, y in b.items():
            m = ((i, 2),) if i == j else (((i, 1), (j, 1)) if i < j else ((j, 1), (i, 1)))
            new = out.get(m, 0) + x * y
            if new:
                out[m] = new
            else:
                out.pop(m, None)
    return out


def sum_terms(parts: Iterable[Mapping[Monomial, Fraction]]) -> dict[Monomial, Fraction]:
    out: dict[Monomial, Fraction] = {}
    for part in parts:
        for m, c in part.items():
            new = out.get(m, 0) + c
            if new:
                out[m] = new
            else:
                out.pop(m, None)
    return out
