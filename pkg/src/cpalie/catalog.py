"""Named Lie algebras.

Python access goes through :func:`catalog` (name plus parameters); the CLI
uses compact string identifiers handled by :func:`resolve`, for example
``h3``, ``n5``, ``g_6_14``, ``F_2_4``, ``hall_F_3_3``, ``abelian_2`` and
direct sums such as ``h3+abelian_1``.
"""

from __future__ import annotations

import re
from functools import lru_cache

from .freelie import build_free_nilpotent
from .liealg import LieAlgebraTable, abelian, direct_sum, table_from_rules


class UnknownAlgebraError(KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown algebra"


def heisenberg(m: int = 1) -> LieAlgebraTable:
    """h_{2m+1}: ``[x_i, y_i] = z``; basis ``x_1..x_m, y_1..y_m, z``."""
    if m < 1:
        raise ValueError("heisenberg needs m >= 1")
    dim = 2 * m + 1
    rules = [(i, m + i, {dim: 1}) for i in range(1, m + 1)]
    if m == 1:
        names = ["x", "y", "z"]
    else:
        names = [f"x{i}" for i in range(1, m + 1)] + [f"y{i}" for i in range(1, m + 1)] + ["z"]
    free = (2, 2) if m == 1 else None
    return table_from_rules(dim, rules, names, name=f"h{dim}", free_type=free)


def filiform(n: int) -> LieAlgebraTable:
    """Model filiform algebra n_n: ``[x_1, x_i] = x_{i+1}`` for ``2 <= i <= n-1``."""
    if n < 3:
        raise ValueError("filiform algebras need n >= 3")
    rules = [(1, i, {i + 1: 1}) for i in range(2, n)]
    return table_from_rules(n, rules, [f"x{i}" for i in range(1, n + 1)], name=f"n{n}")


def g_6_14() -> LieAlgebraTable:
    """``[x_1, x_i] = x_{i+1}`` for ``2 <= i <= 4`` and ``[x_2, x_3] = x_6``."""
    rules = [(1, 2, {3: 1}), (1, 3, {4: 1}), (1, 4, {5: 1}), (2, 3, {6: 1})]
    return table_from_rules(6, rules, [f"x{i}" for i in range(1, 7)], name="g_6_14")


def _hall_f23() -> LieAlgebraTable:
    rules = [(1, 2, {3: 1}), (1, 3, {4: 1}), (2, 3, {5: 1})]
    return table_from_rules(
        5, rules, [f"e{i}" for i in range(1, 6)], name="hall_F_2_3", free_type=(2, 3)
    )


def _hall_f32() -> LieAlgebraTable:
    rules = [(1, 2, {4: 1}), (1, 3, {5: 1}), (2, 3, {6: 1})]
    return table_from_rules(
        6, rules, [f"e{i}" for i in range(1, 7)], name="hall_F_3_2", free_type=(3, 2)
    )


def _hall_f33() -> LieAlgebraTable:
    rules = [
        (1, 2, {4: 1}), (1, 3, {5: 1}), (1, 4, {7: 1}), (1, 5, {8: 1}),
        (1, 6, {9: 1}), (2, 3, {6: 1}), (2, 4, {10: 1}), (2, 5, {11: 1}),
        (2, 6, {12: 1}), (3, 4, {11: 1, 9: -1}), (3, 5, {13: 1}), (3, 6, {14: 1}),
    ]  # fmt: skip
    return table_from_rules(
        14, rules, [f"x{i}" for i in range(1, 15)], name="hall_F_3_3", free_type=(3, 3)
    )


_HALL_TABLES = {(2, 3): _hall_f23, (3, 2): _hall_f32, (3, 3): _hall_f33}


@lru_cache(maxsize=None)
def catalog(name: str, **params: int) -> LieAlgebraTable:
    """Look up a named algebra.

    Names: ``heisenberg`` (m), ``filiform`` (n), ``g_6_14``, ``F`` (g, c;
    generated Lyndon presentation), ``F_hall`` (g, c in {(2,3), (3,2),
    (3,3)}; hand-written Hall-basis tables), ``abelian`` (n).
    """
    try:
        if name == "heisenberg":
            return heisenberg(params.get("m", 1))
        if name == "filiform":
            return filiform(params["n"])
        if name == "g_6_14":
            return g_6_14()
        if name == "F":
            return build_free_nilpotent(params["g"], params["c"]).table
        if name == "F_hall":
            key = (params["g"], params["c"])
            if key not in _HALL_TABLES:
                raise UnknownAlgebraError(f"no Hall-basis table for F_{{{key[0]},{key[1]}}}")
            return _HALL_TABLES[key]()
        if name == "abelian":
            return abelian(params["n"])
    except KeyError as exc:
        if isinstance(exc, UnknownAlgebraError):
            raise
        raise UnknownAlgebraError(f"missing parameter {exc} for {name!r}") from None
    raise UnknownAlgebraError(f"unknown algebra {name!r}")


_PATTERNS: list[tuple[re.Pattern, callable]] = [
    (re.compile(r"h(\d+)"), lambda d: catalog("heisenberg", m=(int(d) - 1) // 2) if int(d) % 2 else None),
    (re.compile(r"n(\d+)"), lambda n: catalog("filiform", n=int(n))),
    (re.compile(r"g_6_14"), lambda: catalog("g_6_14")),
    (re.compile(r"F_(\d+)_(\d+)"), lambda g, c: catalog("F", g=int(g), c=int(c))),
    (re.compile(r"hall_F_(\d+)_(\d+)"), lambda g, c: catalog("F_hall", g=int(g), c=int(c))),
    (re.compile(r"abelian_(\d+)"), lambda n: catalog("abelian", n=int(n))),
]


def resolve(identifier: str) -> LieAlgebraTable:
    """Parse a CLI identifier into a table."""
    parts = identifier.split("+")
    if len(parts) > 1:
        table = resolve(parts[0])
        for part in parts[1:]:
            table = direct_sum(table, resolve(part))
        return table
    ident = identifier.strip()
    for pattern, make in _PATTERNS:
        m = pattern.fullmatch(ident)
        if m:
            try:
                table = make(*m.groups())
            except ValueError as exc:
                raise UnknownAlgebraError(f"{ident!r}: {exc}") from None
            if table is None:
                raise UnknownAlgebraError(f"{ident!r}: Heisenberg algebras have odd dimension")
            return table
    raise UnknownAlgebraError(f"unknown algebra {identifier!r}")


CATALOG_LIST = [
    ("h<2m+1>", "Heisenberg algebra of dimension 2m+1 (h3 = F_2_2)"),
    ("n<n>", "model filiform algebra [x1,xi] = x(i+1), dimension n >= 3"),
    ("g_6_14", "6-dimensional stem algebra [x1,xi]=x(i+1) (2<=i<=4), [x2,x3]=x6"),
    ("F_<g>_<c>", "free-nilpotent algebra on a Lyndon basis"),
    ("hall_F_2_3", "Hall-basis table of F_{2,3}, basis e1..e5"),
    ("hall_F_3_2", "Hall-basis table of F_{3,2}, basis e1..e6"),
    ("hall_F_3_3", "Hall-basis table of F_{3,3}, basis x1..x14"),
    ("abelian_<n>", "abelian algebra of dimension n"),
    ("<a>+<b>", "direct sum of two entries"),
]


# ---------------------------------------------------------------------------
# named products
# ---------------------------------------------------------------------------


def f23_central_family(alpha=1, beta=0, gamma=0, delta=0, epsilon=0, kappa=0):
    """Central product on ``hall_F_2_3``: generator products in ``span(e4, e5)``.

    ``e1.e1 = alpha e4 + beta e5``, ``e1.e2 = gamma e4 + delta e5``,
    ``e2.e2 = epsilon e4 + kappa e5``; every CPA product on this algebra
    has this form.
    """
    from .cpa import CpaProduct

    t = catalog("F_hall", g=2, c=3)
    return CpaProduct(
        t,
        {(0, 0): {3: alpha, 4: beta}, (0, 1): {3: gamma, 4: delta}, (1, 1): {3: epsilon, 4: kappa}},
    )


def heisenberg_product(alpha=1):
    """``e1.e1 = e2``, ``e1.e2 = alpha e3`` on h3: a complete, non-central CPA product."""
    from .cpa import CpaProduct

    return CpaProduct(catalog("heisenberg", m=1), {(0, 0): {1: 1}, (0, 1): {2: alpha}})


def f32_unbalanced_product():
    """``e1.e1 = e2, e1.e2 = -e5, e1.e5 = e6, e2.e3 = -2 e6`` on ``hall_F_3_2``.

    Symmetric and a derivation in each argument, but the representation
    identity fails at ``(e1, e2, e1)``; kept as a regression input for
    :func:`cpalie.cpa.verify`.
    """
    from .cpa import CpaProduct

    t = catalog("F_hall", g=3, c=2)
    return CpaProduct(t, {(0, 0): {1: 1}, (0, 1): {4: -1}, (0, 4): {5: 1}, (1, 2): {5: -2}})


def f32_moving_center_product():
    """``e1.e1 = e2, e1.e3 = e5, e1.e5 = e6`` on ``hall_F_3_2``: a CPA product with ``g.Z != 0``."""
    from .cpa import CpaProduct

    t = catalog("F_hall", g=3, c=2)
    return CpaProduct(t, {(0, 0): {1: 1}, (0, 2): {4: 1}, (0, 4): {5: 1}})
