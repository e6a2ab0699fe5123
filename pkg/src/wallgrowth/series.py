"""Exact univariate polynomials and rational functions over Q.

Everything here uses :class:`fractions.Fraction`; there is no floating point
anywhere. Rational functions are kept in a unique normal form so that equal
functions compare equal structurally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Polynomial:
    """Dense polynomial in z, lowest degree first, no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c) -> Polynomial:
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=1) -> Polynomial:
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial([other])
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    @staticmethod
    def _coerce(x) -> Polynomial:
        return x if isinstance(x, Polynomial) else Polynomial([x])

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> Polynomial:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Polynomial:
        return self._coerce(other) - self

    def __mul__(self, other) -> Polynomial:
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        out = Polynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.coeffs[-1]
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c:
                q = c / lead
                quot[k - dq] = q
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= q * b
        return Polynomial(quot), Polynomial(rem[:dq])

    def __floordiv__(self, other) -> Polynomial:
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other) -> Polynomial:
        return self.divmod(self._coerce(other))[1]

    def monic(self) -> Polynomial:
        if not self.coeffs:
            return self
        lead = self.coeffs[-1]
        return Polynomial(c / lead for c in self.coeffs)

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def low_order(self) -> int:
        """Index of the lowest nonzero coefficient."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        raise ValueError("zero polynomial has no low-order term")

    def content_scaled(self) -> tuple[Fraction, tuple[int, ...]]:
        """Return (c, ints) with self == c * ints and gcd(ints) == 1."""
        if not self.coeffs:
            return Fraction(0), ()
        den = math.lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = math.gcd(*ints)
        return Fraction(g, den), tuple(i // g for i in ints)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd, computed by a primitive remainder sequence over the integers."""
    x = _primitive_ints(a)
    y = _primitive_ints(b)
    while y:
        x, y = y, _primitive_ints_list(_pseudo_rem(x, y))
    return Polynomial(x).monic() if x else Polynomial()


def _primitive_ints(p: Polynomial) -> list[int]:
    return list(p.content_scaled()[1]) if p else []


def _primitive_ints_list(r: list[int]) -> list[int]:
    while r and r[-1] == 0:
        r.pop()
    if not r:
        return r
    g = math.gcd(*r)
    if r[-1] < 0:
        g = -g
    return [c // g for c in r]


def _pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    r = list(a)
    db, lead = len(b) - 1, b[-1]
    while len(r) - 1 >= db:
        c = r[-1]
        if c == 0:
            r.pop()
            continue
        shift = len(r) - 1 - db
        r = [x * lead for x in r]
        for k, bk in enumerate(b):
            r[shift + k] -= c * bk
        r.pop()
    return r


Z = Polynomial([0, 1])
ONE = Polynomial([1])


@dataclass(frozen=True)
class RationalFunction:
    """numerator/denominator in lowest terms.

    Normal form: gcd(num, den) = 1 and the lowest-order nonzero coefficient of
    the denominator equals 1 (in particular it is positive).
    """

    num: Polynomial
    den: Polynomial

    def __init__(self, num, den=None):
        num = Polynomial._coerce(num) if not isinstance(num, Polynomial) else num
        den = ONE if den is None else (den if isinstance(den, Polynomial) else Polynomial._coerce(den))
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            num, den = Polynomial(), ONE
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            scale = den[den.low_order()]
            if scale != 1:
                num = Polynomial(c / scale for c in num.coeffs)
                den = Polynomial(c / scale for c in den.coeffs)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @staticmethod
    def _coerce(x) -> RationalFunction:
        return x if isinstance(x, RationalFunction) else RationalFunction(x)

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def __add__(self, other) -> RationalFunction:
        other = self._coerce(other)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other) -> RationalFunction:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> RationalFunction:
        return self._coerce(other) - self

    def __mul__(self, other) -> RationalFunction:
        other = self._coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> RationalFunction:
        other = self._coerce(other)
        if not other.num:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> RationalFunction:
        return self._coerce(other) / self

    def __repr__(self) -> str:
        return f"RationalFunction({serialize(self)})"

    def __str__(self) -> str:
        return pretty(self)


# -- linear algebra over Q(z) -------------------------------------------------


class SingularMatrixError(ArithmeticError):
    pass


def solve_system(matrix: Sequence[Sequence], rhs: Sequence) -> list[RationalFunction]:
    """Solve ``matrix @ x = rhs`` exactly over the field of rational functions.

    Gaussian elimination on sparse rows, choosing at each column the pivot row
    with the fewest nonzeros (ties by index). The result is checked by
    substitution before it is returned.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise ValueError("solve_system needs a square matrix and matching rhs")
    rows: list[dict[int, RationalFunction]] = []
    for i, row in enumerate(matrix):
        d = {}
        for j, v in enumerate(row):
            v = RationalFunction._coerce(v)
            if v:
                d[j] = v
        rhs_i = RationalFunction._coerce(rhs[i])
        if rhs_i:
            d[n] = rhs_i
        rows.append(d)

    remaining = list(range(n))
    pivots: list[tuple[int, int]] = []
    for col in range(n):
        cands = [r for r in remaining if col in rows[r]]
        if not cands:
            raise SingularMatrixError(f"no pivot in column {col}")
        prow = min(cands, key=lambda r: (len(rows[r]), r))
        remaining.remove(prow)
        pivots.append((prow, col))
        piv = rows[prow][col]
        if piv != RationalFunction(1):
            rows[prow] = {j: v / piv for j, v in rows[prow].items()}
        prow_items = rows[prow]
        for r in range(n):
            if r == prow or col not in rows[r]:
                continue
            factor = rows[r][col]
            target = rows[r]
            for j, v in prow_items.items():
                nv = target.get(j, RationalFunction(0)) - factor * v
                if nv:
                    target[j] = nv
                else:
                    target.pop(j, None)

    x: list[RationalFunction] = [RationalFunction(0)] * n
    for prow, col in pivots:
        x[col] = rows[prow].get(n, RationalFunction(0))

    for i, row in enumerate(matrix):
        acc = RationalFunction(0)
        for j, v in enumerate(row):
            v = RationalFunction._coerce(v)
            if v:
                acc = acc + v * x[j]
        if acc != RationalFunction._coerce(rhs[i]):
            raise ArithmeticError(f"substitution check failed in row {i}")
    return x


def _components(deps: list[list[int]]) -> list[list[int]]:
    """Strongly connected components, each listed after those it depends on (Tarjan)."""
    n = len(deps)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    out: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, k = work.pop()
            if k == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            if k < len(deps[v]):
                work.append((v, k + 1))
                w = deps[v][k]
                if index[w] == -1:
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                out.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return out


def solve_block_triangular(matrix: Sequence[Sequence], rhs: Sequence) -> list[RationalFunction]:
    """Like solve_system, but solves one strongly connected block at a time.

    Unknown i depends on unknown j when matrix[i][j] != 0. Blocks are solved
    in dependency order, so large sparse systems with small cycles never
    build the huge intermediate expressions a global elimination would.
    """
    n = len(matrix)
    coerced = [[RationalFunction._coerce(v) for v in row] for row in matrix]
    deps = [[j for j in range(n) if j != i and coerced[i][j]] for i in range(n)]
    x: list[RationalFunction | None] = [None] * n
    for comp in _components(deps):
        sub_rhs = []
        for i in comp:
            acc = RationalFunction._coerce(rhs[i])
            for j in deps[i]:
                if x[j] is not None:
                    acc = acc - coerced[i][j] * x[j]
            sub_rhs.append(acc)
        sub = [[coerced[i][j] for j in comp] for i in comp]
        for i, v in zip(comp, solve_system(sub, sub_rhs)):
            x[i] = v
    return x


# -- power series -------------------------------------------------------------


def taylor(f: RationalFunction, n: int) -> list[Fraction]:
    """First ``n + 1`` Taylor coefficients of ``f`` at z = 0."""
    q = f.den.coeffs
    if not q or q[0] == 0:
        raise ZeroDivisionError("rational function has a pole at z = 0")
    out: list[Fraction] = []
    for k in range(n + 1):
        acc = f.num[k]
        for j in range(1, min(k, len(q) - 1) + 1):
            acc -= q[j] * out[k - j]
        out.append(acc / q[0])
    return out


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> Polynomial:
    """The n-th cyclotomic polynomial."""
    p = Polynomial.monomial(n) - ONE
    for d in range(1, n):
        if n % d == 0:
            p = p // cyclotomic(d)
    return p


def cyclotomic_factorization(p: Polynomial) -> tuple[Fraction, dict[int, int]]:
    """Split ``p`` as unit * prod cyclotomic(a)**e_a.

    Raises ValueError when a factor is left over, i.e. when some root of ``p``
    is not a root of unity.
    """
    if not p:
        raise ValueError("zero polynomial")
    rest = p
    exps: dict[int, int] = {}
    a = 1
    # phi(a) >= sqrt(a / 2), so no cyclotomic factor of degree <= D has a > 2 D^2.
    bound = 2 * max(rest.degree, 1) ** 2
    while rest.degree > 0 and a <= bound:
        phi = cyclotomic(a)
        if phi.degree <= rest.degree:
            while True:
                q, r = rest.divmod(phi)
                if r:
                    break
                rest = q
                exps[a] = exps.get(a, 0) + 1
        a += 1
    if rest.degree > 0:
        raise ValueError("denominator has a pole that is not a root of unity")
    return rest[0], exps


@dataclass(frozen=True)
class QuasiPolynomial:
    """Closed form: one polynomial in n per residue class modulo ``period``.

    The branch formulas are valid for n >= ``threshold``; smaller n take the
    values listed in ``exceptions``.
    """

    period: int
    branches: tuple[Polynomial, ...]
    threshold: int
    exceptions: tuple[Fraction, ...]

    def __call__(self, n: int) -> Fraction:
        if n < self.threshold:
            return self.exceptions[n]
        return self.branches[n % self.period](n)


def _interpolate(points: Sequence[tuple[int, Fraction]]) -> Polynomial:
    """Lagrange interpolation through integer abscissae."""
    result = Polynomial()
    for i, (xi, yi) in enumerate(points):
        if not yi:
            continue
        term = Polynomial([yi])
        for j, (xj, _) in enumerate(points):
            if j != i:
                term = term * Polynomial([Fraction(-xj, xi - xj), Fraction(1, xi - xj)])
        result = result + term
    return result


def to_quasi_polynomial(f: RationalFunction) -> QuasiPolynomial:
    """Quasi-polynomial closed form of the Taylor coefficients of ``f``."""
    _, exps = cyclotomic_factorization(f.den)
    period = math.lcm(*exps) if exps else 1
    mult = max(exps.values()) if exps else 0
    npoints = max(mult, 1)
    start = max(0, f.num.degree - f.den.degree + 1)
    last = start + (npoints + 3) * period
    coeffs = taylor(f, last)

    branches = []
    for r in range(period):
        first = start + ((r - start) % period)
        pts = [(first + k * period, coeffs[first + k * period]) for k in range(npoints)]
        branches.append(_interpolate(pts))
    for n in range(start, last + 1):
        if branches[n % period](n) != coeffs[n]:
            raise ArithmeticError("quasi-polynomial fit failed verification")

    # coarsen the period when branches repeat
    for d in sorted(k for k in range(1, period) if period % k == 0):
        if all(branches[r] == branches[r % d] for r in range(period)):
            branches = branches[:d]
            period = d
            break

    threshold = start
    while threshold > 0 and branches[(threshold - 1) % period](threshold - 1) == coeffs[threshold - 1]:
        threshold -= 1
    return QuasiPolynomial(period, tuple(branches), threshold, tuple(coeffs[:threshold]))


# -- text formats -------------------------------------------------------------


def _fmt_list(p: Polynomial) -> str:
    return "(" + ", ".join(str(c) for c in (p.coeffs or (Fraction(0),))) + ")"


def serialize(f: RationalFunction) -> str:
    """``(<num coeffs>)/(<den coeffs>)``, lowest degree first."""
    return f"{_fmt_list(f.num)}/{_fmt_list(f.den)}"


def parse(text: str) -> RationalFunction:
    """Inverse of :func:`serialize`."""
    text = text.strip()
    try:
        left, right = text.split(")/(")
        num = [Fraction(t) for t in left.lstrip("(").split(",")]
        den = [Fraction(t) for t in right.rstrip(")").split(",")]
    except ValueError as exc:
        raise ValueError(f"not a serialized rational function: {text!r}") from exc
    return RationalFunction(Polynomial(num), Polynomial(den))


def format_poly(p: Polynomial, var: str = "z", descending: bool = False) -> str:
    """Human-readable polynomial, e.g. ``1 + 4z + z^2``."""
    if not p:
        return "0"
    terms = []
    order = range(p.degree, -1, -1) if descending else range(p.degree + 1)
    for k in order:
        c = p[k]
        if not c:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}{mono}" if mag.denominator == 1 else f"({mag}){mono}"
        terms.append(("-" if c < 0 else "+", body))
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def _cyclo_label(a: int) -> str:
    if a == 1:
        return "1 - z"
    return format_poly(cyclotomic(a))


def pretty(f: RationalFunction) -> str:
    """Render with the numerator expanded and the denominator factored.

    Denominator factors are cyclotomic, written as (1 - z), (1 + z),
    (1 + z + z^2), ...; a content scalar is folded into the numerator.
    """
    try:
        unit, exps = cyclotomic_factorization(f.den)
    except ValueError:
        return f"({format_poly(f.num)}) / ({format_poly(f.den)})"
    # cyclotomic(1) = z - 1, printed as (1 - z): flip the sign per factor
    if exps.get(1, 0) % 2:
        unit = -unit
    num = Polynomial(c / unit for c in f.num.coeffs)
    if not exps:
        return format_poly(num)
    parts = []
    for a in sorted(exps):
        e = exps[a]
        parts.append(f"({_cyclo_label(a)})" + (f"^{e}" if e > 1 else ""))
    return f"({format_poly(num)}) / {''.join(parts)}"


def format_in_n(p: Polynomial) -> str:
    """Render a polynomial in n over a common denominator, e.g. ``(8n+1)/3``."""
    if not p:
        return "0"
    den = math.lcm(*(c.denominator for c in p.coeffs))
    ints = Polynomial(c * den for c in p.coeffs)
    body = format_poly(ints, var="n", descending=True).replace(" ", "")
    if den == 1:
        return body
    if len([c for c in ints.coeffs if c]) > 1:
        body = f"({body})"
    return f"{body}/{den}"


def format_quasi(qp: QuasiPolynomial) -> list[tuple[str, str]]:
    """(condition, value) rows in the style of a piecewise definition."""
    rows = [(f"n={k}", str(v)) for k, v in enumerate(qp.exceptions)]
    cond_tail = f", n>={qp.threshold}" if qp.threshold else ""
    if qp.period == 1:
        rows.append((f"n>={qp.threshold}", format_in_n(qp.branches[0])))
    else:
        for r, b in enumerate(qp.branches):
            rows.append((f"n≡{r} mod {qp.period}{cond_tail}", format_in_n(b)))
    return rows
