"""Sparse multivariate polynomials over Q and Q(i).

A polynomial is a dict from exponent tuples to nonzero coefficients, together
with an ordered tuple of variable names. Coefficients are Fractions or
GaussianRationals (see scalars); the two mix freely. At most four variables
ever appear in this project (x0, x1, y0, y1), and the general-purpose gcd is
limited to three, which is all the chart computations need.

Conventions fixed here and relied on by everything downstream:

* Term order for display and for "leading coefficient" is graded
  lexicographic with the declared variable order; bases elsewhere choose
  their own orders via the key functions below.
* gcd results are monic (leading coefficient 1 under grlex).
* resultant(a, b, var) is the determinant of the Sylvester matrix whose rows
  are a's coefficient rows first, coefficients written in ascending powers of
  var. With this layout resultant(z - a, z - b, z) == b - a.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from typing import Callable, Iterable, Mapping

from .scalars import (
    GaussianRational,
    Scalar,
    format_scalar,
    scalar_inverse,
    scalar_is_zero,
)


class PolynomialError(ValueError):
    pass


class NotDivisibleError(PolynomialError):
    pass


class ZeroPolynomialError(PolynomialError):
    pass


Exponent = tuple  # tuple[int, ...]
OrderKey = Callable[[Exponent], object]


# === Term orders (keys for max()) ===


def lex_key(e: Exponent):
    return e


def grlex_key(e: Exponent):
    return (sum(e), e)


def degrevlex_key(e: Exponent):
    return (sum(e), tuple(-x for x in reversed(e)))


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple, terms: Mapping[Exponent, Scalar]):
        self.vars = tuple(vars)
        n = len(self.vars)
        clean = {}
        for exp, coeff in terms.items():
            exp = tuple(exp)
            if len(exp) != n:
                raise PolynomialError(f"exponent {exp} does not fit {self.vars}")
            if not scalar_is_zero(coeff):
                clean[exp] = coeff
        self.terms = clean

    # --- constructors ---

    @classmethod
    def zero(cls, vars: tuple) -> "MultiPoly":
        return cls(vars, {})

    @classmethod
    def constant(cls, vars: tuple, value) -> "MultiPoly":
        value = _as_scalar(value)
        return cls(vars, {(0,) * len(vars): value})

    @classmethod
    def variable(cls, name: str, vars: tuple) -> "MultiPoly":
        vars = tuple(vars)
        if name not in vars:
            raise PolynomialError(f"{name} not among {vars}")
        exp = tuple(1 if v == name else 0 for v in vars)
        return cls(vars, {exp: Fraction(1)})

    # --- basic structure ---

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Scalar:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise PolynomialError("not a constant polynomial")
        return next(iter(self.terms.values()))

    def is_nonzero_constant(self) -> bool:
        return bool(self.terms) and self.is_constant()

    def total_degree(self) -> int:
        if self.is_zero():
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var: str) -> int:
        if self.is_zero():
            return -1
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def used_vars(self) -> tuple:
        used = [False] * len(self.vars)
        for e in self.terms:
            for i, p in enumerate(e):
                if p:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # --- arithmetic ---

    def _check_same_vars(self, other: "MultiPoly"):
        if self.vars != other.vars:
            raise PolynomialError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.vars, other)
        self._check_same_vars(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if scalar_is_zero(s):
                terms.pop(e, None)
            else:
                terms[e] = s
        return _raw(self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return _raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check_same_vars(other)
        if len(self.terms) > len(other.terms):
            longer, shorter = self, other
        else:
            longer, shorter = other, self
        terms: dict = {}
        for e1, c1 in shorter.terms.items():
            for e2, c2 in longer.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if scalar_is_zero(s):
                    terms.pop(e, None)
                else:
                    terms[e] = s
        return _raw(self.vars, terms)

    __rmul__ = __mul__

    def scale(self, value) -> "MultiPoly":
        value = _as_scalar(value)
        if scalar_is_zero(value):
            return MultiPoly.zero(self.vars)
        return _raw(self.vars, {e: c * value for e, c in self.terms.items()})

    def __pow__(self, n: int) -> "MultiPoly":
        if not isinstance(n, int) or n < 0:
            raise PolynomialError("polynomial powers take nonnegative ints")
        out = MultiPoly.constant(self.vars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # --- leading data ---

    def leading_exponent(self, key: OrderKey = grlex_key) -> Exponent:
        if self.is_zero():
            raise ZeroPolynomialError("zero polynomial has no leading term")
        return max(self.terms, key=key)

    def leading_coeff(self, key: OrderKey = grlex_key) -> Scalar:
        return self.terms[self.leading_exponent(key)]

    def monic(self, key: OrderKey = grlex_key) -> "MultiPoly":
        if self.is_zero():
            return self
        lc = self.leading_coeff(key)
        if lc == 1:
            return self
        inv = scalar_inverse(lc)
        return self.scale(inv)

    # --- variable plumbing ---

    def embed(self, vars: tuple) -> "MultiPoly":
        """Reinterpret over a superset / reordering of the variables."""
        vars = tuple(vars)
        pos = []
        for v in self.vars:
            if v not in vars:
                raise PolynomialError(f"{v} missing from target vars {vars}")
            pos.append(vars.index(v))
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(vars)
            for p, x in zip(pos, e):
                ne[p] = x
            terms[tuple(ne)] = c
        return _raw(vars, terms)

    def drop_vars(self, names: Iterable[str]) -> "MultiPoly":
        """Remove variables that do not occur in any term."""
        names = set(names)
        keep = [i for i, v in enumerate(self.vars) if v not in names]
        for e in self.terms:
            for i, p in enumerate(e):
                if p and self.vars[i] in names:
                    raise PolynomialError(f"{self.vars[i]} still occurs")
        vars = tuple(self.vars[i] for i in keep)
        terms = {tuple(e[i] for i in keep): c for e, c in self.terms.items()}
        return _raw(vars, terms)

    def rename_vars(self, mapping: Mapping[str, str]) -> "MultiPoly":
        vars = tuple(mapping.get(v, v) for v in self.vars)
        if len(set(vars)) != len(vars):
            raise PolynomialError("renaming collides variable names")
        return _raw(vars, dict(self.terms))

    def assign(self, values: Mapping[str, Scalar]) -> "MultiPoly":
        """Set some variables to exact scalars; result drops those variables."""
        idx = {self.vars.index(v): _as_scalar(c) for v, c in values.items()}
        keep = [i for i in range(len(self.vars)) if i not in idx]
        vars = tuple(self.vars[i] for i in keep)
        terms: dict = {}
        for e, c in self.terms.items():
            for i, val in idx.items():
                if e[i]:
                    c = c * val ** e[i]
            if scalar_is_zero(c):
                continue
            ne = tuple(e[i] for i in keep)
            s = terms.get(ne, 0) + c
            if scalar_is_zero(s):
                terms.pop(ne, None)
            else:
                terms[ne] = s
        return _raw(vars, terms)

    def evaluate(self, point: Mapping[str, Scalar]) -> Scalar:
        out = self.assign({v: point[v] for v in self.vars})
        return out.constant_value()

    def substitute(self, images: Mapping[str, "MultiPoly"]) -> "MultiPoly":
        """Map every variable to a polynomial; images share one var tuple."""
        target = None
        for img in images.values():
            if target is None:
                target = img.vars
            elif img.vars != target:
                raise PolynomialError("substitution images disagree on variables")
        if target is None:
            raise PolynomialError("empty substitution")
        missing = [v for v in self.vars if v not in images]
        if missing:
            raise PolynomialError(f"no image for {missing}")
        out = MultiPoly.zero(target)
        pow_cache: dict = {}
        for e, c in self.terms.items():
            term = MultiPoly.constant(target, c)
            for i, p in enumerate(e):
                if p:
                    key = (self.vars[i], p)
                    if key not in pow_cache:
                        pow_cache[key] = images[self.vars[i]] ** p
                    term = term * pow_cache[key]
            out = out + term
        return out

    def derivative(self, var: str) -> "MultiPoly":
        i = self.vars.index(var)
        terms: dict = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = e[:i] + (e[i] - 1,) + e[i + 1 :]
            s = terms.get(ne, 0) + c * e[i]
            if scalar_is_zero(s):
                terms.pop(ne, None)
            else:
                terms[ne] = s
        return _raw(self.vars, terms)

    def map_coeffs(self, fn) -> "MultiPoly":
        return MultiPoly(self.vars, {e: fn(c) for e, c in self.terms.items()})

    # --- integer-primitive scaling (speed, not semantics) ---

    def primitive_scaled(self) -> "MultiPoly":
        """Scale by a positive rational so coefficients are coprime integers.

        Gaussian coefficients contribute both parts. Used to keep Buchberger
        reductions in small integers; scaling by a unit never changes ideals,
        zero tests, or divisibility questions.
        """
        if self.is_zero():
            return self
        nums, dens = [], []
        for c in self.terms.values():
            if isinstance(c, GaussianRational):
                parts = [c.re, c.im]
            else:
                parts = [Fraction(c)]
            for p in parts:
                if p:
                    nums.append(abs(p.numerator))
                    dens.append(p.denominator)
        g = 0
        for n in nums:
            g = int_gcd(g, n)
        l = 1
        for d in dens:
            l = l * d // int_gcd(l, d)
        factor = Fraction(l, g if g else 1)
        if factor == 1:
            return self
        return self.scale(factor)

    # --- display ---

    def sorted_terms(self, key: OrderKey = grlex_key):
        return sorted(self.terms.items(), key=lambda item: key(item[0]), reverse=True)

    def __str__(self):
        return poly_to_string(self)

    def __repr__(self):
        return f"MultiPoly({poly_to_string(self)!r}, vars={self.vars})"


def _raw(vars: tuple, terms: dict) -> MultiPoly:
    out = object.__new__(MultiPoly)
    object.__setattr__(out, "vars", tuple(vars))
    object.__setattr__(out, "terms", terms)
    return out


def _as_scalar(value) -> Scalar:
    if isinstance(value, (Fraction, GaussianRational)):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise PolynomialError(f"bad coefficient {value!r}")


# === Display ===


def _monomial_string(vars: tuple, e: Exponent) -> str:
    parts = []
    for v, p in zip(vars, e):
        if p == 1:
            parts.append(v)
        elif p > 1:
            parts.append(f"{v}^{p}")
    return "*".join(parts)


def poly_to_string(p: MultiPoly) -> str:
    """Canonical text, graded-lex descending. parse_polynomial round-trips it."""
    if p.is_zero():
        return "0"
    chunks = []
    for e, c in p.sorted_terms(grlex_key):
        mono = _monomial_string(p.vars, e)
        cs = format_scalar(c)
        needs_parens = isinstance(c, GaussianRational) and c.im != 0 and c.re != 0
        if not mono:
            text = f"({cs})" if needs_parens else cs
        elif needs_parens:
            text = f"({cs})*{mono}"
        elif cs == "1":
            text = mono
        elif cs == "-1":
            text = f"-{mono}"
        else:
            text = f"{cs}*{mono}"
        chunks.append(text)
    out = chunks[0]
    for text in chunks[1:]:
        if text.startswith("-"):
            out += " - " + text[1:]
        else:
            out += " + " + text
    return out


# === Division ===


def _exp_divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _exp_sub(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def exact_divide(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Quotient a/b when it is exact; NotDivisibleError otherwise."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    a._check_same_vars(b)
    if a.is_zero():
        return a
    lead_b = b.leading_exponent(grlex_key)
    inv_lc = scalar_inverse(b.terms[lead_b])
    quot_terms: dict = {}
    rest = a
    while not rest.is_zero():
        lead_r = rest.leading_exponent(grlex_key)
        if not _exp_divides(lead_b, lead_r):
            raise NotDivisibleError(f"{b} does not divide {a}")
        q_exp = _exp_sub(lead_r, lead_b)
        q_coeff = rest.terms[lead_r] * inv_lc
        quot_terms[q_exp] = q_coeff
        rest = rest - _raw(a.vars, {q_exp: q_coeff}) * b
    return _raw(a.vars, quot_terms)


def divides(b: MultiPoly, a: MultiPoly) -> bool:
    try:
        exact_divide(a, b)
        return True
    except NotDivisibleError:
        return False


# === Univariate views (used by gcd, resultant, squarefree) ===


def univariate_coeffs(p: MultiPoly, var: str) -> list:
    """Coefficients of var^0..var^deg as MultiPolys in the remaining vars."""
    i = p.vars.index(var)
    rest = p.vars[:i] + p.vars[i + 1 :]
    deg = p.degree_in(var) if not p.is_zero() else -1
    coeffs = [dict() for _ in range(deg + 1)]
    for e, c in p.terms.items():
        re = e[:i] + e[i + 1 :]
        coeffs[e[i]][re] = c
    return [_raw(rest, t) for t in coeffs]


def from_univariate(coeffs: list, var: str, vars: tuple) -> MultiPoly:
    i = vars.index(var)
    terms: dict = {}
    for power, cp in enumerate(coeffs):
        for e, c in cp.terms.items():
            full = e[:i] + (power,) + e[i:]
            terms[full] = c
    return _raw(vars, terms)


def _pseudo_remainder(a: MultiPoly, b: MultiPoly, var: str) -> MultiPoly:
    """Remainder of lc(b)^k * a under b in var, fraction free.

    Agrees with the classical pseudo-remainder up to a factor that is a power
    of lc(b); both call sites (Euclid over a field, primitive-part recursion)
    only use the result modulo content, so the exact power is irrelevant.
    """
    da, db = a.degree_in(var), b.degree_in(var)
    if db < 0:
        raise ZeroDivisionError("pseudo-division by zero")
    if a.is_zero() or da < db:
        return a
    ca = univariate_coeffs(a, var)
    cb = univariate_coeffs(b, var)
    lb = cb[-1]
    while len(ca) - 1 >= db and ca:
        lead = ca[-1]
        shift = len(ca) - 1 - db
        new = [c * lb for c in ca[:-1]]
        for j in range(db):
            new[shift + j] = new[shift + j] - lead * cb[j]
        while new and new[-1].is_zero():
            new.pop()
        ca = new
        if not ca:
            break
    return from_univariate(ca, var, a.vars) if ca else MultiPoly.zero(a.vars)


# === GCD ===


def _euclid_gcd_univariate(a: MultiPoly, b: MultiPoly, var: str) -> MultiPoly:
    # Field coefficients, ordinary remainder sequence with monic scaling.
    f, g = a, b
    while not g.is_zero():
        f = f.primitive_scaled()
        g = g.primitive_scaled()
        r = _pseudo_remainder(f, g, var)
        f, g = g, r
    return f.monic(grlex_key)


def _content_wrt(p: MultiPoly, var: str) -> MultiPoly:
    coeffs = [c for c in univariate_coeffs(p, var) if not c.is_zero()]
    content = coeffs[0]
    for c in coeffs[1:]:
        content = gcd_poly(content, c)
        if content.is_nonzero_constant():
            break
    return content.embed(p.vars)


def gcd_poly(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Monic gcd over Q or Q(i); at most 3 variables may occur."""
    if a.vars != b.vars:
        raise PolynomialError("gcd needs a common variable tuple")
    if a.is_zero():
        return b.monic(grlex_key)
    if b.is_zero():
        return a.monic(grlex_key)
    used = tuple(v for v in a.vars if v in set(a.used_vars()) | set(b.used_vars()))
    if len(used) == 0:
        return MultiPoly.constant(a.vars, 1)
    if len(used) > 3:
        raise PolynomialError("gcd supports at most 3 occurring variables")
    if len(used) == 1:
        return _euclid_gcd_univariate(a, b, used[0])
    var = used[0]
    ca, cb = _content_wrt(a, var), _content_wrt(b, var)
    cont = gcd_poly(ca, cb)
    pa = exact_divide(a, ca)
    pb = exact_divide(b, cb)
    f, g = pa, pb
    if f.degree_in(var) < g.degree_in(var):
        f, g = g, f
    while True:
        r = _pseudo_remainder(f, g, var)
        if r.is_zero():
            result = g
            break
        if r.degree_in(var) == 0:
            result = MultiPoly.constant(a.vars, 1)
            break
        f, g = g, exact_divide(r, _content_wrt(r, var)).primitive_scaled()
    result = exact_divide(result, _content_wrt(result, var))
    return (cont * result).monic(grlex_key)


def squarefree_part(p: MultiPoly, var: str | None = None) -> MultiPoly:
    """Monic product of the distinct irreducible factors of a univariate p."""
    if p.is_zero():
        raise ZeroPolynomialError("squarefree part of the zero polynomial")
    used = p.used_vars()
    if var is None:
        if len(used) > 1:
            raise PolynomialError("squarefree_part needs a univariate input")
        var = used[0] if used else p.vars[0]
    elif any(u != var for u in used):
        raise PolynomialError("squarefree_part needs a univariate input")
    d = p.derivative(var)
    if d.is_zero():
        return MultiPoly.constant(p.vars, 1)
    g = gcd_poly(p, d)
    return exact_divide(p, g).monic(grlex_key)


# === Resultant ===


def _bareiss_determinant(m: list) -> MultiPoly:
    """Exact determinant of a square MultiPoly matrix, fraction free."""
    n = len(m)
    vars = m[0][0].vars
    if n == 0:
        return MultiPoly.constant(vars, 1)
    m = [row[:] for row in m]
    sign = 1
    prev = MultiPoly.constant(vars, 1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot_row = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if pivot_row is None:
                return MultiPoly.zero(vars)
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = exact_divide(num, prev)
            m[i][k] = MultiPoly.zero(vars)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant(a: MultiPoly, b: MultiPoly, var: str) -> MultiPoly:
    """Sylvester determinant, a's rows first, ascending powers of var."""
    if a.vars != b.vars:
        raise PolynomialError("resultant needs a common variable tuple")
    da, db = a.degree_in(var), b.degree_in(var)
    if da < 1 or db < 1:
        raise PolynomialError("resultant needs positive degree in the variable")
    i = a.vars.index(var)
    rest = a.vars[:i] + a.vars[i + 1 :]
    ca = [c.embed(rest) if c.vars != rest else c for c in univariate_coeffs(a, var)]
    cb = [c.embed(rest) if c.vars != rest else c for c in univariate_coeffs(b, var)]
    n = da + db
    zero = MultiPoly.zero(rest)
    rows = []
    for shift in range(db):
        row = [zero] * n
        for j, c in enumerate(ca):
            row[shift + j] = c
        rows.append(row)
    for shift in range(da):
        row = [zero] * n
        for j, c in enumerate(cb):
            row[shift + j] = c
        rows.append(row)
    det = _bareiss_determinant(rows)
    return det.embed(a.vars)


# === Homogenization ===


def homogeneous_degree(p: MultiPoly) -> int | None:
    """Total degree if every term shares it, else None. Zero counts as any."""
    if p.is_zero():
        return 0
    degs = {sum(e) for e in p.terms}
    return degs.pop() if len(degs) == 1 else None


def homogenize(p: MultiPoly, new_var: str, target_vars: tuple, degree: int | None = None) -> MultiPoly:
    """Insert new_var so every term reaches the target total degree."""
    if new_var not in target_vars:
        raise PolynomialError(f"{new_var} missing from {target_vars}")
    if degree is None:
        degree = max(p.total_degree(), 0)
    if not p.is_zero() and degree < p.total_degree():
        raise PolynomialError("target degree below the actual degree")
    pos = target_vars.index(new_var)
    old = [v for v in target_vars if v != new_var]
    if tuple(old) != tuple(p.vars):
        p = p.embed(tuple(old))
    terms = {}
    for e, c in p.terms.items():
        ne = list(e)
        ne.insert(pos, degree - sum(e))
        terms[tuple(ne)] = c
    return _raw(target_vars, terms)


def dehomogenize(p: MultiPoly, var: str) -> MultiPoly:
    return p.assign({var: 1})


class BiDegree(tuple):
    """Degree pair (d1, d2) of a bihomogeneous form."""

    def __new__(cls, d1: int, d2: int):
        return super().__new__(cls, (int(d1), int(d2)))

    @property
    def d1(self):
        return self[0]

    @property
    def d2(self):
        return self[1]


#: Variable tuples used throughout.
P2_VARS = ("z0", "z1", "z2")
BI_VARS = ("x0", "x1", "y0", "y1")
AFFINE_VARS = ("z1", "z2")


def bidegree_of(p: MultiPoly, groups=((("x0", "x1")), ("y0", "y1"))) -> BiDegree | None:
    """Bidegree when p is bihomogeneous in the two variable groups."""
    if p.is_zero():
        return BiDegree(0, 0)
    g1 = [p.vars.index(v) for v in groups[0]]
    g2 = [p.vars.index(v) for v in groups[1]]
    d1s = {sum(e[i] for i in g1) for e in p.terms}
    d2s = {sum(e[i] for i in g2) for e in p.terms}
    if len(d1s) == 1 and len(d2s) == 1:
        return BiDegree(d1s.pop(), d2s.pop())
    return None


def bihomogenize(p: MultiPoly, bidegree: BiDegree) -> MultiPoly:
    """Affine (z1, z2) to bihomogeneous (x0, x1, y0, y1).

    z1 becomes x1/x0 and z2 becomes y1/y0; the term z1^a z2^b turns into
    x1^a x0^(d1-a) y1^b y0^(d2-b).
    """
    d1, d2 = bidegree
    p = p.embed(AFFINE_VARS) if p.vars != AFFINE_VARS else p
    if not p.is_zero():
        if p.degree_in("z1") > d1 or p.degree_in("z2") > d2:
            raise PolynomialError("bidegree below the actual degrees")
    terms = {}
    for (a, b), c in p.terms.items():
        terms[(d1 - a, a, d2 - b, b)] = c
    return _raw(BI_VARS, terms)


def dehomogenize_bi(p: MultiPoly) -> MultiPoly:
    """Bihomogeneous (x0, x1, y0, y1) back to affine (z1, z2)."""
    out = p.assign({"x0": 1, "y0": 1})
    return out.rename_vars({"x1": "z1", "y1": "z2"})


def min_bidegree(p: MultiPoly) -> BiDegree:
    """Smallest bidegree that can carry the affine polynomial p."""
    p = p.embed(AFFINE_VARS) if p.vars != AFFINE_VARS else p
    if p.is_zero():
        return BiDegree(0, 0)
    return BiDegree(p.degree_in("z1"), p.degree_in("z2"))


def gcd_bihomogeneous(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """gcd of two bihomogeneous forms in (x0, x1, y0, y1).

    Works by stripping shared monomial factors, dehomogenizing, running the
    two-variable gcd, and rehomogenizing. Keeps the general gcd_poly within
    its three-variable limit. Result is monic under grlex.
    """
    if a.is_zero():
        return b.monic(grlex_key)
    if b.is_zero():
        return a.monic(grlex_key)
    mono = []
    for i in range(4):
        ma = min(e[i] for e in a.terms)
        mb = min(e[i] for e in b.terms)
        mono.append(min(ma, mb))

    def strip(p, amounts):
        terms = {tuple(x - m for x, m in zip(e, amounts)): c for e, c in p.terms.items()}
        return _raw(p.vars, terms)

    sa = strip(a, [min(e[i] for e in a.terms) for i in range(4)])
    sb = strip(b, [min(e[i] for e in b.terms) for i in range(4)])
    bd_a, bd_b = bidegree_of(sa), bidegree_of(sb)
    if bd_a is None or bd_b is None:
        raise PolynomialError("inputs are not bihomogeneous")
    g_aff = gcd_poly(dehomogenize_bi(sa), dehomogenize_bi(sb))
    g = bihomogenize(g_aff, min_bidegree(g_aff))
    mono_term = _raw(BI_VARS, {tuple(mono): Fraction(1)})
    return (g * mono_term).monic(grlex_key)


def gcd_homogeneous_p2(polys: list) -> MultiPoly:
    """Monic gcd of homogeneous forms in (z0, z1, z2)."""
    out = None
    for p in polys:
        out = p if out is None else gcd_poly(out, p)
        if out.is_nonzero_constant():
            break
    return out.monic(grlex_key) if out is not None else None
