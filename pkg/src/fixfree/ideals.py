"""Groebner bases and the ideal predicates built on them.

Buchberger's algorithm with the Gebauer-Moeller pair filter and normal
selection (smallest lcm first). Bases are reduced, autoreduced, monic, and
deterministic: the same generators in the same order always produce the
identical basis. Default order is degree reverse lexicographic; lexicographic
is available for eliminations.

The geometric predicates work over the algebraic closure. A reduced basis is
unchanged under field extension, so emptiness of a complex variety defined
over Q or Q(i) is decided by the basis computed over the ground field:
is_inconsistent answers "no common complex root" and radical_membership
answers "vanishes on every common complex root" (for bivariate zero
dimensional ideals by comparing distinct-zero counts, otherwise by
adjoining 1 - t*g and testing inconsistency).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as cartesian

from .poly import (
    MultiPoly,
    OrderKey,
    PolynomialError,
    degrevlex_key,
    grlex_key,
    lex_key,
    resultant,
    squarefree_part,
)

ORDERS = {"degrevlex": degrevlex_key, "lex": lex_key, "grlex": grlex_key}


class NotZeroDimensionalError(PolynomialError):
    pass


# === Monomial helpers ===


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


# === Reduction ===


def reduce_poly(g: MultiPoly, basis: list, key: OrderKey) -> MultiPoly:
    """Normal form of g modulo basis (full reduction of every term)."""
    if not basis:
        return g
    leads = [(b.leading_exponent(key), b.leading_coeff(key), b) for b in basis]
    work = dict(g.terms)
    remainder: dict = {}
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        hit = next((t for t in leads if _divides(t[0], m)), None)
        if hit is None:
            remainder[m] = c
            continue
        lead_exp, lead_coeff, b = hit
        shift = _sub(m, lead_exp)
        factor = c / lead_coeff
        for e, bc in b.terms.items():
            if e == lead_exp:
                continue
            ne = tuple(x + y for x, y in zip(e, shift))
            s = work.get(ne, 0) - factor * bc
            if s:
                work[ne] = s
            else:
                work.pop(ne, None)
    out = MultiPoly(g.vars, remainder)
    return out.primitive_scaled()


def s_poly(f: MultiPoly, g: MultiPoly, key: OrderKey) -> MultiPoly:
    lf, lg = f.leading_exponent(key), g.leading_exponent(key)
    l = _lcm(lf, lg)
    mf = MultiPoly(f.vars, {_sub(l, lf): g.leading_coeff(key)})
    mg = MultiPoly(g.vars, {_sub(l, lg): f.leading_coeff(key)})
    return (mf * f - mg * g).primitive_scaled()


# === Buchberger with Gebauer-Moeller pair elimination ===


def _update(G: list, P: set, f: MultiPoly, key: OrderKey):
    """Add f to the partial basis, filtering pairs by the standard criteria."""
    lmf = f.leading_exponent(key)
    lmG = [g.leading_exponent(key) for g in G]
    kept = set()
    for i, j in P:
        lij = _lcm(lmG[i], lmG[j])
        if (not _divides(lmf, lij)) or lij == _lcm(lmG[i], lmf) or lij == _lcm(lmG[j], lmf):
            kept.add((i, j))
    by_lcm: dict = {}
    for i in range(len(G)):
        by_lcm.setdefault(_lcm(lmG[i], lmf), []).append(i)
    minimal = []
    for L in sorted(by_lcm, key=key):
        if all(not _divides(M, L) for M in minimal):
            minimal.append(L)
    new_index = len(G)
    for L in minimal:
        if not any(_coprime(lmG[i], lmf) for i in by_lcm[L]):
            kept.add((min(by_lcm[L]), new_index))
    return G + [f], kept


def _minimalize(G: list, key: OrderKey) -> list:
    out = []
    for f in sorted(G, key=lambda h: key(h.leading_exponent(key))):
        if all(not _divides(g.leading_exponent(key), f.leading_exponent(key)) for g in out):
            out.append(f)
    return out


def _interreduce(G: list, key: OrderKey) -> list:
    out = []
    for i in range(len(G)):
        r = reduce_poly(G[i], G[:i] + G[i + 1 :], key)
        out.append(r.monic(key))
    return out


def groebner_basis(generators: list, order: str = "degrevlex") -> list:
    """Reduced monic Groebner basis; [] for the zero ideal, [1] for the unit.

    Deterministic for fixed input order. Aborts to [1] as soon as a nonzero
    constant shows up, which is the common exit for the consistency checks.
    """
    key = ORDERS[order]
    gens = [g.primitive_scaled() for g in generators if not g.is_zero()]
    if not gens:
        return []
    vars = gens[0].vars
    one = [MultiPoly.constant(vars, 1)]
    G: list = []
    P: set = set()
    for f in gens:
        if f.is_nonzero_constant():
            return one
        r = reduce_poly(f, G, key)
        if r.is_nonzero_constant():
            return one
        if not r.is_zero():
            G, P = _update(G, P, r, key)
    while P:
        pair = min(
            P,
            key=lambda p: (
                key(_lcm(G[p[0]].leading_exponent(key), G[p[1]].leading_exponent(key))),
                p,
            ),
        )
        P.remove(pair)
        i, j = pair
        r = reduce_poly(s_poly(G[i], G[j], key), G, key)
        if r.is_zero():
            continue
        if r.is_nonzero_constant():
            return one
        G, P = _update(G, P, r, key)
    basis = _interreduce(_minimalize(G, key), key)
    return sorted(basis, key=lambda g: key(g.leading_exponent(key)))


class PolyIdeal:
    """Generators plus cached reduced bases, one per term order."""

    def __init__(self, generators: list):
        gens = list(generators)
        if gens:
            vars = gens[0].vars
            for g in gens:
                if g.vars != vars:
                    raise PolynomialError("ideal generators disagree on variables")
        self.generators = gens
        self._bases: dict = {}
        self._count_state = None

    @property
    def vars(self):
        return self.generators[0].vars if self.generators else ()

    def groebner_basis(self, order: str = "degrevlex") -> list:
        if order not in self._bases:
            self._bases[order] = groebner_basis(self.generators, order)
        return self._bases[order]

    def contains(self, g: MultiPoly) -> bool:
        basis = self.groebner_basis()
        if not basis:
            return g.is_zero()
        return reduce_poly(g, basis, ORDERS["degrevlex"]).is_zero()

    def is_inconsistent(self) -> bool:
        """True iff the generators have no common zero over C."""
        basis = self.groebner_basis()
        return bool(basis) and basis[0].is_nonzero_constant()


def ideal_membership(g: MultiPoly, ideal: PolyIdeal) -> bool:
    return ideal.contains(g)


def is_inconsistent(ideal: PolyIdeal) -> bool:
    return ideal.is_inconsistent()


def _fresh_var(vars: tuple) -> str:
    name = "t"
    while name in vars:
        name = "_" + name
    return name


def radical_membership(g: MultiPoly, ideal: PolyIdeal) -> bool:
    """True iff g vanishes on every common complex zero of the ideal."""
    if g.is_zero():
        return True
    if not ideal.generators:
        return False
    if ideal.is_inconsistent():
        return True
    if ideal.contains(g):
        return True
    answer = _radical_membership_by_count(g, ideal)
    if answer is not None:
        return answer
    vars = ideal.vars
    t = _fresh_var(vars)
    ext = vars + (t,)
    gens = [p.embed(ext) for p in ideal.generators]
    trick = 1 - MultiPoly.variable(t, ext) * g.embed(ext)
    return PolyIdeal(gens + [trick]).is_inconsistent()


def _cheap_eliminants(polys, vars):
    """Univariate eliminants of a bivariate system via resultants.

    Any nonzero element of an elimination ideal serves as an eliminant
    for counting purposes; a resultant of two generators is one and is
    far cheaper than a lexicographic basis.  None when no resultant
    with honest degree turns up.
    """
    if len(vars) != 2:
        return None
    out = {}
    for keep, drop in ((vars[0], vars[1]), (vars[1], vars[0])):
        pure = [p for p in polys if p.degree_in(drop) == 0]
        if pure:
            out[keep] = pure[0]
            continue
        pos = [p for p in polys if p.degree_in(drop) > 0]
        found = None
        if len(pos) >= 2:
            r = resultant(pos[0], pos[1], drop)
            if not r.is_zero():
                found = r
        if found is None:
            return None
        out[keep] = found
    return out


def _radical_membership_by_count(g, ideal):
    """Zero-dimensional shortcut for the radical test.

    V(I + g) = V(I) cut with V(g), so g vanishes on all of V(I) exactly
    when the distinct-zero counts of the two ideals agree.  The count of
    the base ideal and its eliminants are cached on the ideal, which the
    callers probe with one polynomial after another.  Returns None when
    the ideal is not bivariate and zero dimensional; the caller then
    falls back to the Rabinowitsch trick, whose extra variable makes the
    basis far more expensive.
    """
    if len(ideal.vars) != 2:
        return None
    if ideal._count_state is None:
        elims = _cheap_eliminants(ideal.generators, ideal.vars)
        try:
            base = count_distinct_zeros(ideal, eliminants=elims)
        except NotZeroDimensionalError:
            ideal._count_state = (None, None)
        else:
            ideal._count_state = (base, elims)
    base, elims = ideal._count_state
    if base is None:
        return None
    extended = PolyIdeal(ideal.generators + [g])
    try:
        joint = count_distinct_zeros(extended, eliminants=elims)
    except NotZeroDimensionalError:
        return None
    return joint == base


# === Zero-dimensional helpers ===


def univariate_eliminant(ideal: PolyIdeal, keep: str) -> MultiPoly | None:
    """Monic generator of the elimination ideal in keep, None if it is zero.

    Computed from a lexicographic basis with keep ordered last; in a reduced
    lex basis the polynomials free of the other variables generate the
    elimination ideal, which is principal in one variable.
    """
    vars = ideal.vars
    others = tuple(v for v in vars if v != keep)
    perm = others + (keep,)
    gens = [g.embed(perm) for g in ideal.generators]
    basis = groebner_basis(gens, "lex")
    if basis and basis[0].is_nonzero_constant():
        return MultiPoly.constant((keep,), 1)
    keep_only = [b for b in basis if set(b.used_vars()) <= {keep}]
    if not keep_only:
        return None
    out = min(keep_only, key=lambda b: b.degree_in(keep))
    return out.drop_vars(others)


def quotient_dimension(ideal: PolyIdeal, order: str = "degrevlex") -> int:
    """Number of standard monomials (= count of common zeros for radical
    zero-dimensional ideals). NotZeroDimensionalError when infinite."""
    basis = ideal.groebner_basis(order)
    if not basis:
        raise NotZeroDimensionalError("the zero ideal is not zero dimensional")
    if basis[0].is_nonzero_constant():
        return 0
    key = ORDERS[order]
    vars = ideal.vars
    leads = [b.leading_exponent(key) for b in basis]
    bounds = []
    for i in range(len(vars)):
        pure = [e[i] for e in leads if all(x == 0 for j, x in enumerate(e) if j != i)]
        if not pure:
            raise NotZeroDimensionalError(f"no pure power of {vars[i]} in the staircase")
        bounds.append(min(pure))
    count = 0
    for exp in cartesian(*(range(b) for b in bounds)):
        if not any(_divides(l, exp) for l in leads):
            count += 1
    return count


def count_distinct_zeros(ideal: PolyIdeal, eliminants: dict | None = None) -> int:
    """Number of distinct common zeros over C of a zero-dimensional ideal.

    Adjoins the squarefree part of a univariate eliminant for every variable,
    which makes the ideal radical, then counts standard monomials. Callers
    may hand in eliminants they already have (resultants work: any nonzero
    element of the elimination ideal does, extra roots are cut away by the
    original generators). Returns 0 for an inconsistent system and raises
    NotZeroDimensionalError when some eliminant vanishes identically.
    """
    if not ideal.generators:
        raise NotZeroDimensionalError("the zero ideal is not zero dimensional")
    if ideal.is_inconsistent():
        return 0
    vars = ideal.vars
    extra = []
    for v in vars:
        elim = eliminants.get(v) if eliminants else None
        if elim is None:
            elim = univariate_eliminant(ideal, v)
            if elim is None:
                raise NotZeroDimensionalError(f"positive dimension along {v}")
        if elim.is_zero():
            raise NotZeroDimensionalError(f"positive dimension along {v}")
        if elim.is_nonzero_constant():
            return 0
        extra.append(squarefree_part(elim, v).embed(vars))
    radical = PolyIdeal(ideal.generators + extra)
    return quotient_dimension(radical)
