"""Difference operators on a multidimensional torus, in normal form.

An operator is a finite sum  sum_m  c_m(w, ...) * D^m  with rational
coefficients written to the LEFT of the shift monomials.  The generator
D attached to a torus variable w of weight d obeys

    D w^(1/2) = v^d w^(1/2) D,   hence   D w = v^(2d) w D.

Coefficients must stay inside the localization generated by monomials,
1 - v^m, and same-vertex differences w_{i,r} - v^k w_{i,s}; this is
audited whenever an operator is built (rational functions in a formal
spectral variable are exempt, they are series bookkeeping, not torus
elements).
"""

from __future__ import annotations

from dataclasses import dataclass

from .scalars import (
    Poly,
    RationalFunction,
    RF_ONE,
    RF_ZERO,
    kind_of,
    poly_gcd,
    rf,
    rf_from_factored,
)


class LocalizationError(ValueError):
    """A coefficient denominator left the allowed multiplicative set."""


@dataclass(frozen=True)
class TorusSpec:
    """Weights of the torus variables: name -> d (positive integer).

    Variables at vertex i of a Cartan datum get d = d_i; the Toda /
    R-matrix normalization uses d = 1 throughout.
    """

    weights: tuple  # sorted tuple of (name, d)

    @staticmethod
    def make(mapping):
        return TorusSpec(tuple(sorted(mapping.items())))

    def weight(self, name):
        for n, d in self.weights:
            if n == name:
                return d
        raise KeyError(name)

    def names(self):
        return tuple(n for n, _ in self.weights)

    def vertex_of(self, name):
        """Vertex index encoded in a canonical torus-variable name."""
        assert name.startswith("w")
        return int(name[1:].split("_")[0])

    @staticmethod
    def from_framing(cartan, framing):
        mapping = {}
        for i in range(cartan.n):
            for name in framing.w_names(i):
                mapping[name] = cartan.d[i]
        return TorusSpec.make(mapping)


def apply_shift(spec, exponents, f):
    """sigma^a(f): substitute w ->  v^(2*d*a) w for each torus variable.

    exponents: dict name -> integer shift amount a.  Implemented as a
    per-monomial v-power rescale, exact on the whole fraction.
    """
    exponents = {n: a for n, a in exponents.items() if a}
    if not exponents or f.is_zero():
        return f
    num, off = _shift_poly(f.num, spec, exponents)
    parts = []
    for p, m in f.den_factors():
        q, off_p = _shift_poly(p, spec, exponents)
        off -= off_p * m
        parts.append((q, m))
    out = rf_from_factored(num, f.den_content(), parts)
    if off:
        out = out * RationalFunction.monomial({"v": off})
    return out


def _shift_poly(p, spec, exponents):
    """Rescale each monomial; return (poly, common stored-v offset)."""
    deltas = {}
    for m, c in p.terms.items():
        delta = 0
        for name, e in m:
            a = exponents.get(name)
            if a:
                # name^(e/2) |-> v^(2*d*a*(e/2)) name^(e/2); doubled storage
                delta += 2 * spec.weight(name) * a * e
        deltas[m] = delta
    low = min(deltas.values())
    terms = {}
    for m, c in p.terms.items():
        k = deltas[m] - low
        d = dict(m)
        if k:
            d["v"] = d.get("v", 0) + k
        mm = tuple(sorted((n, e) for n, e in d.items() if e))
        terms[mm] = terms.get(mm, 0) + c
    return Poly({m: c for m, c in terms.items() if c}), low


class DifferenceOperator:
    """Normal-form element of the localized shift-operator algebra."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec, terms, audit=True):
        self.spec = spec
        clean = {}
        for m, c in terms.items():
            if not c.is_zero():
                clean[m] = c
                if audit:
                    for p, _ in c.den_factors():
                        audit_denominator(spec, p)
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_scalar(spec, c):
        c = rf(c) if not isinstance(c, RationalFunction) else c
        return DifferenceOperator(spec, {(): c})

    @staticmethod
    def shift(spec, name, exp=1, coeff=None):
        """coeff * D^exp for the D attached to `name`."""
        assert exp != 0
        c = RF_ONE if coeff is None else coeff
        return DifferenceOperator(spec, {((name, exp),): c})

    @staticmethod
    def zero(spec):
        return DifferenceOperator(spec, {}, audit=False)

    @staticmethod
    def one(spec):
        return DifferenceOperator(spec, {(): RF_ONE}, audit=False)

    # -- predicates ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def scalar_part(self):
        return self.terms.get((), RF_ZERO)

    def _coerce(self, other):
        if isinstance(other, (int, RationalFunction)):
            return DifferenceOperator.from_scalar(self.spec, other)
        assert isinstance(other, DifferenceOperator)
        return other

    def __eq__(self, other):
        if isinstance(other, (int, RationalFunction)):
            other = DifferenceOperator.from_scalar(self.spec, other)
        if not isinstance(other, DifferenceOperator):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted((m, c.key()) for m, c in self.terms.items())))

    # -- algebra ------------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        d = dict(self.terms)
        for m, c in other.terms.items():
            s = d.get(m, RF_ZERO) + c
            if s.is_zero():
                d.pop(m, None)
            else:
                d[m] = s
        return DifferenceOperator(self.spec, d, audit=False)

    __radd__ = __add__

    def __neg__(self):
        return DifferenceOperator(
            self.spec, {m: -c for m, c in self.terms.items()}, audit=False
        )

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, RationalFunction)):
            c = rf(other) if isinstance(other, int) else other
            if c.is_zero():
                return DifferenceOperator.zero(self.spec)
            # scalar from the right still multiplies coefficients after
            # commuting through the shifts
            out = {}
            for m, cm in self.terms.items():
                shifted = apply_shift(self.spec, dict(m), c)
                out[m] = cm * shifted
            return DifferenceOperator(self.spec, out)
        assert isinstance(other, DifferenceOperator)
        assert self.spec == other.spec, "operators over different tori"
        out = {}
        for m1, c1 in self.terms.items():
            sh = dict(m1)
            for m2, c2 in other.terms.items():
                m = _dmono_mul(m1, m2)
                c = c1 * apply_shift(self.spec, sh, c2)
                s = out.get(m)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(m, None)
                else:
                    out[m] = s
        return DifferenceOperator(self.spec, out)

    def __rmul__(self, other):
        # scalar * operator: coefficients multiply directly on the left
        if isinstance(other, (int, RationalFunction)):
            c = rf(other) if isinstance(other, int) else other
            return DifferenceOperator(
                self.spec, {m: c * cm for m, cm in self.terms.items()}
            )
        return NotImplemented

    def __pow__(self, n):
        assert n >= 0
        out = DifferenceOperator.one(self.spec)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c):
        return self.__rmul__(c)

    def map_coefficients(self, fn, audit=True):
        return DifferenceOperator(
            self.spec, {m: fn(c) for m, c in self.terms.items()}, audit=audit
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            if m:
                dm = " * ".join(
                    "D[%s]%s" % (name, "" if e == 1 else "^%d" % e) for name, e in m
                )
                parts.append("(%s) * %s" % (c, dm))
            else:
                parts.append("(%s)" % (c,))
        return " + ".join(parts)


def _dmono_mul(m1, m2):
    d = dict(m1)
    for name, e in m2:
        n = d.get(name, 0) + e
        if n:
            d[name] = n
        else:
            del d[name]
    return tuple(sorted(d.items()))


def multiply(a, b):
    return a * b


def commutator(a, b, twist=1):
    """a*b - twist * b*a.  twist 0 gives the plain product."""
    if isinstance(twist, int):
        twist = rf(twist)
    ab = a * b
    if twist.is_zero():
        return ab
    return ab - (b * a).scale(twist)


# -- localization audit -------------------------------------------------------

_AUDIT_CACHE = {}


def audit_denominator(spec, den):
    """Check den is a product of allowed factors; raise LocalizationError.

    Allowed: integer constants, monomials, 1 - v^m, and same-vertex
    binomials w_{i,r} - v^k w_{i,s}.  Denominators involving any variable
    outside {v} cup torus variables (spectral parameters, framing z's)
    are exempt from the audit.
    """
    key = (spec.weights, den.key())
    hit = _AUDIT_CACHE.get(key)
    if hit is not None:
        if hit is not True:
            raise LocalizationError(hit)
        return
    problem = _audit(spec, den)
    _AUDIT_CACHE[key] = True if problem is None else problem
    if problem is not None:
        raise LocalizationError(problem)


def _audit(spec, den):
    names = set(spec.names())
    varset = den.variables()
    if not varset <= (names | {"v"}):
        return None  # exempt: carries spectral/framing variables
    rem = _strip_monomial(den)
    uvars = sorted(varset & names)
    # peel same-vertex binomial factors
    vdeg = rem.degree_in("v") // 2 + 4
    for n1 in uvars:
        for n2 in uvars:
            if n1 == n2:
                continue
            if spec.vertex_of(n1) != spec.vertex_of(n2):
                continue
            for k in range(0, 2 * vdeg + 1, 2):
                cand = Poly.from_mono({n1: 2, "v": k}, 1) + Poly.from_mono({n2: 2}, -1)
                rem = _peel(rem, cand)
                if k:
                    cand = Poly.from_mono({n1: 2}, 1) + Poly.from_mono({n2: 2, "v": k}, -1)
                    rem = _peel(rem, cand)
                rem = _strip_monomial(rem)
    if rem.variables() - {"v"}:
        return "outside localization: torus factor %r not allowed" % (rem,)
    # remaining v-polynomial must divide a product of (1 - v^m)
    bound = 6 * (rem.degree_in("v") // 2 + 1)
    for m in range(1, bound + 1):
        cyc = Poly.const(1) + Poly.from_mono({"v": 2 * m}, -1)
        while True:
            g = poly_gcd(rem, cyc)
            if g.is_const():
                break
            rem = _exact_quot(rem, g)
    rem = _strip_monomial(rem)
    if not rem.is_const():
        return "outside localization: v-factor %r not of the form 1 - v^m" % (rem,)
    return None


def _strip_monomial(p):
    mc = p.mono_content()
    if mc:
        p = Poly({_mono_sub(m, mc): c for m, c in p.terms.items()})
    c = p.content_int()
    if c > 1:
        p = Poly({m: cc // c for m, cc in p.terms.items()})
    return p


def _mono_sub(m, sub):
    d = dict(m)
    for name, e in sub:
        n = d[name] - e
        if n:
            d[name] = n
        else:
            del d[name]
    return tuple(sorted(d.items()))


def _peel(p, cand):
    from .scalars import _poly_divmod

    while True:
        q = _poly_divmod(p, cand)
        if q is None:
            q = _poly_divmod(p, -cand)
        if q is None:
            return p
        p = q
        if p.is_const():
            return p


def _exact_quot(p, g):
    from .scalars import _poly_divmod

    q = _poly_divmod(p, g)
    assert q is not None
    return q
