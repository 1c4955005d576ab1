"""Exact arithmetic over multivariate Laurent-rational functions.

Everything downstream (difference operators, delta distributions, shuffle
elements, fixed-point modules) keeps its coefficients in the field of
fractions of an integer-coefficient polynomial ring.  Two representation
choices drive the whole design:

* every exponent is stored doubled, so that half powers like w^{1/2} or
  z^{1/2} stay in plain integer arithmetic;
* a rational function is a reduced pair (numerator, denominator) of honest
  polynomials (no negative exponents); Laurent monomials live in the
  denominator.

Zero tests and equality are decided by normal form, never numerically.
"""

from __future__ import annotations

import heapq
from math import gcd as _int_gcd


# ---------------------------------------------------------------------------
# variable registry
#
# Variable names are global strings.  The registry only records a "kind" per
# name; it is used for serialization and for the localization audit in qweyl.
# Declaring the same name twice with different kinds is an error.

_REGISTRY: dict[str, str] = {}

KINDS = ("v", "zparam", "tparam", "uvar", "xvar", "formal", "aux")


def declare(name, kind):
    """Register a variable name with one of the kinds in KINDS."""
    assert kind in KINDS, kind
    old = _REGISTRY.get(name)
    if old is not None and old != kind:
        raise ValueError("variable %r redeclared: %s vs %s" % (name, old, kind))
    _REGISTRY[name] = kind
    return name


def kind_of(name):
    return _REGISTRY.get(name, "aux")


declare("v", "v")


# ---------------------------------------------------------------------------
# monomials
#
# A monomial is a tuple of (name, exponent) pairs, sorted by name, with all
# exponents nonzero positive integers (doubled semantics: exponent e means
# name^(e/2)).  The empty tuple is 1.


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for name, e in m2:
        n = d.get(name, 0) + e
        if n:
            d[name] = n
        else:
            del d[name]
    return tuple(sorted(d.items()))


def _mono_div(m1, m2):
    # m1 / m2, allowing negative results only transiently (caller checks)
    d = dict(m1)
    for name, e in m2:
        n = d.get(name, 0) - e
        if n:
            d[name] = n
        else:
            d.pop(name, None)
    return tuple(sorted(d.items()))


def _mono_divides(m2, m1):
    d = dict(m1)
    for name, e in m2:
        if d.get(name, 0) < e:
            return False
    return True


def _mono_gcd(m1, m2):
    d2 = dict(m2)
    out = []
    for name, e in m1:
        e2 = d2.get(name, 0)
        if e2:
            out.append((name, min(e, e2)))
    return tuple(sorted(out))


def _mono_deg(m):
    return sum(e for _, e in m)


def _dense_key(varlist):
    """Graded-lex key over a fixed variable list (ascending names, first
    name most significant).  Zero-padding by a superset of variables does
    not change comparisons, so per-poly keys are globally consistent."""
    idx = {n: i for i, n in enumerate(varlist)}

    def key(m):
        vec = [0] * len(varlist)
        for n, e in m:
            vec[idx[n]] = e
        return (_mono_deg(m), tuple(vec))

    return key


# ---------------------------------------------------------------------------
# polynomials


class Poly:
    """Sparse multivariate polynomial over the integers.

    terms: dict monomial -> nonzero int.  Instances are immutable by
    convention; no method mutates self.
    """

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = terms

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero():
        return Poly({})

    @staticmethod
    def const(n):
        if n == 0:
            return Poly({})
        return Poly({(): int(n)})

    @staticmethod
    def from_mono(exps, coeff=1):
        """exps: dict name -> doubled exponent (nonneg)."""
        if coeff == 0:
            return Poly({})
        mono = tuple(sorted((k, v) for k, v in exps.items() if v))
        assert all(e > 0 for _, e in mono), exps
        return Poly({mono: int(coeff)})

    @staticmethod
    def var(name, power=1):
        """name^power with power in true (integer) units."""
        assert power >= 0
        if power == 0:
            return Poly.const(1)
        return Poly({((name, 2 * power),): 1})

    # -- predicates ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_const(self):
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def const_value(self):
        assert self.is_const()
        return self.terms.get((), 0)

    def is_monomial(self):
        return len(self.terms) == 1

    def variables(self):
        out = set()
        for m in self.terms:
            for name, _ in m:
                out.add(name)
        return out

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if not self.terms:
            return other
        if not other.terms:
            return self
        d = dict(self.terms)
        for m, c in other.terms.items():
            n = d.get(m, 0) + c
            if n:
                d[m] = n
            else:
                del d[m]
        return Poly(d)

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not other.terms:
            return self
        d = dict(self.terms)
        for m, c in other.terms.items():
            n = d.get(m, 0) - c
            if n:
                d[m] = n
            else:
                del d[m]
        return Poly(d)

    def __mul__(self, other):
        if not self.terms or not other.terms:
            return Poly({})
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        d = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = _mono_mul(m1, m2)
                n = d.get(m, 0) + c1 * c2
                if n:
                    d[m] = n
                else:
                    del d[m]
        return Poly(d)

    def scale(self, n):
        if n == 0:
            return Poly({})
        if n == 1:
            return self
        return Poly({m: c * n for m, c in self.terms.items()})

    def mono_scale(self, mono, coeff=1):
        if coeff == 0:
            return Poly({})
        if not mono and coeff == 1:
            return self
        return Poly({_mono_mul(m, mono): c * coeff for m, c in self.terms.items()})

    def __pow__(self, n):
        assert n >= 0
        out = Poly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def key(self):
        return tuple(sorted(self.terms.items()))

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(self.key())

    # -- structure ----------------------------------------------------------

    def leading(self):
        """(monomial, coeff) maximal in graded lex order."""
        assert self.terms
        m = max(self.terms, key=_dense_key(sorted(self.variables())))
        return m, self.terms[m]

    def content_int(self):
        g = 0
        for c in self.terms.values():
            g = _int_gcd(g, abs(c))
            if g == 1:
                return 1
        return g

    def mono_content(self):
        it = iter(self.terms)
        try:
            g = next(it)
        except StopIteration:
            return ()
        for m in it:
            g = _mono_gcd(g, m)
            if not g:
                return ()
        return g

    def degree_in(self, name):
        d = 0
        for m in self.terms:
            for n, e in m:
                if n == name and e > d:
                    d = e
        return d

    def as_univariate(self, name):
        """dict doubled-degree -> Poly coefficient (in the other variables)."""
        out = {}
        for m, c in self.terms.items():
            e = 0
            rest = []
            for n, ee in m:
                if n == name:
                    e = ee
                else:
                    rest.append((n, ee))
            coef = out.setdefault(e, {})
            rest = tuple(rest)
            coef[rest] = coef.get(rest, 0) + c
        return {e: Poly({m: c for m, c in d.items() if c}) for e, d in out.items()}

    @staticmethod
    def from_univariate(name, coeffs):
        d = {}
        for e, p in coeffs.items():
            for m, c in p.terms.items():
                mm = _mono_mul(m, ((name, e),)) if e else m
                n = d.get(mm, 0) + c
                if n:
                    d[mm] = n
                else:
                    del d[mm]
        return Poly(d)

    def __repr__(self):
        return "Poly(%s)" % format_poly(self)


def _poly_divmod(num, den):
    """Exact-division attempt: return q with num == q*den, else None.

    Runs a long-division loop over a max-heap of remainder monomials, so a
    step costs O(|den| log n) rather than a full leading-term rescan; the
    heap may hold stale entries, which pop as zero-coefficient skips.
    """
    if den.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if num.is_zero():
        return Poly({})
    dm, dc = den.leading()
    keyf = _dense_key(sorted(num.variables() | den.variables()))

    def hkey(m):
        deg, vec = keyf(m)
        return (-deg, tuple(-x for x in vec))

    coeffs = dict(num.terms)
    heap = [(hkey(m), m) for m in coeffs]
    heapq.heapify(heap)
    den_rest = [(m, c) for m, c in den.terms.items() if m != dm]
    qterms = {}
    while heap:
        _, rm = heapq.heappop(heap)
        rc = coeffs.get(rm, 0)
        if rc == 0:
            continue
        if not _mono_divides(dm, rm) or rc % dc != 0:
            return None
        del coeffs[rm]
        qm = _mono_div(rm, dm)
        qc = rc // dc
        qterms[qm] = qterms.get(qm, 0) + qc
        # every monomial added below is strictly smaller than rm, so rm
        # never re-enters the remainder
        for m2, c2 in den_rest:
            mm = _mono_mul(qm, m2)
            old = coeffs.get(mm, 0)
            nc = old - qc * c2
            if nc:
                if old == 0:
                    heapq.heappush(heap, (hkey(mm), mm))
                coeffs[mm] = nc
            else:
                coeffs.pop(mm, None)
    return Poly(qterms)


def _prem(A, B, name):
    """Pseudo-remainder of A by B with respect to variable `name`."""
    dA = A.degree_in(name)
    dB = B.degree_in(name)
    assert dB >= 0 and not B.is_zero()
    b = B.as_univariate(name)
    lb = b[dB]
    a = A.as_univariate(name)
    while True:
        dA = max(a) if a else 0
        if not a or dA < dB:
            break
        la = a[dA]
        # a := lb*a - la*x^(dA-dB)*b
        new = {}
        for e, p in a.items():
            new[e] = lb * p
        for e, p in b.items():
            ee = e + dA - dB
            q = la * p
            new[ee] = new.get(ee, Poly({})) - q
        a = {e: p for e, p in new.items() if not p.is_zero()}
    return Poly.from_univariate(name, a)


def poly_gcd(A, B):
    """gcd over Z, sign-normalized so the leading coefficient is positive."""
    if A.is_zero():
        return _sign_norm(B)
    if B.is_zero():
        return _sign_norm(A)
    ma, mb = A.mono_content(), B.mono_content()
    mg = _mono_gcd(ma, mb)
    A = A.mono_scale(_mono_div((), ma)) if ma else A
    B = B.mono_scale(_mono_div((), mb)) if mb else B
    ca, cb = A.content_int(), B.content_int()
    cg = _int_gcd(ca, cb)
    if ca > 1:
        A = Poly({m: c // ca for m, c in A.terms.items()})
    if cb > 1:
        B = Poly({m: c // cb for m, c in B.terms.items()})
    shared = sorted(A.variables() & B.variables())
    if not shared:
        g = Poly.const(cg)
        return _sign_norm(g.mono_scale(mg))
    if A.is_monomial() or B.is_monomial():
        # after content stripping a monomial is +-1 times a pure monomial
        g = Poly.const(cg).mono_scale(mg)
        return _sign_norm(g)
    # pick the shared variable of least combined degree
    name = min(shared, key=lambda n: A.degree_in(n) + B.degree_in(n))
    g = _gcd_in_var(A, B, name)
    return _sign_norm(g.scale(cg).mono_scale(mg))


def _gcd_in_var(A, B, name):
    """Primitive PRS in `name`; contents handled recursively."""
    au = A.as_univariate(name)
    bu = B.as_univariate(name)
    ca = _gcd_list(list(au.values()))
    cb = _gcd_list(list(bu.values()))
    cont = poly_gcd(ca, cb)
    Ap = _exact_div(A, ca)
    Bp = _exact_div(B, cb)
    if Ap.degree_in(name) < Bp.degree_in(name):
        Ap, Bp = Bp, Ap
    while True:
        if Bp.is_zero():
            g = Ap
            break
        if Bp.degree_in(name) == 0:
            g = Poly.const(1)
            break
        R = _prem(Ap, Bp, name)
        if R.is_zero():
            g = Bp
            break
        # primitive part
        ru = R.as_univariate(name)
        cr = _gcd_list(list(ru.values()))
        R = _exact_div(R, cr)
        Ap, Bp = Bp, R
    # make g primitive in `name`
    gu = g.as_univariate(name)
    cgp = _gcd_list(list(gu.values()))
    g = _exact_div(g, cgp)
    return g * cont


def _gcd_list(ps):
    g = Poly({})
    for p in ps:
        g = poly_gcd(g, p)
        if g.is_const() and abs(g.const_value()) == 1:
            return Poly.const(1)
    return g


def _exact_div(A, B):
    q = _poly_divmod(A, B)
    assert q is not None, "inexact polynomial division"
    return q


def _sign_norm(p):
    if p.is_zero():
        return p
    _, c = p.leading()
    return p if c > 0 else -p


# ---------------------------------------------------------------------------
# rational functions
#
# Denominators are kept factored.  Every denominator that actually occurs in
# the calculus is a product of an integer, torus-variable monomials and small
# binomials (1 - v^m, w - v^k w', 1 - w/z, ...), so we store that product as
# a multiset of factors and never expand it unless asked.  Cancellation is
# trial division of the numerator by the stored factors; no multivariate gcd
# runs on the arithmetic paths.  (Full gcd reduction survives below in
# poly_gcd/_reduce_pair for callers that want a canonical pair.)

_POLY_ONE = Poly.const(1)


def _dfs_add(dfs, p, m):
    k = p.key()
    old = dfs.get(k)
    dfs[k] = (p, m if old is None else old[1] + m)


def _freeze_dfs(dfs):
    return tuple(sorted(dfs.values(), key=lambda pm: pm[0].key()))


def _den_split(den):
    """Normalize a nonzero Poly into (sign_flip, int content, factor dict).

    den == +-content * monomial * core with the monomial turned into unit
    half-power factors and the core integer-primitive, monomial-free and
    sign-normalized.  sign_flip reports whether a -1 was pulled out.
    """
    ct = den.content_int()
    if ct > 1:
        den = Poly({m: c // ct for m, c in den.terms.items()})
    mono = den.mono_content()
    if mono:
        den = den.mono_scale(_mono_div((), mono))
    dfs = {}
    for name, e in mono:
        _dfs_add(dfs, Poly.from_mono({name: 1}), e)
    flip = False
    if den.is_const():
        flip = den.const_value() < 0
    else:
        _, lc = den.leading()
        if lc < 0:
            den = -den
            flip = True
        _dfs_add(dfs, den, 1)
    return flip, ct, dfs


def _cancel_parts(num, ct, dfs):
    """Trial-divide num by the stored factors and the integer content."""
    if dfs:
        out = {}
        for k, (p, m) in dfs.items():
            while m:
                q = _poly_divmod(num, p)
                if q is None:
                    break
                num = q
                m -= 1
            if m:
                out[k] = (p, m)
        dfs = out
    if ct != 1:
        g = _int_gcd(num.content_int(), ct)
        if g > 1:
            num = Poly({mm: c // g for mm, c in num.terms.items()})
            ct //= g
    return num, ct, dfs


def rf_from_factored(num, content, parts):
    """Assemble num / (content * prod p^m) from already cancelled parts.

    Each part is only re-normalized (sign, monomial split), never expanded
    or re-divided; used where an operation is known to preserve reducedness,
    e.g. shift-automorphism images of a fraction.
    """
    assert content > 0
    dfs = {}
    for p, m in parts:
        assert m > 0 and not p.is_zero()
        if p.is_monomial():
            (mono, c), = p.terms.items()
            assert abs(c) == 1
            if c < 0 and m % 2:
                num = -num
            for name, e in mono:
                _dfs_add(dfs, Poly.from_mono({name: 1}), e * m)
            continue
        _, lc = p.leading()
        if lc < 0:
            p = -p
            if m % 2:
                num = -num
        _dfs_add(dfs, p, m)
    return RationalFunction._make(num, content, dfs, cancel=False)


class RationalFunction:
    """Fraction of Polys with the denominator held in factored form.

    num is a plain Poly.  The denominator lives as a positive integer
    content plus a multiset of sign-normalized primitive factors; the
    expanded Poly is built lazily through the .den property.  Factors are
    division certificates, not irreducibles.  Values are not canonical, so
    == compares semantically; hash follows the stored representation and
    must not be used to deduplicate across arithmetic paths.
    """

    __slots__ = ("num", "_dct", "_dfs", "_dcache")

    def __init__(self, num, den, reduce=True):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num = Poly({})
            self._dct = 1
            self._dfs = ()
            self._dcache = _POLY_ONE
            return
        flip, ct, dfs = _den_split(den)
        if flip:
            num = -num
        if reduce:
            num, ct, dfs = _cancel_parts(num, ct, dfs)
        self.num = num
        self._dct = ct
        self._dfs = _freeze_dfs(dfs)
        self._dcache = None

    @staticmethod
    def _make(num, ct, dfs, cancel=True):
        r = RationalFunction.__new__(RationalFunction)
        if num.is_zero():
            r.num = Poly({})
            r._dct = 1
            r._dfs = ()
            r._dcache = _POLY_ONE
            return r
        if cancel:
            num, ct, dfs = _cancel_parts(num, ct, dfs)
        r.num = num
        r._dct = ct
        r._dfs = _freeze_dfs(dfs)
        r._dcache = None
        return r

    @property
    def den(self):
        d = self._dcache
        if d is None:
            d = Poly.const(self._dct)
            for p, m in self._dfs:
                d = d * p**m
            self._dcache = d
        return d

    def den_factors(self):
        """The stored factorization: tuple of (Poly factor, multiplicity)."""
        return self._dfs

    def den_content(self):
        return self._dct

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_int(n, d=1):
        assert d != 0
        if d < 0:
            n, d = -n, -d
        g = _int_gcd(abs(n), d)
        if g > 1:
            n, d = n // g, d // g
        return RationalFunction._make(Poly.const(n), d, {}, cancel=False)

    @staticmethod
    def var(name, power=1):
        """name^power in true units, any sign."""
        if power >= 0:
            return RationalFunction._make(Poly.var(name, power), 1, {}, cancel=False)
        dfs = {}
        _dfs_add(dfs, Poly.from_mono({name: 1}), -2 * power)
        return RationalFunction._make(_POLY_ONE, 1, dfs, cancel=False)

    @staticmethod
    def half(name, stored):
        """name^(stored/2) for any integer stored."""
        if stored >= 0:
            return RationalFunction._make(Poly.from_mono({name: stored}), 1, {}, cancel=False)
        dfs = {}
        _dfs_add(dfs, Poly.from_mono({name: 1}), -stored)
        return RationalFunction._make(_POLY_ONE, 1, dfs, cancel=False)

    @staticmethod
    def monomial(exps, coeff=1, den=1):
        """exps: dict name -> stored (doubled) exponent, any sign."""
        nume = {k: v for k, v in exps.items() if v > 0}
        num = Poly.from_mono(nume, coeff)
        if den < 0:
            num, den = -num, -den
        g = _int_gcd(abs(coeff), den)
        if g > 1:
            num = Poly.from_mono(nume, coeff // g)
            den //= g
        dfs = {}
        for name, e in exps.items():
            if e < 0:
                _dfs_add(dfs, Poly.from_mono({name: 1}), -e)
        return RationalFunction._make(num, den, dfs, cancel=False)

    # -- predicates ---------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return not self._dfs and self.num.is_const() and self.num.const_value() == self._dct

    def is_monomial(self):
        return self.num.is_monomial() and all(p.is_monomial() for p, _ in self._dfs)

    def variables(self):
        out = set(self.num.variables())
        for p, _ in self._dfs:
            out |= p.variables()
        return out

    # -- field operations ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, (RationalFunction, int, Poly)):
            return NotImplemented
        other = _coerce(other)
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self._dct == other._dct and self._dfs == other._dfs:
            return RationalFunction._make(
                self.num + other.num, self._dct, dict((p.key(), (p, m)) for p, m in self._dfs)
            )
        d1 = {p.key(): (p, m) for p, m in self._dfs}
        d2 = {p.key(): (p, m) for p, m in other._dfs}
        lcm = dict(d1)
        for k, (p, m) in d2.items():
            old = lcm.get(k)
            if old is None or old[1] < m:
                lcm[k] = (p, m)
        g = _int_gcd(self._dct, other._dct)
        cl = self._dct // g * other._dct
        n1 = self.num.scale(cl // self._dct)
        n2 = other.num.scale(cl // other._dct)
        for k, (p, m) in lcm.items():
            m1 = d1.get(k, (p, 0))[1]
            m2 = d2.get(k, (p, 0))[1]
            if m > m1:
                n1 = n1 * p ** (m - m1)
            if m > m2:
                n2 = n2 * p ** (m - m2)
        return RationalFunction._make(n1 + n2, cl, lcm)

    __radd__ = __add__

    def __neg__(self):
        r = RationalFunction.__new__(RationalFunction)
        r.num = -self.num
        r._dct = self._dct
        r._dfs = self._dfs
        r._dcache = self._dcache
        return r

    def __sub__(self, other):
        if not isinstance(other, (RationalFunction, int, Poly)):
            return NotImplemented
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, (RationalFunction, int, Poly)):
            return NotImplemented
        other = _coerce(other)
        if self.num.is_zero() or other.num.is_zero():
            return RF_ZERO
        dfs = {p.key(): (p, m) for p, m in self._dfs}
        for p, m in other._dfs:
            _dfs_add(dfs, p, m)
        return RationalFunction._make(
            self.num * other.num, self._dct * other._dct, dfs
        )

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        flip, ct, dfs = _den_split(self.num)
        num = self.den
        if flip:
            num = -num
        return RationalFunction._make(num, ct, dfs)

    def __truediv__(self, other):
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = RF_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, (RationalFunction, int)):
            return NotImplemented
        other = _coerce(other)
        if self._dct == other._dct and self._dfs == other._dfs:
            return self.num == other.num
        return (self - other).num.is_zero()

    def __hash__(self):
        return hash((self.num.key(), self._dct, tuple((p.key(), m) for p, m in self._dfs)))

    def key(self):
        return (self.num.key(), self.den.key())

    # -- substitution -------------------------------------------------------

    def subs(self, mapping):
        """Substitute variables by RationalFunctions.

        mapping: dict name -> RationalFunction (or int).  A variable carrying
        a half power may only be mapped to a value with an exact monomial
        square root.
        """
        mapping = {k: _coerce(v) for k, v in mapping.items()}
        out = _subs_poly(self.num, mapping)
        if self._dct != 1:
            out = out * RationalFunction.from_int(1, self._dct)
        for p, m in self._dfs:
            out = out * _subs_poly(p, mapping) ** (-m)
        return out

    def monomial_sqrt(self):
        """Exact square root of a monomial value (coefficient must be 1)."""
        assert self.is_monomial(), "square root of a non-monomial"
        (mn, cn), = self.num.terms.items()
        (md, cd), = self.den.terms.items()
        assert cn == 1 and cd == 1, "square root with non-unit coefficient"
        assert all(e % 2 == 0 for _, e in mn) and all(e % 2 == 0 for _, e in md)
        exps = {n: e // 2 for n, e in mn}
        for n, e in md:
            exps[n] = exps.get(n, 0) - e // 2
        return RationalFunction.monomial(exps)

    def __repr__(self):
        return to_text(self)


def _coerce(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, int):
        return RationalFunction.from_int(x)
    if isinstance(x, Poly):
        return RationalFunction._make(x, 1, {}, cancel=False)
    raise TypeError(type(x))


def _reduce_pair(num, den):
    if num.is_zero():
        return Poly({}), Poly.const(1)
    g = poly_gcd(num, den)
    if not (g.is_const() and g.const_value() == 1):
        num = _exact_div(num, g)
        den = _exact_div(den, g)
    _, c = den.leading()
    if c < 0:
        num, den = -num, -den
    return num, den


def _subs_poly(p, mapping):
    # split each monomial into substituted part and kept part
    out = RF_ZERO
    for m, c in p.terms.items():
        term = RationalFunction.from_int(c)
        kept = {}
        for name, e in m:
            target = mapping.get(name)
            if target is None:
                kept[name] = e
            else:
                if e % 2 == 0:
                    term = term * target ** (e // 2)
                else:
                    term = term * target.monomial_sqrt() ** e
        if kept:
            term = term * RationalFunction.monomial(kept)
        out = out + term
    return out


RF_ZERO = RationalFunction(Poly({}), Poly.const(1), reduce=False)
RF_ONE = RationalFunction(Poly.const(1), Poly.const(1), reduce=False)


def rf(n):
    return _coerce(n)


def rf_sum(values):
    """Sum RationalFunctions over one global common denominator.

    Equivalent to repeated +, but telescoping sums whose partial sums are
    huge collapse here with a single cancellation at the end instead of a
    cancellation per step.
    """
    vals = [v for v in (_coerce(x) for x in values) if not v.num.is_zero()]
    if not vals:
        return RF_ZERO
    if len(vals) == 1:
        return vals[0]
    ct = 1
    lcm = {}
    for f in vals:
        ct = ct // _int_gcd(ct, f._dct) * f._dct
        for p, m in f._dfs:
            k = p.key()
            old = lcm.get(k)
            if old is None or old[1] < m:
                lcm[k] = (p, m)
    num = Poly({})
    for f in vals:
        n = f.num.scale(ct // f._dct)
        have = {p.key(): m for p, m in f._dfs}
        for k, (p, m) in lcm.items():
            miss = m - have.get(k, 0)
            if miss:
                n = n * p**miss
        num = num + n
    return RationalFunction._make(num, ct, lcm)


def v_pow(k):
    """v^k in true units."""
    return RationalFunction.var("v", k)


def vd_pow(k, d):
    """v_d^k = v^(d*k)."""
    return RationalFunction.var("v", d * k)


# ---------------------------------------------------------------------------
# q-integers


def qint(m, d=1):
    """[m] in v_d = v^d: (v_d^m - v_d^-m)/(v_d - v_d^-1), as a closed sum."""
    if m == 0:
        return RF_ZERO
    sign = 1
    if m < 0:
        sign, m = -1, -m
    out = RF_ZERO
    for k in range(m):
        out = out + vd_pow(m - 1 - 2 * k, d)
    return out * sign


def qfact(n, d=1):
    out = RF_ONE
    for k in range(1, n + 1):
        out = out * qint(k, d)
    return out


def qbinom(a, b, d=1):
    """[a; b] in v_d: [a-b+1][a-b+2]...[a] / ([1][2]...[b])."""
    assert b >= 0
    num = RF_ONE
    for j in range(a - b + 1, a + 1):
        num = num * qint(j, d)
    return num / qfact(b, d)


# ---------------------------------------------------------------------------
# truncated Laurent series


class TruncatedSeries:
    """Truncated expansion of a function of one distinguished variable.

    direction '+' expands around z = infinity (powers z^-k), '-' around
    z = 0 (powers z^k).  Keys of coeffs are doubled exponents of the local
    parameter (z^-1 resp. z); `order` is the largest doubled exponent that
    is still trustworthy.  Keys may be negative (finite principal part).
    """

    __slots__ = ("var", "direction", "order", "coeffs")

    def __init__(self, var, direction, order, coeffs):
        assert direction in ("+", "-")
        self.var = var
        self.direction = direction
        self.order = order
        self.coeffs = {k: c for k, c in coeffs.items() if k <= order and not c.is_zero()}

    # -- basics -------------------------------------------------------------

    def coeff(self, true_exp):
        """Coefficient of z^(-true_exp) for '+', of z^(true_exp) for '-'."""
        return self.coeffs.get(2 * true_exp, RF_ZERO)

    def coeff_stored(self, k):
        return self.coeffs.get(k, RF_ZERO)

    def truncate(self, order):
        assert order <= self.order
        return TruncatedSeries(self.var, self.direction, order, self.coeffs)

    def valuation(self):
        if not self.coeffs:
            return self.order + 1
        return min(self.coeffs)

    def _compat(self, other):
        assert self.var == other.var and self.direction == other.direction

    def __add__(self, other):
        if isinstance(other, (int, RationalFunction)):
            other = TruncatedSeries.constant(self.var, self.direction, self.order, _coerce(other))
        self._compat(other)
        order = min(self.order, other.order)
        d = dict(self.coeffs)
        for k, c in other.coeffs.items():
            d[k] = d.get(k, RF_ZERO) + c
        return TruncatedSeries(self.var, self.direction, order, d)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(
            self.var, self.direction, self.order, {k: -c for k, c in self.coeffs.items()}
        )

    def __sub__(self, other):
        return self + (-other if isinstance(other, TruncatedSeries) else -_coerce(other))

    def __mul__(self, other):
        if isinstance(other, (int, RationalFunction)):
            c = _coerce(other)
            return TruncatedSeries(
                self.var, self.direction, self.order,
                {k: cc * c for k, cc in self.coeffs.items()},
            )
        self._compat(other)
        va, vb = self.valuation(), other.valuation()
        order = min(self.order + vb, other.order + va)
        d = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                if k <= order:
                    d[k] = d.get(k, RF_ZERO) + c1 * c2
        return TruncatedSeries(self.var, self.direction, order, d)

    __rmul__ = __mul__

    def inverse(self):
        """Series inverse; the lowest coefficient must be nonzero."""
        val = self.valuation()
        assert val <= self.order, "cannot invert an (effectively) zero series"
        lead = self.coeffs[val]
        order = self.order - 2 * val
        inv_lead = lead.inverse()
        out = {-val: inv_lead}
        # Newton-free forward recurrence
        for k in range(-val + 1, order + 1):
            acc = RF_ZERO
            for j, c in self.coeffs.items():
                jj = j - val  # >= 0
                if 0 < jj <= k + val:
                    prev = out.get(k - jj, None)
                    if prev is not None:
                        acc = acc + c * prev
            if not acc.is_zero():
                out[k] = -inv_lead * acc
        return TruncatedSeries(self.var, self.direction, order, out)

    def shift_argument(self, scalar):
        """Replace z by scalar*z; scalar a monomial RationalFunction."""
        assert scalar.is_monomial()
        d = {}
        for k, c in self.coeffs.items():
            # coefficient of (local param)^k picks scalar^(-+ k/2)
            s = scalar.monomial_sqrt() ** (-k if self.direction == "+" else k)
            d[k] = c * s
        return TruncatedSeries(self.var, self.direction, self.order, d)

    @staticmethod
    def constant(var, direction, order, value):
        return TruncatedSeries(var, direction, order, {0: _coerce(value)})

    def mono_shift(self, true_exp):
        """Multiply by var^true_exp (exact, shifts every key)."""
        t = -2 * true_exp if self.direction == "+" else 2 * true_exp
        return TruncatedSeries(
            self.var, self.direction, self.order + t,
            {k + t: c for k, c in self.coeffs.items()},
        )

    def log1p(self):
        """log of self where self = 1 + (positive valuation part)."""
        one = self.coeffs.get(0, RF_ZERO)
        assert one == RF_ONE, "log1p needs leading coefficient 1"
        x = TruncatedSeries(
            self.var, self.direction, self.order,
            {k: c for k, c in self.coeffs.items() if k != 0},
        )
        out = TruncatedSeries(self.var, self.direction, self.order, {})
        power = TruncatedSeries.constant(self.var, self.direction, self.order, RF_ONE)
        val = x.valuation()
        if val > self.order:
            return out
        n = 1
        while n * val <= self.order:
            power = power * x
            out = out + power * RationalFunction.from_int((-1) ** (n + 1), n)
            n += 1
        return out

    def exp(self):
        """exp of a series with positive valuation."""
        val = self.valuation()
        out = TruncatedSeries.constant(self.var, self.direction, self.order, RF_ONE)
        if val > self.order:
            return out
        assert val > 0, "exp needs positive valuation"
        power = TruncatedSeries.constant(self.var, self.direction, self.order, RF_ONE)
        fact = 1
        n = 1
        while n * val <= self.order:
            power = power * self
            fact *= n
            out = out + power * RationalFunction.from_int(1, fact)
            n += 1
        return out

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._compat(other)
        order = min(self.order, other.order)
        keys = {k for k in self.coeffs if k <= order} | {k for k in other.coeffs if k <= order}
        return all(self.coeff_stored(k) == other.coeff_stored(k) for k in keys)

    def __repr__(self):
        sym = "%s^-1" % self.var if self.direction == "+" else self.var
        parts = []
        for k in sorted(self.coeffs):
            parts.append("(%s)*(%s)^(%d/2)" % (to_text(self.coeffs[k]), sym, k))
        body = " + ".join(parts) if parts else "0"
        return "%s + O((%s)^(%d/2))" % (body, sym, self.order + 1)


def expand(f, var, direction, M):
    """Expansion of f around var = infinity ('+') or var = 0 ('-').

    Returns a TruncatedSeries carrying every (doubled) local exponent up to
    2*M, i.e. the first M+1 whole-power coefficients of gamma(z)^{+-}.
    """
    assert direction in ("+", "-")
    order = 2 * M
    num_u = _z_split(f.num, var, direction)
    den_u = _z_split(f.den, var, direction)
    # enough working precision that the product still covers `order`
    room = order + 2 * max(abs(k) for k in den_u) + max(abs(k) for k in num_u) + 4
    num_s = TruncatedSeries(var, direction, room, dict(num_u))
    den_s = TruncatedSeries(var, direction, room, dict(den_u))
    res = num_s * den_s.inverse()
    return res.truncate(order)


def _z_split(p, var, direction):
    """Polynomial -> dict doubled-local-exponent -> coefficient."""
    out = {}
    for m, c in p.terms.items():
        e = 0
        rest = {}
        for n, ee in m:
            if n == var:
                e = ee
            else:
                rest[n] = ee
        k = -e if direction == "+" else e
        coef = RationalFunction.monomial(rest, c) if rest else RationalFunction.from_int(c)
        out[k] = out.get(k, RF_ZERO) + coef
    if not out:
        out[0] = RF_ZERO
    return {k: c for k, c in out.items()} or {0: RF_ZERO}


# ---------------------------------------------------------------------------
# text form
#
# Canonical printing: monomials sorted descending in graded lex order,
# explicit * and ^, half exponents as ^(k/2).  The parser accepts the full
# expression grammar (so round-trips are guaranteed and tests may write
# ad-hoc expressions).


def _format_exp(e):
    if e == 2:
        return ""
    if e % 2 == 0:
        return "^%d" % (e // 2)
    return "^(%d/2)" % e


def format_poly(p):
    if p.is_zero():
        return "0"
    parts = []
    key = _dense_key(sorted(p.variables()))
    for m in sorted(p.terms, key=key, reverse=True):
        c = p.terms[m]
        factors = [name + _format_exp(e) for name, e in m]
        if not factors:
            body = str(abs(c))
        else:
            body = "*".join(factors)
            if abs(c) != 1:
                body = "%d*%s" % (abs(c), body)
        parts.append(("- " if c < 0 else "+ ") + body)
    out = " ".join(parts)
    if out.startswith("+ "):
        out = out[2:]
    elif out.startswith("- "):
        out = "-" + out[2:]
    return out


def to_text(f):
    if isinstance(f, Poly):
        return format_poly(f)
    if f.den.is_const() and f.den.const_value() == 1:
        return format_poly(f.num)
    return "(%s)/(%s)" % (format_poly(f.num), format_poly(f.den))


class _Parser:
    def __init__(self, s):
        self.s = s
        self.i = 0

    def peek(self):
        while self.i < len(self.s) and self.s[self.i] == " ":
            self.i += 1
        return self.s[self.i] if self.i < len(self.s) else ""

    def expr(self):
        out = self.term()
        while True:
            c = self.peek()
            if c == "+":
                self.i += 1
                out = out + self.term()
            elif c == "-":
                self.i += 1
                out = out - self.term()
            else:
                return out

    def term(self):
        out = self.unary()
        while True:
            c = self.peek()
            if c == "*":
                self.i += 1
                out = out * self.unary()
            elif c == "/":
                self.i += 1
                out = out / self.unary()
            else:
                return out

    def unary(self):
        c = self.peek()
        if c == "-":
            self.i += 1
            return -self.unary()
        if c == "+":
            self.i += 1
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.i += 1
            num, den = self.exponent()
            if den == 1:
                return base ** num
            assert den == 2
            return base.monomial_sqrt() ** num
        return base

    def exponent(self):
        if self.peek() == "(":
            self.i += 1
            sign = 1
            if self.peek() == "-":
                sign, self.i = -1, self.i + 1
            num = self.integer()
            den = 1
            if self.peek() == "/":
                self.i += 1
                den = self.integer()
            assert self.peek() == ")", "bad exponent"
            self.i += 1
            return sign * num, den
        sign = 1
        if self.peek() == "-":
            sign, self.i = -1, self.i + 1
        return sign * self.integer(), 1

    def integer(self):
        c = self.peek()
        assert c.isdigit(), "expected integer at %d" % self.i
        j = self.i
        while j < len(self.s) and self.s[j].isdigit():
            j += 1
        n = int(self.s[self.i:j])
        self.i = j
        return n

    def atom(self):
        c = self.peek()
        if c == "(":
            self.i += 1
            out = self.expr()
            assert self.peek() == ")", "unbalanced parens"
            self.i += 1
            return out
        if c.isdigit():
            return RationalFunction.from_int(self.integer())
        assert c.isalpha() or c == "_", "unexpected %r at %d" % (c, self.i)
        j = self.i
        while j < len(self.s) and (self.s[j].isalnum() or self.s[j] == "_"):
            j += 1
        name = self.s[self.i:j]
        self.i = j
        return RationalFunction.var(name)


def parse_rational(s):
    p = _Parser(s)
    out = p.expr()
    assert p.peek() == "", "trailing input: %r" % s[p.i:]
    return out
