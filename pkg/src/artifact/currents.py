"""Formal-distribution calculus for operator-valued currents.

A current like  sum_r c_r delta(x_r/z) D_r  is stored as a map from
support points (monomials v^a * x^e) to difference-operator coefficients
standing LEFT of the delta.  Products of currents in distinct formal
variables stay exact: moving a shift monomial past delta(y/w) replaces
the support y by its sigma-shift.

Multi-variable distributions with distinct support tuples are linearly
independent (distinct multiplicative characters of Z^N), so a
distribution vanishes iff every grouped coefficient vanishes; no
analytic limits appear anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

from .qweyl import DifferenceOperator
from .scalars import RF_ZERO, RationalFunction, rf


class PoleAtSupport(ValueError):
    """A rational multiplier has a pole at a delta support."""


class NonSimplePole(ValueError):
    """pm_difference / residue hit a pole of order > 1."""


class UnsupportedPole(ValueError):
    """A pole is not of the monomial form v^a * variable^e."""


# ---------------------------------------------------------------------------
# support points


@dataclass(frozen=True)
class SupportPoint:
    """The monomial v^(v_stored/2) * base^(base_stored/2); base may be None
    for a pure power of v.  Stored exponents are doubled."""

    v_stored: int
    base: object
    base_stored: int

    def to_rf(self):
        exps = {}
        if self.v_stored:
            exps["v"] = self.v_stored
        if self.base is not None and self.base_stored:
            exps[self.base] = self.base_stored
        if not exps:
            return rf(1)
        return RationalFunction.monomial(exps)

    def power(self, r):
        """self^r as a RationalFunction (r any integer)."""
        exps = {}
        if self.v_stored:
            exps["v"] = self.v_stored * r
        if self.base is not None and self.base_stored:
            exps[self.base] = self.base_stored * r
        if not exps:
            return rf(1)
        return RationalFunction.monomial(exps)

    def shifted(self, spec, exponents):
        """Support after the substitution w -> v^(2*d*a) w."""
        if self.base is None:
            return self
        a = exponents.get(self.base, 0)
        if not a:
            return self
        d = spec.weight(self.base)
        return SupportPoint(
            self.v_stored + 2 * d * a * self.base_stored, self.base, self.base_stored
        )

    @staticmethod
    def from_rf(f):
        """Parse a monomial rational function with unit coefficient."""
        if not f.is_monomial():
            raise UnsupportedPole("pole not monomial-supported: %s" % (f,))
        (mn, cn), = f.num.terms.items()
        (md, cd), = f.den.terms.items()
        if cn * cd != 1:
            raise UnsupportedPole("pole not monomial-supported: %s" % (f,))
        exps = dict(mn)
        for name, e in md:
            exps[name] = exps.get(name, 0) - e
        exps = {n: e for n, e in exps.items() if e}
        v_stored = exps.pop("v", 0)
        if len(exps) > 1:
            raise UnsupportedPole("pole not monomial-supported: %s" % (f,))
        if exps:
            (base, e), = exps.items()
            return SupportPoint(v_stored, base, e)
        return SupportPoint(v_stored, None, 0)


# ---------------------------------------------------------------------------
# one-variable distributions


class DeltaDistribution:
    """sum over supports x of  c_x * delta(x/z), c_x a DifferenceOperator."""

    __slots__ = ("spec", "var", "terms")

    def __init__(self, spec, var, terms):
        self.spec = spec
        self.var = var
        self.terms = {sp: op for sp, op in terms.items() if not op.is_zero()}

    @staticmethod
    def zero(spec, var):
        return DeltaDistribution(spec, var, {})

    @staticmethod
    def single(spec, var, support, op):
        return DeltaDistribution(spec, var, {support: op})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        assert self.var == other.var and self.spec == other.spec
        d = dict(self.terms)
        for sp, op in other.terms.items():
            s = d.get(sp)
            s = op if s is None else s + op
            if s.is_zero():
                d.pop(sp, None)
            else:
                d[sp] = s
        return DeltaDistribution(self.spec, self.var, d)

    def __neg__(self):
        return DeltaDistribution(self.spec, self.var, {sp: -op for sp, op in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        """Left multiplication by a scalar free of the distribution variable."""
        return DeltaDistribution(
            self.spec, self.var, {sp: c * op for sp, op in self.terms.items()}
        )

    def rmul_scalar(self, c):
        """Right multiplication by a scalar free of the distribution variable.

        The scalar passes through the shift monomials of each coefficient,
        so it comes back sigma-shifted.
        """
        if isinstance(c, RationalFunction):
            assert self.var not in c.variables(), "scalar depends on %s" % self.var
        return DeltaDistribution(
            self.spec, self.var, {sp: op * c for sp, op in self.terms.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, DeltaDistribution):
            return NotImplemented
        return self.var == other.var and self.terms == other.terms

    def mul_rational(self, g):
        """Multiply by a rational function of the formal variable.

        g is evaluated at each support; a vanishing denominator raises
        PoleAtSupport, a vanishing numerator drops the term.
        """
        out = {}
        for sp, op in self.terms.items():
            val = _eval_at(g, {self.var: sp})
            if val.is_zero():
                continue
            out[sp] = val * op
        return DeltaDistribution(self.spec, self.var, out)

    def mode(self, r):
        """Coefficient of z^(-r): sum of x^r * c_x."""
        total = DifferenceOperator.zero(self.spec)
        for sp, op in self.terms.items():
            total = total + sp.power(r) * op
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for sp in sorted(self.terms, key=lambda s: (str(s.base), s.base_stored, s.v_stored)):
            bits.append("[%s] d(%s/%s)" % (self.terms[sp], sp.to_rf(), self.var))
        return " + ".join(bits)


def _eval_at(g, assignment):
    mapping = {var: sp.to_rf() for var, sp in assignment.items()}
    try:
        return g.subs(mapping)
    except ZeroDivisionError:
        raise PoleAtSupport(
            "pole at support %s of %s" % (sorted(mapping.items()), g)
        ) from None


# ---------------------------------------------------------------------------
# multi-variable distributions


class DeltaDistributionN:
    """sum over support tuples of  c * delta(x_1/z_1)...delta(x_N/z_N)."""

    __slots__ = ("spec", "vars", "terms")

    def __init__(self, spec, vars, terms):
        self.spec = spec
        self.vars = tuple(vars)
        self.terms = {t: op for t, op in terms.items() if not op.is_zero()}

    @staticmethod
    def from_single(e):
        return DeltaDistributionN(e.spec, (e.var,), {(sp,): op for sp, op in e.terms.items()})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        assert self.vars == other.vars
        d = dict(self.terms)
        for t, op in other.terms.items():
            s = d.get(t)
            s = op if s is None else s + op
            if s.is_zero():
                d.pop(t, None)
            else:
                d[t] = s
        return DeltaDistributionN(self.spec, self.vars, d)

    def __neg__(self):
        return DeltaDistributionN(self.spec, self.vars, {t: -op for t, op in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return DeltaDistributionN(self.spec, self.vars, {t: c * op for t, op in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, DeltaDistributionN):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def append(self, f):
        """Product with a one-variable distribution in a fresh variable."""
        assert f.var not in self.vars
        out = {}
        for sups, A in self.terms.items():
            for y, B in f.terms.items():
                for m, c in A.terms.items():
                    y2 = y.shifted(self.spec, dict(m))
                    piece = DifferenceOperator(self.spec, {m: c}, audit=False) * B
                    key = sups + (y2,)
                    s = out.get(key)
                    s = piece if s is None else s + piece
                    if s.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = s
        return DeltaDistributionN(self.spec, self.vars + (f.var,), out)

    def mul_rational(self, g):
        out = {}
        for sups, op in self.terms.items():
            assignment = dict(zip(self.vars, sups))
            val = _eval_at(g, assignment)
            if val.is_zero():
                continue
            s = out.get(sups)
            s = val * op if s is None else s + val * op
            if s.is_zero():
                out.pop(sups, None)
            else:
                out[sups] = s
        return DeltaDistributionN(self.spec, self.vars, out)

    def mode(self, exponents):
        """Coefficient of prod z_i^(-r_i); exponents: dict var -> r."""
        total = DifferenceOperator.zero(self.spec)
        for sups, op in self.terms.items():
            factor = rf(1)
            for var, sp in zip(self.vars, sups):
                factor = factor * sp.power(exponents.get(var, 0))
            total = total + factor * op
        return total

    def reorder(self, new_vars):
        """The same distribution with its variables listed in a new order."""
        new_vars = tuple(new_vars)
        assert sorted(new_vars) == sorted(self.vars)
        idx = [self.vars.index(v) for v in new_vars]
        terms = {}
        for sups, op in self.terms.items():
            key = tuple(sups[i] for i in idx)
            s = terms.get(key)
            s = op if s is None else s + op
            terms[key] = s
        return DeltaDistributionN(self.spec, new_vars, terms)

    def symmetrize(self, perms):
        """Sum of the distribution with its variables permuted.

        perms: iterable of index tuples p, each meaning z_i -> z_{p[i]};
        the support tuple is reindexed accordingly.
        """
        total = DeltaDistributionN(self.spec, self.vars, {})
        for p in perms:
            d = {}
            for sups, op in self.terms.items():
                new = [None] * len(sups)
                for i, x in enumerate(sups):
                    new[p[i]] = x
                key = tuple(new)
                s = d.get(key)
                s = op if s is None else s + op
                d[key] = s
            total = total + DeltaDistributionN(self.spec, self.vars, d)
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for sups, op in self.terms.items():
            ds = " ".join("d(%s/%s)" % (sp.to_rf(), v) for sp, v in zip(sups, self.vars))
            bits.append("[%s] %s" % (op, ds))
        return " + ".join(bits)


def product(e, f):
    """Product of two one-variable distributions as a two-variable one,
    with coincident support pairs collapsed to explicit diagonal terms."""
    raw = DeltaDistributionN.from_single(e).append(f)
    return DeltaDistribution2.from_raw(raw)


class DeltaDistribution2:
    """Two-variable distribution split into off-diagonal support pairs and
    diagonal terms c * delta(x/z) delta(z/w)."""

    __slots__ = ("spec", "var1", "var2", "offdiag", "diag")

    def __init__(self, spec, var1, var2, offdiag, diag):
        self.spec = spec
        self.var1 = var1
        self.var2 = var2
        self.offdiag = {t: op for t, op in offdiag.items() if not op.is_zero()}
        self.diag = {sp: op for sp, op in diag.items() if not op.is_zero()}

    @staticmethod
    def from_raw(raw):
        assert len(raw.vars) == 2
        offdiag = {}
        diag = {}
        for (x, y), op in raw.terms.items():
            if x == y:
                s = diag.get(x)
                diag[x] = op if s is None else s + op
            else:
                offdiag[(x, y)] = op
        return DeltaDistribution2(raw.spec, raw.vars[0], raw.vars[1], offdiag, diag)

    @staticmethod
    def diagonal(spec, var1, var2, e):
        """delta(var1/var2)-multiple with one-variable content e."""
        return DeltaDistribution2(spec, var1, var2, {}, dict(e.terms))

    def is_zero(self):
        return not self.offdiag and not self.diag

    def __add__(self, other):
        assert (self.var1, self.var2) == (other.var1, other.var2)
        off = dict(self.offdiag)
        for t, op in other.offdiag.items():
            s = off.get(t)
            s = op if s is None else s + op
            if s.is_zero():
                off.pop(t, None)
            else:
                off[t] = s
        dia = dict(self.diag)
        for sp, op in other.diag.items():
            s = dia.get(sp)
            s = op if s is None else s + op
            if s.is_zero():
                dia.pop(sp, None)
            else:
                dia[sp] = s
        return DeltaDistribution2(self.spec, self.var1, self.var2, off, dia)

    def __neg__(self):
        return DeltaDistribution2(
            self.spec, self.var1, self.var2,
            {t: -op for t, op in self.offdiag.items()},
            {sp: -op for sp, op in self.diag.items()},
        )

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, DeltaDistribution2):
            return NotImplemented
        return (
            (self.var1, self.var2) == (other.var1, other.var2)
            and self.offdiag == other.offdiag
            and self.diag == other.diag
        )

    def mul_rational(self, g):
        off = {}
        for (x, y), op in self.offdiag.items():
            val = _eval_at(g, {self.var1: x, self.var2: y})
            if not val.is_zero():
                off[(x, y)] = val * op
        dia = {}
        for sp, op in self.diag.items():
            val = _eval_at(g, {self.var1: sp, self.var2: sp})
            if not val.is_zero():
                dia[sp] = val * op
        return DeltaDistribution2(self.spec, self.var1, self.var2, off, dia)

    def mode(self, r, s):
        """Coefficient of var1^(-r) var2^(-s)."""
        total = DifferenceOperator.zero(self.spec)
        for (x, y), op in self.offdiag.items():
            total = total + (x.power(r) * y.power(s)) * op
        for sp, op in self.diag.items():
            total = total + sp.power(r + s) * op
        return total

    def term_count(self):
        return len(self.offdiag) + len(self.diag)

    def __repr__(self):
        bits = []
        for (x, y), op in self.offdiag.items():
            bits.append(
                "[%s] d(%s/%s) d(%s/%s)"
                % (op, x.to_rf(), self.var1, y.to_rf(), self.var2)
            )
        for sp, op in self.diag.items():
            bits.append(
                "[%s] d(%s/%s) d(%s/%s)"
                % (op, sp.to_rf(), self.var1, self.var1, self.var2)
            )
        return " + ".join(bits) if bits else "0"


# ---------------------------------------------------------------------------
# residues and the plus/minus expansion difference


def _univariate_in(f, var):
    """f as dict true-degree -> RationalFunction coefficients, plus a check
    that `var` occurs only in whole powers."""
    num_u = f.num.as_univariate(var)
    den_u = f.den.as_univariate(var)
    assert all(e % 2 == 0 for e in num_u), "half powers of %s unsupported here" % var
    assert all(e % 2 == 0 for e in den_u), "half powers of %s unsupported here" % var

    def conv(d):
        out = {}
        for e, p in d.items():
            out[e // 2] = RationalFunction(p, _one())
        return out

    return conv(num_u), conv(den_u)


def _one():
    from .scalars import Poly

    return Poly.const(1)


def _poly_eval(coeffs, x):
    out = RF_ZERO
    for e, c in coeffs.items():
        out = out + c * x**e
    return out


def _synth_div(coeffs, x):
    """Divide sum c_e z^e by (z - x); return (quotient dict, remainder)."""
    deg = max(coeffs)
    q = {}
    carry = RF_ZERO
    for e in range(deg, 0, -1):
        carry = coeffs.get(e, RF_ZERO) + carry
        q[e - 1] = carry
        carry = carry * x
    rem = coeffs.get(0, RF_ZERO) + carry
    return {e: c for e, c in q.items() if not c.is_zero()}, rem


def _monomial_roots(coeffs, context):
    """Roots of a z-polynomial with rational coefficients, all of which must
    be monomials v^a * x^e; raises UnsupportedPole otherwise."""
    coeffs = {e: c for e, c in coeffs.items() if not c.is_zero()}
    low = min(coeffs)
    if low > 0:
        coeffs = {e - low: c for e, c in coeffs.items()}
    deg = max(coeffs)
    if deg == 0:
        return []
    lead = coeffs[deg]
    tail = coeffs[min(coeffs)]
    ratio = tail / lead
    candidates = _root_candidates(ratio, deg)
    roots = []
    work = dict(coeffs)
    progress = True
    while max(work) > 0 and progress:
        progress = False
        if len(work) == 2 and max(work) == min(work) + 1:
            # linear in disguise after stripping: a1 z + a0
            a1 = work[max(work)]
            a0 = work[min(work)]
            root = -a0 / a1
            sp = SupportPoint.from_rf(root)
            roots.append(sp)
            work = {0: rf(1)}
            progress = True
            break
        for cand in candidates:
            val = _poly_eval(work, cand)
            if val.is_zero():
                q, rem = _synth_div(work, cand)
                assert rem.is_zero()
                roots.append(SupportPoint.from_rf(cand))
                work = q
                progress = True
                break
    if max(work, default=0) > 0:
        raise UnsupportedPole(
            "pole not monomial-supported: unfactored %s in %s" % (work, context)
        )
    return roots


def _root_candidates(ratio, deg):
    """Monomial candidates x with x^k | ratio-like structure: divisors of the
    root product times a bounded power of v, both signs."""
    if ratio.is_zero():
        return []
    num_vars = {}
    if not ratio.is_monomial():
        # fall back: collect monomials of numerator and denominator
        monos = list(ratio.num.terms) + list(ratio.den.terms)
    else:
        (mn, _), = ratio.num.terms.items()
        (md, _), = ratio.den.terms.items()
        monos = [mn, md]
    for m in monos:
        for name, e in m:
            if name != "v":
                num_vars[name] = max(num_vars.get(name, 0), abs(e))
    vbound = 0
    for m in monos:
        for name, e in m:
            if name == "v":
                vbound = max(vbound, abs(e))
    vbound += 4 * deg + 4
    out = []
    bases = [(None, 0)]
    for name, top in num_vars.items():
        for e in range(1, top + 1):
            bases.append((name, e))
    for base, e in bases:
        for a in range(-vbound, vbound + 1):
            if base is None and a == 0:
                continue
            out.append(SupportPoint(a, base, e).to_rf())
    return out


def residue(gamma, pole, var=None):
    """Res at z = pole of gamma(z) dz/z, for a simple monomial pole.

    pole: SupportPoint or monomial RationalFunction.
    """
    if isinstance(pole, SupportPoint):
        x = pole.to_rf()
    else:
        x = pole
    if var is None:
        var = _formal_var_of(gamma)
    num_u, den_u = _univariate_in(gamma, var)
    q, rem = _synth_div(den_u, x)
    if not rem.is_zero():
        raise UnsupportedPole("%s is not a pole of %s" % (x, gamma))
    _, rem2 = _synth_div(q, x)
    if rem2.is_zero():
        raise NonSimplePole("non-simple pole at %s" % (x,))
    # gamma * (z - x)/z at z = x
    numerator = _poly_eval(num_u, x)
    denominator = _poly_eval(q, x) * x
    return numerator / denominator


def _formal_var_of(gamma, default="z"):
    from .scalars import kind_of

    formals = [n for n in gamma.variables() if kind_of(n) == "formal"]
    if len(formals) == 1:
        return formals[0]
    if not formals:
        return default
    raise AssertionError("ambiguous formal variable in %s" % (gamma,))


def pm_difference(spec, gamma, var=None):
    """The distribution gamma^+ - gamma^-: expansions at infinity minus at
    zero of a rational function whose finite nonzero poles are simple and
    monomial.  Equals sum over poles x of delta(z/x) * Res_{z=x} gamma dz/z.
    """
    if var is None:
        var = _formal_var_of(gamma)
    num_u, den_u = _univariate_in(gamma, var)
    # poles at zero/infinity contribute nothing
    roots = _monomial_roots(den_u, gamma)
    seen = {}
    for sp in roots:
        seen[sp] = seen.get(sp, 0) + 1
    terms = {}
    for sp, mult in seen.items():
        if mult > 1:
            raise NonSimplePole("non-simple pole at %s in %s" % (sp.to_rf(), gamma))
        res = residue(gamma, sp, var=var)
        if not res.is_zero():
            terms[sp] = DifferenceOperator.from_scalar(spec, res)
    return DeltaDistribution(spec, var, terms)


def mul_rational(g, e):
    """Module-level alias matching the operation table."""
    return e.mul_rational(g)


def mode(e, r):
    return e.mode(r)
