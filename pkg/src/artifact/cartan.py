"""Root data: Cartan matrices, orientations, shifts, framings.

All value types are frozen dataclasses with tuple fields, so they hash and
can be shared freely.  Vertices are indexed 0..n-1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .scalars import declare


@dataclass(frozen=True)
class CartanDatum:
    """Symmetrizable Cartan matrix with a fixed orientation of the diagram.

    c: rows of the Cartan matrix (c[i][j] = c_ij).
    d: symmetrizers, positive integers with d_i c_ij = d_j c_ji.
    orientation: directed edges (i, j) meaning i -> j, one per edge of the
    diagram (multiple edges of non-simply-laced types count once).
    """

    c: tuple
    d: tuple
    orientation: tuple

    @property
    def n(self):
        return len(self.d)

    @property
    def vertices(self):
        return range(self.n)

    def cij(self, i, j):
        return self.c[i][j]

    def di(self, i):
        return self.d[i]

    def adjacent(self, i, j):
        return i != j and self.c[i][j] < 0

    def neighbors(self, i):
        return [j for j in self.vertices if self.adjacent(i, j)]

    def edges_into(self, i):
        """Vertices j with an oriented edge j -> i."""
        return [j for (j, k) in self.orientation if k == i]

    def edges_out_of(self, i):
        """Vertices j with an oriented edge i -> j."""
        return [k for (j, k) in self.orientation if j == i]

    def validate(self):
        """Check all invariants; return a report dict (never raises)."""
        problems = []
        n = self.n
        if len(self.c) != n or any(len(row) != n for row in self.c):
            problems.append("cartan matrix shape does not match symmetrizers")
            return {"valid": False, "problems": problems}
        for i in range(n):
            if self.c[i][i] != 2:
                problems.append("c[%d][%d] != 2" % (i, i))
            if self.d[i] <= 0:
                problems.append("d[%d] not positive" % i)
        for i in range(n):
            for j in range(n):
                if i != j and self.c[i][j] > 0:
                    problems.append("c[%d][%d] positive off-diagonal" % (i, j))
                if self.d[i] * self.c[i][j] != self.d[j] * self.c[j][i]:
                    problems.append(
                        "symmetrizability fails at (%d,%d): %d*%d != %d*%d"
                        % (i, j, self.d[i], self.c[i][j], self.d[j], self.c[j][i])
                    )
        seen = set()
        for (i, j) in self.orientation:
            if not self.adjacent(i, j):
                problems.append("oriented edge (%d,%d) not an edge" % (i, j))
            key = frozenset((i, j))
            if key in seen:
                problems.append("edge {%d,%d} oriented twice" % (i, j))
            seen.add(key)
        for i in range(n):
            for j in range(i + 1, n):
                if self.adjacent(i, j) and frozenset((i, j)) not in seen:
                    problems.append("edge {%d,%d} has no orientation" % (i, j))
        return {"valid": not problems, "problems": problems}

    def to_json(self):
        return {
            "c": [list(row) for row in self.c],
            "d": list(self.d),
            "orientation": [list(e) for e in self.orientation],
        }

    @staticmethod
    def from_json(obj):
        return CartanDatum(
            c=tuple(tuple(row) for row in obj["c"]),
            d=tuple(obj["d"]),
            orientation=tuple(tuple(e) for e in obj["orientation"]),
        )


@dataclass(frozen=True)
class ShiftDatum:
    """Per-vertex shift exponents b_i^+ and b_i^-."""

    bplus: tuple
    bminus: tuple

    @property
    def b(self):
        return tuple(p + m for p, m in zip(self.bplus, self.bminus))

    def is_antidominant(self):
        return all(x <= 0 for x in self.bplus) and all(x <= 0 for x in self.bminus)

    def __add__(self, other):
        return ShiftDatum(
            tuple(a + b for a, b in zip(self.bplus, other.bplus)),
            tuple(a + b for a, b in zip(self.bminus, other.bminus)),
        )

    def to_json(self):
        return {"bplus": list(self.bplus), "bminus": list(self.bminus)}

    @staticmethod
    def from_json(obj):
        return ShiftDatum(tuple(obj["bplus"]), tuple(obj["bminus"]))


def shift_from_coweights(cartan, mu_minus, mu_plus=None):
    """Build a ShiftDatum from coweights in fundamental-coweight coordinates.

    A coweight given as the integer vector (m_i) stands for sum m_i omega-check_i,
    so pairing with the simple root alpha_i reads off m_i directly.  When only
    one coweight is supplied the plus part is zero (the common setup).
    """
    n = cartan.n
    if len(mu_minus) != n:
        raise ValueError("coweight has %d entries, expected %d" % (len(mu_minus), n))
    if mu_plus is None:
        mu_plus = (0,) * n
    if len(mu_plus) != n:
        raise ValueError("coweight has %d entries, expected %d" % (len(mu_plus), n))
    return ShiftDatum(bplus=tuple(mu_plus), bminus=tuple(mu_minus))


@dataclass(frozen=True)
class FramingDatum:
    """A dominant-weight framing together with a degree vector.

    lambda_seq lists the vertices of the chosen fundamental weights, one
    entry per framing parameter; a[i] is the number of w-variables at
    vertex i.  Constructing the datum declares all variable names.
    """

    lambda_seq: tuple
    a: tuple

    def __post_init__(self):
        for s in range(1, len(self.lambda_seq) + 1):
            declare("zf%d" % s, "zparam")
        for i, ai in enumerate(self.a):
            for r in range(1, ai + 1):
                declare(w_name(i, r), "uvar")

    @property
    def N(self):
        return len(self.lambda_seq)

    def N_i(self, i):
        return sum(1 for s in self.lambda_seq if s == i)

    def z_names(self, i=None):
        """Framing-parameter names, optionally only those at vertex i."""
        return tuple(
            "zf%d" % (s + 1)
            for s, vertex in enumerate(self.lambda_seq)
            if i is None or vertex == i
        )

    def w_names(self, i):
        return tuple(w_name(i, r) for r in range(1, self.a[i] + 1))

    def to_json(self):
        return {"lambda_seq": list(self.lambda_seq), "a": list(self.a)}

    @staticmethod
    def from_json(obj):
        return FramingDatum(tuple(obj["lambda_seq"]), tuple(obj["a"]))


def w_name(i, r):
    """Canonical name of the r-th torus variable at vertex i (r >= 1)."""
    return "w%d_%d" % (i, r)


def shift_from_framing(cartan, framing):
    """The shift carved out by a framing: b_i^- = N_i - sum_j c_ji a_j.

    This is the pairing of alpha_i with lambda - sum a_j alpha_j, the
    natural home of the framed generating-series realization (plus part 0).
    """
    n = cartan.n
    bminus = tuple(
        framing.N_i(i) - sum(cartan.c[j][i] * framing.a[j] for j in range(n))
        for i in range(n)
    )
    return ShiftDatum(bplus=(0,) * n, bminus=bminus)


# -- presets -----------------------------------------------------------------


def _type_a(n):
    c = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]
    return CartanDatum(
        c=tuple(tuple(row) for row in c),
        d=(1,) * n,
        orientation=tuple((i, i + 1) for i in range(n - 1)),
    )


PRESETS = {
    "A1": _type_a(1),
    "A2": _type_a(2),
    "A3": _type_a(3),
    "A4": _type_a(4),
    "B2": CartanDatum(c=((2, -1), (-2, 2)), d=(2, 1), orientation=((0, 1),)),
    "G2": CartanDatum(c=((2, -1), (-3, 2)), d=(3, 1), orientation=((0, 1),)),
}


def preset(name):
    if name not in PRESETS:
        raise KeyError("unknown preset %r (have %s)" % (name, ", ".join(sorted(PRESETS))))
    return PRESETS[name]
