"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial is a map from exponent tuples to nonzero Fractions; the zero
polynomial has no terms.  Iteration order is always graded lexicographic so
that serialization and derived generating functions come out bit-identical
across runs.
"""

from fractions import Fraction
from math import prod

from .errors import DimensionError
from .linalg import vec_lcm


def _grlex_key(exps):
    return (sum(exps), exps)


class MultiPoly:
    """Immutable sparse polynomial in ``dim`` variables."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim, terms=()):
        if dim < 0:
            raise DimensionError("negative dimension")
        canon = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for exps, coeff in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != dim or any(e < 0 for e in exps):
                raise DimensionError(f"bad exponent vector {exps} for dimension {dim}")
            c = canon.get(exps, Fraction(0)) + Fraction(coeff)
            if c == 0:
                canon.pop(exps, None)
            else:
                canon[exps] = c
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "terms", {e: canon[e] for e in sorted(canon, key=_grlex_key)})

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # constructors -----------------------------------------------------------

    @classmethod
    def zero(cls, dim):
        return cls(dim)

    @classmethod
    def constant(cls, dim, c):
        return cls(dim, {(0,) * dim: Fraction(c)})

    @classmethod
    def variable(cls, dim, i, power=1, coeff=1):
        e = [0] * dim
        e[i] = power
        return cls(dim, {tuple(e): Fraction(coeff)})

    # basic queries ----------------------------------------------------------

    def sorted_terms(self):
        return tuple(self.terms.items())

    def is_zero(self):
        return not self.terms

    @property
    def total_degree(self):
        """Maximum total degree D (0 for the zero polynomial)."""
        return max((sum(e) for e in self.terms), default=0)

    @property
    def max_abs_coeff(self):
        """Largest absolute coefficient value C (0 for the zero polynomial)."""
        return max((abs(c) for c in self.terms.values()), default=Fraction(0))

    @property
    def monomial_count(self):
        return len(self.terms)

    def max_var_degree(self):
        """Largest power of any single variable appearing in the polynomial."""
        return max((e for exps in self.terms for e in exps), default=0)

    def has_integer_coefficients(self):
        return all(c.denominator == 1 for c in self.terms.values())

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.dim == other.dim
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.dim, tuple(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return f"MultiPoly({self.dim}, 0)"
        bits = " + ".join(f"{c}*x^{e}" for e, c in self.terms.items())
        return f"MultiPoly({self.dim}, {bits})"

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        merged = dict(self.terms)
        for e, c in other.terms.items():
            merged[e] = merged.get(e, Fraction(0)) + c
        return MultiPoly(self.dim, merged)

    def __neg__(self):
        return MultiPoly(self.dim, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiPoly(self.dim, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.dim, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MultiPoly.constant(self.dim, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.dim, other)
        if not isinstance(other, MultiPoly):
            raise TypeError(f"cannot combine MultiPoly with {type(other)!r}")
        if other.dim != self.dim:
            raise DimensionError("dimension mismatch")
        return other

    # evaluation -------------------------------------------------------------

    def eval(self, point):
        """Exact value at a point of matching dimension."""
        if len(point) != self.dim:
            raise DimensionError(f"point of length {len(point)} for dimension {self.dim}")
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        for exps, c in self.terms.items():
            total += c * prod((pt[i] ** e for i, e in enumerate(exps) if e), start=Fraction(1))
        return total

    def eval_int(self, point):
        """Value at an integer point of an integer-coefficient polynomial, as int."""
        total = 0
        for exps, c in self.terms.items():
            if c.denominator != 1:
                raise ValueError("integer coefficients required")
            total += c.numerator * prod(point[i] ** e for i, e in enumerate(exps) if e)
        return total

    # transforms -------------------------------------------------------------

    def clear_denominators(self):
        """Return (q, mult) with q = mult * self, q integer-coefficient,
        mult the lcm of coefficient denominators.  Argmax sets are unchanged."""
        mult = vec_lcm([c.denominator for c in self.terms.values()]) if self.terms else 1
        return MultiPoly(self.dim, {e: c * mult for e, c in self.terms.items()}), mult

    def grid_scale(self, d1, m):
        """Rescale the first d1 (continuous) variables onto an integer grid.

        Returns q with q(xt, z) = m**D * self(xt / m, z): the coefficient of
        an exponent vector a becomes c_a * m**(D - sum of its first d1
        entries).  Input must have integer coefficients; so does the output.
        """
        if not self.has_integer_coefficients():
            raise ValueError("grid scaling requires integer coefficients")
        if m < 1:
            raise ValueError("grid refinement must be positive")
        bigd = self.total_degree
        out = {}
        for exps, c in self.terms.items():
            cont = sum(exps[:d1])
            out[exps] = c * m ** (bigd - cont)
        return MultiPoly(self.dim, out)

    def lipschitz_constant(self, bound):
        """Exact constant L with |f(x) - f(y)| <= L * max|x_i - y_i| whenever
        all coordinates of x and y lie in [-bound, bound].

        L = C * r * D * max(bound, 1)**(D - 1): telescoping each monomial
        difference one variable at a time bounds every intermediate mixed
        monomial by max(bound, 1)**(D-1) regardless of its degree.
        """
        bigd = self.total_degree
        if bigd == 0:
            return Fraction(0)
        mm = max(Fraction(bound), Fraction(1))
        return self.max_abs_coeff * self.monomial_count * bigd * mm ** (bigd - 1)

    def is_identically_zero(self):
        """True iff this is the zero polynomial.

        Decided two independent ways that must agree: no stored terms, and
        vanishing on the grid {0..D}^dim where D is the largest per-variable
        power (a nonzero polynomial cannot vanish on that whole grid).
        """
        by_terms = not self.terms
        dv = self.max_var_degree()
        by_grid = True
        point = [0] * self.dim
        while True:
            if self.eval(point) != 0:
                by_grid = False
                break
            i = 0
            while i < self.dim and point[i] == dv:
                point[i] = 0
                i += 1
            if i == self.dim:
                break
            point[i] += 1
        if by_terms != by_grid:
            raise AssertionError("zero tests disagree; canonicalization bug")
        return by_terms

    # serialization ----------------------------------------------------------

    def to_term_list(self):
        """Canonical [(coefficient 'p/q', [exponents])] form, graded-lex order."""
        return [{"c": str(c), "e": list(e)} for e, c in self.terms.items()]

    @classmethod
    def from_term_list(cls, dim, items):
        terms = []
        for it in items:
            terms.append((tuple(it["e"]), Fraction(it["c"])))
        return cls(dim, terms)
