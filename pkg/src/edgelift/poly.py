"""Sparse multivariate polynomials over an exact coefficient ring.

Terms are stored as a dict mapping exponent tuples to nonzero scalars.  The
canonical term order used for iteration, rendering and every deterministic
choice in the package is degree-lexicographic: sort by total degree, ties
broken lexicographically on the exponent tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .coeffs import RingDescriptor, RingMismatch


# -- exponent-vector helpers -------------------------------------------------

def exp_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def exp_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def exp_neg(a):
    return tuple(-x for x in a)


def exp_dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def exp_min(a, b):
    return tuple(min(x, y) for x, y in zip(a, b))


def deglex_key(e):
    return (sum(e), e)


def primitive_vector(v):
    """Divide an integer vector by the gcd of its entries (orientation kept)."""
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(x // g for x in v)


@dataclass(frozen=True)
class WeightedBound:
    """A strictly positive weight vector plus a cutoff N.

    A term with exponent alpha is kept when <weights, alpha> <= N.
    """

    weights: tuple
    bound: int

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(self.weights))
        if not self.weights or any(w <= 0 for w in self.weights):
            raise ValueError("truncation weights must be strictly positive")
        if self.bound < 0:
            raise ValueError("truncation bound must be nonnegative")

    def weight_of(self, exponent):
        return exp_dot(self.weights, exponent)

    def admits(self, exponent):
        return self.weight_of(exponent) <= self.bound


class SparsePoly:
    """Finitely supported map from exponent vectors to nonzero scalars."""

    __slots__ = ("nvars", "ring", "terms")

    def __init__(self, nvars, ring, terms=()):
        if not isinstance(ring, RingDescriptor):
            raise TypeError("ring must be a RingDescriptor")
        if nvars < 1:
            raise ValueError("need at least one variable")
        clean = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for exponent, coeff in items:
            exponent = tuple(exponent)
            if len(exponent) != nvars:
                raise ValueError(f"exponent {exponent} has wrong length")
            coeff = ring.normalize(coeff)
            if ring.is_zero(coeff):
                continue
            if exponent in clean:
                coeff = ring.add(clean[exponent], coeff)
                if ring.is_zero(coeff):
                    del clean[exponent]
                    continue
            clean[exponent] = coeff
        self.nvars = nvars
        self.ring = ring
        self.terms = clean

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, nvars, ring):
        return cls(nvars, ring)

    @classmethod
    def constant(cls, nvars, ring, value):
        return cls(nvars, ring, {(0,) * nvars: value})

    @classmethod
    def monomial(cls, nvars, ring, exponent, coeff=None):
        if coeff is None:
            coeff = ring.one()
        return cls(nvars, ring, {tuple(exponent): coeff})

    # -- queries -------------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def support(self):
        """Exponent vectors with nonzero coefficient, in degree-lex order."""
        return sorted(self.terms, key=deglex_key)

    def sorted_terms(self):
        return [(e, self.terms[e]) for e in self.support()]

    def coeff(self, exponent):
        return self.terms.get(tuple(exponent), self.ring.zero())

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return (self.nvars, self.ring, self.terms) == (other.nvars, other.ring, other.terms)

    def __hash__(self):
        return hash((self.nvars, self.ring, frozenset(self.terms.items())))

    def __repr__(self):
        body = ", ".join(f"{e}: {c}" for e, c in self.sorted_terms())
        return f"SparsePoly({self.nvars}, {self.ring}, {{{body}}})"

    def _check_compatible(self, other):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if self.nvars != other.nvars:
            raise ValueError("operands have different variable counts")

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        self._check_compatible(other)
        ring = self.ring
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = ring.add(out.get(e, ring.zero()), c)
            if ring.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return SparsePoly(self.nvars, ring, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        ring = self.ring
        return SparsePoly(self.nvars, ring, {e: ring.neg(c) for e, c in self.terms.items()})

    def __mul__(self, other):
        return self.mul(other)

    def mul(self, other, trunc=None):
        """Exact product; with ``trunc`` terms above the weighted bound are dropped."""
        self._check_compatible(other)
        ring = self.ring
        left = self.terms
        right = other.terms
        if trunc is not None:
            # Weights are additive on exponents and nonnegative on the orthant,
            # so factors already above the bound cannot contribute.
            lmin = min((trunc.weight_of(e) for e in left), default=0)
            rmin = min((trunc.weight_of(e) for e in right), default=0)
            left = {e: c for e, c in left.items() if trunc.weight_of(e) <= trunc.bound - rmin}
            right = {e: c for e, c in right.items() if trunc.weight_of(e) <= trunc.bound - lmin}
        out = {}
        for e1, c1 in left.items():
            for e2, c2 in right.items():
                e = exp_add(e1, e2)
                if trunc is not None and not trunc.admits(e):
                    continue
                s = ring.add(out.get(e, ring.zero()), ring.mul(c1, c2))
                if ring.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return SparsePoly(self.nvars, ring, out)

    def scale(self, coeff):
        ring = self.ring
        coeff = ring.normalize(coeff)
        if ring.is_zero(coeff):
            return SparsePoly.zero(self.nvars, ring)
        return SparsePoly(self.nvars, ring,
                          {e: ring.mul(c, coeff) for e, c in self.terms.items()})

    def mul_monomial(self, exponent, coeff=None):
        """Multiply by coeff * x^exponent; entries of ``exponent`` may be negative."""
        ring = self.ring
        if coeff is None:
            coeff = ring.one()
        exponent = tuple(exponent)
        return SparsePoly(self.nvars, ring,
                          {exp_add(e, exponent): ring.mul(c, coeff)
                           for e, c in self.terms.items()})

    def pow(self, n):
        if n < 0:
            raise ValueError("negative power")
        out = SparsePoly.constant(self.nvars, self.ring, self.ring.one())
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- support manipulation -------------------------------------------------

    def truncate(self, trunc):
        """Keep exactly the terms with <weights, alpha> <= N."""
        return SparsePoly(self.nvars, self.ring,
                          {e: c for e, c in self.terms.items() if trunc.admits(e)})

    def restrict_to(self, points):
        wanted = {tuple(p) for p in points}
        return SparsePoly(self.nvars, self.ring,
                          {e: c for e, c in self.terms.items() if e in wanted})

    def map_coefficients(self, ring, fn):
        """Push coefficients through ``fn`` into another ring (zeros dropped)."""
        return SparsePoly(self.nvars, ring, ((e, fn(c)) for e, c in self.terms.items()))

    def min_weighted_degree(self, weights):
        """Smallest <weights, alpha> over the support, or None for the zero poly."""
        if not self.terms:
            return None
        return min(exp_dot(weights, e) for e in self.terms)


def multiply(f, g, trunc=None):
    """Product of two polynomials, optionally truncated at a weighted bound."""
    return f.mul(g, trunc)


def weighted_truncate(f, trunc):
    """Terms of f with weighted degree at most the bound."""
    return f.truncate(trunc)
