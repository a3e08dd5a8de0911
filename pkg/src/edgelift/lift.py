"""Edge restrictions, the graded cofactor solver, and the lifting loop.

Given a loose edge E of the Newton polyhedron of f and a factorization of the
restriction f|_E into coprime parts G, H (with G not divisible by any
variable), the residual-driven loop recovers g, h with f = g*h up to a chosen
weighted truncation bound: at each step the minimal-weight part of the
residual f - g*h is split as G*h' + H*g' by one exact linear solve inside the
graded pieces, and the factors are extended by h', g'.  The minimal residual
weight strictly increases, so the loop terminates within the bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import newton
from .coeffs import RESIDUE_RING
from .grading import NoIntegralPoint, WeightSystem, orthogonal_basis
from .linalg import solve_field
from .poly import (SparsePoly, deglex_key, exp_add, exp_min, exp_neg, exp_sub,
                   primitive_vector)
from .unifactor import (DegreeTooLarge, UnsupportedRing, degree, factor_univariate,
                        pgcd, ppow, trim)


class LiftError(ValueError):
    pass


class EmptyFace(LiftError):
    """Restriction to an empty face, or one that vanishes mod p."""


class NotEdgeHomogeneous(LiftError):
    """Support points do not lie on a line parallel to the edge."""


class NotLoose(LiftError):
    """The chosen edge is not loose."""


class Unsolvable(LiftError):
    """A cofactor system had no solution; the split hypotheses are violated."""


NOT_COPRIME = "NotCoprime"
DIVISIBLE_BY_VARIABLE = "DivisibleByVariable"
PRODUCT_MISMATCH = "ProductMismatch"


class InvalidSplit(LiftError):
    """The requested split violates a hypothesis of the lifting step."""

    def __init__(self, reason, detail=""):
        self.reason = reason
        super().__init__(f"invalid split: {reason}" + (f" ({detail})" if detail else ""))


@dataclass(frozen=True)
class SplitRequest:
    """A factorization f|_E = G * H to be lifted."""

    G: SparsePoly
    H: SparsePoly


@dataclass(frozen=True)
class EdgeRestriction:
    """Restriction of f to a compact edge, over the residue field, together
    with its line data: the weight system of the edge direction, the content
    monomial m and the univariate form p(t) with

        poly = x^m * p(t)   at t = x^direction,   p(0) != 0.
    """

    poly: SparsePoly
    edge: newton.Edge
    ws: WeightSystem
    content: tuple
    univariate: tuple


@dataclass(frozen=True)
class PrimePower:
    """Certificate that a restriction is unit * F^power with F irreducible
    whenever the content is trivial; ``binomial`` flags the two-term shape."""

    factor: SparsePoly
    power: int
    unit: object
    binomial: bool


@dataclass
class LiftStep:
    weight: tuple
    slice_dims: tuple
    residual_before: int
    residual_after: int | None = None

    def to_dict(self):
        return {
            "weight": list(self.weight),
            "slice_dims": list(self.slice_dims),
            "residual_before": self.residual_before,
            "residual_after": self.residual_after,
        }


@dataclass
class LiftCertificate:
    w: tuple
    z: tuple
    bound: int
    steps: list = field(default_factory=list)
    exit_min_weight: int | None = None

    def to_dict(self):
        return {
            "w": list(self.w),
            "z": list(self.z),
            "bound": self.bound,
            "steps": [s.to_dict() for s in self.steps],
            "exit_min_weight": self.exit_min_weight,
        }


@dataclass
class LiftState:
    """Accumulated partial factors, current residual, and the step log."""

    g: SparsePoly
    h: SparsePoly
    residual: SparsePoly
    bound: object
    log: list = field(default_factory=list)


# -- restrictions --------------------------------------------------------------

def restrict(f, face):
    """Terms of f supported on a compact face, coefficients mapped to the
    residue field (identity over Q and F_p, mod p for Z/p^k)."""
    face_set = {tuple(p) for p in face}
    if not face_set:
        raise EmptyFace("restriction to an empty face")
    K = f.ring.residue_field()
    out = f.restrict_to(face_set).map_coefficients(K, f.ring.to_residue)
    return out


def edge_restriction(f, edge):
    """Build the EdgeRestriction of f along a compact edge."""
    poly = restrict(f, edge.lattice_points())
    if not poly:
        raise EmptyFace("edge restriction vanishes in the residue field")
    ws = orthogonal_basis(edge.direction)
    content, uni = _line_form(poly, edge.direction)
    return EdgeRestriction(poly, edge, ws, content, tuple(uni))


def edge_univariate(restriction):
    """The (content monomial, univariate coefficient list) of a restriction."""
    return restriction.content, list(restriction.univariate)


def _line_form(poly, direction):
    """Write an edge-homogeneous polynomial as x^content * p(x^direction)."""
    support = poly.support()
    base = support[0]
    steps = {}
    for point in support:
        diff = exp_sub(point, base)
        t = _ratio(diff, direction)
        if t is None:
            raise NotEdgeHomogeneous(f"{point} is off the line through {base}")
        steps[t] = poly.terms[point]
    top = max(steps)
    ring = poly.ring
    uni = [steps.get(i, ring.zero()) for i in range(top + 1)]
    return base, trim(uni, ring)


def _ratio(diff, direction):
    """diff = t * direction for an integer t, or None."""
    t = None
    for x, d in zip(diff, direction):
        if d == 0:
            if x != 0:
                return None
            continue
        if x % d:
            return None
        q = x // d
        if t is None:
            t = q
        elif q != t:
            return None
    return 0 if t is None else t


def edge_poly_from_univariate(ring, nvars, direction, coeffs, anchor=None):
    """x^anchor * sum coeffs[i] x^(i*direction); the default anchor makes the
    componentwise minimum of the support zero."""
    coeffs = trim(list(coeffs), ring)
    if not coeffs:
        return SparsePoly.zero(nvars, ring)
    deg = degree(coeffs)
    if anchor is None:
        anchor = tuple(deg * max(0, -d) for d in direction)
    terms = {}
    for i, c in enumerate(coeffs):
        if ring.is_zero(c):
            continue
        exponent = tuple(a + i * d for a, d in zip(anchor, direction))
        terms[exponent] = c
    return SparsePoly(nvars, ring, terms)


# -- coprimality ----------------------------------------------------------------

def coprime_check(G, H):
    """True iff the monomial contents are coprime and the univariate forms
    have trivial gcd.  Both inputs must be edge-homogeneous: supports on lines
    parallel to a common direction."""
    if not G or not H:
        raise NotEdgeHomogeneous("zero polynomial is not edge-homogeneous")
    cG, uG, dG = _content_line(G)
    cH, uH, dH = _content_line(H)
    if dG is not None and dH is not None and dG != dH:
        raise NotEdgeHomogeneous("supports lie on non-parallel lines")
    if any(min(a, b) > 0 for a, b in zip(cG, cH)):
        return False
    ring = G.ring
    g = pgcd(list(uG), list(uH), ring)
    return degree(g) == 0


def _content_line(P):
    """(monomial content, univariate coefficients, canonical direction).

    The content is the componentwise minimum over the support; the univariate
    coefficients are anchored at the degree-lex smallest support point, which
    orients all lines parallel to a direction consistently.
    """
    support = P.support()
    content = support[0]
    for point in support[1:]:
        content = exp_min(content, point)
    if len(support) == 1:
        return content, [P.terms[support[0]]], None
    direction = primitive_vector(exp_sub(support[-1], support[0]))
    _, uni = _line_form(P, direction)
    return content, uni, direction


# -- univariate factorization of a restriction ----------------------------------

def factor_edge_univariate(coeffs, ring, seed=0):
    """Irreducible factorization of an edge univariate over Q or F_p.

    Returns (unit, [(coefficient_list, multiplicity), ...]), deterministic.
    """
    return factor_univariate(ring, coeffs, seed)


# -- cofactor solver --------------------------------------------------------------

def _uniform_weight(P, ws):
    weights = {ws.weight(e) for e in P.terms}
    if len(weights) != 1:
        raise NotEdgeHomogeneous("polynomial is not weight-homogeneous")
    return weights.pop()


def _slice_points(ws, w, max_last_exp=None):
    try:
        points = ws.slice(w).points
    except NoIntegralPoint:
        return ()
    if max_last_exp is not None:
        points = tuple(p for p in points if p[-1] <= max_last_exp)
    return points


def _block_caps(max_last_exp):
    if max_last_exp is None or isinstance(max_last_exp, int):
        return max_last_exp, max_last_exp
    return max_last_exp


def solve_cofactor(G, H, r, ws, max_last_exp=None):
    """Solve G*h' + H*g' = r inside the graded pieces.

    Unknowns are the coefficients of h' and g' on the lattice bases of their
    slices; equations are indexed by the slice of r's weight.  Columns are
    ordered h'-block then g'-block, each in degree-lex order, and the first
    valid pivot in that order is taken, so the solution with all free
    coordinates zero is deterministic.  ``max_last_exp`` optionally caps the
    last-variable exponent of the slice bases, either one bound for both
    blocks or a (h_cap, g_cap) pair.  Raises Unsolvable when the system is
    inconsistent, which signals a violated hypothesis (or too tight a cap).
    """
    ring = r.ring
    if G.ring != ring or H.ring != ring:
        raise InvalidSplit(PRODUCT_MISMATCH, "split and residual rings differ")
    nvars = r.nvars
    if not r:
        zero = SparsePoly.zero(nvars, ring)
        return zero, zero
    w = _uniform_weight(G, ws)
    z = _uniform_weight(H, ws)
    wr = _uniform_weight(r, ws)
    h_cap, g_cap = _block_caps(max_last_exp)
    h_pts = _slice_points(ws, exp_sub(wr, w), h_cap)
    g_pts = _slice_points(ws, exp_sub(wr, z), g_cap)
    rows_pts = ws.slice(wr).points
    row_index = {p: i for i, p in enumerate(rows_pts)}
    for point in r.terms:
        assert point in row_index, "residual leaves its own slice"

    ncols = len(h_pts) + len(g_pts)
    matrix = [[ring.zero()] * ncols for _ in rows_pts]
    for col, point in enumerate(h_pts):
        for e, c in G.terms.items():
            matrix[row_index[exp_add(e, point)]][col] = c
    for col, point in enumerate(g_pts):
        for e, c in H.terms.items():
            matrix[row_index[exp_add(e, point)]][len(h_pts) + col] = c
    rhs = [r.terms.get(p, ring.zero()) for p in rows_pts]

    solution = solve_field(ring, matrix, rhs) if ncols else None
    if solution is None:
        if all(ring.is_zero(v) for v in rhs):
            zero = SparsePoly.zero(nvars, ring)
            return zero, zero
        raise Unsolvable(f"no cofactor solution at weight {wr}")
    h_part = SparsePoly(nvars, ring,
                        {p: c for p, c in zip(h_pts, solution[:len(h_pts)])})
    g_part = SparsePoly(nvars, ring,
                        {p: c for p, c in zip(g_pts, solution[len(h_pts):])})
    return h_part, g_part


# -- the lifting loop -------------------------------------------------------------

def _to_residue_poly(f):
    if f.ring.kind != RESIDUE_RING:
        return f
    return f.map_coefficients(f.ring.residue_field(), f.ring.to_residue)


def _lift_from_residue(P, ring):
    if P.ring == ring:
        return P
    return P.map_coefficients(ring, ring.lift_residue)


def _run_lift(f, ws, G, H, bound, max_last_exp=None):
    """Shared residual-driven loop behind the plain and monic lifts.

    Progress over Z/p^k is measured on the mod-p image of the residual; over
    a field the residual itself is cleared exactly.
    """
    ring = f.ring
    w = _uniform_weight(G, ws)
    z = _uniform_weight(H, ws)
    state = LiftState(_lift_from_residue(G, ring), _lift_from_residue(H, ring),
                      SparsePoly.zero(f.nvars, ring), bound)
    cert = LiftCertificate(w, z, bound.bound)
    previous = None
    while True:
        state.residual = (f - state.g.mul(state.h, bound)).truncate(bound)
        visible = _to_residue_poly(state.residual)
        if cert.steps:
            cert.steps[-1].residual_after = visible.min_weighted_degree(ws.xi0)
        if not visible:
            break
        wmin = min((ws.weight(e) for e in visible.terms), key=deglex_key)
        key = deglex_key(wmin)
        if previous is not None and key <= previous:
            raise Unsolvable(f"residual weight did not increase at {wmin}")
        previous = key
        step = exp_sub(wmin, exp_add(w, z))
        if any(x < 0 for x in step):
            raise Unsolvable(f"residual weight {wmin} below the initial weight")
        initial = visible.restrict_to(
            [e for e in visible.terms if ws.weight(e) == wmin])
        h_part, g_part = solve_cofactor(G, H, initial, ws, max_last_exp)
        h_cap, g_cap = _block_caps(max_last_exp)
        dims = (len(_slice_points(ws, exp_sub(wmin, w), h_cap)),
                len(_slice_points(ws, exp_sub(wmin, z), g_cap)))
        state.g = state.g + _lift_from_residue(g_part, ring)
        state.h = state.h + _lift_from_residue(h_part, ring)
        state.log.append((step, dims))
        cert.steps.append(LiftStep(step, dims, sum(wmin)))
    remainder = _to_residue_poly(f - state.g * state.h)
    cert.exit_min_weight = remainder.min_weighted_degree(ws.xi0)
    return state.g, state.h, cert


def _validate_split(f, edge, split, require_no_variable):
    """Common hypothesis checks; returns the restriction."""
    if not edge.loose:
        raise NotLoose(f"edge {edge.a}-{edge.b} is not loose")
    rest = edge_restriction(f, edge)
    G, H = split.G, split.H
    if not G or not H:
        raise InvalidSplit(PRODUCT_MISMATCH, "split parts must be nonzero")
    if G.ring != rest.poly.ring or H.ring != rest.poly.ring:
        raise InvalidSplit(PRODUCT_MISMATCH, "split must live over the residue field")
    if G * H != rest.poly:
        raise InvalidSplit(PRODUCT_MISMATCH, "G*H differs from the edge restriction")
    if require_no_variable:
        mins = [min(e[j] for e in G.terms) for j in range(G.nvars)]
        if any(m > 0 for m in mins):
            raise InvalidSplit(DIVISIBLE_BY_VARIABLE,
                               "G is divisible by a variable")
    if not coprime_check(G, H):
        raise InvalidSplit(NOT_COPRIME, "G and H share a factor")
    return rest


def lift_factorization(f, edge, split, bound):
    """Lift f|_E = G*H to f = g*h up to the weighted bound.

    Requires: the edge loose, G*H equal to the restriction, G not divisible
    by any variable, G and H coprime.  Returns (g, h, certificate).
    """
    if not f:
        raise LiftError("cannot factor the zero polynomial")
    rest = _validate_split(f, edge, split, require_no_variable=True)
    return _run_lift(f, rest.ws, split.G, split.H, bound)


# -- irreducibility-witness logic -------------------------------------------------


def _scaled_factor_power(base, mult, ring):
    return ppow(list(base), mult, ring)


def _split_from_restriction(rest, prefer_factored=False, monic_last=False, seed=0):
    """Choose a coprime split of an edge restriction, or report prime-power
    structure.

    Returns either a SplitRequest or a PrimePower.  The canonical split pulls
    the monomial content into H; the factored split puts the first irreducible
    class into G and everything else into H.  With ``monic_last`` the G part
    is normalized to be monic in the last variable (its top term must be free
    of the other variables, which holds on descendant edges).
    """
    poly = rest.poly
    ring = poly.ring
    nvars = poly.nvars
    support = poly.support()
    content = support[0]
    for point in support[1:]:
        content = exp_min(content, point)

    factored = None
    classes = None
    if prefer_factored or not any(content):
        unit, classes = factor_univariate(ring, list(rest.univariate), seed)
        if len(classes) >= 2:
            first, mult = classes[0]
            g_uni = _scaled_factor_power(first, mult, ring)
            rest_uni = [unit]
            for other, m in classes[1:]:
                rest_uni = _mul_lists(rest_uni, _scaled_factor_power(other, m, ring), ring)
            direction = rest.edge.direction
            G = edge_poly_from_univariate(ring, nvars, direction, g_uni)
            H = edge_poly_from_univariate(ring, nvars, direction, rest_uni).mul_monomial(content)
            factored = (G, H)

    if factored is not None:
        G, H = factored
    elif any(content):
        G = poly.mul_monomial(exp_neg(content))
        H = SparsePoly.monomial(nvars, ring, content)
    else:
        base, mult = classes[0]
        F = edge_poly_from_univariate(ring, nvars, rest.edge.direction, base)
        F = _normalize_min_term(F)
        power = F.pow(mult)
        pt = power.support()[0]
        unit_scalar = ring.div(poly.terms[pt], power.terms[pt])
        assert power.scale(unit_scalar) == poly
        return PrimePower(F, mult, unit_scalar, _is_binomial(F))

    if monic_last:
        G, H = _normalize_monic_last(G, H)
    assert G * H == poly
    return SplitRequest(G, H)


def _mul_lists(a, b, ring):
    from .unifactor import pmul

    return pmul(a, b, ring)


def _normalize_min_term(F):
    """Scale so the coefficient at the degree-lex smallest support point is 1."""
    ring = F.ring
    pt = F.support()[0]
    return F.scale(ring.invert(F.terms[pt]))


def _normalize_monic_last(G, H):
    """Scale G so its top term in the last variable is the bare monomial."""
    ring = G.ring
    d = max(e[-1] for e in G.terms)
    tops = [e for e in G.terms if e[-1] == d]
    if len(tops) != 1 or any(tops[0][:-1]):
        raise InvalidSplit(PRODUCT_MISMATCH,
                           "split part cannot be normalized to be monic in the last variable")
    lam = G.terms[tops[0]]
    if lam == ring.one():
        return G, H
    return G.scale(ring.invert(lam)), H.scale(lam)


def edge_prime_power_test(rest, seed=0):
    """If the restriction is unit * F^k for a single irreducible univariate
    class and the content is a compatible k-th power, return that PrimePower;
    otherwise None.  F is irreducible precisely when the content is trivial."""
    ring = rest.poly.ring
    if degree(list(rest.univariate)) < 1:
        return None
    unit, classes = factor_univariate(ring, list(rest.univariate), seed)
    if len(classes) != 1:
        return None
    base, mult = classes[0]
    support = rest.poly.support()
    content = support[0]
    for point in support[1:]:
        content = exp_min(content, point)
    if any(c % mult for c in content):
        return None
    root = tuple(c // mult for c in content)
    F = edge_poly_from_univariate(ring, rest.poly.nvars, rest.edge.direction, base)
    F = _normalize_min_term(F.mul_monomial(root))
    power = F.pow(mult)
    pt = power.support()[0]
    unit_scalar = ring.div(rest.poly.terms[pt], power.terms[pt])
    if power.scale(unit_scalar) != rest.poly:
        return None
    return PrimePower(F, mult, unit_scalar, _is_binomial(F))


def _is_binomial(F):
    support = F.support()
    if len(support) != 2:
        return False
    diff = exp_sub(support[1], support[0])
    return primitive_vector(diff) == diff


@dataclass(frozen=True)
class ReducibleWithFactors:
    g: SparsePoly
    h: SparsePoly
    certificate: LiftCertificate
    edge: newton.Edge


@dataclass(frozen=True)
class NoLooseEdge:
    pass


@dataclass(frozen=True)
class EdgePrimePower:
    edge: newton.Edge
    factor: SparsePoly
    power: int
    unit: object


def reducibility_witness(f, bound, seed=0):
    """Decide reducibility through the loose edges of Delta(f).

    For each loose edge: with at least three vertices (equivalently, a
    nontrivial content on the edge) the canonical split pulls the content
    monomial out; otherwise the edge univariate is factored and any coprime
    grouping is lifted.  When no edge offers a coprime split the first
    prime-power certificate is reported.
    """
    if not f:
        raise LiftError("cannot analyze the zero polynomial")
    np = newton.build(f)
    loose = [e for e in np.edges if e.loose]
    if not loose:
        return NoLooseEdge()
    first_power = None
    for edge in loose:
        rest = edge_restriction(f, edge)
        chosen = _split_from_restriction(rest, prefer_factored=False, seed=seed)
        if isinstance(chosen, PrimePower):
            if first_power is None:
                first_power = EdgePrimePower(edge, chosen.factor, chosen.power, chosen.unit)
            continue
        g, h, cert = lift_factorization(f, edge, chosen, bound)
        return ReducibleWithFactors(g, h, cert, edge)
    assert first_power is not None
    return first_power
