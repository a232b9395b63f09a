"""Exact subtree polynomials and mean orders for trees.

Trees are adjacency mappings {node: set-of-neighbors} over arbitrary
hashable node labels (plain 1..n vertices, or a characteristic tree whose
root is a clique node).  All arithmetic is exact: integer coefficient
polynomials and reduced fractions; no floating point is ever compared.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, ROUND_HALF_EVEN, localcontext
from fractions import Fraction

from .errors import NotAdjacent, NotATree


class IntPolynomial:
    """Dense integer-coefficient polynomial; index = degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def const(cls, c):
        return cls((c,))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    def __mul__(self, other):
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return IntPolynomial(out)

    def shift(self, m):
        """Multiply by x**m."""
        if not self.coeffs:
            return IntPolynomial()
        return IntPolynomial((0,) * m + self.coeffs)

    def derivative(self):
        return IntPolynomial(tuple(i * c for i, c in enumerate(self.coeffs))[1:])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else f"{c}*"
                parts.append(f"{head}x^{i}" if i > 1 else f"{head}x")
        return " + ".join(parts)


def format_rational(q):
    """Render exactly as 'p/q (d.dddddd)'; six digits, round-half-even."""
    return f"{q.numerator}/{q.denominator} ({format_decimal(q)})"


def format_decimal(q):
    with localcontext() as ctx:
        ctx.prec = 60
        d = Decimal(q.numerator) / Decimal(q.denominator)
        return str(d.quantize(Decimal("0.000001"), rounding=ROUND_HALF_EVEN))


def fraction_str(q):
    return f"{q.numerator}/{q.denominator}"


# -- tree plumbing ------------------------------------------------------------


def node_key(x):
    """Total order over mixed node labels (ints before anything else)."""
    if isinstance(x, int):
        return (0, x, "")
    return (1, 0, str(x))


def as_tree_adj(tree):
    """Normalize to {node: frozenset(nbrs)} and verify it is a tree."""
    adj = {u: frozenset(vs) for u, vs in tree.items()}
    for u, vs in adj.items():
        for v in vs:
            if v == u or v not in adj or u not in adj[v]:
                raise NotATree(f"adjacency is not symmetric at ({u}, {v})")
    if not adj:
        raise NotATree("empty vertex set")
    m = sum(len(vs) for vs in adj.values()) // 2
    if m != len(adj) - 1:
        raise NotATree(f"{len(adj)} vertices with {m} edges cannot be a tree")
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != len(adj):
        raise NotATree("graph is disconnected")
    return adj


def _phi_poly(adj, root, forbidden=frozenset()):
    """phi_{T,root}(x) of the component of `root` avoiding `forbidden`."""
    order = [root]
    parent = {root: None}
    i = 0
    while i < len(order):
        u = order[i]
        i += 1
        for w in adj[u]:
            if w not in parent and w not in forbidden:
                parent[w] = u
                order.append(w)
    poly = {}
    one = IntPolynomial.const(1)
    x = IntPolynomial.x()
    for u in reversed(order):
        acc = x
        for w in adj[u]:
            if parent.get(w) == u:
                acc = acc * (one + poly[w])
        poly[u] = acc
    return poly[root]


def subtree_poly_at_vertex(tree, u):
    """Generating polynomial of the subtrees containing u, by order."""
    adj = as_tree_adj(tree)
    if u not in adj:
        raise NotATree(f"vertex {u} not in the tree")
    return _phi_poly(adj, u)


def local_mean_order_vertex(tree, u):
    """Average order of the subtrees containing u, exact."""
    phi = subtree_poly_at_vertex(tree, u)
    return Fraction(phi.derivative()(1), phi(1))


def global_subtree_poly(tree):
    """Generating polynomial of all subtrees, by order.

    Sums phi over a fixed vertex order, restricting each term to the
    component left after deleting the earlier vertices, so every subtree is
    counted exactly once at its first vertex.
    """
    adj = as_tree_adj(tree)
    nodes = sorted(adj, key=node_key)
    total = IntPolynomial()
    gone = set()
    for v in nodes:
        total = total + _phi_poly(adj, v, forbidden=frozenset(gone))
        gone.add(v)
    return total


def global_mean_order_tree(tree):
    phi = global_subtree_poly(tree)
    return Fraction(phi.derivative()(1), phi(1))


# -- two-vertex branch decomposition ------------------------------------------


@dataclass(frozen=True)
class BranchDecomposition:
    """Branch data of a tree around an edge (u, v).

    For each component of T - {u, v} hanging off u (resp. v), the pair
    (phi(1), phi'(1)) of its subtree polynomial rooted at the contact
    vertex.  alpha/beta are the products of (1 + phi(1)); delta/theta the
    sums of phi'(1)/(1 + phi(1)).
    """

    u: object
    v: object
    u_branches: tuple  # (contact_vertex, phi1, dphi1) per component off u
    v_branches: tuple

    @property
    def alphas(self):
        return tuple(b[1] for b in self.u_branches)

    @property
    def alpha_primes(self):
        return tuple(b[2] for b in self.u_branches)

    @property
    def betas(self):
        return tuple(b[1] for b in self.v_branches)

    @property
    def beta_primes(self):
        return tuple(b[2] for b in self.v_branches)

    @property
    def alpha(self):
        out = 1
        for a in self.alphas:
            out *= 1 + a
        return out

    @property
    def beta(self):
        out = 1
        for b in self.betas:
            out *= 1 + b
        return out

    @property
    def delta(self):
        return sum(
            (Fraction(da, 1 + a) for a, da in zip(self.alphas, self.alpha_primes)),
            Fraction(0),
        )

    @property
    def theta(self):
        return sum(
            (Fraction(db, 1 + b) for b, db in zip(self.betas, self.beta_primes)),
            Fraction(0),
        )

    def phi_at_one(self, side):
        """phi_{T,side}(1) reconstructed from the branch data."""
        a, b = self._oriented(side)
        return a + a * b

    def phi_prime_at_one(self, side):
        """phi'_{T,side}(1) reconstructed from the branch data."""
        a, b = self._oriented(side)
        d, t = (self.delta, self.theta) if side == self.u else (self.theta, self.delta)
        val = (1 + d) * a + (2 + d + t) * a * b
        assert val.denominator == 1
        return val.numerator

    def _oriented(self, side):
        if side == self.u:
            return self.alpha, self.beta
        if side == self.v:
            return self.beta, self.alpha
        raise NotAdjacent(f"{side} is neither endpoint of the decomposed edge")


def branch_decomposition(tree, u, v):
    """Exact branch data for adjacent u, v; components of T - {u, v}."""
    adj = as_tree_adj(tree)
    if u not in adj or v not in adj or v not in adj[u]:
        raise NotAdjacent(f"{u} and {v} are not adjacent")

    def side(x, other):
        out = []
        for w in sorted(adj[x] - {other}, key=node_key):
            phi = _phi_poly(adj, w, forbidden=frozenset((u, v)))
            out.append((w, phi(1), phi.derivative()(1)))
        return tuple(out)

    return BranchDecomposition(u, v, side(u, v), side(v, u))


def local_mean_via_branches(d, side):
    """mu(T; side) from a branch decomposition alone, exact."""
    a, b = d._oriented(side)
    dd, tt = (d.delta, d.theta) if side == d.u else (d.theta, d.delta)
    return (1 + dd + 2 * b + b * (dd + tt)) / Fraction(1 + b)


def jamison_ratio_check(tree, u):
    """(lhs, rhs, tight) for phi'/(1+phi) <= phi/2 at vertex u."""
    adj = as_tree_adj(tree)
    phi = _phi_poly(adj, u)
    p1 = phi(1)
    lhs = Fraction(phi.derivative()(1), 1 + p1)
    rhs = Fraction(p1, 2)
    return lhs, rhs, lhs == rhs
