"""Analysis of the image algebra A generated by a verified pair (X, Y).

The span of all words in X and Y (including the identity) is closed by a
worklist; radical, idempotents and quiver data are then exact linear algebra
inside that span.  Everything here requires nothing beyond rational
eigenvalues of X, and refuses (typed error) when the spectrum is irrational.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import IrrationalEigenvaluesError
from .freealg import NormalPoly
from .matrices import (
    QMatrix,
    SpanBuilder,
    char_poly,
    int_normalized,
    nullspace_basis,
    poly_at_matrix,
)
from .polynomials import UniPoly, poly_ext_gcd, rational_roots
from .reps import RepPair, evaluate
from .scalars import Scalar, scalar_str


@dataclass(frozen=True)
class ImageAlgebra:
    """Echelonized basis of the unital algebra generated by X and Y."""

    rep: RepPair
    basis: tuple  # of QMatrix, canonical reduced-echelon order
    closure_certified: bool

    @property
    def dim(self) -> int:
        return len(self.basis)


def image_algebra(rep: RepPair) -> ImageAlgebra:
    """Span closure of all words in X, Y from the identity seed.

    Right multiplication by the two generators suffices to reach every word.
    The fixpoint certificate: once the worklist drains, every spanning
    element has had both its right-products reduced to zero against the
    span, i.e. one more full round cannot change the rank.
    """
    n = rep.n
    span = SpanBuilder(n * n)
    ident = QMatrix.identity(n)
    span.add(ident.entries)
    # Scaling any spanning element by a nonzero rational leaves the span
    # unchanged, so the worklist carries coprime-integer representatives.
    gens = (int_normalized(rep.X), int_normalized(rep.Y))
    queue = deque([ident])
    accepted = 1
    processed = 0
    while queue:
        m = queue.popleft()
        processed += 1
        for gen in gens:
            prod = int_normalized(m @ gen)
            if span.add(prod.entries):
                queue.append(prod)
                accepted += 1
    basis = [QMatrix(n, n, vec) for vec in span.basis_vectors()]
    certified = processed == accepted and len(basis) == accepted
    return ImageAlgebra(rep, tuple(basis), certified)


def dim_bound(n: int) -> int:
    """Largest possible image dimension: n(n+2)/4 for even n, (n+1)^2/4 odd."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    return n * (n + 2) // 4 if n % 2 == 0 else (n + 1) ** 2 // 4


def rational_spectrum(x: QMatrix) -> "list[tuple[Scalar, int]]":
    """Eigenvalues with multiplicities; error unless the spectrum is rational."""
    roots = rational_roots(char_poly(x))
    if roots is None:
        raise IrrationalEigenvaluesError(
            "the characteristic polynomial of X does not split over Q")
    return roots


def _ideal_closure(a: ImageAlgebra, seeds) -> SpanBuilder:
    """Two-sided ideal span closure of the seeds under left/right X, Y."""
    n = a.rep.n
    span = SpanBuilder(n * n)
    queue = deque()
    for s in seeds:
        s = int_normalized(s)
        if span.add(s.entries):
            queue.append(s)
    x, y = int_normalized(a.rep.X), int_normalized(a.rep.Y)
    while queue:
        m = queue.popleft()
        for prod in (x @ m, m @ x, y @ m, m @ y):
            prod = int_normalized(prod)
            if span.add(prod.entries):
                queue.append(prod)
    return span


def radical_basis(a: ImageAlgebra) -> "list[QMatrix]":
    """Basis of the Jacobson radical J(A).

    J(A) is the two-sided ideal of A generated by Y together with
    S(X) = prod of (X - lambda*I) over the distinct eigenvalues: modulo that
    ideal the algebra is k[x]/(S), a product of fields.  Requires the
    spectrum of X to be rational.
    """
    spectrum = rational_spectrum(a.rep.X)
    s = UniPoly.from_roots([lam for lam, _ in spectrum])
    span = _ideal_closure(a, [poly_at_matrix(s, a.rep.X), a.rep.Y])
    n = a.rep.n
    if span.rank != a.dim - len(spectrum):
        raise AssertionError("radical dimension disagrees with dim A - #eigenvalues")
    return [QMatrix(n, n, vec) for vec in span.basis_vectors()]


def idempotents(a: ImageAlgebra) -> "list[QMatrix]":
    """Complete orthogonal idempotents, one per distinct eigenvalue of X.

    These are the exact generalized eigenprojections: polynomials in X that
    are exactly idempotent, pairwise orthogonal and sum to the identity, and
    reduce to the classical system (X - lambda_1)...(hat).../p(lambda_i)
    modulo the radical.
    """
    spectrum = rational_spectrum(a.rep.X)
    char = char_poly(a.rep.X)
    out = []
    n = a.rep.n
    ident = QMatrix.identity(n)
    total = QMatrix.zeros(n)
    for lam, mult in spectrum:
        p_i = UniPoly.from_roots([lam] * mult)
        q_i = char // p_i
        g, u, _ = poly_ext_gcd(q_i, p_i)
        if g != UniPoly.one():
            raise AssertionError("eigenvalue factors are not coprime")
        e = poly_at_matrix((u * q_i) % char, a.rep.X)
        if e @ e != e:
            raise AssertionError("projection is not idempotent")
        out.append(e)
        total = total + e
    if total != ident:
        raise AssertionError("idempotents do not sum to the identity")
    for i, ei in enumerate(out):
        for j, ej in enumerate(out):
            if i != j and not (ei @ ej).is_zero():
                raise AssertionError("idempotents are not orthogonal")
    return out


@dataclass(frozen=True)
class QuiverData:
    """Vertices = distinct eigenvalues of X; arrows[i][j] = dim e_i(J/J^2)e_j."""

    vertices: tuple
    arrows: tuple  # of tuple of int

    def loop_count(self) -> int:
        if len(self.vertices) != 1:
            raise ValueError("loop count is only meaningful for one vertex")
        return self.arrows[0][0]

    def to_json(self) -> dict:
        return {
            "vertices": [scalar_str(v) for v in self.vertices],
            "arrows": [list(row) for row in self.arrows],
        }


def quiver(a: ImageAlgebra) -> QuiverData:
    """Exact quiver of the (basic) image algebra."""
    spectrum = rational_spectrum(a.rep.X)
    vertices = [lam for lam, _ in spectrum]
    rad = radical_basis(a)
    es = idempotents(a)
    n = a.rep.n
    rad_sq = SpanBuilder(n * n)
    for b1 in rad:
        for b2 in rad:
            rad_sq.add((b1 @ b2).entries)
    sq_vectors = rad_sq.basis_vectors()
    arrows = []
    for ei in es:
        row = []
        for ej in es:
            sb = SpanBuilder(n * n)
            for vec in sq_vectors:
                sb.add(vec)
            base = sb.rank
            for b in rad:
                sb.add((ei @ b @ ej).entries)
            row.append(sb.rank - base)
        arrows.append(tuple(row))
    return QuiverData(tuple(vertices), tuple(arrows))


def ideal_codim(a: ImageAlgebra, gens) -> int:
    """Codimension in A of the two-sided ideal generated by the given
    polynomials evaluated at (X, Y); genuine two-sided closure."""
    images = [evaluate(g, a.rep) for g in gens]
    span = _ideal_closure(a, images)
    return a.dim - span.rank


def discover_relations(rep: RepPair, max_degree: int) -> "list[NormalPoly]":
    """Canonical basis of the degree-bounded relations of the image algebra.

    Kernel of the evaluation map from span{y^k x^m : k+m <= max_degree} to
    n x n matrices, echelonized over the monomial list ordered by (degree,
    number of y's).
    """
    monomials = [(k, d - k) for d in range(max_degree + 1) for k in range(d + 1)]
    columns = [evaluate(NormalPoly.monomial(k, m), rep).entries for k, m in monomials]
    n2 = rep.n * rep.n
    eval_matrix = QMatrix(n2, len(monomials),
                          tuple(columns[c][r] for r in range(n2)
                                for c in range(len(monomials))))
    kernel = nullspace_basis(eval_matrix)
    return [NormalPoly({monomials[i]: v for i, v in enumerate(vec) if v != 0})
            for vec in kernel]


def relation_coefficient_vector(poly: NormalPoly, max_degree: int) -> "tuple[Scalar, ...]":
    """Coefficients of a normal polynomial over the discover_relations basis order."""
    monomials = [(k, d - k) for d in range(max_degree + 1) for k in range(d + 1)]
    index = {km: i for i, km in enumerate(monomials)}
    vec: list[Scalar] = [0] * len(monomials)
    for (k, m), c in poly.items():
        if (k, m) not in index:
            raise ValueError(f"monomial y^{k} x^{m} exceeds degree bound {max_degree}")
        vec[index[(k, m)]] = c
    return tuple(vec)
