"""Stratum census, module decomposition and the orbit-map Jacobian rank.

The stratum attached to a partition consists of all verified pairs whose Y
has that Jordan type; it fibers over the conjugacy class of Y with fiber the
affine solution space computed in reps.fiber_basis, so every stratum has
dimension exactly n^2.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import OutOfRangeError
from .imagealg import dim_bound, rational_spectrum
from .matrices import QMatrix, char_poly, inverse, nullspace_basis, poly_at_matrix, rank
from .polynomials import UniPoly
from .reps import Partition, RepPair, fiber_basis, jordan_block, x_zero
from .scalars import exact


class TameLabel(enum.Enum):
    TAME = "tame"
    WILD = "wild"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class StratumInfo:
    partition: Partition
    fiber_dim: int
    base_dim: int
    stratum_dim: int
    image_dim_bound: int
    tame: TameLabel

    def to_json(self) -> dict:
        return {
            "partition": list(self.partition.parts),
            "fiber_dim": self.fiber_dim,
            "base_dim": self.base_dim,
            "stratum_dim": self.stratum_dim,
            "image_dim_bound": self.image_dim_bound,
            "tame": self.tame.value,
        }


@lru_cache(maxsize=None)
def _partitions_tuple(n: int) -> tuple:
    def gen(total, maxpart):
        if total == 0:
            yield ()
            return
        for k in range(min(total, maxpart), 0, -1):
            for rest in gen(total - k, k):
                yield (k,) + rest

    return tuple(Partition(parts) for parts in gen(n, n))


def partitions(n: int) -> "list[Partition]":
    """All partitions of n, weakly decreasing parts, descending lex order."""
    if n < 1:
        raise OutOfRangeError("partitions are defined for n >= 1")
    return list(_partitions_tuple(n))


def _tame_label(p: Partition) -> TameLabel:
    # Classified only for the full-block stratum: tame through n = 4, wild
    # from n = 5 on.  Other strata are deliberately reported as unknown.
    if len(p.parts) == 1:
        return TameLabel.TAME if p.n <= 4 else TameLabel.WILD
    return TameLabel.UNKNOWN


def census(n: int) -> "list[StratumInfo]":
    """One row per partition: fiber/base/stratum dimensions and labels."""
    out = []
    for p in partitions(n):
        fiber = fiber_basis(p)
        fiber_dim = len(fiber.basis)
        out.append(StratumInfo(
            partition=p,
            fiber_dim=fiber_dim,
            base_dim=n * n - fiber_dim,
            stratum_dim=n * n,
            image_dim_bound=dim_bound(n),
            tame=_tame_label(p),
        ))
    return out


@dataclass(frozen=True)
class Decomposition:
    """Summands per distinct eigenvalue of X plus the conjugating matrix.

    change_of_basis columns are the generalized eigenbases in eigenvalue
    order; conjugating the original pair by its inverse gives exactly the
    block-diagonal assembly of the summands.
    """

    summands: tuple  # of RepPair
    eigenvalues: tuple
    change_of_basis: QMatrix

    def __iter__(self):
        return iter(self.summands)

    def __len__(self) -> int:
        return len(self.summands)

    def __getitem__(self, i):
        return self.summands[i]


def decompose(rep: RepPair) -> Decomposition:
    """Split into submodules on the generalized eigenspaces of X.

    Each eigenspace ker (X - lambda I)^mult is Y-invariant, so every summand
    is itself a verified pair; requires the spectrum of X to be rational.
    """
    spectrum = rational_spectrum(rep.X)
    n = rep.n
    ident = QMatrix.identity(n)
    columns = []
    sizes = []
    for lam, mult in spectrum:
        power = poly_at_matrix(UniPoly.from_roots([lam] * mult), rep.X)
        kernel = nullspace_basis(power)
        if len(kernel) != mult:
            raise AssertionError("generalized eigenspace has unexpected dimension")
        columns.extend(kernel)
        sizes.append(mult)
    c = QMatrix(n, n, tuple(columns[j][i] for i in range(n) for j in range(n)))
    c_inv = inverse(c)
    xb = c_inv @ rep.X @ c
    yb = c_inv @ rep.Y @ c
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    for m in (xb, yb):
        for bi in range(len(sizes)):
            for bj in range(len(sizes)):
                if bi == bj:
                    continue
                for i in range(offsets[bi], offsets[bi + 1]):
                    for j in range(offsets[bj], offsets[bj + 1]):
                        if m[i, j] != 0:
                            raise AssertionError(
                                "eigenspace splitting left an off-diagonal block")
    summands = []
    for b in range(len(sizes)):
        lo, hi = offsets[b], offsets[b + 1]
        size = hi - lo
        xs = QMatrix(size, size, tuple(xb[i, j] for i in range(lo, hi)
                                       for j in range(lo, hi)))
        ys = QMatrix(size, size, tuple(yb[i, j] for i in range(lo, hi)
                                       for j in range(lo, hi)))
        summands.append(RepPair(xs, ys))
    return Decomposition(tuple(summands),
                         tuple(lam for lam, _ in spectrum), c)


def single_eigenvalue_test(rep: RepPair) -> bool:
    """True iff char(X) = (t - lambda)^n for a rational lambda.

    False certifies decomposability; True alone does not certify
    indecomposability.
    """
    n = rep.n
    lam = exact(Fraction(rep.X.trace()) / n)
    return char_poly(rep.X) == UniPoly.from_roots([lam] * n)


def jacobian_rank(n: int, c_coeffs, x_coeffs) -> int:
    """Rank of the differential of the stabilizer orbit map at C.

    C = I + sum c_k J^k ranges over the unipotent stabilizer, X = x_zero(n)
    + sum x_k J^k over the zero-eigenvalue slice; the differential sends a
    tangent direction D in {J, ..., J^(n-1)} to C^-1 X D - C^-1 D C^-1 X C.
    The rank equals n - 2 for every valid input.
    """
    if n < 2:
        raise OutOfRangeError("jacobian_rank is defined for n >= 2")
    j = jordan_block(n)
    powers = [QMatrix.identity(n)]
    for _ in range(n - 1):
        powers.append(powers[-1] @ j)
    c = QMatrix.identity(n)
    for k, coeff in enumerate(c_coeffs, start=1):
        if k >= n:
            break
        c = c + powers[k].scale(coeff)
    x = x_zero(n)
    for k, coeff in enumerate(x_coeffs, start=1):
        if k >= n:
            break
        x = x + powers[k].scale(coeff)
    c_inv = inverse(c)
    left = c_inv @ x            # C^-1 X
    right = left @ c            # C^-1 X C
    rows = []
    for k in range(1, n):
        delta = powers[k]
        image = left @ delta - c_inv @ delta @ right
        rows.append(image.entries)
    differential = QMatrix(n - 1, n * n, tuple(v for row in rows for v in row))
    return rank(differential)
