"""Regularity criteria for closed points, and base-change verdicts.

The pipeline for a presented variety X and a triangular point x:

1. validate: the relations vanish at x, and the derivative matrix of the
   point generators is invertible over the residue tower, so the g_i cut
   out m_x/m_x^2 independently.
2. divide: each relation f_i is written as sum_j h_ij g_j (+ p*w_i in the
   arithmetic case) by triangular division; the h_ij reduced into the
   residue field form the derivative-with-respect-to-generators matrix,
   and the w_i form the extra column.
3. rank: regularity is rank = n - dim (field base) or rank of the
   augmented matrix = n + 1 - dim (over ZZ at a prime).

Every computed matrix is re-checked against its defining property
(d f_i/d t_j)(x) = J * (d g_i/d t_j)(x) before it is used, so a division
bug cannot silently corrupt a verdict.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DimensionMismatch,
    GeneratorsNotIndependent,
    InternalConsistencyError,
    InvalidPoint,
    PointNotOnVariety,
    PointNotRegular,
)
from .groebner import ideal_dimension
from .linalg import FieldMatrix
from .poly import (
    MultiPoly,
    TriangularPoint,
    lift_int,
    membership_certificate,
    partial_derivative,
    reduce_mod,
    triangular_divide,
)
from .rings import ZZ, PrimeField
from .tower import ResidueTower, residue_field, tower_reduce

USER_SUPPLIED = "user-supplied"
ORACLE_GLOBAL = "oracle-global-dimension"


@dataclass(frozen=True)
class PresentedVariety:
    """An affine variety given by relations in named variables over ZZ, QQ,
    or a prime field.  r = 0 (no relations) presents affine space."""

    vars: tuple
    ring: object
    relations: tuple

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        object.__setattr__(self, "relations", tuple(self.relations))
        if not self.vars or len(set(self.vars)) != len(self.vars):
            raise ValueError("variables must be nonempty and distinct")
        for f in self.relations:
            if f.vars != self.vars or f.ring != self.ring:
                raise ValueError("relation disagrees with the declared ring or variables")

    @property
    def n(self):
        return len(self.vars)


@dataclass
class RegularityReport:
    tower: ResidueTower
    jacobian: FieldMatrix      # r x n, entries over the tower
    extra_column: list | None  # arithmetic case: r entries, else None
    rank: int                  # of the augmented matrix in the arithmetic case
    local_dimension: int
    dimension_provenance: str
    regular: bool


@dataclass
class BaseChangeVerdict:
    ramified: bool
    point_regular_upstairs: bool
    system_solvable: bool | None  # ramified case only
    fiber_regular: bool
    witness: list | None
    report: RegularityReport      # the upstairs check this verdict rests on


@dataclass
class SpecialFiberReport:
    ramified: bool
    upstairs: RegularityReport
    fiber: list                   # (point, RegularityReport) pairs
    regular_after_base_change: bool


# ---- validation -------------------------------------------------------


def _validated_context(X: PresentedVariety, point: TriangularPoint):
    point.check()
    if point.vars != X.vars:
        raise InvalidPoint(
            "point variables (%s) do not match the variety's (%s)"
            % (", ".join(point.vars), ", ".join(X.vars))
        )
    if point.ring != X.ring:
        raise InvalidPoint("point generators are not over the variety's base ring")
    for f in X.relations:
        if not membership_certificate(f, point):
            raise PointNotOnVariety("relation %s does not vanish at the point" % f)
    tower = residue_field(point)
    n = X.n
    gmat = [
        [tower_reduce(partial_derivative(g, j), tower) for j in range(n)]
        for g in point.generators
    ]
    if FieldMatrix(tower, gmat).rank() < n:
        raise GeneratorsNotIndependent(
            "the generators' derivative matrix is singular at the point, so "
            "they are dependent modulo the square of the ideal; choose "
            "different generators"
        )
    return tower, gmat


def validate_point(X: PresentedVariety, point: TriangularPoint) -> ResidueTower:
    """Check the relations vanish at the point and the generators are
    independent there; returns the residue tower."""
    tower, _ = _validated_context(X, point)
    return tower


# ---- the derivative-with-respect-to-generators matrix -----------------


def _jacobian(X: PresentedVariety, point: TriangularPoint, tower, gmat):
    """Rows h-bar_ij and (arithmetic case) the extra column w-bar_i, with
    the defining identity rechecked entrywise."""
    p = point.prime
    n = X.n
    rows = []
    extra = []
    for f in X.relations:
        quotients, rem = triangular_divide(f, point)
        if p is None:
            if not rem.is_zero():
                raise InternalConsistencyError(
                    "division left a nonzero remainder after membership passed"
                )
        else:
            if any(c % p for c in rem.terms.values()):
                raise InternalConsistencyError(
                    "division remainder not divisible by the prime after "
                    "membership passed"
                )
            w = MultiPoly(ZZ, f.vars, {e: c // p for e, c in rem.terms.items()})
            extra.append(tower_reduce(w, tower))
        row = [tower_reduce(h, tower) for h in quotients]
        for j in range(n):
            lhs = tower_reduce(partial_derivative(f, j), tower)
            rhs = tower.zero()
            for k in range(n):
                rhs = rhs + row[k] * gmat[k][j]
            if lhs != rhs:
                raise InternalConsistencyError(
                    "derivative identity failed for relation %s at column %d"
                    % (f, j + 1)
                )
        rows.append(row)
    return rows, (extra if p is not None else None)


def generalized_jacobian(X: PresentedVariety, point: TriangularPoint) -> FieldMatrix:
    """The r x n matrix of derivatives of the relations with respect to the
    point generators, over the residue tower."""
    tower, gmat = _validated_context(X, point)
    rows, _ = _jacobian(X, point, tower, gmat)
    return FieldMatrix(tower, rows)


def arithmetic_jacobian(X: PresentedVariety, point: TriangularPoint):
    """(J, extra): the generator-derivative matrix together with the column
    of relation remainders divided by the prime."""
    if point.prime is None:
        raise InvalidPoint("the augmented matrix needs an arithmetic point")
    tower, gmat = _validated_context(X, point)
    rows, extra = _jacobian(X, point, tower, gmat)
    return FieldMatrix(tower, rows), extra


# ---- dimension supplier -----------------------------------------------


def default_dimension(X: PresentedVariety, point: TriangularPoint) -> int:
    """Global ideal dimension of the presented variety; over ZZ, one plus
    the dimension of the fiber ideal modulo the point's prime.

    The global dimension agrees with the local one at the point whenever
    the component through the point has maximal dimension; reports carry
    the provenance so a user override can correct the other cases."""
    if point.prime is not None:
        field = PrimeField(point.prime)
        fiber = [reduce_mod(f, field) for f in X.relations]
        fiber = [f for f in fiber if not f.is_zero()]
        return 1 + (ideal_dimension(fiber) if fiber else X.n)
    rels = [f for f in X.relations if not f.is_zero()]
    return ideal_dimension(rels) if rels else X.n


def _resolve_dimension(X, point, dim_override):
    if dim_override is not None:
        if dim_override < 0:
            raise ValueError("a local dimension cannot be negative")
        return dim_override, USER_SUPPLIED
    return default_dimension(X, point), ORACLE_GLOBAL


# ---- regularity checks ------------------------------------------------


def check_geometric(
    X: PresentedVariety, point: TriangularPoint, dim_override: int | None = None
) -> RegularityReport:
    """Regularity over a field base: regular iff rank = n - dim."""
    if X.ring is ZZ:
        raise ValueError("use check_arithmetic over ZZ")
    tower, gmat = _validated_context(X, point)
    rows, _ = _jacobian(X, point, tower, gmat)
    jac = FieldMatrix(tower, rows)
    rank = jac.rank()
    dim, provenance = _resolve_dimension(X, point, dim_override)
    cotangent = X.n - rank
    if cotangent < dim:
        raise DimensionMismatch(
            "cotangent dimension %d is below the local dimension %d (%s)"
            % (cotangent, dim, provenance)
        )
    return RegularityReport(
        tower=tower,
        jacobian=jac,
        extra_column=None,
        rank=rank,
        local_dimension=dim,
        dimension_provenance=provenance,
        regular=cotangent == dim,
    )


def check_arithmetic(
    X: PresentedVariety, point: TriangularPoint, dim_override: int | None = None
) -> RegularityReport:
    """Regularity over ZZ at a prime: regular iff the augmented rank equals
    n + 1 - dim."""
    if X.ring is not ZZ or point.prime is None:
        raise ValueError("check_arithmetic needs a ZZ base and a prime")
    tower, gmat = _validated_context(X, point)
    rows, extra = _jacobian(X, point, tower, gmat)
    jac = FieldMatrix(tower, rows)
    augmented = FieldMatrix(tower, [row + [e] for row, e in zip(rows, extra)])
    rank = augmented.rank()
    dim, provenance = _resolve_dimension(X, point, dim_override)
    cotangent = X.n + 1 - rank
    if cotangent < dim:
        raise DimensionMismatch(
            "cotangent dimension %d is below the local dimension %d (%s)"
            % (cotangent, dim, provenance)
        )
    return RegularityReport(
        tower=tower,
        jacobian=jac,
        extra_column=extra,
        rank=rank,
        local_dimension=dim,
        dimension_provenance=provenance,
        regular=cotangent == dim,
    )


def check_point(
    X: PresentedVariety, point: TriangularPoint, dim_override: int | None = None
) -> RegularityReport:
    if point.prime is not None:
        return check_arithmetic(X, point, dim_override)
    return check_geometric(X, point, dim_override)


# ---- base change ------------------------------------------------------


def base_change_verdict(
    X: PresentedVariety,
    point: TriangularPoint,
    ramified: bool,
    dim_override: int | None = None,
) -> BaseChangeVerdict:
    """Does regularity at the point survive base change to an extension of
    the integers at the prime?

    Unramified extensions always preserve it.  For a ramified extension the
    fiber point is regular exactly when J v = extra-column is solvable over
    the residue field; the verdict does not depend on which extension is
    taken, only on the ramified flag."""
    report = check_arithmetic(X, point, dim_override)
    if not report.regular:
        raise PointNotRegular(
            "base-change analysis is only defined at a regular point; this "
            "one is singular (rank %d, dimension %d)"
            % (report.rank, report.local_dimension)
        )
    if not ramified:
        return BaseChangeVerdict(
            ramified=False,
            point_regular_upstairs=True,
            system_solvable=None,
            fiber_regular=True,
            witness=None,
            report=report,
        )
    witness = report.jacobian.solve(report.extra_column)
    solvable = witness is not None
    return BaseChangeVerdict(
        ramified=True,
        point_regular_upstairs=True,
        system_solvable=solvable,
        fiber_regular=solvable,
        witness=witness,
        report=report,
    )


# ---- the special-fiber route ------------------------------------------


def special_fiber_verdict(
    X: PresentedVariety,
    point: TriangularPoint,
    fiber_points,
    ramified: bool,
    dim_override: int | None = None,
) -> SpecialFiberReport:
    """Decide base-change regularity through the special fiber.

    The variety must be regular at the supplied arithmetic point and at the
    lift of every fiber point.  Ramified case: regularity after base change
    over the audited locus holds iff the reduction modulo p is regular at
    every supplied fiber point; each fiber verdict is cross-checked against
    the direct solvability route at the lifted point and the two must agree.
    Unramified case: regularity is preserved outright, and fiber verdicts
    are reported for information only.

    A user-supplied dimension applies to the arithmetic points; the fiber
    inherits it minus one (the fiber is a hypersurface section of the
    arithmetic model)."""
    upstairs = check_arithmetic(X, point, dim_override)
    if not upstairs.regular:
        raise PointNotRegular(
            "the special-fiber route assumes the variety is regular at the "
            "supplied point; this one is singular"
        )
    p = point.prime
    field = PrimeField(p)
    fiber_relations = tuple(reduce_mod(f, field) for f in X.relations)
    X_fiber = PresentedVariety(X.vars, field, fiber_relations)
    fiber_dim = None if dim_override is None else dim_override - 1
    entries = []
    all_regular = True
    for fp in fiber_points:
        fp.check()
        if fp.ring is not field:
            raise InvalidPoint(
                "fiber points must be given over GF(%d), the residue field of "
                "the prime" % p
            )
        freport = check_geometric(X_fiber, fp, fiber_dim)
        if ramified:
            lifted = TriangularPoint(
                tuple(lift_int(g) for g in fp.generators), prime=p
            )
            direct = base_change_verdict(X, lifted, True, dim_override)
            if direct.fiber_regular != freport.regular:
                raise InternalConsistencyError(
                    "fiber-route and solvability-route verdicts disagree at a "
                    "fiber point"
                )
        if not freport.regular:
            all_regular = False
        entries.append((fp, freport))
    return SpecialFiberReport(
        ramified=ramified,
        upstairs=upstairs,
        fiber=entries,
        regular_after_base_change=all_regular if ramified else True,
    )
