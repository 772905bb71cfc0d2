"""Singular points of hypersurfaces: exhaustive discovery and node certification."""
from typing import List

import numpy as np

from app_managers.core.errors import FieldMismatchError, InconsistencyError, InputError
from app_managers.helpers import status
from arith_managers.fields import ExactField, FiniteField
from arith_managers.matrices import rank
from geometry_managers.points import ProjPoint
from poly_managers.batch_eval import check_budget, evaluate_forms, projective_point_blocks, zero_rows
from poly_managers.polynomials import MultiPoly
from quartic_managers.types import NodeRecord


def certify_node(F: MultiPoly, x: ProjPoint) -> NodeRecord:
    """Gradient test plus the rank of the homogeneous Hessian at x."""
    if x.field != F.field:
        if isinstance(F.field, FiniteField) and F.field.subfield_of(x.field):
            F = F.lift(x.field)
        else:
            raise FieldMismatchError(f"Point over {x.field} cannot be certified on a form over {F.field}")
    if x.dimension + 1 != F.nvars:
        raise InputError(f"Point lives in P^{x.dimension}, form has {F.nvars} variables")
    field = F.field
    gradient_zero = all(field.is_zero(g.evaluate(x.coords)) for g in F.gradient())
    hessian_rank = rank(F.hessian_matrix(x.coords))
    if gradient_zero:
        # Euler: sum x_i dF/dx_i = deg(F)·F
        euler = field.characteristic == 0 or F.degree % field.characteristic
        if euler and not field.is_zero(F.evaluate(x.coords)):
            raise InconsistencyError(f"Gradient vanishes at {x!r} but the form does not")
        if hessian_rank == F.nvars:
            raise InconsistencyError(f"Hessian has full rank {hessian_rank} at the singular point {x!r}")
    return NodeRecord(point=x, gradient_zero=gradient_zero, hessian_rank=hessian_rank)


def singular_points_enumerate(F: MultiPoly, field: ExactField = None, budget: int = None) -> List[NodeRecord]:
    """Every point of P^4(GF(q)) where the gradient of F vanishes, in lexicographic order."""
    field = field or F.field
    if not isinstance(field, FiniteField):
        raise InputError(f"Singular point search needs a finite field, got {field}")
    field.check_odd_characteristic("singular point search")
    if field != F.field:
        F = F.lift(field)
    total = check_budget(field, F.nvars, budget, "Singular point search")
    status(f"Searching {total} points of P^{F.nvars - 1}({field}) for singular points")
    gradient = F.gradient()
    found = []
    for block in projective_point_blocks(field, F.nvars):
        mask = zero_rows(evaluate_forms(field, block, gradient))
        found.extend(tuple(int(v) for v in row) for row in block[mask])
    return [certify_node(F, ProjPoint(field=field, coords=pt)) for pt in found]


def surface_points(F: MultiPoly, budget: int = None) -> np.ndarray:
    """All points of the hypersurface F = 0 over its finite field, as an array of encodings."""
    field = F.field
    if not isinstance(field, FiniteField):
        raise InputError(f"Point enumeration needs a finite field, got {field}")
    check_budget(field, F.nvars, budget, "Hypersurface point enumeration")
    blocks = []
    for block in projective_point_blocks(field, F.nvars):
        blocks.append(block[zero_rows(evaluate_forms(field, block, [F]))])
    if not blocks:
        return np.zeros((0, F.nvars), dtype=np.int64)
    return np.concatenate(blocks)
