"""dmspace: exact combinatorial invariants of finite character lists.

The library computes, in exact integer/rational arithmetic, the solution
spaces of cocircuit difference equations attached to a finite list of
characters of a compact abelian Lie group, together with their explicit
bases, zonotope data, special points, filtration decompositions and vector
partition functions.
"""

from .abelian import (
    GroupElement,
    GroupHom,
    GroupPresentation,
    coset_reps,
    index_of_subgroup,
    quotient_by_element,
    smith_normal_form,
)
from .chars import (
    BigCell,
    CharacterList,
    RationalSubspace,
    TorsionPoint,
    bases,
    big_cells,
    cocircuits,
    delta,
    fixed_sublist,
    rational_subspaces,
    special_points,
    zonotope_points,
)
from .windows import Window, default_window, snug_window
from .series import (
    FaceSelector,
    GammaFunction,
    convolve,
    delta_function,
    heaviside,
    nabla,
    nabla_value,
    p_face,
    q_flag,
    q_step,
    translate,
)
from .dm import (
    DMElement,
    QuasiPolynomial,
    d_space_basis,
    deletion_restriction,
    dm_basis,
    dm_rank,
    is_member_dm,
    local_decomposition,
)
from .filtration import f_decompose, generators_F, is_member_F, reassemble
from .partition import cell_quasipoly, partition_count

__all__ = [name for name in dir() if not name.startswith("_")]
