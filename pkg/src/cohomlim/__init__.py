"""Group cohomology of finite G-groups and of inverse systems of them.

Nonabelian H^1 as an orbit set, abelian H^n through inhomogeneous cochains,
torsors, limits over finite directed posets, the comparison maps between
cohomology of a limit and the limit of cohomologies, and lim^1 of towers.
Everything is computed by exhaustive enumeration over Cayley tables.
"""

__version__ = "0.1.0"

from .actions import (
    GAction,
    action_from_hom,
    action_to_hom,
    conjugation_action,
    fixed_points,
    induced_action_on_quotient,
    inversion_action,
    restrict_action,
    trivial_action,
    validate_action,
)
from .errors import BudgetExceeded, CohomlimError, SizeLimit, ValidationError
from .filtrations import (
    chain_from_orders,
    derived_tower,
    filtration_tower,
    make_filtration,
    verify_presentation,
)
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    automorphisms,
    commutator_subgroup,
    derived_series,
    direct_product,
    group_from_spec,
    is_characteristic,
    make_cyclic,
    make_dihedral,
    make_hom,
    make_symmetric,
    quotient_group,
    validate_group,
)
from .h1 import (
    Cocycle1,
    H1Set,
    cb_act,
    enumerate_z1_backtracking,
    enumerate_z1_bruteforce,
    h1,
    is_cocycle,
    make_cocycle,
    orbit,
    pullback,
    pushforward,
    stabilizer,
)
from .hn import Cochain, CohomologyGroup, b_n, differential, h_n, orbit_n, stab_n, z_n
from .systems import (
    DirectedPoset,
    InverseSystem,
    LimitGroup,
    chain_poset,
    exact_sequence_check,
    lim1,
    lim1_tower,
    limit,
    make_system,
    make_tower,
    theta_1,
    theta_n,
    validate_poset,
    validate_system,
)
from .torsors import (
    Torsor,
    are_isomorphic,
    cocycle_from_torsor,
    torsor_from_cocycle,
    validate_torsor,
)
