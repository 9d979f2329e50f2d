"""Semidirect decompositions of small finite groups."""

from .core import (
    FiniteGroup,
    Permutation,
    Subgroup,
    all_subgroups,
    close,
    core,
    cyclic_group,
    dicyclic_group,
    element_order,
    is_normal,
    perm_group,
    symmetric_group,
)

__version__ = "0.1.0"
