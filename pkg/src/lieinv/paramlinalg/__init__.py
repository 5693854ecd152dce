"""Rank and kernel analysis of matrices over Q(i)[x]: generic rank by
fraction-free elimination plus the exact exceptional set where the
kernel dimension jumps."""

from ._engine import backend_name
from .matrix import ParamMatrix, stack_systems
from .profile import (
    KernelProfile,
    bareiss_generic_rank,
    branch_sort_key,
    kernel_basis_at,
    kernel_profile,
    rank_at_point,
    subspace_equal,
)

__all__ = [
    "KernelProfile",
    "ParamMatrix",
    "backend_name",
    "bareiss_generic_rank",
    "branch_sort_key",
    "kernel_basis_at",
    "kernel_profile",
    "rank_at_point",
    "stack_systems",
    "subspace_equal",
]
