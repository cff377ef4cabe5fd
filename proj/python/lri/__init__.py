"""Linear rank inequalities, network codes and matroids over GF(p)."""

from ._lri import (
    Assignment,
    Code,
    Distribution,
    Error,
    Expression,
    Matroid,
    Network,
    Subspace,
    builtin_code_names,
    builtin_distribution_names,
    builtin_expression_names,
    builtin_matroid_names,
    builtin_network_names,
    capacity_bound,
    cond_mutual_rank,
    cond_rank,
    cut_bound,
    induced_assignment,
    joint_rank,
    mutual_rank,
    search,
    verify,
)

Error.code = property(lambda self: self.args[0], doc="Machine-readable error code, e.g. 'missing-inverse'.")

__all__ = [name for name in dir() if not name.startswith("_")]
