"""Global resource limits. ``PROSIMPL_MAX_SIMPLICES`` overrides the simplex cap."""
import os
from dataclasses import asdict, dataclass

from .errors import BudgetError

DEFAULT_MAX_SIMPLICES = 10**6


def max_simplices() -> int:
    raw = os.environ.get("PROSIMPL_MAX_SIMPLICES")
    return int(raw) if raw else DEFAULT_MAX_SIMPLICES


def check_size(count: int, what: str = "object"):
    cap = max_simplices()
    if count > cap:
        raise BudgetError(f"{what}: {count} non-degenerate simplices exceeds cap {cap}")


@dataclass(frozen=True)
class Budgets:
    n_max: int = 3
    k_max: int = 2
    map_cap: int = 10**5
    dim: int = 3
    problems_per_dim: int = 12
    search_nodes: int = 200_000

    def record(self) -> dict:
        return asdict(self)
