"""Result record shared by the bound-producing modules."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

METHODS = ("L79", "CZ+L79", "NEW_CODES", "NEW_PACKING", "SIDELNIKOV", "BARG_MUSIN", "PROP15", "COHN_ZHAO")


@dataclass
class BoundReport:
    n: int
    method: str
    log10_bound: float
    theta_used: float | None = None
    theta_prime_used: float | None = None
    delta_star: float = 0.0
    improvement_factor: float = 1.0
    certified: bool = True
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method tag {self.method}")

    @property
    def value(self) -> float:
        return 10.0 ** self.log10_bound

    def sci(self) -> str:
        e = math.floor(self.log10_bound)
        return f"{10 ** (self.log10_bound - e):.3f}e{e:+03d}"

    def as_dict(self) -> dict:
        d = asdict(self)
        d["value_sci"] = self.sci()
        return d
