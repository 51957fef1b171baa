"""Frobenius liftings, symbolic log-volumes and a toy log/theta lattice walker."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .errors import DomainError
from .padic import PadicNumber, PrimeContext, is_prime, padic_log, teichmuller_lift


def frobenius_lift(t: int, m: int, p: int) -> int:
    """F_m(t) = (1 + t)^(p^m) - 1 mod p^(m+1)."""
    if not 0 <= t < p:
        raise DomainError(f"t must lie in 0..{p - 1}")
    if m < 1:
        raise DomainError("m must be >= 1")
    mod = p ** (m + 1)
    return (pow(1 + t, p ** m, mod) - 1) % mod


def lift_limit(t: int, ctx: PrimeContext) -> PadicNumber:
    """lim F_m(t) = omega(1 + t) - 1."""
    p = ctx.p
    if not 0 <= t < p:
        raise DomainError(f"t must lie in 0..{p - 1}")
    if t == p - 1:
        raise DomainError("1 + t must be a unit")
    return teichmuller_lift(1 + t, ctx) - 1


SUBSETS = ("onePlusP", "unitsFull", "unitsModTorsion", "logShellNormalized")


@dataclass(frozen=True)
class LogVolume:
    """a log p + sum b_i log(1 - p^(-f_i)), kept symbolic."""

    log_p_coeff: Fraction = Fraction(0)
    unit_terms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "log_p_coeff", Fraction(self.log_p_coeff))
        merged = {}
        for b, f in self.unit_terms:
            merged[f] = merged.get(f, 0) + b
        object.__setattr__(self, "unit_terms",
                           tuple(sorted((b, f) for f, b in merged.items() if b)))

    def __add__(self, other: LogVolume) -> LogVolume:
        return LogVolume(self.log_p_coeff + other.log_p_coeff,
                         self.unit_terms + other.unit_terms)

    def scale(self, k: int) -> LogVolume:
        return LogVolume(self.log_p_coeff * k, tuple((b * k, f) for b, f in self.unit_terms))

    def __str__(self):
        parts = [f"{self.log_p_coeff}*log(p)"]
        parts += [f"{b}*log(1-p^-{f})" for b, f in self.unit_terms]
        return " + ".join(parts)


def log_volume(p: int, e: int, f: int, m: int, subset: str) -> LogVolume:
    if min(e, f, m) < 1:
        raise DomainError("e, f, m must be >= 1")
    if not is_prime(p):
        raise DomainError("p must be prime")
    if subset == "onePlusP":
        return LogVolume(Fraction(-f))
    if subset == "unitsFull":
        return LogVolume(Fraction(0), ((1, f),))
    if subset == "unitsModTorsion":
        return LogVolume(Fraction(-(m + f)))
    if subset == "logShellNormalized":
        return LogVolume(-(Fraction(m, e * f) + Fraction(1, e)))
    raise DomainError(f"subset must be one of {SUBSETS}")


@dataclass(frozen=True, eq=False)
class HodgeCell:
    n: int
    m: int
    pilot: tuple
    unit: PadicNumber
    torsion_tag: int = 1

    def __post_init__(self):
        object.__setattr__(self, "pilot", tuple(sorted(Fraction(a) for a in self.pilot)))
        if not self.pilot:
            raise DomainError("pilot exponents must be nonempty")
        if self.unit.val != 0 or self.unit.residue() != 1:
            raise DomainError("unit part must lie in 1 + pZ_p")
        if not 1 <= self.torsion_tag <= self.unit.p - 1:
            raise DomainError("torsion tag is a residue in 1..p-1")

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "pilot": [str(a) for a in self.pilot],
                "unit": self.unit.to_json(), "torsionTag": self.torsion_tag}


@dataclass(frozen=True)
class WalkConfig:
    e: int = 1
    f: int = 1
    m: int = 1


def log_link(cell: HodgeCell, config: WalkConfig = WalkConfig()) -> tuple[HodgeCell, LogVolume]:
    """g -> 1 + log(g); log(g) lies in pZ_p so the result stays in 1 + pZ_p."""
    new_unit = 1 + padic_log(cell.unit)
    vol = log_volume(cell.unit.p, config.e, config.f, config.m, "logShellNormalized")
    return replace(cell, m=cell.m + 1, unit=new_unit), vol


def theta_link(cell: HodgeCell, l: int) -> tuple[HodgeCell, LogVolume]:
    """Each pilot exponent a becomes {a j^2 : j = 1..(l-1)/2}."""
    # only exponents move here, so l = p is harmless
    if l < 3 or not is_prime(l):
        raise DomainError("l must be an odd prime")
    pilot = tuple(a * j * j for a in cell.pilot for j in range(1, (l - 1) // 2 + 1))
    return replace(cell, n=cell.n + 1, pilot=pilot), LogVolume()


@dataclass(frozen=True)
class WalkTrace:
    cells: tuple
    step_volumes: tuple
    total: LogVolume = field(default_factory=LogVolume)


def lattice_walk(start: HodgeCell, program, l: int = 5,
                 config: WalkConfig = WalkConfig()) -> WalkTrace:
    """program: sequence of 'T' (theta link) and 'L' (log link) tags."""
    program = [s.strip().upper() for s in program if s.strip()]
    if not program:
        raise DomainError("program must be nonempty")
    cells, vols = [start], []
    total = LogVolume()
    cell = start
    for tag in program:
        if tag == "T":
            cell, vol = theta_link(cell, l)
        elif tag == "L":
            cell, vol = log_link(cell, config)
        else:
            raise DomainError(f"unknown link tag {tag!r}")
        cells.append(cell)
        vols.append(vol)
        total = total + vol
    return WalkTrace(tuple(cells), tuple(vols), total)


def start_cell(ctx: PrimeContext, unit=1) -> HodgeCell:
    return HodgeCell(0, 0, (Fraction(1),), ctx(unit), 1)
