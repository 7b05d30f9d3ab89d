"""Exact arithmetic in the discrete Weyl-Heisenberg group mod d.

Everything here is integer arithmetic on exponents; no floating point.
Operators are kept in the normal form ``w**t X**a Z**b`` with ``w = exp(2 pi i / d)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class PreconditionError(ValueError):
    """An operation was called outside the regime where its identity holds."""


@dataclass(frozen=True, order=True)
class Residue:
    """Canonical representative of an integer mod ``modulus``."""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise DomainError(f"modulus must be >= 2, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise DomainError("residues have different moduli")
            return other.value
        return int(other)

    def __add__(self, other):
        return Residue(self.value + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return Residue(self.value - self._coerce(other), self.modulus)

    def __rsub__(self, other):
        return Residue(self._coerce(other) - self.value, self.modulus)

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def __mul__(self, other):
        return Residue(self.value * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value


IntLike = Union[int, Residue]


def _int(x: IntLike) -> int:
    return x.value if isinstance(x, Residue) else int(x)


@dataclass(frozen=True)
class WeylOp:
    """The operator ``w**phase X**x Z**z`` on C^dim, exponents reduced mod dim."""

    dim: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self):
        if self.dim < 2:
            raise DomainError(f"dimension must be >= 2, got {self.dim}")
        d = self.dim
        object.__setattr__(self, "x", _int(self.x) % d)
        object.__setattr__(self, "z", _int(self.z) % d)
        object.__setattr__(self, "phase", _int(self.phase) % d)

    @classmethod
    def identity(cls, dim: int) -> "WeylOp":
        return cls(dim)

    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0 and self.phase == 0

    def index(self) -> "GbsIndex":
        """Projective image: forget the phase."""
        return GbsIndex(self.dim, self.x, self.z)

    def __matmul__(self, other: "WeylOp") -> "WeylOp":
        return compose(self, other)


@dataclass(frozen=True, order=True)
class GbsIndex:
    """Label (m, n) of the generalized Bell state (X^m Z^n (x) I)|psi_0>."""

    dim: int
    m: int
    n: int

    def __post_init__(self):
        if self.dim < 2:
            raise DomainError(f"dimension must be >= 2, got {self.dim}")
        object.__setattr__(self, "m", _int(self.m) % self.dim)
        object.__setattr__(self, "n", _int(self.n) % self.dim)

    def op(self) -> WeylOp:
        return WeylOp(self.dim, self.m, self.n)

    def pair(self) -> tuple[int, int]:
        return (self.m, self.n)

    def __repr__(self):
        return f"GbsIndex(d={self.dim}, m={self.m}, n={self.n})"


def s_sum(k: int, d: int) -> int:
    """k + (k+1) + ... + (d-1), with s_d identified with s_0 = d(d-1)/2."""
    if not 0 <= k <= d:
        raise DomainError(f"k must lie in [0, {d}], got {k}")
    if k == d:
        k = 0
    return (d - 1) * d // 2 - (k - 1) * k // 2


def compose(a: WeylOp, b: WeylOp) -> WeylOp:
    # Z^b1 X^a2 = w^(b1 a2) X^a2 Z^b1
    if a.dim != b.dim:
        raise DomainError(f"cannot compose operators of dimension {a.dim} and {b.dim}")
    return WeylOp(a.dim, a.x + b.x, a.z + b.z, a.phase + b.phase + a.z * b.x)


def adjoint(a: WeylOp) -> WeylOp:
    return WeylOp(a.dim, -a.x, -a.z, -a.phase + a.x * a.z)


def power(a: WeylOp, k: int) -> WeylOp:
    if k < 0:
        a, k = adjoint(a), -k
    out = WeylOp.identity(a.dim)
    for _ in range(k):
        out = compose(out, a)
    return out


def h_alpha_valid(alpha: IntLike, d: int) -> bool:
    """Whether H_alpha conjugation acts on labels by (m, n) -> (alpha m + n, -m).

    Holds for every alpha when d is odd and for even alpha when d is even.
    """
    return d % 2 == 1 or _int(alpha) % 2 == 0


def conjugate_by_h(alpha: IntLike, idx: GbsIndex) -> GbsIndex:
    """Label of H_alpha X^m Z^n H_alpha^dagger, with the global phase dropped."""
    d = idx.dim
    if isinstance(alpha, Residue) and alpha.modulus != d:
        raise DomainError("alpha and index have different moduli")
    a = _int(alpha) % d
    if not h_alpha_valid(a, d):
        raise PreconditionError(f"H_{a} does not normalize the Weyl group labels for even d={d}")
    return GbsIndex(d, a * idx.m + idx.n, -idx.m)


def translate(idx: GbsIndex, dm: int, dn: int) -> GbsIndex:
    """Label of X^-dm (X^m Z^n) Z^-dn, i.e. (m - dm, n - dn)."""
    return GbsIndex(idx.dim, idx.m - dm, idx.n - dn)
