"""Labels for the irreducible modules of the orbifold algebra.

The five families are M+, M- (the theta-eigenspaces of the vacuum Fock
space), Mlam(s) (the charged Fock space with s = lam^2 != 0, noting the
lam <-> -lam isomorphism), and Mtheta+/Mtheta- (eigenspaces of the twisted
space).  Each label knows its sector, its parity filter on partition
length, its lowest-weight vector, and the two numerical invariants
(a_M, b_M) = (o(omega), o(J)) on the top level.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .fock import FORMAL, FockVector, Partition, Sector, basis_at_degree
from .multipoly import MultiPoly
from .scalars import Scalar

KINDS = ("M+", "M-", "Mlam", "Mtheta+", "Mtheta-")


@dataclass(frozen=True)
class ModuleLabel:
    kind: str
    s: object = None  # Fraction or FORMAL, for kind == "Mlam"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError("unknown module kind %r" % self.kind)
        if self.kind == "Mlam":
            if self.s is not FORMAL:
                s = Fraction(self.s)
                if s == 0:
                    raise ValueError("Mlam requires nonzero s = lam^2")
                object.__setattr__(self, "s", s)
        elif self.s is not None:
            raise ValueError("s only applies to Mlam")

    # ------------------------------------------------------------------

    @staticmethod
    def parse(text: str) -> "ModuleLabel":
        text = text.strip()
        if text in ("M+", "M-"):
            return ModuleLabel(text)
        if text in ("Mtheta+", "Mtheta-"):
            return ModuleLabel(text)
        m = re.fullmatch(r"M\(\s*s\s*=\s*(-?\d+(?:/\d+)?)\s*\)", text)
        if m:
            return ModuleLabel("Mlam", Fraction(m.group(1)))
        raise ValueError("cannot parse module label %r" % text)

    def __str__(self):
        if self.kind == "Mlam":
            return "M(s=%s)" % self.s
        return self.kind

    # ------------------------------------------------------------------

    def sector(self) -> Sector:
        if self.kind in ("M+", "M-"):
            return Sector.untwisted(None)
        if self.kind == "Mlam":
            return Sector.untwisted(self.s)
        return Sector.twisted_sector()

    def parity(self) -> Optional[int]:
        """Partition-length parity selecting the theta eigenspace."""
        return {"M+": 0, "M-": 1, "Mlam": None, "Mtheta+": 0, "Mtheta-": 1}[self.kind]

    def top_vector(self) -> FockVector:
        sec = self.sector()
        if self.kind == "M-":
            return FockVector.basis(sec, (1,))
        if self.kind == "Mtheta-":
            return FockVector.basis(sec, (Fraction(1, 2),))
        return FockVector.basis(sec)

    def top_degree(self) -> Fraction:
        return self.top_vector().max_degree()

    def a_M(self) -> Union[Fraction, MultiPoly]:
        """Lowest conformal weight = action of o(omega) on the top level."""
        if self.kind == "Mlam":
            if self.s is FORMAL:
                return MultiPoly.var("s") * Fraction(1, 2)
            return self.s / 2
        return {
            "M+": Fraction(0),
            "M-": Fraction(1),
            "Mtheta+": Fraction(1, 16),
            "Mtheta-": Fraction(9, 16),
        }[self.kind]

    def b_M(self) -> Union[Fraction, MultiPoly]:
        """Action of o(J) on the top level."""
        if self.kind == "Mlam":
            if self.s is FORMAL:
                sv = MultiPoly.var("s")
                return sv * sv - sv * Fraction(1, 2)
            return self.s**2 - self.s / 2
        return {
            "M+": Fraction(0),
            "M-": Fraction(-6),
            "Mtheta+": Fraction(3, 128),
            "Mtheta-": Fraction(-45, 128),
        }[self.kind]

    def basis_at(self, degree) -> List[Partition]:
        """Partition basis of the degree-`degree` graded piece (degree is
        counted from the top vector of the ambient Fock sector)."""
        return basis_at_degree(self.sector(), Fraction(degree), self.parity())

    def contains(self, v: FockVector) -> bool:
        if v.sector != self.sector():
            return False
        par = self.parity()
        if par is None:
            return True
        return all(len(p) % 2 == par for p in v.terms)


ALL_CONCRETE_KINDS = ("M+", "M-", "Mtheta+", "Mtheta-")


def mplus() -> ModuleLabel:
    return ModuleLabel("M+")


def mminus() -> ModuleLabel:
    return ModuleLabel("M-")


def mlam(s) -> ModuleLabel:
    return ModuleLabel("Mlam", s)


def mtheta_plus() -> ModuleLabel:
    return ModuleLabel("Mtheta+")


def mtheta_minus() -> ModuleLabel:
    return ModuleLabel("Mtheta-")
