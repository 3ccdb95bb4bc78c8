"""
Semiconjugacy (phi-twisted conjugacy) on G = Z^2.

g1 and g2 are semiconjugate when g1 = g * g2 * phi(g)^-1 for some g, which
on exponents reads ([phi] - I) z = theta(g2 * g1^-1). Classes are cosets of
im([phi] - I); the semicentralizer of every element is ker([phi] - I).
"""
from dataclasses import dataclass
from functools import lru_cache
from algebra.group_algebra import GroupElement
from algebra.integer_lattice import (
    INFINITE,
    IntMatrix2,
    cokernel_reps,
    image_echelon,
    kernel_lattice,
    reduce_mod_basis,
    solve_affine,
)


@dataclass(frozen=True, order=True)
class ClassId:
    """Canonical coset representative of theta(g) modulo im([phi] - I)."""
    rep: GroupElement

    def to_pair(self):
        return [self.rep.m, self.rep.n]

    @classmethod
    def from_pair(cls, pair):
        return cls(GroupElement.from_pair(pair))

    def __str__(self):
        return f"[{self.rep.m},{self.rep.n}]"


@lru_cache(maxsize=None)
def twisted_matrix(phi):
    """[phi] - I."""
    return IntMatrix2(phi.b1 - 1, phi.b3, phi.b2, phi.b4 - 1)


def conjugator(z):
    return GroupElement(z[0], z[1])


def twisted_conjugate(phi, g, h):
    """g * h * phi(g)^-1."""
    return g * h * phi.apply(g).inverse()


def same_class(phi, g1, g2):
    """Witness z with ([phi]-I) z = theta(g2 g1^-1), or None."""
    solution = solve_affine(twisted_matrix(phi), (g2 * g1.inverse()).theta())
    return solution.z0 if solution is not None else None


@lru_cache(maxsize=65536)
def class_id(phi, g):
    rep = reduce_mod_basis(g.theta(), image_echelon(twisted_matrix(phi)))
    return ClassId(GroupElement(*rep))


@lru_cache(maxsize=None)
def semicentralizer(phi):
    """ker([phi] - I); the same lattice for every element of G."""
    return kernel_lattice(twisted_matrix(phi))


def class_count(phi):
    det = twisted_matrix(phi).det()
    return abs(det) if det else INFINITE


def class_representatives(phi):
    """ClassIds of all classes when finitely many, else None."""
    cokernel = cokernel_reps(twisted_matrix(phi))
    if cokernel.is_infinite:
        return None
    return [ClassId(GroupElement(*rep)) for rep in cokernel.reps]
