"""Deformazioni toriche omogenee di Gorenstein.

Una deformazione è data dal cono sigma in R^(n+m) e dai funzionali marcatori
r_0..r_m (proiezioni sulle coordinate n..n+m); la fibra centrale è il cono
sigma ∩ L^⊥ con L generato da r_i - r_0.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InputError, NotFibreCompatibleError, NotGorensteinHomogeneousError, NotSimplicialError
from .lattice import (
    LatticeMatrix,
    LatticeVector,
    as_integer,
    as_vector,
    dot,
    kernel_basis,
    rank_of,
    sub,
    unit_vector,
)
from .limits import DEFAULT_LIMITS, ComputationLimits
from .polyhedra import ConeDesc, PolytopeDesc, cayley_cone, minkowski_sum_all, restrict_to_sublattice
from .toric import QuotientActionDesc, SingularityFlags, cyclic_quotient_classify, quotient_action_from_rays

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DeformationDesc:
    cone: ConeDesc
    n: int
    m: int
    markers: Tuple[LatticeVector, ...]
    summands: Optional[Tuple[PolytopeDesc, ...]]
    l_basis: Tuple[LatticeVector, ...]

    def __post_init__(self) -> None:
        dim = self.n + self.m
        if self.n < 1 or self.m < 0:
            raise NotGorensteinHomogeneousError(f"Dimensioni non valide: n={self.n}, m={self.m}.")
        if self.cone.ambient_dim != dim:
            raise NotGorensteinHomogeneousError(
                f"Il cono vive in dimensione {self.cone.ambient_dim}, attesa n+m={dim}."
            )
        if len(self.markers) != self.m + 1 or any(len(r) != dim for r in self.markers):
            raise NotGorensteinHomogeneousError("Servono m+1 funzionali marcatori di lunghezza n+m.")
        for ray in self.cone.rays:
            valori = [dot(r, ray) for r in self.markers]
            if any(v < 0 for v in valori) or sum(valori) != 1:
                raise NotGorensteinHomogeneousError(
                    f"Il raggio {ray} ha valori marcatori {valori}: servono interi non negativi di somma 1."
                )
        attesa = tuple(sub(r, self.markers[0]) for r in self.markers[1:])
        if self.l_basis != attesa:
            raise NotGorensteinHomogeneousError("La base di L deve essere r_i - r_0, i = 1..m.")
        if rank_of(self.l_basis) != self.m:
            raise NotGorensteinHomogeneousError(f"Il reticolo L ha rango {rank_of(self.l_basis)} invece di {self.m}.")

    def to_dict(self) -> Dict[str, object]:
        data: Dict[str, object] = {"n": self.n, "m": self.m, "cone": self.cone.to_dict()}
        data["summands"] = [s.to_dict() for s in self.summands] if self.summands is not None else None
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "DeformationDesc":
        n = as_integer(data["n"])
        if data.get("summands"):
            return build_deformation(
                [PolytopeDesc.from_dict(s, ambient_dim=n - 1) for s in data["summands"]], n
            )
        return deformation_from_cone(ConeDesc.from_dict(data["cone"]), n)


def _markers(n: int, m: int) -> Tuple[LatticeVector, ...]:
    return tuple(unit_vector(n - 1 + i, n + m) for i in range(m + 1))


def deformation_from_cone(cone: ConeDesc, n: int) -> DeformationDesc:
    """Deformazione con marcatori sulle ultime m+1 coordinate di un cono già costruito."""
    m = cone.ambient_dim - n
    markers = _markers(n, m)
    return DeformationDesc(
        cone=cone,
        n=n,
        m=m,
        markers=markers,
        summands=None,
        l_basis=tuple(sub(r, markers[0]) for r in markers[1:]),
    )


def build_deformation(summands: Sequence[PolytopeDesc], n: int) -> DeformationDesc:
    cone = cayley_cone(summands, n)
    m = len(summands) - 1
    markers = _markers(n, m)
    logger.info("Deformazione costruita: n=%d, m=%d, %d raggi.", n, m, len(cone.rays))
    return DeformationDesc(
        cone=cone,
        n=n,
        m=m,
        markers=markers,
        summands=tuple(summands),
        l_basis=tuple(sub(r, markers[0]) for r in markers[1:]),
    )


def fibre_lattice_basis(d: DeformationDesc) -> Tuple[LatticeVector, ...]:
    """Base (forma di Hermite) del reticolo L^⊥ che contiene la fibra centrale."""
    dim = d.n + d.m
    if d.m == 0:
        return tuple(unit_vector(i, dim) for i in range(dim))
    return kernel_basis(LatticeMatrix.from_rows(d.l_basis, dim))


def central_fibre(d: DeformationDesc) -> ConeDesc:
    """Il cono sigma ∩ L^⊥ nelle coordinate della base di fibre_lattice_basis."""
    if d.m == 0:
        return d.cone
    fibra = restrict_to_sublattice(d.cone, fibre_lattice_basis(d))
    if fibra is None:
        raise InputError("L'intersezione del cono con L^⊥ si riduce all'origine.")
    return fibra


def minkowski_cone(summands: Sequence[PolytopeDesc]) -> ConeDesc:
    """Cono sopra la somma di Minkowski degli addendi, posta ad altezza 1."""
    somma = minkowski_sum_all(summands)
    return ConeDesc.from_rays([v + (1,) for v in somma.vertices], somma.ambient_dim + 1)


# ---------------------------------------------------------------------------
# Presentazione delle fibre per carta
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FibrePresentationDesc:
    chart: ConeDesc
    reorder: Tuple[int, ...]
    partition: Tuple[int, ...]
    monomials: Tuple[LatticeVector, ...]
    action: QuotientActionDesc

    @property
    def blocks(self) -> Tuple[Tuple[int, ...], ...]:
        """Indici (nei raggi della carta) dei raggi di ciascun blocco."""
        return tuple(
            self.reorder[self.partition[i]:self.partition[i + 1]] for i in range(len(self.partition) - 1)
        )

    @property
    def block_sizes(self) -> Tuple[int, ...]:
        return tuple(b - a for a, b in zip(self.partition, self.partition[1:]))

    def to_dict(self) -> Dict[str, object]:
        return {
            "chart": self.chart.to_dict(),
            "partition": list(self.partition),
            "blocks": [list(b) for b in self.blocks],
            "monomials": [list(f) for f in self.monomials],
            "action": self.action.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "FibrePresentationDesc":
        return cls(
            chart=ConeDesc.from_dict(data["chart"]),
            reorder=tuple(as_integer(j) for blocco in data["blocks"] for j in blocco),
            partition=as_vector(data["partition"]),
            monomials=tuple(as_vector(f) for f in data["monomials"]),
            action=QuotientActionDesc.from_dict(data["action"]),
        )


def fibre_presentation(d: DeformationDesc, chart: ConeDesc) -> FibrePresentationDesc:
    """Blocchi della carta: F_i è il prodotto delle coordinate su cui r_i vale 1."""
    dim = d.n + d.m
    if chart.ambient_dim != dim:
        raise InputError(f"Carta in dimensione {chart.ambient_dim}, attesa {dim}.")
    if not chart.is_simplicial or chart.dim != dim:
        raise NotSimplicialError("La carta deve essere un cono simpliciale di dimensione massima.")
    for ray in chart.rays:
        if not d.cone.contains(ray):
            raise InputError(f"Il raggio {ray} della carta non appartiene al cono della deformazione.")

    blocchi: List[List[int]] = [[] for _ in range(d.m + 1)]
    for j, ray in enumerate(chart.rays):
        valori = [dot(r, ray) for r in d.markers]
        if any(v not in (0, 1) for v in valori) or sum(valori) != 1:
            raise NotFibreCompatibleError(
                f"Il raggio {ray} ha valori marcatori {valori}: servono valori in {{0,1}} con un solo 1."
            )
        blocchi[valori.index(1)].append(j)
    vuoti = [i for i, b in enumerate(blocchi) if not b]
    if vuoti:
        raise NotFibreCompatibleError(f"Blocchi vuoti per i marcatori {vuoti}.")

    reorder = tuple(j for b in blocchi for j in b)
    partition = [0]
    for b in blocchi:
        partition.append(partition[-1] + len(b))
    monomials = tuple(
        tuple(1 if partition[i] <= pos < partition[i + 1] else 0 for pos in range(dim))
        for i in range(d.m + 1)
    )
    action = quotient_action_from_rays([chart.rays[j] for j in reorder])
    for f in monomials:
        if not action.is_invariant(f):
            raise NotFibreCompatibleError(f"Il monomio {f} non è invariante per l'azione del gruppo.")
    return FibrePresentationDesc(chart, reorder, tuple(partition), monomials, action)


# ---------------------------------------------------------------------------
# Ipersuperfici in quozienti ciclici
# ---------------------------------------------------------------------------


def _validate_hypersurface(order: int, weights: Sequence[int], p: int) -> Tuple[int, ...]:
    pesi = as_vector(weights)
    if order < 1:
        raise InputError(f"Ordine del gruppo non valido: {order}.")
    if not 1 <= p <= len(pesi):
        raise InputError(f"Indice di separazione p={p} fuori da 1..{len(pesi)}.")
    if any(not 0 <= a < order for a in pesi):
        raise InputError(f"Pesi {pesi} non compresi in [0, {order}).")
    return pesi


def hypersurface_canonicity_check(order: int, weights: Sequence[int], p: int) -> bool:
    """sum(a_i) <= l + max(sum_{i<=p} a_i, sum_{i>p} a_i), in aritmetica esatta."""
    pesi = _validate_hypersurface(order, weights, p)
    return sum(pesi) <= order + max(sum(pesi[:p]), sum(pesi[p:]))


@dataclass(frozen=True)
class HypersurfaceQuotientReport:
    order: int
    weights: Tuple[int, ...]
    p: int
    quotient_flags: SingularityFlags
    equation_semi_invariant: bool
    inequality: bool
    central_fibre_canonical: Optional[bool]
    general_fibre_terminal: bool

    def to_dict(self) -> Dict[str, object]:
        return {
            "order": self.order,
            "weights": list(self.weights),
            "p": self.p,
            "quotient": self.quotient_flags.to_dict(),
            "equation_semi_invariant": self.equation_semi_invariant,
            "inequality": self.inequality,
            "central_fibre_canonical": self.central_fibre_canonical,
            "general_fibre_terminal": self.general_fibre_terminal,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "HypersurfaceQuotientReport":
        return cls(
            order=as_integer(data["order"]),
            weights=as_vector(data["weights"]),
            p=as_integer(data["p"]),
            quotient_flags=SingularityFlags.from_dict(data["quotient"]),
            equation_semi_invariant=bool(data["equation_semi_invariant"]),
            inequality=bool(data["inequality"]),
            central_fibre_canonical=data.get("central_fibre_canonical"),
            general_fibre_terminal=bool(data["general_fibre_terminal"]),
        )


def check_hypersurface_quotient(
    order: int, weights: Sequence[int], p: int, limits: ComputationLimits = DEFAULT_LIMITS
) -> HypersurfaceQuotientReport:
    """Ipotesi per Y = (x_1...x_p - x_{p+1}...x_{n+1} = 0) in C^{n+1}/G e per la famiglia h = t.

    central_fibre_canonical è None quando le ipotesi (quoziente Gorenstein
    terminale e disuguaglianza) non valgono: in quel caso non si conclude nulla.
    """
    pesi = _validate_hypersurface(order, weights, p)
    flags = cyclic_quotient_classify(QuotientActionDesc.cyclic(order, pesi), limits)
    disuguaglianza = hypersurface_canonicity_check(order, pesi, p)
    ipotesi = flags.is_gorenstein and flags.is_terminal and disuguaglianza
    return HypersurfaceQuotientReport(
        order=order,
        weights=pesi,
        p=p,
        quotient_flags=flags,
        equation_semi_invariant=(sum(pesi[:p]) - sum(pesi[p:])) % order == 0,
        inequality=disuguaglianza,
        central_fibre_canonical=True if ipotesi else None,
        # lo spazio totale C^{n+1}/G x C è Q-fattoriale: la fibra generale eredita la terminalità
        general_fibre_terminal=flags.is_terminal,
    )
