"""Classificazione delle singolarità delle carte toriche affini.

Liscio, Q-fattoriale (simpliciale), Gorenstein, canonico, terminale; dati del
gruppo quoziente di una carta simpliciale ed età di Reid-Tai; pesi dello spazio
proiettivo pesato associato al quoziente di una stella.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from math import lcm, prod
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Rational

from .errors import GuardExceededError, InputError, NoPositiveRelationError, NotSimplicialError
from .lattice import (
    LatticeMatrix,
    LatticeVector,
    as_integer,
    as_vector,
    dot,
    is_primitive,
    kernel_basis,
    rank_of,
    smith_normal_form,
    solve_integral,
)
from .limits import DEFAULT_LIMITS, ComputationLimits
from .polyhedra import ConeDesc, PolytopeDesc, lattice_points

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SingularityFlags:
    is_smooth: bool
    is_simplicial: bool
    is_gorenstein: bool
    is_canonical: bool
    is_terminal: bool
    index: int
    gorenstein_functional: Optional[LatticeVector] = None
    # solo per i quozienti C^dim / G: elementi che agiscono non banalmente, più l'identità
    effective_order: Optional[int] = None

    def to_dict(self) -> Dict[str, object]:
        return {
            "smooth": self.is_smooth,
            "simplicial": self.is_simplicial,
            "gorenstein": self.is_gorenstein,
            "canonical": self.is_canonical,
            "terminal": self.is_terminal,
            "index": self.index,
            "gorenstein_functional": (
                list(self.gorenstein_functional) if self.gorenstein_functional is not None else None
            ),
            "effective_order": self.effective_order,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "SingularityFlags":
        funzionale = data.get("gorenstein_functional")
        efficace = data.get("effective_order")
        return cls(
            is_smooth=bool(data["smooth"]),
            is_simplicial=bool(data["simplicial"]),
            is_gorenstein=bool(data["gorenstein"]),
            is_canonical=bool(data["canonical"]),
            is_terminal=bool(data["terminal"]),
            index=as_integer(data["index"]),
            gorenstein_functional=as_vector(funzionale) if funzionale is not None else None,
            effective_order=as_integer(efficace) if efficace is not None else None,
        )


@dataclass(frozen=True)
class QuotientActionDesc:
    """Azione diagonale di un gruppo abeliano finito su C^dim.

    Il generatore j del fattore ciclico di ordine cyclic_factors[j] agisce
    sulla coordinata x_i con peso generators[j][i], cioè x_i -> zeta^peso x_i.
    """

    order: int
    generators: Tuple[LatticeVector, ...]
    cyclic_factors: Tuple[int, ...]
    dim: int

    def __post_init__(self) -> None:
        if self.order < 1:
            raise InputError(f"Ordine del gruppo non valido: {self.order}.")
        if any(f < 1 for f in self.cyclic_factors):
            raise InputError(f"Fattori ciclici non validi: {self.cyclic_factors}.")
        if prod(self.cyclic_factors) != self.order:
            raise InputError(
                f"Il prodotto dei fattori ciclici {self.cyclic_factors} differisce dall'ordine {self.order}."
            )
        if len(self.generators) != len(self.cyclic_factors):
            raise InputError("Numero di generatori diverso dal numero di fattori ciclici.")
        for pesi, ordine in zip(self.generators, self.cyclic_factors):
            if len(pesi) != self.dim:
                raise InputError(f"Il generatore {pesi} non ha {self.dim} pesi.")
            if any(not 0 <= a < ordine for a in pesi):
                raise InputError(f"Pesi {pesi} non ridotti modulo {ordine}.")

    @classmethod
    def cyclic(cls, order: int, weights: Sequence[int]) -> "QuotientActionDesc":
        """Gruppo ciclico Z/order con pesi ridotti modulo order."""
        if order < 1:
            raise InputError(f"Ordine del gruppo non valido: {order}.")
        pesi = tuple(int(a) % order for a in weights)
        if order == 1:
            return cls(1, (), (), len(pesi))
        return cls(order, (pesi,), (order,), len(pesi))

    def is_invariant(self, exponent: Sequence[int]) -> bool:
        """Vero se il monomio x^exponent è invariante per l'azione."""
        return all(dot(pesi, exponent) % ordine == 0 for pesi, ordine in zip(self.generators, self.cyclic_factors))

    def to_dict(self) -> Dict[str, object]:
        return {
            "order": self.order,
            "cyclic_factors": list(self.cyclic_factors),
            "generators": [list(g) for g in self.generators],
            "dim": self.dim,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "QuotientActionDesc":
        return cls(
            order=as_integer(data["order"]),
            generators=tuple(as_vector(g) for g in data.get("generators", [])),
            cyclic_factors=as_vector(data.get("cyclic_factors", [])),
            dim=as_integer(data["dim"]),
        )


@dataclass(frozen=True)
class BoxPoint:
    """Punto reticolare sum(alpha_i k_i) con 0 <= alpha_i < 1, escluso l'origine."""

    coefficients: Tuple[Rational, ...]
    point: LatticeVector
    height: Rational


@dataclass(frozen=True)
class StarQuotientDesc:
    weights: Tuple[int, ...]
    relation: Tuple[int, ...]
    images: Tuple[LatticeVector, ...]
    primitive_images: bool
    images_generate: bool

    def to_dict(self) -> Dict[str, object]:
        return {
            "exceptional_weights": list(self.weights),
            "relation": list(self.relation),
            "images": [list(v) for v in self.images],
            "primitive_images": self.primitive_images,
            "images_generate": self.images_generate,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "StarQuotientDesc":
        return cls(
            weights=as_vector(data["exceptional_weights"]),
            relation=as_vector(data["relation"]),
            images=tuple(as_vector(v) for v in data["images"]),
            primitive_images=bool(data["primitive_images"]),
            images_generate=bool(data["images_generate"]),
        )


# ---------------------------------------------------------------------------


def gorenstein_functional(cone: ConeDesc) -> Optional[LatticeVector]:
    """Funzionale intero che vale 1 su ogni raggio estremale, se esiste."""
    raggi = cone.extremal_rays() or cone.rays
    return solve_integral(LatticeMatrix.from_rows(raggi, cone.ambient_dim), [1] * len(raggi))


def _span_ray_matrix(rays: Sequence[LatticeVector], cone: ConeDesc) -> LatticeMatrix:
    """Matrice k x k le cui colonne sono i raggi nelle coordinate dello span saturo."""
    return LatticeMatrix.from_columns([cone.span_coordinates(r) for r in rays], cone.dim)


def _require_simplicial(cone: ConeDesc) -> None:
    if not cone.is_simplicial:
        raise NotSimplicialError(
            f"Il cono con {len(cone.rays)} raggi in uno span di dimensione {cone.dim} non è simpliciale."
        )


def box_points(cone: ConeDesc, limits: ComputationLimits = DEFAULT_LIMITS) -> Tuple[BoxPoint, ...]:
    """Rappresentanti dei laterali di N / sum(Z k_i) tramite la forma di Smith."""
    _require_simplicial(cone)
    M = _span_ray_matrix(cone.rays, cone)
    indice = abs(M.determinant())
    if indice > limits.max_quotient_order:
        raise GuardExceededError(
            f"Indice {indice} oltre il limite max_quotient_order={limits.max_quotient_order}."
        )
    if indice == 1:
        return ()
    snf = smith_normal_form(M)
    diagonale = snf.diagonal
    denominatore = diagonale[-1]
    k = cone.dim
    punti: List[BoxPoint] = []
    for w in product(*(range(d) for d in diagonale)):
        if not any(w):
            continue
        numeratori = [
            sum(snf.V.entry(i, j) * w[j] * (denominatore // diagonale[j]) for j in range(k)) % denominatore
            for i in range(k)
        ]
        coefficienti = tuple(Rational(a, denominatore) for a in numeratori)
        punto = tuple(
            sum(a * r[c] for a, r in zip(numeratori, cone.rays)) // denominatore
            for c in range(cone.ambient_dim)
        )
        punti.append(BoxPoint(coefficienti, punto, sum(coefficienti, Rational(0))))
    punti.sort(key=lambda b: (b.height, b.point))
    return tuple(punti)


def classify_simplicial_cone(cone: ConeDesc, limits: ComputationLimits = DEFAULT_LIMITS) -> SingularityFlags:
    _require_simplicial(cone)
    indice = abs(_span_ray_matrix(cone.rays, cone).determinant())
    funzionale = gorenstein_functional(cone)
    altezze = [b.height for b in box_points(cone, limits)]
    canonico = all(h >= 1 for h in altezze)
    terminale = all(h > 1 for h in altezze)
    logger.debug("Cono %s: indice %d, altezze %s.", cone.rays, indice, altezze)
    return SingularityFlags(
        is_smooth=indice == 1,
        is_simplicial=True,
        is_gorenstein=funzionale is not None,
        is_canonical=canonico,
        is_terminal=terminale,
        index=indice,
        gorenstein_functional=funzionale,
    )


def classify_cone(cone: ConeDesc, limits: ComputationLimits = DEFAULT_LIMITS) -> SingularityFlags:
    """Classificazione di un cono qualsiasi: simpliciale oppure Gorenstein."""
    if cone.is_simplicial:
        return classify_simplicial_cone(cone, limits)
    funzionale = gorenstein_functional(cone) if cone.is_pointed else None
    if funzionale is None:
        raise NotSimplicialError(
            "Classificazione disponibile solo per coni simpliciali o Gorenstein: il cono non è né l'uno né l'altro."
        )
    vertici = cone.extremal_rays()
    sezione = PolytopeDesc.from_points(vertici, cone.ambient_dim)
    terminale = set(lattice_points(sezione, limits)) == set(vertici)
    return SingularityFlags(
        is_smooth=False,
        is_simplicial=False,
        is_gorenstein=True,
        is_canonical=True,
        is_terminal=terminale,
        index=1,
        gorenstein_functional=funzionale,
    )


def _group_elements(action: QuotientActionDesc) -> List[Tuple[int, ...]]:
    """Pesi (numeratori su lcm degli ordini) di ogni elemento del gruppo, identità compresa."""
    comune = lcm(*action.cyclic_factors)
    elementi = []
    for esponenti in product(*(range(f) for f in action.cyclic_factors)):
        pesi = tuple(
            sum(e * g[i] * (comune // f) for e, g, f in zip(esponenti, action.generators, action.cyclic_factors)) % comune
            for i in range(action.dim)
        )
        elementi.append(pesi)
    return elementi


def cyclic_quotient_classify(
    action: QuotientActionDesc, limits: ComputationLimits = DEFAULT_LIMITS
) -> SingularityFlags:
    """Criterio di Reid-Tai su C^dim / G per un gruppo diagonale senza pseudo-riflessioni."""
    if action.order > limits.max_quotient_order:
        raise GuardExceededError(
            f"Ordine {action.order} oltre il limite max_quotient_order={limits.max_quotient_order}."
        )
    comune = lcm(*action.cyclic_factors)
    effettivi = {w for w in _group_elements(action) if any(w)}
    for w in effettivi:
        if sum(1 for a in w if a) == 1:
            logger.warning("L'elemento con pesi %s è una pseudo-riflessione: Reid-Tai non si applica.", w)
    eta = [Rational(sum(w), comune) for w in effettivi]
    gorenstein = all(sum(g) % f == 0 for g, f in zip(action.generators, action.cyclic_factors))
    efficace = len(effettivi) + 1
    if efficace < action.order:
        logger.warning(
            "Azione non fedele: %d elementi su %d agiscono in modo non banale.", efficace - 1, action.order - 1
        )
    return SingularityFlags(
        is_smooth=efficace == 1,
        is_simplicial=True,
        is_gorenstein=gorenstein,
        is_canonical=all(e >= 1 for e in eta),
        is_terminal=all(e > 1 for e in eta),
        index=action.order,
        gorenstein_functional=(1,) * action.dim if gorenstein else None,
        effective_order=efficace,
    )


def reid_tai_ages(action: QuotientActionDesc) -> Tuple[Rational, ...]:
    comune = lcm(*action.cyclic_factors)
    return tuple(sorted(Rational(sum(w), comune) for w in set(_group_elements(action)) if any(w)))


def quotient_action_from_rays(rays: Sequence[Sequence[int]]) -> QuotientActionDesc:
    """Gruppo N / sum(Z k_i) di una carta simpliciale, con i raggi nell'ordine dato."""
    ordinati = [as_vector(r) for r in rays]
    cone = ConeDesc.from_rays(ordinati)
    if rank_of(ordinati) != len(ordinati) or len(set(ordinati)) != len(ordinati):
        raise NotSimplicialError(f"Raggi linearmente dipendenti: {ordinati}.")
    for r in ordinati:
        if not is_primitive(r):
            raise InputError(f"Il raggio {r} non è primitivo.")
    snf = smith_normal_form(_span_ray_matrix(ordinati, cone))
    fattori: List[int] = []
    generatori: List[LatticeVector] = []
    for j, d in enumerate(snf.diagonal):
        if d > 1:
            fattori.append(d)
            generatori.append(tuple(snf.V.entry(i, j) % d for i in range(len(ordinati))))
    return QuotientActionDesc(prod(fattori), tuple(generatori), tuple(fattori), len(ordinati))


def quotient_action_of_chart(cone: ConeDesc) -> QuotientActionDesc:
    _require_simplicial(cone)
    return quotient_action_from_rays(cone.rays)


def star_quotient(shared: ConeDesc, opposite_rays: Sequence[Sequence[int]]) -> StarQuotientDesc:
    """Relazione positiva tra le immagini dei raggi opposti in N / (span(shared) ∩ N)."""
    opposti = [as_vector(v) for v in opposite_rays]
    if not opposti:
        raise NoPositiveRelationError("Nessun raggio opposto: la relazione non esiste.")
    proiezione = LatticeMatrix.from_rows(
        kernel_basis(LatticeMatrix.from_rows(shared.rays, shared.ambient_dim)), shared.ambient_dim
    )
    immagini = tuple(proiezione.apply(v) for v in opposti)
    if proiezione.rows == 0 or rank_of(immagini) != proiezione.rows:
        raise NoPositiveRelationError("Le immagini dei raggi opposti non generano il quoziente.")
    relazioni = kernel_basis(LatticeMatrix.from_columns(immagini, proiezione.rows))
    if len(relazioni) != 1:
        raise NoPositiveRelationError(
            f"Spazio delle relazioni di dimensione {len(relazioni)}: serve un'unica relazione."
        )
    relazione = relazioni[0]
    if all(c < 0 for c in relazione):
        relazione = tuple(-c for c in relazione)
    if not all(c > 0 for c in relazione):
        raise NoPositiveRelationError(f"La relazione {relazione} non ha coefficienti tutti positivi.")
    genera = smith_normal_form(LatticeMatrix.from_columns(immagini, proiezione.rows)).invariant_factors
    return StarQuotientDesc(
        weights=tuple(sorted(relazione)),
        relation=relazione,
        images=immagini,
        primitive_images=all(is_primitive(v) for v in immagini),
        images_generate=all(d == 1 for d in genera),
    )


def star_quotient_weights(shared: ConeDesc, opposite_rays: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    return star_quotient(shared, opposite_rays).weights
