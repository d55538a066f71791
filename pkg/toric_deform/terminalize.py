"""Triangolazioni crepanti dei coni di deformazione.

Verifica di una triangolazione, ricerca per suddivisioni stellari, flip di
circuito di Reid, rapporto di terminalizzazione simultanea ed esempio di flop
a quattro dimensioni con spazio eccezionale P(1, a, b).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy import Rational

from .constants import FLATNESS_PROXY_NOTE, NEF_NOTE, TERMINALIZATION_LABEL
from .errors import (
    InputError,
    NotACircuitError,
    NotGorensteinError,
    SearchExhaustedError,
    ToricError,
)
from .lattice import (
    LatticeMatrix,
    LatticeVector,
    as_integer,
    as_vector,
    canonical_primitive,
    dot,
    kernel_basis,
    rank_of,
    rational_solve,
)
from .limits import DEFAULT_LIMITS, ComputationLimits
from .polyhedra import ConeDesc, PolytopeDesc, intersect_cones, lattice_points, restrict_to_sublattice
from .toric import (
    SingularityFlags,
    StarQuotientDesc,
    box_points,
    classify_cone,
    classify_simplicial_cone,
    gorenstein_functional,
    quotient_action_of_chart,
    star_quotient,
)
from .deformation import (
    DeformationDesc,
    FibrePresentationDesc,
    build_deformation,
    fibre_lattice_basis,
    fibre_presentation,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TriangulationDesc:
    parent: ConeDesc
    cells: Tuple[ConeDesc, ...]
    used_points: Tuple[LatticeVector, ...]

    @classmethod
    def from_cells(cls, parent: ConeDesc, cells: Sequence[Sequence[Sequence[int]]]) -> "TriangulationDesc":
        if not cells:
            raise InputError("Una triangolazione richiede almeno una cella.")
        coni = sorted(
            (c if isinstance(c, ConeDesc) else ConeDesc.from_rays(c, parent.ambient_dim) for c in cells),
            key=lambda c: c.rays,
        )
        punti = sorted({r for c in coni for r in c.rays})
        return cls(parent, tuple(coni), tuple(punti))

    def cell_indices(self) -> Tuple[Tuple[int, ...], ...]:
        posizione = {p: i for i, p in enumerate(self.used_points)}
        return tuple(tuple(posizione[r] for r in c.rays) for c in self.cells)

    def to_dict(self) -> Dict[str, object]:
        return {
            "parent": self.parent.to_dict(),
            "cells": [list(c) for c in self.cell_indices()],
            "used_points": [list(p) for p in self.used_points],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, object], parent: Optional[ConeDesc] = None) -> "TriangulationDesc":
        try:
            punti = [as_vector(p) for p in data["used_points"]]
            celle = [[punti[as_integer(i)] for i in cella] for cella in data["cells"]]
        except (KeyError, IndexError, TypeError) as exc:
            raise InputError("Triangolazione malformata: servono 'cells' e 'used_points' coerenti.") from exc
        if parent is None:
            if "parent" not in data:
                raise InputError("Triangolazione senza il cono 'parent'.")
            parent = ConeDesc.from_dict(data["parent"])
        return cls.from_cells(parent, celle)


# ---------------------------------------------------------------------------
# Volumi e triangolazione pulling
# ---------------------------------------------------------------------------


def height_functional(cone: ConeDesc) -> Tuple[Rational, ...]:
    """Funzionale razionale positivo sul cono, pari a 1 sui raggi estremali quando possibile."""
    raggi = cone.extremal_rays()
    soluzione = rational_solve(LatticeMatrix.from_rows(raggi, cone.ambient_dim), [1] * len(raggi)) if raggi else None
    if soluzione is not None:
        return soluzione
    return tuple(Rational(sum(f[i] for f in cone.facets)) for i in range(cone.ambient_dim))


def normalized_volume(cell: ConeDesc, parent: ConeDesc, height: Sequence[Rational]) -> Rational:
    """Volume normalizzato della sezione {height = 1} della cella, nel reticolo dello span del padre."""
    if not cell.is_simplicial or cell.dim != parent.dim:
        return Rational(0)
    matrice = LatticeMatrix.from_columns([parent.span_coordinates(r) for r in cell.rays], parent.dim)
    volume = Rational(abs(matrice.determinant()))
    for r in cell.rays:
        volume /= sum(Rational(h) * x for h, x in zip(height, r))
    return volume


@lru_cache(maxsize=2048)
def _pull(points: Tuple[LatticeVector, ...], dim: int) -> Tuple[Tuple[LatticeVector, ...], ...]:
    if len(points) == dim:
        return (points,)
    apice = points[0]
    cono = ConeDesc.from_rays(points, len(apice))
    celle: List[Tuple[LatticeVector, ...]] = []
    for f in cono.facets:
        if dot(f, apice) <= 0:
            continue
        faccia = tuple(p for p in points if dot(f, p) == 0)
        for cella in _pull(faccia, dim - 1):
            celle.append((apice,) + cella)
    return tuple(celle)


def pulling_triangulation(cone: ConeDesc, points: Optional[Sequence[LatticeVector]] = None) -> TriangulationDesc:
    """Triangolazione pulling dei punti (di default i raggi) a partire dal minimo lessicografico."""
    punti = tuple(sorted(set(as_vector(p) for p in points))) if points is not None else cone.rays
    return TriangulationDesc.from_cells(cone, _pull(punti, cone.dim))


def parent_volume(parent: ConeDesc, height: Sequence[Rational]) -> Rational:
    return sum((normalized_volume(ConeDesc.from_rays(c, parent.ambient_dim), parent, height)
                for c in _pull(parent.rays, parent.dim)), Rational(0))


# ---------------------------------------------------------------------------
# Verifica
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TriangulationReport:
    covers: bool
    proper: bool
    crepant: bool
    all_cells_empty: bool
    cell_flags: Tuple[Optional[SingularityFlags], ...]
    cell_volumes: Tuple[Rational, ...]
    parent_volume: Rational
    issues: Tuple[str, ...]
    cross_check_agrees: Optional[bool] = None

    @property
    def cell_indices(self) -> Tuple[Optional[int], ...]:
        return tuple(f.index if f is not None else None for f in self.cell_flags)

    def to_dict(self) -> Dict[str, object]:
        return {
            "covers": self.covers,
            "proper": self.proper,
            "crepant": self.crepant,
            "all_cells_empty": self.all_cells_empty,
            "cell_indices": list(self.cell_indices),
            "cell_volumes": [str(v) for v in self.cell_volumes],
            "parent_volume": str(self.parent_volume),
            "cell_flags": [f.to_dict() if f is not None else None for f in self.cell_flags],
            "issues": list(self.issues),
            "cross_check_agrees": self.cross_check_agrees,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "TriangulationReport":
        return cls(
            covers=bool(data["covers"]),
            proper=bool(data["proper"]),
            crepant=bool(data["crepant"]),
            all_cells_empty=bool(data["all_cells_empty"]),
            cell_flags=tuple(_flags_or_none(f) for f in data["cell_flags"]),
            cell_volumes=tuple(Rational(str(v)) for v in data["cell_volumes"]),
            parent_volume=Rational(str(data["parent_volume"])),
            issues=tuple(str(s) for s in data.get("issues", [])),
            cross_check_agrees=data.get("cross_check_agrees"),
        )


def _flags_or_none(data: Optional[Dict[str, object]]) -> Optional[SingularityFlags]:
    return SingularityFlags.from_dict(data) if data is not None else None


def _cone_or_none(data: Optional[Dict[str, object]]) -> Optional[ConeDesc]:
    return ConeDesc.from_dict(data) if data is not None else None


def _simplex_is_empty(cell: ConeDesc, limits: ComputationLimits) -> bool:
    """Controllo indipendente: conv(0, k_1..k_d) contiene solo i propri vertici."""
    origine = tuple(0 for _ in range(cell.ambient_dim))
    vertici = {origine, *cell.rays}
    simplesso = PolytopeDesc.from_points(vertici, cell.ambient_dim)
    return set(lattice_points(simplesso, limits)) == vertici


def verify_triangulation(
    t: TriangulationDesc, cross_check: bool = False, limits: ComputationLimits = DEFAULT_LIMITS
) -> TriangulationReport:
    parent = t.parent
    problemi: List[str] = []

    contenute = True
    for i, cella in enumerate(t.cells):
        esterni = [r for r in cella.rays if not parent.contains(r)]
        if esterni:
            contenute = False
            problemi.append(f"cella {i}: raggi {esterni} fuori dal cono")
        if not cella.is_simplicial or cella.dim != parent.dim:
            problemi.append(f"cella {i}: non è un simplesso di dimensione {parent.dim}")

    proprio = True
    for (i, a), (j, b) in combinations(enumerate(t.cells), 2):
        intersezione = intersect_cones(a, b)
        if intersezione is None:
            continue
        comuni = set(a.rays) & set(b.rays)
        estranei = [r for r in intersezione.rays if r not in comuni]
        if estranei:
            proprio = False
            problemi.append(f"celle {i} e {j}: sovrapposizione oltre la faccia comune (raggi {estranei})")

    altezza = height_functional(parent)
    volumi = tuple(normalized_volume(c, parent, altezza) for c in t.cells)
    totale = parent_volume(parent, altezza)
    if sum(volumi, Rational(0)) != totale:
        problemi.append(f"volumi: somma delle celle {sum(volumi, Rational(0))} invece di {totale}")
    copre = contenute and proprio and sum(volumi, Rational(0)) == totale and all(v > 0 for v in volumi)

    funzionale = gorenstein_functional(parent)
    crepante = funzionale is not None and all(dot(funzionale, p) == 1 for p in t.used_points)
    if not crepante:
        problemi.append("triangolazione non crepante: raggi fuori dall'iperpiano di Gorenstein")

    flags: List[Optional[SingularityFlags]] = []
    for cella in t.cells:
        flags.append(classify_simplicial_cone(cella, limits) if cella.is_simplicial else None)
    vuote = all(f is not None and f.is_terminal for f in flags)

    concorda: Optional[bool] = None
    if cross_check:
        concorda = all(
            f is not None and f.is_terminal == _simplex_is_empty(c, limits) for c, f in zip(t.cells, flags)
        )
        if not concorda:
            problemi.append("il controllo dei punti della scatola non concorda con la scansione del simplesso")

    logger.debug("Verifica triangolazione: copre=%s propria=%s crepante=%s vuote=%s", copre, proprio, crepante, vuote)
    return TriangulationReport(
        covers=copre,
        proper=proprio,
        crepant=crepante,
        all_cells_empty=vuote,
        cell_flags=tuple(flags),
        cell_volumes=volumi,
        parent_volume=totale,
        issues=tuple(problemi),
        cross_check_agrees=concorda,
    )


# ---------------------------------------------------------------------------
# Ricerca per suddivisioni stellari
# ---------------------------------------------------------------------------


def _stellar_subdivision(
    cells: Sequence[Tuple[LatticeVector, ...]], point: LatticeVector
) -> List[Tuple[LatticeVector, ...]]:
    nuove: List[Tuple[LatticeVector, ...]] = []
    for cella in cells:
        cono = ConeDesc.from_rays(cella, len(point))
        if not cono.contains(point):
            nuove.append(cella)
            continue
        coefficienti = rational_solve(LatticeMatrix.from_columns(cella, len(point)), point)
        for k, alpha in zip(cella, coefficienti):
            if alpha > 0:
                nuove.append(tuple(sorted(set(cella) - {k} | {point})))
    return nuove


def search_crepant_triangulation(
    target: Union[DeformationDesc, ConeDesc], limits: ComputationLimits = DEFAULT_LIMITS
) -> TriangulationDesc:
    """Triangolazione crepante in simplessi reticolari vuoti.

    Parte dalla triangolazione pulling e suddivide la prima cella non vuota nel
    suo punto di altezza 1 lessicograficamente minimo, finché tutte le celle
    sono vuote o si esaurisce max_search_steps.
    """
    parent = target.cone if isinstance(target, DeformationDesc) else target
    if gorenstein_functional(parent) is None:
        raise NotGorensteinError("La ricerca di triangolazioni crepanti richiede un cono Gorenstein.")
    celle = list(_pull(parent.rays, parent.dim))
    logger.info("Ricerca crepante: %d celle iniziali dalla triangolazione pulling.", len(celle))
    passi = 0
    while True:
        punto: Optional[LatticeVector] = None
        for cella in sorted(celle):
            candidati = [
                b.point for b in box_points(ConeDesc.from_rays(cella, parent.ambient_dim), limits) if b.height == 1
            ]
            if candidati:
                punto = min(candidati)
                break
        if punto is None:
            break
        passi += 1
        if passi > limits.max_search_steps:
            raise SearchExhaustedError(
                f"Ricerca interrotta dopo {limits.max_search_steps} suddivisioni senza celle tutte vuote."
            )
        logger.debug("Passo %d: suddivisione stellare nel punto %s.", passi, punto)
        celle = _stellar_subdivision(celle, punto)
    logger.info("Ricerca crepante completata: %d celle dopo %d suddivisioni.", len(celle), passi)
    return TriangulationDesc.from_cells(parent, celle)


# ---------------------------------------------------------------------------
# Flip di circuito
# ---------------------------------------------------------------------------


def reid_circuit_flip(
    rays: Sequence[Sequence[int]], relation: Sequence[int], limits: ComputationLimits = DEFAULT_LIMITS
) -> Tuple[TriangulationDesc, TriangulationDesc]:
    """Le due triangolazioni di un circuito: si toglie un raggio di P+ (sinistra) o di P- (destra).

    I raggi con coefficiente nullo appartengono a tutte le celle.
    """
    vettori = [as_vector(r) for r in rays]
    coefficienti = as_vector(relation)
    if not vettori or len(vettori) != len(coefficienti):
        raise NotACircuitError("Servono tanti coefficienti quanti raggi.")
    dim = len(vettori[0])
    combinazione = tuple(sum(c * v[i] for c, v in zip(coefficienti, vettori)) for i in range(dim))
    if any(combinazione):
        raise NotACircuitError(f"La relazione non si annulla: somma {combinazione}.")
    positivi = [i for i, c in enumerate(coefficienti) if c > 0]
    negativi = [i for i, c in enumerate(coefficienti) if c < 0]
    if not positivi or not negativi:
        raise NotACircuitError("La relazione deve avere coefficienti di entrambi i segni.")
    supporto = positivi + negativi
    if rank_of([vettori[i] for i in supporto]) != len(supporto) - 1:
        raise NotACircuitError("Il supporto della relazione non è minimale.")
    if rank_of(vettori) != len(vettori) - 1:
        raise NotACircuitError("I raggi ammettono più di una relazione lineare.")

    parent = ConeDesc.from_rays(vettori, dim)
    lati = []
    for parte in (positivi, negativi):
        celle = [[v for j, v in enumerate(vettori) if j != i] for i in parte]
        triangolazione = TriangulationDesc.from_cells(parent, celle)
        esito = verify_triangulation(triangolazione, limits=limits)
        if not (esito.covers and esito.proper):
            raise NotACircuitError(f"Il lato del flip non triangola il cono: {'; '.join(esito.issues)}")
        lati.append(triangolazione)
    logger.info("Flip di circuito: %d celle a sinistra, %d a destra.", len(lati[0].cells), len(lati[1].cells))
    return lati[0], lati[1]


def circuit_relation(rays: Sequence[Sequence[int]]) -> LatticeVector:
    """L'unica relazione primitiva tra i raggi, quando lo spazio delle relazioni ha dimensione 1.

    Il segno è fissato: il primo coefficiente non nullo è positivo.
    """
    vettori = [as_vector(r) for r in rays]
    if not vettori:
        raise NotACircuitError("Un circuito richiede almeno un raggio.")
    relazioni = kernel_basis(LatticeMatrix.from_columns(vettori, len(vettori[0])))
    if len(relazioni) != 1:
        raise NotACircuitError(f"Spazio delle relazioni di dimensione {len(relazioni)} invece di 1.")
    return canonical_primitive(relazioni[0])


# ---------------------------------------------------------------------------
# Rapporto di terminalizzazione
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CellReport:
    cell: ConeDesc
    flags: Optional[SingularityFlags]
    presentation: Optional[FibrePresentationDesc]
    presentation_error: Optional[str]
    central_cone: Optional[ConeDesc]
    central_flags: Optional[SingularityFlags]
    central_error: Optional[str]

    def to_dict(self) -> Dict[str, object]:
        return {
            "rays": [list(r) for r in self.cell.rays],
            "flags": self.flags.to_dict() if self.flags is not None else None,
            "presentation": self.presentation.to_dict() if self.presentation is not None else None,
            "block_sizes": list(self.presentation.block_sizes) if self.presentation is not None else None,
            "presentation_error": self.presentation_error,
            "central_cone": self.central_cone.to_dict() if self.central_cone is not None else None,
            "central_flags": self.central_flags.to_dict() if self.central_flags is not None else None,
            "central_error": self.central_error,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "CellReport":
        presentazione = data.get("presentation")
        return cls(
            cell=ConeDesc.from_rays(data["rays"]),
            flags=_flags_or_none(data.get("flags")),
            presentation=FibrePresentationDesc.from_dict(presentazione) if presentazione is not None else None,
            presentation_error=data.get("presentation_error"),
            central_cone=_cone_or_none(data.get("central_cone")),
            central_flags=_flags_or_none(data.get("central_flags")),
            central_error=data.get("central_error"),
        )


@dataclass(frozen=True)
class TerminalizationReport:
    n: int
    m: int
    verification: TriangulationReport
    cells: Tuple[CellReport, ...]
    flatness_proxy: bool
    all_unimodular: bool
    simultaneous_resolution: bool
    terminal_central_fibres: Optional[bool]
    central_fibres_terminal_computed: bool
    label: Optional[str]
    notes: Tuple[str, ...]

    @property
    def crepant(self) -> bool:
        return self.verification.crepant

    @property
    def all_cells_empty(self) -> bool:
        return self.verification.all_cells_empty

    def to_dict(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "m": self.m,
            "crepant": self.crepant,
            "all_cells_empty": self.all_cells_empty,
            "flatness_proxy": self.flatness_proxy,
            "all_unimodular": self.all_unimodular,
            "simultaneous_resolution": self.simultaneous_resolution,
            "terminal_central_fibres": self.terminal_central_fibres,
            "central_fibres_terminal_computed": self.central_fibres_terminal_computed,
            "label": self.label,
            "verification": self.verification.to_dict(),
            "cells": [c.to_dict() for c in self.cells],
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "TerminalizationReport":
        return cls(
            n=as_integer(data["n"]),
            m=as_integer(data["m"]),
            verification=TriangulationReport.from_dict(data["verification"]),
            cells=tuple(CellReport.from_dict(c) for c in data["cells"]),
            flatness_proxy=bool(data["flatness_proxy"]),
            all_unimodular=bool(data["all_unimodular"]),
            simultaneous_resolution=bool(data["simultaneous_resolution"]),
            terminal_central_fibres=data.get("terminal_central_fibres"),
            central_fibres_terminal_computed=bool(data["central_fibres_terminal_computed"]),
            label=data.get("label"),
            notes=tuple(str(s) for s in data.get("notes", [])),
        )


def _cell_report(d: DeformationDesc, cell: ConeDesc, limits: ComputationLimits) -> CellReport:
    flags = classify_simplicial_cone(cell, limits) if cell.is_simplicial else None
    presentazione: Optional[FibrePresentationDesc] = None
    errore: Optional[str] = None
    try:
        presentazione = fibre_presentation(d, cell)
    except ToricError as exc:
        errore = str(exc)
    centrale: Optional[ConeDesc] = None
    flags_centrali: Optional[SingularityFlags] = None
    errore_centrale: Optional[str] = None
    try:
        centrale = restrict_to_sublattice(cell, fibre_lattice_basis(d))
        if centrale is None:
            errore_centrale = "la cella interseca L^⊥ solo nell'origine"
        else:
            flags_centrali = classify_cone(centrale, limits)
    except ToricError as exc:
        errore_centrale = str(exc)
    return CellReport(cell, flags, presentazione, errore, centrale, flags_centrali, errore_centrale)


def terminalization_report(
    d: DeformationDesc, t: TriangulationDesc, limits: ComputationLimits = DEFAULT_LIMITS
) -> TerminalizationReport:
    if t.parent != d.cone:
        raise InputError("La triangolazione non suddivide il cono della deformazione.")
    verifica = verify_triangulation(t, limits=limits)
    celle = tuple(_cell_report(d, c, limits) for c in t.cells)
    piatta = all(c.presentation is not None for c in celle)
    unimodulari = all(c.flags is not None and c.flags.index == 1 for c in celle)
    centrali = all(c.central_flags is not None and c.central_flags.is_terminal for c in celle)
    etichetta = TERMINALIZATION_LABEL if verifica.crepant and verifica.all_cells_empty and verifica.covers else None
    logger.info(
        "Rapporto: crepante=%s, celle vuote=%s, prossimo-piattezza=%s, unimodulare=%s.",
        verifica.crepant, verifica.all_cells_empty, piatta, unimodulari,
    )
    return TerminalizationReport(
        n=d.n,
        m=d.m,
        verification=verifica,
        cells=celle,
        flatness_proxy=piatta,
        all_unimodular=unimodulari,
        simultaneous_resolution=d.n == 2 and unimodulari and piatta,
        # per n >= 3, X liscio implica fibre centrali terminali
        terminal_central_fibres=True if d.n >= 3 and unimodulari and piatta else None,
        central_fibres_terminal_computed=centrali,
        label=etichetta,
        notes=(FLATNESS_PROXY_NOTE, NEF_NOTE),
    )


# ---------------------------------------------------------------------------
# Esempio di flop
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FlopSide:
    triangulation: TriangulationDesc
    shared: ConeDesc
    star: StarQuotientDesc
    indices_by_determinant: Tuple[int, ...]
    indices_by_smith: Tuple[int, ...]
    verification: TriangulationReport

    def to_dict(self) -> Dict[str, object]:
        return {
            "triangulation": self.triangulation.to_dict(),
            "shared_face": [list(r) for r in self.shared.rays],
            **self.star.to_dict(),
            "indices_by_determinant": list(self.indices_by_determinant),
            "indices_by_smith": list(self.indices_by_smith),
            "verification": self.verification.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "FlopSide":
        return cls(
            triangulation=TriangulationDesc.from_dict(data["triangulation"]),
            shared=ConeDesc.from_rays(data["shared_face"]),
            star=StarQuotientDesc.from_dict(data),
            indices_by_determinant=as_vector(data["indices_by_determinant"]),
            indices_by_smith=as_vector(data["indices_by_smith"]),
            verification=TriangulationReport.from_dict(data["verification"]),
        )


@dataclass(frozen=True)
class FlopPairDesc:
    a: int
    b: int
    base: DeformationDesc
    named_rays: Tuple[LatticeVector, ...]
    circuit_relation: LatticeVector
    left: FlopSide
    right: FlopSide

    @property
    def exceptional_weights_left(self) -> Tuple[int, ...]:
        return self.left.star.weights

    @property
    def exceptional_weights_right(self) -> Tuple[int, ...]:
        return self.right.star.weights

    @property
    def weights_match(self) -> bool:
        """Entrambi i lati hanno pesi eccezionali {1, a, b}."""
        attesi = tuple(sorted((1, self.a, self.b)))
        return self.exceptional_weights_left == attesi and self.exceptional_weights_right == attesi

    def to_dict(self) -> Dict[str, object]:
        return {
            "a": self.a,
            "b": self.b,
            "rays": [list(r) for r in self.named_rays],
            "circuit_relation": list(self.circuit_relation),
            "exceptional_weights": list(self.exceptional_weights_left),
            "weights_match": self.weights_match,
            "base": self.base.to_dict(),
            "left": self.left.to_dict(),
            "right": self.right.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "FlopPairDesc":
        return cls(
            a=as_integer(data["a"]),
            b=as_integer(data["b"]),
            base=DeformationDesc.from_dict(data["base"]),
            named_rays=tuple(as_vector(r) for r in data["rays"]),
            circuit_relation=as_vector(data["circuit_relation"]),
            left=FlopSide.from_dict(data["left"]),
            right=FlopSide.from_dict(data["right"]),
        )


def flop_rays(a: int, b: int) -> Tuple[LatticeVector, ...]:
    """I generatori e_1..e_6 del cono della deformazione con addendi R_0, R_1, R_2."""
    return (
        (1, 0, 1, 0, 0),
        (0, 0, 1, 0, 0),
        (0, 1, 0, 1, 0),
        (0, 0, 0, 1, 0),
        (-a, -b, 0, 0, 1),
        (0, 0, 0, 0, 1),
    )


def _flop_side(
    triangulation: TriangulationDesc, shared: Sequence[LatticeVector], opposite: Sequence[LatticeVector],
    limits: ComputationLimits,
) -> FlopSide:
    faccia = ConeDesc.from_rays(shared)
    return FlopSide(
        triangulation=triangulation,
        shared=faccia,
        star=star_quotient(faccia, opposite),
        indices_by_determinant=tuple(
            abs(LatticeMatrix.from_rows(c.rays).determinant()) for c in triangulation.cells
        ),
        indices_by_smith=tuple(quotient_action_of_chart(c).order for c in triangulation.cells),
        verification=verify_triangulation(triangulation, cross_check=True, limits=limits),
    )


def build_flop_example(a: int, b: int, limits: ComputationLimits = DEFAULT_LIMITS) -> FlopPairDesc:
    if a < 1 or b < 1:
        raise InputError(f"Parametri del flop non validi: a={a}, b={b} (servono interi positivi).")
    summands = [
        PolytopeDesc.from_points([(1, 0), (0, 0)]),
        PolytopeDesc.from_points([(0, 1), (0, 0)]),
        PolytopeDesc.from_points([(-a, -b), (0, 0)]),
    ]
    base = build_deformation(summands, 3)
    e = flop_rays(a, b)
    if set(base.cone.rays) != set(e):
        raise InputError(f"Raggi del cono {base.cone.rays} diversi da quelli attesi {e}.")
    relazione = (a, -a, b, -b, 1, -1)
    sinistra, destra = reid_circuit_flip(e, relazione, limits)
    positivi = [e[0], e[2], e[4]]
    negativi = [e[1], e[3], e[5]]
    lato_sx = _flop_side(sinistra, negativi, positivi, limits)
    lato_dx = _flop_side(destra, positivi, negativi, limits)
    coppia = FlopPairDesc(a, b, base, e, relazione, lato_sx, lato_dx)
    if not coppia.weights_match:
        logger.warning(
            "Pesi eccezionali %s / %s diversi da {1, %d, %d}.",
            coppia.exceptional_weights_left, coppia.exceptional_weights_right, a, b,
        )
    for nome, lato in (("sinistra", lato_sx), ("destra", lato_dx)):
        if not lato.star.primitive_images:
            logger.warning("Immagini non primitive nel quoziente della stella (%s): mcd(a, b) > 1.", nome)
    logger.info("Flop (a, b) = (%d, %d): pesi eccezionali %s.", a, b, lato_sx.star.weights)
    return coppia
