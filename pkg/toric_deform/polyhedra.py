"""Coni poliedrali razionali e politopi reticolari.

I coni sono descritti dai generatori dei raggi; le faccette si ottengono con il
metodo della doppia descrizione in aritmetica esatta, lavorando nelle coordinate
del reticolo saturo generato dal cono. I politopi sono descritti dai vertici e
trattati tramite il cono omogeneizzato sopra (p, 1).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property, cmp_to_key
from itertools import product
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from sympy import Matrix

from .errors import DimensionMismatchError, EmptyConeError, GuardExceededError, InputError, NotAPolygonError
from .lattice import (
    LatticeMatrix,
    LatticeVector,
    add,
    as_integer,
    as_vector,
    as_vectors,
    coordinates_in_basis,
    dot,
    integral_direction,
    kernel_basis,
    primitive,
    rank_of,
    saturated_span_basis,
    scale,
    sub,
    unit_vector,
    vector_gcd,
)
from .limits import DEFAULT_LIMITS, ComputationLimits

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Doppia descrizione
# ---------------------------------------------------------------------------


def _initial_rows(constraints: Sequence[LatticeVector], dim: int) -> List[int]:
    scelte: List[int] = []
    for index, row in enumerate(constraints):
        if rank_of([constraints[i] for i in scelte] + [row]) > len(scelte):
            scelte.append(index)
            if len(scelte) == dim:
                break
    return scelte


def _double_description(constraints: Sequence[LatticeVector], dim: int) -> List[LatticeVector]:
    """Raggi estremi primitivi del cono {x in R^dim : <a, x> >= 0 per ogni riga a}.

    Il cono deve essere puntato, cioè le righe devono avere rango dim.
    """
    rows = [as_vector(a) for a in constraints]
    iniziali = _initial_rows(rows, dim)
    if len(iniziali) < dim:
        raise InputError(f"Sistema di disuguaglianze di rango {len(iniziali)} < {dim}: cono non puntato.")

    inversa = LatticeMatrix.from_rows([rows[i] for i in iniziali], dim).to_sympy().inv()
    processed = list(iniziali)

    def zero_set(v: LatticeVector) -> FrozenSet[int]:
        return frozenset(i for i in processed if dot(rows[i], v) == 0)

    rays = [integral_direction(list(inversa.col(j))) for j in range(dim)]
    zeros: Dict[LatticeVector, FrozenSet[int]] = {r: zero_set(r) for r in rays}

    for index, row in enumerate(rows):
        if index in iniziali:
            continue
        valori = {r: dot(row, r) for r in rays}
        positivi = [r for r in rays if valori[r] > 0]
        negativi = [r for r in rays if valori[r] < 0]
        nulli = [r for r in rays if valori[r] == 0]
        nuovi: List[LatticeVector] = []
        for p in positivi:
            for q in negativi:
                comune = zeros[p] & zeros[q]
                if len(comune) < dim - 2:
                    continue
                if any(comune <= zeros[r] for r in rays if r != p and r != q):
                    continue
                nuovi.append(primitive(add(scale(valori[p], q), scale(-valori[q], p))))
        processed.append(index)
        rays = sorted(set(positivi + nulli + nuovi))
        zeros = {r: zero_set(r) for r in rays}
    return sorted(rays)


# ---------------------------------------------------------------------------
# Coni
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConeDesc:
    ambient_dim: int
    rays: Tuple[LatticeVector, ...]

    @classmethod
    def from_rays(cls, rays: Iterable[Sequence[object]], ambient_dim: Optional[int] = None) -> "ConeDesc":
        """Forma canonica: raggi primitivi, senza ripetizioni, in ordine lessicografico."""
        vettori = as_vectors(rays)
        if not vettori:
            raise EmptyConeError("Un cono richiede almeno un raggio.")
        if ambient_dim is None:
            ambient_dim = len(vettori[0])
        for v in vettori:
            if len(v) != ambient_dim:
                raise DimensionMismatchError(f"Raggio {v} in un cono di dimensione ambiente {ambient_dim}.")
            if vector_gcd(v) == 0:
                raise InputError("Il vettore nullo non è un generatore di raggio ammesso.")
        return cls(ambient_dim, tuple(sorted({primitive(v) for v in vettori})))

    @cached_property
    def dim(self) -> int:
        return rank_of(self.rays)

    @cached_property
    def span_basis(self) -> Tuple[LatticeVector, ...]:
        return saturated_span_basis(self.rays, self.ambient_dim)

    @cached_property
    def equations(self) -> Tuple[LatticeVector, ...]:
        """Funzionali che si annullano sullo span del cono."""
        return kernel_basis(LatticeMatrix.from_rows(self.rays, self.ambient_dim))

    def span_coordinates(self, v: Sequence[int]) -> LatticeVector:
        return coordinates_in_basis(self.span_basis, v)

    @cached_property
    def facets(self) -> Tuple[LatticeVector, ...]:
        """Normali interne primitive, definite a meno delle equazioni dello span."""
        k = self.dim
        locali = _double_description([self.span_coordinates(r) for r in self.rays], k)
        # g = B^T (B B^T)^-1 f: la normale ortogonale alle equazioni dello span
        B = LatticeMatrix.from_rows(self.span_basis, self.ambient_dim).to_sympy()
        solleva = B.T * (B * B.T).inv()
        normali = {integral_direction(list(solleva * Matrix(f))) for f in locali}
        return tuple(sorted(normali))

    def contains(self, v: Sequence[int]) -> bool:
        v = as_vector(v)
        if len(v) != self.ambient_dim:
            raise DimensionMismatchError(f"Vettore {v} per un cono di dimensione ambiente {self.ambient_dim}.")
        return all(dot(e, v) == 0 for e in self.equations) and all(dot(f, v) >= 0 for f in self.facets)

    def in_relative_interior(self, v: Sequence[int]) -> bool:
        v = as_vector(v)
        return all(dot(e, v) == 0 for e in self.equations) and all(dot(f, v) > 0 for f in self.facets)

    @property
    def is_simplicial(self) -> bool:
        return len(self.rays) == self.dim

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    @cached_property
    def is_pointed(self) -> bool:
        return rank_of(self.facets) == self.dim

    def extremal_rays(self) -> Tuple[LatticeVector, ...]:
        if not self.is_pointed:
            return ()
        return tuple(
            r for r in self.rays
            if rank_of([f for f in self.facets if dot(f, r) == 0]) == self.dim - 1
        )

    def to_dict(self) -> Dict[str, object]:
        return {"dim": self.ambient_dim, "rays": [list(r) for r in self.rays]}

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "ConeDesc":
        try:
            rays = data["rays"]
        except (KeyError, TypeError) as exc:
            raise InputError("Descrizione del cono senza il campo 'rays'.") from exc
        dim = data.get("dim") if isinstance(data, dict) else None
        return cls.from_rays(rays, as_integer(dim) if dim is not None else None)


def facets_of_cone(cone: ConeDesc) -> Tuple[LatticeVector, ...]:
    return cone.facets


def cone_from_inequalities(
    inequalities: Sequence[Sequence[int]],
    dim: int,
    equations: Sequence[Sequence[int]] = (),
) -> ConeDesc:
    """Cono {x : <f, x> >= 0, <e, x> = 0} descritto dai suoi raggi estremi."""
    rows = [as_vector(f) for f in inequalities]
    for e in equations:
        e = as_vector(e)
        rows.extend([e, scale(-1, e)])
    rays = _double_description(rows, dim)
    if not rays:
        raise EmptyConeError("Il sistema di disuguaglianze descrive solo l'origine.")
    return ConeDesc.from_rays(rays, dim)


def _constraint_rows(cone: ConeDesc) -> List[LatticeVector]:
    rows = list(cone.facets)
    for e in cone.equations:
        rows.extend([e, scale(-1, e)])
    return rows


def intersect_cones(a: ConeDesc, b: ConeDesc) -> Optional[ConeDesc]:
    """Intersezione di due coni puntati; None se si riduce all'origine."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError(f"Intersezione tra dimensioni {a.ambient_dim} e {b.ambient_dim}.")
    rays = _double_description(_constraint_rows(a) + _constraint_rows(b), a.ambient_dim)
    return ConeDesc.from_rays(rays, a.ambient_dim) if rays else None


def restrict_to_sublattice(cone: ConeDesc, basis: Sequence[Sequence[int]]) -> Optional[ConeDesc]:
    """Il cono intersecato con lo span della base, nelle coordinate della base.

    Restituisce None quando l'intersezione si riduce all'origine.
    """
    base = [as_vector(b) for b in basis]
    for b in base:
        if len(b) != cone.ambient_dim:
            raise DimensionMismatchError(f"Vettore di base {b} in dimensione ambiente {cone.ambient_dim}.")
    k = len(base)
    if k == 0:
        return None
    B = LatticeMatrix.from_rows(base, cone.ambient_dim)
    rows = [B.apply(f) for f in cone.facets]
    for e in cone.equations:
        immagine = B.apply(e)
        rows.extend([immagine, scale(-1, immagine)])
    if not rows:
        raise InputError("Cono senza disuguaglianze: non puntato.")
    rays = _double_description(rows, k)
    if not rays:
        return None
    return ConeDesc.from_rays(rays, k)


# ---------------------------------------------------------------------------
# Politopi
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolytopeDesc:
    ambient_dim: int
    vertices: Tuple[LatticeVector, ...]

    @classmethod
    def from_points(cls, points: Iterable[Sequence[object]], ambient_dim: Optional[int] = None) -> "PolytopeDesc":
        """Inviluppo convesso: conserva solo i vertici, in ordine lessicografico."""
        punti = sorted(set(as_vectors(points)))
        if not punti:
            raise InputError("Un politopo richiede almeno un punto.")
        if ambient_dim is None:
            ambient_dim = len(punti[0])
        for p in punti:
            if len(p) != ambient_dim:
                raise DimensionMismatchError(f"Punto {p} in un politopo di dimensione ambiente {ambient_dim}.")
        if len(punti) <= 2:
            return cls(ambient_dim, tuple(punti))
        cono = ConeDesc.from_rays([p + (1,) for p in punti], ambient_dim + 1)
        return cls(ambient_dim, tuple(sorted(r[:-1] for r in cono.extremal_rays())))

    @cached_property
    def cone_over(self) -> ConeDesc:
        return ConeDesc.from_rays([v + (1,) for v in self.vertices], self.ambient_dim + 1)

    @property
    def dim(self) -> int:
        return self.cone_over.dim - 1

    def contains(self, point: Sequence[int]) -> bool:
        return self.cone_over.contains(as_vector(point) + (1,))

    def translate(self, shift: Sequence[int]) -> "PolytopeDesc":
        return PolytopeDesc(self.ambient_dim, tuple(sorted(add(v, shift) for v in self.vertices)))

    def normalized(self) -> "PolytopeDesc":
        """Traslato in modo che il vertice lessicograficamente minimo sia l'origine."""
        return self.translate(scale(-1, self.vertices[0]))

    def to_dict(self) -> Dict[str, object]:
        return {"dim": self.ambient_dim, "vertices": [list(v) for v in self.vertices]}

    @classmethod
    def from_dict(cls, data: Dict[str, object], ambient_dim: Optional[int] = None) -> "PolytopeDesc":
        try:
            vertices = data["vertices"]
        except (KeyError, TypeError) as exc:
            raise InputError("Descrizione del politopo senza il campo 'vertices'.") from exc
        dim = data.get("dim", ambient_dim)
        return cls.from_points(vertices, as_integer(dim) if dim is not None else None)


def _bounding_box(vertices: Sequence[LatticeVector]) -> List[range]:
    return [
        range(min(v[i] for v in vertices), max(v[i] for v in vertices) + 1)
        for i in range(len(vertices[0]))
    ]


def lattice_points(polytope: PolytopeDesc, limits: ComputationLimits = DEFAULT_LIMITS) -> Tuple[LatticeVector, ...]:
    """Punti interi del politopo, in ordine lessicografico (scansione del parallelepipedo)."""
    box = _bounding_box(polytope.vertices)
    totale = 1
    for r in box:
        totale *= len(r)
    if totale > limits.max_box_points:
        raise GuardExceededError(
            f"Scansione di {totale} punti oltre il limite max_box_points={limits.max_box_points}."
        )
    return tuple(p for p in product(*box) if polytope.contains(p))


def minkowski_sum(a: PolytopeDesc, b: PolytopeDesc) -> PolytopeDesc:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError(
            f"Somma di Minkowski tra dimensioni diverse: {a.ambient_dim} e {b.ambient_dim}."
        )
    return PolytopeDesc.from_points((add(u, v) for u in a.vertices for v in b.vertices), a.ambient_dim)


def minkowski_sum_all(polytopes: Sequence[PolytopeDesc]) -> PolytopeDesc:
    if not polytopes:
        raise InputError("Somma di Minkowski di una lista vuota.")
    totale = polytopes[0]
    for p in polytopes[1:]:
        totale = minkowski_sum(totale, p)
    return totale


# ---------------------------------------------------------------------------
# Decomposizione di Minkowski dei poligoni
# ---------------------------------------------------------------------------


def _half_plane(v: Sequence[int]) -> int:
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def _angle_compare(u: Sequence[int], v: Sequence[int]) -> int:
    hu, hv = _half_plane(u), _half_plane(v)
    if hu != hv:
        return hu - hv
    cross = u[0] * v[1] - u[1] * v[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


_angle_key = cmp_to_key(_angle_compare)


def _edge_directions(vertices: Sequence[LatticeVector]) -> Dict[LatticeVector, int]:
    """Multinsieme dei vettori di lato primitivi del poligono, con molteplicità."""
    n = len(vertices)
    somma = tuple(sum(v[i] for v in vertices) for i in range(2))
    ordinati = sorted(vertices, key=lambda v: _angle_key(sub(scale(n, v), somma)))
    direzioni: Dict[LatticeVector, int] = {}
    for i, v in enumerate(ordinati):
        lato = sub(ordinati[(i + 1) % n], v)
        g = vector_gcd(lato)
        unit = primitive(lato)
        direzioni[unit] = direzioni.get(unit, 0) + g
    return direzioni


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _summand_from_edges(edges: Dict[LatticeVector, int]) -> PolytopeDesc:
    punto: LatticeVector = (0, 0)
    punti = [punto]
    for direzione in sorted(edges, key=_angle_key):
        punto = add(punto, scale(edges[direzione], direzione))
        punti.append(punto)
    return PolytopeDesc.from_points(punti, 2).normalized()


def minkowski_decompose(polygon: PolytopeDesc, parts: int) -> List[Tuple[PolytopeDesc, ...]]:
    """Tutte le decomposizioni di Minkowski in `parts` addendi reticolari.

    Ogni addendo è normalizzato con il vertice minimo nell'origine; le
    decomposizioni sono non ordinate e restituite in ordine canonico.
    """
    if parts < 2:
        raise InputError(f"Numero di addendi non valido: {parts} (minimo 2).")
    if polygon.ambient_dim == 1:
        sollevato = PolytopeDesc(2, tuple((v[0], 0) for v in polygon.vertices))
        return [_project_line(dec) for dec in minkowski_decompose(sollevato, parts)]
    if polygon.ambient_dim != 2 or len(polygon.vertices) < 2:
        raise NotAPolygonError(
            f"La decomposizione richiede un poligono o un segmento nel piano "
            f"(dimensione ambiente {polygon.ambient_dim}, {len(polygon.vertices)} vertici)."
        )

    direzioni = _edge_directions(polygon.vertices)
    chiavi = sorted(direzioni)
    logger.debug("Direzioni di lato: %s", {k: direzioni[k] for k in chiavi})
    risultati: Dict[Tuple, Tuple[PolytopeDesc, ...]] = {}
    for scelta in product(*(list(_compositions(direzioni[k], parts)) for k in chiavi)):
        addendi: List[Dict[LatticeVector, int]] = [{} for _ in range(parts)]
        for k, distribuzione in zip(chiavi, scelta):
            for j, quota in enumerate(distribuzione):
                if quota:
                    addendi[j][k] = quota
        if any(
            tuple(sum(q * d[i] for d, q in e.items()) for i in range(2)) != (0, 0) for e in addendi
        ):
            continue
        decomposizione = tuple(sorted((_summand_from_edges(e) for e in addendi), key=lambda p: p.vertices))
        risultati.setdefault(tuple(p.vertices for p in decomposizione), decomposizione)
    logger.info("Trovate %d decomposizioni di Minkowski in %d addendi.", len(risultati), parts)
    return [risultati[k] for k in sorted(risultati)]


def _project_line(decomposition: Tuple[PolytopeDesc, ...]) -> Tuple[PolytopeDesc, ...]:
    return tuple(
        sorted(
            (PolytopeDesc(1, tuple(sorted((v[0],) for v in s.vertices))) for s in decomposition),
            key=lambda p: p.vertices,
        )
    )


# ---------------------------------------------------------------------------
# Costruzione di Cayley
# ---------------------------------------------------------------------------


def cayley_cone(summands: Sequence[PolytopeDesc], n: int) -> ConeDesc:
    """Cono su Conv(R_i x e_i): il vertice v di R_i diventa (v, e_i) in R^(n+m)."""
    if not summands:
        raise InputError("La costruzione di Cayley richiede almeno un addendo.")
    if n < 1:
        raise InputError(f"Dimensione della fibra non valida: n={n}.")
    for i, summand in enumerate(summands):
        if summand.ambient_dim != n - 1:
            raise DimensionMismatchError(
                f"L'addendo R_{i} ha dimensione ambiente {summand.ambient_dim}, attesa {n - 1}."
            )
    m = len(summands) - 1
    rays = [
        v + unit_vector(i, m + 1)
        for i, summand in enumerate(summands)
        for v in summand.vertices
    ]
    return ConeDesc.from_rays(rays, n + m)
