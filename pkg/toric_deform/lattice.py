"""Algebra lineare intera esatta: vettori e matrici di reticolo, forma normale di Smith e di Hermite."""

from __future__ import annotations

import logging
import operator
from collections.abc import Iterable
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import List, Optional, Sequence, Tuple

from sympy import Matrix, Rational, ilcm

from .errors import DimensionMismatchError, InputError

logger = logging.getLogger(__name__)

LatticeVector = Tuple[int, ...]


def as_integer(value: object) -> int:
    """Intero esatto da un numero o da una stringa decimale (formato JSON dei grandi interi)."""
    if isinstance(value, bool):
        raise InputError(f"Valore booleano non ammesso come intero: {value!r}.")
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError as exc:
            raise InputError(f"Stringa non interpretabile come intero: {value!r}.") from exc
    if isinstance(value, float):
        if not value.is_integer():
            raise InputError(f"Numero non intero: {value!r}.")
        return int(value)
    if hasattr(value, "__index__"):
        return operator.index(value)
    raise InputError(f"Valore non intero: {value!r}.")


def as_vector(values: Sequence[object]) -> LatticeVector:
    if isinstance(values, (str, bytes, dict)) or not isinstance(values, Iterable):
        raise InputError(f"Atteso un vettore di interi, ottenuto {values!r}.")
    return tuple(as_integer(value) for value in values)


def as_vectors(values: Iterable[Sequence[object]]) -> List[LatticeVector]:
    if isinstance(values, (str, bytes, dict)) or not isinstance(values, Iterable):
        raise InputError(f"Attesa una lista di vettori, ottenuto {values!r}.")
    return [as_vector(v) for v in values]


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v):
        raise DimensionMismatchError(f"Prodotto scalare tra dimensioni diverse: {len(u)} e {len(v)}.")
    return sum(a * b for a, b in zip(u, v))


def add(u: Sequence[int], v: Sequence[int]) -> LatticeVector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[int], v: Sequence[int]) -> LatticeVector:
    return tuple(a - b for a, b in zip(u, v))


def scale(k: int, v: Sequence[int]) -> LatticeVector:
    return tuple(k * a for a in v)


def unit_vector(index: int, dim: int) -> LatticeVector:
    return tuple(1 if i == index else 0 for i in range(dim))


def vector_gcd(v: Sequence[int]) -> int:
    return reduce(gcd, (abs(int(x)) for x in v), 0)


def is_primitive(v: Sequence[int]) -> bool:
    return vector_gcd(v) == 1


def primitive(v: Sequence[int]) -> LatticeVector:
    """Divide per il mcd delle coordinate mantenendo l'orientamento."""
    g = vector_gcd(v)
    if g == 0:
        raise InputError("Il vettore nullo non ha un rappresentante primitivo.")
    return tuple(int(x) // g for x in v)


def canonical_primitive(v: Sequence[int]) -> LatticeVector:
    """Rappresentante primitivo con prima coordinata non nulla positiva."""
    p = primitive(v)
    for x in p:
        if x != 0:
            return p if x > 0 else tuple(-y for y in p)
    return p


def integral_direction(values: Sequence[Rational]) -> LatticeVector:
    """Vettore intero primitivo positivamente proporzionale a un vettore razionale."""
    rationals = [Rational(x) for x in values]
    denominator = reduce(ilcm, (r.q for r in rationals), 1)
    return primitive([int(r * denominator) for r in rationals])


@dataclass(frozen=True)
class LatticeMatrix:
    entries: Tuple[int, ...]
    rows: int
    cols: int

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                f"Matrice {self.rows}x{self.cols} con {len(self.entries)} elementi."
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "LatticeMatrix":
        righe = [as_vector(r) for r in rows]
        if cols is None:
            if not righe:
                raise DimensionMismatchError("Impossibile dedurre il numero di colonne da zero righe.")
            cols = len(righe[0])
        for riga in righe:
            if len(riga) != cols:
                raise DimensionMismatchError(f"Riga di lunghezza {len(riga)} in una matrice con {cols} colonne.")
        return cls(tuple(x for riga in righe for x in riga), len(righe), cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: Optional[int] = None) -> "LatticeMatrix":
        return cls.from_rows(columns, rows).transpose()

    @classmethod
    def identity(cls, size: int) -> "LatticeMatrix":
        return cls.from_rows([unit_vector(i, size) for i in range(size)], size)

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> LatticeVector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> LatticeVector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def as_rows(self) -> Tuple[LatticeVector, ...]:
        return tuple(self.row(i) for i in range(self.rows))

    def transpose(self) -> "LatticeMatrix":
        return LatticeMatrix.from_rows([self.col(j) for j in range(self.cols)], self.rows)

    def apply(self, v: Sequence[int]) -> LatticeVector:
        if len(v) != self.cols:
            raise DimensionMismatchError(f"Vettore di lunghezza {len(v)} per una matrice con {self.cols} colonne.")
        return tuple(dot(self.row(i), v) for i in range(self.rows))

    def __matmul__(self, other: "LatticeMatrix") -> "LatticeMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(f"Prodotto {self.rows}x{self.cols} per {other.rows}x{other.cols}.")
        colonne = [other.col(j) for j in range(other.cols)]
        return LatticeMatrix.from_rows(
            [[dot(self.row(i), c) for c in colonne] for i in range(self.rows)], other.cols
        )

    def to_sympy(self) -> Matrix:
        return Matrix(self.rows, self.cols, list(self.entries))

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        return int(self.to_sympy().rank())

    def determinant(self) -> int:
        if self.rows != self.cols:
            raise DimensionMismatchError("Il determinante richiede una matrice quadrata.")
        if self.rows == 0:
            return 1
        return int(self.to_sympy().det(method="bareiss"))

    def is_diagonal(self) -> bool:
        return all(
            self.entry(i, j) == 0 for i in range(self.rows) for j in range(self.cols) if i != j
        )


def rank_of(vectors: Sequence[Sequence[int]]) -> int:
    if not vectors:
        return 0
    return LatticeMatrix.from_rows(vectors).rank()


@dataclass(frozen=True)
class SmithDecomposition:
    U: LatticeMatrix
    D: LatticeMatrix
    V: LatticeMatrix

    @property
    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.D.entry(i, i) for i in range(min(self.D.rows, self.D.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def invariant_factors(self) -> Tuple[int, ...]:
        return tuple(d for d in self.diagonal if d != 0)


def _find_pivot(D: List[List[int]], t: int) -> Optional[Tuple[int, int]]:
    best: Optional[Tuple[int, int]] = None
    best_abs = 0
    for i in range(t, len(D)):
        for j in range(t, len(D[i])):
            value = abs(D[i][j])
            if value and (best is None or value < best_abs):
                best, best_abs = (i, j), value
    return best


def _swap_rows(M: List[List[int]], i: int, j: int) -> None:
    M[i], M[j] = M[j], M[i]


def _swap_cols(M: List[List[int]], i: int, j: int) -> None:
    for riga in M:
        riga[i], riga[j] = riga[j], riga[i]


def _add_row(M: List[List[int]], target: int, source: int, factor: int) -> None:
    M[target] = [a + factor * b for a, b in zip(M[target], M[source])]


def _add_col(M: List[List[int]], target: int, source: int, factor: int) -> None:
    for riga in M:
        riga[target] += factor * riga[source]


def smith_normal_form(matrix: LatticeMatrix) -> SmithDecomposition:
    """Calcola U, D, V con U·A·V = D diagonale e d_1 | d_2 | ...

    Il pivot è sempre l'elemento non nullo di valore assoluto minimo nella
    sottomatrice residua, a parità la coppia (riga, colonna) più bassa.
    """
    if matrix.rows == 0 or matrix.cols == 0:
        raise DimensionMismatchError("La forma normale di Smith richiede una matrice non vuota.")
    r, c = matrix.rows, matrix.cols
    D = [list(matrix.row(i)) for i in range(r)]
    U = [list(unit_vector(i, r)) for i in range(r)]
    V = [list(unit_vector(j, c)) for j in range(c)]

    for t in range(min(r, c)):
        while True:
            pivot = _find_pivot(D, t)
            if pivot is None:
                break
            pi, pj = pivot
            if pi != t:
                _swap_rows(D, pi, t)
                _swap_rows(U, pi, t)
            if pj != t:
                _swap_cols(D, pj, t)
                _swap_cols(V, pj, t)
            p = D[t][t]
            residuo = False
            for i in range(t + 1, r):
                q = D[i][t] // p
                if q:
                    _add_row(D, i, t, -q)
                    _add_row(U, i, t, -q)
                if D[i][t]:
                    residuo = True
            for j in range(t + 1, c):
                q = D[t][j] // p
                if q:
                    _add_col(D, j, t, -q)
                    _add_col(V, j, t, -q)
                if D[t][j]:
                    residuo = True
            if residuo:
                continue
            # catena di divisibilità: porto nella riga t un elemento non multiplo del pivot
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, c) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            _add_row(D, t, bad, 1)
            _add_row(U, t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]

    return SmithDecomposition(
        U=LatticeMatrix.from_rows(U, r),
        D=LatticeMatrix.from_rows(D, c),
        V=LatticeMatrix.from_rows(V, c),
    )


def hermite_normal_form(vectors: Sequence[Sequence[int]]) -> Tuple[LatticeVector, ...]:
    """Base canonica (forma di Hermite per righe) del reticolo generato dai vettori."""
    rows = [list(as_vector(v)) for v in vectors if any(v)]
    if not rows:
        return ()
    n = len(rows[0])
    pivot_row = 0
    for col in range(n):
        if pivot_row == len(rows):
            break
        while True:
            candidati = [i for i in range(pivot_row, len(rows)) if rows[i][col] != 0]
            if not candidati:
                break
            best = min(candidati, key=lambda i: (abs(rows[i][col]), i))
            _swap_rows(rows, pivot_row, best)
            p = rows[pivot_row][col]
            pulito = True
            for i in range(pivot_row + 1, len(rows)):
                q = rows[i][col] // p
                if q:
                    _add_row(rows, i, pivot_row, -q)
                if rows[i][col]:
                    pulito = False
            if pulito:
                break
        if rows[pivot_row][col] == 0:
            continue
        if rows[pivot_row][col] < 0:
            rows[pivot_row] = [-x for x in rows[pivot_row]]
        p = rows[pivot_row][col]
        for i in range(pivot_row):
            q = rows[i][col] // p
            if q:
                _add_row(rows, i, pivot_row, -q)
        pivot_row += 1
    return tuple(tuple(r) for r in rows[:pivot_row])


def kernel_basis(matrix: LatticeMatrix) -> Tuple[LatticeVector, ...]:
    """Base (in forma di Hermite) del reticolo saturo {x : A·x = 0}."""
    if matrix.cols == 0:
        return ()
    if matrix.rows == 0:
        return tuple(unit_vector(j, matrix.cols) for j in range(matrix.cols))
    snf = smith_normal_form(matrix)
    generatori = [snf.V.col(j) for j in range(snf.rank, matrix.cols)]
    return hermite_normal_form(generatori)


def solve_integral(matrix: LatticeMatrix, rhs: Sequence[int]) -> Optional[LatticeVector]:
    """Una soluzione intera di A·x = b, oppure None se non esiste."""
    if len(rhs) != matrix.rows:
        raise DimensionMismatchError(f"Termine noto di lunghezza {len(rhs)} per {matrix.rows} equazioni.")
    if matrix.rows == 0:
        return tuple(0 for _ in range(matrix.cols))
    snf = smith_normal_form(matrix)
    c = snf.U.apply(as_vector(rhs))
    diagonale = snf.diagonal
    y = [0] * matrix.cols
    for i in range(matrix.rows):
        d = diagonale[i] if i < len(diagonale) else 0
        if d == 0:
            if c[i] != 0:
                return None
        elif c[i] % d:
            return None
        else:
            y[i] = c[i] // d
    return snf.V.apply(y)


def rational_solve(matrix: LatticeMatrix, rhs: Sequence[int]) -> Optional[Tuple[Rational, ...]]:
    """Una soluzione razionale di A·x = b (variabili libere a zero), oppure None."""
    if len(rhs) != matrix.rows:
        raise DimensionMismatchError(f"Termine noto di lunghezza {len(rhs)} per {matrix.rows} equazioni.")
    if matrix.rows == 0:
        return tuple(Rational(0) for _ in range(matrix.cols))
    augmented = Matrix.hstack(matrix.to_sympy(), Matrix(matrix.rows, 1, list(rhs)))
    ridotta, pivots = augmented.rref()
    if matrix.cols in pivots:
        return None
    x = [Rational(0)] * matrix.cols
    for riga, col in enumerate(pivots):
        x[col] = Rational(ridotta[riga, matrix.cols])
    return tuple(x)


def saturated_span_basis(vectors: Sequence[Sequence[int]], dim: int) -> Tuple[LatticeVector, ...]:
    """Base di span(vectors) ∩ Z^dim in forma di Hermite."""
    if not vectors:
        return ()
    ortogonale = kernel_basis(LatticeMatrix.from_rows(vectors, dim))
    return kernel_basis(LatticeMatrix.from_rows(ortogonale, dim))


def coordinates_in_basis(basis: Sequence[Sequence[int]], v: Sequence[int]) -> LatticeVector:
    """Coordinate intere di v rispetto a una base di un sottoreticolo saturo."""
    matrice = LatticeMatrix.from_columns(basis, len(v))
    coords = solve_integral(matrice, v)
    if coords is None:
        raise DimensionMismatchError(f"Il vettore {tuple(v)} non appartiene al sottoreticolo.")
    return coords
