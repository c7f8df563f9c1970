"""Deterministic generators for test and demonstration data.

Everything here is seeded or constant: random commuting families (shared
eigenbasis, integer spectra), random Bloch-vector context sets in dimension
two, and the two-qubit magic-square observable set whose context poset has
no global section. The square ships with an independent oracle that checks
all 512 sign assignments against the six product-sign constraints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iter_product

import numpy as np

from qborn.errors import ValidationError
from qborn.linalg import frobenius, matrix_from_json, matrix_to_json
from qborn.qubit import PAULI_X, PAULI_Y, PAULI_Z, BlochVector, bloch_to_projector, qubit_context


@dataclass(frozen=True, eq=False)
class Fixture:
    """Named observable families plus declared expectations.

    ``families`` feed straight into poset construction; ``expected`` holds
    declarative facts a consumer may assert (e.g. section_exists).
    """

    name: str
    dim: int
    families: tuple[tuple[np.ndarray, ...], ...]
    expected: dict = field(default_factory=dict)
    seed: int | None = None


def fixture_to_json(f: Fixture) -> dict:
    return {
        "name": f.name,
        "dim": f.dim,
        "seed": f.seed,
        "families": [[matrix_to_json(m) for m in fam] for fam in f.families],
        "expected": dict(f.expected),
    }


def fixture_from_json(obj) -> Fixture:
    if not isinstance(obj, dict) or "families" not in obj or "dim" not in obj:
        raise ValidationError("fixture JSON must have 'dim' and 'families' fields")
    families = tuple(
        tuple(matrix_from_json(m) for m in fam) for fam in obj["families"]
    )
    return Fixture(
        name=str(obj.get("name", "")),
        dim=int(obj["dim"]),
        families=families,
        expected=dict(obj.get("expected", {})),
        seed=obj.get("seed"),
    )


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish unitary from QR of a random complex Gaussian matrix."""
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    # Fix the phase freedom so the result depends only on the draw.
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_commuting_family(n: int, members: int, seed: int) -> list[np.ndarray]:
    """Commuting Hermitian family: integer diagonals in one random basis.

    Integer spectra in {-3..3} make eigenvalue collisions common, so the
    generated contexts exercise nontrivial types, not just full flags.
    """
    if not 1 <= members <= n:
        raise ValidationError(f"member count must be in 1..{n}, got {members}")
    rng = np.random.default_rng(seed)
    u = random_unitary(n, rng)
    family = []
    for _ in range(members):
        d = rng.integers(-3, 4, size=n).astype(float)
        a = (u * d) @ u.conj().T
        family.append(0.5 * (a + a.conj().T))
    return family


def random_commuting_fixture(n: int, members: int, seed: int) -> Fixture:
    return Fixture(
        name=f"random-commuting-{n}d-{members}m-{seed}",
        dim=n,
        families=(tuple(random_commuting_family(n, members, seed)),),
        expected={},
        seed=seed,
    )


def _kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(a, b)


def magic_square_observables() -> list[list[np.ndarray]]:
    """The 3x3 grid of two-qubit Pauli products, as rows of the square."""
    i2 = np.eye(2, dtype=np.complex128)
    return [
        [_kron(PAULI_X, i2), _kron(i2, PAULI_X), _kron(PAULI_X, PAULI_X)],
        [_kron(i2, PAULI_Y), _kron(PAULI_Y, i2), _kron(PAULI_Y, PAULI_Y)],
        [_kron(PAULI_X, PAULI_Y), _kron(PAULI_Y, PAULI_X), _kron(PAULI_Z, PAULI_Z)],
    ]


def magic_square_lines() -> list[list[tuple[int, int]]]:
    """The six lines (three rows, three columns) as (row, col) index triples."""
    rows = [[(r, 0), (r, 1), (r, 2)] for r in range(3)]
    cols = [[(0, c), (1, c), (2, c)] for c in range(3)]
    return rows + cols


def magic_square_line_signs() -> list[int]:
    """The sign eps with product of each line's observables = eps.I."""
    grid = magic_square_observables()
    signs = []
    for line in magic_square_lines():
        prod = np.eye(4, dtype=np.complex128)
        for (r, c) in line:
            prod = prod @ grid[r][c]
        for eps in (1, -1):
            if frobenius(prod - eps * np.eye(4)) < 1e-12:
                signs.append(eps)
                break
        else:
            raise ValidationError("line product is not plus or minus the identity")
    return signs


def sign_assignment_exists() -> bool:
    """Independent obstruction oracle: brute force over all 512 ways to give
    each of the nine observables a value in {+1, -1}.

    An assignment is admissible when, on every line, the product of the
    three assigned values equals the line's product sign. Returns whether
    any assignment is admissible; the search is exhaustive and independent
    of the poset machinery.
    """
    lines = magic_square_lines()
    signs = magic_square_line_signs()
    cells = [(r, c) for r in range(3) for c in range(3)]
    for choice in iter_product((1, -1), repeat=9):
        value = dict(zip(cells, choice))
        if all(
            value[line[0]] * value[line[1]] * value[line[2]] == eps
            for line, eps in zip(lines, signs)
        ):
            return True
    return False


def mermin_peres_fixture() -> Fixture:
    """Six commuting triples (rows and columns of the square) in M_4."""
    grid = magic_square_observables()
    families = tuple(
        tuple(grid[r][c] for (r, c) in line) for line in magic_square_lines()
    )
    return Fixture(
        name="mermin-peres",
        dim=4,
        families=families,
        expected={"section_exists": False},
        seed=None,
    )


def random_bloch_vectors(count: int, rng: np.random.Generator) -> list[BlochVector]:
    out = []
    while len(out) < count:
        v = rng.normal(size=3)
        norm = float(np.linalg.norm(v))
        if norm < 1e-8:
            continue
        out.append(BlochVector(v[0] / norm, v[1] / norm, v[2] / norm))
    return out


def random_bloch_poset(count: int, seed: int) -> Fixture:
    """``count`` distinct dimension-2 contexts from random sphere points."""
    if count < 1:
        raise ValidationError("count must be at least 1")
    rng = np.random.default_rng(seed)
    families: list[tuple[np.ndarray, ...]] = []
    seen: set[str] = set()
    while len(families) < count:
        (a,) = random_bloch_vectors(1, rng)
        # Antipodal or repeated draws would collapse to one context.
        cid = qubit_context(a).id
        if cid in seen:
            continue
        seen.add(cid)
        families.append((bloch_to_projector(a),))
    return Fixture(
        name=f"random-bloch-{count}c-{seed}",
        dim=2,
        families=tuple(families),
        expected={"section_exists": True},
        seed=seed,
    )
