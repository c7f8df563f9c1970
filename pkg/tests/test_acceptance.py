"""Acceptance gate: nine end-to-end criteria, each with a stated tolerance
and a runtime budget. Every test prints one PASS/FAIL summary line (run
with ``pytest tests/test_acceptance.py -v -s`` to see them) and then
asserts, so a red criterion still reports its numbers."""

import time

import numpy as np

from oracles import (
    brute_force_section_count,
    random_coarsening,
    random_hermitian,
    random_state,
)
from qborn.born import (
    PureState,
    born_table,
    coherence_check,
    rank1_check,
    rank_k_decomposition_check,
    section_compatibility_check,
)
from qborn.errors import QbornError
from qborn.fixtures import (
    mermin_peres_fixture,
    random_bloch_poset,
    random_commuting_family,
    sign_assignment_exists,
)
from qborn.linalg import DEFAULT_TOL, frobenius, hermitian_eigendecomposition
from qborn.poset import build_poset, generate_context
from qborn.qubit import BlochVector, qubit_born_closed_form, qubit_context
from qborn.sections import (
    check_section,
    count_global_sections,
    find_global_section,
    search_global_section,
)
from qborn.systems import validate_system
from qborn.valuations import (
    FiniteValuation,
    bind,
    dirac,
    modular_check,
    product,
    pushforward,
)


def verdict(num: int, ok: bool, detail: str) -> bool:
    print(f"ACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} - {detail}", flush=True)
    return ok


def random_context(n: int, seed: int):
    """Context of a seeded integer-spectrum observable (varied point counts)."""
    return generate_context(random_commuting_family(n, 1, seed))


def unit_bloch(rng) -> BlochVector:
    v = rng.normal(size=3)
    v = v / np.linalg.norm(v)
    return BlochVector(float(v[0]), float(v[1]), float(v[2]))


def test_criterion_1_spectral_reconstruction():
    t0 = time.perf_counter()
    failures = 0
    worst = 0.0
    for k in range(200):
        n = 2 + k % 7
        h = random_hermitian(n, np.random.default_rng(1000 + k))
        dec = hermitian_eigendecomposition(h)
        budget = 1e-9 * (1.0 + frobenius(h))
        ratio = frobenius(h - dec.reconstruct()) / budget
        worst = max(worst, ratio)
        if ratio > 1.0:
            failures += 1
        try:
            validate_system(list(dec.projectors), DEFAULT_TOL)
        except QbornError:
            failures += 1
    dt = time.perf_counter() - t0
    ok = failures == 0 and dt < 10.0
    assert verdict(
        1,
        ok,
        f"200 reconstructions, n in 2..8, worst residual at {worst:.3f} of the "
        f"1e-9*(1+||H||_F) budget, all projector systems valid at 1e-9, {dt:.2f}s (<10s)",
    )


def test_criterion_2_born_marginals_and_mass():
    t0 = time.perf_counter()
    failures = 0
    worst = 0.0
    for k in range(100):
        n = (2, 3, 4)[k % 3]
        c = random_context(n, 2000 + 2 * k)
        d = random_context(n, 2001 + 2 * k)
        table = born_table(c, d)
        devs = [abs(m - r) for m, r in zip(table.row_marginals(), c.system.ranks)]
        devs += [abs(m - r) for m, r in zip(table.col_marginals(), d.system.ranks)]
        devs.append(abs(table.total - n))
        worst = max(worst, max(devs))
        if max(devs) > 1e-9:
            failures += 1
    dt = time.perf_counter() - t0
    ok = failures == 0 and dt < 5.0
    assert verdict(
        2,
        ok,
        f"100 context pairs, n in 2..4: marginals equal the ranks and total equals n, "
        f"worst deviation {worst:.2e} (<=1e-9), {dt:.2f}s (<5s)",
    )


def test_criterion_3_refinement_coherence():
    t0 = time.perf_counter()
    failures = 0
    for k in range(100):
        n = (2, 3, 4)[k % 3]
        c = random_context(n, 3000 + 2 * k)
        d = random_context(n, 3001 + 2 * k)
        rng = np.random.default_rng(3500 + k)
        coarse_c, witness_c = random_coarsening(c, rng)
        coarse_d, witness_d = random_coarsening(d, rng)
        if not coherence_check((c, d), (coarse_c, coarse_d), (witness_c, witness_d), atol=1e-8):
            failures += 1
    dt = time.perf_counter() - t0
    ok = failures == 0 and dt < 5.0
    assert verdict(
        3,
        ok,
        f"100 fine pairs with random coarsenings: pushed table equals coarse table "
        f"entrywise at 1e-8, {failures} failures, {dt:.2f}s (<5s)",
    )


def test_criterion_4_state_vector_rule_agreement():
    t0 = time.perf_counter()
    failures = 0
    rank1_runs = 0
    for k in range(200):
        n = 2 + k % 4
        d = random_context(n, 4001 + 2 * k)
        if k % 2 == 0:
            c = generate_context([random_hermitian(n, np.random.default_rng(4000 + 2 * k))])
            ones = [i for i, r in enumerate(c.system.ranks, start=1) if r == 1]
            assert ones, "generic spectrum must yield rank-one projectors"
            rank1_runs += 1
            if not rank1_check(c, ones[k % len(ones)], d, atol=1e-10):
                failures += 1
        else:
            c = random_context(n, 4000 + 2 * k)
            i = 1 + (k // 2) % len(c)
            if not rank_k_decomposition_check(c, i, d, atol=1e-9):
                failures += 1
    dt = time.perf_counter() - t0
    ok = failures == 0 and dt < 5.0
    assert verdict(
        4,
        ok,
        f"200 instances ({rank1_runs} rank-one at 1e-10, {200 - rank1_runs} rank-k at 1e-9) "
        f"match the quadratic-form values, {failures} failures, {dt:.2f}s (<5s)",
    )


def test_criterion_5_qubit_closed_form():
    t0 = time.perf_counter()
    rng = np.random.default_rng(55)
    worst = 0.0
    for _ in range(1000):
        a = unit_bloch(rng)
        b = unit_bloch(rng)
        table = born_table(qubit_context(a), qubit_context(b)).as_array()
        worst = max(worst, float(np.max(np.abs(table - qubit_born_closed_form(a, b)))))
    collapses = 0
    for _ in range(1000):
        a = unit_bloch(rng)
        if qubit_context(a).id == qubit_context(a.antipode()).id:
            collapses += 1
    dt = time.perf_counter() - t0
    ok = worst <= 1e-12 and collapses == 1000 and dt < 2.0
    assert verdict(
        5,
        ok,
        f"1000 Bloch pairs match the closed form within 1e-12 (worst {worst:.2e}); "
        f"{collapses}/1000 antipodal pairs share one canonical id, {dt:.2f}s (<2s)",
    )


def test_criterion_6_valuation_monad_laws():
    t0 = time.perf_counter()
    failures = 0
    rng = np.random.default_rng(66)

    def random_valuation(pts):
        return FiniteValuation(pts, tuple(float(x) for x in rng.uniform(0.0, 2.0, len(pts))))

    def random_kernel(src, dst):
        table = {p: random_valuation(dst) for p in src}
        return lambda p: table[p]

    for _ in range(500):
        pts = tuple(range(1, int(rng.integers(1, 9)) + 1))
        pts2 = tuple(range(1, int(rng.integers(1, 9)) + 1))
        pts3 = tuple(range(1, int(rng.integers(1, 9)) + 1))
        v = random_valuation(pts)
        k1 = random_kernel(pts, pts2)
        k2 = random_kernel(pts2, pts3)
        x = int(rng.integers(1, len(pts) + 1))

        checks = [
            # unit laws
            bind(dirac(x, pts), k1, pts2).isclose(k1(x), atol=1e-12),
            bind(v, lambda p: dirac(p, pts), pts).isclose(v, atol=1e-12),
            # associativity
            bind(bind(v, k1, pts2), k2, pts3).isclose(
                bind(v, lambda p: bind(k1(p), k2, pts3), pts3), atol=1e-12
            ),
            # modular law on random subsets
            modular_check(
                v,
                [p for p in pts if rng.integers(2)],
                [p for p in pts if rng.integers(2)],
                atol=1e-12,
            ),
        ]

        # pushforward functoriality
        f = {p: int(rng.integers(1, len(pts2) + 1)) for p in pts}
        g = {q: int(rng.integers(1, len(pts3) + 1)) for q in pts2}
        checks.append(
            pushforward(pushforward(v, f.__getitem__, pts2), g.__getitem__, pts3).isclose(
                pushforward(v, lambda p: g[f[p]], pts3), atol=1e-12
            )
        )

        # Fubini: marginals of the product scale by the other total, and
        # swapping the factors transposes the table
        w = random_valuation(pts2)
        prod = product(v, w)
        left = pushforward(prod, lambda pq: pq[0], pts)
        right = pushforward(prod, lambda pq: pq[1], pts2)
        checks.append(
            left.isclose(FiniteValuation(pts, tuple(a * w.total for a in v.weights)), atol=1e-12)
        )
        checks.append(
            right.isclose(FiniteValuation(pts2, tuple(b * v.total for b in w.weights)), atol=1e-12)
        )
        swapped_target = tuple((p, q) for p in v.points for q in w.points)
        checks.append(
            pushforward(product(w, v), lambda qp: (qp[1], qp[0]), swapped_target).isclose(
                prod, atol=1e-12
            )
        )

        if not all(checks):
            failures += 1
    dt = time.perf_counter() - t0
    ok = failures == 0 and dt < 2.0
    assert verdict(
        6,
        ok,
        f"500 random valuations on <=8 points satisfy unit, associativity, modular, "
        f"functoriality and Fubini laws at 1e-12, {failures} failures, {dt:.2f}s (<2s)",
    )


def test_criterion_7_section_dichotomy():
    t0 = time.perf_counter()
    square = build_poset([list(fam) for fam in mermin_peres_fixture().families])
    square_outcome = search_global_section(square).outcome
    oracle_says_none = not sign_assignment_exists()

    found_and_valid = 0
    for seed in range(20):
        poset = build_poset([list(fam) for fam in random_bloch_poset(20, seed).families])
        section = find_global_section(poset)
        if section is not None and check_section(poset, section):
            found_and_valid += 1
    dt = time.perf_counter() - t0
    ok = square_outcome == "none" and oracle_says_none and found_and_valid == 20 and dt < 5.0
    assert verdict(
        7,
        ok,
        f"magic-square poset: search says {square_outcome!r}, 512-assignment oracle agrees "
        f"({'none' if oracle_says_none else 'found'}); {found_and_valid}/20 dim-2 posets "
        f"have a verified section, {dt:.2f}s (<5s)",
    )


def test_criterion_8_pure_state_sections():
    t0 = time.perf_counter()
    failures = 0
    square = build_poset([list(fam) for fam in mermin_peres_fixture().families])
    for k in range(50):
        psi = PureState(random_state(4, np.random.default_rng(8000 + k)))
        if not section_compatibility_check(psi, square, atol=1e-10):
            failures += 1
    for k in range(50):
        families = [
            random_commuting_family(3, 1, 8100 + 2 * k),
            random_commuting_family(3, 1, 8101 + 2 * k),
        ]
        poset = build_poset(families)
        psi = PureState(random_state(3, np.random.default_rng(8200 + k)))
        if not section_compatibility_check(psi, poset, atol=1e-10):
            failures += 1
    dt = time.perf_counter() - t0
    ok = failures == 0 and dt < 5.0
    assert verdict(
        8,
        ok,
        f"100 pure states (50 on the dim-4 square poset, 50 on random dim-3 posets) "
        f"give compatible weight families at 1e-10, {failures} failures, {dt:.2f}s (<5s)",
    )


def test_criterion_9_section_count_oracle():
    t0 = time.perf_counter()
    mismatches = 0
    largest = 0
    for seed in range(20):
        if seed < 12:
            poset = build_poset(
                [list(fam) for fam in random_bloch_poset(2 + seed, 9000 + seed).families]
            )
        else:
            n = 3 + seed % 2
            families = [
                random_commuting_family(n, 1, 9100 + 2 * seed),
                random_commuting_family(n, 1, 9101 + 2 * seed),
            ]
            poset = build_poset(families)
        space = 1
        for cid in poset.ids():
            space *= poset.spectrum_size(cid)
        assert space <= 10**6
        largest = max(largest, space)
        if count_global_sections(poset, cap=10**6 + 1) != brute_force_section_count(poset):
            mismatches += 1
    dt = time.perf_counter() - t0
    ok = mismatches == 0 and dt < 30.0
    assert verdict(
        9,
        ok,
        f"20 posets: search count equals brute-force enumeration exactly "
        f"(largest assignment space {largest}), {mismatches} mismatches, {dt:.2f}s (<30s)",
    )
