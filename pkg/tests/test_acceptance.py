"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s``.

Criterion 5 is asserted twice: once exactly as stated (total positivity
tested at minor order 4), which FAILS — nine invalid degree-2 labels with
coefficients <= 5 have their first negative Toeplitz minor at size 5 or 6,
e.g. [1,3,3]- — and once at order 6, where the equivalence holds over the
whole grid.  The order-4 failure is a genuine property of the sequences,
not an implementation artifact; see the companion order-6 test.
"""

import math
import time
from contextlib import contextmanager
from itertools import product

import numpy as np

from fockstat.classify import (
    Kind,
    StatisticsSpec,
    character_coefficients,
    excitation_spectrum,
    is_valid_statistics,
    single_mode_character,
    totally_positive_upto,
)
from fockstat.dynamics import (
    AmplitudeVector,
    beamsplitter,
    character_trace,
    detection_probabilities,
    evolve,
    haar_unitary,
    sector_rep,
)
from fockstat.fock import (
    decompose,
    enumerate_basis,
    excitation_number,
    order_one_sector,
    state_energy,
)
from fockstat.symfunc import (
    IntegerSeries,
    Partition,
    schur_expand_oracle,
    schur_expand_product,
)
from fockstat.thermo import (
    EnsembleParams,
    grand_logZ,
    mean_occupation,
    solve_mu,
    thermo_report,
)

F, B = Kind.FERMIONIC_LIKE, Kind.BOSONIC_LIKE


@contextmanager
def criterion(number, description):
    start = time.perf_counter()
    try:
        yield
    except Exception:
        print(f"ACCEPTANCE {number} ({description}): FAIL "
              f"[{time.perf_counter() - start:.2f}s]")
        raise
    print(f"ACCEPTANCE {number} ({description}): PASS "
          f"[{time.perf_counter() - start:.2f}s]")


def test_criterion_1_hong_ou_mandel():
    with criterion(1, "beam-splitter interference"):
        start = time.perf_counter()
        bosons = StatisticsSpec(B, (1, 1))
        out = evolve(beamsplitter(), AmplitudeVector.basis_state(bosons, (1, 1)))
        probs = detection_probabilities(out)
        assert abs(probs.get((2, 0), 0.0) - 0.5) <= 1e-12
        assert abs(probs.get((0, 2), 0.0) - 0.5) <= 1e-12
        assert probs.get((1, 1), 0.0) <= 1e-12

        fermions = StatisticsSpec(F, (1, 1))
        out = evolve(beamsplitter(), AmplitudeVector.basis_state(fermions, (1, 1)))
        probs = detection_probabilities(out)
        assert abs(probs.get((1, 1), 0.0) - 1.0) <= 1e-12
        assert time.perf_counter() - start < 1.0


def test_criterion_2_character_counterexample():
    with criterion(2, "1 + x^2 yields a negative sector multiplicity"):
        series = IntegerSeries((1, 0, 1))
        expansion = schur_expand_product(series, 2, 4)
        assert expansion[Partition((1, 1))] == -1


def test_criterion_3_multiplicity_tables():
    with criterion(3, "order-one and order-two multiplicity tables"):
        dec = decompose(StatisticsSpec(F, (1, 2)), 2)
        assert dec.entries == {
            Partition(()): 1,
            Partition((1,)): 2,
            Partition((1, 1)): 4,
        }
        for q in (3, 4, 5):
            dec = decompose(StatisticsSpec(F, (1, q, 1)), 2)
            assert dec.entries == {
                Partition(()): 1,
                Partition((1,)): q,
                Partition((1, 1)): q * q - 1,
                Partition((2,)): 1,
                Partition((2, 1)): q,
                Partition((2, 2)): 1,
            }


def test_criterion_4_order_one_sector_structure():
    with criterion(4, "order-one decompositions match the closed form"):
        start = time.perf_counter()
        for kind, q, d in product((F, B), (2, 3), (2, 3, 4)):
            spec = StatisticsSpec(kind, (1, q))
            dec = decompose(spec, d, max_weight=4)
            predicted = {}
            top = min(d, 4) if kind is F else 4
            for N in range(top + 1):
                lam, mult = order_one_sector(spec, d, N)
                predicted[lam] = mult
            assert dec.entries == predicted, (kind, q, d)
        assert time.perf_counter() - start < 10.0


def _grid_specs():
    specs = []
    for q in product(range(1, 6), repeat=2):
        specs.append(StatisticsSpec(F, q))
    for q in product(range(1, 6), repeat=3):
        specs.append(StatisticsSpec(F, q))
    for q1 in range(1, 6):
        specs.append(StatisticsSpec(B, (1, q1)))
    for q1, q2 in product(range(1, 6), repeat=2):
        specs.append(StatisticsSpec(B, (1, q1, q2)))
    return specs


def _total_positivity_verdict(spec, horizon, order):
    coeffs = character_coefficients(spec, horizon)
    if any(c < 0 for c in coeffs):
        return False
    coeffs = coeffs + [0] * (horizon + 1 - len(coeffs))
    series = IntegerSeries(coeffs, truncated=not spec.is_fermionic_like)
    return bool(totally_positive_upto(series, order))


def test_criterion_5_rootedness_positivity_equivalence_order4_as_stated():
    """As stated: order-4 minors on the horizon-12 window.

    This FAILS: for nine invalid labels (e.g. [1,3,3]-, [2,5,4]-) every
    minor of size <= 4 is nonnegative and the real-rootedness violation
    only surfaces in 5x5 or 6x6 minors.  Kept as stated deliberately; the
    order-6 variant below passes on the identical grid.
    """
    with criterion(5, "real-rootedness = total positivity at minor order 4, as stated"):
        mismatches = []
        for spec in _grid_specs():
            valid = is_valid_statistics(spec).valid
            tp = _total_positivity_verdict(spec, horizon=12, order=4)
            if valid != tp:
                mismatches.append((spec.label(), valid, tp))
        assert not mismatches, (
            f"{len(mismatches)} labels where order-4 total positivity "
            f"disagrees with real-rootedness: {mismatches}"
        )


def test_criterion_5_rootedness_positivity_equivalence_order6():
    with criterion(5, "real-rootedness = total positivity at minor order 6"):
        start = time.perf_counter()
        for spec in _grid_specs():
            valid = is_valid_statistics(spec).valid
            tp = _total_positivity_verdict(spec, horizon=12, order=6)
            assert valid == tp, spec.label()
        assert time.perf_counter() - start < 30.0


def test_criterion_6_only_ordinary_statistics_is_multiplicity_free():
    with criterion(6, "uniqueness of multiplicity-free statistics"):
        free = []
        for kind in (F, B):
            q0_range = range(1, 5) if kind is F else (1,)
            for q0, q1 in product(q0_range, range(1, 5)):
                spec = StatisticsSpec(kind, (q0, q1))
                if not is_valid_statistics(spec).valid:
                    continue
                dec = decompose(spec, 2, max_weight=2)
                if all(c <= 1 for c in dec.entries.values()):
                    free.append(spec.label())
        assert sorted(free) == ["1,1:+", "1,1:-"]


REP_SPECS = [
    StatisticsSpec(F, (1, 1)),
    StatisticsSpec(B, (1, 1)),
    StatisticsSpec(F, (1, 2)),
    StatisticsSpec(B, (1, 2)),
]


def test_criterion_7_representation_properties():
    with criterion(7, "unitarity, homomorphism, character traces"):
        rng = np.random.default_rng(2024)
        for seed in range(20):
            d = 2 + seed % 2  # alternate d = 2, 3
            g = haar_unitary(d, seed)
            h = haar_unitary(d, 1000 + seed)
            for spec in REP_SPECS:
                for N in range(4):
                    if spec.is_fermionic_like and N > d:
                        continue
                    rep_g = sector_rep(spec, g, N).matrix
                    dim = len(rep_g)
                    assert (
                        np.max(np.abs(rep_g.conj().T @ rep_g - np.eye(dim))) < 1e-10
                    )
                    rep_gh = sector_rep(spec, g @ h, N).matrix
                    rep_h = sector_rep(spec, h, N).matrix
                    assert np.max(np.abs(rep_gh - rep_g @ rep_h)) < 1e-9
            phases = rng.uniform(0.0, 2 * np.pi, size=d)
            diag = np.diag(np.exp(1j * phases))
            for spec in REP_SPECS:
                cutoff = d * spec.order if spec.is_fermionic_like else 3
                total = sum(
                    np.trace(sector_rep(spec, diag, N).matrix)
                    for N in range(cutoff + 1)
                )
                assert abs(total - character_trace(spec, phases, cutoff)) < 1e-9
                if spec.is_fermionic_like:
                    q0, q1 = spec.q
                    prod = np.prod([q0 + q1 * np.exp(1j * t) for t in phases])
                    assert abs(total - prod) < 1e-9


def test_criterion_8_excitation_tables():
    with criterion(8, "excitation spectra"):
        for alpha in (1, 2, 3, 4):
            spec = StatisticsSpec(F, (1, alpha))
            assert excitation_spectrum(spec) == (0,) + (1,) * alpha
        for q in (3, 4, 5):
            spec = StatisticsSpec(F, (1, q, 1))
            assert excitation_spectrum(spec) == (0,) + (1,) * q + (2,)
        for beta in (1, 2, 3):
            spec = StatisticsSpec(B, (1, beta))
            spectrum = excitation_spectrum(spec, cutoff=2)
            counts = [spectrum.count(v) for v in (0, 1, 2)]
            assert counts == [1, beta, beta * beta]


def test_criterion_9_thermodynamics():
    with criterion(9, "quantum-gas thermodynamics"):
        # chemical-potential shift, 5 spectra x 3 temperatures
        spectra = [
            [0.0, 0.7, 1.1],
            [0.2, 0.4, 2.0, 3.1],
            [-1.0, 0.0, 1.0],
            [0.5, 0.6, 0.9],
            [0.0, 2.5],
        ]
        for energies in spectra:
            for beta in (0.5, 1.0, 5.0):
                target = 0.4 * len(energies)
                mu1 = solve_mu(StatisticsSpec(F, (1, 1)), energies, beta, target)
                for q in (2, 3):
                    spec = StatisticsSpec(F, (1, q))
                    muq = solve_mu(spec, energies, beta, target)
                    assert abs((muq - mu1) - (-math.log(q) / beta)) <= 1e-9

        # entropy difference N ln q at fixed (N, T)
        energies = [0.0, 0.8, 1.7]
        N = 1.4
        for beta in (0.5, 2.0, 8.0):
            mu1 = solve_mu(StatisticsSpec(F, (1, 1)), energies, beta, N)
            s1 = thermo_report(
                StatisticsSpec(F, (1, 1)), energies, EnsembleParams(beta, mu1)
            ).entropy
            for q in (2, 3):
                spec = StatisticsSpec(F, (1, q))
                muq = solve_mu(spec, energies, beta, N)
                sq = thermo_report(spec, energies, EnsembleParams(beta, muq)).entropy
                assert abs((sq - s1) - N * math.log(q)) <= 1e-6

        # zero-temperature residual entropy: three filled modes, q = 2
        energies = [0.0, 1.0, 2.0]
        spec = StatisticsSpec(F, (1, 2))
        mu = solve_mu(spec, energies, 1e3, 3.0)
        rep = thermo_report(spec, energies, EnsembleParams(1e3, mu))
        assert abs(rep.entropy - 3 * math.log(2)) <= 1e-4

        # exact Fermi-Dirac / Bose-Einstein recovery at q = 1
        for x in (-20.0, -1.0, 0.0, 0.3, 2.0, 20.0):
            got = mean_occupation(
                StatisticsSpec(F, (1, 1)), x, EnsembleParams(1.0, 0.0)
            )
            assert got == 1.0 / (math.exp(x) + 1.0)
        for x in (0.05, 0.5, 3.0, 20.0):
            got = mean_occupation(
                StatisticsSpec(B, (1, 1)), x, EnsembleParams(1.0, 0.0)
            )
            assert got == 1.0 / (math.exp(x) - 1.0)

        # grand partition sum against the explicit state sum, d <= 2
        for spec in (StatisticsSpec(F, (1, 1)), StatisticsSpec(F, (1, 2)),
                     StatisticsSpec(F, (1, 3, 1))):
            for d in (1, 2):
                energies = [0.3 * (k + 1) for k in range(d)]
                beta, mu = 1.2, 0.1
                explicit = math.log(
                    sum(
                        math.exp(
                            -beta
                            * (
                                state_energy(spec, s, energies)
                                - mu * excitation_number(spec, s)
                            )
                        )
                        for s in enumerate_basis(spec, d)
                    )
                )
                got = grand_logZ(spec, energies, EnsembleParams(beta, mu))
                assert abs(got - explicit) <= 1e-10


def test_criterion_10_oracle_agreement():
    with criterion(10, "minor expansion agrees with the brute-force oracle"):
        valid_specs = [
            StatisticsSpec(F, (1, 1)),
            StatisticsSpec(F, (1, 2)),
            StatisticsSpec(F, (1, 3)),
            StatisticsSpec(F, (2, 2)),
            StatisticsSpec(F, (1, 2, 1)),
            StatisticsSpec(F, (1, 3, 1)),
            StatisticsSpec(B, (1, 1)),
            StatisticsSpec(B, (1, 2)),
            StatisticsSpec(B, (1, 3, 2)),
        ]
        invalid_spec = StatisticsSpec(F, (1, 1, 1))
        cases = [(2, 5), (3, 4)]
        for spec in valid_specs:
            for d, w in cases:
                series = single_mode_character(spec, w + d - 1)
                assert schur_expand_product(series, d, w) == schur_expand_oracle(
                    series, d, w
                ), (spec.label(), d, w)
        # the invalid label must show the same negative coefficient both ways
        assert not is_valid_statistics(invalid_spec).valid
        coeffs = character_coefficients(invalid_spec, 12)
        for d, w in cases:
            series = IntegerSeries(coeffs + [0] * (w + d - len(coeffs)))
            minors = schur_expand_product(series, d, w)
            brute = schur_expand_oracle(series, d, w)
            assert minors == brute
            if d == 3:
                assert minors[Partition((1, 1, 1))] == -1
