"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""
import time
from fractions import Fraction
from pathlib import Path

from noncomm_recur.cli import main
from noncomm_recur.permsum import MultCounter, count_terms, perm_sum_dp, perm_sum_naive
from noncomm_recur.solver import (
    CauchyProblem,
    solve_closed,
    solve_iterative,
    solve_scalar_sum,
)
from noncomm_recur.verify import (
    check_degenerate_roots,
    check_free_theorem1,
    check_identities,
    check_matrix_oracle,
    check_permsum_structure,
    check_scalar_coherence,
)

PROBLEMS_DIR = Path(__file__).resolve().parent.parent / "problems"


def report(criterion, ok, detail):
    print(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")
    assert ok, f"{criterion}: {detail}"


def test_criterion_1_symbolic_theorem_free_backend():
    start = time.perf_counter()
    result = check_free_theorem1(max_p=16)
    elapsed = time.perf_counter() - start
    report("1 symbolic closed form, free backend, p <= 16, exact",
           result.passed and elapsed < 10.0,
           f"{result.detail} in {elapsed:.2f}s" if result.passed else result.detail)


def test_criterion_2_matrix_oracle():
    start = time.perf_counter()
    result = check_matrix_oracle(seed=42, problems=100, max_p=25, n=3)
    elapsed = time.perf_counter() - start
    report("2 matrix oracle, 100 seeded 3x3 problems, p <= 25, exact",
           result.passed and elapsed < 60.0,
           f"{result.detail} in {elapsed:.1f}s" if result.passed else result.detail)


def test_criterion_3_permutation_sum_structure():
    result = check_permsum_structure(max_total=14)
    report("3 permutation-sum structure, u+v <= 14, free backend",
           result.passed, result.detail)


def test_criterion_4_scalar_coherence():
    result = check_scalar_coherence(seed=42, pairs=100, max_p=30,
                                    complex_pairs=20, rel_tol=1e-9)
    report("4 scalar coherence, 100 square-discriminant pairs exact + "
           "20 negative-discriminant pairs at 1e-9 relative",
           result.passed, result.detail)


def test_criterion_5_degenerate_repeated_root():
    result = check_degenerate_roots(max_p=30)
    report("5 repeated-root branch p*m1^(p-1)*y1, p <= 30, exact",
           result.passed, result.detail)


def test_criterion_6_identity_suites():
    result = check_identities(stifel_max_n=40, symmetry_max_p=40,
                              id21_max_n=20, id23_max_n=30)
    report("6 identity suites (Pascal, symmetry, both closed forms), exact",
           result.passed, result.detail)


def test_criterion_7_fibonacci_landmark():
    problem = CauchyProblem(Fraction(1), Fraction(1), Fraction(1))
    values = {}
    for p, expected in ((10, 55), (30, 832040)):
        values[p] = (solve_closed(problem, p), solve_iterative(problem, p),
                     solve_scalar_sum(1, 1, 1, p))
        for got in values[p]:
            assert got == expected, f"Y_{p}: got {got}, expected {expected}"
    report("7 Fibonacci landmark Y_10 = 55, Y_30 = 832040 via all routes",
           True, f"closed/iterative/scalar-sum agree: {values[10][0]}, {values[30][0]}")


def test_criterion_8_performance_contract(capsys):
    words = count_terms(8, 8)
    assert words == 12870
    naive_counter = MultCounter()
    perm_sum_naive(Fraction(2), Fraction(3), 8, 8, counter=naive_counter)
    assert naive_counter.count == words * 15, "one evaluation per word expected"
    dp_counter = MultCounter()
    perm_sum_dp(Fraction(2), Fraction(3), 8, 8, counter=dp_counter)
    assert dp_counter.count <= 162

    # the bench subcommand must show the widening gap across u+v = 8, 12, 16
    code = main(["bench", "--u", "8", "--v", "8", "--input",
                 str(PROBLEMS_DIR / "fibonacci.json")])
    out = capsys.readouterr().out
    assert code == 0
    mults = {}
    for line in out.splitlines():
        if line.startswith("#"):
            continue
        strategy, u, v, count, _ = line.split("\t")
        mults[(strategy, int(u), int(v))] = count
    ratios = []
    for u, v in ((4, 4), (6, 6), (8, 8)):
        naive = int(mults[("naive", u, v)])
        dp = int(mults[("dp", u, v)])
        assert naive == count_terms(u, v) * (u + v - 1)
        assert dp <= 2 * (u + 1) * (v + 1)
        ratios.append(naive / dp)
    assert ratios[0] < ratios[1] < ratios[2]
    report("8 performance contract at (8,8) and bench gap over u+v in {8,12,16}",
           True,
           f"naive {words} words ({naive_counter.count} mults) vs dp "
           f"{dp_counter.count} mults; naive/dp ratios "
           f"{', '.join(f'{r:.0f}' for r in ratios)}")
