"""The ten acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL`` line (also collected in
the terminal summary).  Run ``python3 tests/test_acceptance.py`` to get just
the ten lines.
"""
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))
from conftest import ALGEBRAS, load, load_lie  # noqa: E402

from ginfty import cells, galgebras as g, ginf, hochschild as hh  # noqa: E402
from ginfty.oracle import oracle_boundary  # noqa: E402

RESULTS = {}

# The five displayed boundary formulas, transcribed into the chain syntax.
PRINTED_BOUNDARIES = {
    "d2;1|2": "+1*(d2;12) -1*(d2;21)",
    "d2;12": "0",
    "d3;1|2|3": "-1*(d3;1|23) +1*(d3;1|32) +1*(d3;12|3) -1*(d3;21|3) "
                "+1*((d2 o1 d2);(1|2)o1(1|2)) -1*((d2 o2 d2);(1|2)o2(1|2))",
    "d3;1|23": "-1*(d3;123) +1*(d3;213) -1*(d3;231) +1*((d2 o2 d2);(1|2)o2(12)) "
               "-1*(tau(1,2)(d2 o2 d2);(12)o2(1|2)) -1*((d2 o1 d2);(12)o1(1|2))",
    "d3;12|3": "-1*(d3;123) +1*(d3;132) -1*(d3;312) -1*((d2 o1 d2);(1|2)o1(12)) "
               "+1*((d2 o2 d2);(12)o2(1|2)) +1*(tau(1,2)(d2 o1 d2);(12)o1(1|2))",
    "d3;123": "+1*((d2 o1 d2);(12)o1(12)) -1*((d2 o2 d2);(12)o2(12))",
}


def criterion_1():
    bad = []
    for text, printed in PRINTED_BOUNDARIES.items():
        mine = cells.boundary(cells.parse_cell(text))
        want = cells.parse_chain(printed)
        same = mine.is_zero() if want is None else mine == want
        if not same:
            bad.append(text)
    return not bad, f"formulas differing from the printed ones: {bad}" if bad else "all six match"


def criterion_2():
    rep = cells.check_d_squared(4)
    return rep.ok, f"{sum(len(cells.enumerate_cells(n)) for n in range(2, 5))} cells"


def criterion_3():
    rep = cells.check_equivariance(4).extend(cells.check_leibniz(4))
    return rep.ok, "; ".join(e.identity for e in rep.failures()) or "arity <= 4"


def criterion_4():
    bad = [str(c) for c in cells.enumerate_cells(3) if oracle_boundary(c) != cells.boundary(c)]
    return not bad, f"disagreements {bad[:3]}" if bad else "72 arity-3 cells"


def criterion_5():
    failures = []
    for name in ALGEBRAS:
        r = hh.verify_braces_identities(load(name), max_arity=2, max_inputs=5)
        failures += [f"{name}:{e.identity}" for e in r.failures()]
    return not failures, f"failures {failures}" if failures else f"{len(ALGEBRAS)} algebras"


def criterion_6():
    A = load("dual_numbers")
    basis = [b for k in range(3) for b in hh.Cochain.basis(A, k)]
    signs = set()
    for x in basis:
        for y in basis:
            o, b = hh.coderivation_bracket_oracle(x, y), hh.gerst_bracket(x, y)
            if o == b and o == b.scale(-1):
                continue  # both zero
            for s in (1, -1):
                if o == b.scale(s):
                    signs.add(s)
                    break
            else:
                return False, f"no sign relates the two brackets at {x.entries}, {y.entries}"
    return len(signs) == 1, f"{len(basis) ** 2} pairs, global sign {sorted(signs)}"


def criterion_7():
    smap = ginf.hochschild_structure_map(load("dual_numbers"), N=5, twist=True)
    rep = ginf.check_all_identities(smap, 2, 4)
    rep.extend(ginf.check_all_intertwining(smap, 3, 2, 2, 4))
    bad = [e.identity for e in rep.failures()]
    return not bad, f"failing: {bad}" if bad else f"{len(rep)} checks"


def criterion_8():
    rep = g.check_g_algebra(g.exterior_bracket(load_lie("sl2")))
    rep.extend(g.check_g_algebra(g.exterior_bracket(load_lie("heisenberg3"))))
    for n in (1, 2):
        rep.extend(g.check_g_algebra(g.polyvector_instance(n, 4)))
    poisson = g.check_poisson(g.parse_polyvector("d1^d2", 2, 4))
    rep.extend(poisson)
    non = g.check_poisson(g.find_non_poisson(3, 4))
    rep.extend(non)
    return rep.ok, "; ".join(e.identity for e in rep.failures()) or f"{len(rep)} checks"


def criterion_9():
    rep = hh.induced_structure_on_hh(load("dual_numbers"), 4)
    return rep.ok, "; ".join(e.identity for e in rep.failures()) or f"{len(rep)} checks"


def criterion_10():
    smap = ginf.hochschild_structure_map(load("dual_numbers"), N=5, twist=True)
    ls = ginf.symmetrized_brackets(smap, 3)
    rep = ginf.check_l_infinity(smap.space, ls, 3, 2, 4)
    return rep.ok, "; ".join(e.identity for e in rep.failures()) or "n = 2, 3"


CRITERIA = [
    (1, "boundary tables", criterion_1, 1),
    (2, "d^2 = 0 up to arity 4", criterion_2, 60),
    (3, "equivariance and Leibniz", criterion_3, 60),
    (4, "oracle concordance", criterion_4, 120),
    (5, "brace identities", criterion_5, 300),
    (6, "bracket oracle", criterion_6, 60),
    (7, "G-infinity low identities", criterion_7, 300),
    (8, "classical G-algebras", criterion_8, 120),
    (9, "cohomology descent", criterion_9, 120),
    (10, "L-infinity symmetrization", criterion_10, 120),
]


def run_criterion(number, title, fn, budget):
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    in_time = dt < budget
    status = "PASS" if ok and in_time else "FAIL"
    timing = f"{dt:.1f}s of {budget}s" + ("" if in_time else " (over budget)")
    line = f"criterion {number}: {status}  {title}  [{timing}]  {detail}"
    RESULTS[number] = line
    print(line)
    return ok, in_time, line


@pytest.mark.parametrize("number, title, fn, budget", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, fn, budget):
    ok, in_time, line = run_criterion(number, title, fn, budget)
    assert ok, line
    assert in_time, line


if __name__ == "__main__":
    results = [run_criterion(*c)[:2] for c in CRITERIA]
    sys.exit(0 if all(a and b for a, b in results) else 1)
