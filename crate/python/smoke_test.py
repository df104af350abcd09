"""Smoke test for the pyberge extension module.

Build and run from the repository root:

    cargo build --release -p berge-ramsey-py
    cp target/release/libpyberge.so python/pyberge.so
    python3 python/smoke_test.py
"""

from fractions import Fraction
import math
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import pyberge as pb


def main():
    assert pb.binomial(64, 32) == math.comb(64, 32)
    rank = sum(math.comb(a, i + 1) for i, a in enumerate([0, 2, 3]))
    assert pb.colex_rank([0, 2, 3], 5) == rank
    assert pb.colex_unrank(rank, 3, 5) == [0, 2, 3]

    assert pb.expected_mono_upper(3, 3, 4) == Fraction(27, 16)
    assert pb.threshold_n(8, 4) == 12
    assert pb.theorem_bound(3, 1) == 1
    assert pb.sufficiency_check(3)
    assert pb.known_exact(3, 3, 5) is None
    try:
        pb.theorem_bound(2, 5)
    except ValueError:
        pass
    else:
        raise AssertionError("r = 2 accepted")

    cert = pb.derandomize_forbidden(12, 8, 4)
    assert cert.compatible_count == 0 and cert.verify() and cert.is_certifying()
    assert cert.initial_expectation < 1
    col = pb.respecting_coloring(cert.forbidden, 3)
    assert len(col) == 220
    assert col.find_mono_berge_clique(8) is None
    assert pb.Coloring.from_text(col.to_text()) == col
    assert pb.ForbiddenTable.from_text(cert.forbidden.to_text()) == cert.forbidden

    table = pb.random_forbidden(7, 4, seed=1)
    col = pb.respecting_coloring(table, 3, policy="random", seed=2)
    assert all(0 <= x < 4 for x in col.edge_colors())
    w = col.find_mono_berge_clique(3)
    if w is not None:
        core = w["core"]
        assert all(table.get(u, v) != w["color"] for u in core for v in core if u < v)

    one = pb.Coloring(5, 3, 1, [0] * 10)
    w = one.find_mono_berge_clique(3)
    assert w["color"] == 0 and len(w["assignment"]) == 3

    h = pb.build_hedgehog(4)
    assert h["vertices"] == 10 and len(h["edges"]) == 6 and h["berge_clique"]
    assert pb.berge_embeds(3, [[0, 1, 2]], 2, [(0, 1)]) is not None
    assert pb.berge_embeds(3, [[0, 1, 2]], 3, [(0, 1), (1, 2)]) is None

    assert pb.ramsey_number_exact(3, 2, 3, 6) == 5
    arrowing, counterexample = pb.ramsey_decide(3, 2, 3, 4)
    assert not arrowing and counterexample.find_mono_berge_clique(3) is None
    try:
        pb.ramsey_decide(5, 2, 9, 9)
    except pb.BudgetExceeded:
        pass
    else:
        raise AssertionError("budget not enforced")

    est = pb.estimate_mono_probability(7, 6, 3, 4, trials=50, seed=3)
    assert est["trials"] == 50 and est["ci_low"] <= est["fraction"] <= est["ci_high"]
    print("pyberge smoke test passed")


if __name__ == "__main__":
    main()
