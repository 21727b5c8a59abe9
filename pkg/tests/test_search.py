import pytest

from smallcovers.search import Option, SearchExhausted, all_faces, solve_binary_csp


def test_all_faces():
    assert len(all_faces([frozenset("abc")])) == 7
    assert Option("x", frozenset(), frozenset()).weight == 0


def test_csp_colouring():
    # 3-colour a 4-cycle; values tried in sorted order
    doms = {v: [0, 1, 2] for v in "abcd"}
    bad = {}
    for x, y in ["ab", "bc", "cd", "da"]:
        for c in range(3):
            bad.setdefault((x, c), set()).add((y, c))
            bad.setdefault((y, c), set()).add((x, c))
    sol = solve_binary_csp(doms, bad)
    assert all(sol[x] != sol[y] for x, y in ["ab", "bc", "cd", "da"])
    assert solve_binary_csp(doms, bad) == sol


def test_csp_infeasible_and_budget():
    doms = {v: [0, 1] for v in "abc"}
    bad = {}
    for x, y in ["ab", "bc", "ca"]:
        for c in range(2):
            bad.setdefault((x, c), set()).add((y, c))
            bad.setdefault((y, c), set()).add((x, c))
    with pytest.raises(SearchExhausted):
        solve_binary_csp(doms, bad)
    with pytest.raises(SearchExhausted) as e:
        solve_binary_csp(doms, bad, budget=1)
    assert "budget" in str(e.value)
