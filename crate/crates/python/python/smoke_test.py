"""Smoke test for the pyliecorr extension module."""

import sys

import pyliecorr as lc


def main():
    x = lc.LieElement.generator(2, 3, 0)
    y = lc.LieElement.generator(2, 3, 1)
    z = lc.bch(x, y)
    coords = dict((tuple(w), c) for w, c in z.coords())
    assert coords[(0,)] == "1" and coords[(1,)] == "1", coords
    assert coords[(0, 1)] == "1/2", coords
    assert coords[(0, 0, 1)] == "1/12", coords

    s = lc.Series(2, 3, [([0, 1], "1"), ([1, 0], "-1")])
    assert lc.LieElement.from_series(s) == x.bracket(y)
    g = (x.to_series() + s).exp()
    assert g.log() == x.to_series() + s
    assert g.power("-1/2").power("-2") == g

    factors = lc.collect(g)
    assert lc.expand(factors, 2, 3) == g
    assert lc.Series.parse(g.to_json()) == g

    try:
        lc.LieElement.from_series(lc.Series(2, 3, [([0, 1], "1")]))
    except lc.LiecorrError:
        pass
    else:
        raise AssertionError("non-Lie series accepted")

    assert [len(w) for w in lc.lyndon_words(2, 4)] == [1, 1, 2, 3, 3, 4, 4, 4]
    assert lc.verify_hall_petresco(3, 3)

    h = lc.Algebra.builtin("heisenberg")
    assert h.dimension == 3 and h.nilpotency_class == 2
    assert h.bracket(["1", "0", "0"], ["0", "1", "0"]) == ["0", "0", "1"]
    assert h.round_trip()
    f = lc.solve_group_equation(h, [["1", "0", "0"], ["0", "1", "0"]], ["1", "1"])
    assert f == ["-1/2", "-1/2", "0"], f

    passed, failed, _ = lc.run_suite("bch", seed=1, cases=10)
    assert failed == 0 and passed > 0
    print("pyliecorr smoke test ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
