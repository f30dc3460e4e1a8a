"""Smoke test for the kangulate_py extension.

Build and install first:
    cd crates/python && maturin build --release -o dist && pip install dist/*.whl
"""
import random
import sys

import kangulate_py as kp


def random_points(n, rng, span=10_000):
    pts = []
    while len(pts) < n:
        p = (rng.randrange(span), rng.randrange(span))
        if p in pts:
            continue
        if any(kp.orientation(a, b, p) == 0 for i, a in enumerate(pts) for b in pts[i + 1:]):
            continue
        pts.append(p)
    return pts


def main():
    assert kp.required_j(10, 4) == 0
    assert kp.required_j(11, 4) == 1
    assert kp.orientation((0, 0), (1, 0), (0, 1)) == 1
    assert kp.orientation((0, 0), (0, 1), (1, 0)) == -1

    square = [(0, 0), (10, 0), (10, 10), (0, 10), (6, 5)]
    r = kp.kangulate(square, 4)
    assert r["feasible"] and len(r["internal_faces"]) == 2
    assert kp.verify(square, r["edges"], 4)["overall"]
    assert not kp.verify(square, r["edges"][:-1], 4)["overall"]
    assert kp.brute_force(square, 4) == "found"

    pentagon = [(0, 0), (4, -2), (8, 0), (8, 5), (4, 7)]
    assert not kp.kangulate(pentagon, 4)["feasible"]
    assert kp.brute_force(pentagon, 4) == "not_found"

    rng = random.Random(7)
    for k in (4, 5, 6):
        pts = random_points(2 * k * k + 3, rng)
        r = kp.kangulate(pts, k)
        assert r["feasible"], (k, r)
        assert all(len(f) == k for f in r["internal_faces"])
        assert kp.verify(pts, r["edges"], k)["overall"]
        assert r["svg"].startswith("<svg")

    for bad in ([(0, 0), (1, 1), (2, 2), (0, 5)], [(0, 0), (0, 0), (3, 1)]):
        try:
            kp.kangulate(bad, 4)
        except ValueError:
            pass
        else:
            raise AssertionError(bad)

    print("smoke test ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
