"""Smoke test for the planecc_py extension module.

Build and install first: pip install --no-build-isolation ./crates/python
"""

from fractions import Fraction

import planecc_py as pc


def expect_error(code, fn, *args):
    try:
        fn(*args)
    except pc.PlaneccError as e:
        assert str(e).startswith(code + ":"), e
    else:
        raise AssertionError(f"expected {code}")


def main():
    tri = pc.Graph([(0, 0), (1, 2), (2, 1)], [(0, 1), (1, 2), (0, 2)])
    tri.validate()
    assert tri.ecc(1, 0) == [(0, 1), (2, 0)]
    assert tri.ecc("1", "1/2")[-1][1] == tri.n - tri.m

    path = pc.Graph.parse("3 2\n0 0\n1 2\n2 1\n0 1\n1 2\n")
    assert path.witnessed(1, 0) == [0]
    assert path.witnessed(0, 1) == [0, 1, 2]

    g = pc.generate(24, seed=3, forbid_deg2=True)
    got = sorted(g.reconstruct())
    assert got == sorted(g.vertices), "reconstruction differs"
    assert all(isinstance(c, Fraction) for p in got for c in p)
    assert pc.Graph.parse(g.to_text()).to_text() == g.to_text()

    opp = pc.fixture("fig3_opposite")
    info = opp.deg2(0)
    assert info["kind"] == "opposite" and info["predicted"] == info["measured"] == []
    expect_error("DEG2_PRESENT", opp.reconstruct)
    expect_error("GENERAL_POSITION", lambda: pc.Graph([(0, 0), (0, 1)]).validate())

    h = pc.generate(10, seed=1)
    plan = h.plan3n(seed=2)
    report = h.verify_plan(plan)
    assert report["passes"] and len(report["triple_points"]) == h.n
    svg = h.render_svg([d for _, ds in plan for d in ds], report["triple_points"])
    assert svg.startswith("<?xml") and "</svg>" in svg

    print("smoke test ok")


if __name__ == "__main__":
    main()
