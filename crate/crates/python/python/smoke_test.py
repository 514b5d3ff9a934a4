"""Smoke test for the xhomotopy extension module."""

import json

import xhomotopy as xh

EX42 = """vertex a
vertex b
vertex c
vertex d
vertex e
edge d a
edge a c
edge c e
edge e d
edge c b
"""

WHEEL = "\n".join(
    ["vertex " + v for v in "abcdex"]
    + ["edge %s %s" % (u, v) for u, v in zip("abcde", "bcdea")]
    + ["edge x " + v for v in "abcde"]
)


def main():
    g = xh.Graph.parse(EX42)
    assert g.order == 5
    assert xh.normalize(g, "a,c,b,c,e") == "a,c,e"

    d = xh.walks_homotopic(g, "a,c,b,c,e", "a,d,e")
    assert d.verdict == "Equal", d.text
    assert json.loads(d.json)["verdict"] == "Equal"

    ident = {v: v for v in "abcde"}
    fold = dict(ident, b="a")
    assert xh.morphisms_homotopic(g, g, ident, fold).verdict == "Equal"

    stiff, folds = xh.stiff_reduce(g)
    assert stiff.order == 2 and folds == ["a -> e", "b -> e", "c -> d"]

    wheel = xh.Graph.parse(WHEEL)
    p = xh.fundamental_group(wheel, "x")
    assert (p.rank, p.torsion) == (0, ["2"]), p.text
    assert len(p.generators) == 5

    c5 = xh.Graph.parse("\n".join(["vertex %d" % i for i in range(5)] + ["edge %d %d" % (i, (i + 1) % 5) for i in range(5)]))
    vk = xh.van_kampen(c5, ["0", "1", "2"], ["2", "3", "4", "0"], "0")
    assert vk.rank == 1
    d = xh.walks_homotopic(c5, "0,1,2,3,4,0", "0,4,3,2,1,0")
    assert d.verdict == "Distinct"

    k2 = xh.Graph.parse("vertex 0\nvertex 1\nedge 0 1\n")
    p2 = xh.Graph.parse("vertex 0\nvertex 1\nvertex 2\nedge 0 1\nedge 1 2\n")
    passed, report = xh.product_check(p2, k2, 6)
    assert passed and ["0|0", "1|0"] in json.loads(report)["unreachable"]

    assert xh.hom_complex(k2, c5) == (10, 10, 0)
    assert xh.exponential_graph(k2, k2).serialize().startswith("vertex 00\n")
    passed, _ = xh.compare_hom(k2, c5)
    assert passed

    try:
        xh.exponential_graph(c5, c5, cap=1000)
    except OverflowError:
        pass
    else:
        raise AssertionError("cap not enforced")
    try:
        xh.walks_homotopic(g, "a,b", "a,b")
    except ValueError:
        pass
    else:
        raise AssertionError("invalid walk accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
