"""Smoke test for the compiled extension.

Build with `cargo build -p frieze-py --release`, then run this script; it copies
the shared library next to itself as `frieze.so` when no importable module exists.
"""
import glob
import os
import shutil
import sys

HERE = os.path.dirname(os.path.abspath(__file__))


def load():
    target = os.path.join(HERE, "frieze.so")
    if not os.path.exists(target):
        root = os.path.dirname(HERE)
        built = sorted(
            glob.glob(os.path.join(root, "target", "*", "libfrieze.so")),
            key=os.path.getmtime,
        )
        if not built:
            sys.exit("build the extension first: cargo build -p frieze-py --release")
        shutil.copy(built[-1], target)
    sys.path.insert(0, HERE)
    import frieze

    return frieze


def main():
    frieze = load()

    hexagon = frieze.PolygonTriangulation.fan(6, 0)
    f = hexagon.frieze()
    assert f.kind == "A" and f.period == 6
    assert f.rows[0] == hexagon.quiddity()
    assert f.is_valid()

    mutated = hexagon.mutate(0, 3)
    assert mutated.equivalent(hexagon.flip(0, 3).frieze())
    assert frieze.Frieze.from_json(mutated.to_json()) == mutated

    square = frieze.PuncturedTriangulation(4, ["radius:0", "radius:2", "peripheral:0,2", "peripheral:2,0"])
    d = square.frieze()
    assert d.kind == "D" and d.is_valid()
    for arc in square.arcs:
        assert square.mutate(arc).equivalent(square.flip(arc).frieze())

    try:
        frieze.PuncturedTriangulation(4, ["radius:0", "loop:0", "peripheral:0,2", "peripheral:2,0"]).mutate("radius:0")
    except ValueError as e:
        assert "self-folded" in str(e)
    else:
        raise AssertionError("self-folded radius accepted")

    checks, failures = frieze.verify("punctured-disk", 4)
    assert checks > 0 and failures == 0

    lo, hi, step, strip = 1, 119, 0, []
    while hi - lo >= 2:
        strip.append((lo, hi))
        if step % 2 == 0:
            lo += 1
        else:
            hi -= 1
        step += 1
    zigzag = frieze.PolygonTriangulation(120, strip).frieze()
    assert zigzag.is_valid()
    assert max(max(r) for r in zigzag.rows) > 2**64
    print(f.render())
    print("smoke test passed")


if __name__ == "__main__":
    main()
