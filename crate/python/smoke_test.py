"""Smoke test for the Python bindings.

Build the extension first and put it next to this file:

    cargo build --release -p ringel-hall-py
    cp target/release/libringel_hall_py.so python/ringel_hall.so
    python3 python/smoke_test.py
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import ringel_hall as rh  # noqa: E402


def main() -> None:
    f3 = rh.Field(3)
    assert f3.q == 3 and f3.mul(2, 2) == 1 and f3.inv(2) == 2

    a2 = rh.Quiver.linear_a(2)
    assert a2.is_dynkin()
    same = rh.Quiver.from_json(a2.to_json())
    assert same.digest() == a2.digest()

    reg = rh.Registry(a2, 3)
    assert len(reg) == 3
    assert sorted(reg.dims(i) for i in range(len(reg))) == [[0, 1], [1, 0], [1, 1]]

    simples = {tuple(reg.dims(i)): i for i in range(len(reg))}
    s1, s2, p = simples[(1, 0)], simples[(0, 1)], simples[(1, 1)]
    # the projective P1 is the unique nonsplit extension of S1 by S2
    assert reg.hall_number(f"{s1}*1", f"{s2}*1", f"{p}*1") == 1
    assert reg.hall_number(f"{s2}*1", f"{s1}*1", f"{p}*1") == 0
    assert reg.check_associativity(3)[1] == 0

    # one orbit of triangles k -> k -> 0 -> Tk over A1
    a1 = rh.Registry(rh.Quiver.linear_a(1), 3)
    assert a1.triangle_counts("0", "0*1", "0*1") == (2, 1)

    assert reg.bracket(f"{s1}*1", f"{s2}*1") == f"1*u[{p}*1]"
    checked, bad = reg.check_jacobi()
    assert checked == 512 and bad == 0

    report = json.loads(reg.structure_report())
    assert report["cartan_matrix"] == [[2, -1], [-1, 2]]
    assert report["total_rank"] == 8

    try:
        rh.Field(6)
    except ValueError:
        pass
    else:
        raise AssertionError("q = 6 must be rejected")

    print("smoke test passed:", reg, len(reg.bracket_table()), "nonzero brackets")


if __name__ == "__main__":
    main()
