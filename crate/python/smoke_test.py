"""Smoke test for the pyfacposet extension module."""

import pyfacposet


def main():
    assert "sym4_long_cycle" in pyfacposet.fixture_names()

    s4 = pyfacposet.Interval.fixture("sym4_long_cycle")
    assert s4.rank == 3
    assert s4.chain_count() == 16
    assert len(s4.hurwitz_orbits()) == 1
    assert s4.is_totally_chain_connected()
    assert s4.min_feedback_arc_set() == 6
    assert s4.shelling() == "shellable"
    assert len(s4.compatible_orders()) == 48

    report = s4.analyze()
    assert report["version"] == 1
    assert report["shelling"]["status"] == "shellable"

    d8 = pyfacposet.Interval.fixture("dihedral8_rt")
    assert len(d8.hurwitz_orbits()) == 2
    assert d8.compatible_orders() == []

    rrrt = pyfacposet.Interval.fixture("ex44_rrrt")
    assert rrrt.chain_count() == 32
    assert rrrt.shelling() == "not_shellable"

    s3 = pyfacposet.Interval.from_permutations(["(1 2)", "(1 3)", "(2 3)"], "(1 2 3)")
    assert s3.chain_count() == 3
    order = s3.alphabet
    assert s3.rise(order) >= 1

    b3 = pyfacposet.Interval.family("boolean", 3)
    again = pyfacposet.Interval.from_json(b3.to_json())
    assert again.node_count == b3.node_count == 8
    assert b3.to_dot("hasse").rstrip().endswith("}")

    try:
        pyfacposet.Interval.fixture("no_such_fixture")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown fixture accepted")

    try:
        pyfacposet.Interval.family("sym", 9)
    except RuntimeError:
        pass
    else:
        raise AssertionError("size cap not enforced")

    findings = pyfacposet.scan_family("sym", [3, 4])
    assert findings["candidate_count"] == 0
    print("smoke test passed")


if __name__ == "__main__":
    main()
