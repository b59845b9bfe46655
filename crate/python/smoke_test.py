"""Smoke test for the trishare Python module."""

import math

import trishare

LOG6 = math.log2(6)


def main():
    fams = trishare.families()
    assert len(fams) == 21
    assert sum(f.size for f in fams) == 255

    corner = trishare.Domain(["000", "001", "010", "100"])
    assert corner.family() == 11 and len(corner) == 4

    s = trishare.Scheme.canonical(5)
    report = s.verify()
    assert report.passed, report.counterexample
    assert abs(s.randomness_bits - LOG6) < 1e-12

    leak = trishare.Scheme.canonical(3, trishare.Domain(["000", "011", "101", "110"]))
    assert leak.verify().passed

    sweep = trishare.sweep(11)
    values = [v for _, v in sweep]
    assert values == sorted(values) and abs(values[-1] - LOG6) < 1e-3

    assert trishare.preset_bound(13) is None
    assert abs(trishare.preset_bound(21) - 3.0) < 1e-3

    hard = trishare.Domain(["000", "001", "010", "111"])
    assert not trishare.search(hard, 5).feasible
    witness = trishare.search(hard, 6)
    assert witness.feasible and witness.witness.count("\n") == 4
    assert abs(trishare.certified_lower_bound(hard) - LOG6) < 1e-12

    try:
        trishare.search(trishare.Domain(["000", "010", "100", "101"]), 7, max_nodes=5)
    except RuntimeError:
        pass
    else:
        raise AssertionError("budget overrun should raise")

    pmf = "axes X:0,1 Y:0,1\n0 0 1/3\n0 1 1/3\n1 1 1/3\n"
    assert abs(trishare.residual_information(pmf, "X", "Y") - 0.251629) < 1e-6
    assert abs(trishare.entropy(pmf, ["X", "Y"]) - math.log2(3)) < 1e-12

    print("smoke test passed")


if __name__ == "__main__":
    main()
