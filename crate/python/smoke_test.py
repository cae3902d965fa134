#!/usr/bin/env python3
"""Smoke test for the ncprob_py extension module.

Build the module first:

    cargo build -p ncprob-py --release

then run this script from the repository root:

    python3 python/smoke_test.py
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path


def load_module():
    root = Path(__file__).resolve().parent.parent
    candidates = [
        root / "target" / "release" / "libncprob_py.so",
        root / "target" / "debug" / "libncprob_py.so",
        root / "target" / "release" / "libncprob_py.dylib",
        root / "target" / "debug" / "libncprob_py.dylib",
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("ncprob_py not built; run `cargo build -p ncprob-py --release` first")
    staging = Path(tempfile.mkdtemp(prefix="ncprob_py_"))
    shutil.copy(built, staging / "ncprob_py.so")
    sys.path.insert(0, str(staging))
    import ncprob_py

    return ncprob_py


def main():
    nc = load_module()

    # Lattice counts and the crossing test.
    assert nc.nc_count(4) == 14
    assert nc.nc_count(6) == 132
    parts = nc.enumerate_nc(3)
    assert len(parts) == 5 and "1,3/2" in parts
    assert not nc.is_noncrossing("1,3/2,4")
    assert nc.is_noncrossing("1,4/2,3")
    assert nc.moebius_whole_lattice(3) == 2
    assert nc.moebius_whole_lattice(4) == -5

    # Geodesic embedding round trip.
    image = nc.nc_to_permutation("1,3/2/4")
    assert image == "3,2,1,4"
    assert nc.permutation_to_nc(image) == "1,3/2/4"
    assert nc.permutation_to_nc("3,4,1,2") is None
    assert nc.cayley_distance("1,2,3,4", "2,3,4,1") == 3

    # Exact cumulant transforms.
    bernoulli = ["1/2", "1/2", "1/2"]
    assert nc.free_cumulants_from_moments(bernoulli) == ["1/2", "1/4", "0"]
    assert nc.free_cumulants_via_inversion(bernoulli) == ["1/2", "1/4", "0"]
    assert nc.moments_from_cumulants(["1/2", "1/4", "0"], "free") == bernoulli
    assert nc.classical_cumulants_from_moments(["0", "1", "0", "3"]) == ["0", "1", "0", "0"]

    # Free convolution: the projection-sum law, then compression.
    law = nc.law_moments("bernoulli:0.5:0:1", 4)
    conv = nc.free_convolve(law, law)
    assert conv == ["1", "3/2", "5/2", "35/8"]
    assert nc.law_moments("arcsine02", 4) == conv
    pm1 = nc.law_moments("pm1", 4)
    assert nc.free_compress(pm1, "1/2") == ["0", "1/2", "0", "3/8"]
    assert nc.dilate(["0", "1"], "2") == ["0", "4"]

    # Mixed moments of a free family: tau(ab) = tau(a) tau(b).
    a = ["1/2", "2/3"]
    b = ["1/3", "7/5"]
    assert nc.free_mixed_moment([a, b], [1, 2]) == "1/6"

    # Young diagram analytics (reference diagram).
    assert nc.interlacing([3, 2, 2, 1]) == ([-3, -1, 2, 4], [-2, 1, 3])
    weights = dict(nc.transition_measure([3, 2, 2, 1]))
    assert weights == {"-3": "12/35", "-1": "4/15", "2": "2/15", "4": "9/35"}
    assert nc.diagram_free_cumulants([3, 2, 2, 1], 3) == ["0", "8", "8"]
    value, exponent = nc.character_estimate([3, 2, 2, 1], {2: 1})
    assert value == "1/8" and abs(exponent + 1.5) < 1e-12
    assert nc.mn_character([2, 1], {2: 1}) == "0"
    assert nc.mn_character([6], {3: 1}) == "1"
    assert nc.balanced_check([4, 4, 4, 4], 1.5)
    assert not nc.balanced_check([6], 1.0)

    # Induction: box x box decomposes into (2) + (1,1), prediction exact.
    decomposition = nc.induced_decomposition([1], [1])
    assert sorted(decomposition) == [([1, 1], 1), ([2], 1)]
    assert nc.induce_shape_prediction([1], [1], 4) == ["0", "2", "0", "6"]
    defect, scale = nc.factorization_defect([8], {2: 1}, {2: 1})
    assert defect == 0.0 and abs(scale - 8.0 ** -2) < 1e-15

    # Monte Carlo layer: deterministic, unitary, and close to predictions.
    assert nc.haar_unitarity_residual(40, 3) < 1e-10
    spectrum = nc.spectrum_of_law("proj:0.5", 8)
    assert sorted(spectrum) == [0.0] * 4 + [1.0] * 4

    first = nc.sum_experiment("pm1", "pm1", 64, 4, 99)
    second = nc.sum_experiment("pm1", "pm1", 64, 4, 99)
    assert first["eigenvalues"] == second["eigenvalues"]
    assert first["predicted"] == [0.0, 2.0, 0.0, 6.0]
    (m2, se2) = first["empirical"][1]
    assert abs(m2 - 2.0) < max(5 * se2, 0.1), (m2, se2)

    corner = nc.submatrix_experiment("pm1", "1/2", 64, 10, 5)
    assert corner["corner_dim"] == 32
    assert corner["predicted"] == [0.0, 0.5, 0.0, 0.375]

    rows = nc.entry_cumulant_experiment("pm1", 50, 2, 2000, 11)
    (order2, c2, se_c2, _a1, _a2) = rows[1]
    assert order2 == 2
    scaled = c2 * 51 / 2500
    assert abs(scaled - 1.0) < 0.15, scaled

    # Exceptions surface as ValueError.
    try:
        nc.law_moments("nonsense:1", 3)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError for an unknown law")

    print("ncprob_py smoke test: all checks passed")


if __name__ == "__main__":
    main()
