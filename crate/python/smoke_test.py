"""Smoke test for the Python bindings.

Build and install first, e.g. `maturin develop -m crates/python/Cargo.toml`.
"""

import pathlib
import random

import sudoku_scramble as ss

KEY = "B697F2703EA4347A85D997FB18A1FC3CE7E6901B6A9AE5EA"
FIXTURE = pathlib.Path(__file__).resolve().parent.parent / "crates/core/tests/data/cameraman_256.pgm"


def main():
    key = ss.Key(KEY)
    assert key.hex == KEY and key.subkey(1) == 0xB6 and len(bytes(key)) == 24
    assert ss.Key.from_bytes(bytes(key)) == key

    rng = random.Random(1)
    for depth in (1, 8, 16, 24):
        img = ss.Image(33, 20, depth, [rng.getrandbits(depth) for _ in range(33 * 20)])
        y = ss.scramble(img, key)
        assert y != img and ss.descramble(y, key) == img

    photo = ss.Image.from_pnm(FIXTURE.read_bytes())
    assert photo.to_pnm() == FIXTURE.read_bytes()
    scrambler = ss.Scrambler(key)
    assert scrambler.sudoku_size(photo.height, photo.width) == (256, 16)
    y = scrambler.scramble(photo)
    assert scrambler.descramble(y) == photo
    g = ss.gdd(photo, y)
    rho, t, dof, p = ss.correlation_test(y, "vertical")
    assert g > 0.9 and abs(rho) < 0.01 and dof == 65534 and 0.0 <= p <= 1.0
    print(f"GDD {g:.4f}, vertical rho {rho:+.4f}, P {p:.3f}")

    assert abs(ss.t_statistic(-0.0021, 65536) + 0.5376) < 0.01
    assert ss.p_value(0.0, 10.0) == 1.0

    rows = ss.generate_sudoku(7, 3)
    assert ss.validate_sudoku(rows, 3) is None
    rows[0][0], rows[0][1] = rows[0][1], rows[0][0]
    assert ss.validate_sudoku(rows, 3)[0] == "column"

    perm = ss.extract_permutation(key, 16, 16)
    assert sorted(perm) == list(range(256))

    try:
        ss.scramble(ss.Image(8, 8, 8, [0] * 64), key)
    except ss.ScrambleError as e:
        assert "too small" in str(e)
    else:
        raise AssertionError("small image accepted")
    print("python smoke test passed")


if __name__ == "__main__":
    main()
