"""Hypothesis strategies for exact points."""

from fractions import Fraction

from hypothesis import strategies as st


def rationals(lo=0, hi=Fraction(1, 2), max_den=40):
    lo, hi = Fraction(lo), Fraction(hi)
    return st.integers(1, max_den).flatmap(
        lambda d: st.integers(int(lo * d) + (lo * d != int(lo * d)), int(hi * d)).map(lambda k: Fraction(k, d))
    )


@st.composite
def delta_points(draw, max_den=40):
    """(a, b, c) with 0 <= c <= b <= a <= 1/2."""
    v = sorted((draw(rationals(max_den=max_den)) for _ in range(3)), reverse=True)
    return tuple(v)


@st.composite
def surface_points(draw, n=4, max_den=12):
    """A point on the boundary of the unit n-cube."""
    coords = [draw(rationals(0, 1, max_den)) for _ in range(n)]
    axis = draw(st.integers(0, n - 1))
    coords[axis] = Fraction(draw(st.integers(0, 1)))
    return tuple(coords)


# Sampling boxes (a, b, c ranges) for the thin regions; rejection inside them.
_REGION_BOXES = {
    "D12": ((Fraction(40, 100), Fraction(1, 2)), (Fraction(27, 100), Fraction(47, 100)), (Fraction(95, 1000), Fraction(103, 1000))),
    "D22B": ((Fraction(37, 100), Fraction(1, 2)), (Fraction(26, 100), Fraction(1, 2)), (Fraction(8, 100), Fraction(104, 1000))),
    "D21": ((Fraction(0), Fraction(1, 2)), (Fraction(0), Fraction(34, 100)), (Fraction(0), Fraction(105, 1000))),
    "D22A": ((Fraction(0), Fraction(1, 2)), (Fraction(0), Fraction(45, 100)), (Fraction(0), Fraction(105, 1000))),
    "D31": ((Fraction(0), Fraction(1, 2)), (Fraction(0), Fraction(19, 100)), (Fraction(0), Fraction(9, 100))),
    "D32A": ((Fraction(0), Fraction(1, 2)), (Fraction(0), Fraction(43, 100)), (Fraction(0), Fraction(9, 100))),
    "D32B": ((Fraction(0), Fraction(1, 2)), (Fraction(0), Fraction(1, 2)), (Fraction(0), Fraction(9, 100))),
    "D33": ((Fraction(0), Fraction(1, 2)), (Fraction(0), Fraction(1, 2)), (Fraction(0), Fraction(9, 100))),
}
_FULL = ((Fraction(0), Fraction(1, 2)),) * 3


def sample_region(tag, count, rng, den=10_000, tries=200_000):
    """Random rational points (a, b, c) whose region tag is ``tag``."""
    from cubefar.regions import classify_delta

    box = _REGION_BOXES.get(tag, _FULL)
    out = []
    for _ in range(tries):
        a, b, c = (Fraction(rng.randint(int(lo * den), int(hi * den)), den) for lo, hi in box)
        if not c <= b <= a:
            continue
        if classify_delta((a, b, c)).tag == tag:
            out.append((a, b, c))
            if len(out) == count:
                return out
    raise RuntimeError(f"only {len(out)} samples of {tag}")


def sample_window(window, count, rng, den=100_000, tries=500_000):
    """Random rational points inside one descent hypothesis window."""
    from cubefar.farthest import SMALL_A, SMALL_C, descent_windows

    out = []
    for _ in range(tries):
        a = Fraction(rng.randint(1, int(SMALL_A * den) - 1), den)
        c = Fraction(rng.randint(1, min(int(SMALL_C * den) - 1, a.numerator * den // a.denominator)), den)
        b = Fraction(rng.randint(int(c * den), int(a * den)), den)
        if window in descent_windows((a, b, c)):
            out.append((a, b, c))
            if len(out) == count:
                return out
    raise RuntimeError(f"only {len(out)} samples in window {window}")
