"""Independent reference implementations the library is checked against."""

import numpy as np

from isingdenoise import SpinImage


def naive_energy(x, y, params):
    """Term-by-term energy with explicit loops; each unordered pair once."""
    w, h = x.width, x.height
    s, t = x.spins, y.spins
    field = sum(int(v) for v in s)
    fidelity = sum(int(a) * int(b) for a, b in zip(s, t))
    pair = 0
    for r in range(h):
        for c in range(w):
            i = r * w + c
            if c + 1 < w:
                pair += int(s[i]) * int(s[i + 1])
            if r + 1 < h:
                pair += int(s[i]) * int(s[i + w])
    return params.h * field - params.beta * pair - params.eta * fidelity


def naive_pair_count(w, h):
    count = 0
    for r in range(h):
        for c in range(w):
            if c + 1 < w:
                count += 1
            if r + 1 < h:
                count += 1
    return count


def rand_image(rng, width, height):
    spins = rng.choice(np.array([-1, 1], dtype=np.int8), size=width * height)
    return SpinImage(width, height, spins)


def flipped(image, i):
    spins = image.spins.copy()
    spins[i] = -spins[i]
    return SpinImage(image.width, image.height, spins)
