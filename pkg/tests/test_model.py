import numpy as np
import pytest
from hypothesis import given, strategies as st

from isingdenoise import EnergyParams, SpinImage, energy, flip_delta, neighbors

from helpers import flipped, naive_energy, naive_pair_count, rand_image


@st.composite
def images(draw, max_side=10):
    w = draw(st.integers(1, max_side))
    h = draw(st.integers(1, max_side))
    spins = draw(st.lists(st.sampled_from([-1, 1]),
                          min_size=w * h, max_size=w * h))
    return SpinImage(w, h, spins)


@st.composite
def image_pairs(draw, max_side=10):
    a = draw(images(max_side))
    spins = draw(st.lists(st.sampled_from([-1, 1]),
                          min_size=a.size, max_size=a.size))
    return a, SpinImage(a.width, a.height, spins)


params_st = st.builds(
    EnergyParams,
    h=st.floats(-2, 2, allow_nan=False),
    beta=st.floats(0, 2, allow_nan=False),
    eta=st.floats(0, 2, allow_nan=False),
)


class TestSpinImage:
    def test_round_trips_through_2d_array(self):
        img = SpinImage(3, 2, [1, -1, 1, -1, 1, -1])
        assert img.to_array().shape == (2, 3)
        assert SpinImage.from_array(img.to_array()) == img

    def test_constructor_copies_input(self):
        spins = np.array([1, -1, -1, 1], dtype=np.int8)
        img = SpinImage(2, 2, spins)
        spins[0] = -1
        assert img.spins[0] == 1

    def test_equality(self):
        a = SpinImage(2, 1, [1, -1])
        assert a == SpinImage(2, 1, [1, -1])
        assert a != SpinImage(2, 1, [1, 1])
        assert a != SpinImage(1, 2, [1, -1])

    @pytest.mark.parametrize("spins", [[1, 0, 1, 1], [1, 2, 1, 1]])
    def test_rejects_non_spin_values(self, spins):
        with pytest.raises(ValueError, match="expected -1 or \\+1"):
            SpinImage(2, 2, spins)

    def test_rejects_wrong_length(self):
        with pytest.raises(ValueError, match="expected 4 spins"):
            SpinImage(2, 2, [1, 1, 1])

    @pytest.mark.parametrize("w,h", [(0, 3), (3, 0), (-1, 2)])
    def test_rejects_bad_dimensions(self, w, h):
        with pytest.raises(ValueError, match="must be positive"):
            SpinImage(w, h, [])


class TestEnergyParams:
    def test_rejects_negative_coupling(self):
        with pytest.raises(ValueError, match="beta"):
            EnergyParams(0.0, -0.1, 0.0)
        with pytest.raises(ValueError, match="eta"):
            EnergyParams(0.0, 0.0, -0.1)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError, match="finite"):
            EnergyParams(float("nan"), 0.0, 0.0)
        with pytest.raises(ValueError, match="finite"):
            EnergyParams(0.0, float("inf"), 0.0)


class TestEnergy:
    def test_2x2_all_plus_one(self):
        # 4 field spins, 4 adjacent pairs, 4 fidelity matches
        img = SpinImage(2, 2, [1, 1, 1, 1])
        p = EnergyParams(1.0, 1.0, 1.0)
        assert energy(img, img, p) == -4.0
        assert naive_energy(img, img, p) == -4.0

    def test_single_pixel_only_fidelity_term(self):
        img = SpinImage(1, 1, [1])
        assert energy(img, img, EnergyParams(0.0, 1.0, 2.0)) == -2.0

    def test_all_zero_params(self):
        rng = np.random.default_rng(0)
        x, y = rand_image(rng, 5, 4), rand_image(rng, 5, 4)
        assert energy(x, y, EnergyParams(0.0, 0.0, 0.0)) == 0.0

    def test_dimension_mismatch_names_both_shapes(self):
        x = SpinImage(2, 3, [1] * 6)
        y = SpinImage(3, 2, [1] * 6)
        with pytest.raises(ValueError, match="x is 2x3.*y is 3x2"):
            energy(x, y, EnergyParams(0.0, 0.0, 0.0))

    @given(image_pairs(), params_st)
    def test_matches_naive_enumeration(self, pair, p):
        x, y = pair
        expected = naive_energy(x, y, p)
        assert energy(x, y, p) == pytest.approx(expected, abs=1e-12 * (1 + abs(expected)))

    @given(st.integers(1, 12), st.integers(1, 12), params_st)
    def test_all_plus_one_closed_form(self, w, h, p):
        img = SpinImage(w, h, [1] * (w * h))
        pairs = w * (h - 1) + h * (w - 1)
        expected = p.h * w * h - p.beta * pairs - p.eta * w * h
        assert energy(img, img, p) == pytest.approx(expected, abs=1e-12 * (1 + abs(expected)))

    @given(st.integers(1, 12), st.integers(1, 12))
    def test_pair_count(self, w, h):
        assert naive_pair_count(w, h) == w * (h - 1) + h * (w - 1)
        # beta multiplies exactly that many +1 products on an all-ones image
        img = SpinImage(w, h, [1] * (w * h))
        assert energy(img, img, EnergyParams(0.0, 1.0, 0.0)) == -(w * (h - 1) + h * (w - 1))

    @given(image_pairs(), st.floats(0, 2, allow_nan=False))
    def test_coupling_term_invariant_under_global_flip(self, pair, beta):
        x, y = pair
        p = EnergyParams(0.0, beta, 0.0)
        flipped_x = SpinImage(x.width, x.height, -x.spins)
        flipped_y = SpinImage(y.width, y.height, -y.spins)
        assert energy(flipped_x, flipped_y, p) == energy(x, y, p)


class TestFlipDelta:
    def test_single_pixel(self):
        img = SpinImage(1, 1, [1])
        assert flip_delta(img, img, 0, EnergyParams(0.0, 0.0, 1.0)) == 2.0

    def test_zero_params_zero_delta(self):
        rng = np.random.default_rng(1)
        x, y = rand_image(rng, 4, 4), rand_image(rng, 4, 4)
        p = EnergyParams(0.0, 0.0, 0.0)
        assert all(flip_delta(x, y, i, p) == 0.0 for i in range(x.size))

    def test_2x2_corner(self):
        # recompute full energy before/after and subtract: -4 -> 0
        img = SpinImage(2, 2, [1, 1, 1, 1])
        p = EnergyParams(1.0, 1.0, 1.0)
        assert naive_energy(flipped(img, 0), img, p) - naive_energy(img, img, p) == 4.0
        assert flip_delta(img, img, 0, p) == 4.0

    def test_index_out_of_range(self):
        img = SpinImage(2, 2, [1, 1, 1, 1])
        p = EnergyParams(0.0, 0.0, 0.0)
        with pytest.raises(IndexError):
            flip_delta(img, img, 4, p)
        with pytest.raises(IndexError):
            flip_delta(img, img, -1, p)

    @given(image_pairs(), params_st, st.data())
    def test_matches_full_recomputation(self, pair, p, data):
        x, y = pair
        i = data.draw(st.integers(0, x.size - 1))
        full = energy(flipped(x, i), y, p) - energy(x, y, p)
        e = energy(x, y, p)
        assert flip_delta(x, y, i, p) == pytest.approx(full, abs=1e-12 * (1 + abs(e)))

    @given(image_pairs(), params_st, st.data())
    def test_double_flip_restores_and_cancels(self, pair, p, data):
        x, y = pair
        i = data.draw(st.integers(0, x.size - 1))
        once = flipped(x, i)
        assert flipped(once, i) == x
        d1 = flip_delta(x, y, i, p)
        d2 = flip_delta(once, y, i, p)
        assert d1 + d2 == pytest.approx(0.0, abs=1e-12 * (1 + abs(d1)))


class TestNeighbors:
    def test_interior(self):
        assert neighbors(4, 3, 3) == [1, 7, 3, 5]

    def test_corner(self):
        assert neighbors(0, 3, 3) == [3, 1]

    def test_single_pixel_has_none(self):
        assert neighbors(0, 1, 1) == []

    def test_edge_counts(self):
        counts = [len(neighbors(i, 4, 3)) for i in range(12)]
        assert sorted(set(counts)) == [2, 3, 4]
        assert counts.count(2) == 4  # corners

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            neighbors(9, 3, 3)
        with pytest.raises(ValueError):
            neighbors(0, 0, 3)
