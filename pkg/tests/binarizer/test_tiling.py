import numpy as np
import pytest

from binarizer.tiling import (Anchor, ClassifierContractError, TilingError, plan_tiles, run_tiled, segment_image,
                              threshold_map)

pytestmark = pytest.mark.unit


def constant(value):
    return lambda patch: np.full(patch.shape, value)


def brightness(patch):
    return patch / 255.0


class TestPlanTiles:
    """Tile placement for fixed-size classifiers."""

    def test_divisible_image_passes_coincide(self):
        plan = plan_tiles(512, 512, 256)
        assert plan.origins == {(0, 0), (256, 0), (0, 256), (256, 256)}
        assert all(tile.anchor == Anchor.LEFT_TOP for tile in plan.tiles)

    def test_remainder_is_closed_from_every_corner(self):
        plan = plan_tiles(300, 300, 256)
        assert plan.origins == {(0, 0), (44, 0), (0, 44), (44, 44)}
        assert plan.coverage().min() >= 1

    @pytest.mark.timeout(10)
    def test_coverage_of_random_sizes(self, rng):
        for width, height in rng.integers(256, 2049, size=(200, 2)):
            plan = plan_tiles(int(width), int(height), 256)
            assert plan.coverage().min() >= 1, (width, height)
            assert all(0 <= t.x <= width - 256 and 0 <= t.y <= height - 256 for t in plan.tiles)

    @pytest.mark.parametrize("size", [(255, 400), (400, 100)])
    def test_small_images_must_be_padded(self, size):
        with pytest.raises(TilingError, match='pad'):
            plan_tiles(*size, 256)


class TestRunTiled:
    """Merging overlapping tile predictions."""

    def test_constant_classifier(self):
        image = np.zeros((300, 300), dtype=np.uint8)
        assert np.array_equal(run_tiled(image, constant(1.0), plan_tiles(300, 300, 256)), np.ones((300, 300)))

    def test_overlap_is_averaged(self):
        calls = iter([0.0, 1.0])
        plan = plan_tiles(256, 300, 256)
        merged = run_tiled(np.zeros((300, 256)), lambda patch: np.full(patch.shape, next(calls)), plan)
        assert merged[0, 0] == 0.0
        assert merged[100, 0] == 0.5
        assert merged[299, 0] == 1.0

    @pytest.mark.parametrize("n_jobs", [None, 2])
    def test_pixelwise_classifier_equals_direct_application(self, rng, n_jobs):
        image = rng.integers(0, 256, size=(400, 530)).astype(np.uint8)
        merged = run_tiled(image, brightness, plan_tiles(530, 400, 256), n_jobs=n_jobs)
        assert np.allclose(merged, image / 255.0)

    def test_wrong_output_shape(self):
        with pytest.raises(ClassifierContractError):
            run_tiled(np.zeros((256, 256)), lambda patch: np.zeros((10, 10)), plan_tiles(256, 256, 256))

    def test_plan_must_match_image(self):
        with pytest.raises(TilingError):
            run_tiled(np.zeros((256, 300)), brightness, plan_tiles(256, 256, 256))

    def test_small_image_is_padded_and_cropped(self):
        image = np.full((40, 70), 255, dtype=np.uint8)
        assert segment_image(image, brightness, patch=64).shape == (40, 70)


class TestThresholdMap:
    def test_cutoff_is_inclusive(self):
        assert threshold_map(np.full((3, 3), 0.5)).stroke_count == 9
        assert threshold_map(np.full((3, 3), 0.49)).stroke_count == 0

    def test_matches_elementwise_comparison(self, rng):
        probabilities = rng.random((50, 60))
        bitmap = threshold_map(probabilities, 0.3)
        for y in range(50):
            for x in range(60):
                assert bitmap.bits[y, x] == (probabilities[y, x] >= 0.3)

    def test_cutoff_range(self):
        with pytest.raises(ValueError):
            threshold_map(np.zeros((2, 2)), 1.5)
