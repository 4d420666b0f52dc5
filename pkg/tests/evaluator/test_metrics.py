import numpy as np
import pytest

from evaluator.detection import APMode, DetectionAccumulator, average_precision, match_detections
from evaluator.errors import DimensionMismatchError, UndefinedMetricError
from evaluator.orientation import orientation_accuracy, orientation_pairs
from orientation.codec import angular_error
from evaluator.segmentation import pixel_accuracy
from evaluator.semantic import WIRE_LABEL, class_labels, synthesize_semantic_map
from evaluator.text import Vocabulary, cer, default_vocabulary, filter_texts
from annotations.records import ImageRecord
from schematics.models import BitMap
from tests.shared.circuits import obj

pytestmark = pytest.mark.unit


def edit_distance(a: str, b: str) -> int:
    rows = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        previous, rows[0] = rows[0], i
        for j, cb in enumerate(b, start=1):
            previous, rows[j] = rows[j], min(rows[j] + 1, rows[j - 1] + 1, previous + (ca != cb))
    return rows[-1]


class TestDetection:
    """Average precision over greedy IoU matches."""

    def test_hand_evaluated_precision_recall_curve(self):
        truth = [obj(0, 'resistor', (0, 0, 10, 10)), obj(1, 'resistor', (50, 50, 60, 60))]
        pred = [obj(0, 'resistor', (100, 100, 110, 110), confidence=0.95),
                obj(1, 'resistor', (0, 0, 10, 10), confidence=0.9),
                obj(2, 'resistor', (51, 50, 61, 60), confidence=0.8)]
        result = match_detections(pred, truth)
        assert result.per_class['resistor'].average_precision == pytest.approx(2 / 3)
        assert (result.per_class['resistor'].true_positives, result.per_class['resistor'].false_positives) == (2, 1)
        assert result.map == pytest.approx(2 / 3)

    def test_perfect_predictions(self):
        truth = [obj(0, 'resistor', (0, 0, 10, 10)), obj(1, 'diode', (50, 50, 60, 60))]
        assert match_detections(truth, truth).map == 1.0

    def test_no_predictions(self):
        truth = [obj(0, 'resistor', (0, 0, 10, 10)), obj(1, 'resistor', (50, 50, 60, 60))]
        result = match_detections([], truth)
        assert result.map == 0.0 and result.per_class['resistor'].false_negatives == 2

    def test_class_only_in_predictions_does_not_count(self):
        truth = [obj(0, 'resistor', (0, 0, 10, 10))]
        pred = truth + [obj(1, 'diode', (50, 50, 60, 60))]
        result = match_detections(pred, truth)
        assert result.map == 1.0 and result.per_class['diode'].false_positives == 1

    def test_each_truth_box_matches_once(self):
        truth = [obj(0, 'resistor', (0, 0, 10, 10))]
        pred = [obj(0, 'resistor', (0, 0, 10, 10), confidence=0.9), obj(1, 'resistor', (0, 0, 10, 10), confidence=0.8)]
        assert match_detections(pred, truth).per_class['resistor'].false_positives == 1

    def test_eleven_point_mode(self):
        assert average_precision([True, False], 2, APMode.ELEVEN_POINT) == pytest.approx(6 / 11)
        assert average_precision([True, False], 2, APMode.ALL_POINTS) == pytest.approx(0.5)

    def test_accumulators_merge_like_one_run(self):
        first = [obj(0, 'resistor', (0, 0, 10, 10))]
        second = [obj(0, 'resistor', (20, 20, 30, 30))]
        merged = DetectionAccumulator().add(first, first).merge(DetectionAccumulator().add([], second))
        assert merged.result().map == pytest.approx(0.5)


class TestOrientation:
    """Symmetry-aware orientation accuracy."""

    @pytest.mark.parametrize("pairs, expected", [([(93, 90, 'diode')], 1.0), ([(0, 10, 'diode'), (0, 3, 'diode')], 0.5),
                                                 ([(270, 90, 'resistor'), (270, 90, 'diode')], 0.5)])
    def test_accuracy(self, library, pairs, expected):
        assert orientation_accuracy(pairs, library) == expected

    def test_empty_is_undefined(self, library):
        with pytest.raises(UndefinedMetricError):
            orientation_accuracy([], library)

    def test_threshold_must_be_positive(self, library):
        with pytest.raises(ValueError):
            orientation_accuracy([(0, 0, 'diode')], library, threshold=0)

    @pytest.mark.parametrize("cls", ['resistor', 'diode', 'text'])
    def test_full_turns_do_not_change_the_error(self, library, rng, cls):
        for _ in range(50):
            pred, truth = (float(v) for v in rng.uniform(0, 360, size=2))
            base = angular_error(pred, truth, cls, library)
            assert angular_error(pred + 360, truth, cls, library) == pytest.approx(base, abs=1e-9)
            assert angular_error(pred, truth + 720, cls, library) == pytest.approx(base, abs=1e-9)
            assert angular_error(pred, truth, cls, library) == pytest.approx(angular_error(truth, pred, cls, library))

    def test_pairs_follow_box_overlap(self):
        truth = [obj(0, 'diode', (0, 0, 10, 10), rotation=90), obj(1, 'text', (50, 50, 60, 60), rotation=0, text='x')]
        pred = [obj(7, 'diode', (1, 0, 11, 10), rotation=85), obj(8, 'text', (50, 50, 60, 60), rotation=10, text='x'),
                obj(9, 'diode', (200, 200, 210, 210), rotation=0)]
        assert orientation_pairs(pred, truth) == [(85.0, 90.0, 'diode'), (10.0, 0.0, 'text')]
        assert orientation_pairs(pred, truth, quantize_texts=True)[1] == (0.0, 0.0, 'text')

    def test_classes_without_symmetry_are_skipped(self, library, caplog):
        truth = [obj(0, 'mystery_part', (0, 0, 10, 10), rotation=90), obj(1, 'diode', (50, 50, 60, 60), rotation=0)]
        pred = [obj(0, 'mystery_part', (0, 0, 10, 10), rotation=90), obj(1, 'diode', (50, 50, 60, 60), rotation=2)]

        pairs = orientation_pairs(pred, truth, lib=library)

        assert pairs == [(2.0, 0.0, 'diode')]
        assert orientation_accuracy(pairs, library) == 1.0
        assert 'no symmetry for class' in caplog.text


class TestText:
    """Character error rate."""

    def test_micro_sign(self):
        assert cer('10uF', '10µF') == 0.25

    def test_matches_edit_distance(self, rng):
        alphabet = list('ab1kµΩ ')
        for _ in range(500):
            pred = ''.join(rng.choice(alphabet, size=int(rng.integers(0, 8))))
            truth = ''.join(rng.choice(alphabet, size=int(rng.integers(0, 8))))
            assert cer(pred, truth) == edit_distance(pred, truth) / max(1, len(truth))

    def test_empty_truth(self):
        assert cer('abc', '') == 3.0

    def test_vocabulary(self):
        vocabulary = default_vocabulary()
        assert len(vocabulary) == 97
        assert vocabulary.covers('4.7kΩ µF')
        assert vocabulary.unknown('5€') == {'€'}
        with pytest.raises(ValueError):
            Vocabulary('aa')

    def test_long_texts_are_filtered(self):
        objects = [obj(0, 'text', (0, 0, 5, 5), text='1234567'), obj(1, 'text', (0, 0, 5, 5), text='123456'),
                   obj(2, 'resistor', (0, 0, 5, 5))]
        assert [o.id for o in filter_texts(objects)] == [1, 2]


class TestSegmentationMetrics:
    def test_pixel_accuracy(self):
        truth = np.zeros((4, 4), dtype=bool)
        pred = truth.copy()
        pred[0, :2] = True
        assert pixel_accuracy(BitMap(pred), BitMap(truth)) == 14 / 16

    def test_pixel_accuracy_is_symmetric(self, rng):
        for _ in range(20):
            a, b = (BitMap(rng.random((30, 50)) < 0.2) for _ in range(2))
            assert pixel_accuracy(a, b) == pixel_accuracy(b, a)
            assert pixel_accuracy(a, a) == 1.0
            assert 0.0 <= pixel_accuracy(a, b) <= 1.0

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            pixel_accuracy(BitMap.blank(4, 4), BitMap.blank(4, 5))

    def test_semantic_map(self, taxonomy):
        bits = np.zeros((20, 40), dtype=bool)
        bits[10, :] = True
        record = ImageRecord(image_path='x.png', width=40, height=20, segmap=BitMap(bits),
                             objects=[obj(0, 'resistor', (10, 5, 20, 15)), obj(1, 'text', (12, 8, 16, 12), text='R')])
        labels = synthesize_semantic_map(record, taxonomy)
        lookup = class_labels(taxonomy)
        assert labels[10, 0] == WIRE_LABEL
        assert labels[10, 10] == lookup['resistor']
        assert labels[10, 13] == lookup['text']
        assert labels[0, 0] == 0

    def test_semantic_map_needs_strokes(self, taxonomy):
        with pytest.raises(ValueError):
            synthesize_semantic_map(ImageRecord(image_path='x.png', width=4, height=4), taxonomy)
