import numpy as np
import pytest
from pydantic import ValidationError

from schematics.diagnostics import DiagnosticKind, report, to_json_lines
from schematics.geometry import direction_degrees, inflate, iou, rotate_about_center
from schematics.library import LibraryEntryError, Symmetry, library_from_dict
from schematics.models import BitMap, BoundingBox, Category, Polyline, dedupe_points
from schematics.taxonomy import category_of
from tests.shared.circuits import obj

pytestmark = pytest.mark.unit


class TestBoundingBox:
    """Box validation and derived geometry."""

    @pytest.mark.parametrize("box", [(10, 10, 10, 20), (10, 10, 20, 10), (30, 0, 20, 5)])
    def test_degenerate_boxes_are_rejected(self, box):
        with pytest.raises(ValidationError):
            BoundingBox.of(*box)

    def test_negative_coordinates_are_rejected(self):
        with pytest.raises(ValidationError):
            BoundingBox.of(-1, 0, 5, 5)

    def test_geometry(self):
        box = BoundingBox.of(10, 20, 40, 60)
        assert (box.width, box.height, box.area) == (30, 40, 1200)
        assert box.center == (25.0, 40.0)
        assert box.diagonal == pytest.approx(50.0)
        assert box.contains(10, 20) and not box.contains(40, 20)

    def test_iou(self):
        a = BoundingBox.of(0, 0, 10, 10)
        assert iou(a, a) == 1.0
        assert iou(a, BoundingBox.of(5, 0, 15, 10)) == pytest.approx(50 / 150)
        assert iou(a, BoundingBox.of(10, 0, 20, 10)) == 0.0

    def test_inflate_clamps_to_image(self):
        grown = inflate(BoundingBox.of(2, 3, 10, 10), 5, bounds=(12, 12))
        assert grown.as_tuple() == (0, 0, 12, 12)

    @staticmethod
    def random_box(rng) -> BoundingBox:
        x, y = (int(v) for v in rng.integers(0, 200, size=2))
        return BoundingBox.of(x, y, x + int(rng.integers(1, 80)), y + int(rng.integers(1, 80)))

    def test_iou_is_symmetric_and_bounded(self, rng):
        for _ in range(200):
            a, b = self.random_box(rng), self.random_box(rng)
            assert iou(a, b) == iou(b, a)
            assert 0.0 <= iou(a, b) <= 1.0
            assert iou(a, a) == 1.0

    def test_inflate_by_zero_is_identity(self, rng):
        for _ in range(50):
            box = self.random_box(rng)
            assert inflate(box, 0) == box

    def test_inflate_is_monotonic(self, rng):
        for _ in range(100):
            box = self.random_box(rng)
            small, large = sorted(int(v) for v in rng.integers(0, 20, size=2))
            inner, outer = inflate(box, small, bounds=(300, 300)), inflate(box, large, bounds=(300, 300))
            assert outer.xmin <= inner.xmin <= box.xmin and outer.ymin <= inner.ymin <= box.ymin
            assert outer.xmax >= inner.xmax >= box.xmax and outer.ymax >= inner.ymax >= box.ymax


class TestAnnotatedObject:
    """Category rules on rotation and text."""

    def test_rotation_360_folds_to_zero(self):
        assert obj(0, 'resistor', (0, 0, 10, 10), rotation=360).rotation == 0.0

    def test_rotation_on_junction_is_rejected(self):
        with pytest.raises(ValidationError):
            obj(0, 'junction', (0, 0, 10, 10), rotation=90)

    def test_text_on_symbol_is_rejected(self):
        with pytest.raises(ValidationError):
            obj(0, 'resistor', (0, 0, 10, 10), text='R1')

    def test_unknown_class_defaults_to_symbol(self, taxonomy):
        assert taxonomy.object_class('flux_capacitor').category == Category.SYMBOL


class TestTaxonomy:
    """Class name to category lookup."""

    @pytest.mark.parametrize('name, category', [
        ('junction', Category.JUNCTION),
        ('crossover', Category.CROSSOVER),
        ('corner', Category.CORNER),
        ('terminal', Category.TERMINAL),
        ('text', Category.TEXT),
        ('resistor', Category.SYMBOL),
    ])
    def test_category_of(self, taxonomy, name, category):
        assert category_of(name, taxonomy) == category

    def test_unknown_name_is_logged(self, taxonomy, caplog):
        assert category_of('flux_capacitor', taxonomy) == Category.SYMBOL
        assert 'flux_capacitor' in caplog.text

    def test_bundled_size(self, taxonomy):
        assert len(taxonomy) == 59
        assert 'resistor' in taxonomy


class TestPolyline:
    """Polyline validation and helpers."""

    def test_needs_two_points(self):
        with pytest.raises(ValidationError):
            Polyline(points=[(0, 0)])

    def test_rejects_repeated_points(self):
        with pytest.raises(ValidationError):
            Polyline(points=[(0, 0), (0, 0), (5, 0)])

    def test_length_and_reverse(self):
        line = Polyline(points=[(0, 0), (3, 4), (3, 10)])
        assert line.length == pytest.approx(11.0)
        assert line.reversed().start == (3.0, 10.0)

    def test_dedupe_points(self):
        assert dedupe_points([(0, 0), (0, 0), (1, 1), (1, 1)]) == [(0.0, 0.0), (1.0, 1.0)]


class TestBitMap:
    def test_is_read_only(self):
        bitmap = BitMap(np.ones((3, 4), dtype=np.uint8))
        assert (bitmap.width, bitmap.height, bitmap.stroke_count) == (4, 3, 12)
        with pytest.raises(ValueError):
            bitmap.bits[0, 0] = False

    def test_equality_is_by_content(self):
        assert BitMap.blank(5, 5) == BitMap(np.zeros((5, 5), dtype=bool))
        assert BitMap.blank(5, 5) != BitMap.blank(5, 6)

    def test_rejects_3d_input(self):
        with pytest.raises(ValueError):
            BitMap(np.zeros((2, 2, 3)))


class TestGeometryHelpers:
    @pytest.mark.parametrize("degrees, expected", [(0, (0.0, 0.5)), (90, (0.5, 1.0)), (180, (1.0, 0.5)),
                                                   (270, (0.5, 0.0))])
    def test_rotating_the_left_port(self, degrees, expected):
        assert rotate_about_center(0.0, 0.5, degrees) == pytest.approx(expected)

    def test_direction_is_counter_clockwise_with_y_down(self):
        assert direction_degrees([(0, 0), (10, 0)]) == pytest.approx(0.0)
        assert direction_degrees([(0, 10), (0, 0)]) == pytest.approx(90.0)


class TestLibrary:
    """Symbol library loading."""

    def test_bundled_library_covers_taxonomy(self, library, taxonomy):
        assert library.missing_symbols(taxonomy) == []
        assert library.get('resistor').symmetry == Symmetry.MIRROR180
        assert [p.name for p in library.get('diode').ports] == ['anode', 'cathode']

    def test_missing_entry(self, library):
        with pytest.raises(LibraryEntryError):
            library.get('flux_capacitor')

    def test_duplicate_port_names_are_rejected(self):
        with pytest.raises(ValidationError):
            library_from_dict({'x': {'ports': [{'name': 'a', 'x': 0, 'y': 0}, {'name': 'a', 'x': 1, 'y': 1}]}})


class TestDiagnostics:
    def test_report_logs_a_warning(self, caplog):
        diagnostic = report(DiagnosticKind.DANGLING_BLOB, 'blob 3 touches 1 object(s)', blob=3, objects=[7])
        assert diagnostic.to_record() == {'kind': 'dangling-blob', 'blob': 3, 'objects': [7], 'node': None,
                                          'message': 'blob 3 touches 1 object(s)'}
        assert 'dangling-blob' in caplog.text

    def test_json_lines(self):
        lines = to_json_lines([report(DiagnosticKind.TRACE_FALLBACK, 'a'), report(DiagnosticKind.HOP_AMBIGUOUS, 'b')])
        assert lines.count(b'\n') == 2
        assert lines.startswith(b'{"blob":null')
