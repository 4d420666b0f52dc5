import pytest

from annotations.interchange import InterchangeSchemaError, read_perception, write_perception
from annotations.records import AnnotationValidationError, ImageRecord
from annotations.voc import AnnotationParseError, parse_annotation, write_annotation
from schematics.models import AnnotatedObject, BoundingBox, Category, ROTATABLE_CATEGORIES

pytestmark = pytest.mark.unit

SAMPLE = b"""<?xml version="1.0"?>
<annotation>
  <filename>C12_D1_P2.jpg</filename>
  <path>/data/drafter_3/images/C12_D1_P2.jpg</path>
  <size><width>400</width><height>300</height><depth>3</depth></size>
  <object>
    <name>resistor</name>
    <bndbox><xmin>170</xmin><ymin>35</ymin><xmax>230</xmax><ymax>65</ymax><rotation>360</rotation></bndbox>
  </object>
  <object>
    <name>text</name>
    <bndbox><xmin>185</xmin><ymin>10</ymin><xmax>215</xmax><ymax>25</ymax><rotation>90</rotation></bndbox>
    <text>100k</text>
  </object>
  <object>
    <name>junction</name>
    <bndbox><xmin>54</xmin><ymin>44</ymin><xmax>66</xmax><ymax>56</ymax></bndbox>
  </object>
</annotation>
"""


class TestParseAnnotation:
    """Reading dataset annotation files."""

    def test_parses_objects_in_file_order(self, taxonomy):
        record = parse_annotation(SAMPLE, taxonomy)
        assert (record.width, record.height, record.drafter) == (400, 300, 3)
        assert [o.id for o in record.objects] == [0, 1, 2]
        resistor, text, junction = record.objects
        assert resistor.rotation == 0.0
        assert text.category == Category.TEXT and text.text == '100k' and text.rotation == 90.0
        assert junction.category == Category.JUNCTION and junction.rotation is None

    def test_rotation_on_junction_is_dropped(self, taxonomy, caplog):
        data = SAMPLE.replace(b'<xmax>66</xmax><ymax>56</ymax>', b'<xmax>66</xmax><ymax>56</ymax><angle>45</angle>')
        record = parse_annotation(data, taxonomy)
        assert record.objects[2].rotation is None
        assert 'carries a rotation' in caplog.text

    def test_malformed_xml_reports_line(self, taxonomy):
        with pytest.raises(AnnotationParseError) as error:
            parse_annotation(b'<annotation>\n<size>\n</annotation>', taxonomy)
        assert error.value.line is not None

    @pytest.mark.parametrize("old, new", [
        (b'<name>resistor</name>', b''),
        (b'<xmin>170</xmin>', b''),
        (b'<xmin>170</xmin>', b'<xmin>abc</xmin>'),
        (b'<width>400</width>', b''),
    ])
    def test_missing_or_invalid_fields(self, taxonomy, old, new):
        with pytest.raises(AnnotationParseError):
            parse_annotation(SAMPLE.replace(old, new, 1), taxonomy)

    def test_box_outside_image(self, taxonomy):
        with pytest.raises(AnnotationValidationError) as error:
            parse_annotation(SAMPLE.replace(b'<xmax>230</xmax>', b'<xmax>430</xmax>'), taxonomy)
        assert error.value.object_ids == [0]

    def test_write_then_parse_keeps_objects(self, taxonomy):
        record = parse_annotation(SAMPLE, taxonomy)
        again = parse_annotation(write_annotation(record), taxonomy)
        assert again.objects == record.objects
        assert again.image_path == record.image_path


class TestPerceptionInterchange:
    """The JSON injection point for external detectors."""

    def test_round_trip(self, taxonomy):
        record = parse_annotation(SAMPLE, taxonomy)
        again = read_perception(write_perception(record), taxonomy)
        assert again.objects == record.objects
        assert again.drafter == 3

    def test_output_is_canonical(self, taxonomy):
        record = parse_annotation(SAMPLE, taxonomy)
        assert write_perception(record) == write_perception(read_perception(write_perception(record), taxonomy))

    @pytest.mark.parametrize("document, path", [
        (b'{"image": "a.png", "width": 10, "height": 10}', ''),
        (b'{"image": "a.png", "width": 10, "height": 10, "objects": [{"id": 0, "class": "resistor"}]}', 'objects/0'),
        (b'{"image": "a.png", "width": 10, "height": 10, "objects": [{"id": 0, "class": "resistor", '
         b'"bbox": [0, 0, 5]}]}', 'objects/0/bbox'),
        (b'{"image": "a.png", "width": 10, "height": 10, "objects": [{"id": 0, "class": "resistor", '
         b'"bbox": [5, 0, 5, 5]}]}', 'objects/0/bbox'),
        (b'{"image": "a.png", "width": 10, "height": 10, "objects": [{"id": 0, "class": "resistor", '
         b'"bbox": [0, 0, 5, 5], "confidence": 2}]}', 'objects/0/confidence'),
    ])
    def test_schema_violations_name_the_path(self, taxonomy, document, path):
        with pytest.raises(InterchangeSchemaError) as error:
            read_perception(document, taxonomy)
        assert error.value.path == path

    def test_not_json(self, taxonomy):
        with pytest.raises(InterchangeSchemaError):
            read_perception(b'not json', taxonomy)

    def test_random_records_survive_a_round_trip(self, taxonomy, rng):
        classes = ['resistor', 'capacitor.unpolarized', 'diode', 'text', 'junction', 'crossover', 'terminal']
        for _ in range(20):
            objects = []
            for object_id in rng.permutation(40)[:rng.integers(0, 12)]:
                name = classes[rng.integers(len(classes))]
                cls = taxonomy.object_class(name)
                x, y = int(rng.integers(0, 500)), int(rng.integers(0, 300))
                box = BoundingBox.of(x, y, x + int(rng.integers(1, 100)), y + int(rng.integers(1, 100)))
                rotation = float(rng.uniform(0, 360)) if cls.category in ROTATABLE_CATEGORIES else None
                text = ''.join(rng.choice(list('0123456789kΩµRCV'), size=rng.integers(1, 6))) \
                    if cls.category == Category.TEXT else None
                confidence = None if rng.random() < 0.3 else float(rng.random())
                objects.append(AnnotatedObject(id=int(object_id), bbox=box, cls=cls, rotation=rotation, text=text,
                                               confidence=confidence))
            record = ImageRecord(image_path='random.png', width=600, height=400, objects=objects,
                                 drafter=int(rng.integers(1, 30)))

            again = read_perception(write_perception(record), taxonomy)

            assert again.objects == sorted(record.objects, key=lambda o: o.id)
            assert (again.width, again.height, again.drafter) == (600, 400, record.drafter)


class TestMisplacedOptionals:
    """Rotation and text on objects that cannot carry them are dropped the same way in XML and JSON."""

    def test_rotation_on_junction(self, taxonomy, caplog):
        xml = SAMPLE.replace(b'<xmax>66</xmax><ymax>56</ymax>', b'<xmax>66</xmax><ymax>56</ymax><rotation>45</rotation>')
        document = (b'{"image": "a.png", "width": 400, "height": 300, "objects": '
                    b'[{"id": 0, "class": "junction", "bbox": [54, 44, 66, 56], "rotation": 45}]}')

        from_xml = parse_annotation(xml, taxonomy).objects[2]
        from_json = read_perception(document, taxonomy).objects[0]

        assert from_xml.rotation is None and from_json.rotation is None
        assert from_xml.bbox == from_json.bbox
        assert 'read_perception:: a.png objects/0 (junction) carries a rotation' in caplog.text

    def test_text_on_symbol(self, taxonomy, caplog):
        xml = SAMPLE.replace(b'<rotation>360</rotation></bndbox>', b'<rotation>360</rotation></bndbox><text>R1</text>')
        document = (b'{"image": "a.png", "width": 400, "height": 300, "objects": '
                    b'[{"id": 0, "class": "resistor", "bbox": [170, 35, 230, 65], "rotation": 0, "text": "R1"}]}')

        from_xml = parse_annotation(xml, taxonomy).objects[0]
        from_json = read_perception(document, taxonomy).objects[0]

        assert from_xml.text is None and from_json.text is None
        assert from_xml.rotation == from_json.rotation == 0.0
        assert 'read_perception:: a.png objects/0 (resistor) carries a text' in caplog.text
