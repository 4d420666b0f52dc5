"""Schematic annotation files: Pascal-VOC XML extended with per-object rotation and text."""
import logging
import xml.etree.ElementTree as ET
from typing import Optional, Sequence

from defusedxml import ElementTree as SafeET
from pydantic import ValidationError

from annotations.dataset import drafter_from_path
from annotations.records import ImageRecord, validate_record
from schematics.models import AnnotatedObject, BoundingBox, Category, ROTATABLE_CATEGORIES
from schematics.taxonomy import Taxonomy

logger = logging.getLogger(__name__)

ROTATION_TAGS = ('rotation', 'angle', 'orientation')
TEXT_TAGS = ('text', 'content', 'transcription')


class AnnotationParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message if line is None else f'{message} (line {line})')
        self.line = line


def _find_alias(element, tags: Sequence[str]):
    for tag in tags:
        found = element.find(tag)
        if found is not None:
            return found
    bndbox = element.find('bndbox')
    if bndbox is not None:
        for tag in tags:
            found = bndbox.find(tag)
            if found is not None:
                return found
    return None


def _required_int(element, path: str, context: str) -> int:
    node = element.find(path)
    if node is None or node.text is None:
        raise AnnotationParseError(f'{context}: missing <{path}>')
    try:
        return int(round(float(node.text.strip())))
    except ValueError:
        raise AnnotationParseError(f'{context}: <{path}> is not a number: {node.text!r}')


def parse_annotation(xml_bytes: bytes, taxonomy: Taxonomy, image_path: Optional[str] = None,
                     drafter: Optional[int] = None, rotation_tags: Sequence[str] = ROTATION_TAGS,
                     text_tags: Sequence[str] = TEXT_TAGS) -> ImageRecord:
    try:
        root = SafeET.fromstring(xml_bytes)
    except ET.ParseError as e:
        line = e.position[0] if getattr(e, 'position', None) else None
        raise AnnotationParseError(f'malformed annotation XML: {e}', line)

    if image_path is None:
        path_node = root.find('path')
        file_node = root.find('filename')
        image_path = (path_node.text if path_node is not None and path_node.text else
                      file_node.text if file_node is not None and file_node.text else '')
    width = _required_int(root, 'size/width', 'annotation')
    height = _required_int(root, 'size/height', 'annotation')
    if drafter is None:
        drafter = drafter_from_path(image_path)

    objects = []
    for object_id, element in enumerate(root.iter('object')):
        context = f'object {object_id}'
        name_node = element.find('name')
        if name_node is None or not (name_node.text or '').strip():
            raise AnnotationParseError(f'{context}: missing <name>')
        cls = taxonomy.object_class(name_node.text.strip())
        bbox_values = [_required_int(element, f'bndbox/{tag}', context) for tag in ('xmin', 'ymin', 'xmax', 'ymax')]

        rotation = None
        rotation_node = _find_alias(element, rotation_tags)
        if rotation_node is not None and (rotation_node.text or '').strip():
            try:
                rotation = float(rotation_node.text.strip())
            except ValueError:
                raise AnnotationParseError(f'{context}: rotation is not a number: {rotation_node.text!r}')
            if cls.category not in ROTATABLE_CATEGORIES:
                logger.warning(f'parse_annotation:: {image_path} {context} ({cls.name}) carries a rotation, ignored')
                rotation = None

        text = None
        text_node = _find_alias(element, text_tags)
        if text_node is not None and text_node.text is not None:
            if cls.category == Category.TEXT:
                text = text_node.text
            else:
                logger.warning(f'parse_annotation:: {image_path} {context} ({cls.name}) carries a text, ignored')

        try:
            objects.append(AnnotatedObject(id=object_id, bbox=BoundingBox.of(*bbox_values), cls=cls,
                                           rotation=rotation, text=text))
        except ValidationError as e:
            raise AnnotationParseError(f'{context}: invalid object: {e.errors()[0]["msg"]}')

    record = ImageRecord(image_path=image_path, drafter=drafter, width=width, height=height, objects=objects)
    return validate_record(record)


def write_annotation(record: ImageRecord) -> bytes:
    root = ET.Element('annotation')
    ET.SubElement(root, 'filename').text = record.image_path.rsplit('/', 1)[-1]
    ET.SubElement(root, 'path').text = record.image_path
    size = ET.SubElement(root, 'size')
    ET.SubElement(size, 'width').text = str(record.width)
    ET.SubElement(size, 'height').text = str(record.height)
    ET.SubElement(size, 'depth').text = '3'
    for obj in sorted(record.objects, key=lambda o: o.id):
        element = ET.SubElement(root, 'object')
        ET.SubElement(element, 'name').text = obj.cls.name
        bndbox = ET.SubElement(element, 'bndbox')
        for tag, value in zip(('xmin', 'ymin', 'xmax', 'ymax'), obj.bbox.as_tuple()):
            ET.SubElement(bndbox, tag).text = str(value)
        if obj.rotation is not None:
            ET.SubElement(bndbox, 'rotation').text = f'{obj.rotation:g}'
        if obj.text is not None:
            ET.SubElement(element, 'text').text = obj.text
    ET.indent(root)
    return ET.tostring(root, encoding='utf-8', xml_declaration=True)
