"""Perception interchange JSON: the injection point for externally produced detections."""
import logging

from jsonschema import Draft202012Validator
from pydantic import ValidationError

from annotations.records import AnnotationValidationError, ImageRecord, validate_record
from schematics.models import AnnotatedObject, BoundingBox, Category, ROTATABLE_CATEGORIES
from schematics.taxonomy import Taxonomy
from utils.json_utils import SerializationError, from_json, json_number, to_canonical_json

logger = logging.getLogger(__name__)

PERCEPTION_SCHEMA = {
    '$schema': 'https://json-schema.org/draft/2020-12/schema',
    'type': 'object',
    'required': ['image', 'width', 'height', 'objects'],
    'properties': {
        'image': {'type': 'string'},
        'width': {'type': 'integer', 'minimum': 1},
        'height': {'type': 'integer', 'minimum': 1},
        'drafter': {'type': ['integer', 'null'], 'minimum': 1},
        'objects': {
            'type': 'array',
            'items': {
                'type': 'object',
                'required': ['id', 'class', 'bbox'],
                'properties': {
                    'id': {'type': 'integer'},
                    'class': {'type': 'string', 'minLength': 1},
                    'bbox': {'type': 'array', 'items': {'type': 'integer', 'minimum': 0},
                             'minItems': 4, 'maxItems': 4},
                    'rotation': {'type': ['number', 'null']},
                    'text': {'type': ['string', 'null']},
                    'confidence': {'type': ['number', 'null'], 'minimum': 0, 'maximum': 1},
                },
                'additionalProperties': False,
            },
        },
    },
    'additionalProperties': False,
}

_validator = Draft202012Validator(PERCEPTION_SCHEMA)


class InterchangeSchemaError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f'{path or "<root>"}: {message}')
        self.path = path


def _path(parts) -> str:
    return '/'.join(str(p) for p in parts)


def read_perception(json_bytes: bytes, taxonomy: Taxonomy) -> ImageRecord:
    try:
        data = from_json(json_bytes)
    except SerializationError as e:
        raise InterchangeSchemaError('', str(e))
    errors = sorted(_validator.iter_errors(data), key=lambda err: list(map(str, err.absolute_path)))
    if errors:
        first = errors[0]
        raise InterchangeSchemaError(_path(first.absolute_path), first.message)

    objects = []
    for index, item in enumerate(data['objects']):
        path = f'objects/{index}'
        try:
            bbox = BoundingBox.of(*item['bbox'])
        except ValidationError as e:
            raise InterchangeSchemaError(f'{path}/bbox', e.errors()[0]['msg'])
        cls = taxonomy.object_class(item['class'])

        rotation, text = item.get('rotation'), item.get('text')
        if rotation is not None and cls.category not in ROTATABLE_CATEGORIES:
            logger.warning(f'read_perception:: {data["image"]} {path} ({cls.name}) carries a rotation, ignored')
            rotation = None
        if text is not None and cls.category != Category.TEXT:
            logger.warning(f'read_perception:: {data["image"]} {path} ({cls.name}) carries a text, ignored')
            text = None

        try:
            objects.append(AnnotatedObject(id=item['id'], bbox=bbox, cls=cls, rotation=rotation, text=text,
                                           confidence=item.get('confidence')))
        except ValidationError as e:
            first = e.errors()[0]
            raise InterchangeSchemaError(_path([path, *first['loc']]), first['msg'])
    try:
        return validate_record(ImageRecord(image_path=data['image'], drafter=data.get('drafter'), width=data['width'],
                                           height=data['height'], objects=objects))
    except AnnotationValidationError as e:
        raise InterchangeSchemaError('objects', str(e))


def perception_dict(record: ImageRecord) -> dict:
    data = {
        'image': record.image_path,
        'width': record.width,
        'height': record.height,
        'objects': [{
            'id': obj.id,
            'class': obj.cls.name,
            'bbox': list(obj.bbox.as_tuple()),
            'rotation': None if obj.rotation is None else json_number(obj.rotation),
            'text': obj.text,
            'confidence': obj.confidence,
        } for obj in sorted(record.objects, key=lambda o: o.id)],
    }
    if record.drafter is not None:
        data['drafter'] = record.drafter
    return data


def write_perception(record: ImageRecord) -> bytes:
    return to_canonical_json(perception_dict(record))
