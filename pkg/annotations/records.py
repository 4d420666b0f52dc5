from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field

from schematics.models import AnnotatedObject, BitMap


class AnnotationValidationError(ValueError):
    def __init__(self, message: str, object_ids: List[int]):
        super().__init__(message)
        self.object_ids = object_ids


class ImageRecord(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    image_path: str
    drafter: Optional[int] = Field(default=None, ge=1)
    width: int = Field(gt=0)
    height: int = Field(gt=0)
    objects: List[AnnotatedObject] = []
    segmap: Optional[BitMap] = None

    def object_by_id(self, object_id: int) -> AnnotatedObject:
        for obj in self.objects:
            if obj.id == object_id:
                return obj
        raise KeyError(object_id)


def validate_record(record: ImageRecord) -> ImageRecord:
    offending = [o.id for o in record.objects if o.bbox.xmax > record.width or o.bbox.ymax > record.height]
    if offending:
        raise AnnotationValidationError(
            f'{record.image_path}: boxes outside the {record.width}x{record.height} image for objects {offending}',
            offending)
    ids = [o.id for o in record.objects]
    duplicates = sorted({i for i in ids if ids.count(i) > 1})
    if duplicates:
        raise AnnotationValidationError(f'{record.image_path}: duplicate object ids {duplicates}', duplicates)
    if record.segmap is not None and (record.segmap.width, record.segmap.height) != (record.width, record.height):
        raise AnnotationValidationError(
            f'{record.image_path}: segmentation map is {record.segmap.width}x{record.segmap.height}, '
            f'image is {record.width}x{record.height}', [])
    return record
