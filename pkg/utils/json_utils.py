import json
from typing import Any


class SerializationError(ValueError):
    pass


def to_canonical_json(obj: Any) -> bytes:
    """Sorted keys, compact separators and raw UTF-8 so byte equality is meaningful."""
    if obj is None:
        raise SerializationError('Trying to serialize None obj')
    try:
        text = json.dumps(obj, sort_keys=True, separators=(',', ':'), ensure_ascii=False, allow_nan=False)
    except (TypeError, ValueError) as e:
        raise SerializationError(f'Error serializing object: {e}')
    return text.encode('utf-8')


def to_pretty_json(obj: Any) -> bytes:
    try:
        text = json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False)
    except (TypeError, ValueError) as e:
        raise SerializationError(f'Error serializing object: {e}')
    return (text + '\n').encode('utf-8')


def from_json(data: bytes | str) -> Any:
    try:
        if isinstance(data, bytes):
            data = data.decode('utf-8')
        return json.loads(data)
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise SerializationError(f'Error while parsing text: {e}')


def json_number(value: float) -> int | float:
    """Integral floats are emitted as JSON integers."""
    if isinstance(value, float) and value.is_integer():
        return int(value)
    return value
