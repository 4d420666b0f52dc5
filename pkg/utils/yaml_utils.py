from pathlib import Path

import yaml


class YamlLoadError(ValueError):
    pass


def load_yaml(file_path):
    """Safe-loads one YAML document; syntax errors keep the file name and position."""
    try:
        return yaml.safe_load(Path(file_path).read_text(encoding='utf-8'))
    except yaml.YAMLError as e:
        raise YamlLoadError(f'{file_path}: {e}') from e
