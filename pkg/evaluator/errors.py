class UndefinedMetricError(ValueError):
    pass


class DimensionMismatchError(ValueError):
    pass
