import traceback


def error_dict(message: str, ex: Exception, **context):
    """JSON-ready failure record; `context` keys (image stem, stage, ...) are copied in as is."""
    return {
        'message': message,
        'error_type': type(ex).__name__,
        'error': traceback.format_exception_only(type(ex), ex)[-1].strip(),
        'traceback': traceback.format_exception(type(ex), ex, ex.__traceback__),
        **context,
    }
