import logging
from functools import wraps

import uuid

from utils.time_utils import elapsed_millis, monotonic_millis


class SingleLineFilter(logging.Filter):
    def filter(self, record):
        if isinstance(record.msg, str):
            record.msg = record.msg.replace('\n', ' ')
        return True


def log_stage(func):
    @wraps(func)
    def wrapper(*args, **kwargs):
        call_id = uuid.uuid4().hex[:8]
        # Initialize the logger inside the wrapper to get the correct module name
        logger = logging.getLogger(func.__module__)
        logger.debug(f"Call ID: {call_id} Stage '{func.__name__}' started")

        started = monotonic_millis()
        try:
            response = func(*args, **kwargs)
            logger.info(f"Call ID: {call_id} Stage '{func.__name__}' finished in {elapsed_millis(started)} ms")
            return response
        except Exception as e:
            logger.error(f"Call ID: {call_id} Stage '{func.__name__}' raised a runtime exception: {e}")
            raise e

    return wrapper
