import time


def monotonic_millis() -> float:
    """Milliseconds on a monotonic clock; only differences are meaningful."""
    return time.perf_counter() * 1000.0


def elapsed_millis(started: float) -> int:
    return round(monotonic_millis() - started)
