"""Collects one pass/fail line per acceptance criterion for the terminal summary."""

from contextlib import contextmanager
import time

RESULTS: list[str] = []


@contextmanager
def criterion(number, title):
    t0 = time.perf_counter()
    detail = {}
    try:
        yield detail
    except BaseException as exc:
        RESULTS.append(f"FAIL  criterion {number}: {title} ({type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''})")
        print(RESULTS[-1])
        raise
    extra = ", ".join(f"{k}={v}" for k, v in detail.items())
    RESULTS.append(f"PASS  criterion {number}: {title} [{time.perf_counter() - t0:.2f}s{'; ' + extra if extra else ''}]")
    print(RESULTS[-1])
