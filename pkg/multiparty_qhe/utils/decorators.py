import functools
import time

import numpy as np
import structlog

# Longest repr kept for a logged argument or return value.
_MAX_REPR_CHARS = 120


def _summarize(value) -> object:
    """Keep log lines short: arrays and states are reduced to their shape."""
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    if isinstance(value, np.ndarray):
        return f"ndarray{value.shape}"
    num_qubits = getattr(value, "num_qubits", None)
    if num_qubits is not None:
        return f"{type(value).__name__}(n={num_qubits})"
    text = repr(value)
    if len(text) > _MAX_REPR_CHARS:
        return text[: _MAX_REPR_CHARS - 3] + "..."
    return text


def _build_extra(func_name, args, kwargs, include_inputs):
    extra = {"function_": func_name}
    if include_inputs:
        for k, v in kwargs.items():
            extra["args_" + k] = _summarize(v)

        for i, v in enumerate(args):
            extra["args_" + str(i)] = _summarize(v)
    return extra


def _log(ulogger, level: str, msg: str, extra: dict) -> None:
    log_fn = getattr(ulogger, level.lower(), None)
    if log_fn is None:
        ulogger.info(msg, **extra)
        return
    log_fn(msg, **extra)


def tracker(_func=None, ulogger=None, inputs=False, outputs=False, log_start=False, level="info"):
    """Log start/end of a call with its duration, optionally with inputs and output."""
    if ulogger is None:
        ulogger = structlog.get_logger()

    def decorator_tracker(func):
        @functools.wraps(func)
        def wrapper_logger(*args, **kwargs):
            extra = _build_extra(func.__name__, args, kwargs, inputs)
            if log_start:
                _log(ulogger, level, "start", extra)
            start_time = time.perf_counter()
            value = func(*args, **kwargs)
            extra["duration_"] = round(time.perf_counter() - start_time, 3)
            if outputs:
                extra["return_"] = _summarize(value)
            _log(ulogger, level, "tracker", extra)
            return value

        return wrapper_logger

    if _func is None:
        return decorator_tracker
    return decorator_tracker(_func)
