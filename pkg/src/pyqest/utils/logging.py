import functools
import logging
import os
import sys
import time


class CustomFormatter(logging.Formatter):
    """Custom Formatter does these 2 things:
    1. Overrides 'funcName' with the value of 'func_name_override', if it exists.
    2. Overrides 'filename' with the value of 'file_name_override', if it exists.
    """

    def format(self, record):
        if hasattr(record, "func_name_override"):
            record.funcName = record.func_name_override
        if hasattr(record, "file_name_override"):
            record.filename = record.file_name_override
        return super(CustomFormatter, self).format(record)


def _log_level() -> int:
    level = logging.getLevelName(os.environ.get("PYQEST_LOG_LEVEL", "INFO").upper())
    return level if isinstance(level, int) else logging.INFO


def get_logger(name: str, log_file: str | None = None, log_sub_dir: str | None = None):
    """Creates a Log File and returns Logger object"""

    logger = logging.Logger(name)
    logger.setLevel(_log_level())
    formatter = CustomFormatter(
        "%(asctime)s | %(levelname)s | %(name)s | %(funcName)s | %(message)s"
    )
    stdout_handler = logging.StreamHandler(sys.stdout)
    stdout_handler.setFormatter(formatter)
    logger.addHandler(stdout_handler)

    if log_file:
        log_sub_dir = log_sub_dir or ""
        log_dir = os.path.join("logs", log_sub_dir)

        if not os.path.exists(log_dir):
            os.makedirs(log_dir)

        log_path = (
            log_file
            if os.path.exists(log_file)
            else os.path.join(log_dir, (str(log_file) + ".log"))
        )

        handler = logging.FileHandler(log_path, "a+")
        handler.setFormatter(formatter)
        logger.addHandler(handler)

    return logger


def _short_repr(value, limit: int = 120) -> str:
    text = repr(value)
    return text if len(text) <= limit else text[: limit - 3] + "..."


def log_decorator(_func=None, show_arguments: bool = True):
    """Logs start, elapsed time and exceptions of a function or method.

    Methods of objects carrying ``_log_file``/``_log_sub_dir`` log to that file as
    well; plain functions log to stdout under their module name.
    """

    def log_decorator_info(func):
        @functools.wraps(func)
        def log_decorator_wrapper(*args, **kwargs):
            owner = args[0] if args and hasattr(args[0], "_log_file") else None
            logger = get_logger(
                name=func.__module__,
                log_file=getattr(owner, "_log_file", None),
                log_sub_dir=getattr(owner, "_log_sub_dir", None),
            )
            extra_args = {"func_name_override": func.__name__}

            if show_arguments:
                formatted_arguments = ", ".join(
                    [_short_repr(a) for a in args]
                    + [f"{k}={_short_repr(v)}" for k, v in kwargs.items()]
                )
                logger.info(
                    f"Arguments: {formatted_arguments}. Start.", extra=extra_args
                )
            else:
                logger.info("Start.", extra=extra_args)
            start = time.time()
            try:
                value = func(*args, **kwargs)
                logger.info(
                    f"Finished. Elapsed time: {time.strftime('%Hh %Mm %Ss', time.gmtime(time.time()-start))}.",
                    extra=extra_args,
                )
            except Exception:
                logger.error(f"Exception: {str(sys.exc_info()[1])}", extra=extra_args)
                raise
            return value

        return log_decorator_wrapper

    if _func is None:
        return log_decorator_info
    else:
        return log_decorator_info(_func)
