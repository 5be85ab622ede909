import inspect

import numpy as np


def to_iterable(param, iterable_type=list):
    if not isinstance(param, iterable_type):
        param = iterable_type([param])
    return param


def call_with_filtered_kwargs(func, dict_args):
    kwargs = {}
    for p in inspect.signature(func).parameters.values():
        if p.name in dict_args:
            kwargs[p.name] = dict_args[p.name]
    return func(**kwargs)


def unused_kwargs(func, dict_args):
    names = set(inspect.signature(func).parameters)
    return sorted(k for k in dict_args if k not in names)


def parse_grid(value):
    """
    Turn a grid description into a tuple of floats.

    Accepts a scalar, a list, a comma separated string ("0,0.5,1") or a linspace
    string "start:stop:num".
    """
    if isinstance(value, str):
        text = value.strip()
        if not text:
            return ()
        if ":" in text:
            start, stop, num = text.split(":")
            return tuple(float(v) for v in np.linspace(float(start), float(stop), int(num)))
        return tuple(float(v) for v in text.split(",") if v.strip())
    if isinstance(value, (tuple, np.ndarray)):
        value = list(value)
    return tuple(float(v) for v in to_iterable(value))


def spawn_rng(seed, *keys):
    """Independent generator for the stream identified by ``(seed, *keys)``."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), *(int(k) for k in keys)]))
