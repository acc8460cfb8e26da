import datetime
import hashlib
import json
import logging
import os
import time
from collections import defaultdict, deque

import numpy as np
from scipy.special import comb

logger = logging.getLogger(__name__)

SEED_ENV = "GAPFORGE_SEED"


class SmoothedValue(object):
    """Track a series of values and provide access to smoothed values over a
    window or the global series average.
    """

    def __init__(self, window=20, fmt=None):
        if fmt is None:
            fmt = "{median:.4f} ({global_avg:.4f})"
        self.deque = deque(maxlen=window)
        self.total = 0.0
        self.count = 0
        self.fmt = fmt

    def update(self, value, n=1):
        self.deque.append(value)
        self.count += n
        self.total += value * n

    @property
    def median(self):
        return float(np.median(self.deque))

    @property
    def avg(self):
        return float(np.mean(self.deque))

    @property
    def global_avg(self):
        return self.total / self.count

    @property
    def max(self):
        return max(self.deque)

    @property
    def value(self):
        return self.deque[-1]

    def __str__(self):
        return self.fmt.format(
            median=self.median,
            avg=self.avg,
            global_avg=self.global_avg,
            max=self.max,
            value=self.value)


class MetricLogger(object):
    def __init__(self, delimiter="  "):
        self.meters = defaultdict(SmoothedValue)
        self.delimiter = delimiter

    def update(self, **kwargs):
        for k, v in kwargs.items():
            assert isinstance(v, (float, int)), f"meter {k} got {type(v)}"
            self.meters[k].update(v)

    def __getattr__(self, attr):
        if attr in self.meters:
            return self.meters[attr]
        if attr in self.__dict__:
            return self.__dict__[attr]
        raise AttributeError("'{}' object has no attribute '{}'".format(
            type(self).__name__, attr))

    def __str__(self):
        parts = []
        for name, meter in self.meters.items():
            parts.append("{}: {}".format(name, str(meter) if meter.count else "No data"))
        return self.delimiter.join(parts)

    def log_every(self, iterable, log_freq, header=None):
        """Yield from `iterable`, logging eta and meters every `log_freq` items."""
        header = header or ""
        items = list(iterable)
        start_time = time.time()
        end = time.time()
        iter_time = SmoothedValue(fmt="{avg:.4f}")
        space_fmt = ":" + str(len(str(len(items)))) + "d"
        log_msg = self.delimiter.join([
            header,
            "[{0" + space_fmt + "}/{1}]",
            "eta: {eta}",
            "{meters}",
            "time: {time}",
        ])
        for i, obj in enumerate(items):
            yield obj
            iter_time.update(time.time() - end)
            if i % log_freq == 0 or i == len(items) - 1:
                eta_seconds = iter_time.global_avg * (len(items) - i - 1)
                eta_string = str(datetime.timedelta(seconds=int(eta_seconds)))
                logger.info(log_msg.format(
                    i, len(items), eta=eta_string, meters=str(self), time=str(iter_time)))
            end = time.time()
        total_time = time.time() - start_time
        total_time_str = str(datetime.timedelta(seconds=int(total_time)))
        logger.info("{} Total time: {} ({:.4f} s / it)".format(
            header, total_time_str, total_time / max(len(items), 1)))


def resolve_seed(seed=None, default=0):
    """Explicit seed, else $GAPFORGE_SEED, else `default`."""
    if seed is not None:
        return int(seed)
    env = os.environ.get(SEED_ENV)
    if env not in (None, ""):
        return int(env)
    return int(default)


def make_rng(*seed_parts):
    """Deterministic numpy generator from one or more integer seed parts."""
    return np.random.default_rng([int(x) for x in seed_parts])


def n_choose_k(n, k):
    return int(comb(n, k, exact=True))


def canonical_json(data):
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def digest_of(data):
    """SHA-256 hex digest of the canonical JSON form of `data`."""
    return hashlib.sha256(canonical_json(data).encode("utf-8")).hexdigest()


def save_json(data, filename, save_pretty=True, sort_keys=True):
    with open(filename, "w") as f:
        if save_pretty:
            f.write(json.dumps(data, indent=2, sort_keys=sort_keys))
            f.write("\n")
        else:
            json.dump(data, f, sort_keys=sort_keys)


def load_json(filename):
    with open(filename, "r") as f:
        return json.load(f)
