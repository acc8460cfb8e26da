class EasyDict(dict):
    """
    A dict whose keys are also attributes. Nested dicts (also inside lists)
    are converted on assignment, so config groups read naturally:

    >>> cfg = EasyDict({'caps': {'vertices': 10}})
    >>> cfg.caps.vertices
    10
    >>> cfg.solver = {'mode': 'exact_bb'}
    >>> cfg['solver'].mode
    'exact_bb'
    >>> cfg.missing
    Traceback (most recent call last):
    ...
    AttributeError: 'EasyDict' object has no attribute 'missing'
    """

    def __init__(self, d=None, **kwargs):
        super().__init__()
        d = dict(d or {})
        d.update(kwargs)
        for k, v in d.items():
            setattr(self, k, v)

    def __setattr__(self, name, value):
        if isinstance(value, (list, tuple)):
            value = [self.__class__(x) if isinstance(x, dict) else x for x in value]
        elif isinstance(value, dict) and not isinstance(value, self.__class__):
            value = self.__class__(value)
        super().__setattr__(name, value)
        super().__setitem__(name, value)

    __setitem__ = __setattr__

    def __delattr__(self, name):
        super().__delattr__(name)
        super().__delitem__(name)

    def update(self, e=None, **f):
        d = dict(e or {})
        d.update(f)
        for k in d:
            setattr(self, k, d[k])

    def pop(self, k, d=None):
        if k in self:
            object.__delattr__(self, k)
        return super().pop(k, d)

    def to_dict(self):
        """Plain nested dict, for JSON dumps."""
        out = {}
        for k, v in self.items():
            if isinstance(v, EasyDict):
                v = v.to_dict()
            elif isinstance(v, list):
                v = [x.to_dict() if isinstance(x, EasyDict) else x for x in v]
            out[k] = v
        return out


if __name__ == "__main__":
    import doctest

    doctest.testmod()
