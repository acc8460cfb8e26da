from __future__ import annotations

import ast
import json
import os.path as osp
import shutil
import sys
import tempfile
from copy import deepcopy
from importlib import import_module
from pathlib import Path

import yaml

from .easydict import EasyDict
from .errors import InputError

__all__ = ["Config", "merge_a_into_b", "DEFAULT_CONFIG_FILE"]


DEFAULT_CONFIG_FILE = str(Path(__file__).resolve().parents[1] / "scripts" / "config.py")


class Config(object):
    """Layered configuration: defaults file, then `--config` file, then flags,
    then trailing `key value` overrides."""

    @classmethod
    def pretty_text(cls, cfg: dict, indent=2) -> str:
        """format dict to a string

        Args:
            cfg (EasyDict): the params.

        Returns: The string to display.

        """
        msg = "{\n"
        for i, (k, v) in enumerate(cfg.items()):
            if isinstance(v, dict):
                v = cls.pretty_text(v, indent + 4)
            spaces = " " * indent
            msg += spaces + "{}: {}".format(k, v)
            if i == len(cfg) - 1:
                msg += " }"
            else:
                msg += "\n"
        return msg

    @classmethod
    def dump(cls, cfg, savepath):
        """dump cfg to `json` file."""
        payload = cfg.to_dict() if isinstance(cfg, EasyDict) else dict(cfg)
        with open(savepath, "w") as f:
            json.dump(payload, f, indent=2, sort_keys=True, default=str)

    @classmethod
    def load(cls, config_file: str | None = None, flags: dict | None = None, opts: list | None = None):
        """Build the effective config.

        Args:
            config_file (str): replaces the bundled defaults when given.
            flags (dict): nested dict of command line flag values; `None` leaves are skipped.
            opts (list): `[key1, value1, key2, value2, ...]` overrides, keys may be dotted.

        Returns: an EasyDict.
        """
        cfg = cls.from_file(DEFAULT_CONFIG_FILE)
        if config_file:
            cfg = merge_a_into_b(cls.from_file(config_file), cfg)
        if flags:
            cfg = merge_a_into_b(_drop_none(flags), cfg)
        cfg = cls.merge_list(cfg, list(opts or []))
        return eval_dict_leaf(cfg)

    @classmethod
    def from_file(cls, filepath: str) -> EasyDict:
        """Build config from file. Supported filetypes: `.py`,`.yaml`,`.json`."""
        filepath = osp.abspath(osp.expanduser(filepath))
        if not osp.isfile(filepath):
            raise InputError(f"config file does not exist: {filepath}")
        if filepath.endswith(".py"):
            with tempfile.TemporaryDirectory() as temp_config_dir:
                shutil.copytree(osp.dirname(filepath), osp.join(temp_config_dir, "tmp_config"))
                sys.path.insert(0, temp_config_dir)
                try:
                    mod = import_module("tmp_config." + osp.splitext(osp.basename(filepath))[0])
                finally:
                    sys.path.pop(0)
                cfg_dict = {
                    name: value
                    for name, value in mod.__dict__.items()
                    if not name.startswith("__") and not callable(value) and not isinstance(value, type(sys))
                }
                for k in list(sys.modules.keys()):
                    if "tmp_config" in k:
                        del sys.modules[k]
        elif filepath.endswith((".yml", ".yaml")):
            with open(filepath, "r") as f:
                cfg_dict = yaml.safe_load(f) or {}
        elif filepath.endswith(".json"):
            with open(filepath, "r") as f:
                cfg_dict = json.load(f)
        else:
            raise InputError("Only py/yml/yaml/json type are supported now!")

        return EasyDict(cfg_dict)

    @classmethod
    def merge_list(cls, cfg, opts: list):
        """merge commandline opts.

        Args:
            cfg: (dict): The config to be merged.
            opts (list): The list to merge. Format: [key1, name1, key2, name2,...].
                The keys can be nested. For example, ["a.b", v] will be considered
                as `dict(a=dict(b=v))`.

        Returns: dict.

        """
        if len(opts) % 2 != 0:
            raise InputError(f"config overrides must come in key/value pairs, got: {opts}")
        for _i in range(0, len(opts), 2):
            full_k, v = opts[_i], opts[_i + 1]
            keys = full_k.split(".")
            sub_d = cfg
            for i, k in enumerate(keys):
                if k not in sub_d:
                    raise InputError(f"The key {k} not exist in the config. Full key:{full_k}")
                if i != len(keys) - 1:
                    sub_d = sub_d[k]
                else:
                    sub_d[k] = v
        return cfg


def _drop_none(d):
    out = {}
    for k, v in d.items():
        if isinstance(v, dict):
            v = _drop_none(v)
            if v:
                out[k] = v
        elif v is not None:
            out[k] = v
    return out


def merge_a_into_b(a, b, inplace=False):
    """The values in a will override values in b.

    Args:
        a (dict): source dict.
        b (dict): target dict.

    Returns: dict. recursively merge dict a into dict b.

    """
    if not inplace:
        b = deepcopy(b)
    for key in a:
        if key in b and isinstance(a[key], dict) and isinstance(b[key], dict):
            b[key] = merge_a_into_b(a[key], b[key], inplace=True)
        else:
            b[key] = a[key]
    return b


def eval_dict_leaf(d):
    """Turn string leaves that look like Python literals into values."""
    for k, v in d.items():
        if isinstance(v, dict):
            eval_dict_leaf(v)
        else:
            d[k] = eval_string(v)
    return d


def eval_string(string):
    """'0' -> 0, '0.2' -> 0.2, '[0, 1]' -> [0, 1], 'None' -> None; other strings stay."""
    if not isinstance(string, str):
        return string
    try:
        return ast.literal_eval(string)
    except (ValueError, SyntaxError):
        return string
