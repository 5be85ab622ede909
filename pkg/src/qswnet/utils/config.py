import copy
import hashlib
import json
import os
import pprint
from collections import OrderedDict

from qswnet.utils.io import load_yaml

TAG_COMPRESS = "*"
TAG_IGNORE = "^"
PATH_SEP = "/"


def _split_tags(key):
    tags = (key.startswith(TAG_IGNORE), key.endswith(TAG_COMPRESS))
    return key.strip(TAG_COMPRESS + TAG_IGNORE), tags


class DictParsed(dict):
    """
    Dictionary whose keys may carry tags.

    ``^key`` is kept out of the tracked parameters (runtime settings such as output paths or
    worker counts). ``key*`` is tracked as a single compressed parameter. Tags are stripped
    from the stored keys and remembered in ``keys_with_tags``.
    """

    def __init__(self, other_dict=None):
        super().__init__()
        self.keys_with_tags = dict()
        if other_dict is not None:
            self.update(other_dict)

    def update(self, __m=None, **kwargs) -> None:
        for k, v in dict(__m or {}, **kwargs).items():
            self[k] = v

    def __getitem__(self, item):
        return super().__getitem__(item.strip(TAG_COMPRESS + TAG_IGNORE))

    def __contains__(self, item):
        return super().__contains__(item.strip(TAG_COMPRESS + TAG_IGNORE))

    def get(self, key, default=None):
        return super().get(key.strip(TAG_COMPRESS + TAG_IGNORE), default)

    def __setitem__(self, key, value):
        if isinstance(value, dict) and not isinstance(value, DictParsed):
            value = DictParsed(value)
        new_key, tags = _split_tags(key)
        if any(tags):
            self.keys_with_tags[new_key] = tags
        super().__setitem__(new_key, value)

    def tracked_params(self, parent="", level=0):
        tracked_params = OrderedDict()
        for k, v in self.items():
            tags = self.keys_with_tags.get(k, (False, False))
            if tags[0]:
                continue
            current_key = "%s%s" % (parent, k)
            if isinstance(v, DictParsed):
                if tags[1]:
                    tracked_params[current_key] = v.filtered_dict()
                else:
                    tracked_params.update(v.tracked_params(current_key + PATH_SEP, level + 1))
            else:
                tracked_params[current_key] = v
        return tracked_params

    def filtered_dict(self):
        filtered_dict = dict()
        for k, v in self.items():
            if self.keys_with_tags.get(k, (False, False))[0]:
                continue
            filtered_dict[k] = v.filtered_dict() if isinstance(v, DictParsed) else v
        return filtered_dict

    def to_dict(self):
        return {k: v.to_dict() if isinstance(v, DictParsed) else copy.deepcopy(v) for k, v in self.items()}


class Config:
    def __init__(self, path=None):
        self.keys_dict = DictParsed()
        self.config_path = None
        if path is not None:
            self.load_yaml(path)

    @classmethod
    def from_dict(cls, values):
        config = cls()
        config.keys_dict.update(copy.deepcopy(values))
        return config

    def get_path(self):
        return self.config_path

    def load_yaml(self, path):
        self.keys_dict.update(load_yaml(path))
        self.config_path = os.path.realpath(path)

    @property
    def tracked_params(self):
        return self.keys_dict.tracked_params()

    @property
    def config_hash(self):
        dump = json.dumps(self.tracked_params, sort_keys=True, default=str)
        return hashlib.sha256(dump.encode()).hexdigest()[:12]

    def override(self, path, value):
        """Set ``value`` at a ``section/key`` path, creating missing sections."""
        *parents, leaf = path.split(PATH_SEP)
        node = self.keys_dict
        for key in parents:
            if key not in node or not isinstance(node[key], DictParsed):
                node[key] = DictParsed()
            node = node[key]
        node[leaf] = value

    def lookup(self, path, default=None):
        node = self.keys_dict
        for key in path.split(PATH_SEP):
            if not isinstance(node, DictParsed) or key not in node:
                return default
            node = node[key]
        return node

    def to_dict(self):
        return self.keys_dict.to_dict()

    def __getitem__(self, item):
        return self.keys_dict[item]

    def __setitem__(self, key, value):
        self.keys_dict[key] = value

    def __contains__(self, item):
        return item in self.keys_dict

    def __repr__(self):
        return pprint.pformat(self.keys_dict)

    def get(self, key, default=None):
        return self.keys_dict.get(key, default)

    def pop(self, key, default=None):
        return self.keys_dict.pop(key, default)
