import contextlib
import io
import json
import os.path as osp

from motivCM import __version__
from motivCM.geom import ConstructibleSet
from motivCM.geom import named_set
from motivCM.geom import PolySystem
from motivCM.kring import MeasureCandidate
from motivCM.kring import RingElement
from motivCM.logger import logger
from motivCM.utils import write_json


@contextlib.contextmanager
def open(name, mode):
  assert mode in ["r", "w"]
  with io.open(name, mode, encoding="utf-8") as f:
    yield f


class ClassFileError(Exception):
  pass


def _read(filename):
  with open(filename, "r") as f:
    data = json.load(f)
  if not isinstance(data, dict):
    raise ValueError("expected a JSON object in {}".format(filename))
  version = data.get("version")
  if version is not None and str(version).split(".")[0] != __version__.split(".")[0]:
    logger.warning(
      "This JSON file ({}) may be incompatible with "
      "current motivCM. version in file: {}, "
      "current version: {}".format(filename, version, __version__)
    )
  return data


def _field_order(data, q):
  if "q" in data:
    file_q = int(data["q"])
    if q is not None and q != file_q:
      logger.warning(
        "q = {} in file overrides q = {} from the command line".format(
          file_q, q
        )
      )
    return file_q
  if q is None:
    raise ValueError("no q given in the file or on the command line")
  return q


def is_builtin_name(text):
  if osp.exists(text):
    return False
  return ":" in text or text == "point"


def load_set(name_or_file, q=None):
  """A builtin name such as "omega:2" or a JSON set file.

  File layout: {"q": "2", "set": {...}}, where a node is
  {"kind": "variety", "num_vars": ..., "polys": [...]},
  {"kind": "union" | "intersection" | "product", "children": [...]},
  {"kind": "difference", "children": [left, right]},
  {"kind": "degree_filter", "relation": ..., "k": ..., "coordinate": ...,
   "child": {...}} or {"kind": "named", "name": "xk:2"}.
  """
  try:
    if is_builtin_name(name_or_file):
      if q is None:
        raise ValueError("builtin sets need q")
      return named_set(name_or_file, q)
    data = _read(name_or_file)
    q = _field_order(data, q)
    node = data.get("set", data)
    if "kind" not in node:
      return ConstructibleSet.from_dict(dict(node, kind="variety"), q)
    return ConstructibleSet.from_dict(node, q)
  except Exception as e:
    raise ClassFileError(e)


def load_system(filename, q=None):
  try:
    data = _read(filename)
    q = _field_order(data, q)
    return PolySystem.from_dict(data.get("system", data), q)
  except Exception as e:
    raise ClassFileError(e)


def load_candidate(filename):
  """{"t": "4", "s": {"2": "2"}}, optionally with "q"."""
  try:
    data = _read(filename)
    return MeasureCandidate.from_dict(data), (
      int(data["q"]) if "q" in data else None
    )
  except Exception as e:
    raise ClassFileError(e)


def load_class(filename, q=None):
  try:
    data = _read(filename)
    q = _field_order(data, q)
    return RingElement.from_list(q, data["terms"])
  except Exception as e:
    raise ClassFileError(e)


def save(filename, payload):
  data = dict(version=__version__)
  for key, value in payload.items():
    assert key not in data
    data[key] = value
  try:
    write_json(filename, data)
  except Exception as e:
    raise ClassFileError(e)


def save_set(filename, cset):
  save(filename, {"q": str(cset.q), "set": cset.to_dict()})


def save_class(filename, element):
  save(filename, element.to_dict())
