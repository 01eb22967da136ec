import io
import json
import sys


def dumps(data):
  # sorted keys keep output byte-identical across runs
  return json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True)


def write_json(filename, data):
  if filename is None or filename == "-":
    sys.stdout.write(dumps(data) + "\n")
    return
  with io.open(filename, "w", encoding="utf-8") as f:
    f.write(dumps(data) + "\n")
