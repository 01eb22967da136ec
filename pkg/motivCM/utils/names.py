def parse_name(name):
  """Split a builtin name such as "ykm:2:3" into ("ykm", [2, 3])."""
  if not isinstance(name, str) or not name:
    raise ValueError("Unexpected builtin name: {!r}".format(name))
  parts = name.strip().split(":")
  kind = parts[0].lower()
  try:
    args = [int(part) for part in parts[1:]]
  except ValueError:
    raise ValueError("Malformed builtin name: {!r}".format(name))
  if any(arg < 0 for arg in args):
    raise ValueError("Negative parameter in builtin name: {!r}".format(name))
  return kind, args
