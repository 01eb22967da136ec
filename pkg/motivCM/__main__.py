import argparse
import os
import sys

import numpy as np

from motivCM import __appname__
from motivCM import __version__
from motivCM import class_file
from motivCM import geom
from motivCM import kring
from motivCM.config import get_config
from motivCM.config import RunConfig
from motivCM.falsify import classify
from motivCM.ff import EnumerationLimitError
from motivCM.logger import LEVELS
from motivCM.logger import logger
from motivCM.logger import set_level
from motivCM.utils import divisors
from motivCM.utils import dumps
from motivCM.utils import format_rational
from motivCM.verify import run_suites
from motivCM.verify import SUITES


def _emit(run_config, data, lines):
  if run_config.output == "json":
    sys.stdout.write(dumps(data) + "\n")
  else:
    for line in lines:
      print(line)


def _set_label(name_or_file):
  return os.path.basename(name_or_file)


# commands ---------------------------------------------------------------------
def cmd_tables(args, run_config):
  q = run_config.q
  kmax = args.kmax if args.kmax is not None else run_config.max_degree
  if kmax < 1:
    raise ValueError("--kmax must be >= 1, got {}".format(kmax))
  c = {d: kring.closed_point_count(q, d) for d in range(1, kmax + 1)}
  a = {
    n: [kring.affine_subspace_count(q, n, i) for i in range(n + 1)]
    for n in range(1, kmax + 1)
  }
  P = {n: kring.omega_polynomial(q, n) for n in range(1, kmax + 1)}

  lines = ["q = {}".format(q), "", "closed points c_d:"]
  lines += ["  c_{} = {}".format(d, v) for d, v in c.items()]
  lines += ["", "affine subspaces a_(n,i), i = 0..n:"]
  lines += [
    "  n = {}: {}".format(n, " ".join(str(v) for v in row))
    for n, row in a.items()
  ]
  lines += ["", "P_n coefficients, constant term first:"]
  lines += [
    "  P_{}: {}".format(n, " ".join(str(v) for v in coeffs))
    for n, coeffs in P.items()
  ]
  data = {
    "q": str(q),
    "c": {str(d): str(v) for d, v in c.items()},
    "a": {str(n): [str(v) for v in row] for n, row in a.items()},
    "P": {str(n): [str(v) for v in coeffs] for n, coeffs in P.items()},
  }
  _emit(run_config, data, lines)
  return 0


def cmd_count(args, run_config):
  cset = class_file.load_set(args.set, run_config.q)
  if args.save is not None:
    class_file.save_set(args.save, cset)
  count = geom.count_points(
    cset, args.n, limit=run_config.enumeration_limit,
    workers=run_config.workers,
  )
  data = {
    "set": _set_label(args.set),
    "q": str(cset.q),
    "n": str(args.n),
    "count": str(count),
  }
  lines = [str(count)]
  if args.tally:
    tally = geom.decompose_closed_points(
      cset, args.n, limit=run_config.enumeration_limit,
      workers=run_config.workers, degrees=divisors(args.n),
    )
    data["closed_points"] = tally.to_dict()
    lines += [
      "  degree {}: {} closed point(s)".format(d, c)
      for d, c in tally.counts.items()
    ]
    if tally.points_over(args.n) != count:
      logger.error("orbit sum {} differs from the count {}".format(
        tally.points_over(args.n), count
      ))
      return 1
  _emit(run_config, data, lines)
  return 0


def cmd_closed_points(args, run_config):
  cset = class_file.load_set(args.set, run_config.q)
  max_d = args.max_d if args.max_d is not None else run_config.max_degree
  tally = geom.decompose_closed_points(
    cset, max_d, limit=run_config.enumeration_limit,
    workers=run_config.workers,
  )
  data = {
    "set": _set_label(args.set),
    "q": str(cset.q),
    "closed_points": tally.to_dict(),
  }
  lines = ["N_{} = {}".format(d, c) for d, c in tally.counts.items()]
  _emit(run_config, data, lines)
  return 0


def _load_class(name_or_file, q):
  if class_file.is_builtin_name(name_or_file):
    return kring.named_class(name_or_file, q)
  return class_file.load_class(name_or_file, q)


def cmd_class(args, run_config):
  element = _load_class(args.name, run_config.q)
  if args.base_change is not None:
    element = kring.base_change(element, args.base_change)
  if args.save is not None:
    class_file.save_class(args.save, element)
  data = {"name": _set_label(args.name)}
  data.update(element.to_dict())
  _emit(run_config, data, [repr(element)])
  return 0


def cmd_measure(args, run_config):
  q = run_config.q
  if args.candidate is not None:
    cand, file_q = class_file.load_candidate(args.candidate)
    if file_q is not None:
      q = file_q
  else:
    cand = kring.counting_measure(q, args.n)
  element = _load_class(args.name, q)
  value = cand.evaluate(element)
  data = {
    "name": _set_label(args.name),
    "q": str(q),
    "class": element.to_list(),
    "value": format_rational(value),
  }
  _emit(run_config, data, [format_rational(value)])
  return 0


def _sandwich_systems(q, run_config):
  rng = np.random.default_rng(run_config.seed)
  return [
    geom.random_system(q, int(rng.integers(1, 3)),
                       min(3, run_config.max_degree), rng)
    for _ in range(run_config.sandwich_systems)
  ]


def cmd_falsify(args, run_config):
  cand, file_q = class_file.load_candidate(args.candidate)
  q = run_config.q
  if file_q is not None:
    if args.q_given and file_q != q:
      logger.warning("q = {} in {} overrides q = {}".format(
        file_q, args.candidate, q
      ))
    q = file_q
  if args.system:
    systems = [class_file.load_system(f, q) for f in args.system]
  else:
    systems = _sandwich_systems(q, run_config)
  verdict = classify(
    q,
    cand,
    spec_index_limit=run_config.spec_index_limit,
    curve_exclusion=run_config.curve_exclusion,
    max_exclusion_index=run_config.max_exclusion_index,
    systems=systems,
    enumeration_limit=run_config.enumeration_limit,
    workers=run_config.workers,
  )
  lines = [verdict.describe()]
  if not verdict.is_counting_measure:
    lines += [verdict.witness.narrative, dumps(verdict.witness.to_dict())]
  _emit(run_config, verdict.to_dict(), lines)
  return verdict.exit_code


def cmd_verify(args, run_config):
  campaigns = run_suites(args.suite, run_config)
  lines = []
  for campaign in campaigns:
    lines.append("{}: {} ({} checks)".format(
      campaign.name, "PASS" if campaign.passed else "FAIL", campaign.checks
    ))
    lines += ["  " + failure for failure in campaign.failures]
  data = {
    "seed": str(run_config.seed),
    "passed": all(c.passed for c in campaigns),
    "suites": [c.to_dict() for c in campaigns],
  }
  _emit(run_config, data, lines)
  return 0 if data["passed"] else 1


COMMANDS = {
  "tables": cmd_tables,
  "count": cmd_count,
  "closed-points": cmd_closed_points,
  "class": cmd_class,
  "measure": cmd_measure,
  "falsify": cmd_falsify,
  "verify": cmd_verify,
}


# -----------------------------------------------------------------------------
def _positive(text):
  value = int(text)
  if value <= 0:
    raise argparse.ArgumentTypeError("must be positive: {}".format(text))
  return value


def build_parser():
  parser = argparse.ArgumentParser(
    prog=__appname__,
    description="Exact computations in the Grothendieck ring of varieties "
    "over F_q, counting measures and a falsifier for positive measures.",
  )
  parser.add_argument(
    "--version", "-V", action="store_true", help="show version"
  )
  parser.add_argument(
    "--logger-level",
    choices=LEVELS,
    help="logger level",
    default=argparse.SUPPRESS,
  )
  default_config_file = os.path.join(os.path.expanduser("~"), ".motivCMrc")
  parser.add_argument(
    "--config",
    dest="config",
    help="config file or yaml-format string (default: {})".format(
      default_config_file
    ),
    default=default_config_file,
  )
  parser.add_argument(
    "--q", type=int, help="base field order", default=argparse.SUPPRESS
  )
  parser.add_argument(
    "--output",
    "-o",
    choices=["text", "json"],
    help="output format",
    default=argparse.SUPPRESS,
  )
  parser.add_argument(
    "--seed", type=int, help="seed for random campaigns",
    default=argparse.SUPPRESS,
  )
  parser.add_argument(
    "--enum-limit",
    dest="enumeration_limit",
    type=_positive,
    help="largest point set enumerated by brute force",
    default=argparse.SUPPRESS,
  )
  parser.add_argument(
    "--workers", type=_positive, help="worker processes for point counting",
    default=argparse.SUPPRESS,
  )

  subparsers = parser.add_subparsers(dest="command")

  tables = subparsers.add_parser(
    "tables", help="c_d, a_(n,i) and P_n coefficients"
  )
  tables.add_argument("--kmax", type=int, help="largest d and n")

  count = subparsers.add_parser("count", help="count points over F_{q^n}")
  count.add_argument("set", help="builtin name (e.g. omega:2) or set file")
  count.add_argument("--n", type=_positive, required=True)
  count.add_argument(
    "--tally", action="store_true",
    help="also split the points into closed points",
  )
  count.add_argument("--save", help="write the set to a JSON set file")

  closed = subparsers.add_parser(
    "closed-points", help="closed points by residue degree"
  )
  closed.add_argument("set", help="builtin name or set file")
  closed.add_argument("--max-d", dest="max_d", type=_positive)

  cls = subparsers.add_parser("class", help="class in K_0(Var)")
  cls.add_argument("name", help="builtin name (e.g. xk:2) or class file")
  cls.add_argument(
    "--base-change", dest="base_change", type=_positive,
    help="extend scalars to F_{q^k}",
  )
  cls.add_argument("--save", help="write the class to a JSON class file")

  measure = subparsers.add_parser("measure", help="evaluate a measure")
  measure.add_argument("name", help="builtin name or class file")
  group = measure.add_mutually_exclusive_group(required=True)
  group.add_argument("--n", type=_positive, help="counting measure of F_{q^n}")
  group.add_argument("--candidate", help="candidate file")

  falsify = subparsers.add_parser(
    "falsify", help="certify or refute a candidate positive measure"
  )
  falsify.add_argument("candidate", help="candidate file")
  falsify.add_argument(
    "--system",
    action="append",
    help="system file for the sandwich check (repeatable; default: "
    "seeded random systems)",
  )

  verify = subparsers.add_parser("verify", help="run invariant campaigns")
  verify.add_argument(
    "suite", choices=["all"] + list(SUITES), help="suite name"
  )
  return parser


def main(argv=None):
  parser = build_parser()
  args = parser.parse_args(argv)

  if args.version:
    print("{0} {1}".format(__appname__, __version__))
    return 0

  if args.command is None:
    parser.print_usage(sys.stderr)
    return 2

  config_from_args = {}
  for key in ["logger_level", "q", "output", "seed", "workers"]:
    if hasattr(args, key):
      config_from_args[key] = getattr(args, key)
  if hasattr(args, "enumeration_limit"):
    config_from_args["bounds"] = {
      "enumeration_limit": args.enumeration_limit
    }
  args.q_given = hasattr(args, "q")

  try:
    config = get_config(args.config, config_from_args)
    run_config = RunConfig.from_config(config)
  except (OSError, ValueError) as e:
    logger.error("Invalid config: {}".format(e))
    return 2
  set_level(config["logger_level"])

  try:
    return COMMANDS[args.command](args, run_config)
  except EnumerationLimitError as e:
    logger.error(
      "{}; use the symbolic path (class / measure) or raise "
      "--enum-limit".format(e)
    )
    return 2
  except (class_file.ClassFileError, ValueError) as e:
    logger.error(str(e))
    return 2


if __name__ == "__main__":
  sys.exit(main())
