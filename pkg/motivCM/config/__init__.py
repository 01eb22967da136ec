import os.path as osp
import shutil

import yaml

from motivCM.logger import logger
from motivCM.logger import LEVELS
from motivCM.utils import is_prime_power

here = osp.dirname(osp.abspath(__file__))

USER_CONFIG = ".motivCMrc"


def update_dict(target_dict, new_dict, validate_item=None):
  for key, value in new_dict.items():
    if validate_item:
      validate_item(key, value)
    if key not in target_dict:
      logger.warning("Skipping unexpected key in config: {}".format(key))
      continue
    if isinstance(target_dict[key], dict) and isinstance(value, dict):
      update_dict(target_dict[key], value, validate_item=validate_item)
    else:
      target_dict[key] = value


# -----------------------------------------------------------------------------
def get_default_config(reset_from_default_config=False):
  config_file = osp.join(here, "default_config.yaml")
  with open(config_file) as f:
    config = yaml.safe_load(f)

  # save default config to ~/.motivCMrc
  user_config_file = osp.join(osp.expanduser("~"), USER_CONFIG)
  if reset_from_default_config or not osp.exists(user_config_file):
    try:
      shutil.copy(config_file, user_config_file)
    except Exception:
      logger.warning("Failed to save config: {}".format(user_config_file))

  return config


def _positive_int(key, value):
  if isinstance(value, bool) or not isinstance(value, int) or value <= 0:
    raise ValueError(
      "Unexpected value for config key '{}': {}".format(key, value)
    )


def validate_config_item(key, value):
  if key == "q" and value is not None and not is_prime_power(value):
    raise ValueError(
      "Unexpected value for config key 'q' (not a prime power): {}".format(
        value
      )
    )
  if key == "output" and value not in ["text", "json"]:
    raise ValueError(
      "Unexpected value for config key 'output': {}".format(value)
    )
  if key == "logger_level" and value not in LEVELS:
    raise ValueError(
      "Unexpected value for config key 'logger_level': {}".format(value)
    )
  if key == "curve_exclusion" and value not in ["factorial", "lcm"]:
    raise ValueError(
      "Unexpected value for config key 'curve_exclusion': {}".format(value)
    )
  if key in [
    "workers",
    "enumeration_limit",
    "spec_index_limit",
    "max_degree",
    "max_exclusion_index",
    "random_systems",
    "hom_pairs",
    "gap_samples",
    "theorem_grid",
    "max_points",
  ]:
    _positive_int(key, value)
  if key == "sandwich_systems" and (
    isinstance(value, bool) or not isinstance(value, int) or value < 0
  ):
    raise ValueError(
      "Unexpected value for config key 'sandwich_systems': {}".format(value)
    )
  if key == "seed" and (
    isinstance(value, bool) or not isinstance(value, int)
    or not 0 <= value < 2 ** 64
  ):
    raise ValueError(
      "Unexpected value for config key 'seed' (64-bit integer): {}".format(
        value
      )
    )


def get_config(config_file_or_yaml=None, config_from_args=None):
  # 1. default config
  config = get_default_config()

  # 2. specified as file or yaml
  if config_file_or_yaml is not None:
    config_from_yaml = yaml.safe_load(config_file_or_yaml)
    if not isinstance(config_from_yaml, dict):
      with open(config_from_yaml) as f:
        logger.info(
          "Loading config file from: {}".format(config_from_yaml)
        )
        config_from_yaml = yaml.safe_load(f) or {}
    update_dict(
      config, config_from_yaml, validate_item=validate_config_item
    )

  # 3. command line argument or specified config file
  if config_from_args is not None:
    update_dict(
      config, config_from_args, validate_item=validate_config_item
    )

  return config


class RunConfig(object):
  """Validated view of a merged config dict."""

  def __init__(
    self,
    q=2,
    enumeration_limit=1 << 22,
    spec_index_limit=24,
    max_degree=6,
    max_exclusion_index=10 ** 6,
    curve_exclusion="factorial",
    sandwich_systems=3,
    seed=42,
    output="text",
    workers=1,
    verify=None,
  ):
    for key, value in [
      ("q", q),
      ("enumeration_limit", enumeration_limit),
      ("spec_index_limit", spec_index_limit),
      ("max_degree", max_degree),
      ("max_exclusion_index", max_exclusion_index),
      ("curve_exclusion", curve_exclusion),
      ("sandwich_systems", sandwich_systems),
      ("seed", seed),
      ("output", output),
      ("workers", workers),
    ]:
      validate_config_item(key, value)
    self.q = q
    self.enumeration_limit = enumeration_limit
    self.spec_index_limit = spec_index_limit
    self.max_degree = max_degree
    self.max_exclusion_index = max_exclusion_index
    self.curve_exclusion = curve_exclusion
    self.sandwich_systems = sandwich_systems
    self.seed = seed
    self.output = output
    self.workers = workers
    self.verify = dict(verify or {})

  @classmethod
  def from_config(cls, config):
    bounds = config.get("bounds", {})
    return cls(
      q=config["q"],
      enumeration_limit=bounds.get("enumeration_limit", 1 << 22),
      spec_index_limit=bounds.get("spec_index_limit", 24),
      max_degree=bounds.get("max_degree", 6),
      max_exclusion_index=bounds.get("max_exclusion_index", 10 ** 6),
      curve_exclusion=config.get("curve_exclusion", "factorial"),
      sandwich_systems=config.get("sandwich_systems", 3),
      seed=config.get("seed", 42),
      output=config.get("output", "text"),
      workers=config.get("workers", 1),
      verify=config.get("verify"),
    )

  def verify_option(self, key, default):
    return self.verify.get(key, default)
