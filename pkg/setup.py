from __future__ import print_function

import os
import re
import shlex
import shutil
import subprocess
import sys

from setuptools import find_packages
from setuptools import setup


def get_version():
  filename = "motivCM/__init__.py"
  with open(filename) as f:
    match = re.search(
      r"""^__version__ = ['"]([^'"]*)['"]""", f.read(), re.M
    )
  if not match:
    raise RuntimeError("{} doesn't contain __version__".format(filename))
  version = match.groups()[0]
  return version


def get_install_requires():
  assert sys.version_info[0] == 3

  with open("requirements.txt", "r") as f:
    list_file = f.readlines()
  install_requires = [
    line.strip() for line in list_file
    if line.strip() and not line.startswith("#")
  ]

  if os.name == "nt":  # Windows
    install_requires.append("colorama")

  return install_requires


def get_long_description():
  with open("README.md") as f:
    return f.read()


def main():
  version = get_version()

  if len(sys.argv) > 1 and sys.argv[1] == "release":
    if not shutil.which("twine"):
      print(
        "Please install twine:\n\n\tpip install twine\n",
        file=sys.stderr,
      )
      sys.exit(1)

    commands = [
      "python -m pytest tests",
      "git tag v{:s}".format(version),
      "git push origin master --tag",
      "python setup.py sdist",
      "twine upload dist/motivCM-{:s}.tar.gz".format(version),
    ]
    for cmd in commands:
      subprocess.check_call(shlex.split(cmd))
    sys.exit(0)

  setup(
    name="motivCM",
    version=version,
    packages=find_packages(exclude=["tests"]),
    description="Counting measures on the Grothendieck ring of varieties "
    "over finite fields",
    long_description=get_long_description(),
    long_description_content_type="text/markdown",
    install_requires=get_install_requires(),
    extras_require={"test": ["pytest"]},
    python_requires=">=3.6",
    license="GPLv3",
    keywords="Grothendieck ring, motivic measure, finite fields",
    classifiers=[
      "Development Status :: 4 - Beta",
      "Intended Audience :: Science/Research",
      "Natural Language :: English",
      "Programming Language :: Python",
      "Programming Language :: Python :: 3",
      "Programming Language :: Python :: Implementation :: CPython",
      "Topic :: Scientific/Engineering :: Mathematics",
    ],
    package_data={"motivCM": ["config/*.yaml"]},
    entry_points={
      "console_scripts": [
        "motivCM=motivCM.__main__:main",
      ],
    },
  )


if __name__ == "__main__":
  main()
