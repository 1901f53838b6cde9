"""
Budgets and run options

Values are resolved with the precedence
command line flags > config file > defaults.
The environment variable ``RINGLAB_BUDGET_PAIRS`` caps ``max_pairs``
on top of everything else.
"""

import os
import logging
import configparser
from dataclasses import dataclass, fields, replace
from typing import Any, Dict, Optional

from ringlab.errors import BudgetExceeded


logger = logging.getLogger(__name__)

ENV_BUDGET_PAIRS = 'RINGLAB_BUDGET_PAIRS'
CONFIG_SECTION = 'ringlab'
CONFIG_FILENAMES = (
    'ringlab.cfg',
    os.path.join(os.path.expanduser('~'), '.ringlab.cfg'),
)

FLAGS = {
    'max_pairs': '--max-pairs',
    'max_degree': '--max-degree',
    'max_quotient_dim': '--max-quotient-dim',
    'max_modulus': '--max-modulus',
}


@dataclass(frozen=True)
class Settings:
    """
    Immutable run options shared by all scans

    Attributes
    ----------
    max_pairs: int
        Upper limit of element pairs (or search nodes) a single scan may visit
    max_degree: int
        Highest polynomial degree a bounded scan may use
    max_quotient_dim: int
        Highest quotient dimension for intermediate subring enumeration
    max_modulus: int
        Largest residue modulus used by the suite catalog
    jobs: int
        Number of worker threads for pair scans
    deterministic: bool
        Scan in index order and report the minimal witness
    """
    max_pairs: int = 2048 * 2048
    max_degree: int = 2
    max_quotient_dim: int = 6
    max_modulus: int = 9
    jobs: int = 1
    deterministic: bool = False

    def with_overrides(self, **kwargs: Any) -> 'Settings':
        """
        Returns a copy with all non-``None`` keyword values replaced
        """
        values = {k: v for k, v in kwargs.items() if v is not None}
        return _apply_env_cap(replace(self, **values))

    def require(self, budget: str, required: int) -> None:
        """
        Raises :class:`ringlab.errors.BudgetExceeded` if ``required``
        is above the configured limit of ``budget``
        """
        limit = getattr(self, budget)
        if required > limit:
            logger.warning(
                'Refusing scan: %s needs %d, limit is %d',
                budget, required, limit
            )
            raise BudgetExceeded(budget, required, limit, FLAGS[budget])

    def toJSON(self) -> Dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _apply_env_cap(settings: Settings) -> Settings:
    cap = os.environ.get(ENV_BUDGET_PAIRS)
    if not cap:
        return settings
    try:
        cap_value = int(cap)
    except ValueError:
        logger.warning('Ignoring non-integer %s=%s', ENV_BUDGET_PAIRS, cap)
        return settings
    if cap_value < settings.max_pairs:
        return replace(settings, max_pairs=cap_value)
    return settings


# budget part of the run options
ScanOptions = Settings


def default_settings() -> Settings:
    return _apply_env_cap(Settings())


def read_config_file(path: Optional[str] = None) -> Dict[str, Any]:
    """
    Reads the ``[ringlab]`` section of an INI config file

    Parameters
    ----------
    path: str, default ``None``
        Explicit path. If ``None``, ``./ringlab.cfg`` and
        ``~/.ringlab.cfg`` are tried in that order.

    Returns
    -------
    dict
        Typed values of all known keys found in the file
    """
    candidates = (path,) if path else CONFIG_FILENAMES
    parser = configparser.ConfigParser()
    for candidate in candidates:
        if candidate and os.path.exists(candidate):
            parser.read(candidate)
            logger.debug('Read config file %s', candidate)
            break
    else:
        if path:
            raise FileNotFoundError('Config file {} not found'.format(path))
        return {}

    if not parser.has_section(CONFIG_SECTION):
        return {}

    section = parser[CONFIG_SECTION]
    values: Dict[str, Any] = {}
    for field in fields(Settings):
        if field.name not in section:
            continue
        if field.type in (bool, 'bool'):
            values[field.name] = section.getboolean(field.name)
        else:
            values[field.name] = section.getint(field.name)
    return values


def load_settings(
    config_path: Optional[str] = None,
    **flags: Any
) -> Settings:
    """
    Resolves the effective settings

    Parameters
    ----------
    config_path: str, default ``None``
        Config file location, see :func:`read_config_file`
    **flags:
        Values given on the command line. ``None`` means "not given".

    Returns
    -------
    :class:`Settings`
    """
    settings = Settings()
    settings = replace(settings, **read_config_file(config_path))
    return settings.with_overrides(**flags)
