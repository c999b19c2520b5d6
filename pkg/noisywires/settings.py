"""
Django settings for the noisywires project.

The project has no web surface: Django supplies configuration, the
management-command CLI (``manage.py point|fig1|sweep|oracle|validate|inductance``)
and the test runner.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

import os
import sys
from pathlib import Path

from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent
RUNNING_TESTS = "test" in sys.argv


# Load environment variables from a .env file when present.
load_dotenv(BASE_DIR / ".env")


SECRET_KEY = os.getenv("DJANGO_SECRET_KEY", "noisywires-local-only")

DEBUG = os.getenv("DJANGO_DEBUG", "false").lower() == "true"

ALLOWED_HOSTS: list[str] = []


# Application definition

INSTALLED_APPS = [
    "noisywires.apps.core",
    "noisywires.apps.circuit",
    "noisywires.apps.spectral",
    "noisywires.apps.asymptotics",
    "noisywires.apps.langevin",
    "noisywires.apps.geometry",
    "noisywires.apps.sweeps",
]

# No persistence: every result is a pure function of its inputs.
DATABASES: dict = {}

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

USE_TZ = True
TIME_ZONE = "UTC"


def _env_float(name: str, default: float) -> float:
    return float(os.getenv(name, repr(default)))


def _env_int(name: str, default: int) -> int:
    return int(float(os.getenv(name, str(default))))


# Numerical defaults
NOISYWIRES = {
    "QUADRATURE": {
        "REL_TOL": _env_float("NOISYWIRES_REL_TOL", 1e-9),
        "ABS_TOL": _env_float("NOISYWIRES_ABS_TOL", 1e-14),
        "MAX_SUBDIVISIONS": _env_int("NOISYWIRES_MAX_SUBDIVISIONS", 10_000),
    },
    "WORKERS": _env_int("NOISYWIRES_WORKERS", os.cpu_count() or 1),
    "CONTACT_CUTOFF": _env_float("NOISYWIRES_CONTACT_CUTOFF", 1e-6),
    "LANGEVIN": {
        "DT": _env_float("NOISYWIRES_LANGEVIN_DT", 0.01),
        "N_STEPS": _env_int("NOISYWIRES_LANGEVIN_STEPS", 5_000_000),
        "BURN_IN": _env_int("NOISYWIRES_LANGEVIN_BURN_IN", 20_000),
        "N_REPLICAS": _env_int("NOISYWIRES_LANGEVIN_REPLICAS", 4),
        "N_BATCHES": _env_int("NOISYWIRES_LANGEVIN_BATCHES", 50),
        "SEED": _env_int("NOISYWIRES_LANGEVIN_SEED", 42),
    },
    # Runtime branch checks on the complex logarithm of the free-energy integrand.
    "DEBUG_ASSERTIONS": os.getenv("NOISYWIRES_DEBUG", "false").lower() == "true" or RUNNING_TESTS,
}


# Logging goes to stderr; stdout carries CSV/JSON data only.
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {
            "format": "%(asctime)s %(levelname)s %(name)s: %(message)s",
        },
    },
    "handlers": {
        "stderr": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "plain",
        },
    },
    "loggers": {
        "noisywires": {
            "handlers": ["stderr"],
            "level": os.getenv("NOISYWIRES_LOG_LEVEL", "WARNING"),
            "propagate": False,
        },
    },
}
