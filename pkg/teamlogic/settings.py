"""
Django settings for the teamlogic project.

The project has no web surface. Django provides the settings layer, the
management commands and the ORM used to keep a history of harness runs.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.1/ref/settings/
"""

import os
from pathlib import Path

from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

load_dotenv(BASE_DIR / '.env')


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.getenv('TEAMLOGIC_SECRET_KEY', 'django-insecure-teamlogic-local-workbench')

DEBUG = os.getenv('TEAMLOGIC_DEBUG', 'false').lower() == 'true'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'syntax',
    'structures',
    'semantics',
    'transform',
    'eso',
    'oracle',
    'cli',
]


# Database
# Only harness runs are persisted.

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': os.getenv('TEAMLOGIC_DB', BASE_DIR / 'teamlogic.sqlite3'),
    }
}


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Logging

LOG_LEVEL = os.getenv('TEAMLOGIC_LOG_LEVEL', 'WARNING').upper()

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'teamlogic': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'teamlogic',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
    'loggers': {
        app: {'level': LOG_LEVEL}
        for app in INSTALLED_APPS
    },
}


# Workbench configuration

TEAMLOGIC = {
    # Defaults sized for structures with at most 3 elements and teams of at most 12 rows.
    'EVAL_LIMITS': {
        'max_split_candidates': 2 ** 12,
        'max_witness_functions': 600_000,
        'max_team_rows': 4096,
        'max_teams': 70_000,
        'max_search_nodes': 1_000_000,
    },
    'SEED': int(os.getenv('TEAMLOGIC_SEED', '0')),
    'HARNESS_SCALE': os.getenv('TEAMLOGIC_HARNESS_SCALE', 'quick'),
    'HARNESS_SCALES': {
        # Per-claim parameters. 'structure_samples' caps how many of the
        # enumerated structures a claim visits; 'limits' overrides EVAL_LIMITS.
        'quick': {
            'strict-disjunction-example': {},
            'flatness': {
                'formulas': 8, 'max_depth': 2, 'max_size': 2, 'max_rows': 3, 'team_samples': 4,
                'structure_samples': 6, 'limits': {'max_search_nodes': 2_000},
            },
            'strict-implies-lax': {
                'formulas': 8, 'max_depth': 2, 'max_size': 2, 'max_rows': 3, 'team_samples': 4,
                'structure_samples': 6, 'limits': {'max_search_nodes': 2_000},
            },
            'empty-team': {'formulas': 20, 'max_depth': 3, 'max_size': 2, 'structure_samples': 8},
            'downward-closure': {
                'formulas': 8, 'max_depth': 2, 'max_size': 2, 'max_rows': 3, 'team_samples': 4,
                'structure_samples': 6, 'limits': {'max_search_nodes': 2_000},
            },
            'dependence-strict-lax': {
                'formulas': 8, 'max_depth': 2, 'max_size': 2, 'max_rows': 3, 'team_samples': 4,
                'structure_samples': 6, 'limits': {'max_search_nodes': 2_000},
            },
            'lax-locality': {
                'formulas': 8, 'max_depth': 2, 'max_size': 2, 'max_rows': 3, 'team_samples': 4,
                'structure_samples': 6, 'limits': {'max_search_nodes': 2_000},
            },
            # The lax split of the nine-row extended team has 3 ** 9 candidates.
            'strict-locality-failure': {'limits': {'max_split_candidates': 3 ** 9}},
            'restricted-locality': {'formulas': 8, 'max_size': 2, 'max_rows': 3, 'team_samples': 4, 'structure_samples': 6},
            'lemma-renaming': {
                'formulas': 8, 'max_size': 2, 'max_rows': 3, 'team_samples': 6,
                'structure_samples': 8, 'limits': {'max_search_nodes': 2_000},
            },
            'lemma-relativization': {'max_size': 2, 'variables': 3, 'max_rows': None},
            'lemma-contraction': {'max_size': 2, 'max_rows': 3},
            'dependence-as-independence': {'max_size': 3},
            'prenex-normal-form': {
                'formulas': 6, 'max_depth': 3, 'max_size': 2, 'max_universals': 1,
                'limits': {'max_search_nodes': 20_000},
            },
            'eso-translation': {
                'formulas': 5, 'max_depth': 1, 'max_size': 2, 'max_universals': 1, 'max_existentials': 1,
                'structure_samples': 16, 'limits': {'max_witness_functions': 20_000, 'max_search_nodes': 20_000},
            },
            'inclusion-translation': {'max_size': 2, 'structure_samples': 12},
        },
        'full': {
            'strict-disjunction-example': {},
            'flatness': {'formulas': 200, 'max_depth': 3, 'max_size': 3, 'max_rows': 8, 'team_samples': 3, 'structure_samples': 60},
            'strict-implies-lax': {'formulas': 500, 'max_depth': 3, 'max_size': 2, 'max_rows': 6, 'team_samples': 4},
            'empty-team': {'formulas': 500, 'max_depth': 3, 'max_size': 2},
            'downward-closure': {'formulas': 200, 'max_depth': 3, 'max_size': 2, 'max_rows': 6, 'team_samples': 4},
            'dependence-strict-lax': {'formulas': 200, 'max_depth': 3, 'max_size': 2, 'max_rows': 6, 'team_samples': 4},
            'lax-locality': {'formulas': 500, 'max_depth': 3, 'max_size': 2, 'max_rows': 6, 'team_samples': 4},
            'strict-locality-failure': {'limits': {'max_split_candidates': 3 ** 9}},
            'restricted-locality': {'formulas': 100, 'max_size': 2, 'max_rows': 6, 'team_samples': 6},
            'lemma-renaming': {'formulas': 100, 'max_size': 3, 'max_rows': 6, 'team_samples': 10, 'structure_samples': 60},
            'lemma-relativization': {'max_size': 2, 'variables': 4, 'max_rows': None},
            'lemma-contraction': {'max_size': 2, 'max_rows': None},
            'dependence-as-independence': {'max_size': 3},
            'prenex-normal-form': {'formulas': 100, 'max_depth': 3, 'max_size': 3, 'max_universals': 2},
            'eso-translation': {'formulas': 30, 'max_depth': 3, 'max_size': 2, 'max_universals': 2},
            'inclusion-translation': {'max_size': 3, 'structure_samples': 40},
        },
    },
}
