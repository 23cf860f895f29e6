"""
Django settings for project project.

Generated by 'django-admin startproject' using Django 5.2.6.

O projeto não tem superfície web: só o app laboratoriocsf, seu comando
de gerenciamento 'csf' e o banco onde execuções são arquivadas.
"""

from pathlib import Path
from decouple import config
import dj_database_url

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


SECRET_KEY = config('SECRET_KEY', default='django-insecure-laboratorio-csf-somente-local')

DEBUG = config('DEBUG', default=True, cast=bool)

ALLOWED_HOSTS = config('ALLOWED_HOSTS', default='localhost,127.0.0.1').split(',')


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'laboratoriocsf.apps.LaboratoriocsfConfig',
]


# Database

# PostgreSQL quando DATABASE_URL estiver definida, SQLite local caso contrário
DATABASE_URL = config('DATABASE_URL', default=None)

if DATABASE_URL:
    db_config = dj_database_url.parse(DATABASE_URL)
    if 'postgres' in DATABASE_URL:
        db_config['ENGINE'] = 'django.db.backends.postgresql'

    DATABASES = {
        'default': db_config
    }
else:
    DATABASES = {
        'default': {
            'ENGINE': 'django.db.backends.sqlite3',
            'NAME': BASE_DIR / 'db.sqlite3',
        }
    }


# Internationalization

LANGUAGE_CODE = 'pt-br'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_TZ = True


DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Laboratório de CSF
# Valores fixos: o comando csf não lê variáveis de ambiente, só --seed, --samples e --max-iter

LABORATORIO_CSF = {
    'BACKEND_EXATO_HABILITADO': True,
    'AMOSTRAGEM': {
        'SEMENTE': 0,
        'PERFIS': 10000,
        'TOLERANCIA': 1e-6,
        'TOLERANCIA_COMPATIVEL': 1e-9,
    },
    'EQUILIBRIO': {
        'AMORTECIMENTO': 0.5,
        'MAX_ITERACOES': 10000,
        'TOLERANCIA': 1e-8,
        'PONTOS_GRADE': 1000,
        'PONTOS_AUDITORIA': 1000,
        'TOLERANCIA_AUDITORIA': 1e-6,
    },
}


# Logging: diagnósticos vão para stderr, stdout fica para os relatórios

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simples': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'stderr': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'simples',
        },
    },
    'loggers': {
        'laboratoriocsf': {
            'handlers': ['stderr'],
            'level': config('LOG_LEVEL', default='WARNING'),
            'propagate': False,
        },
    },
}
