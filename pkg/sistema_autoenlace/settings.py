"""
Django settings for sistema_autoenlace project.

El proyecto no tiene modelos: Django aporta los comandos de gestión, la
validación de manifiestos con formularios, la API JSON y el corredor de pruebas.

Todas las claves se leen con python-decouple (variables de entorno o `.env`).
"""

from pathlib import Path
from decouple import config, Csv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = config('SECRET_KEY', default='django-insecure-autoenlace-solo-para-desarrollo')

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = config('DEBUG', default=True, cast=bool)

ALLOWED_HOSTS = config('ALLOWED_HOSTS', default='localhost,127.0.0.1,testserver', cast=Csv())


# Application definition

INSTALLED_APPS = [
    'autoenlace',
    'corsheaders',
]

MIDDLEWARE = [
    'corsheaders.middleware.CorsMiddleware',
    'django.middleware.security.SecurityMiddleware',
    'django.middleware.common.CommonMiddleware',
    'django.middleware.clickjacking.XFrameOptionsMiddleware',
]

ROOT_URLCONF = 'sistema_autoenlace.urls'

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [
                'django.template.context_processors.debug',
                'django.template.context_processors.request',
            ],
        },
    },
]

WSGI_APPLICATION = 'sistema_autoenlace.wsgi.application'


# Database
# No hay modelos; la base sólo existe porque el corredor de pruebas la espera.

DATABASES = {
    'default': {
        'ENGINE': config('DB_ENGINE', default='django.db.backends.sqlite3'),
        'NAME': config('DB_NAME', default=str(BASE_DIR / 'db.sqlite3')),
    }
}


# Internationalization

LANGUAGE_CODE = 'es-MX'

TIME_ZONE = 'America/Mexico_City'

USE_I18N = True

USE_TZ = True



DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Logging
LOG_LEVEL = config('LOG_LEVEL', default='WARNING')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '[{levelname}] {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'loggers': {
        'autoenlace': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
    },
}


# Parámetros de cálculo (ver autoenlace/conf.py para los valores por defecto)
AUTOENLACE_EXPONENT_BOUND = config('AUTOENLACE_EXPONENT_BOUND', default=2 ** 62, cast=int)
AUTOENLACE_ORACLE_RADIUS = config('AUTOENLACE_ORACLE_RADIUS', default=8, cast=int)
AUTOENLACE_ORACLE_EXPONENT = config('AUTOENLACE_ORACLE_EXPONENT', default=1, cast=int)
AUTOENLACE_DEFAULT_SEED = config('AUTOENLACE_DEFAULT_SEED', default=0, cast=int)
AUTOENLACE_RANDOM_CASES = config('AUTOENLACE_RANDOM_CASES', default=1000, cast=int)


# CORS: la API JSON se consume desde herramientas locales
CORS_ALLOWED_ORIGINS = config(
    'CORS_ALLOWED_ORIGINS',
    default='http://localhost:5173,http://127.0.0.1:5173',
    cast=Csv(),
)

CORS_ALLOW_CREDENTIALS = False

CORS_ALLOW_ALL_ORIGINS = False
