"""
Parámetros de cálculo leídos de settings, con valores por defecto cuando
Django no está configurado (uso de la librería fuera del proyecto).
"""
from django.conf import settings

DEFAULTS = {
    'AUTOENLACE_EXPONENT_BOUND': 2 ** 62,
    'AUTOENLACE_ORACLE_RADIUS': 8,
    'AUTOENLACE_ORACLE_EXPONENT': 1,
    'AUTOENLACE_DEFAULT_SEED': 0,
    'AUTOENLACE_RANDOM_CASES': 1000,
}


def get_setting(name):
    if settings.configured:
        return getattr(settings, name, DEFAULTS[name])
    return DEFAULTS[name]


def exponent_bound():
    return get_setting('AUTOENLACE_EXPONENT_BOUND')


def oracle_radius():
    return get_setting('AUTOENLACE_ORACLE_RADIUS')


def oracle_exponent():
    return get_setting('AUTOENLACE_ORACLE_EXPONENT')


def default_seed():
    return get_setting('AUTOENLACE_DEFAULT_SEED')


def random_cases():
    return get_setting('AUTOENLACE_RANDOM_CASES')
