# autoenlace/apps.py
from django.apps import AppConfig


class AutoenlaceConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'autoenlace'
    verbose_name = 'Autoenlace afín'
