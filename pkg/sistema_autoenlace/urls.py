"""
URL configuration for sistema_autoenlace project.

Sólo la API JSON de la app `autoenlace`; no hay admin ni páginas HTML.
"""
from django.urls import path, include

urlpatterns = [
    path('', include('autoenlace.urls')),
]
