# autoenlace/urls.py
from django.urls import path

from . import views

urlpatterns = [
    path('api/eval/', views.api_eval, name='api_eval'),
    path('api/centralizer/', views.api_centralizer, name='api_centralizer'),
    path('api/classify/', views.api_classify, name='api_classify'),
    path('api/verify/<str:suite>/', views.api_verify, name='api_verify'),
]
