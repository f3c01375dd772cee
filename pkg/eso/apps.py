from django.apps import AppConfig


class EsoConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'eso'
