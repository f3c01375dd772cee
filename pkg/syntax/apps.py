from django.apps import AppConfig


class SyntaxConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'syntax'
