from django.apps import AppConfig


class GeometryConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "noisywires.apps.geometry"
    verbose_name = "Wire geometry"
