from django.apps import AppConfig


class CircuitConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "noisywires.apps.circuit"
    verbose_name = "Circuit model"
