from django.apps import AppConfig


class LangevinConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "noisywires.apps.langevin"
    verbose_name = "Langevin oracle"
