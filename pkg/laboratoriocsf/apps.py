from django.apps import AppConfig


class LaboratoriocsfConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'laboratoriocsf'
    verbose_name = 'Laboratório de CSF com sorte'
