from django.apps import AppConfig


class SpechtWebsConfig(AppConfig):
    name = "specht_webs"
    verbose_name = "Specht Webs"

    def ready(self) -> None:
        # Registers the bases and the local rules with the global registry
        from . import bases, rules  # noqa: F401
