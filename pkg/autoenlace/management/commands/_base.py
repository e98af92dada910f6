from django.core.management.base import BaseCommand, CommandError

from autoenlace.exceptions import AutoenlaceError
from autoenlace.services import load_manifest, render


class ManifestCommand(BaseCommand):
    """Base de eval, centralizer y classify: leen --manifest y aceptan --json."""

    def add_arguments(self, parser):
        parser.add_argument('--manifest', required=True, help='Archivo JSON con el manifiesto')
        parser.add_argument('--json', action='store_true', help='Imprime el reporte como JSON')

    def build_report(self, manifest, options):
        raise NotImplementedError

    def write_report(self, report):
        raise NotImplementedError

    def handle(self, *args, **options):
        try:
            manifest = load_manifest(options['manifest'])
            report = self.build_report(manifest, options)
        except AutoenlaceError as e:
            raise CommandError(f'❌ {e}', returncode=e.exit_code)
        if options['json']:
            self.stdout.write(render(report))
        else:
            self.write_report(report)
