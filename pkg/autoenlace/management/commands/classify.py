from autoenlace.services import classify_report

from ._base import ManifestCommand


class Command(ManifestCommand):
    help = 'Cuenta las clases de isotopía de los marcos de K en la variedad del manifiesto'

    def build_report(self, manifest, options):
        return classify_report(manifest)

    def write_report(self, report):
        self.stdout.write(f"📐 Variedad: {report['manifold']}")
        message = f"|K| = {report['count']} (regla {report['rule']})"
        if report['count'] == 'unknown':
            self.stdout.write(self.style.WARNING(f'⚠️ {message}'))
        else:
            self.stdout.write(self.style.SUCCESS(f'✅ {message}'))
        self.stdout.write(f"  {report['anchor']}")
        for route in report.get('closed_seifert_routes', ()):
            self.stdout.write(f'  Seifert cerrado: {route}')
