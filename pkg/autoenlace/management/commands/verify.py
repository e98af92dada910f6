from django.core.management.base import BaseCommand, CommandError

from autoenlace.conf import default_seed
from autoenlace.exceptions import EXIT_VERIFICATION_FAILED, AutoenlaceError
from autoenlace.services import export_xlsx, render, verify_report
from autoenlace.suites import SUITES


class Command(BaseCommand):
    help = 'Ejecuta suites de verificación por propiedades (matrices, triangle, centralizer, ...)'

    def add_arguments(self, parser):
        parser.add_argument('suites', nargs='+', metavar='suite', help=f"Una o más de: {', '.join(SUITES)}")
        parser.add_argument('--seed', type=int, default=None, help='Semilla de las suites aleatorias')
        parser.add_argument('--json', action='store_true', help='Imprime los reportes como JSON')
        parser.add_argument('--xlsx', metavar='FILE', help='Exporta resumen y casos a una hoja de cálculo')

    def handle(self, *args, **options):
        seed = options['seed'] if options['seed'] is not None else default_seed()
        try:
            reports = [verify_report(name, seed) for name in options['suites']]
        except AutoenlaceError as e:
            raise CommandError(f'❌ {e}', returncode=e.exit_code)

        if options['json']:
            self.stdout.write(render([report.as_dict() for report in reports]))
        else:
            for report in reports:
                self._write_report(report)

        if options['xlsx']:
            export_xlsx(reports, options['xlsx'])
            self.stdout.write(self.style.SUCCESS(f"📊 Reporte exportado a {options['xlsx']}"))

        failed = [report.suite for report in reports if not report.ok]
        if failed:
            raise CommandError(
                f"❌ Verificación fallida en: {', '.join(failed)}", returncode=EXIT_VERIFICATION_FAILED,
            )

    def _write_report(self, report):
        self.stdout.write(f'🔬 Suite {report.suite} (semilla {report.seed})')
        for case in report.cases:
            if case.passed:
                self.stdout.write(self.style.SUCCESS(f'  ✅ {case.name}'))
            else:
                self.stdout.write(self.style.ERROR(f'  ❌ {case.name}: {case.detail}'))
        summary = f'{report.passed} correctos, {report.failed} fallidos'
        style = self.style.SUCCESS if report.ok else self.style.ERROR
        self.stdout.write(style(f'  {summary}'))
