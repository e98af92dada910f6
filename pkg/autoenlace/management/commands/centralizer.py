from autoenlace.services import centralizer_report

from ._base import ManifestCommand


class Command(ManifestCommand):
    help = 'Describe el centralizador de la clase de K en π₁ con su certificado'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument(
            '--oracle', type=int, metavar='L',
            help='Compara con la enumeración exhaustiva de palabras de longitud <= L',
        )

    def build_report(self, manifest, options):
        return centralizer_report(manifest, oracle=options.get('oracle'))

    def write_report(self, report):
        centralizer = report['centralizer']
        self.stdout.write(f"📐 Grupo: {report['group']}   K = {report['knot']}")
        if 'projected' in report:
            self.stdout.write(f"  proyección al cociente por la fibra: {report['projected']}")
        self.stdout.write(self.style.SUCCESS(f"✅ Centralizador: {centralizer['shape']}"))
        for key in ('generators', 'root', 'root_exponent', 'conjugator', 'factor', 'factor_order', 'order'):
            if key in centralizer:
                self.stdout.write(f'  {key}: {centralizer[key]}')
        for constraint in centralizer.get('constraints', ()):
            self.stdout.write(f'  q ≡ {constraint["residue"]}: {constraint}')
        oracle = report.get('oracle')
        if oracle is None:
            return
        if oracle['agrees']:
            self.stdout.write(self.style.SUCCESS(f"✅ El oráculo coincide (radio {oracle['radius']})"))
        else:
            self.stdout.write(self.style.ERROR(f"❌ El oráculo no coincide (radio {oracle['radius']})"))
