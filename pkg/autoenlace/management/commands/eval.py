from autoenlace.services import eval_report

from ._base import ManifestCommand


def _show(value):
    if isinstance(value, dict):
        return f"no disponible ({value['unavailable']})"
    return str(value)


class Command(ManifestCommand):
    help = 'Evalúa δ, Δ_aslk y Δ̃_aslk sobre la palabra de lazos o el registro de caminos del manifiesto'

    def build_report(self, manifest, options):
        return eval_report(manifest)

    def write_report(self, report):
        self.stdout.write(f"📐 Grupo: {report['group']}   K = {report['knot']}")
        loop = report.get('loop')
        if loop:
            self.stdout.write(self.style.SUCCESS(f"✅ Palabra de lazos: {loop['word']}"))
            self.stdout.write(f"  forma cíclica: {loop['cyclic_form']}")
            self.stdout.write(f"  δ = {loop['delta']}")
            self.stdout.write(f"  Δ_aslk = {_show(loop['aslk'])}")
            self.stdout.write(f"  Δ̃_aslk = {_show(loop['aslk_tilde'])}")
            self.stdout.write(f"  t = {loop['t_value']}")
            if 'decomposition' in loop:
                self.stdout.write(f"  descomposición: {loop['decomposition']}")
            status = loop['identity']
            style = self.style.SUCCESS if status == 'holds' else self.style.WARNING
            self.stdout.write(style(f'  δ = Δ: {status}'))
        path = report.get('path')
        if path:
            self.stdout.write(self.style.SUCCESS(f"✅ Registro de caminos: {path['crossings']} cruces"))
            self.stdout.write(f"  Δ_aslk = {path['aslk']}")
            self.stdout.write(f"  Δ̃_aslk = {path['aslk_tilde']}")
        gauss = report.get('gauss')
        if gauss:
            self.stdout.write(f"🪢 Código de Gauss: {gauss['code']}")
            for key in ('writhe', 'framing', 'slk', 'slk_defect'):
                if key in gauss:
                    self.stdout.write(f'  {key} = {gauss[key]}')
