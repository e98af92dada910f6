"""
Manifiesto → reporte. Los comandos de gestión y la API llaman a estas
funciones; todas devuelven diccionarios listos para JSON.
"""
import json
import logging
from functools import wraps

import pandas as pd

from .classify import FramingCount, KnotDescriptor, aslk_gap, framing_classes
from .exceptions import (
    AutoenlaceError,
    ClosedSeifertError,
    ManifestError,
    NotInCentralizerError,
    UnsupportedContextError,
)
from .forms import ManifestForm
from .framed_gauss import (
    SingularGaussCode,
    format_gauss,
    parse_gauss,
    slk,
    vassiliev_defect,
    writhe,
)
from .loop_calculus import (
    EvaluationContext,
    PathCrossing,
    PathRecord,
    cyclic_normal_form,
    decompose_power,
    evaluate,
    parse_loop_word,
    path_delta_aslk,
    path_delta_aslk_tilde,
    t_value,
    verify_identity,
)
from .manifold_groups import (
    MONODROMY,
    SemidirectGroup,
    SummandKind,
    centralizer_semidirect,
    closed_seifert_route,
    quotient_by_fiber,
    seifert_group,
)
from .oracles import centralizer_oracle, semidirect_centralizer_oracle
from .suites import run_suite
from .words import (
    GroupKind,
    centralizer_free_product,
    format_word,
    free_product,
    project_to_base,
)

logger = logging.getLogger(__name__)


def logged(command):
    """Registra cada comando (INFO) y los errores del dominio (ERROR)."""
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            logger.info(f'{command}: inicio')
            try:
                return func(*args, **kwargs)
            except AutoenlaceError as e:
                logger.error(f'{command}: {type(e).__name__}: {e}')
                raise
        return wrapper
    return decorator


# --- Manifiestos ---

def parse_manifest(data):
    """Valida el documento con ManifestForm y devuelve los datos limpios."""
    if not isinstance(data, dict):
        raise ManifestError('El manifiesto debe ser un objeto JSON')
    form = ManifestForm(data=data)
    if not form.is_valid():
        errors = {field: [str(e) for e in messages] for field, messages in form.errors.items()}
        raise ManifestError(f'Manifiesto inválido: {json.dumps(errors, ensure_ascii=False)}', errors)
    return form.cleaned_data


def load_manifest(path):
    try:
        with open(path, encoding='utf-8') as handle:
            data = json.load(handle)
    except OSError as e:
        raise ManifestError(f'No se pudo leer el manifiesto {path}: {e.strerror}') from e
    except json.JSONDecodeError as e:
        raise ManifestError(f'JSON inválido en {path}: {e}') from e
    return parse_manifest(data)


def render(report):
    """JSON determinista: claves ordenadas y sin escapar acentos."""
    return json.dumps(report, sort_keys=True, ensure_ascii=False, indent=2)


# --- Grupos y contextos ---

def _group_from_summand(summand):
    if summand.kind is SummandKind.TORUS_BUNDLE:
        return SemidirectGroup(summand.monodromy)
    presentation = summand.seifert
    if presentation.holes:
        return seifert_group(presentation)
    route = closed_seifert_route(presentation)
    if route.monodromy is not None:
        return SemidirectGroup(MONODROMY[route.monodromy])
    raise ClosedSeifertError(
        f'Seifert cerrado por la ruta {route.route}: declare el grupo explícitamente'
    )


def build_group(manifest):
    spec = manifest.get('group')
    if spec is None:
        manifold = manifest.get('manifold')
        summands = manifold.summands if manifold is not None else ()
        if len(summands) == 1 and summands[0].kind in (SummandKind.SEIFERT, SummandKind.TORUS_BUNDLE):
            return _group_from_summand(summands[0])
        return free_product(())
    kind = spec['kind']
    if kind == 'free':
        return free_product((None,) * len(spec['symbols']), spec['symbols'])
    if kind == 'free-product':
        return free_product(spec['orders'], spec['symbols'])
    if kind == 'seifert':
        return seifert_group(spec['presentation'])
    if kind == 'seifert-quotient':
        return quotient_by_fiber(spec['presentation'])
    return SemidirectGroup(spec['monodromy'])


def _knot_class(group, knot):
    text = knot.get('pi1')
    if text is None:
        return group.identity()
    return group.parse(text)


def build_context(manifest):
    group = build_group(manifest)
    knot = manifest.get('knot') or {}
    K = _knot_class(group, knot)
    alpha_sq = knot.get('alpha_sq')
    return EvaluationContext(
        group=group,
        K=K,
        in_irreducible_summand=knot.get('in_irreducible_summand', False),
        fiber_orientation_preserving=knot.get('fiber_orientation_preserving', False),
        contractible=knot.get('contractible', False) or knot.get('pi1') is None,
        spheres=knot.get('spheres', ()),
        alpha_sq=group.parse(alpha_sq) if alpha_sq is not None else None,
    )


def _gauss_section(text):
    code = parse_gauss(text)
    if isinstance(code, SingularGaussCode):
        return {'code': format_gauss(code), 'slk_defect': vassiliev_defect(slk, code)}
    return {'code': format_gauss(code), 'writhe': writhe(code), 'framing': code.framing, 'slk': slk(code)}


# --- Reportes ---

@logged('eval')
def eval_report(manifest):
    if manifest.get('loop') is None and manifest.get('path') is None:
        raise ManifestError("eval necesita una sección 'loop' o 'path'")
    ctx = build_context(manifest)
    group = ctx.group
    report = {'command': 'eval', 'group': str(group), 'knot': group.format(ctx.K)}
    if manifest.get('loop') is not None:
        w = parse_loop_word(manifest['loop'], ctx)
        t = t_value(w)
        report['loop'] = {
            'word': str(w),
            'cyclic_form': str(cyclic_normal_form(w)),
            **evaluate(w).as_dict(),
            't_value': group.format(t),
            'identity': verify_identity(w).status.value,
        }
        if not ctx.contractible:
            try:
                report['loop']['decomposition'] = decompose_power(t, ctx).as_dict()
            except (UnsupportedContextError, NotInCentralizerError) as e:
                report['loop']['decomposition'] = {'unavailable': str(e)}
    if manifest.get('path') is not None:
        record = PathRecord(tuple(
            PathCrossing(sign, group.parse(text)) for sign, text in manifest['path']
        ))
        report['path'] = {
            'crossings': len(record.crossings),
            'signs': list(record.signs),
            'aslk': path_delta_aslk(record),
            'aslk_tilde': path_delta_aslk_tilde(record, group),
        }
    gauss = (manifest.get('knot') or {}).get('gauss')
    if gauss is not None:
        report['gauss'] = _gauss_section(gauss)
    return report


@logged('centralizer')
def centralizer_report(manifest, oracle=None):
    knot = manifest.get('knot') or {}
    if knot.get('pi1') is None:
        raise ManifestError("centralizer necesita 'knot.pi1'")
    group = build_group(manifest)
    K = group.parse(knot['pi1'])
    report = {'command': 'centralizer', 'group': str(group), 'knot': group.format(K)}

    if isinstance(group, SemidirectGroup):
        description = centralizer_semidirect(K, group.monodromy)
        report['centralizer'] = description.certificate()
        if oracle is not None:
            mismatches = semidirect_centralizer_oracle(description, radius=oracle)
            report['oracle'] = {
                'agrees': not mismatches,
                'radius': oracle,
                'mismatches': [group.format(h) for h in mismatches],
            }
        return report

    if group.kind is GroupKind.FIBER_EXTENSION:
        base_class = project_to_base(K)
        if base_class.is_identity:
            raise UnsupportedContextError('K es una potencia de la fibra: su proyección es trivial')
        report['projected'] = format_word(base_class)
        K = base_class
    description = centralizer_free_product(K)
    report['centralizer'] = description.certificate()
    if oracle is not None:
        comparison = centralizer_oracle(K, radius=oracle, description=description)
        report['oracle'] = {**comparison.as_dict(), 'radius': oracle}
    return report


@logged('classify')
def classify_report(manifest):
    manifold = manifest.get('manifold')
    if manifold is None:
        raise ManifestError("classify necesita la sección 'manifold'")
    knot = manifest.get('knot') or {}
    descriptor = KnotDescriptor(
        pi1=knot.get('pi1'),
        gauss=knot.get('gauss'),
        crosses_nonseparating_sphere_once=knot.get('crosses_nonseparating_sphere_once', False),
        orientation_reversing=knot.get('orientation_reversing', False),
    )
    verdict = framing_classes(manifold, descriptor)
    report = {
        'command': 'classify',
        'manifold': str(manifold),
        'orientable': manifold.orientable,
        's1xs2_summands': manifold.s1xs2_count,
        **verdict.as_dict(),
    }
    if verdict.count is FramingCount.INFINITE:
        report['aslk_gap_per_double_twist'] = aslk_gap(0, 2)
    routes = [
        closed_seifert_route(s.seifert).as_dict()
        for s in manifold.summands
        if s.kind is SummandKind.SEIFERT and not s.seifert.holes
    ]
    if routes:
        report['closed_seifert_routes'] = routes
    return report


@logged('verify')
def verify_report(suite, seed, **options):
    return run_suite(suite, seed, **options)


# --- Exportación ---

def export_xlsx(reports, output_path):
    """Hoja de resumen y una hoja de casos por suite."""
    with pd.ExcelWriter(output_path, engine='openpyxl') as writer:
        summary = pd.DataFrame([
            {**report.summary(), 'elapsed': round(report.elapsed, 3)} for report in reports
        ])
        summary.to_excel(writer, sheet_name='Resumen', index=False)
        for report in reports:
            cases = pd.DataFrame([case.as_dict() for case in report.cases],
                                 columns=['name', 'passed', 'detail'])
            sheet = report.suite[:31]
            cases.to_excel(writer, sheet_name=sheet, index=False)
            worksheet = writer.sheets[sheet]
            worksheet.column_dimensions['A'].width = 50
            worksheet.column_dimensions['C'].width = 60
    return output_path
