import json
import logging

from django.http import JsonResponse
from django.views.decorators.csrf import csrf_exempt

from .conf import default_seed
from .exceptions import EXIT_UNSUPPORTED, AutoenlaceError, ManifestError
from .services import centralizer_report, classify_report, eval_report, parse_manifest, verify_report

logger = logging.getLogger(__name__)


def _error_status(error):
    return 422 if error.exit_code == EXIT_UNSUPPORTED else 400


def _manifest_endpoint(request, build):
    if request.method != 'POST':
        return JsonResponse({'error': 'Método no permitido'}, status=405)
    try:
        data = json.loads(request.body or '{}')
    except json.JSONDecodeError:
        logger.warning(f'{request.path}: cuerpo no JSON')
        return JsonResponse({'error': 'El cuerpo no es JSON válido'}, status=400)
    try:
        report = build(parse_manifest(data), request)
    except AutoenlaceError as e:
        payload = {'error': str(e)}
        if getattr(e, 'errors', None):
            payload['errors'] = e.errors
        return JsonResponse(payload, status=_error_status(e))
    return JsonResponse(report, json_dumps_params={'sort_keys': True})


@csrf_exempt
def api_eval(request):
    """δ, Δ_aslk y Δ̃_aslk del manifiesto enviado en el cuerpo."""
    return _manifest_endpoint(request, lambda manifest, request: eval_report(manifest))


@csrf_exempt
def api_centralizer(request):
    """Centralizador de K; ?oracle=L agrega la comparación exhaustiva."""
    def build(manifest, request):
        oracle = request.GET.get('oracle')
        if oracle is not None and not oracle.isdigit():
            raise ManifestError(f'oracle debe ser un entero >= 0: {oracle!r}')
        return centralizer_report(manifest, oracle=int(oracle) if oracle is not None else None)
    return _manifest_endpoint(request, build)


@csrf_exempt
def api_classify(request):
    return _manifest_endpoint(request, lambda manifest, request: classify_report(manifest))


def api_verify(request, suite):
    if request.method != 'GET':
        return JsonResponse({'error': 'Método no permitido'}, status=405)
    seed = request.GET.get('seed')
    try:
        seed = int(seed) if seed is not None else default_seed()
    except ValueError:
        return JsonResponse({'error': f'seed debe ser entero: {seed!r}'}, status=400)
    try:
        report = verify_report(suite, seed)
    except AutoenlaceError as e:
        return JsonResponse({'error': str(e)}, status=_error_status(e))
    return JsonResponse({**report.as_dict(), 'ok': report.ok}, json_dumps_params={'sort_keys': True})
