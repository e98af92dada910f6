"""
Validación del manifiesto JSON que reciben los comandos y la API.

El formulario sólo revisa la forma del documento (claves conocidas, tipos y
rangos); la construcción de grupos y contextos vive en services.py.
"""
from math import gcd

from django import forms

from .exceptions import AutoenlaceError
from .manifold_groups import (
    ConnectedSumDescriptor,
    IntMatrix2,
    SeifertPresentation,
    Summand,
    SummandKind,
)

MANIFEST_KEYS = ('manifold', 'group', 'knot', 'loop', 'path')

SUMMAND_KEYS = {
    SummandKind.S3: (),
    SummandKind.LENS: ('p', 'q'),
    SummandKind.SEIFERT: ('fibers', 'holes'),
    SummandKind.TORUS_BUNDLE: ('monodromy',),
    SummandKind.S1XS2: (),
    SummandKind.OPAQUE_IRREDUCIBLE: (),
    SummandKind.OPAQUE_PRIME: (),
}

GROUP_KEYS = {
    'free': ('symbols',),
    'free-product': ('orders', 'symbols'),
    'seifert': ('fibers', 'holes'),
    'seifert-quotient': ('fibers', 'holes'),
    'torus-bundle': ('monodromy',),
}

KNOT_FLAGS = (
    'crosses_nonseparating_sphere_once',
    'orientation_reversing',
    'in_irreducible_summand',
    'fiber_orientation_preserving',
    'contractible',
)
KNOT_KEYS = ('pi1', 'gauss', 'spheres', 'alpha_sq') + KNOT_FLAGS


def _is_int(value):
    return isinstance(value, int) and not isinstance(value, bool)


def _require_object(value, where):
    if not isinstance(value, dict):
        raise forms.ValidationError(f'{where} debe ser un objeto JSON')
    return value


def _check_keys(data, allowed, where):
    unknown = sorted(set(data) - set(allowed) - {'kind'})
    if unknown:
        raise forms.ValidationError(f"Campos desconocidos en {where}: {', '.join(unknown)}")


def _kind(data, choices, where):
    kind = data.get('kind')
    if kind not in choices:
        raise forms.ValidationError(
            f"{where}: 'kind' debe ser uno de {', '.join(str(c) for c in choices)}"
        )
    return kind


def _seifert(data, where):
    fibers = data.get('fibers', [])
    if not isinstance(fibers, list) or not all(
        isinstance(pair, list) and len(pair) == 2 and all(_is_int(x) for x in pair)
        for pair in fibers
    ):
        raise forms.ValidationError(f"{where}: 'fibers' debe ser una lista de pares [α, β]")
    holes = data.get('holes', 1)
    if not _is_int(holes):
        raise forms.ValidationError(f"{where}: 'holes' debe ser entero")
    try:
        return SeifertPresentation.from_invariants(fibers, holes)
    except AutoenlaceError as e:
        raise forms.ValidationError(f'{where}: {e}')


def _monodromy(data, where):
    value = data.get('monodromy')
    if not isinstance(value, str) and not (
        isinstance(value, list) and all(_is_int(x) for x in value)
    ):
        raise forms.ValidationError(f"{where}: 'monodromy' debe ser 'A', 'B', 'C' o [a, b, c, d]")
    try:
        return IntMatrix2.from_value(value)
    except AutoenlaceError as e:
        raise forms.ValidationError(f'{where}: {e}')


def _summand(data, where):
    _require_object(data, where)
    kind = SummandKind(_kind(data, [k.value for k in SummandKind], where))
    _check_keys(data, SUMMAND_KEYS[kind], where)
    if kind is SummandKind.LENS:
        p, q = data.get('p'), data.get('q', 1)
        if not (_is_int(p) and _is_int(q)) or p < 1:
            raise forms.ValidationError(f"{where}: 'p' y 'q' deben ser enteros con p >= 1")
        if gcd(p, q) != 1:
            raise forms.ValidationError(f'{where}: L({p},{q}) requiere p y q coprimos')
        return Summand(kind, lens=(p, q))
    if kind is SummandKind.SEIFERT:
        return Summand(kind, seifert=_seifert(data, where))
    if kind is SummandKind.TORUS_BUNDLE:
        return Summand(kind, monodromy=_monodromy(data, where))
    return Summand(kind)


def _manifold(data, where):
    _require_object(data, where)
    unknown = sorted(set(data) - {'orientable', 'summands', 'double_cover'})
    if unknown:
        raise forms.ValidationError(f"Campos desconocidos en {where}: {', '.join(unknown)}")
    orientable = data.get('orientable', True)
    if not isinstance(orientable, bool):
        raise forms.ValidationError(f"{where}: 'orientable' debe ser booleano")
    summands = data.get('summands')
    if not isinstance(summands, list) or not summands:
        raise forms.ValidationError(f"{where}: 'summands' debe ser una lista no vacía")
    double_cover = data.get('double_cover')
    if double_cover is not None:
        double_cover = _manifold(double_cover, f'{where}.double_cover')
    return ConnectedSumDescriptor(
        summands=tuple(_summand(s, f'{where}.summands[{i}]') for i, s in enumerate(summands)),
        orientable=orientable,
        double_cover=double_cover,
    )


class ManifestForm(forms.Form):
    """Manifiesto: variedad, grupo, nudo, palabra de lazos y registro de caminos."""
    manifold = forms.JSONField(required=False)
    group = forms.JSONField(required=False)
    knot = forms.JSONField(required=False)
    loop = forms.CharField(required=False, strip=True)
    path = forms.JSONField(required=False)

    def clean_manifold(self):
        data = self.cleaned_data.get('manifold')
        if data is None:
            return None
        return _manifold(data, 'manifold')

    def clean_group(self):
        data = self.cleaned_data.get('group')
        if data is None:
            return None
        _require_object(data, 'group')
        kind = _kind(data, list(GROUP_KEYS), 'group')
        _check_keys(data, GROUP_KEYS[kind], 'group')
        spec = {'kind': kind}
        if kind in ('free', 'free-product'):
            symbols = data.get('symbols')
            if symbols is not None and not (
                isinstance(symbols, list) and all(isinstance(s, str) and s for s in symbols)
            ):
                raise forms.ValidationError("group: 'symbols' debe ser una lista de cadenas")
            if kind == 'free' and symbols is None:
                raise forms.ValidationError("group: un grupo libre necesita 'symbols'")
            spec['symbols'] = tuple(symbols) if symbols is not None else None
        if kind == 'free-product':
            orders = data.get('orders')
            if not isinstance(orders, list) or not all(
                order is None or (_is_int(order) and order >= 2) for order in orders
            ):
                raise forms.ValidationError("group: 'orders' debe listar enteros >= 2 o null")
            spec['orders'] = tuple(orders)
        if kind in ('seifert', 'seifert-quotient'):
            spec['presentation'] = _seifert(data, 'group')
        if kind == 'torus-bundle':
            spec['monodromy'] = _monodromy(data, 'group')
        return spec

    def clean_knot(self):
        data = self.cleaned_data.get('knot')
        if data is None:
            return {}
        _require_object(data, 'knot')
        unknown = sorted(set(data) - set(KNOT_KEYS))
        if unknown:
            raise forms.ValidationError(f"Campos desconocidos en knot: {', '.join(unknown)}")
        for key in ('pi1', 'gauss', 'alpha_sq'):
            if key in data and not isinstance(data[key], str):
                raise forms.ValidationError(f"knot: '{key}' debe ser una cadena")
        for flag in KNOT_FLAGS:
            if flag in data and not isinstance(data[flag], bool):
                raise forms.ValidationError(f"knot: '{flag}' debe ser booleano")
        spheres = data.get('spheres', [])
        if not isinstance(spheres, list) or not all(_is_int(s) and s >= 0 for s in spheres):
            raise forms.ValidationError("knot: 'spheres' debe ser una lista de índices >= 0")
        knot = {flag: data.get(flag, False) for flag in KNOT_FLAGS}
        knot.update(
            pi1=data.get('pi1'), gauss=data.get('gauss'), alpha_sq=data.get('alpha_sq'),
            spheres=tuple(spheres),
        )
        return knot

    def clean_loop(self):
        return self.cleaned_data.get('loop') or None

    def clean_path(self):
        data = self.cleaned_data.get('path')
        if data is None:
            return None
        if not isinstance(data, list):
            raise forms.ValidationError('path debe ser una lista de cruces')
        crossings = []
        for i, entry in enumerate(data):
            _require_object(entry, f'path[{i}]')
            if set(entry) != {'sign', 'loop_word'}:
                raise forms.ValidationError(f"path[{i}] debe tener exactamente 'sign' y 'loop_word'")
            if entry['sign'] not in (1, -1) or isinstance(entry['sign'], bool):
                raise forms.ValidationError(f'path[{i}]: el signo debe ser 1 o -1')
            if not isinstance(entry['loop_word'], str):
                raise forms.ValidationError(f"path[{i}]: 'loop_word' debe ser una cadena")
            crossings.append((entry['sign'], entry['loop_word']))
        return tuple(crossings)

    def clean(self):
        cleaned_data = super().clean()
        unknown = sorted(set(self.data) - set(MANIFEST_KEYS))
        if unknown:
            raise forms.ValidationError(f"Campos desconocidos en el manifiesto: {', '.join(unknown)}")
        return cleaned_data
