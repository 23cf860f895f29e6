"""
Leitura das configurações do laboratório a partir de settings.LABORATORIO_CSF
"""
from django.conf import settings


PADROES = {
    'BACKEND_EXATO_HABILITADO': True,
    'AMOSTRAGEM': {
        'SEMENTE': 0,
        'PERFIS': 10000,
        'TOLERANCIA': 1e-6,
        'TOLERANCIA_COMPATIVEL': 1e-9,
    },
    'EQUILIBRIO': {
        'AMORTECIMENTO': 0.5,
        'MAX_ITERACOES': 10000,
        'TOLERANCIA': 1e-8,
        'PONTOS_GRADE': 1000,
        'PONTOS_AUDITORIA': 1000,
        'TOLERANCIA_AUDITORIA': 1e-6,
    },
}


def _valores():
    if not settings.configured:
        return {}
    return getattr(settings, 'LABORATORIO_CSF', {}) or {}


def obter(secao, chave=None):
    """Retorna um valor configurado, caindo no padrão quando ausente"""
    valores = _valores()
    if chave is None:
        return valores.get(secao, PADROES[secao])
    return valores.get(secao, {}).get(chave, PADROES[secao][chave])


def backend_exato_habilitado():
    return bool(obter('BACKEND_EXATO_HABILITADO'))
