"""
Catálogo fixo de famílias usado pelas suítes de implicação e aceitação,
e parametrizações aleatórias com semente.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .csf import Linear, Personalizada, PotenciaMaisConstante, Razao, SorteSimetrica, Tullock


@dataclass(frozen=True)
class EntradaCatalogo:
    """Uma especificação com os vereditos esperados (True = vale, False = violado)"""
    nome: str
    spec: object
    esperados: dict = field(default_factory=dict)


def impacto_exponencial(x):
    return math.exp(x)


def impacto_log1p(x):
    return math.log1p(x)


def catalogo():
    return [
        EntradaCatalogo('tullock', Tullock((1, 2, 3)), {
            'SM': True, 'LCA': True, 'HRE': True, 'HOM': True, 'RH': True, 'DC': True, 'CRI': True,
        }),
        EntradaCatalogo('luck_tullock', PotenciaMaisConstante((1, 1, 1), (1, 1, 1)), {
            'SM': True, 'LCA': True, 'HRE': True, 'HOM': False, 'RH': False, 'DC': False, 'CRI': False,
        }),
        EntradaCatalogo('symmetric_luck', SorteSimetrica(3, 1), {
            'SM': True, 'LCA': True, 'HRE': True, 'ANY': True,
        }),
        EntradaCatalogo('linear_headstart', Linear((1, 0, 2)), {
            'SM': True, 'LCA': True, 'HRE': True, 'NAR': True,
        }),
        EntradaCatalogo('tullock_r2', Tullock((1, 1, 1), 2), {
            'SM': True, 'LCA': True, 'NAR': False,
        }),
        EntradaCatalogo('ratio', Razao(3), {
            'SM': True, 'LCA': True, 'ANY': True, 'DC': True, 'NAR': True, 'SP': True, 'CP': True,
        }),
        EntradaCatalogo('custom_exp', Personalizada((impacto_exponencial,) * 3, dominio_max=700, nome='exp'), {
            'SM': True, 'LCA': True, 'HRE': False,
        }),
        EntradaCatalogo('custom_log', Personalizada((impacto_log1p,) * 3, nome='log1p'), {
            'SM': True, 'LCA': True, 'HOM': False,
        }),
    ]


def entrada(nome):
    for item in catalogo():
        if item.nome == nome:
            return item
    raise KeyError(nome)


def parametrizacoes_aleatorias(semente=0, quantidade=20, faixa_n=(2, 6), expoentes=(1, 2, 3, 0.5)):
    """
    Especificações b + a x^r com a, b sorteados em [0.1, 10] (três casas decimais).
    Sempre com soma b > 0; expoentes inteiros admitem o backend racional.
    """
    rng = np.random.default_rng([semente, 1])
    specs = []
    for _ in range(quantidade):
        n = int(rng.integers(faixa_n[0], faixa_n[1] + 1))
        a = tuple(round(float(10 ** rng.uniform(-1, 1)), 3) for _ in range(n))
        b = tuple(round(float(10 ** rng.uniform(-1, 1)), 3) for _ in range(n))
        r = expoentes[int(rng.integers(len(expoentes)))]
        specs.append(PotenciaMaisConstante(a, b, r))
    return specs
