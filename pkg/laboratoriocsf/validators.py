"""
Validadores para parâmetros de CSF
"""
import math
from fractions import Fraction
from numbers import Real

import numpy as np


LIMITE_COMPETIDORES = 64


def _numero_finito(valor):
    if isinstance(valor, bool) or not isinstance(valor, (Real, Fraction)):
        return False
    return math.isfinite(float(valor))


def validar_numero_competidores(n):
    """Valida n (2 <= n <= 64, máscaras de bits)"""
    if isinstance(n, bool) or not isinstance(n, int):
        return False, "Número de competidores deve ser inteiro"

    if n < 2:
        return False, "Um concurso precisa de pelo menos 2 competidores"

    if n > LIMITE_COMPETIDORES:
        return False, f"No máximo {LIMITE_COMPETIDORES} competidores (subconjuntos são máscaras de bits)"

    return True, ""


def validar_rotulos(rotulos, n):
    if rotulos is None:
        return True, ""

    if len(rotulos) != n:
        return False, "Deve haver exatamente um rótulo por competidor"

    if len(set(rotulos)) != len(rotulos):
        return False, "Rótulos dos competidores devem ser únicos"

    return True, ""


def validar_vetor_positivo(valores, nome='a'):
    """Valida a_j > 0 para todo j"""
    for posicao, valor in enumerate(valores):
        if not _numero_finito(valor):
            return False, f"{nome}[{posicao}] deve ser um número finito"
        if valor <= 0:
            return False, f"{nome}[{posicao}] deve ser positivo"

    return True, ""


def validar_vetor_nao_negativo(valores, nome='b'):
    """Valida b_j >= 0 para todo j"""
    for posicao, valor in enumerate(valores):
        if not _numero_finito(valor):
            return False, f"{nome}[{posicao}] deve ser um número finito"
        if valor < 0:
            return False, f"{nome}[{posicao}] não pode ser negativo"

    return True, ""


def validar_expoente(r):
    """Valida o parâmetro discriminante r > 0"""
    if not _numero_finito(r):
        return False, "r deve ser um número finito"

    if r <= 0:
        return False, "r deve ser positivo"

    return True, ""


def validar_esforcos(valores):
    """Esforços não negativos com pelo menos um positivo (concurso ativo)"""
    ok, mensagem = validar_vetor_nao_negativo(valores, nome='x')
    if not ok:
        return ok, mensagem

    if not any(valor > 0 for valor in valores):
        return False, "Pelo menos um competidor deve investir esforço positivo"

    return True, ""


def grade_validacao(dominio_max=1e6):
    """0 mais 64 pontos log-espaçados em [1e-6, min(1e6, domínio)]"""
    topo = min(1e6, float(dominio_max))
    return np.concatenate(([0.0], np.logspace(-6.0, math.log10(topo), 64)))


def validar_funcao_impacto(funcao, dominio_max=1e6):
    """
    Amostra a função de impacto na grade de validação.
    Deve ser finita, não negativa e estritamente crescente.
    """
    anterior = None
    for ponto in grade_validacao(dominio_max):
        try:
            valor = float(funcao(float(ponto)))
        except (ArithmeticError, ValueError) as erro:
            return False, f"Função de impacto falhou em x={ponto:g}: {erro}"

        if not math.isfinite(valor):
            return False, f"Função de impacto não finita em x={ponto:g}"

        if valor < 0:
            return False, f"Função de impacto negativa em x={ponto:g}"

        if anterior is not None and valor <= anterior:
            return False, f"Função de impacto não é estritamente crescente perto de x={ponto:g}"

        anterior = valor

    return True, ""


def validar_tabela_impacto(pontos):
    """Pontos (x, f(x)) de uma tabela com interpolação linear monótona"""
    if len(pontos) < 2:
        return False, "A tabela precisa de pelo menos 2 pontos"

    for par in pontos:
        if len(par) != 2 or not all(_numero_finito(valor) for valor in par):
            return False, "Cada ponto da tabela deve ser um par (x, f(x)) numérico"

    if pontos[0][0] != 0:
        return False, "A tabela deve começar em x = 0"

    for (x0, f0), (x1, f1) in zip(pontos, pontos[1:]):
        if x1 <= x0:
            return False, "Os valores de x da tabela devem ser estritamente crescentes"
        if f1 <= f0:
            return False, "Os valores de f(x) da tabela devem ser estritamente crescentes"

    if pontos[0][1] < 0:
        return False, "f(0) não pode ser negativo"

    return True, ""
