"""
Busca de contraexemplos, encolhimento de testemunhas e reprodução exata
dos exemplos numéricos de HOM, RH e HRE no concurso com sorte a = b = (1, 1, 1).
"""
import logging
from dataclasses import dataclass, replace
from fractions import Fraction

from .amostragem import LAMBDAS_GRADE, PlanoAmostragem, Testemunha
from .axiomas import PULAVEIS, avaliar_predicado, codigo_de, verificar_axioma
from .csf import Backend, PotenciaMaisConstante, checar_backend, converter
from .exceptions import AxiomaInaplicavel

logger = logging.getLogger(__name__)


GRADE_ENCOLHIMENTO = (0, 1, 2, 4)
PASSADAS = 3


@dataclass(frozen=True)
class Contraexemplo:
    axioma: str
    spec: object
    testemunha: Testemunha
    lhs: object
    rhs: object
    lacuna: object
    encolhido: bool = False
    tolerancia: object = 0
    backend: Backend = Backend.FLOAT64

    @property
    def familia(self):
        return self.spec.resumo()

    def reproduzir(self):
        """Reavalia o predicado na testemunha; devolve a Comparacao"""
        return avaliar_predicado(self.spec, self.axioma, self.testemunha, self.backend, self.tolerancia)


def _violacao(spec, axioma, testemunha, backend, tolerancia):
    try:
        comparacao = avaliar_predicado(spec, axioma, testemunha, backend, tolerancia)
    except PULAVEIS + (AxiomaInaplicavel,):
        return None
    return comparacao if comparacao.viola(tolerancia) else None


def _mais_proximo(valor, backend):
    """Valor da grade mais próximo (empate vai para o menor)"""
    alvo = min(GRADE_ENCOLHIMENTO, key=lambda g: (abs(valor - g), g))
    return converter(alvo, backend)


def _por_posto(x, backend):
    """Positivos distintos levados a 1, 2, 4 preservando a ordem; zeros ficam"""
    distintos = sorted({valor for valor in x if valor > 0})
    if len(distintos) > 3:
        return None
    destino = {valor: converter(alvo, backend) for valor, alvo in zip(distintos, (1, 2, 4))}
    return tuple(destino.get(valor, converter(0, backend)) for valor in x)


def _candidatos(t, backend):
    """Passos de encolhimento em ordem fixa"""
    if t.lam is not None and t.lam not in LAMBDAS_GRADE:
        for lam in LAMBDAS_GRADE:
            yield replace(t, lam=converter(lam, backend))

    por_posto = _por_posto(t.x, backend)
    if por_posto is not None and por_posto != t.x:
        yield replace(t, x=por_posto)

    for k, valor in enumerate(t.x):
        alvo = _mais_proximo(valor, backend)
        if alvo != valor:
            vetor = list(t.x)
            vetor[k] = alvo
            yield replace(t, x=tuple(vetor))

    if t.novo_valor is not None:
        alvo = _mais_proximo(t.novo_valor, backend)
        if alvo != t.novo_valor:
            yield replace(t, novo_valor=alvo)

    if t.x_alt is not None:
        for k, valor in enumerate(t.x_alt):
            alvo = _mais_proximo(valor, backend)
            if alvo != valor:
                vetor = list(t.x_alt)
                vetor[k] = alvo
                yield replace(t, x_alt=tuple(vetor))


def encolher(contraexemplo):
    """
    Aproxima a testemunha da grade {0, 1, 2, 4} e lambda de {2, 1/2},
    aceitando cada passo só se a violação persiste. Determinístico.
    """
    ce = contraexemplo
    atual = ce.testemunha
    comparacao = None
    for _ in range(PASSADAS):
        mudou = False
        for candidato in _candidatos(atual, ce.backend):
            resultado = _violacao(ce.spec, ce.axioma, candidato, ce.backend, ce.tolerancia)
            if resultado is not None:
                atual, comparacao = candidato, resultado
                mudou = True
                break
        if not mudou:
            break

    if comparacao is None:
        return ce
    return replace(ce, testemunha=atual, lhs=comparacao.lhs, rhs=comparacao.rhs,
                   lacuna=comparacao.lacuna, encolhido=True)


def falsificar(spec, axioma, plano=None, backend=Backend.FLOAT64, encolhendo=True):
    """Primeira violação na ordem canônica, encolhida; None se o plano se esgota"""
    plano = plano or PlanoAmostragem.do_settings()
    veredito = verificar_axioma(spec, axioma, plano, backend)
    if not veredito.violado:
        logger.debug("Nenhum contraexemplo de %s em %s", codigo_de(axioma), spec.resumo())
        return None

    comparacao = veredito.comparacao
    ce = Contraexemplo(veredito.axioma, spec, veredito.testemunha, comparacao.lhs, comparacao.rhs,
                       comparacao.lacuna, False, veredito.tolerancia, backend)
    return encolher(ce) if encolhendo else ce


@dataclass(frozen=True)
class ExemploReproduzido:
    nome: str
    esperado: tuple
    obtido: tuple

    @property
    def passou(self):
        return all(isinstance(valor, Fraction) for valor in self.obtido) and self.obtido == self.esperado


@dataclass(frozen=True)
class RelatorioExemplos:
    exemplos: tuple

    @property
    def passou(self):
        return all(exemplo.passou for exemplo in self.exemplos)


def reproduzir_exemplos():
    """
    HOM (1/2 contra 5/9), RH (3/2 contra 5/3) e HRE (2 nas duas escalas) em
    x = (2, 1, 0), lambda = 2, com aritmética racional exata.
    """
    backend = Backend.RACIONAL
    spec = PotenciaMaisConstante((1, 1, 1), (1, 1, 1), 1)
    checar_backend(spec, backend)

    x = tuple(Fraction(valor) for valor in (2, 1, 0))
    lam = Fraction(2)
    casos = (
        ('HOM', Testemunha(x, i=0, lam=lam), (Fraction(1, 2), Fraction(5, 9))),
        ('RH', Testemunha(x, i=0, j=1, lam=lam), (Fraction(3, 2), Fraction(5, 3))),
        ('HRE', Testemunha(x, i=0, j=1, lam=lam), (Fraction(2), Fraction(2))),
    )
    exemplos = []
    for nome, testemunha, esperado in casos:
        comparacao = avaliar_predicado(spec, nome, testemunha, backend)
        exemplos.append(ExemploReproduzido(nome, esperado, (comparacao.lhs, comparacao.rhs)))
    return RelatorioExemplos(tuple(exemplos))
