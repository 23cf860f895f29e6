"""
Relações entre axiomas verificadas por amostragem: a fronteira SP/CP das
famílias simétricas, a suíte de implicações sobre o catálogo e os pacotes
de caracterização conhecidos.
"""
import logging
from dataclasses import dataclass, field

from .amostragem import Comparacao, PlanoAmostragem, casos
from .axiomas import AxiomaId, Status, verificar_axioma
from .catalogo import catalogo
from .csf import Backend, SorteSimetrica, avaliar, desvio
from .exceptions import DenominadorDegenerado, DesvioIndefinido, ForaDoDominio

logger = logging.getLogger(__name__)


CARACTERIZACOES = (
    ('luck_family', ('SM', 'LCA', 'HRE'), "f_i = b_i + a_i x^r"),
    ('symmetric_luck', ('SM', 'LCA', 'HRE', 'ANY'), "f = b + x^r"),
    ('linear_headstart', ('SM', 'LCA', 'NAR'), "f_i = b_i + x"),
    ('symmetric_headstart', ('SM', 'LCA', 'NAR', 'ANY'), "f = b + x"),
    ('tullock', ('SM', 'LCA', 'HOM'), "f_i = a_i x^r"),
    ('tullock_rh', ('SM', 'LCA', 'RH'), "f_i = a_i x^r"),
    ('clark_riis_tullock', ('SM', 'CRI', 'HOM'), "f_i = a_i x^r (contest completo)"),
    ('symmetric_tullock', ('SM', 'LCA', 'HOM', 'ANY'), "f = x^r"),
    ('ratio', ('SM', 'LCA', 'ANY', 'CP', 'SP'), "f = x"),
    ('ratio_dc_nar', ('SM', 'LCA', 'DC', 'NAR'), "f = x"),
)


def _sinal(diferenca, escala, tolerancia):
    if abs(diferenca) <= tolerancia * escala:
        return 0
    return 1 if diferenca > 0 else -1


@dataclass(frozen=True)
class FronteiraSPCP:
    r: object
    b: object
    sp: object
    cp: object
    superaditiva: bool
    subaditiva: bool
    comparadas: int
    discordancias: int

    @property
    def concorda(self):
        """SP/CP por amostra batem com o teste direto de super/subaditividade"""
        return self.discordancias == 0


def padrao_esperado(r, b):
    """Vereditos esperados (True = vale) por r e b; None quando não há expectativa"""
    if b == 0:
        if r > 1:
            return {'SP': True, 'CP': False}
        if r < 1:
            return {'SP': False, 'CP': True}
        return {'SP': True, 'CP': True}
    if r <= 1:
        return {'SP': False, 'CP': True}
    return {'SP': None, 'CP': False}


def verificar_fronteira_sp_cp(r, b, plano=None, n=3):
    """
    SP e CP na família simétrica f = b + x^r, com o teste direto de
    f(x_i) + f(x_j) contra f(x_i + x_j) sobre as mesmas amostras.
    """
    plano = plano or PlanoAmostragem.do_settings()
    spec = SorteSimetrica(n, b, r)
    sp = verificar_axioma(spec, AxiomaId.SP, plano)
    cp = verificar_axioma(spec, AxiomaId.CP, plano)
    tolerancia = plano.tolerancia_para(spec, Backend.FLOAT64)

    superaditiva = subaditiva = True
    comparadas = discordancias = 0
    for caso in casos('SP', n, plano):
        if caso is None:
            continue
        i, j, x = caso.i, caso.j, caso.x
        try:
            separados = spec.impacto(i, x[i]) + spec.impacto(j, x[j])
            fundido = spec.impacto(i, x[i] + x[j])
            resto = sum(spec.impacto(k, x[k]) for k in range(n) if k not in (i, j))
            p = avaliar(spec, x)
        except (DenominadorDegenerado, ForaDoDominio, OverflowError):
            continue
        if resto == 0:
            continue
        comparadas += 1
        sinal_f = _sinal(fundido - separados, max(1, abs(fundido), abs(separados)), tolerancia)
        p_fundido = fundido / (resto + fundido)
        soma = p[i] + p[j]
        sinal_p = _sinal(p_fundido - soma, max(1, p_fundido, soma), tolerancia)
        superaditiva = superaditiva and sinal_f >= 0
        subaditiva = subaditiva and sinal_f <= 0
        if sinal_f * sinal_p < 0:
            discordancias += 1

    if discordancias:
        logger.warning("SP/CP discordam do teste de aditividade em %d amostras (r=%s, b=%s)",
                       discordancias, r, b)
    return FronteiraSPCP(r, b, sp, cp, superaditiva, subaditiva, comparadas, discordancias)


def fronteira_padrao(plano=None, expoentes=(0.5, 1, 2), sortes=(0, 1)):
    return [verificar_fronteira_sp_cp(r, b, plano) for b in sortes for r in expoentes]


@dataclass(frozen=True)
class ChecagemImplicacao:
    codigo: str
    familia: str
    aplicavel: bool
    ok: bool
    detalhe: str = ''


@dataclass
class RelatorioImplicacoes:
    checagens: list = field(default_factory=list)
    vereditos: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(checagem.ok for checagem in self.checagens)

    def falhas(self):
        return [checagem for checagem in self.checagens if not checagem.ok]


def desvio_igual_probabilidade(spec, plano, backend=Backend.FLOAT64):
    """Primeira amostra com d_ij(x) != p_i(x), ou None"""
    tolerancia = plano.tolerancia_para(spec, backend)
    for caso in casos('DEC', spec.n, plano, backend):
        if caso is None:
            continue
        try:
            comparacao = Comparacao(desvio(spec, caso.i, caso.j, caso.x, backend),
                                    avaliar(spec, caso.x, backend=backend)[caso.i])
        except (DenominadorDegenerado, DesvioIndefinido, ForaDoDominio, OverflowError):
            continue
        if comparacao.viola(tolerancia):
            return caso, comparacao
    return None


NECESSARIOS = ('SM', 'LCA', 'HOM', 'RH', 'HRE', 'DC', 'CRI', 'DEC')


def _vale(veredito):
    return veredito.status is Status.VALIDO


def suite_implicacoes(plano=None, entradas=None):
    plano = plano or PlanoAmostragem.do_settings()
    entradas = entradas if entradas is not None else catalogo()
    relatorio = RelatorioImplicacoes()

    for item in entradas:
        v = {codigo: verificar_axioma(item.spec, codigo, plano) for codigo in NECESSARIOS}
        relatorio.vereditos[item.nome] = v
        checagens = relatorio.checagens

        aplicavel = _vale(v['LCA'])
        checagens.append(ChecagemImplicacao(
            'LCA=>(DC<=>CRI)', item.nome, aplicavel,
            not aplicavel or _vale(v['DC']) == _vale(v['CRI']),
            f"DC={v['DC'].status.value} CRI={v['CRI'].status.value}"))

        aplicavel = _vale(v['CRI'])
        checagens.append(ChecagemImplicacao(
            'CRI=>(HRE<=>RH)', item.nome, aplicavel,
            not aplicavel or _vale(v['HRE']) == _vale(v['RH']),
            f"HRE={v['HRE'].status.value} RH={v['RH'].status.value}"))

        aplicavel = all(_vale(v[codigo]) for codigo in ('SM', 'LCA', 'HOM'))
        checagens.append(ChecagemImplicacao(
            'SM+LCA+HOM=>DC', item.nome, aplicavel, not aplicavel or _vale(v['DC']),
            f"DC={v['DC'].status.value}"))

        checagens.append(ChecagemImplicacao(
            'DEC', item.nome, True, v['DEC'].status is not Status.VIOLADO, v['DEC'].status.value))

        aplicavel = _vale(v['CRI'])
        falha = desvio_igual_probabilidade(item.spec, plano) if aplicavel else None
        detalhe = ''
        if falha:
            caso, comparacao = falha
            detalhe = f"x={list(caso.x)} i={caso.i} j={caso.j}: {comparacao.lhs} != {comparacao.rhs}"
        checagens.append(ChecagemImplicacao('CRI=>d_ij=p_i', item.nome, aplicavel, falha is None, detalhe))

    for falha in relatorio.falhas():
        logger.warning("Implicação %s falhou em %s: %s", falha.codigo, falha.familia, falha.detalhe)
    return relatorio


@dataclass(frozen=True)
class Caracterizacao:
    familia: str
    vereditos: tuple
    pacotes: tuple

    def status(self, codigo):
        for veredito in self.vereditos:
            if veredito.axioma == codigo:
                return veredito.status
        raise KeyError(codigo)


def caracterizar(spec, plano=None, backend=Backend.FLOAT64):
    """Roda todos os axiomas e lista as caracterizações compatíveis com o perfil amostrado"""
    plano = plano or PlanoAmostragem.do_settings()
    vereditos = tuple(verificar_axioma(spec, axioma, plano, backend) for axioma in AxiomaId)
    validos = {veredito.axioma for veredito in vereditos if _vale(veredito)}
    pacotes = tuple(nome for nome, codigos, _ in CARACTERIZACOES if validos.issuperset(codigos))
    return Caracterizacao(spec.resumo(), vereditos, pacotes)
