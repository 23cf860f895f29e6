"""
Erros do laboratório de CSF
"""


class ErroLaboratorio(Exception):
    """Base de todos os erros de avaliação do laboratório"""
    codigo = 'LabError'


class DenominadorDegenerado(ErroLaboratorio):
    """Soma dos impactos igual a zero no subconjunto avaliado"""
    codigo = 'DegenerateDenominator'


class SubconjuntoInvalido(ErroLaboratorio):
    """Subconcurso com menos de dois competidores ou fora de N"""
    codigo = 'InvalidSubset'


class DesvioIndefinido(ErroLaboratorio):
    """p_j(0, x_-i) = 0, o desvio d_ij não está definido"""
    codigo = 'UndefinedDeviation'


class FamiliaSemSorte(ErroLaboratorio):
    """Operação que exige soma de b positiva em família sem sorte"""
    codigo = 'LucklessFamily'


class AxiomaInaplicavel(ErroLaboratorio):
    """PA/DI pedidos para uma família em que mu_null é sempre zero"""
    codigo = 'InapplicableAxiom'


class BackendIndisponivel(ErroLaboratorio):
    """Backend racional desabilitado ou incompatível com a especificação"""
    codigo = 'BackendUnavailable'


class ForaDoDominio(ErroLaboratorio):
    """Função de impacto consultada fora do domínio ou com valor não finito"""
    codigo = 'OutOfDomain'


class PreCondicaoFalhou(ErroLaboratorio):
    """Caso amostrado fora do domínio do predicado (conta como amostra pulada)"""
    codigo = 'PreconditionFailed'
