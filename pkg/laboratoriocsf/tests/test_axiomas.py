from fractions import Fraction

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from laboratoriocsf.amostragem import (LAMBDAS_GRADE, Amostrador, Comparacao, PlanoAmostragem, Testemunha,
                                       casos, perfis_grade)
from laboratoriocsf.axiomas import (AxiomaId, Status, avaliar_predicado, verificar_axioma, verificar_no_perfil,
                                    verificar_todos)
from laboratoriocsf.catalogo import impacto_exponencial, parametrizacoes_aleatorias
from laboratoriocsf.csf import Backend, Personalizada, PotenciaMaisConstante, Razao, SorteSimetrica, Tullock
from laboratoriocsf.exceptions import AxiomaInaplicavel, PreCondicaoFalhou

RACIONAL = Backend.RACIONAL
X = tuple(Fraction(valor) for valor in (2, 1, 0))


def sorte_111():
    return PotenciaMaisConstante((1, 1, 1), (1, 1, 1), 1)


def plano_curto(**ajustes):
    return PlanoAmostragem(**{'semente': 0, 'perfis': 300, **ajustes})


def um_mais(x):
    return 1.0 + x


class PredicadosExatosTest(SimpleTestCase):
    """Os casos resolvidos à mão no concurso com sorte a = b = (1, 1, 1)."""

    def test_hom(self):
        comparacao = avaliar_predicado(sorte_111(), 'HOM', Testemunha(X, i=0, lam=Fraction(2)), RACIONAL)
        self.assertEqual((comparacao.lhs, comparacao.rhs), (Fraction(1, 2), Fraction(5, 9)))
        self.assertTrue(comparacao.viola(0))

    def test_rh(self):
        comparacao = avaliar_predicado(sorte_111(), 'RH', Testemunha(X, i=0, j=1, lam=Fraction(2)), RACIONAL)
        self.assertEqual((comparacao.lhs, comparacao.rhs), (Fraction(3, 2), Fraction(5, 3)))

    def test_hre(self):
        comparacao = avaliar_predicado(sorte_111(), 'HRE', Testemunha(X, i=0, j=1, lam=Fraction(2)), RACIONAL)
        self.assertEqual((comparacao.lhs, comparacao.rhs), (Fraction(2), Fraction(2)))
        self.assertFalse(comparacao.viola(0))

    def test_dc(self):
        comparacao = avaliar_predicado(sorte_111(), 'DC', Testemunha(X, i=2, j=0), RACIONAL)
        self.assertEqual((comparacao.lhs, comparacao.rhs), (Fraction(1, 2), Fraction(3, 5)))

    def test_cri(self):
        comparacao = avaliar_predicado(sorte_111(), 'CRI', Testemunha(X, i=0, j=1), RACIONAL)
        self.assertEqual((comparacao.lhs, comparacao.rhs), (Fraction(3, 5), Fraction(3, 4)))

    def test_pre_condicoes(self):
        with self.assertRaises(PreCondicaoFalhou):
            avaliar_predicado(sorte_111(), 'RH', Testemunha(X, i=0, j=2, lam=Fraction(2)), RACIONAL)
        with self.assertRaises(PreCondicaoFalhou):
            avaliar_predicado(Tullock((1, 1)), 'DC', Testemunha((0, 1), i=0, j=1))

    def test_pa_em_familia_sem_sorte(self):
        with self.assertRaises(AxiomaInaplicavel):
            avaliar_predicado(Tullock((1, 1)), 'PA', Testemunha((1, 1)))

    def test_dec_estrito_quando_a_queda_aparece(self):
        testemunha = Testemunha((1.0, 1.0, 1.0), i=0, j=1, novo_valor=2.0)
        comparacao = avaliar_predicado(Tullock((1, 1, 1)), 'DEC', testemunha)
        self.assertEqual(comparacao.relacao, '<')
        self.assertFalse(comparacao.viola(1e-9))

    def test_dec_fraco_abaixo_do_arredondamento(self):
        """p_1 = e^40 / (f_0 + e^40) não muda em float64 quando x_0 vai de 0 a 1"""
        spec = Personalizada((impacto_exponencial, impacto_exponencial), dominio_max=700)
        comparacao = avaliar_predicado(spec, 'DEC', Testemunha((0.0, 40.0), i=0, j=1, novo_valor=1.0))
        self.assertEqual(comparacao.relacao, '<=')
        self.assertFalse(comparacao.viola(1e-6))


class ComparacaoTest(SimpleTestCase):
    """Testes da tolerância relativa."""

    def test_igualdade_com_tolerancia(self):
        self.assertFalse(Comparacao(1.0, 1.0 + 1e-12).viola(1e-9))
        self.assertTrue(Comparacao(1.0, 1.0 + 1e-6).viola(1e-9))
        self.assertTrue(Comparacao(Fraction(1, 3), Fraction(1, 3) + Fraction(1, 10 ** 20)).viola(0))

    def test_escala_relativa(self):
        self.assertFalse(Comparacao(1000.0, 1000.0 + 1e-7).viola(1e-9))

    def test_relacoes(self):
        self.assertFalse(Comparacao(0.2, 0.3, '<').viola(1e-9))
        self.assertTrue(Comparacao(0.3, 0.3, '<').viola(1e-9))
        self.assertFalse(Comparacao(0.3, 0.3, '<=').viola(1e-9))
        self.assertTrue(Comparacao(0.4, 0.3, '<=').viola(1e-9))
        self.assertEqual(Comparacao(0.2, 0.3, '>=').lacuna, 0.09999999999999998)


class AmostragemTest(SimpleTestCase):
    """Testes do plano e da ordem canônica."""

    def test_perfil_escada_primeiro(self):
        perfis = list(perfis_grade(3))
        self.assertEqual(perfis[0], (2, 1, 0))
        self.assertNotIn((0, 0, 0), perfis)
        self.assertEqual(len(perfis), 4 ** 3 - 1)

    def test_fluxo_tem_o_tamanho_do_plano(self):
        self.assertEqual(len(list(casos('HOM', 3, plano_curto()))), 300)
        self.assertEqual(len(list(casos('HOM', 3, plano_curto(), reserva=50))), 350)

    def test_determinismo(self):
        primeiro = [Amostrador(plano_curto(semente=7), 'SM', 4).perfil() for _ in range(3)]
        segundo = [Amostrador(plano_curto(semente=7), 'SM', 4).perfil() for _ in range(3)]
        self.assertEqual(primeiro, segundo)
        self.assertNotEqual(Amostrador(plano_curto(semente=8), 'SM', 4).perfil(), primeiro[0])

    def test_lambdas_do_plano(self):
        lambdas = plano_curto().lambdas()
        self.assertEqual(lambdas[:3], (0.5, 2.0, 10.0))
        self.assertEqual(len(lambdas), 6)
        self.assertTrue(all(1e-2 <= lam <= 1e2 for lam in lambdas[3:]))

    def test_tolerancia_por_backend(self):
        plano = plano_curto()
        self.assertEqual(plano.tolerancia_para(sorte_111(), RACIONAL), 0)
        self.assertEqual(plano.tolerancia_para(sorte_111(), Backend.FLOAT64), 1e-9)
        self.assertEqual(plano.tolerancia_para(Tullock((1, 1), 0.5), Backend.FLOAT64), 1e-6)

    def test_plano_invalido(self):
        with self.assertRaises(ValidationError):
            PlanoAmostragem(perfis=0)
        with self.assertRaises(ValidationError):
            PlanoAmostragem(faixa_n=(1, 3))

    def test_plano_dos_settings(self):
        plano = PlanoAmostragem.do_settings(perfis=50)
        self.assertEqual(plano.perfis, 50)
        self.assertEqual(plano.semente, 0)


class VereditosTest(SimpleTestCase):
    """Testes de verificar_axioma sobre famílias conhecidas."""

    def test_tullock_satisfaz_hom(self):
        spec = Tullock((1, 2, 3))
        for axioma in ('SM', 'LCA', 'HOM', 'RH', 'HRE', 'CRI'):
            veredito = verificar_axioma(spec, axioma, plano_curto())
            self.assertTrue(veredito.valido, axioma)
            self.assertIs(veredito.status, Status.VALIDO, axioma)
            self.assertGreater(veredito.amostras, 0)

    def test_sorte_viola_hom_no_perfil_escada(self):
        veredito = verificar_axioma(sorte_111(), 'HOM', plano_curto())
        self.assertTrue(veredito.violado)
        self.assertEqual(tuple(veredito.testemunha.x), (2, 1, 0))
        self.assertEqual(veredito.testemunha.lam, LAMBDAS_GRADE[0])

    def test_veredito_exato(self):
        veredito = verificar_axioma(sorte_111(), 'CRI', plano_curto(), RACIONAL)
        self.assertTrue(veredito.violado)
        self.assertEqual(veredito.tolerancia, 0)
        self.assertIsInstance(veredito.comparacao.lhs, Fraction)

    def test_anonimato_violado_por_parametros_distintos(self):
        self.assertTrue(verificar_axioma(Tullock((1, 2, 3)), AxiomaId.ANY, plano_curto()).violado)
        self.assertIs(verificar_axioma(Razao(3), AxiomaId.ANY, plano_curto()).status, Status.VALIDO)

    def test_nar_na_razao_e_tullock_quadratica(self):
        self.assertIs(verificar_axioma(Razao(3), 'NAR', plano_curto()).status, Status.VALIDO)
        self.assertTrue(verificar_axioma(Tullock((1, 1, 1), 2), 'NAR', plano_curto()).violado)

    def test_inaplicavel_com_dois_competidores(self):
        veredito = verificar_axioma(Razao(2), 'DC', plano_curto())
        self.assertIs(veredito.status, Status.INAPLICAVEL)

    def test_pa_di_so_com_sorte(self):
        self.assertIs(verificar_axioma(Tullock((1, 2)), 'PA', plano_curto()).status, Status.INAPLICAVEL)
        spec = PotenciaMaisConstante((1, 2, 3), (0.5, 1, 2), 2)
        for axioma in ('PA', 'DI'):
            self.assertIs(verificar_axioma(spec, axioma, plano_curto()).status, Status.VALIDO, axioma)

    def test_decrescimento_nos_oponentes(self):
        self.assertIs(verificar_axioma(SorteSimetrica(3, 1, 2), 'DEC', plano_curto()).status, Status.VALIDO)

    def test_teorema_em_parametrizacoes_aleatorias(self):
        """SM, LCA e HRE valem em toda família b + a x^r"""
        for spec in parametrizacoes_aleatorias(semente=3, quantidade=3):
            for axioma in ('SM', 'LCA', 'HRE'):
                veredito = verificar_axioma(spec, axioma, plano_curto(perfis=200))
                self.assertIs(veredito.status, Status.VALIDO, f"{axioma} em {spec.resumo()}")

    def test_pulados_sao_repostos(self):
        """Amostras fora do domínio são puladas e reamostradas até completar o plano"""
        veredito = verificar_axioma(Personalizada((um_mais, um_mais), dominio_max=100), 'SM', plano_curto())
        self.assertIs(veredito.status, Status.VALIDO)
        self.assertEqual(veredito.amostras, 300)
        self.assertGreater(veredito.puladas, 0)

    def test_faixa_de_n_das_parametrizacoes(self):
        specs = parametrizacoes_aleatorias(semente=0, quantidade=5, faixa_n=(4, 4))
        self.assertEqual([spec.n for spec in specs], [4] * 5)

    def test_deterministico(self):
        primeiro = verificar_axioma(sorte_111(), 'RH', plano_curto(fracao_grade=0))
        segundo = verificar_axioma(sorte_111(), 'RH', plano_curto(fracao_grade=0))
        self.assertEqual(primeiro, segundo)

    def test_verificar_no_perfil(self):
        veredito = verificar_no_perfil(sorte_111(), 'HOM', (2, 1, 0), backend=RACIONAL, lambdas=[2])
        self.assertTrue(veredito.violado)
        self.assertEqual(veredito.comparacao.rhs, Fraction(5, 9))
        veredito = verificar_no_perfil(sorte_111(), 'HRE', (2, 1, 0), backend=RACIONAL, lambdas=[2])
        self.assertIs(veredito.status, Status.VALIDO)

    def test_verificar_todos(self):
        vereditos = verificar_todos(Razao(3), plano_curto(perfis=50))
        self.assertEqual([veredito.axioma for veredito in vereditos], [axioma.value for axioma in AxiomaId])

    def test_axioma_desconhecido(self):
        with self.assertRaises(ValueError):
            verificar_axioma(Razao(3), 'XYZ', plano_curto())
