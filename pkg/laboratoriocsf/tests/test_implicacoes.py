from django.test import SimpleTestCase

from laboratoriocsf.amostragem import PlanoAmostragem
from laboratoriocsf.axiomas import Status
from laboratoriocsf.catalogo import entrada
from laboratoriocsf.csf import PotenciaMaisConstante, Tullock
from laboratoriocsf.implicacoes import (caracterizar, desvio_igual_probabilidade, padrao_esperado,
                                        suite_implicacoes, verificar_fronteira_sp_cp)


def plano_curto():
    return PlanoAmostragem(semente=0, perfis=300)


class FronteiraSPCPTest(SimpleTestCase):
    """Testes para a fronteira SP/CP da família b + x^r."""

    def test_padrao_esperado(self):
        self.assertEqual(padrao_esperado(2, 0), {'SP': True, 'CP': False})
        self.assertEqual(padrao_esperado(0.5, 0), {'SP': False, 'CP': True})
        self.assertEqual(padrao_esperado(1, 0), {'SP': True, 'CP': True})
        self.assertEqual(padrao_esperado(1, 1), {'SP': False, 'CP': True})
        self.assertEqual(padrao_esperado(2, 1), {'SP': None, 'CP': False})

    def test_convexa_sem_sorte(self):
        fronteira = verificar_fronteira_sp_cp(2, 0, plano_curto())
        self.assertIs(fronteira.sp.status, Status.VALIDO)
        self.assertTrue(fronteira.cp.violado)
        self.assertTrue(fronteira.superaditiva)
        self.assertTrue(fronteira.concorda)

    def test_concava_sem_sorte(self):
        fronteira = verificar_fronteira_sp_cp(0.5, 0, plano_curto())
        self.assertTrue(fronteira.sp.violado)
        self.assertIs(fronteira.cp.status, Status.VALIDO)
        self.assertTrue(fronteira.subaditiva)
        self.assertTrue(fronteira.concorda)

    def test_sorte_linear(self):
        """Com b > 0 e r = 1, juntar esforços perde uma sorte: CP vale, SP não"""
        fronteira = verificar_fronteira_sp_cp(1, 1, plano_curto())
        self.assertTrue(fronteira.sp.violado)
        self.assertIs(fronteira.cp.status, Status.VALIDO)
        self.assertGreater(fronteira.comparadas, 0)
        self.assertTrue(fronteira.concorda)


class SuiteImplicacoesTest(SimpleTestCase):
    """Testes da suíte de implicações e das caracterizações."""

    def test_suite_em_parte_do_catalogo(self):
        entradas = [entrada('tullock'), entrada('luck_tullock'), entrada('ratio')]
        relatorio = suite_implicacoes(plano_curto(), entradas)
        self.assertTrue(relatorio.ok, [checagem.codigo for checagem in relatorio.falhas()])
        self.assertEqual(len(relatorio.checagens), 5 * len(entradas))
        self.assertEqual(set(relatorio.vereditos), {'tullock', 'luck_tullock', 'ratio'})

    def test_implicacao_nao_aplicavel(self):
        relatorio = suite_implicacoes(plano_curto(), [entrada('luck_tullock')])
        checagem = next(c for c in relatorio.checagens if c.codigo == 'CRI=>(HRE<=>RH)')
        self.assertFalse(checagem.aplicavel)
        self.assertTrue(checagem.ok)

    def test_desvio_igual_probabilidade(self):
        self.assertIsNone(desvio_igual_probabilidade(Tullock((1, 2, 3)), plano_curto()))
        falha = desvio_igual_probabilidade(PotenciaMaisConstante((1, 1, 1), (1, 1, 1)), plano_curto())
        self.assertIsNotNone(falha)

    def test_caracterizar_tullock(self):
        caracterizacao = caracterizar(Tullock((1, 2, 3)), plano_curto())
        self.assertIn('tullock', caracterizacao.pacotes)
        self.assertIn('luck_family', caracterizacao.pacotes)
        self.assertNotIn('symmetric_tullock', caracterizacao.pacotes)
        self.assertTrue(caracterizacao.status('ANY') is Status.VIOLADO)

    def test_caracterizar_sorte(self):
        caracterizacao = caracterizar(PotenciaMaisConstante((1, 1, 1), (1, 1, 1)), plano_curto())
        self.assertIn('luck_family', caracterizacao.pacotes)
        self.assertNotIn('tullock', caracterizacao.pacotes)
        with self.assertRaises(KeyError):
            caracterizacao.status('DEC')
