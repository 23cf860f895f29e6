from django.test import SimpleTestCase

from laboratoriocsf.aceitacao import (aprovado, criterio_equilibrio, criterio_exemplos, criterio_fronteira,
                                      executar_aceitacao, verificar_determinismo)
from laboratoriocsf.amostragem import PlanoAmostragem
from laboratoriocsf.relatorios import LinhaRelatorio


class AceitacaoTest(SimpleTestCase):
    """Testes dos critérios de aceitação mais baratos."""

    def setUp(self):
        self.plano = PlanoAmostragem(semente=0, perfis=200)

    def test_exemplos(self):
        linhas = criterio_exemplos()
        self.assertEqual([linha.metrica for linha in linhas], ['C1:HOM', 'C1:RH', 'C1:HRE'])
        self.assertTrue(aprovado(linhas))

    def test_equilibrio(self):
        linhas = criterio_equilibrio()
        self.assertTrue(aprovado(linhas), [linha.metrica for linha in linhas if linha.status != 'PASS'])
        self.assertEqual(linhas[-1].metrica, 'C7:monotone')

    def test_fronteira(self):
        linhas = criterio_fronteira(self.plano)
        self.assertEqual(len(linhas), 11)
        self.assertTrue(aprovado(linhas))

    def test_selecao_de_criterios(self):
        linhas = executar_aceitacao(self.plano, criterios=[1])
        self.assertEqual(len(linhas), 3)

    def test_determinismo(self):
        linha = verificar_determinismo(self.plano, criterios=[1, 4])
        self.assertEqual(linha.status, 'PASS')
        self.assertEqual(len(linha.testemunha['sha256']), 64)

    def test_aprovado(self):
        self.assertTrue(aprovado([]))
        self.assertFalse(aprovado([LinhaRelatorio('acceptance', 'x', 'C1:HOM', 'FAIL')]))
