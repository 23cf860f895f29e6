from fractions import Fraction

from django.test import SimpleTestCase

from laboratoriocsf.amostragem import PlanoAmostragem, Testemunha
from laboratoriocsf.catalogo import catalogo, entrada
from laboratoriocsf.csf import Backend, PotenciaMaisConstante, Tullock
from laboratoriocsf.falsificador import Contraexemplo, encolher, falsificar, reproduzir_exemplos


def sorte_111():
    return PotenciaMaisConstante((1, 1, 1), (1, 1, 1), 1)


class ExemplosExatosTest(SimpleTestCase):
    """Os três exemplos HOM, RH e HRE em aritmética racional."""

    def test_reproduz_exemplos(self):
        relatorio = reproduzir_exemplos()
        self.assertTrue(relatorio.passou)
        obtidos = {exemplo.nome: exemplo.obtido for exemplo in relatorio.exemplos}
        self.assertEqual(obtidos, {
            'HOM': (Fraction(1, 2), Fraction(5, 9)),
            'RH': (Fraction(3, 2), Fraction(5, 3)),
            'HRE': (Fraction(2), Fraction(2)),
        })


class FalsificadorTest(SimpleTestCase):
    """Testes para falsificar() e encolher()."""

    def setUp(self):
        self.plano = PlanoAmostragem(semente=0, perfis=300)

    def test_contraexemplo_na_grade(self):
        contraexemplo = falsificar(sorte_111(), 'HOM', self.plano, Backend.RACIONAL)
        self.assertIsNotNone(contraexemplo)
        self.assertEqual(contraexemplo.testemunha.x, (2, 1, 0))
        self.assertFalse(contraexemplo.encolhido)
        self.assertEqual((contraexemplo.lhs, contraexemplo.rhs), (Fraction(1, 2), Fraction(5, 9)))
        self.assertTrue(contraexemplo.reproduzir().viola(contraexemplo.tolerancia))

    def test_sem_contraexemplo(self):
        self.assertIsNone(falsificar(Tullock((1, 2, 3)), 'HOM', self.plano))

    def test_encolhimento(self):
        """lambda vai para 2 e o perfil para os postos (2, 1, 0)"""
        testemunha = Testemunha((3.7, 1.2, 0.0), i=0, lam=2.5)
        original = Contraexemplo('HOM', sorte_111(), testemunha, 4.7 / 7.9, 10.25 / 15.25, 0.08, tolerancia=1e-9)
        encolhido = encolher(original)
        self.assertTrue(encolhido.encolhido)
        self.assertEqual(encolhido.testemunha.x, (2.0, 1.0, 0.0))
        self.assertEqual(encolhido.testemunha.lam, 2.0)
        self.assertAlmostEqual(encolhido.lhs, 0.5)
        self.assertAlmostEqual(encolhido.rhs, 5 / 9)
        self.assertTrue(encolhido.reproduzir().viola(1e-9))

    def test_encolhimento_deterministico(self):
        testemunha = Testemunha((3.7, 1.2, 0.0), i=0, lam=2.5)
        original = Contraexemplo('HOM', sorte_111(), testemunha, 0, 0, 0, tolerancia=1e-9)
        self.assertEqual(encolher(original), encolher(original))

    def test_contraexemplos_aleatorios_reproduzem(self):
        plano = PlanoAmostragem(semente=5, perfis=200, fracao_grade=0)
        for axioma in ('HOM', 'RH', 'CRI'):
            contraexemplo = falsificar(sorte_111(), axioma, plano)
            self.assertIsNotNone(contraexemplo, axioma)
            self.assertTrue(contraexemplo.reproduzir().viola(contraexemplo.tolerancia), axioma)

    def test_celulas_violadas_do_catalogo(self):
        for nome in ('luck_tullock', 'tullock_r2', 'custom_log'):
            item = entrada(nome)
            for axioma, vale in item.esperados.items():
                if vale:
                    continue
                contraexemplo = falsificar(item.spec, axioma, self.plano)
                self.assertIsNotNone(contraexemplo, f"{axioma} em {nome}")
                self.assertTrue(contraexemplo.reproduzir().viola(contraexemplo.tolerancia))

    def test_catalogo_tem_nomes_unicos(self):
        nomes = [item.nome for item in catalogo()]
        self.assertEqual(len(nomes), len(set(nomes)))
        with self.assertRaises(KeyError):
            entrada('inexistente')
