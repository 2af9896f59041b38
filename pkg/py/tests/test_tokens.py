from __future__ import annotations

import tempfile
import unittest
from pathlib import Path

from spin7_tools import tokens
from spin7_tools.errors import ParseError

DATA_DIR = Path(__file__).resolve().parents[1] / "unittest_data"


class TestSignVectors(unittest.TestCase):
    def test_bits_and_signs(self) -> None:
        self.assertEqual(tokens.signs_to_bits((1, -1, -1)), 0b110)
        self.assertEqual(tokens.bits_to_signs(0b110, 3), (1, -1, -1))
        self.assertEqual(tokens.matrix_to_bits(tokens.sign_matrix(0b1001, 4)), 0b1001)
        with self.assertRaises(ValueError):
            tokens.signs_to_bits((1, 0, -1))

    def test_is_special(self) -> None:
        self.assertTrue(tokens.is_special(0))
        self.assertTrue(tokens.is_special(0b101))
        self.assertFalse(tokens.is_special(0b100))


class TestTokens(unittest.TestCase):
    def test_so3_alphabet(self) -> None:
        cases = {"1": (1, 1, 1), "a": (1, -1, -1), "b": (-1, 1, -1), "c": (-1, -1, 1)}
        for name, signs in cases.items():
            with self.subTest(token=name):
                bits = tokens.parse_token(name, 3)
                self.assertEqual(tokens.bits_to_signs(bits, 3), signs)
                self.assertEqual(tokens.format_token(bits, 3), name)

    def test_so4_negated_tokens(self) -> None:
        self.assertEqual(tokens.bits_to_signs(tokens.parse_token("-a", 4), 4), (-1, 1, 1, -1))
        self.assertEqual(tokens.parse_token("-1", 4), tokens.full_mask(4))
        self.assertEqual(len(tokens.token_alphabet(4)), 8)

    def test_so5_spellings(self) -> None:
        for text in ("a12", "a_12", "a_{12}"):
            with self.subTest(text=text):
                self.assertEqual(tokens.parse_token(text, 5), 0b00011)
        self.assertEqual(tokens.parse_token("b1", 5), 0b11110)
        self.assertEqual(len(tokens.token_alphabet(5)), 16)

    def test_sign_strings(self) -> None:
        self.assertEqual(tokens.parse_token("(-,-,+)", 3), tokens.parse_token("c", 3))
        self.assertEqual(tokens.format_token(0b11, 6), "(-,-,+,+,+,+)")
        with self.assertRaises(ValueError):
            tokens.parse_token("(-,+,+)", 3)
        with self.assertRaises(ValueError):
            tokens.parse_token("(-,-)", 3)
        with self.assertRaises(ValueError):
            tokens.parse_token("q", 3)


class TestTuples(unittest.TestCase):
    def test_parse_tuple(self) -> None:
        t = tokens.parse_tuple("(a, c, a, b, 1)", 3)
        self.assertEqual(str(t), "(a, c, a, b, 1)")
        self.assertTrue(t.is_admissible())
        self.assertEqual(t.taus, (tokens.parse_token("a", 3), tokens.parse_token("b", 3), 0))
        self.assertFalse(tokens.parse_tuple("(1, 1, a, b, c)", 3).is_admissible())

    def test_parse_tuple_with_sign_strings(self) -> None:
        one = "(+,+,+,+,+,+)"
        t = tokens.parse_tuple(f"((-,-,+,+,+,+), {one}, {one}, {one}, {one})", 6)
        self.assertEqual(t.gamma, 0b11)

    def test_parse_tuple_errors(self) -> None:
        for text in ("a, c, a, b, 1", "(a, c, a, b)", "(a, c, a, b, 1, 1)"):
            with self.subTest(text=text):
                with self.assertRaises(ValueError):
                    tokens.parse_tuple(text, 3)

    def test_load_list_skips_comments_and_blanks(self) -> None:
        items = tokens.load_tuple_list(DATA_DIR / "so3_short.txt", 3)
        self.assertEqual([str(t) for t in items], ["(a, c, a, b, 1)", "(1, a, a, b, c)", "(a, 1, b, c, 1)"])

    def test_bad_token_reports_line(self) -> None:
        with self.assertRaises(ParseError) as cm:
            tokens.load_tuple_list(DATA_DIR / "so3_bad_token.txt", 3)
        self.assertEqual(cm.exception.line_no, 3)
        self.assertIn("so3_bad_token.txt:3", str(cm.exception))

    def test_missing_file(self) -> None:
        with tempfile.TemporaryDirectory() as td:
            with self.assertRaises(ParseError):
                tokens.load_tuple_list(Path(td) / "nope.txt", 3)

    def test_shipped_lists(self) -> None:
        self.assertEqual(len(tokens.shipped_appendix(3)), 105)
        self.assertEqual(len(tokens.shipped_appendix(4)), 882)
        with self.assertRaises(ValueError):
            tokens.shipped_appendix(5)


if __name__ == "__main__":
    unittest.main()
