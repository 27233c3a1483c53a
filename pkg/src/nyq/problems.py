"""Problem files and inline expressions for the command line front end.

Problem files are JSON.  Symbolic data (polynomial coefficients, delays,
gains, gamma) must be exact rational strings such as ``"-1/2"`` or
``"1/2+3/4 i"``; floats in those positions are rejected to preserve the
exactness guarantees end to end.  Impulse and exponential-sum
coefficients are numeric doubles, written either as a number or as an
``[re, im]`` pair.

Layout::

    {
      "ring": "disk_rational",
      "plant": [["1/(z-1/2)"]],              # matrix of entries
      "controller": [["1"]],
      "plant_rcf": {"N": ..., "D": ..., "X": ..., "Y": ...},       # optional
      "controller_lcf": {"N": ..., "D": ..., "X": ..., "Y": ...},  # optional
      "options": {"gamma": "2", "samples": 1024,
                  "boundary_tolerance": 1e-9, "index_tolerance": 1e-6,
                  "sweep": {"controller_gains": ["1/5", "1"]}}
    }

Rational entries are either expression strings in ``z`` or
``{"num": [coeffs...], "den": [coeffs...]}`` with ascending coefficient
strings.  Delay-ring entries look like
``{"atomic": [{"delay": "0", "coeff": 1.0}],
   "rational": [{"delay": "1", "num": ["1"], "den": ["1", "1"]}]}``.
Exponential-sum entries look like
``{"terms": [{"coords": ["5/3"], "coeff": [2.0, 0.0]}]}`` over an
optional ``"basis"``.  Polydisk entries are
``{"vars": 2, "terms": [{"exps": [1, 1], "coeff": "-1/4"}]}`` or a
``{"num": ..., "den": ...}`` ratio.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .delay import CDElement
from .errors import DimensionError, ProblemFormatError
from .polydisk import MultiPoly, MultiPolyRatio
from .polynomials import GaussianRational, Poly, parse_coefficient
from .rational import CoprimeFactorization, RationalFunction, RationalMatrix
from .winding import ExponentialPolynomial


# ------------------------------------------------------------ tokenization

_TOKEN = re.compile(r"\s*(\d+/\d+|\d+\.\d+|\d+|[A-Za-z]+|[()+\-*/^,])")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ProblemFormatError(f"cannot tokenize {text[pos:]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


class _Parser:
    """Recursive-descent expression parser over a small element algebra.

    The algebra supplies ``constant(Fraction)``, ``name(token)`` for
    symbols, and supports +, -, *, / and integer ^ on its values.
    """

    def __init__(self, tokens, algebra):
        self.tokens = tokens
        self.pos = 0
        self.algebra = algebra

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ProblemFormatError("unexpected end of expression")
        self.pos += 1
        return tok

    def expect(self, tok):
        got = self.next()
        if got != tok:
            raise ProblemFormatError(f"expected {tok!r}, got {got!r}")

    def parse(self):
        value = self.expr()
        if self.peek() is not None:
            raise ProblemFormatError(f"trailing input {self.tokens[self.pos:]!r}")
        return value

    def expr(self):
        if self.peek() == "-":
            self.next()
            value = self.algebra.neg(self.term())
        else:
            if self.peek() == "+":
                self.next()
            value = self.term()
        while self.peek() in ("+", "-"):
            op = self.next()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek() in ("*", "/"):
            op = self.next()
            rhs = self.factor()
            value = value * rhs if op == "*" else self.algebra.div(value, rhs)
        return value

    def factor(self):
        if self.peek() == "-":
            self.next()
            return self.algebra.neg(self.factor())
        value = self.atom()
        while self.peek() == "^":
            self.next()
            exponent = self.next()
            try:
                n = int(exponent)
            except ValueError:
                raise ProblemFormatError(f"bad exponent {exponent!r}") from None
            value = self.algebra.power(value, n)
        return value

    def atom(self):
        tok = self.next()
        if tok == "(":
            value = self.expr()
            self.expect(")")
            return value
        if re.fullmatch(r"\d+/\d+|\d+\.\d+|\d+", tok):
            try:
                return self.algebra.constant(Fraction(tok))
            except ZeroDivisionError:
                raise ProblemFormatError(f"bad coefficient {tok!r}") from None
        return self.algebra.name(tok, self)


class _RationalAlgebra:
    def constant(self, q: Fraction):
        return RationalFunction.constant(q)

    def name(self, tok, parser):
        if tok == "z":
            return RationalFunction.variable()
        if tok == "i":
            return RationalFunction.constant(GaussianRational(0, 1))
        raise ProblemFormatError(f"unknown symbol {tok!r} in rational expression")

    def neg(self, v):
        return -v

    def div(self, a, b):
        if b.is_zero():
            raise ProblemFormatError("division by zero in expression")
        return a / b

    def power(self, v, n):
        return v ** n


class _ExpAlgebra:
    def __init__(self, basis=(1.0,)):
        self.basis = tuple(float(b) for b in basis)

    def constant(self, q: Fraction):
        return ExponentialPolynomial.constant(complex(float(q)), self.basis)

    def name(self, tok, parser):
        if tok == "i":
            return ExponentialPolynomial.constant(1j, self.basis)
        if tok == "e":
            parser.expect("(")
            coords = [self._signed_fraction(parser)]
            while parser.peek() == ",":
                parser.next()
                coords.append(self._signed_fraction(parser))
            parser.expect(")")
            if len(coords) == 1 and len(self.basis) > 1:
                coords = coords + [Fraction(0)] * (len(self.basis) - 1)
            if len(coords) != len(self.basis):
                raise ProblemFormatError(
                    f"e(...) takes {len(self.basis)} coordinates for this basis"
                )
            return ExponentialPolynomial.term(1.0, tuple(coords), self.basis)
        raise ProblemFormatError(f"unknown symbol {tok!r} in exponential expression")

    @staticmethod
    def _signed_fraction(parser):
        sign = 1
        while parser.peek() in ("+", "-"):
            if parser.next() == "-":
                sign = -sign
        tok = parser.next()
        try:
            return sign * Fraction(tok)
        except (ValueError, ZeroDivisionError):
            raise ProblemFormatError(f"bad frequency {tok!r}") from None

    def neg(self, v):
        return -v

    def div(self, a, b):
        if b.n_terms() != 1:
            raise ProblemFormatError(
                "can only divide by a single exponential term or constant"
            )
        ((coords, coeff),) = b.terms.items()
        inv = ExponentialPolynomial.term(
            1.0 / coeff, tuple(-q for q in coords), b.basis
        )
        return a * inv

    def power(self, v, n):
        if n < 0:
            return self.div(self.constant(Fraction(1)), self.power(v, -n))
        out = ExponentialPolynomial.one(self.basis)
        for _ in range(n):
            out = out * v
        return out


def parse_rational_expression(text: str) -> RationalFunction:
    return _Parser(_tokenize(text), _RationalAlgebra()).parse()


def parse_exp_expression(text: str, basis=(1.0,)) -> ExponentialPolynomial:
    return _Parser(_tokenize(text), _ExpAlgebra(basis)).parse()


# ------------------------------------------------------------- JSON codecs


def poly_from_json(data) -> Poly:
    if not isinstance(data, list):
        raise ProblemFormatError("polynomial must be a list of coefficient strings")
    coeffs = []
    for c in data:
        if isinstance(c, float):
            raise ProblemFormatError(
                f"float {c!r} in a symbolic position; use exact strings like '1/2'"
            )
        coeffs.append(parse_coefficient(str(c)))
    return Poly(coeffs)


def poly_to_json(p: Poly):
    return p.to_strings()


def rational_from_json(data) -> RationalFunction:
    if isinstance(data, str):
        return parse_rational_expression(data)
    if isinstance(data, (int,)):
        return RationalFunction.constant(data)
    if isinstance(data, dict) and "num" in data and "den" in data:
        return RationalFunction(poly_from_json(data["num"]), poly_from_json(data["den"]))
    raise ProblemFormatError(f"bad rational entry {data!r}")


def rational_to_json(f: RationalFunction):
    return {"num": poly_to_json(f.num), "den": poly_to_json(f.den)}


def matrix_from_json(data) -> RationalMatrix:
    if not isinstance(data, list) or not data:
        raise ProblemFormatError("matrix must be a nonempty list of rows")
    return RationalMatrix([[rational_from_json(e) for e in row] for row in data])


def matrix_to_json(M: RationalMatrix):
    return [[rational_to_json(e) for e in row] for row in M.entries]


def factorization_from_json(data, side: str) -> CoprimeFactorization:
    try:
        return CoprimeFactorization(
            side=side,
            N=matrix_from_json(data["N"]),
            D=matrix_from_json(data["D"]),
            X=matrix_from_json(data["X"]),
            Y=matrix_from_json(data["Y"]),
        )
    except KeyError as exc:
        raise ProblemFormatError(f"factorization is missing matrix {exc}") from None


def factorization_to_json(cf: CoprimeFactorization):
    return {
        "side": cf.side,
        "N": matrix_to_json(cf.N),
        "D": matrix_to_json(cf.D),
        "X": matrix_to_json(cf.X),
        "Y": matrix_to_json(cf.Y),
    }


def _complex_from_json(data) -> complex:
    if isinstance(data, (int, float)):
        return complex(data)
    if isinstance(data, list) and len(data) == 2:
        return complex(float(data[0]), float(data[1]))
    if isinstance(data, str):
        return complex(parse_coefficient(data))
    raise ProblemFormatError(f"bad numeric coefficient {data!r}")


def _fraction_from_json(data) -> Fraction:
    if isinstance(data, int):
        return Fraction(data)
    if isinstance(data, str):
        try:
            return Fraction(data)
        except (ValueError, ZeroDivisionError) as exc:
            raise ProblemFormatError(f"bad rational {data!r}: {exc}") from None
    raise ProblemFormatError(
        f"symbolic position needs an exact rational string, got {data!r}"
    )


def cd_from_json(data) -> CDElement:
    if not isinstance(data, dict):
        raise ProblemFormatError(f"bad delay element {data!r}")
    atoms = [
        (_fraction_from_json(item["delay"]), _complex_from_json(item["coeff"]))
        for item in data.get("atomic", [])
    ]
    rats = [
        (
            _fraction_from_json(item["delay"]),
            RationalFunction(poly_from_json(item["num"]), poly_from_json(item["den"])),
        )
        for item in data.get("rational", [])
    ]
    return CDElement(rats, atoms)


def cd_to_json(F: CDElement):
    return {
        "atomic": [
            {"delay": str(t), "coeff": [c.real, c.imag]} for t, c in F.atomic
        ],
        "rational": [
            {"delay": str(t), "num": poly_to_json(R.num), "den": poly_to_json(R.den)}
            for t, R in F.delay_rational
        ],
    }


def exp_from_json(data, basis=None) -> ExponentialPolynomial:
    if not isinstance(data, dict) or "terms" not in data:
        raise ProblemFormatError(f"bad exponential-sum entry {data!r}")
    basis = tuple(float(b) for b in data.get("basis", basis or (1.0,)))
    terms = {}
    for item in data["terms"]:
        coords = tuple(_fraction_from_json(q) for q in item["coords"])
        coeff = _complex_from_json(item["coeff"])
        terms[coords] = terms.get(coords, 0) + coeff
    return ExponentialPolynomial(terms, basis)


def exp_to_json(f: ExponentialPolynomial):
    return {
        "basis": list(f.basis),
        "terms": [
            {"coords": [str(q) for q in coords], "coeff": [c.real, c.imag]}
            for coords, c in f.terms.items()
        ],
    }


def multipoly_from_json(data):
    if isinstance(data, dict) and "num" in data and "den" in data:
        return MultiPolyRatio(
            multipoly_from_json(data["num"]), multipoly_from_json(data["den"])
        )
    if not isinstance(data, dict) or "terms" not in data:
        raise ProblemFormatError(f"bad polydisk entry {data!r}")
    nvars = int(data.get("vars", 1))
    terms = {}
    for item in data["terms"]:
        exps = tuple(int(e) for e in item["exps"])
        coeff = item["coeff"]
        if isinstance(coeff, float):
            raise ProblemFormatError("polydisk coefficients must be exact strings")
        terms[exps] = parse_coefficient(str(coeff))
    return MultiPoly(nvars, terms)


RING_ELEMENT_PARSERS = {
    "disk_rational": rational_from_json,
    "hardy_rational": rational_from_json,
    "apw_plus": exp_from_json,
    "callier_desoer": cd_from_json,
    "polydisk_rational": multipoly_from_json,
}


def ring_matrix_from_json(data, ring_name: str):
    parse = RING_ELEMENT_PARSERS[ring_name]
    if not isinstance(data, list) or not data:
        raise ProblemFormatError("matrix must be a nonempty list of rows")
    rows = [[parse(e) for e in row] for row in data]
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise DimensionError("ragged matrix rows")
    return rows


def ring_factorization_from_json(data, ring_name: str):
    try:
        return {
            "N": ring_matrix_from_json(data["N"], ring_name),
            "D": ring_matrix_from_json(data["D"], ring_name),
            "X": ring_matrix_from_json(data["X"], ring_name),
            "Y": ring_matrix_from_json(data["Y"], ring_name),
        }
    except KeyError as exc:
        raise ProblemFormatError(f"factorization is missing matrix {exc}") from None


# ------------------------------------------------------------- problem spec


@dataclass
class Options:
    boundary_tolerance: float = 1e-9
    index_tolerance: float = 1e-6
    samples: int = 1024
    gamma: GaussianRational = field(default_factory=lambda: GaussianRational(2))
    sweep_gains: list | None = None


@dataclass
class ProblemSpec:
    ring: str
    plant: RationalMatrix | None = None
    controller: RationalMatrix | None = None
    plant_rcf: object = None
    controller_lcf: object = None
    options: Options = field(default_factory=Options)


def _options_from_json(data) -> Options:
    opts = Options()
    if not data:
        return opts
    if "boundary_tolerance" in data:
        opts.boundary_tolerance = float(data["boundary_tolerance"])
    if "index_tolerance" in data:
        opts.index_tolerance = float(data["index_tolerance"])
    if "samples" in data:
        opts.samples = int(data["samples"])
    if "gamma" in data:
        opts.gamma = GaussianRational.coerce(
            parse_coefficient(str(data["gamma"]))
        )
    sweep = data.get("sweep")
    if sweep:
        gains = sweep.get("controller_gains")
        if not isinstance(gains, list) or not gains:
            raise ProblemFormatError("sweep needs a nonempty controller_gains list")
        opts.sweep_gains = [_fraction_from_json(g) for g in gains]
    return opts


def load_problem(path: str) -> ProblemSpec:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ProblemFormatError(f"cannot read problem file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(f"problem file is not valid JSON: {exc}") from exc
    return problem_from_json(raw)


def problem_from_json(raw) -> ProblemSpec:
    if not isinstance(raw, dict) or "ring" not in raw:
        raise ProblemFormatError("problem file must be an object with a 'ring' key")
    ring = raw["ring"]
    if ring not in RING_ELEMENT_PARSERS:
        raise ProblemFormatError(
            f"unknown ring {ring!r}; known: {sorted(RING_ELEMENT_PARSERS)}"
        )
    spec = ProblemSpec(ring=ring, options=_options_from_json(raw.get("options")))
    rational = ring in ("disk_rational", "hardy_rational")
    if rational:
        if "plant" in raw:
            spec.plant = matrix_from_json(raw["plant"])
        if "controller" in raw:
            spec.controller = matrix_from_json(raw["controller"])
        if "plant_rcf" in raw:
            spec.plant_rcf = factorization_from_json(raw["plant_rcf"], "right")
        if "controller_lcf" in raw:
            spec.controller_lcf = factorization_from_json(raw["controller_lcf"], "left")
        if spec.plant is not None and spec.controller is not None:
            if spec.controller.rows != spec.plant.cols or spec.controller.cols != spec.plant.rows:
                raise DimensionError(
                    f"controller {spec.controller.rows}x{spec.controller.cols} does not "
                    f"match plant {spec.plant.rows}x{spec.plant.cols}"
                )
    else:
        if "plant_rcf" in raw:
            spec.plant_rcf = ring_factorization_from_json(raw["plant_rcf"], ring)
        if "controller_lcf" in raw:
            spec.controller_lcf = ring_factorization_from_json(
                raw["controller_lcf"], ring
            )
    return spec
