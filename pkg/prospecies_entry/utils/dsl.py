# ============================================================================
# FILE: prospecies_entry/utils/dsl.py
# ============================================================================
"""Reader and printer for .prosp instances and presentations

    field Q;                       // or: field F<7>;
    quiver { vertex 1 2; arrow alpha: 1 -> 2; }
    algebra 1 { quiver { vertex a; arrow x: a -> a; } relations { x.x; } }
    bimodule alpha { kind: gls(2, 2, 1, 1, 1); }
    bimodule beta {
      kind: presented { summands: (a, a); kernel: x.#0 - #0.x; }
    }

Paths print right to left ("y.x" is x then y); in a kernel term the #k marker
separates the target-algebra path (left) from the source-algebra path (right).
"""

import hashlib
import re
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union
import logging

from pydantic import ValidationError

from prospecies_entry.core.errors import DomainError, InstanceError, ParseError
from prospecies_entry.engine.algebra import Algebra, bound_quiver_algebra
from prospecies_entry.engine.exactla import FieldSpec
from prospecies_entry.engine.modules import Bimodule
from prospecies_entry.engine.presentation import FreeBimodule, gls_bimodule, path_element, presented_bimodule
from prospecies_entry.engine.prospecies import ProSpecies, build_prospecies
from prospecies_entry.schemas.instance import (
    AlgebraBlock, BimoduleBlock, BimoduleKind, GlsParameters, InstanceFile, KernelTerm, Summand,
)
from prospecies_entry.schemas.presentation import Presentation
from prospecies_entry.schemas.quiver import Arrow, BoundQuiverPresentation, Path, Quiver, Relation, Term
from prospecies_entry.utils.validators import validate_identifier, validate_quiver_labels

logger = logging.getLogger(__name__)

TOKEN = re.compile(r"""
    (?P<comment>//[^\n]*)
  | (?P<newline>\n)
  | (?P<space>[ \t\r]+)
  | (?P<to>->)
  | (?P<ident>[A-Za-z0-9_#]+)
  | (?P<symbol>[{}();:,.*/+\-<>\[\]])
""", re.VERBOSE)


class Token:
    def __init__(self, kind: str, text: str, line: int, column: int):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column

    def __repr__(self) -> str:
        return f"Token({self.kind}, {self.text!r}, {self.line}:{self.column})"


def tokenize(text: str) -> List[Token]:
    tokens = []
    line, start = 1, 0
    pos = 0
    while pos < len(text):
        m = TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"Unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == 'newline':
            line += 1
            start = m.end()
        elif kind not in ('comment', 'space'):
            tokens.append(Token(kind, m.group(), line, m.start() - start + 1))
        pos = m.end()
    tokens.append(Token('end', '', line, pos - start + 1))
    return tokens


# A raw path combination: (coefficient, printed path tokens)
RawCombo = List[Tuple[Fraction, List[Token]]]


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    # ---------- token helpers ----------

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.peek()
        self.pos += 1
        return tok

    def fail(self, message: str, tok: Optional[Token] = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(message, tok.line, tok.column)

    def at(self, text: str) -> bool:
        return self.peek().text == text and self.peek().kind != 'end'

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.peek().text or 'end of input'
            raise self.fail(f"Expected {text!r}, found {found!r}")
        return self.next()

    def ident(self) -> Token:
        tok = self.peek()
        if tok.kind != 'ident':
            raise self.fail(f"Expected an identifier, found {tok.text or 'end of input'!r}")
        return self.next()

    def integer(self) -> int:
        tok = self.ident()
        if not tok.text.isdigit():
            raise self.fail(f"Expected an integer, found {tok.text!r}", tok)
        return int(tok.text)

    # ---------- blocks ----------

    def quiver_block(self) -> Quiver:
        self.expect('{')
        vertices: List[str] = []
        arrows: List[Arrow] = []
        while not self.accept('}'):
            head = self.ident()
            if head.text == 'vertex':
                while not self.accept(';'):
                    vertices.append(self.ident().text)
            elif head.text == 'arrow':
                label = self.ident()
                self.expect(':')
                source = self.ident()
                self.expect('->')
                target = self.ident()
                self.expect(';')
                arrows.append(Arrow(label=label.text, source=source.text, target=target.text))
            else:
                raise self.fail(f"Expected 'vertex' or 'arrow', found {head.text!r}", head)
        for name in vertices + [a.label for a in arrows]:
            ok, message = validate_identifier(name)
            if not ok:
                raise self.fail(message)
        try:
            return Quiver(vertices=tuple(vertices), arrows=tuple(arrows))
        except ValidationError as e:
            raise InstanceError(f"Invalid quiver: {e.errors()[0]['msg']}")

    def combo(self) -> RawCombo:
        """[+|-] term ((+|-) term)*, term = [c *] path"""
        terms: RawCombo = []
        sign = Fraction(1)
        if self.accept('-'):
            sign = Fraction(-1)
        else:
            self.accept('+')
        while True:
            coefficient = sign * self.coefficient()
            terms.append((coefficient, self.path_tokens()))
            if self.accept('+'):
                sign = Fraction(1)
            elif self.accept('-'):
                sign = Fraction(-1)
            else:
                return terms

    def coefficient(self) -> Fraction:
        tok = self.peek()
        if tok.kind == 'ident' and tok.text.isdigit() and self.peek(1).text in ('*', '/'):
            self.next()
            value = Fraction(int(tok.text))
            if self.accept('/'):
                denominator = self.integer()
                if denominator == 0:
                    raise self.fail("Zero denominator", tok)
                value = value / denominator
            self.expect('*')
            return value
        return Fraction(1)

    def path_tokens(self) -> List[Token]:
        first = self.ident()
        if first.text == 'e' and self.accept('['):
            vertex = self.ident()
            self.expect(']')
            return [Token('trivial', vertex.text, vertex.line, vertex.column)]
        tokens = [first]
        while self.accept('.'):
            tokens.append(self.ident())
        return tokens

    def relations_block(self) -> List[RawCombo]:
        self.expect('{')
        combos = []
        while not self.accept('}'):
            combos.append(self.combo())
            self.expect(';')
        return combos

    def presentation_body(self) -> BoundQuiverPresentation:
        """quiver { ... } [relations { ... }]"""
        self.expect('quiver')
        quiver = self.quiver_block()
        relations: List[Relation] = []
        if self.accept('relations'):
            relations = [_relation(quiver, c) for c in self.relations_block()]
        try:
            return BoundQuiverPresentation(quiver=quiver, relations=tuple(relations))
        except ValidationError as e:
            raise InstanceError(f"Invalid presentation: {e.errors()[0]['msg']}")

    def field_spec(self) -> FieldSpec:
        tok = self.ident()
        if tok.text == 'Q':
            return FieldSpec.rationals()
        if tok.text == 'F':
            self.expect('<')
            p = self.integer()
            self.expect('>')
        elif tok.text.startswith('F') and tok.text[1:].isdigit():
            p = int(tok.text[1:])
        else:
            raise self.fail(f"Unknown field {tok.text!r}; use Q or F<p>", tok)
        try:
            return FieldSpec.prime_field(p)
        except ValidationError:
            raise self.fail(f"F<{p}> needs a prime characteristic", tok)

    def bimodule_block(self, arrow: Token) -> BimoduleBlock:
        self.expect('{')
        self.expect('kind')
        self.expect(':')
        kind = self.ident()
        gls = None
        summands: List[Summand] = []
        kernel: List[Tuple[KernelTerm, ...]] = []
        if kind.text == 'regular':
            pass
        elif kind.text == 'gls':
            self.expect('(')
            values = [self.integer()]
            while self.accept(','):
                values.append(self.integer())
            self.expect(')')
            if len(values) not in (4, 5):
                raise self.fail(f"gls takes (c_s, c_t, f_st, f_ts[, g]), got {len(values)} values", kind)
            names = ['c_s', 'c_t', 'f_st', 'f_ts', 'g']
            try:
                gls = GlsParameters(**dict(zip(names, values)))
            except ValidationError as e:
                raise InstanceError(f"Bimodule {arrow.text}: {e.errors()[0]['msg']}")
        elif kind.text == 'presented':
            self.expect('{')
            while not self.accept('}'):
                head = self.ident()
                self.expect(':')
                if head.text == 'summands':
                    while not self.accept(';'):
                        self.expect('(')
                        out = self.ident().text
                        self.expect(',')
                        inn = self.ident().text
                        self.expect(')')
                        self.accept(',')
                        summands.append(Summand(out=out, inn=inn))
                elif head.text == 'kernel':
                    kernel.append(_kernel_element(self, self.combo()))
                    while self.accept(','):
                        kernel.append(_kernel_element(self, self.combo()))
                    self.expect(';')
                else:
                    raise self.fail(f"Expected 'summands' or 'kernel', found {head.text!r}", head)
        else:
            raise self.fail(f"Unknown bimodule kind {kind.text!r}; use regular, gls or presented", kind)
        self.accept(';')
        self.expect('}')
        try:
            return BimoduleBlock(arrow=arrow.text, kind=BimoduleKind(kind.text), gls=gls,
                                 summands=tuple(summands), kernel=tuple(kernel), line=arrow.line)
        except ValidationError as e:
            raise InstanceError(e.errors()[0]['msg'])

    def instance(self) -> InstanceFile:
        field = FieldSpec.rationals()
        quiver: Optional[Quiver] = None
        algebras: Dict[str, AlgebraBlock] = {}
        bimodules: Dict[str, BimoduleBlock] = {}
        name = "Λ"
        while self.peek().kind != 'end':
            head = self.ident()
            if head.text == 'field':
                field = self.field_spec()
                self.accept(';')
            elif head.text == 'name':
                name = self.ident().text
                self.accept(';')
            elif head.text == 'quiver':
                if quiver is not None:
                    raise self.fail("Second quiver block", head)
                quiver = self.quiver_block()
            elif head.text == 'algebra':
                vertex = self.ident()
                if vertex.text in algebras:
                    raise self.fail(f"Second algebra block for {vertex.text}", vertex)
                self.expect('{')
                presentation = self.presentation_body()
                self.expect('}')
                algebras[vertex.text] = AlgebraBlock(vertex=vertex.text, presentation=presentation, line=vertex.line)
            elif head.text == 'bimodule':
                arrow = self.ident()
                if arrow.text in bimodules:
                    raise self.fail(f"Second bimodule block for {arrow.text}", arrow)
                bimodules[arrow.text] = self.bimodule_block(arrow)
            else:
                raise self.fail(f"Unexpected {head.text!r}; expected field, quiver, algebra or bimodule", head)
        if quiver is None:
            raise self.fail("Missing quiver block")
        try:
            return InstanceFile(field=field, quiver=quiver, algebras=algebras, bimodules=bimodules, name=name)
        except ValidationError as e:
            raise InstanceError(e.errors()[0]['msg'])


# ==================== PATH RESOLUTION ====================

def _resolve_path(quiver: Quiver, tokens: List[Token]) -> Path:
    """Printed tokens (right to left) as a path of quiver"""
    if len(tokens) == 1 and tokens[0].kind == 'trivial':
        vertex = tokens[0].text
        if vertex not in quiver.vertices:
            raise InstanceError(f"Unknown vertex {vertex} (line {tokens[0].line})")
        return Path(source=vertex, target=vertex)
    arrows = []
    for tok in reversed(tokens):
        if not quiver.has_arrow(tok.text):
            raise InstanceError(f"Unknown arrow {tok.text} (line {tok.line}, column {tok.column})")
        arrows.append(quiver.arrow(tok.text))
    for a, b in zip(arrows, arrows[1:]):
        if a.target != b.source:
            raise InstanceError(f"Arrows {a.label} and {b.label} do not compose (line {tokens[0].line})")
    return Path(source=arrows[0].source, target=arrows[-1].target, arrows=tuple(a.label for a in arrows))


def _relation(quiver: Quiver, combo: RawCombo) -> Relation:
    terms = tuple(Term(coefficient=str(c), path=_resolve_path(quiver, toks)) for c, toks in combo if c)
    if not terms:
        raise InstanceError("Relation with no nonzero term")
    return Relation(terms=terms)


def _kernel_element(parser: _Parser, combo: RawCombo) -> Tuple[KernelTerm, ...]:
    terms = []
    for c, toks in combo:
        marks = [k for k, t in enumerate(toks) if t.text.startswith('#')]
        if len(marks) != 1 or not toks[marks[0]].text[1:].isdigit():
            raise parser.fail("Kernel term needs exactly one #k summand marker", toks[0])
        k = marks[0]
        left = tuple(t.text for t in reversed(toks[:k]))
        right = tuple(t.text for t in reversed(toks[k + 1:]))
        terms.append(KernelTerm(coefficient=str(c), summand=int(toks[k].text[1:]), left=left, right=right))
    return tuple(terms)


# ==================== BUILDING ====================

def default_presentation(vertex: str) -> BoundQuiverPresentation:
    """k as a one-vertex quiver named after the outer vertex"""
    return BoundQuiverPresentation(quiver=Quiver(vertices=(vertex,)))


def _regular(arrow: str, L: Algebra, R: Algebra) -> Bimodule:
    """Λ as a Λ-Λ bimodule when both endpoints carry the same algebra"""
    if L.dim != R.dim or L.left_mats != R.left_mats or L.unit != R.unit:
        raise InstanceError(f"Bimodule {arrow}: regular needs the same algebra at both endpoints")
    return Bimodule(L, R, L.dim, list(L.left_mats), list(R.right_mats()), name=f"Λ_{arrow}")


def _presented(block: BimoduleBlock, L: Algebra, R: Algebra, Lq: Quiver, Rq: Quiver) -> Bimodule:
    field = L.field
    try:
        summands = [(L.idempotent_index(s.out), R.idempotent_index(s.inn)) for s in block.summands]
    except ValueError:
        raise InstanceError(f"Bimodule {block.arrow}: summand uses an unknown vertex")
    F = FreeBimodule(L, R, summands, name=f"F_{block.arrow}")
    relations = []
    for element in block.kernel:
        vector = [field.zero()] * F.dim
        for t in element:
            s = block.summands[t.summand]
            try:
                left = path_element(L, _path_from(Lq, t.left, s.out))
                right = path_element(R, _path_from(Rq, t.right, s.inn, ending=True))
                pure = F.element(t.summand, left, right)
            except DomainError as e:
                raise InstanceError(f"Bimodule {block.arrow}: kernel element is not in the free bimodule ({e.message})")
            c = field.coerce(Fraction(t.coefficient))
            vector = [field.coerce(x + c * y) for x, y in zip(vector, pure)]
        relations.append(vector)
    return presented_bimodule(F, relations, name=f"Λ_{block.arrow}")


def _path_from(quiver: Quiver, arrows: Tuple[str, ...], vertex: str, ending: bool = False) -> Path:
    """Traversal-order arrows as a path; the empty path is e[vertex]"""
    if not arrows:
        return Path(source=vertex, target=vertex)
    for label in arrows:
        if not quiver.has_arrow(label):
            raise DomainError(f"Unknown arrow {label}")
    objs = [quiver.arrow(x) for x in arrows]
    for a, b in zip(objs, objs[1:]):
        if a.target != b.source:
            raise DomainError(f"Arrows {a.label} and {b.label} do not compose")
    path = Path(source=objs[0].source, target=objs[-1].target, arrows=arrows)
    if (path.target if ending else path.source) != vertex:
        raise DomainError(f"Path {path.render()} does not {'end' if ending else 'start'} at {vertex}")
    return path


def build_instance(instance: InstanceFile) -> ProSpecies:
    """Vertex algebras from their presentations, then the arrow bimodules"""
    ok, message = validate_quiver_labels(instance.quiver)
    if not ok:
        raise InstanceError(message)
    field = instance.field
    Q = instance.quiver
    presentations: Dict[str, BoundQuiverPresentation] = {}
    algebras: Dict[str, Algebra] = {}
    for v in Q.vertices:
        block = instance.algebras.get(v)
        presentations[v] = block.presentation if block else default_presentation(v)
        algebras[v] = bound_quiver_algebra(presentations[v], field, name=f"Λ_{v}")
    bimodules: Dict[str, Bimodule] = {}
    for a in Q.arrows:
        block = instance.bimodules[a.label]
        L, R = algebras[a.target], algebras[a.source]
        if block.kind == BimoduleKind.REGULAR:
            bimodules[a.label] = _regular(a.label, L, R)
        elif block.kind == BimoduleKind.GLS:
            g = block.gls
            try:
                bimodules[a.label] = gls_bimodule(L, R, g.c_s, g.c_t, g.f_st, g.f_ts, g.g, name=f"Λ_{a.label}")
            except DomainError as e:
                raise InstanceError(f"Bimodule {a.label}: {e.message}")
        else:
            bimodules[a.label] = _presented(block, L, R, presentations[a.target].quiver,
                                            presentations[a.source].quiver)
    return build_prospecies(Q, algebras, bimodules, presentations, name=instance.name)


def parse_instance_file(text: str) -> InstanceFile:
    return _Parser(text).instance()


def parse_instance(text: str) -> ProSpecies:
    """Parse and build; ParseError for syntax, InstanceError or the engine's errors otherwise"""
    instance = parse_instance_file(text)
    Lam = build_instance(instance)
    logger.info(f"✓ Instance parsed: {Lam}")
    return Lam


def instance_hash(text: str) -> str:
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


def load_instance(path: str) -> Tuple[str, ProSpecies]:
    with open(path, encoding='utf-8') as handle:
        text = handle.read()
    return text, parse_instance(text)


# ==================== PRESENTATIONS ====================

def parse_presentation(text: str) -> BoundQuiverPresentation:
    parser = _Parser(text)
    presentation = parser.presentation_body()
    if parser.peek().kind != 'end':
        raise parser.fail(f"Unexpected {parser.peek().text!r} after the presentation")
    return presentation


def render_presentation(presentation: Union[Presentation, BoundQuiverPresentation]) -> str:
    """The algebra-block body: parse_presentation reads it back"""
    Q = presentation.quiver
    lines = ["quiver {"]
    if Q.vertices:
        lines.append(f"  vertex {' '.join(Q.vertices)};")
    for a in Q.arrows:
        lines.append(f"  arrow {a.label}: {a.source} -> {a.target};")
    lines.append("}")
    lines.append("relations {")
    for r in presentation.relations:
        lines.append(f"  {r.render()};")
    lines.append("}")
    return "\n".join(lines) + "\n"
