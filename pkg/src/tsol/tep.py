"""Local rules with the unique-extension property on triangles.

A family of accepted triangle patterns over an alphabet where any two
cells force the third lets a pattern on a basis (= fill matrix) of the
size-n triangle determine a full valid pattern.  Changing basis is a
bijection on symbol vectors, and it factors into permutations that each
touch only two vector positions, one per solitaire move of a connecting
path plus a final reordering stage.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core import Point, size_n_triangle, sorted_cells, triangle_at, TRIANGLE
from .errors import BadParams, InternalError, NotABasis, NotSameTriangle, NotTep, ParseError
from .filling import fill
from .pathfinder import path_between

_ROLE_OF = {t: i for i, t in enumerate(TRIANGLE)}  # offset -> 0 up, 1 up-right, 2 right


@dataclass(frozen=True)
class TepFamily:
    """Alphabet plus accepted (up, up-right, right) symbol triples, with the
    property that fixing any two cells leaves exactly one valid third."""

    alphabet: tuple
    accepted: frozenset

    @property
    def size(self) -> int:
        return len(self.alphabet)

    def completion(self, have: dict) -> int:
        """Value forced at the missing role given the other two roles."""
        (r1, s1), (r2, s2) = sorted(have.items())
        missing = 3 - r1 - r2
        matches = [t for t in self.accepted if t[r1] == s1 and t[r2] == s2]
        if len(matches) != 1:
            raise InternalError("family lost the unique-extension property")
        return matches[0][missing]


def validate_tep(alphabet, accepted) -> TepFamily:
    """Check the unique-extension property for all three role pairs; the
    NotTep witness names the roles and partial assignment that fail."""
    alphabet = tuple(alphabet)
    accepted = frozenset(tuple(t) for t in accepted)
    symbols = set(alphabet)
    for t in accepted:
        if len(t) != 3 or any(s not in symbols for s in t):
            raise NotTep(f"triple {t} is not over the alphabet")
    for r1, r2 in ((0, 1), (0, 2), (1, 2)):
        for s1, s2 in product(alphabet, repeat=2):
            matches = [t for t in accepted if t[r1] == s1 and t[r2] == s2]
            if len(matches) != 1:
                raise NotTep(
                    f"roles ({r1},{r2}) with symbols ({s1},{s2}) admit "
                    f"{len(matches)} completions",
                    witness=((r1, r2), (s1, s2)),
                )
    fam = TepFamily(alphabet=alphabet, accepted=accepted)
    # precompute nothing; completion() scans the (q^2)-sized family
    return fam


def family_from_rule(rule, q: int) -> TepFamily:
    """Family of all (a, b, rule(a, b)) triples over the alphabet 0..q-1."""
    alphabet = tuple(range(q))
    accepted = {(a, b, rule(a, b) % q) for a in alphabet for b in alphabet}
    return validate_tep(alphabet, accepted)


def parse_rule_spec(spec: str) -> TepFamily:
    """Rule expressions accepted on the command line:
    "xor", "add-mod-<m>", or "affine <u> <v> <c> <m>"."""
    spec = spec.strip()
    if spec == "xor":
        return family_from_rule(lambda a, b: a ^ b, 2)
    if spec.startswith("add-mod-"):
        m = int(spec[len("add-mod-"):])
        return family_from_rule(lambda a, b: a + b, m)
    if spec.startswith("affine"):
        parts = spec.split()
        if len(parts) != 5:
            raise ParseError(f"bad rule spec {spec!r}")
        u, v, c, m = (int(x) for x in parts[1:])
        return family_from_rule(lambda a, b: u * a + v * b + c, m)
    raise ParseError(f"bad rule spec {spec!r}")


def parse_family(text: str) -> TepFamily:
    """File format: header "alphabet <k>", then one accepted triple per line."""
    lines = [l.strip() for l in text.splitlines()]
    lines = [l for l in lines if l and not l.startswith("#")]
    if not lines or not lines[0].startswith("alphabet"):
        raise ParseError("family file must start with 'alphabet <k>'", line=1)
    try:
        q = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise ParseError("bad alphabet header", line=1) from None
    accepted = set()
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"line {lineno}: expected 3 symbols", line=lineno)
        accepted.add(tuple(int(s) for s in parts))
    return validate_tep(range(q), accepted)


def render_family(fam: TepFamily) -> str:
    out = [f"alphabet {fam.size}"]
    for t in sorted(fam.accepted):
        out.append(f"{t[0]} {t[1]} {t[2]}")
    return "\n".join(out) + "\n"


def parse_assignment(text: str) -> dict:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"line {lineno}: expected '<x> <y> <symbol>'", line=lineno)
        try:
            p = Point(int(parts[0]), int(parts[1]))
            s = int(parts[2])
        except ValueError:
            raise ParseError(f"line {lineno}: not integers", line=lineno) from None
        if p in values:
            raise ParseError(f"line {lineno}: duplicate cell", line=lineno)
        values[p] = s
    return values


def render_assignment(values: dict) -> str:
    lines = [f"{p.x} {p.y} {values[p]}" for p in sorted_cells(values)]
    return "\n".join(lines) + ("\n" if lines else "")


def complete(fam: TepFamily, values: dict, n: int, v=(0, 0)) -> dict:
    """Close a partial assignment on the size-n triangle under the rule:
    wherever a triangle has two assigned cells, the third is forced.  On a
    basis this covers the whole triangle; otherwise the closure of the
    domain is returned."""
    v = Point(*v)
    region = size_n_triangle(n, v)
    if not set(values) <= region:
        raise BadParams("assignment domain must lie inside the triangle")
    out = dict(values)
    pending = list(out)
    while pending:
        x = pending.pop()
        for anchor_off in ((0, -1), (-1, -1), (-1, 0)):
            anchor = Point(x.x + anchor_off[0], x.y + anchor_off[1])
            cells = [anchor + t for t in TRIANGLE]
            if any(c not in region for c in cells):
                continue
            assigned = [c for c in cells if c in out]
            if len(assigned) != 2:
                continue
            missing = next(c for c in cells if c not in out)
            have = {_ROLE_OF[c - anchor]: out[c] for c in assigned}
            out[missing] = fam.completion(have)
            pending.append(missing)
    return out


def is_valid_full(fam: TepFamily, values: dict, n: int, v=(0, 0)) -> bool:
    """True when `values` covers the triangle and every inner triangle
    carries an accepted triple."""
    v = Point(*v)
    region = size_n_triangle(n, v)
    if set(values) != region:
        return False
    for anchor in {c - t for c in region for t in TRIANGLE}:
        cells = [anchor + t for t in TRIANGLE]
        if all(c in region for c in cells):
            triple = tuple(values[c] for c in cells)
            if triple not in fam.accepted:
                return False
    return True


def is_basis(P, n: int, v=(0, 0)) -> bool:
    """Bases of the size-n triangle are exactly its n-point filling subsets;
    no family is needed to decide this."""
    P = frozenset(P)
    region = size_n_triangle(n, v)
    if not P <= region:
        return False
    return len(P) == n and fill(P) == region


def basis_change(fam: TepFamily, P, Q, n: int, values: dict, v=(0, 0)) -> dict:
    """Transport an assignment from basis P to basis Q by completing to the
    full triangle and restricting."""
    P, Q = frozenset(P), frozenset(Q)
    if not is_basis(P, n, v) or not is_basis(Q, n, v):
        raise NotABasis("both patterns must be bases of the same triangle")
    if set(values) != set(P):
        raise NotABasis("assignment domain must equal the source basis")
    full = complete(fam, values, n, v)
    return {q: full[q] for q in Q}


@dataclass(frozen=True)
class BasicPermutation:
    """A bijection of symbol vectors that ignores all but two positions.
    `table` maps the (pos_i, pos_j) symbol pair to its image."""

    i: int
    j: int
    table: tuple  # of ((si, sj), (si', sj')) pairs, sorted

    def apply(self, vector: list) -> None:
        mapping = dict(self.table)
        vector[self.i], vector[self.j] = mapping[(vector[self.i], vector[self.j])]


def _swap_permutation(i: int, j: int, alphabet) -> BasicPermutation:
    table = tuple(sorted(((x, y), (y, x)) for x in alphabet for y in alphabet))
    return BasicPermutation(i=i, j=j, table=table)


@dataclass(frozen=True)
class CompiledBasisChange:
    source_order: tuple   # cells of P, canonical order
    target_order: tuple   # cells of Q, canonical order
    permutations: tuple   # BasicPermutation, applied left to right

    def apply(self, vector) -> tuple:
        vec = list(vector)
        for perm in self.permutations:
            perm.apply(vec)
        return tuple(vec)


def compile_basis_change(fam: TepFamily, P, Q, n: int, v=(0, 0)) -> CompiledBasisChange:
    """Express the basis-change bijection as a sequence of two-position
    permutations: one per solitaire move along a path from P to Q (the
    moved cell's value is rewritten using the triangle's third cell), then
    at most |P| swaps aligning the tracked order with Q's canonical order."""
    P, Q = frozenset(P), frozenset(Q)
    if not is_basis(P, n, v) or not is_basis(Q, n, v):
        raise NotABasis("both patterns must be bases")
    if fill(P) != fill(Q):
        raise NotSameTriangle("bases span different triangles")

    order = list(sorted_cells(P))
    perms = []
    for m in path_between(P, Q).moves:
        cells = triangle_at(m.anchor)
        support = next(iter(cells - {m.src, m.dst}))
        i = order.index(m.src)
        j = order.index(support)
        role_src = _ROLE_OF[m.src - m.anchor]
        role_sup = _ROLE_OF[support - m.anchor]
        table = []
        for x in fam.alphabet:
            for y in fam.alphabet:
                z = fam.completion({role_src: x, role_sup: y})
                table.append(((x, y), (z, y)))
        perms.append(BasicPermutation(i=i, j=j, table=tuple(sorted(table))))
        order[i] = m.dst

    target = list(sorted_cells(Q))
    for i in range(len(target)):
        if order[i] == target[i]:
            continue
        j = order.index(target[i])
        perms.append(_swap_permutation(i, j, fam.alphabet))
        order[i], order[j] = order[j], order[i]
    if order != target:
        raise InternalError("reordering stage failed")
    return CompiledBasisChange(
        source_order=tuple(sorted_cells(P)),
        target_order=tuple(target),
        permutations=tuple(perms),
    )
