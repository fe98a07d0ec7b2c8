"""Text serialization of code instances.

Layout (one code per file, LF line endings, decimal element encodings):

    LRC1
    q=<q> p=<p> m=<m> irr=<c0,c1,...>          (irr empty for prime fields)
    r= mu= w= l= t= strategy= seed=            (seed empty unless RANDOM)
    n= k=
    B=<comma separated encodings>
    Y=<comma separated encodings>
    E=<comma separated encodings>              (empty when w=0)
    <k lines of n space-separated encodings>   (generator rows)

parse() rebuilds the full instance, including the coefficient subspace:
each generator row is solved back against the evaluation matrix, which has
full row rank, so a well-formed file determines its subspace uniquely.
serialize(parse(text)) reproduces text byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass

from .construction import (
    CodeInstance,
    GroupLayout,
    Strategy,
    SubspaceBasis,
    evaluation_matrix,
    relaxed_params,
)
from .errors import CodeFileError, InvalidParams, LrcError
from .gf import make_field
from .linalg import Matrix, solve_left_many

MAGIC = "LRC1"


@dataclass(frozen=True)
class ParsedCodeFile:
    instance: CodeInstance
    declared_k: int


def serialize(instance: CodeInstance, declared_k: int | None = None) -> str:
    params = instance.params
    field = instance.field
    seed = instance.subspace.seed
    k = declared_k if declared_k is not None else instance.G.nrows
    lines = [
        MAGIC,
        f"q={field.q} p={field.p} m={field.m} irr={','.join(str(c) for c in field.irr)}",
        (
            f"r={params.r} mu={params.mu} w={params.w} l={params.l} t={params.t} "
            f"strategy={params.strategy.value} seed={'' if seed is None else seed}"
        ),
        f"n={params.n} k={k}",
        "B=" + ",".join(str(b.enc) for b in instance.layout.B),
        "Y=" + ",".join(str(y.enc) for y in instance.layout.Y),
        "E=" + ",".join(str(e.enc) for e in instance.layout.E),
    ]
    for row in instance.G.rdata:
        lines.append(" ".join(str(x.enc) for x in row))
    return "\n".join(lines) + "\n"


def _fields(line: str, expected_keys: list[str], lineno: int) -> dict[str, str]:
    parts = line.split(" ")
    if len(parts) != len(expected_keys):
        raise CodeFileError(f"line {lineno}: expected fields {expected_keys}, got {line!r}")
    out = {}
    for part, key in zip(parts, expected_keys):
        prefix = key + "="
        if not part.startswith(prefix):
            raise CodeFileError(f"line {lineno}: expected {prefix}..., got {part!r}")
        out[key] = part[len(prefix):]
    return out


def _int(value: str, what: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise CodeFileError(f"{what} must be an integer, got {value!r}") from None


def _enc_list(value: str, what: str, q: int) -> list[int]:
    if value == "":
        return []
    out = []
    for token in value.split(","):
        enc = _int(token, what)
        if not 0 <= enc < q:
            raise CodeFileError(f"{what} encoding {enc} out of range for GF({q})")
        out.append(enc)
    return out


def parse(text: str) -> ParsedCodeFile:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) < 7:
        raise CodeFileError(f"file truncated: {len(lines)} lines, header needs 7")
    if lines[0] != MAGIC:
        raise CodeFileError(f"bad magic {lines[0]!r}, expected {MAGIC!r}")

    fld = _fields(lines[1], ["q", "p", "m", "irr"], 2)
    q = _int(fld["q"], "q")
    try:
        field = make_field(q)
    except LrcError as exc:
        raise CodeFileError(f"invalid field size q={q}: {exc}") from exc
    irr = tuple(_int(c, "irr coefficient") for c in fld["irr"].split(",") if c != "")
    if (field.p, field.m, field.irr) != (_int(fld["p"], "p"), _int(fld["m"], "m"), irr):
        raise CodeFileError(
            f"field description q={q} p={fld['p']} m={fld['m']} irr={fld['irr']} "
            f"does not match the canonical GF({q})"
        )

    fld = _fields(lines[2], ["r", "mu", "w", "l", "t", "strategy", "seed"], 3)
    r, mu, w = _int(fld["r"], "r"), _int(fld["mu"], "mu"), _int(fld["w"], "w")
    l, t = _int(fld["l"], "l"), _int(fld["t"], "t")
    try:
        strategy = Strategy.parse(fld["strategy"])
    except InvalidParams as exc:
        raise CodeFileError(str(exc)) from exc
    seed = None if fld["seed"] == "" else _int(fld["seed"], "seed")

    fld = _fields(lines[3], ["n", "k"], 4)
    n, k = _int(fld["n"], "n"), _int(fld["k"], "k")

    try:
        params = relaxed_params(q, r, mu, w, l, t, strategy)
    except InvalidParams as exc:
        raise CodeFileError(f"invalid parameters: {exc}") from exc
    if params.n != n:
        raise CodeFileError(f"declared n={n} but (r+mu-1)*l = {params.n}")
    if k < 1:
        raise CodeFileError(f"declared k={k} must be >= 1")

    for lineno, prefix in ((4, "B="), (5, "Y="), (6, "E=")):
        if not lines[lineno].startswith(prefix):
            raise CodeFileError(f"line {lineno + 1} must start with {prefix!r}")
    b_encs = _enc_list(lines[4].removeprefix("B="), "B", q)
    y_encs = _enc_list(lines[5].removeprefix("Y="), "Y", q)
    e_encs = _enc_list(lines[6].removeprefix("E="), "E", q)
    gs = r + mu - 1
    if len(b_encs) != gs or len(set(b_encs)) != gs:
        raise CodeFileError(f"B must hold r+mu-1 = {gs} distinct encodings")
    if len(y_encs) != l or len(set(y_encs)) != l:
        raise CodeFileError(f"Y must hold l = {l} distinct encodings")
    if len(e_encs) != w or len(set(e_encs)) != w:
        raise CodeFileError(f"E must hold w = {w} distinct encodings")

    rows = lines[7:]
    if len(rows) != k:
        raise CodeFileError(f"expected k = {k} generator rows, found {len(rows)}")
    g_encs = []
    for i, row in enumerate(rows):
        encs = [_int(tok, f"generator row {i}") for tok in row.split(" ") if tok != ""]
        if len(encs) != n:
            raise CodeFileError(f"generator row {i} has {len(encs)} symbols, expected n = {n}")
        if any(not 0 <= e < q for e in encs):
            raise CodeFileError(f"generator row {i} has encodings out of range for GF({q})")
        g_encs.append(encs)

    layout = GroupLayout(
        field=field,
        Y=tuple(field.element(e) for e in y_encs),
        B=tuple(field.element(e) for e in b_encs),
        E=tuple(field.element(e) for e in e_encs),
        points=tuple((i, j) for i in range(l) for j in range(gs)),
    )
    G = Matrix.from_encs(field, g_encs)

    evm = evaluation_matrix(params, layout)
    solutions = solve_left_many(evm, [list(row) for row in G.rdata])
    basis_rows = []
    for i, solved in enumerate(solutions):
        if solved is None:
            raise CodeFileError(
                f"generator row {i} is not an evaluation of any coefficient grid"
            )
        basis_rows.append(tuple(solved))
    subspace = SubspaceBasis(
        basis=Matrix(field, tuple(basis_rows)), strategy=strategy, seed=seed
    )
    instance = CodeInstance(params=params, layout=layout, subspace=subspace, G=G)
    return ParsedCodeFile(instance=instance, declared_k=k)
