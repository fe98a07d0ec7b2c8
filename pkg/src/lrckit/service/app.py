"""HTTP facade over the code workbench.

Wraps construction, verification, encoding, repair and failure simulation
behind JSON endpoints; spec files travel in request/response bodies as
plain text.  Run with:  uvicorn lrckit.service.app:app
"""

from __future__ import annotations

import random
from collections import Counter

from fastapi import FastAPI, HTTPException

from .. import codefile, construction, repair, verify
from ..errors import CodeFileError, LrcError, TooManyErasuresInGroup
from . import schemas

app = FastAPI(title="lrckit", version="0.1.0")


def _parse_spec(spec_text: str) -> codefile.ParsedCodeFile:
    try:
        return codefile.parse(spec_text)
    except CodeFileError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@app.get("/healthz")
def healthz() -> dict:
    return {"status": "ok"}


@app.post("/codes/generate", response_model=schemas.GenerateResponse)
def generate(req: schemas.GenerateRequest) -> schemas.GenerateResponse:
    try:
        params = construction.plan_params(
            req.q, req.r, req.mu, req.w, req.l, req.t,
            construction.Strategy.parse(req.strategy),
        )
        instance = construction.build_instance(params, seed=req.seed)
    except LrcError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return _generate_response(instance)


@app.post("/codes/preset", response_model=schemas.GenerateResponse)
def generate_preset(req: schemas.PresetRequest) -> schemas.GenerateResponse:
    try:
        params = construction.preset_params(req.row, req.q)
        instance = construction.build_instance(params)
    except LrcError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return _generate_response(instance)


def _generate_response(instance) -> schemas.GenerateResponse:
    p = instance.params
    return schemas.GenerateResponse(
        spec_text=codefile.serialize(instance),
        q=p.q, n=p.n, k=p.k, r=p.r, mu=p.mu, w=p.w, l=p.l, t=p.t,
        strategy=p.strategy.value,
    )


@app.get("/presets/table1", response_model=list[schemas.PresetRow])
def preset_table(q: int) -> list[schemas.PresetRow]:
    rows = []
    for row in construction.PRESET_ROWS:
        try:
            p = construction.preset_params(row, q)
        except LrcError:
            continue
        rows.append(schemas.PresetRow(
            row=row, q=p.q, r=p.r, mu=p.mu, w=p.w, l=p.l, t=p.t,
            n=p.n, k=p.k, strategy=p.strategy.value,
        ))
    if not rows:
        raise HTTPException(status_code=422, detail=f"no preset row is feasible at q={q}")
    return rows


@app.post("/codes/verify", response_model=schemas.VerifyResponse)
def verify_code(req: schemas.VerifyRequest) -> schemas.VerifyResponse:
    parsed = _parse_spec(req.spec_text)
    report = verify.full_report(
        parsed.instance,
        exact_cap=req.exact_cap,
        trials=req.trials,
        seed=req.seed,
        workers=req.workers,
        declared_k=parsed.declared_k,
    )
    payload = report.to_dict()
    payload["all_verified_hold"] = report.all_verified_hold
    return schemas.VerifyResponse(**payload)


@app.post("/codes/encode", response_model=schemas.EncodeResponse)
def encode_message(req: schemas.EncodeRequest) -> schemas.EncodeResponse:
    parsed = _parse_spec(req.spec_text)
    instance = parsed.instance
    field = instance.field
    try:
        msg = [field.element(e) for e in req.message]
        word = construction.encode(instance, msg)
    except (LrcError, ValueError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return schemas.EncodeResponse(codeword=[x.enc for x in word])


@app.post("/codes/repair", response_model=schemas.RepairResponse)
def repair_codeword(req: schemas.RepairRequest) -> schemas.RepairResponse:
    parsed = _parse_spec(req.spec_text)
    instance = parsed.instance
    field = instance.field
    if len(req.codeword) != instance.n:
        raise HTTPException(
            status_code=422,
            detail=f"codeword has {len(req.codeword)} symbols, expected n = {instance.n}",
        )
    try:
        received = tuple(
            None if e is None else field.element(e) for e in req.codeword
        )
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    pattern = repair.ErasurePattern(received)
    erased = pattern.erased_positions
    if not erased:
        raise HTTPException(status_code=422, detail="no erasures to repair")
    filled = list(received)
    repaired_positions: list[int] = []
    try:
        for group in sorted({instance.layout.group_of(pos) for pos in erased}):
            symbols, trace = repair.repair_group(instance, pattern, group)
            for pos, sym in zip(trace.repaired_positions, symbols):
                filled[pos] = sym
                repaired_positions.append(pos)
    except TooManyErasuresInGroup as exc:
        raise HTTPException(status_code=409, detail=str(exc)) from exc
    return schemas.RepairResponse(
        codeword=[x.enc for x in filled],
        repaired_positions=sorted(repaired_positions),
        reads_per_repair=instance.params.r,
    )


@app.post("/codes/simulate", response_model=schemas.SimulateResponse)
def simulate(req: schemas.SimulateRequest) -> schemas.SimulateResponse:
    parsed = _parse_spec(req.spec_text)
    instance = parsed.instance
    field = instance.field
    n = instance.n
    if req.failures > n:
        raise HTTPException(status_code=422, detail=f"cannot erase {req.failures} of {n}")
    rng = random.Random(req.seed)
    full_ok = 0
    repaired = 0
    reads = 0
    histogram: Counter[int] = Counter()
    for _ in range(req.trials):
        msg = [field.element(rng.randrange(field.q)) for _ in range(instance.k)]
        word = construction.encode(instance, msg)
        erased = rng.sample(range(n), req.failures)
        pattern = repair.ErasurePattern.erase(word, erased)
        per_group = Counter(instance.layout.group_of(pos) for pos in erased)
        for g in range(instance.params.l):
            histogram[per_group.get(g, 0)] += 1
        ok = True
        for pos in erased:
            try:
                _, trace = repair.repair_position(instance, pattern, pos)
            except TooManyErasuresInGroup:
                ok = False
                continue
            repaired += 1
            reads += trace.symbols_read
        if ok:
            full_ok += 1
    return schemas.SimulateResponse(
        trials=req.trials,
        failures=req.failures,
        fully_repaired_fraction=full_ok / req.trials,
        mean_reads_per_repaired_symbol=reads / repaired if repaired else 0.0,
        group_erasure_histogram=dict(sorted(histogram.items())),
    )
