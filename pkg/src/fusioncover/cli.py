"""Command-line surface: tables, cover verification, cyclic cover search.

Subcommands
-----------
* ``kac``          - the (p-1) x (q-1) grid of conformal weights, with c and N
* ``fusion``       - the N x N fusion rule table in bracket notation
* ``cover verify`` - check the canonical 2-group cover, or a labeled group
                     read from a file, against the model's fusion rules
* ``cover search`` - exhaustively search cyclic groups for covers

Every subcommand takes ``--format text|json``.  Text output is stable and
golden-tested; JSON output is ``{"model": {p, q, c, N}, ...}`` with exact
rationals rendered as ``num/den`` strings, and round-trips through the
standard json parser.

Exit codes: 0 success/PASS, 1 verification FAIL, 2 usage or input error.

Group labeling files are line-oriented and hand-editable::

    # Ising fusion rules as Z4
    group 4
    0 -> 1,1
    1 -> 1,2
    2 -> 1,3
    3 -> 1,2

The header lists the invariant factors (``group 2 2`` for Z2 x Z2, bare
``group`` for the trivial group); each following line maps an element,
written as comma-separated digits, to a Kac label m,n.  ``#`` starts a
comment.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .certificates import ClosureViolation, CoverCertificate
from .cover_search import (
    DEFAULT_SEARCH_BUDGET,
    AbelianGroupSpec,
    LabeledGroup,
    search_cyclic_covers,
    verify_abelian_cover,
)
from .errors import CapacityError, GroupFileError
from .minimal_model import (
    ModelParams,
    Sector,
    central_charge,
    fraction_str,
    fusion_tensor,
    kac_table,
)
from .two_group_cover import BitVector, GroupContext, canonical_cover, verify_cover

# Above this p + q the exhaustive pair scan needs an explicit override.
DEFAULT_VERIFY_PQ_SUM = 18


@dataclass(frozen=True)
class OutputDocument:
    """A rendered command result: machine payload plus its text rendering."""

    format: str
    kind: str
    payload: dict
    text: str

    def emit(self) -> str:
        if self.format == "json":
            return json.dumps(self.payload, indent=2)
        return self.text


def _model_header(params: ModelParams) -> dict:
    return {
        "p": params.p,
        "q": params.q,
        "c": fraction_str(central_charge(params)),
        "N": params.n_sectors,
    }


def _sector_payload(s: Sector) -> dict:
    return {"index": s.index, "m": s.m, "n": s.n, "h": fraction_str(s.h), "name": s.name}


def _format_table(rows: list[list[str]]) -> str:
    widths = [max(len(row[c]) for row in rows) for c in range(len(rows[0]))]
    return "\n".join(
        "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
        for row in rows
    )


# ---------------------------------------------------------------------------
# kac / fusion tables
# ---------------------------------------------------------------------------

def cmd_kac(p: int, q: int, format: str = "text") -> OutputDocument:
    """The full Kac table of weights h_{m,n}."""
    params = ModelParams(p, q)
    grid = [[fraction_str(h) for h in row] for row in kac_table(params)]
    payload = {"model": _model_header(params), "kac_table": grid}
    rows = [["h_{m,n}"] + [f"n={n}" for n in range(1, q)]]
    rows += [[f"m={m}"] + grid[m - 1] for m in range(1, p)]
    text = "\n".join(
        [
            f"Kac table of the ({p},{q}) minimal model",
            f"c = {payload['model']['c']}, N = {payload['model']['N']} sectors",
            _format_table(rows),
        ]
    )
    return OutputDocument(format, "kac", payload, text)


def cmd_fusion(p: int, q: int, format: str = "text") -> OutputDocument:
    """The N x N fusion rule table; each cell lists the sectors of S_i x S_j."""
    params = ModelParams(p, q)
    tensor = fusion_tensor(params)
    secs = tensor.sectors
    cells = [
        [[s.name for s in tensor.products_of(i, j)] for j in range(tensor.n)]
        for i in range(tensor.n)
    ]
    payload = {
        "model": _model_header(params),
        "sectors": [_sector_payload(s) for s in secs],
        "table": cells,
    }
    rows = [["[h] x [h']"] + [s.name for s in secs]]
    rows += [[secs[i].name] + ["+".join(cell) for cell in cells[i]] for i in range(tensor.n)]
    text = "\n".join(
        [
            f"Fusion rules of the ({p},{q}) minimal model",
            f"c = {payload['model']['c']}, N = {payload['model']['N']} sectors",
            _format_table(rows),
        ]
    )
    return OutputDocument(format, "fusion", payload, text)


# ---------------------------------------------------------------------------
# group labeling files
# ---------------------------------------------------------------------------

def parse_group_file(path: str | Path, params: ModelParams) -> LabeledGroup:
    """Parse a labeling file into a LabeledGroup for the given model.

    Raises GroupFileError with file:line diagnostics on any malformation.
    """
    path = Path(path)
    try:
        lines = path.read_text().splitlines()
    except OSError as e:
        raise GroupFileError(f"cannot read group file {path}: {e}")
    spec: AbelianGroupSpec | None = None
    labels: dict[tuple[int, ...], tuple[int, int]] = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{path}:{lineno}"
        if spec is None:
            parts = line.split()
            if parts[0] != "group":
                raise GroupFileError(f"{where}: expected 'group k1 k2 ...' header, got {line!r}")
            try:
                factors = tuple(int(x) for x in parts[1:])
            except ValueError:
                raise GroupFileError(f"{where}: non-integer invariant factor in {parts[1:]}")
            try:
                spec = AbelianGroupSpec(factors)
            except ValueError as e:
                raise GroupFileError(f"{where}: {e}")
            continue
        if "->" not in line:
            raise GroupFileError(f"{where}: expected 'e1,...,et -> m,n', got {line!r}")
        left, right = line.split("->", 1)
        left = left.strip()
        t = len(spec.factors)
        try:
            elem = tuple(int(x) for x in left.split(",")) if left else ()
        except ValueError:
            raise GroupFileError(f"{where}: non-integer element digits {left!r}")
        if len(elem) != t:
            raise GroupFileError(f"{where}: element {left!r} has {len(elem)} digits, expected {t}")
        for u, (digit, k) in enumerate(zip(elem, spec.factors), 1):
            if not 0 <= digit < k:
                raise GroupFileError(f"{where}: digit {u} of element {left!r} outside 0..{k - 1}")
        try:
            m, n = (int(x) for x in right.strip().split(","))
        except ValueError:
            raise GroupFileError(f"{where}: expected Kac label 'm,n', got {right.strip()!r}")
        if not (0 < m < params.p and 0 < n < params.q):
            raise GroupFileError(
                f"{where}: Kac label ({m}, {n}) out of range for (p, q) = ({params.p}, {params.q})"
            )
        if elem in labels:
            raise GroupFileError(f"{where}: element {left!r} labeled twice")
        labels[elem] = (m, n)
    if spec is None:
        raise GroupFileError(f"{path}: missing 'group k1 k2 ...' header")
    try:
        return LabeledGroup.from_kac_labels(spec, params, labels)
    except ValueError as e:
        raise GroupFileError(f"{path}: {e}")


# ---------------------------------------------------------------------------
# cover verify / cover search
# ---------------------------------------------------------------------------

def _witness_payload(witness, element_json) -> dict:
    if isinstance(witness, ClosureViolation):
        return {
            "kind": "closure_violation",
            "g1": element_json(witness.g1),
            "g2": element_json(witness.g2),
            "g3": element_json(witness.g3),
            "sectors": [_sector_payload(s) for s in witness.sectors],
        }
    return {
        "kind": "uncovered_triple",
        "sectors": [_sector_payload(s) for s in witness.sectors],
    }


def _witness_text(witness, element_str) -> str:
    if isinstance(witness, ClosureViolation):
        i, j, k = witness.sectors
        return (
            f"witness: {element_str(witness.g1)} + {element_str(witness.g2)} = "
            f"{element_str(witness.g3)} maps to {i.name} x {j.name} -> {k.name}, "
            f"but {k.name} does not occur in {i.name} x {j.name}"
        )
    i, j, k = witness.sectors
    return (
        f"witness: admissible triple {i.name} x {j.name} -> {k.name} "
        f"is realized by no pair of group elements"
    )


def _certificate_document(
    params: ModelParams,
    cert: CoverCertificate,
    group_info: dict,
    group_desc: str,
    element_json,
    element_str,
    format: str,
) -> OutputDocument:
    payload = {
        "model": _model_header(params),
        "group": group_info,
        "verdict": cert.verdict,
        "stats": cert.stats,
        "witness": None if cert.witness is None else _witness_payload(cert.witness, element_json),
    }
    lines = [
        f"Cover verification for the ({params.p},{params.q}) minimal model",
        f"group: {group_desc} (order {cert.stats['group_order']})",
        f"verdict: {cert.verdict}",
        f"pairs checked: {cert.stats['pairs_checked']}",
        f"admissible sector triples: {cert.stats['admissible_triples']}",
        f"realized sector triples: {cert.stats['realized_triples']}",
    ]
    if cert.witness is not None:
        lines.append(_witness_text(cert.witness, element_str))
    return OutputDocument(format, "cover_certificate", payload, "\n".join(lines))


def cmd_cover_verify(
    p: int,
    q: int,
    group_file: str | None = None,
    format: str = "text",
    threads: int = 1,
    allow_large: bool = False,
) -> tuple[OutputDocument, int]:
    """Verify a cover; returns the document and the exit code (0 PASS, 1 FAIL)."""
    params = ModelParams(p, q)
    tensor = fusion_tensor(params)
    if group_file is None:
        if p + q > DEFAULT_VERIFY_PQ_SUM and not allow_large:
            raise CapacityError(
                f"p + q = {p + q} exceeds the default exhaustive-scan budget "
                f"{DEFAULT_VERIFY_PQ_SUM}; pass --allow-large to proceed"
            )
        ctx = GroupContext(params)
        cert = verify_cover(canonical_cover(ctx), tensor, threads=threads)
        r = ctx.r
        group_info = {
            "kind": "two_group_quotient",
            "factors": [2] * (r - 1),
            "order": 1 << (r - 1),
        }
        desc = f"Z2^{r - 1}, the quotient of H = Z2^{r} by the all-ones vector"
        element_json = lambda g: BitVector(g, r).coordinates()
        element_str = element_json
    else:
        lg = parse_group_file(group_file, params)
        cert = verify_abelian_cover(lg, tensor, threads=threads)
        group_info = {
            "kind": "abelian",
            "factors": list(lg.spec.factors),
            "order": lg.spec.order,
        }
        desc = lg.spec.describe()
        element_json = lambda e: list(e)
        element_str = lambda e: ",".join(str(d) for d in e) if e else "()"
    doc = _certificate_document(
        params, cert, group_info, desc, element_json, element_str, format
    )
    return doc, (0 if cert.passed else 1)


def cmd_cover_search(
    p: int,
    q: int,
    max_order: int,
    format: str = "text",
    allow_large: bool = False,
) -> OutputDocument:
    """Search cyclic groups Z_k, k <= max_order, for covers of the fusion rules."""
    params = ModelParams(p, q)
    tensor = fusion_tensor(params)
    budget = max(max_order, DEFAULT_SEARCH_BUDGET) if allow_large else DEFAULT_SEARCH_BUDGET
    covers = search_cyclic_covers(tensor, max_order, order_budget=budget)
    payload = {
        "model": _model_header(params),
        "max_order": max_order,
        "covers": [
            {
                "factors": list(lg.spec.factors),
                "order": lg.spec.order,
                "labels": [
                    {
                        "element": list(e),
                        "sector": [s.m, s.n],
                        "name": s.name,
                    }
                    for e, s in zip(lg.spec.elements(), lg.labels)
                ],
            }
            for lg in covers
        ],
    }
    lines = [
        f"Cyclic covers of the ({p},{q}) minimal model fusion rules up to order {max_order}",
        f"found {len(covers)} cover(s)",
    ]
    for lg in covers:
        lines.append(f"{lg.spec.describe()}:")
        for e, s in zip(lg.spec.elements(), lg.labels):
            elem = ",".join(str(d) for d in e) if e else "()"
            lines.append(f"  {elem} <-> {s.name} ({s.m},{s.n})")
    return OutputDocument(format, "search_results", payload, "\n".join(lines))


# ---------------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------------

def _add_model_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--p", type=int, required=True, help="first model parameter (>= 2)")
    sub.add_argument("--q", type=int, required=True, help="second model parameter (>= 2, coprime to p)")
    sub.add_argument(
        "--format", choices=("text", "json"), default="text", help="output format"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fusioncover",
        description="Exact minimal-model fusion data and finite abelian group covers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    kac = sub.add_parser("kac", help="print the Kac table of conformal weights")
    _add_model_args(kac)
    kac.set_defaults(run=lambda a: _emit(cmd_kac(a.p, a.q, a.format)))

    fusion = sub.add_parser("fusion", help="print the fusion rule table")
    _add_model_args(fusion)
    fusion.set_defaults(run=lambda a: _emit(cmd_fusion(a.p, a.q, a.format)))

    cover = sub.add_parser("cover", help="verify or search fusion covers")
    cover_sub = cover.add_subparsers(dest="subcommand", required=True)

    verify = cover_sub.add_parser(
        "verify", help="verify the canonical 2-group cover or a labeled group file"
    )
    _add_model_args(verify)
    verify.add_argument("--group", metavar="FILE", help="group labeling file to verify")
    verify.add_argument("--threads", type=int, default=1, help="parallel scan partitions")
    verify.add_argument(
        "--allow-large",
        action="store_true",
        help=f"permit canonical verification beyond p + q = {DEFAULT_VERIFY_PQ_SUM}",
    )
    verify.set_defaults(run=_run_verify)

    search = cover_sub.add_parser("search", help="search cyclic groups for covers")
    _add_model_args(search)
    search.add_argument("--max-order", type=int, required=True, help="largest cyclic order to try")
    search.add_argument(
        "--allow-large",
        action="store_true",
        help=f"permit searches beyond the default budget {DEFAULT_SEARCH_BUDGET}",
    )
    search.set_defaults(run=_run_search)

    return parser


def _emit(doc: OutputDocument) -> int:
    print(doc.emit())
    return 0


def _run_verify(args: argparse.Namespace) -> int:
    doc, code = cmd_cover_verify(
        args.p, args.q, args.group, args.format, args.threads, args.allow_large
    )
    print(doc.emit())
    return code


def _run_search(args: argparse.Namespace) -> int:
    return _emit(cmd_cover_search(args.p, args.q, args.max_order, args.format, args.allow_large))


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except (GroupFileError, CapacityError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
